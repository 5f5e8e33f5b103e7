//! Registry of exactly checkable identities and generating relations.
//!
//! Each identity evaluates its two sides along independent code paths: the
//! left side through a general operation (usually a recurrence or a series
//! expansion), the right side through the closed form being checked.
//! Generating relations are compared coefficientwise as truncated series.

use std::fmt;
use std::str::FromStr;

use crate::arith::{EpsSeries, Rational};
use crate::combinatorics::{
    binom_int, factorial, gen_bernoulli_numbers, gen_bernoulli_poly, mod_harmonic, nested_ones_s, nested_ones_z,
    stirling_s1,
};
use crate::error::{Error, Result};
use crate::pochhammer::{
    poch_deriv, poch_eps_series, pochhammer, recip_poch_deriv, LinearParam, PochMethod, RecipMethod,
};
use crate::Params;

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name { $($variant),* }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),* }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                $name::ALL
                    .iter()
                    .copied()
                    .find(|v| v.name() == s)
                    .ok_or_else(|| Error::domain(format!("unknown {} '{s}'", stringify!($name))))
            }
        }
    };
}

named_enum!(
    /// Finite identities between derivative values and combinatorial numbers.
    IdentityId {
        A5 => "A5",
        A6 => "A6",
        A8 => "A8",
        A9 => "A9",
        AA19 => "AA19",
        A12 => "A12",
        A13 => "A13",
        A14Coeff => "A14coeff",
        A15 => "A15",
        A27 => "A27",
        A28 => "A28",
        A29 => "A29",
        A30 => "A30",
        A31 => "A31",
        A32 => "A32",
        Ii16 => "ii16",
        Ii17 => "ii17",
        Iii4 => "iii4",
        Iii5 => "iii5",
        Iii10 => "iii10",
        ConjugateHS => "conjugate_HS",
    }
);

named_enum!(
    /// Generating relations checked as truncated power series.
    GenFunId {
        A4 => "a4",
        A7 => "a7",
        A18 => "A18",
        A25 => "A25",
        A26 => "A26",
        Nueva1 => "nueva1",
        Nueva2 => "nueva2",
    }
);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

impl IdentityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let equal = lhs == rhs;
        IdentityCheck { lhs, rhs, equal }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFunCheck {
    pub equal_to_order: bool,
    pub first_discrepancy: Option<i32>,
    pub lhs: EpsSeries,
    pub rhs: EpsSeries,
}

fn rat_param(params: &Params, name: &str) -> Result<Rational> {
    params
        .get(name)
        .cloned()
        .ok_or_else(|| Error::MissingParameter(name.to_string()))
}

fn int_param(params: &Params, name: &str) -> Result<usize> {
    let v = rat_param(params, name)?;
    v.to_i64()
        .filter(|&n| n >= 0)
        .map(|n| n as usize)
        .ok_or_else(|| Error::domain(format!("parameter {name} = {v} must be a nonnegative integer")))
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(format!("requires {what}")))
    }
}

fn sgn(e: i64) -> Rational {
    Rational::sign_power(e)
}

fn kd(a: usize, b: usize) -> Rational {
    if a == b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn r(n: usize) -> Rational {
    Rational::from(n)
}

fn h_hat(m: usize, k: usize) -> Rational {
    mod_harmonic(m, k as u32)
}

/// Sum `sum_{j=0}^{n-1} (-1)^j (A - (B+j) x)_m / (j! (n-1-j)! (B+j))`.
fn by_product_sum(a: &Rational, b: &Rational, x: &Rational, m: usize, n: usize) -> Result<Rational> {
    let mut acc = Rational::zero();
    for j in 0..n {
        let bj = b + r(j);
        require(!bj.is_zero(), "B + j != 0")?;
        acc += sgn(j as i64) * pochhammer(&(a - &bj * x), m) / (factorial(j) * factorial(n - 1 - j) * bj);
    }
    Ok(acc)
}

/// Evaluates both sides of an identity at the given parameters.
pub fn identity_eval(id: IdentityId, params: &Params) -> Result<IdentityCheck> {
    use IdentityId::*;
    let int = |name| int_param(params, name);
    let rat = |name| rat_param(params, name);
    let check = match id {
        A5 => {
            let (m, k) = (int("m")?, int("k")?);
            require(m == 0 || k == 0 || k > m, "m = 0, k = 0 or k > m")?;
            let rhs = if m == 0 { kd(k, 0) } else { Rational::zero() };
            IdentityCheck::new(poch_deriv(&Rational::zero(), m, k, PochMethod::Recurrence), rhs)
        }
        A6 => {
            let (m, k) = (int("m")?, int("k")?);
            require(m >= k && k > 0, "m >= k > 0")?;
            let lhs = poch_deriv(&Rational::zero(), m, k, PochMethod::Recurrence);
            IdentityCheck::new(lhs, sgn((m - k) as i64) * stirling_s1(m, k))
        }
        A8 => {
            let (n, k) = (int("n")?, int("k")?);
            require(k <= n, "k <= n")?;
            let sum: Rational = (k..=n)
                .map(|j| sgn((n - j) as i64) / factorial(j) * stirling_s1(j, k))
                .sum();
            IdentityCheck::new(stirling_s1(n + 1, k + 1), factorial(n) * sum)
        }
        A9 => {
            let (m, k) = (int("m")?, int("k")?);
            let lhs = poch_deriv(&Rational::one(), m, k, PochMethod::Recurrence);
            let rhs = if k > m {
                Rational::zero()
            } else {
                sgn((m - k) as i64) * stirling_s1(m + 1, k + 1)
            };
            IdentityCheck::new(lhs, rhs)
        }
        AA19 => {
            let (m, k) = (int("m")?, int("k")?);
            require(k <= m, "k <= m")?;
            let lhs = poch_deriv(&Rational::one(), m, k, PochMethod::Recurrence);
            let b = gen_bernoulli_numbers(m - k, (m + 1) as u32)[m - k].clone();
            IdentityCheck::new(lhs, sgn((m - k) as i64) * binom_int(m as i64, k as i64) * b)
        }
        A12 => {
            let (m, k) = (int("m")?, int("k")?);
            require(m >= 1, "m >= 1")?;
            let lhs = recip_poch_deriv(&Rational::one(), m, k, RecipMethod::Recurrence)?;
            IdentityCheck::new(lhs, sgn(k as i64) * h_hat(m, k) / factorial(m))
        }
        A13 => {
            let (m, k, alpha) = (int("m")?, int("k")?, rat("alpha")?);
            require(k <= m, "k <= m")?;
            let lhs = poch_deriv(&alpha, m, k, PochMethod::Recurrence);
            let shifted = &alpha - Rational::one();
            let rhs = (k..=m)
                .map(|j| {
                    sgn((m - j) as i64)
                        * binom_int(j as i64, k as i64)
                        * stirling_s1(m + 1, j + 1)
                        * shifted.pow((j - k) as i32)
                })
                .sum();
            IdentityCheck::new(lhs, rhs)
        }
        A14Coeff => {
            let (m, k, j) = (int("m")?, int("k")?, int("j")?);
            require(m >= 1, "m >= 1")?;
            let order = (k + j) as i32;
            let inverse = poch_eps_series(&LinearParam::new(Rational::one(), Rational::one()), m, order).invert()?;
            let c = binom_int((k + j) as i64, k as i64);
            let lhs = &c * inverse.coeff(order);
            let rhs = sgn((k + j) as i64) * c * h_hat(m, k + j) / factorial(m);
            IdentityCheck::new(lhs, rhs)
        }
        A15 => {
            let (m, k) = (int("m")?, int("k")?);
            let lhs = poch_deriv(&Rational::one(), m, k, PochMethod::SeriesOracle);
            IdentityCheck::new(lhs, factorial(m) * nested_ones_z(m, k))
        }
        A27 => {
            let (m, k, x) = (int("m")?, int("k")?, rat("x")?);
            let mut lhs = Rational::zero();
            for j in 0..=k {
                lhs += poch_deriv(&x, m, k - j, PochMethod::StirlingSum)
                    * recip_poch_deriv(&x, m, j, RecipMethod::ClosedSum)?;
            }
            IdentityCheck::new(lhs, kd(k, 0))
        }
        A28 => {
            let (m, k) = (int("m")?, int("k")?);
            let lhs = (0..=k).map(|j| stirling_s1(m + 1, k + 1 - j) * h_hat(m, j)).sum();
            IdentityCheck::new(lhs, kd(k, 0) * sgn(m as i64) * factorial(m))
        }
        A29 => {
            let (n, m, k) = (int("n")?, int("m")?, int("k")?);
            require(n >= 1 && k <= m, "n >= 1 and k <= m")?;
            let lhs = poch_deriv(&r(n), m, k, PochMethod::Recurrence);
            let sum: Rational = (0..=k).map(|j| stirling_s1(m + n, k + 1 - j) * h_hat(n - 1, j)).sum();
            let rhs = sgn((m + n) as i64 - 1 - k as i64) / factorial(n - 1) * sum;
            IdentityCheck::new(lhs, rhs)
        }
        A30 => {
            let (n, m, k) = (int("n")?, int("m")?, int("k")?);
            require(n >= 1 && m >= 1, "n >= 1 and m >= 1")?;
            let lhs = recip_poch_deriv(&r(n), m, k, RecipMethod::Recurrence)?;
            let sum: Rational = (0..=k)
                .map(|j| {
                    if k + 1 - j > n {
                        Rational::zero()
                    } else {
                        stirling_s1(n, k + 1 - j) * h_hat(m + n - 1, j)
                    }
                })
                .sum();
            let rhs = sgn(n as i64 - 1 - k as i64) / factorial(m + n - 1) * sum;
            IdentityCheck::new(lhs, rhs)
        }
        A31 => {
            let (n, m, k) = (int("n")?, int("m")?, int("k")?);
            require(n >= 1 && k <= m, "n >= 1 and k <= m")?;
            let lhs = poch_deriv(&-r(n), m, k, PochMethod::Recurrence);
            let rhs = if m <= n {
                sgn((m - k) as i64) * poch_deriv(&(r(n + 1) - r(m)), m, k, PochMethod::StirlingSum)
            } else {
                let sum: Rational = (0..k)
                    .map(|j| sgn(j as i64) * stirling_s1(n + 1, j + 1) * stirling_s1(m - n, k - j))
                    .sum();
                sgn(m as i64 - n as i64 - k as i64) * sum
            };
            IdentityCheck::new(lhs, rhs)
        }
        A32 => {
            let (n, m, k) = (int("n")?, int("m")?, int("k")?);
            require(m <= n, "m <= n")?;
            let lhs = recip_poch_deriv(&-r(n), m, k, RecipMethod::Recurrence)?;
            let rhs = sgn(m as i64 - k as i64) * recip_poch_deriv(&(r(n + 1) - r(m)), m, k, RecipMethod::ClosedSum)?;
            IdentityCheck::new(lhs, rhs)
        }
        Ii16 => {
            let (a, b, x, m, n) = (rat("A")?, rat("B")?, rat("x")?, int("m")?, int("n")?);
            require(m < n, "m < n")?;
            let rhs = by_product_sum(&a, &b, &x, m, n)?;
            IdentityCheck::new(pochhammer(&a, m) / pochhammer(&b, n), rhs)
        }
        Ii17 => {
            let (a, b, x, n) = (rat("A")?, rat("B")?, rat("x")?, int("n")?);
            require(n >= 1, "n >= 1")?;
            let rhs = x.pow(n as i32) + by_product_sum(&a, &b, &x, n, n)?;
            IdentityCheck::new(pochhammer(&a, n) / pochhammer(&b, n), rhs)
        }
        Iii4 => {
            let m = int("m")?;
            IdentityCheck::new(stirling_s1(m + 1, 1), sgn(m as i64) * factorial(m))
        }
        Iii5 => {
            let (m, n) = (int("m")?, int("n")?);
            require(n <= m, "n <= m")?;
            let sum: Rational = (1..=n)
                .map(|j| sgn(j as i64) * binom_int((m - j) as i64, n as i64) * binom_int(n as i64, j as i64))
                .sum();
            IdentityCheck::new(Rational::one() - sum, binom_int(m as i64, n as i64))
        }
        Iii10 => {
            let (m, n) = (int("m")?, int("n")?);
            let sum: Rational = (1..=n)
                .map(|j| sgn(j as i64) * binom_int((m + j) as i64, n as i64) * binom_int(n as i64, j as i64))
                .sum();
            IdentityCheck::new(sgn(n as i64) - sum, binom_int(m as i64, n as i64))
        }
        ConjugateHS => {
            let (m, k) = (int("m")?, int("k")?);
            IdentityCheck::new(h_hat(m, k), nested_ones_s(m, k))
        }
    };
    Ok(check)
}

fn compare(lhs: EpsSeries, rhs: EpsSeries, order: i32) -> Result<GenFunCheck> {
    let lhs = lhs.to_order(order)?;
    let rhs = rhs.to_order(order)?;
    let first_discrepancy = (0..=order).find(|&e| lhs.coeff(e) != rhs.coeff(e));
    Ok(GenFunCheck {
        equal_to_order: first_discrepancy.is_none(),
        first_discrepancy,
        lhs,
        rhs,
    })
}

fn coefficients(order: i32, f: impl Fn(usize) -> Result<Rational>) -> Result<EpsSeries> {
    let coeffs = (0..=order as usize).map(f).collect::<Result<Vec<_>>>()?;
    Ok(EpsSeries::polynomial(&coeffs, order))
}

/// `-z/(1-z)` as a series known to `order`.
fn euler_argument(order: i32) -> EpsSeries {
    let coeffs: Vec<Rational> = (0..=order)
        .map(|e| if e == 0 { Rational::zero() } else { -Rational::one() })
        .collect();
    EpsSeries::polynomial(&coeffs, order)
}

fn geometric(order: i32) -> EpsSeries {
    EpsSeries::polynomial(&vec![Rational::one(); order as usize + 1], order)
}

/// Classical Bernoulli numbers (`B_1 = -1/2`) from `sum_{j<=n} C(n+1, j) B_j = 0`.
fn classical_bernoulli(max_n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for n in 1..=max_n {
        let s: Rational = (0..n).map(|j| binom_int(n as i64 + 1, j as i64) * &b[j]).sum();
        b.push(-s / r(n + 1));
    }
    b
}

fn nueva_c(params: &Params, m: usize) -> Result<Rational> {
    let c = rat_param(params, "c")?;
    require(!c.is_negative() && !c.is_zero(), "c > 0")?;
    require(m >= 1, "m >= 1")?;
    Ok(c)
}

fn product_of_simple_poles(m: usize, c: &Rational, order: i32) -> Result<EpsSeries> {
    let mut acc = EpsSeries::one(order);
    for j in 1..=m {
        acc = acc.mul(&EpsSeries::linear(Rational::one(), -(c / r(j)), order).invert()?);
    }
    Ok(acc)
}

/// Compares both sides of a generating relation through `z^order`.
pub fn genfun_check(id: GenFunId, order: u32, params: &Params) -> Result<GenFunCheck> {
    use GenFunId::*;
    require(order >= 1, "order >= 1")?;
    let n = order as i32;
    let int = |name| int_param(params, name);
    let rat = |name| rat_param(params, name);
    match id {
        A4 => {
            let (k, alpha) = (int("k")?, rat("alpha")?);
            let lhs = coefficients(n, |m| {
                Ok(factorial(k) * poch_deriv(&alpha, m, k, PochMethod::Recurrence) * sgn(m as i64) / factorial(m))
            })?;
            let log = EpsSeries::log1p(n);
            let power = EpsSeries::compose(&EpsSeries::exp(n), &log.scale(&-&alpha))?;
            let rhs = power.mul(&log.pow(k as u32)).scale(&sgn(k as i64));
            compare(lhs, rhs, n)
        }
        A7 => {
            let k = int("k")?;
            let lhs = EpsSeries::log1p(n).pow(k as u32);
            let rhs = coefficients(n, |m| Ok(factorial(k) * stirling_s1(m, k) / factorial(m)))?;
            compare(lhs, rhs, n)
        }
        A18 => {
            let (a, x) = (int("a")?, rat("x")?);
            let b = classical_bernoulli(order as usize);
            let base = coefficients(n, |m| Ok(&b[m] / factorial(m)))?;
            let shift = EpsSeries::compose(&EpsSeries::exp(n), &EpsSeries::linear(Rational::zero(), x.clone(), n))?;
            let lhs = base.pow(a as u32).mul(&shift);
            let rhs = coefficients(n, |m| Ok(gen_bernoulli_poly(m, a as u32, &x) / factorial(m)))?;
            compare(lhs, rhs, n)
        }
        A25 => {
            let (k, beta) = (int("k")?, rat("beta")?);
            require(
                !(beta.is_integer() && (beta.is_zero() || beta.is_negative())),
                "beta not a nonpositive integer",
            )?;
            let lerch = coefficients(n, |j| Ok((&beta + r(j)).pow(-(k as i32 + 1))))?;
            let lhs = geometric(n).mul(&EpsSeries::compose(&lerch, &euler_argument(n))?);
            let rhs = coefficients(n, |m| {
                Ok(sgn(k as i64) * factorial(m) * recip_poch_deriv(&beta, m + 1, k, RecipMethod::Recurrence)?)
            })?;
            compare(lhs, rhs, n)
        }
        A26 => {
            let k = int("k")?;
            let polylog = coefficients(n, |j| {
                Ok(if j == 0 {
                    Rational::zero()
                } else {
                    r(j).pow(-(k as i32 + 1))
                })
            })?;
            let lhs = -&EpsSeries::compose(&polylog, &euler_argument(n))?;
            let rhs = coefficients(n, |m| Ok(if m == 0 { Rational::zero() } else { h_hat(m, k) / r(m) }))?;
            compare(lhs, rhs, n)
        }
        Nueva1 => {
            let m = int("m")?;
            let c = nueva_c(params, m)?;
            let lhs = product_of_simple_poles(m, &c, n)?;
            let rhs = coefficients(n, |k| Ok(c.pow(k as i32) * h_hat(m, k)))?;
            compare(lhs, rhs, n)
        }
        Nueva2 => {
            let m = int("m")?;
            let c = nueva_c(params, m)?;
            let lhs = product_of_simple_poles(m, &c, n)?;
            let mut rhs = EpsSeries::zero(n);
            for j in 1..=m {
                let term = EpsSeries::linear(Rational::one(), -(&c / r(j)), n).invert()?;
                rhs = &rhs + &term.scale(&(sgn(j as i64 - 1) * binom_int(m as i64, j as i64)));
            }
            compare(lhs, rhs, n)
        }
    }
}

/// Any registry entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    Identity(IdentityId),
    GenFun(GenFunId),
}

impl CheckId {
    pub fn all() -> Vec<CheckId> {
        IdentityId::ALL
            .iter()
            .map(|&i| CheckId::Identity(i))
            .chain(GenFunId::ALL.iter().map(|&g| CheckId::GenFun(g)))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Identity(i) => i.name(),
            CheckId::GenFun(g) => g.name(),
        }
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse()
            .map(CheckId::Identity)
            .or_else(|_| s.parse().map(CheckId::GenFun))
            .map_err(|_| Error::domain(format!("unknown identity or generating relation '{s}'")))
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Series order used for every generating-relation grid.
pub const GENFUN_ORDER: u32 = 12;

fn p(pairs: &[(&str, Rational)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn mk_grid(m_max: usize, k_of: impl Fn(usize) -> Vec<usize>) -> Vec<Params> {
    (0..=m_max)
        .flat_map(|m| k_of(m).into_iter().map(move |k| p(&[("m", r(m)), ("k", r(k))])))
        .collect()
}

fn rational_grid() -> Vec<Rational> {
    vec![Rational::new(1, 2), Rational::new(5, 2), Rational::new(7, 3)]
}

fn small_rationals() -> Vec<Rational> {
    vec![
        Rational::new(1, 2),
        Rational::one(),
        Rational::new(7, 3),
        Rational::from(-2),
        Rational::new(-5, 4),
    ]
}

/// The documented parameter grid of an identity.
pub fn identity_grid(id: IdentityId) -> Vec<Params> {
    use IdentityId::*;
    let upto = |m: usize| (0..=m).collect::<Vec<_>>();
    match id {
        A5 => mk_grid(10, |m| (0..=12).filter(|&k| m == 0 || k == 0 || k > m).collect()),
        A6 => mk_grid(10, |m| (1..=m).collect()),
        A8 => (0..=10)
            .flat_map(|n| (0..=n).map(move |k| p(&[("n", r(n)), ("k", r(k))])))
            .collect(),
        A9 | AA19 | A15 | A28 | ConjugateHS => mk_grid(10, upto),
        A12 => mk_grid(10, |m| if m == 0 { vec![] } else { upto(m.min(6)) }),
        A13 => {
            let mut alphas = vec![Rational::zero(), Rational::new(3, 2), Rational::from(-2)];
            alphas.extend(rational_grid());
            alphas
                .into_iter()
                .flat_map(|a| {
                    mk_grid(10, upto).into_iter().map(move |mut q| {
                        q.insert("alpha".into(), a.clone());
                        q
                    })
                })
                .collect()
        }
        A14Coeff => (1..=10)
            .flat_map(|m| {
                (0..=m.min(6)).flat_map(move |k| (0..=4).map(move |j| p(&[("m", r(m)), ("k", r(k)), ("j", r(j))])))
            })
            .collect(),
        A27 => {
            let mut xs = vec![Rational::one(), Rational::from(2)];
            xs.extend(rational_grid());
            xs.into_iter()
                .flat_map(|x| {
                    (0..=8).flat_map(move |m| {
                        let x = x.clone();
                        (0..=8).map(move |k| p(&[("x", x.clone()), ("m", r(m)), ("k", r(k))]))
                    })
                })
                .collect()
        }
        A29 | A31 => (1..=4)
            .flat_map(|n| (0..=10).flat_map(move |m| (0..=m).map(move |k| p(&[("n", r(n)), ("m", r(m)), ("k", r(k))]))))
            .filter(|q| id == A29 || q["n"] <= Rational::from(3))
            .collect(),
        A30 => (1..=4)
            .flat_map(|n| {
                (1..=10).flat_map(move |m| (0..=m.min(6)).map(move |k| p(&[("n", r(n)), ("m", r(m)), ("k", r(k))])))
            })
            .collect(),
        A32 => (1..=3)
            .flat_map(|n| (0..=n).flat_map(move |m| (0..=6).map(move |k| p(&[("n", r(n)), ("m", r(m)), ("k", r(k))]))))
            .collect(),
        Ii16 | Ii17 => {
            let mut out = Vec::new();
            for a in small_rationals() {
                for b in small_rationals()
                    .into_iter()
                    .filter(|b| !(b.is_integer() && (b.is_zero() || b.is_negative())))
                {
                    for x in [Rational::zero(), Rational::new(1, 3), Rational::from(2)] {
                        for n in 1..=5usize {
                            let base = [("A", a.clone()), ("B", b.clone()), ("x", x.clone()), ("n", r(n))];
                            if id == Ii17 {
                                out.push(p(&base));
                            } else {
                                for m in 0..n {
                                    let mut q = p(&base);
                                    q.insert("m".into(), r(m));
                                    out.push(q);
                                }
                            }
                        }
                    }
                }
            }
            out
        }
        Iii4 => (0..=10).map(|m| p(&[("m", r(m))])).collect(),
        Iii5 | Iii10 => (0..=10)
            .flat_map(|m| (0..=m).map(move |n| p(&[("m", r(m)), ("n", r(n))])))
            .collect(),
    }
}

/// The documented parameter sets of a generating relation.
pub fn genfun_grid(id: GenFunId) -> Vec<Params> {
    use GenFunId::*;
    match id {
        A4 => (0..=3)
            .flat_map(|k| {
                [Rational::one(), Rational::new(1, 2)]
                    .into_iter()
                    .map(move |a| p(&[("k", r(k)), ("alpha", a)]))
            })
            .collect(),
        A7 => (0..=4).map(|k| p(&[("k", r(k))])).collect(),
        A18 => (0..=5)
            .flat_map(|a| {
                [Rational::zero(), Rational::new(1, 2)]
                    .into_iter()
                    .map(move |x| p(&[("a", r(a)), ("x", x)]))
            })
            .collect(),
        A25 => (0..=3)
            .flat_map(|k| {
                [Rational::one(), Rational::from(2), Rational::new(1, 2)]
                    .into_iter()
                    .map(move |b| p(&[("k", r(k)), ("beta", b)]))
            })
            .collect(),
        A26 => (0..=3).map(|k| p(&[("k", r(k))])).collect(),
        Nueva1 | Nueva2 => (1..=5usize)
            .flat_map(|m| {
                let lcm = (1..=m as u64).fold(1u64, num_integer::lcm);
                [Rational::one(), Rational::from(lcm), factorial(m)]
                    .into_iter()
                    .map(move |c| p(&[("m", r(m)), ("c", c)]))
            })
            .collect(),
    }
}

pub fn grid(id: CheckId) -> Vec<Params> {
    match id {
        CheckId::Identity(i) => identity_grid(i),
        CheckId::GenFun(g) => genfun_grid(g),
    }
}

/// What each registry entry exercises.
pub fn coverage(id: CheckId) -> &'static str {
    use GenFunId as G;
    use IdentityId as I;
    match id {
        CheckId::Identity(i) => match i {
            I::A5 | I::A6 => "poch_deriv at alpha = 0",
            I::A8 | I::Iii4 => "stirling_s1",
            I::A9 | I::AA19 | I::A15 => "poch_deriv at alpha = 1",
            I::A12 | I::A14Coeff => "recip_poch_deriv at beta = 1",
            I::A13 => "poch_deriv Taylor expansion around 1",
            I::A27 => "poch_deriv and recip_poch_deriv orthogonality",
            I::A28 => "stirling_s1 and mod_harmonic sum rule",
            I::A29 | I::A31 => "poch_deriv at integer arguments",
            I::A30 | I::A32 => "recip_poch_deriv at integer arguments",
            I::Ii16 | I::Ii17 => "decompose_single evaluated at eps = 0",
            I::Iii5 | I::Iii10 => "binomial sums behind the F1-F4 leading layer",
            I::ConjugateHS => "mod_harmonic and nested_ones_s",
        },
        CheckId::GenFun(g) => match g {
            G::A4 => "poch_deriv generating function",
            G::A7 => "stirling_s1 generating function",
            G::A18 => "gen_bernoulli_poly generating function",
            G::A25 => "recip_poch_deriv generating function",
            G::A26 => "mod_harmonic generating function",
            G::Nueva1 => "mod_harmonic as a product of simple poles",
            G::Nueva2 => "decompose_multi of a product of simple poles",
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFailure {
    pub params: Params,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one registry entry over its grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdReport {
    pub id: CheckId,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl IdReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn format_params(params: &Params) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Evaluates one entry at one parameter set; `Ok(None)` means it holds.
pub fn check_case(id: CheckId, params: &Params) -> Result<Option<(String, String)>> {
    match id {
        CheckId::Identity(i) => {
            let c = identity_eval(i, params)?;
            Ok((!c.equal).then(|| (c.lhs.to_string(), c.rhs.to_string())))
        }
        CheckId::GenFun(g) => {
            let c = genfun_check(g, GENFUN_ORDER, params)?;
            Ok(c.first_discrepancy.map(|e| {
                (
                    format!("[z^{e}] {}", c.lhs.coeff(e)),
                    format!("[z^{e}] {}", c.rhs.coeff(e)),
                )
            }))
        }
    }
}

pub fn run(id: CheckId) -> IdReport {
    let cases = grid(id);
    let failures = cases
        .iter()
        .filter_map(|params| match check_case(id, params) {
            Ok(None) => None,
            Ok(Some((lhs, rhs))) => Some(CaseFailure {
                params: params.clone(),
                lhs,
                rhs,
            }),
            Err(e) => Some(CaseFailure {
                params: params.clone(),
                lhs: format!("error: {e}"),
                rhs: String::new(),
            }),
        })
        .collect();
    IdReport {
        id,
        cases: cases.len(),
        failures,
    }
}

pub fn run_all() -> Vec<IdReport> {
    CheckId::all().into_iter().map(run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), Rational::from(*v))).collect()
    }

    #[test]
    fn identity_examples() {
        let c = identity_eval(IdentityId::A28, &params(&[("m", 2), ("k", 1)])).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equal), (rat(0, 1), rat(0, 1), true));
        let mut q = params(&[("m", 2), ("k", 1)]);
        q.insert("x".into(), Rational::one());
        let c = identity_eval(IdentityId::A27, &q).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equal), (rat(0, 1), rat(0, 1), true));
        let c = identity_eval(IdentityId::A9, &params(&[("m", 2), ("k", 1)])).unwrap();
        assert_eq!((c.lhs, c.rhs, c.equal), (rat(3, 1), rat(3, 1), true));
    }

    #[test]
    fn identity_domain_errors() {
        assert!(matches!(
            identity_eval(IdentityId::A6, &params(&[("m", 2), ("k", 0)])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            identity_eval(IdentityId::A32, &params(&[("n", 1), ("m", 3), ("k", 0)])),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            identity_eval(IdentityId::A9, &params(&[("m", 2)])),
            Err(Error::MissingParameter("k".into()))
        );
        assert!(matches!(
            identity_eval(IdentityId::Iii4, &[("m".to_string(), rat(1, 2))].into()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn genfun_examples() {
        let mut q = params(&[("k", 1)]);
        q.insert("alpha".into(), Rational::one());
        assert!(genfun_check(GenFunId::A4, 6, &q).unwrap().equal_to_order);

        let c = genfun_check(GenFunId::Nueva1, 4, &params(&[("m", 2), ("c", 1)])).unwrap();
        assert!(c.equal_to_order);
        assert_eq!(
            c.lhs.coefficients(),
            &[rat(1, 1), rat(3, 2), rat(7, 4), rat(15, 8), rat(31, 16)]
        );

        let c = genfun_check(GenFunId::A26, 5, &params(&[("k", 0)])).unwrap();
        assert!(c.equal_to_order);
        assert_eq!(c.rhs.coeff(0), rat(0, 1));
        for m in 1..=5 {
            assert_eq!(c.rhs.coeff(m), rat(1, m as i64));
        }
    }

    #[test]
    fn genfun_reports_first_discrepancy() {
        let c = compare(
            EpsSeries::polynomial(&[rat(1, 1), rat(2, 1), rat(3, 1)], 2),
            EpsSeries::polynomial(&[rat(1, 1), rat(2, 1), rat(4, 1)], 2),
            2,
        )
        .unwrap();
        assert!(!c.equal_to_order);
        assert_eq!(c.first_discrepancy, Some(2));
        assert!(genfun_check(GenFunId::A7, 0, &params(&[("k", 1)])).is_err());
    }

    #[test]
    fn names_are_stable() {
        let names: Vec<&str> = IdentityId::ALL.iter().map(|i| i.name()).collect();
        assert_eq!(names.len(), 21);
        assert!(names.contains(&"A14coeff") && names.contains(&"conjugate_HS") && names.contains(&"iii10"));
        assert_eq!(GenFunId::ALL.len(), 7);
        for id in CheckId::all() {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!("A16".parse::<CheckId>().is_err());
    }

    #[test]
    fn every_entry_has_coverage_and_a_grid() {
        for id in CheckId::all() {
            assert!(!coverage(id).is_empty());
            assert!(!grid(id).is_empty(), "{id} has an empty grid");
        }
    }
}
