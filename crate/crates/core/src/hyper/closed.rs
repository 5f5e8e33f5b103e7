//! Explicit finite-sum coefficient formulas for a fixed set of Appell and
//! Kampé de Fériet examples, each paired with the engine spec it expands.
//!
//! | form         | term                                                                              |
//! |--------------|-----------------------------------------------------------------------------------|
//! | `F1`         | `(1-2e)_{m1+m2} (1-e)_{m1+m2} / ((1-e)_{m1} (1-e)_{m2})`                           |
//! | `F2`         | `(1)_{m1+m2} (1-e)_{m1+m2} / ((1-e)_{m1} (1+e)_{m2})`                              |
//! | `F3`         | `F2` with the lower parameters exchanged                                          |
//! | `F4`         | `(1)_{m1+m2} (1+e)_{m1+m2} / ((1+e)_{m1} (1+e)_{m2})`                              |
//! | `F5`         | `(1)_{m1+m2} (1/2)_{m1} (3/2-e)_{m2} / ((2-e)_{m1} (3-2e)_{m2})`                   |
//! | `F6`         | `(1+d)_{m1+m2} (1+d-e)_{m1+m2} (1)_{m1} / ((1+d)_{m1} (1-e)_{m1} (1+d+e)_{m2})`    |
//! | `F7`         | `(1+d)_{m1+m2} (1+d+e)_{m1+m2} (1)_{m1} / ((1+d)_{m1} (1+e)_{m1} (1+d+e)_{m2})`    |
//!
//! Every term carries the implicit `x1^m1 x2^m2 / (m1! m2!)`. `F4_alt` and
//! `F6_alt` are second representations of `F4` and `F6`; `dF7_ddelta` is the
//! `delta` derivative of `F7` at `delta = 0`.

use std::fmt;
use std::str::FromStr;

use super::spec::{HyperFactor, HyperTermSpec, IndexLaw};
use super::table::ExpansionTable;
use crate::arith::Rational;
use crate::combinatorics::{binom_int, double_factorial, factorial, gen_bernoulli_poly, stirling_s1};
use crate::error::{Error, Result};
use crate::pochhammer::pochhammer;
use crate::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    F1,
    F2,
    F3,
    F4,
    F4Alt,
    F5,
    F6,
    F6Alt,
    F7,
    DF7DDelta,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 10] = [
        ClosedForm::F1,
        ClosedForm::F2,
        ClosedForm::F3,
        ClosedForm::F4,
        ClosedForm::F4Alt,
        ClosedForm::F5,
        ClosedForm::F6,
        ClosedForm::F6Alt,
        ClosedForm::F7,
        ClosedForm::DF7DDelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::F1 => "F1",
            ClosedForm::F2 => "F2",
            ClosedForm::F3 => "F3",
            ClosedForm::F4 => "F4",
            ClosedForm::F4Alt => "F4_alt",
            ClosedForm::F5 => "F5",
            ClosedForm::F6 => "F6",
            ClosedForm::F6Alt => "F6_alt",
            ClosedForm::F7 => "F7",
            ClosedForm::DF7DDelta => "dF7_ddelta",
        }
    }

    /// Whether the formula needs a `delta` value.
    pub fn needs_delta(self) -> bool {
        matches!(self, ClosedForm::F6 | ClosedForm::F6Alt | ClosedForm::F7)
    }

    /// The engine spec whose expansion this form reproduces. `delta` enters
    /// symbolically (coefficient 1) and its value is stored as a parameter.
    /// For `dF7_ddelta` this is the `F7` spec, to be expanded with dual numbers.
    pub fn spec(self, delta: &Rational) -> HyperTermSpec {
        let f = |c: Rational, s: i64, law: (u32, u32, u32)| {
            HyperFactor::new(c, Rational::from(s), IndexLaw::new(law.0, law.1, law.2))
        };
        let fd = |s: i64, law: (u32, u32, u32)| f(Rational::one(), s, law).with_delta(Rational::one());
        let one = Rational::one;
        let (numer, denom) = match self {
            ClosedForm::F1 => (
                vec![f(one(), -2, (0, 1, 1)), f(one(), -1, (0, 1, 1))],
                vec![f(one(), -1, (0, 1, 0)), f(one(), -1, (0, 0, 1))],
            ),
            ClosedForm::F2 => (
                vec![f(one(), 0, (0, 1, 1)), f(one(), -1, (0, 1, 1))],
                vec![f(one(), -1, (0, 1, 0)), f(one(), 1, (0, 0, 1))],
            ),
            ClosedForm::F3 => (
                vec![f(one(), 0, (0, 1, 1)), f(one(), -1, (0, 1, 1))],
                vec![f(one(), 1, (0, 1, 0)), f(one(), -1, (0, 0, 1))],
            ),
            ClosedForm::F4 | ClosedForm::F4Alt => (
                vec![f(one(), 0, (0, 1, 1)), f(one(), 1, (0, 1, 1))],
                vec![f(one(), 1, (0, 1, 0)), f(one(), 1, (0, 0, 1))],
            ),
            ClosedForm::F5 => (
                vec![
                    f(one(), 0, (0, 1, 1)),
                    f(Rational::new(1, 2), 0, (0, 1, 0)),
                    f(Rational::new(3, 2), -1, (0, 0, 1)),
                ],
                vec![f(Rational::from(2), -1, (0, 1, 0)), f(Rational::from(3), -2, (0, 0, 1))],
            ),
            ClosedForm::F6 | ClosedForm::F6Alt => (
                vec![fd(0, (0, 1, 1)), fd(-1, (0, 1, 1)), f(one(), 0, (0, 1, 0))],
                vec![fd(0, (0, 1, 0)), f(one(), -1, (0, 1, 0)), fd(1, (0, 0, 1))],
            ),
            ClosedForm::F7 | ClosedForm::DF7DDelta => (
                vec![fd(0, (0, 1, 1)), fd(1, (0, 1, 1)), f(one(), 0, (0, 1, 0))],
                vec![fd(0, (0, 1, 0)), f(one(), 1, (0, 1, 0)), fd(1, (0, 0, 1))],
            ),
        };
        let mut spec = HyperTermSpec::new(numer, denom);
        spec.name = Some(self.name().to_string());
        if spec.uses_delta() {
            spec.params.insert("delta".into(), delta.clone());
        }
        spec
    }

    /// Coefficient of `eps^k x1^m1 x2^m2`.
    pub fn coefficient(self, k: u32, m1: u32, m2: u32, delta: &Rational) -> Result<Rational> {
        let (k, m1, m2) = (k as usize, m1 as usize, m2 as usize);
        match self {
            ClosedForm::F1 => Ok(f1(k, m1, m2)),
            ClosedForm::F2 => Ok(f2(k, m1, m2)),
            ClosedForm::F3 => Ok(f2(k, m2, m1)),
            ClosedForm::F4 => Ok(f4(k, m1, m2)),
            ClosedForm::F4Alt => Ok(f4_alt(k, m1, m2)),
            ClosedForm::F5 => f5(k, m1 + m2, m1),
            ClosedForm::F6 => f6(k, m1, m2, delta),
            ClosedForm::F6Alt => f6_alt(k, m1, m2, delta),
            ClosedForm::F7 => Ok(f7(k, m1, m2, delta)),
            ClosedForm::DF7DDelta => Ok(df7_ddelta(k, m1, m2)),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown closed form '{s}'")))
    }
}

/// Evaluates a closed form over `k <= eps_order`, `m1 + m2 <= degree_bound`,
/// keyed like [`expand_general`](super::expand_general).
pub fn expand_closed(form: ClosedForm, eps_order: i32, degree_bound: u32, extra: &Params) -> Result<ExpansionTable> {
    let delta = match extra.get("delta") {
        Some(d) => d.clone(),
        None if form.needs_delta() => return Err(Error::MissingParameter("delta".into())),
        None => Rational::zero(),
    };
    let mut table = ExpansionTable::new(eps_order, degree_bound);
    for k in 0..=eps_order {
        for m1 in 0..=degree_bound {
            for m2 in 0..=degree_bound - m1 {
                let v = form.coefficient(k as u32, m1, m2, &delta)?;
                table.entries.insert((k, m1, m2), v);
            }
        }
    }
    Ok(table)
}

fn kd(a: usize, b: usize) -> Rational {
    if a == b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn sgn(e: usize) -> Rational {
    Rational::sign_power(e as i64)
}

fn c(n: usize, k: usize) -> Rational {
    binom_int(n as i64, k as i64)
}

fn inv_pow(x: usize, e: usize) -> Rational {
    Rational::from(x).pow(-(e as i32))
}

fn r(n: usize) -> Rational {
    Rational::from(n)
}

/// Reciprocal of `x`, or a pole error naming the vanishing quantity.
fn nonzero(x: Rational, what: &str) -> Result<Rational> {
    x.checked_recip().ok_or_else(|| Error::Pole {
        index: 0,
        context: format!("{what} vanishes for this delta"),
    })
}

fn f1(k: usize, m1: usize, m2: usize) -> Rational {
    let (n, m) = (m1, m1 + m2);
    let total: Rational = (0..=k)
        .map(|k1| {
            let inner: Rational = (1..=n)
                .map(|j| sgn(j) * c(m - j, n) * c(n, j) * inv_pow(j, k - k1))
                .sum();
            Rational::from(2).pow(k1 as i32) * sgn(m) * stirling_s1(m + 1, k1 + 1) * (kd(k1, k) - inner)
        })
        .sum();
    total / (factorial(n) * factorial(m - n))
}

fn f2(k: usize, m1: usize, m2: usize) -> Rational {
    let (m, n) = (m1 + m2, m2);
    let inner: Rational = (1..=n).map(|j| sgn(j) * c(m + j, n) * c(n, j) * inv_pow(j, k)).sum();
    sgn(k) * (kd(k, 0) * sgn(n) - inner) * c(m, n)
}

fn f4(k: usize, m1: usize, m2: usize) -> Rational {
    let (m, n) = (m1 + m2, m1);
    let inner: Rational = (1..=n).map(|j| sgn(j) * c(m - j, n) * c(n, j) * inv_pow(j, k)).sum();
    sgn(k) * (kd(k, 0) - inner) * c(m, n)
}

fn f4_alt(k: usize, n1: usize, n2: usize) -> Rational {
    let sq = c(n1 + n2, n1).pow(2);
    if k == 0 {
        return sq;
    }
    let sum: Rational = (1..=n1)
        .map(|j| {
            let num = pochhammer(&r(n1 + 1 - j), j) * pochhammer(&(r(n2 + 1) - r(j)), j);
            let den = pochhammer(&r(n1 + n2 + 1 - j), j) * factorial(j);
            sgn(j) * num / den * inv_pow(j, k)
        })
        .sum();
    sgn(k + 1) * sq * sum
}

// Keyed by total degree m and the power n of the first variable.
fn f5(k: usize, m: usize, n: usize) -> Result<Rational> {
    let p = m - n;
    let lead = if n == 0 {
        Rational::one()
    } else {
        double_factorial(2 * n as i64 - 1)?
    };
    let prefactor = c(m, n) * lead / Rational::from(2).pow(m as i32);
    let mut total = Rational::zero();
    for k1 in 0..=k {
        let first = kd(n, 0) * kd(k1, 0)
            - (1..=n)
                .map(|l| sgn(l) / (factorial(l) * factorial(n - l)) * r(l) * inv_pow(l + 1, k1 + 1))
                .sum::<Rational>();
        let mut second = kd(k, k1);
        for j in 1..=p / 2 {
            let df = double_factorial(2 * (p - j) as i64 - 1)?;
            second -= sgn(j) * df / (Rational::from(2).pow(j as i32) * factorial(p - 2 * j) * factorial(j - 1))
                * inv_pow(j + 1, k - k1 + 1);
        }
        total += first * second;
    }
    Ok(prefactor * total)
}

fn f6(k: usize, n1: usize, n2: usize, d: &Rational) -> Result<Rational> {
    let prefactor = pochhammer(&(r(1 + n1) + d), n2) / factorial(n2);
    let mut total = Rational::zero();
    for k1 in 0..=k {
        let first = kd(k1, 0)
            - (1..=n1)
                .map(|l| {
                    sgn(l) / (factorial(l) * factorial(n1 - l))
                        * pochhammer(&(Rational::one() + d - r(l)), n1)
                        * inv_pow(l, k1)
                })
                .sum::<Rational>();
        let mut second = kd(k1, k) * sgn(n2);
        for j in 0..n2 {
            let base = nonzero(r(1 + j) + d, "1 + j + delta")?;
            second += sgn(j) / (factorial(j) * factorial(n2 - 1 - j))
                * pochhammer(&(r(2 + n1 + j) + d * Rational::from(2)), n2)
                * base.pow((k - k1 + 1) as i32);
        }
        total += sgn(k - k1) * first * second;
    }
    Ok(prefactor * total)
}

fn f6_alt(k: usize, n1: usize, n2: usize, d: &Rational) -> Result<Rational> {
    let prefactor = pochhammer(&(r(1 + n1) + d), n2) / factorial(n2);
    let mut total = kd(k, 0) * sgn(n2);
    for j in 1..=n1 {
        let inv = nonzero(pochhammer(&(r(1 + j) + d), n2), "(1 + delta + j)_n2")?;
        total -= pochhammer(&(Rational::one() + d - r(j)), n1 + n2) * inv * sgn(j) / (factorial(j) * factorial(n1 - j))
            * inv_pow(j, k);
    }
    let mut tail = Rational::zero();
    for j in 0..n2 {
        let inv = nonzero(pochhammer(&(r(2 + j) + d), n1), "(2 + delta + j)_n1")?;
        let base = nonzero(r(1 + j) + d, "1 + j + delta")?;
        tail += pochhammer(&(r(2 + j) + d * Rational::from(2)), n1 + n2) * inv * sgn(j)
            / (factorial(j) * factorial(n2 - 1 - j))
            * base.pow((k + 1) as i32);
    }
    total += sgn(k) * tail;
    Ok(prefactor * total)
}

fn f7(k: usize, n1: usize, n2: usize, d: &Rational) -> Rational {
    let prefactor = pochhammer(&(r(1 + n1) + d), n2) / factorial(n2);
    let inner: Rational = (1..=n1)
        .map(|j| sgn(j) / (factorial(j) * factorial(n1 - j)) * pochhammer(&(r(n2 + 1) + d - r(j)), n1) * inv_pow(j, k))
        .sum();
    sgn(k) * prefactor * (kd(k, 0) - inner)
}

fn df7_ddelta(k: usize, n1: usize, n2: usize) -> Rational {
    let mut total = Rational::zero();
    if n2 > 0 {
        let bern = gen_bernoulli_poly(n2 - 1, (n2 + 1) as u32, &-r(n1));
        let bracket = kd(k, 0)
            - (1..=n1)
                .map(|j| {
                    pochhammer(&(r(n2 + 1) - r(j)), n1) * sgn(j) / (factorial(j) * factorial(n1 - j)) * inv_pow(j, k)
                })
                .sum::<Rational>();
        total += sgn(n2 - 1) * r(n2) * bern * bracket;
    }
    if n1 > 0 {
        let sum: Rational = (1..=n1)
            .map(|j| {
                let x = r(j) - r(n2);
                c(n1, j) * sgn(j) * inv_pow(j, k) * gen_bernoulli_poly(n1 - 1, (n1 + 1) as u32, &x)
            })
            .sum();
        total += sgn(n1) * r(n1) * factorial(n1 + n2) / factorial(n1).pow(2) * sum;
    }
    sgn(k) * total / factorial(n2)
}
