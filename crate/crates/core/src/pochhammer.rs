//! Pochhammer symbols and their normalized derivatives.
//!
//! * `P_m^(k)(a) = (1/k!) d^k/da^k (a)_m`
//! * `Q_m^(k)(b) = (1/k!) d^k/db^k 1/(b)_m`
//! * `R_{m,n}^(k) = (1/k!) d^k/deps^k (A + a eps)_m / (B + b eps)_n`
//!
//! Each family is available through several independent methods that must
//! agree exactly; the series oracle expands the symbol as a product of linear
//! factors in `eps` and reads off a coefficient.

use std::fmt;
use std::str::FromStr;

use crate::arith::{EpsSeries, Rational};
use crate::combinatorics::{binom_int, factorial, gen_bernoulli_poly, stirling_s1};
use crate::error::{Error, Result};
use crate::partial_fractions::{decompose_single, pf_derivative, reduce_excess};

/// A parameter `constant + slope * eps` of a Pochhammer factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearParam {
    pub constant: Rational,
    pub slope: Rational,
}

impl LinearParam {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        LinearParam { constant, slope }
    }

    pub fn at(&self, eps: &Rational) -> Rational {
        &self.constant + &self.slope * eps
    }

    /// The parameter shifted by an integer, `(A + j) + a eps`.
    pub fn shifted(&self, j: usize) -> LinearParam {
        LinearParam::new(&self.constant + Rational::from(j), self.slope.clone())
    }
}

impl fmt::Display for LinearParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*eps", self.constant, self.slope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PochMethod {
    Recurrence,
    StirlingSum,
    Coffey,
    Bernoulli,
    SeriesOracle,
}

impl PochMethod {
    pub const ALL: [PochMethod; 5] = [
        PochMethod::Recurrence,
        PochMethod::StirlingSum,
        PochMethod::Coffey,
        PochMethod::Bernoulli,
        PochMethod::SeriesOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PochMethod::Recurrence => "recurrence",
            PochMethod::StirlingSum => "stirling_sum",
            PochMethod::Coffey => "coffey",
            PochMethod::Bernoulli => "bernoulli",
            PochMethod::SeriesOracle => "series_oracle",
        }
    }
}

impl FromStr for PochMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PochMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown Pochhammer method '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecipMethod {
    Recurrence,
    ClosedSum,
    DeltaForm,
    SeriesOracle,
}

impl RecipMethod {
    pub const ALL: [RecipMethod; 4] = [
        RecipMethod::Recurrence,
        RecipMethod::ClosedSum,
        RecipMethod::DeltaForm,
        RecipMethod::SeriesOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecipMethod::Recurrence => "recurrence",
            RecipMethod::ClosedSum => "closed_sum",
            RecipMethod::DeltaForm => "delta_form",
            RecipMethod::SeriesOracle => "series_oracle",
        }
    }
}

impl FromStr for RecipMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RecipMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown reciprocal Pochhammer method '{s}'")))
    }
}

/// Rising factorial `(a)_m = a (a+1) ... (a+m-1)`.
pub fn pochhammer(alpha: &Rational, m: usize) -> Rational {
    (0..m).map(|j| alpha + Rational::from(j)).product()
}

/// `(A + a eps)_m` as a polynomial in `eps`, truncated at `order`.
pub fn poch_eps_series(p: &LinearParam, m: usize, order: i32) -> EpsSeries {
    let mut coeffs = vec![Rational::one()];
    for j in 0..m {
        let c = &p.constant + Rational::from(j);
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (i, x) in coeffs.iter().enumerate() {
            next[i] += x * &c;
            next[i + 1] += x * &p.slope;
        }
        coeffs = next;
    }
    EpsSeries::polynomial(&coeffs, order)
}

/// `P_m^(k)(alpha)`; zero whenever `k > m`.
pub fn poch_deriv(alpha: &Rational, m: usize, k: usize, method: PochMethod) -> Rational {
    if k > m {
        return Rational::zero();
    }
    match method {
        PochMethod::Recurrence => poch_deriv_recurrence(alpha, m, k),
        PochMethod::StirlingSum => {
            // (-1)^{m-k} sum_l (-1)^l C(m,l) s(m-l,k) (alpha)_l
            let mut poch = Rational::one();
            let mut acc = Rational::zero();
            for l in 0..=m - k {
                if l > 0 {
                    poch *= alpha + Rational::from(l - 1);
                }
                acc += Rational::sign_power(l as i64) * binom_int(m as i64, l as i64) * stirling_s1(m - l, k) * &poch;
            }
            Rational::sign_power((m - k) as i64) * acc
        }
        PochMethod::Coffey => {
            // (-1)^{m-k} sum_j (-1)^j C(k+j,k) s(m,k+j) alpha^j
            let acc: Rational = (0..=m - k)
                .map(|j| {
                    Rational::sign_power(j as i64)
                        * binom_int((k + j) as i64, k as i64)
                        * stirling_s1(m, k + j)
                        * alpha.pow(j as i32)
                })
                .sum();
            Rational::sign_power((m - k) as i64) * acc
        }
        PochMethod::Bernoulli => {
            Rational::sign_power((m - k) as i64)
                * binom_int(m as i64, k as i64)
                * gen_bernoulli_poly(m - k, (m + 1) as u32, &(Rational::one() - alpha))
        }
        PochMethod::SeriesOracle => {
            let p = LinearParam::new(alpha.clone(), Rational::one());
            poch_eps_series(&p, m, m as i32).coeff(k as i32)
        }
    }
}

fn poch_deriv_recurrence(alpha: &Rational, m: usize, k: usize) -> Rational {
    // row[j] = P_i^(j)(alpha) for the current i, built by
    // P_{i+1}^(j) = (alpha + i) P_i^(j) + P_i^(j-1)
    let mut row = vec![Rational::zero(); k + 1];
    row[0] = Rational::one();
    for i in 0..m {
        let shift = alpha + Rational::from(i);
        for j in (0..=k).rev() {
            let lower = if j > 0 { row[j - 1].clone() } else { Rational::zero() };
            row[j] = &row[j] * &shift + lower;
        }
    }
    row[k].clone()
}

fn check_recip_pole(beta: &Rational, m: usize) -> Result<()> {
    if let Some(l) = beta.to_i64() {
        if l <= 0 && ((-l) as usize) < m {
            return Err(Error::Pole {
                index: (-l) as usize,
                context: format!("1/({beta})_{m} has a pole: factor beta+{} vanishes", -l),
            });
        }
    }
    Ok(())
}

/// `Q_m^(k)(beta)`. Fails with a pole error when `beta + l = 0` for some
/// `0 <= l < m`.
pub fn recip_poch_deriv(beta: &Rational, m: usize, k: usize, method: RecipMethod) -> Result<Rational> {
    check_recip_pole(beta, m)?;
    if m == 0 {
        return Ok(if k == 0 { Rational::one() } else { Rational::zero() });
    }
    let value = match method {
        RecipMethod::Recurrence => recip_recurrence(beta, m, k),
        RecipMethod::ClosedSum => {
            let acc: Rational = (0..m)
                .map(|l| {
                    Rational::sign_power(l as i64)
                        / (factorial(l) * factorial(m - 1 - l))
                        / (beta + Rational::from(l)).pow(k as i32 + 1)
                })
                .sum();
            Rational::sign_power(k as i64) * acc
        }
        RecipMethod::DeltaForm => {
            // forward difference Delta^{m-1} applied to x^{-(k+1)} at beta
            let n = m - 1;
            let diff: Rational = (0..=n)
                .map(|j| {
                    Rational::sign_power((n - j) as i64)
                        * binom_int(n as i64, j as i64)
                        * (beta + Rational::from(j)).pow(-(k as i32 + 1))
                })
                .sum();
            Rational::sign_power(m as i64 - k as i64 - 1) / factorial(n) * diff
        }
        RecipMethod::SeriesOracle => {
            let p = LinearParam::new(beta.clone(), Rational::one());
            poch_eps_series(&p, m, k as i32).invert()?.coeff(k as i32)
        }
    };
    Ok(value)
}

fn recip_recurrence(beta: &Rational, m: usize, k: usize) -> Rational {
    // row[j] = Q_i^(j)(beta); Q_{i+1}^(j) = (Q_i^(j) - Q_{i+1}^(j-1)) / (beta + i)
    let mut row = vec![Rational::zero(); k + 1];
    row[0] = Rational::one();
    for i in 0..m {
        let inv = (beta + Rational::from(i)).recip();
        let mut next = vec![Rational::zero(); k + 1];
        for j in 0..=k {
            let prev = if j > 0 { next[j - 1].clone() } else { Rational::zero() };
            next[j] = (&row[j] - prev) * &inv;
        }
        row = next;
    }
    row[k].clone()
}

/// Laurent expansion of `1/(-n + b eps)_m` for `m > n`, through
/// `1/(b eps) * (-1)^n / (1 - b eps)_n * 1/(1 + b eps)_{m-n-1}`.
pub fn recip_poch_laurent(n: usize, b: &Rational, m: usize, order: i32) -> Result<EpsSeries> {
    if b.is_zero() {
        return Err(Error::domain("Laurent expansion needs a nonzero slope b"));
    }
    if m <= n {
        return Err(Error::domain(format!(
            "1/(-{n} + b eps)_{m} has no pole at eps = 0 (m <= n); use recip_poch_deriv"
        )));
    }
    if order < -1 {
        return Err(Error::domain(format!(
            "Laurent order {order} is below the pole order -1"
        )));
    }
    let unit_order = order + 1;
    let left = poch_eps_series(&LinearParam::new(Rational::one(), -b), n, unit_order).invert()?;
    let right = poch_eps_series(&LinearParam::new(Rational::one(), b.clone()), m - n - 1, unit_order).invert()?;
    let scale = Rational::sign_power(n as i64) / b;
    Ok(left.mul(&right).scale(&scale).shift(-1))
}

/// `R_{m,n}^(k)` evaluated at `eps = at_eps`.
///
/// Uses partial fractions when `m <= n` and the denominator depends on `eps`,
/// splits off `(alpha)_{m-n}` first when `m > n`, and differentiates the
/// numerator polynomial directly when the denominator is constant.
pub fn quotient_deriv(
    num: &LinearParam,
    m: usize,
    den: &LinearParam,
    n: usize,
    k: usize,
    at_eps: &Rational,
) -> Result<Rational> {
    let den_at = den.at(at_eps);
    for j in 0..n {
        if (&den_at + Rational::from(j)).is_zero() {
            return Err(Error::Pole {
                index: j,
                context: format!("denominator factor {}+{j} vanishes at eps = {at_eps}", den.constant),
            });
        }
    }
    // k-th Taylor coefficient of (A + a eps)_L around at_eps
    let numer_coeff = |p: &LinearParam, len: usize, i: usize| {
        p.slope.pow(i as i32) * poch_deriv(&p.at(at_eps), len, i, PochMethod::StirlingSum)
    };
    if den.slope.is_zero() || n == 0 {
        return Ok(numer_coeff(num, m, k) / pochhammer(&den_at, n));
    }
    if m > n {
        let (prefix, core) = reduce_excess(num, m, den, n)?;
        let (prefix_param, prefix_len) = prefix;
        let form = core.decompose()?;
        let mut acc = Rational::zero();
        for i in 0..=k {
            let left = numer_coeff(&prefix_param, prefix_len, i);
            if left.is_zero() {
                continue;
            }
            acc += left * pf_derivative(&form, k - i, at_eps)?;
        }
        return Ok(acc);
    }
    let form = decompose_single(num, m, den, n)?;
    pf_derivative(&form, k, at_eps)
}
