//! Partial-fraction decomposition of quotients of Pochhammer products whose
//! parameters are linear in `eps`.
//!
//! Every denominator factor `(B + b eps)_n` contributes the simple poles
//! `B + j + b eps = 0` for `0 <= j < n`. Factors with zero slope do not depend
//! on `eps` and are folded into a scalar when the quotient is built.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{EpsSeries, Rational};
use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::pochhammer::{poch_eps_series, pochhammer, LinearParam};

/// A Pochhammer symbol `(param)_len`.
pub type PochFactor = (LinearParam, usize);

/// `scalar * prod (A_p + a_p eps)_{m_p} / prod (B_q + b_q eps)_{n_q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochProductQuotient {
    numer: Vec<PochFactor>,
    denom: Vec<PochFactor>,
    scalar: Rational,
}

impl PochProductQuotient {
    /// Builds the quotient, moving every `eps`-independent factor into the
    /// scalar and dropping empty symbols.
    pub fn new(numer: Vec<PochFactor>, denom: Vec<PochFactor>) -> Result<Self> {
        let mut scalar = Rational::one();
        let mut kept_numer = Vec::new();
        for (p, len) in numer {
            if len == 0 {
                continue;
            }
            if p.slope.is_zero() {
                scalar *= pochhammer(&p.constant, len);
            } else {
                kept_numer.push((p, len));
            }
        }
        let mut kept_denom = Vec::new();
        for (q, (p, len)) in denom.into_iter().enumerate() {
            if len == 0 {
                continue;
            }
            if p.slope.is_zero() {
                let value = pochhammer(&p.constant, len);
                if value.is_zero() {
                    let j = (-p.constant.to_i64().unwrap_or(0)) as usize;
                    return Err(Error::Pole {
                        index: j,
                        context: format!("constant denominator factor {q} vanishes"),
                    });
                }
                scalar /= value;
            } else {
                kept_denom.push((p, len));
            }
        }
        Ok(PochProductQuotient {
            numer: kept_numer,
            denom: kept_denom,
            scalar,
        })
    }

    pub fn numer(&self) -> &[PochFactor] {
        &self.numer
    }

    pub fn denom(&self) -> &[PochFactor] {
        &self.denom
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn numer_degree(&self) -> usize {
        self.numer.iter().map(|(_, l)| l).sum()
    }

    pub fn denom_degree(&self) -> usize {
        self.denom.iter().map(|(_, l)| l).sum()
    }

    pub fn decompose(&self) -> Result<PartialFractionForm> {
        decompose_multi(self)
    }

    /// Value of the quotient at a given `eps`.
    pub fn eval(&self, eps: &Rational) -> Result<Rational> {
        let mut den = Rational::one();
        for (q, (p, len)) in self.denom.iter().enumerate() {
            let base = p.at(eps);
            for j in 0..*len {
                let f = &base + Rational::from(j);
                if f.is_zero() {
                    return Err(Error::Pole {
                        index: j,
                        context: format!("denominator factor {q} vanishes at eps = {eps}"),
                    });
                }
                den *= f;
            }
        }
        let num: Rational = self.numer.iter().map(|(p, len)| pochhammer(&p.at(eps), *len)).product();
        Ok(&self.scalar * num / den)
    }

    /// Expansion around `eps = 0` through `order`.
    pub fn to_series(&self, order: i32) -> Result<EpsSeries> {
        let den_valuation: i32 = self
            .denom
            .iter()
            .map(|(p, len)| {
                (0..*len)
                    .filter(|&j| (&p.constant + Rational::from(j)).is_zero())
                    .count() as i32
            })
            .sum();
        // inverting eps^v u loses 2v orders, multiplying it back in regains v
        let work = order + 2 * den_valuation;
        let mut acc = EpsSeries::constant(self.scalar.clone(), work);
        for (p, len) in &self.numer {
            acc = acc.mul(&poch_eps_series(p, *len, work));
        }
        for (p, len) in &self.denom {
            acc = acc.mul(&poch_eps_series(p, *len, work).invert()?);
        }
        acc.to_order(order)
    }
}

/// Reads a quotient from the line-oriented form
///
/// ```text
/// [numerator]
/// poch = <A> <a> : <len>
/// [denominator]
/// poch = <B> <b> : <len>
/// ```
///
/// `#` starts a comment; either section may be empty or absent.
impl FromStr for PochProductQuotient {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut numer = Vec::new();
        let mut denom = Vec::new();
        let mut in_numer: Option<bool> = None;
        let mut seen = (false, false);
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let (flag, seen_flag) = match name.trim() {
                    "numerator" => (true, &mut seen.0),
                    "denominator" => (false, &mut seen.1),
                    other => return Err(Error::parse(line, format!("unknown section [{other}]"))),
                };
                if *seen_flag {
                    return Err(Error::parse(line, format!("section [{}] repeated", name.trim())));
                }
                *seen_flag = true;
                in_numer = Some(flag);
                continue;
            }
            let target = match in_numer {
                Some(true) => &mut numer,
                Some(false) => &mut denom,
                None => return Err(Error::parse(line, "entry outside of any section")),
            };
            let value = content
                .split_once('=')
                .filter(|(k, _)| k.trim() == "poch")
                .map(|(_, v)| v.trim())
                .ok_or_else(|| Error::parse(line, format!("expected 'poch = <A> <a> : <len>', found '{content}'")))?;
            target.push(parse_poch_factor(line, value)?);
        }
        PochProductQuotient::new(numer, denom)
    }
}

fn parse_poch_factor(line: usize, value: &str) -> Result<PochFactor> {
    let (params, len) = value
        .split_once(':')
        .ok_or_else(|| Error::parse(line, "poch needs '<A> <a> : <len>'"))?;
    let params: Vec<&str> = params.split_whitespace().collect();
    if params.len() != 2 {
        return Err(Error::parse(line, "poch needs exactly two rationals before ':'"));
    }
    let rational = |s: &str| {
        s.parse::<Rational>()
            .map_err(|_| Error::parse(line, format!("'{s}' is not a rational")))
    };
    let len = len
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("length '{}' is not a nonnegative integer", len.trim())))?;
    Ok((LinearParam::new(rational(params[0])?, rational(params[1])?), len))
}

/// One simple-pole term `coefficient / (pole_constant + pole_slope * eps)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfTerm {
    pub coefficient: Rational,
    pub pole_constant: Rational,
    pub pole_slope: Rational,
    /// Denominator factor the pole came from.
    pub factor: usize,
    /// Shift `j` inside that factor.
    pub shift: usize,
}

impl PfTerm {
    /// The `eps` at which this term is singular.
    pub fn location(&self) -> Rational {
        -(&self.pole_constant / &self.pole_slope)
    }
}

/// `scalar * (constant + sum_i C_i / (P_i + s_i eps))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionForm {
    pub constant: Rational,
    pub terms: Vec<PfTerm>,
    pub scalar: Rational,
}

impl PartialFractionForm {
    pub fn eval(&self, eps: &Rational) -> Result<Rational> {
        pf_derivative(self, 0, eps)
    }

    /// Expansion around `eps = 0` through `order`; a pole at `eps = 0`
    /// contributes an exact `eps^-1` term.
    pub fn to_series(&self, order: i32) -> Result<EpsSeries> {
        let mut acc = EpsSeries::constant(&self.constant * &self.scalar, order);
        for t in &self.terms {
            let c = &t.coefficient * &self.scalar;
            let term = if t.pole_constant.is_zero() {
                let len = (order + 2).max(1) as usize;
                let mut coeffs = vec![Rational::zero(); len];
                coeffs[0] = c / &t.pole_slope;
                EpsSeries::new(-1, coeffs)
            } else {
                EpsSeries::linear(t.pole_constant.clone(), t.pole_slope.clone(), order)
                    .invert()?
                    .scale(&c)
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

fn fmt_pole(f: &mut fmt::Formatter<'_>, t: &PfTerm) -> fmt::Result {
    let slope = &t.pole_slope;
    let sign = if slope.is_negative() { '-' } else { '+' };
    let mag = slope.abs();
    if mag.is_one() {
        write!(f, "({}{sign}eps)", t.pole_constant)
    } else {
        write!(f, "({}{sign}{mag}*eps)", t.pole_constant)
    }
}

impl fmt::Display for PartialFractionForm {
    /// `c0 + C1/(P1+s1*eps) - C2/(P2+s2*eps) ...` with the scalar folded into
    /// every coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", &self.constant * &self.scalar)?;
        for t in &self.terms {
            let c = &t.coefficient * &self.scalar;
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}/", c.abs())?;
            fmt_pole(f, t)?;
        }
        Ok(())
    }
}

/// Decomposes `(A + a eps)_m / (B + b eps)_n` with `m <= n`.
///
/// The term at shift `j` has coefficient
/// `(-1)^j (A - (a/b)(B+j))_m / (j! (n-1-j)!)`; the constant is `(a/b)^n`
/// when `m = n` and zero otherwise.
pub fn decompose_single(num: &LinearParam, m: usize, den: &LinearParam, n: usize) -> Result<PartialFractionForm> {
    if n == 0 {
        return Err(Error::domain("denominator length must be positive"));
    }
    if m > n {
        return Err(Error::Degree {
            numerator: m,
            denominator: n,
        });
    }
    if den.slope.is_zero() {
        return Err(Error::ZeroSlope);
    }
    let ratio = &num.slope / &den.slope;
    let terms = (0..n)
        .map(|j| {
            let pole_constant = &den.constant + Rational::from(j);
            let at_pole = &num.constant - &ratio * &pole_constant;
            let coefficient =
                Rational::sign_power(j as i64) * pochhammer(&at_pole, m) / (factorial(j) * factorial(n - 1 - j));
            PfTerm {
                coefficient,
                pole_constant,
                pole_slope: den.slope.clone(),
                factor: 0,
                shift: j,
            }
        })
        .collect();
    let constant = if m == n { ratio.pow(n as i32) } else { Rational::zero() };
    Ok(PartialFractionForm {
        constant,
        terms,
        scalar: Rational::one(),
    })
}

/// Decomposes a product quotient with simple poles.
///
/// The pole of factor `q` at shift `j` gets the coefficient
/// `(-1)^j / (j! (n_q-1-j)!) * prod_p (A_p - (a_p/b_q)(B_q+j))_{m_p}
///   / prod_{k != q} (B_k - (b_k/b_q)(B_q+j))_{n_k}`.
pub fn decompose_multi(q: &PochProductQuotient) -> Result<PartialFractionForm> {
    let (numerator, denominator) = (q.numer_degree(), q.denom_degree());
    if numerator > denominator {
        return Err(Error::Degree { numerator, denominator });
    }
    let mut seen: HashMap<Rational, (usize, usize)> = HashMap::new();
    for (qi, (p, len)) in q.denom.iter().enumerate() {
        for j in 0..*len {
            let location = -((&p.constant + Rational::from(j)) / &p.slope);
            if let Some(&(q1, j1)) = seen.get(&location) {
                return Err(Error::RepeatedRoot {
                    location: location.to_string(),
                    q1,
                    j1,
                    q2: qi,
                    j2: j,
                });
            }
            seen.insert(location, (qi, j));
        }
    }

    let mut terms = Vec::with_capacity(denominator);
    for (qi, (dq, nq)) in q.denom.iter().enumerate() {
        for j in 0..*nq {
            let pole_constant = &dq.constant + Rational::from(j);
            let mut value = Rational::sign_power(j as i64) / (factorial(j) * factorial(nq - 1 - j));
            for (p, mp) in &q.numer {
                let at = &p.constant - &p.slope / &dq.slope * &pole_constant;
                value *= pochhammer(&at, *mp);
            }
            for (ki, (dk, nk)) in q.denom.iter().enumerate() {
                if ki == qi {
                    continue;
                }
                let at = &dk.constant - &dk.slope / &dq.slope * &pole_constant;
                value /= pochhammer(&at, *nk);
            }
            terms.push(PfTerm {
                coefficient: value,
                pole_constant,
                pole_slope: dq.slope.clone(),
                factor: qi,
                shift: j,
            });
        }
    }

    let constant = if numerator == denominator {
        let top: Rational = q.numer.iter().map(|(p, m)| p.slope.pow(*m as i32)).product();
        let bottom: Rational = q.denom.iter().map(|(p, n)| p.slope.pow(*n as i32)).product();
        top / bottom
    } else {
        Rational::zero()
    };
    Ok(PartialFractionForm {
        constant,
        terms,
        scalar: q.scalar.clone(),
    })
}

/// `(1/k!) d^k/deps^k` of a decomposed quotient at `at_eps`.
pub fn pf_derivative(form: &PartialFractionForm, k: usize, at_eps: &Rational) -> Result<Rational> {
    let mut acc = if k == 0 {
        form.constant.clone()
    } else {
        Rational::zero()
    };
    for t in &form.terms {
        let base = &t.pole_constant + &t.pole_slope * at_eps;
        if base.is_zero() {
            return Err(Error::Pole {
                index: t.shift,
                context: format!(
                    "partial fraction term of factor {} is singular at eps = {at_eps}",
                    t.factor
                ),
            });
        }
        acc += (-&t.pole_slope).pow(k as i32) * &t.coefficient / base.pow(k as i32 + 1);
    }
    Ok(acc * &form.scalar)
}

/// Splits `(alpha)_m / (beta)_n` with `m > n` into
/// `(alpha)_{m-n} * [(alpha+m-n)_n / (beta)_n]`.
pub fn reduce_excess(
    num: &LinearParam,
    m: usize,
    den: &LinearParam,
    n: usize,
) -> Result<(PochFactor, PochProductQuotient)> {
    if m <= n {
        return Err(Error::domain(format!(
            "numerator length {m} does not exceed denominator length {n}"
        )));
    }
    let prefix = (num.clone(), m - n);
    let core = PochProductQuotient::new(vec![(num.shifted(m - n), n)], vec![(den.clone(), n)])?;
    Ok((prefix, core))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::combinatorics::binom_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn lp(c: Rational, s: Rational) -> LinearParam {
        LinearParam::new(c, s)
    }

    fn coeff_pairs(form: &PartialFractionForm) -> Vec<(Rational, Rational)> {
        form.terms
            .iter()
            .map(|t| (t.coefficient.clone(), t.pole_constant.clone()))
            .collect()
    }

    #[test]
    fn single_examples() {
        let f = decompose_single(&lp(r(1), r(-1)), 1, &lp(r(1), r(1)), 2).unwrap();
        assert_eq!(f.constant, r(0));
        assert_eq!(coeff_pairs(&f), vec![(r(2), r(1)), (r(-3), r(2))]);
        assert_eq!(f.to_string(), "0 + 2/(1+eps) - 3/(2+eps)");

        let f = decompose_single(&lp(r(1), r(2)), 1, &lp(r(1), r(1)), 1).unwrap();
        assert_eq!(f.constant, r(2));
        assert_eq!(coeff_pairs(&f), vec![(r(-1), r(1))]);

        let f = decompose_single(&lp(rat(7, 3), r(4)), 0, &lp(r(1), r(1)), 1).unwrap();
        assert_eq!(f.constant, r(0));
        assert_eq!(coeff_pairs(&f), vec![(r(1), r(1))]);
    }

    #[test]
    fn single_errors() {
        let e = decompose_single(&lp(r(1), r(1)), 3, &lp(r(1), r(1)), 2).unwrap_err();
        assert_eq!(
            e,
            Error::Degree {
                numerator: 3,
                denominator: 2
            }
        );
        let e = decompose_single(&lp(r(1), r(1)), 1, &lp(r(1), r(0)), 2).unwrap_err();
        assert_eq!(e, Error::ZeroSlope);
    }

    #[test]
    fn multi_examples() {
        let q = PochProductQuotient::new(vec![], vec![(lp(r(1), r(1)), 1), (lp(r(2), r(1)), 1)]).unwrap();
        let f = decompose_multi(&q).unwrap();
        assert_eq!(coeff_pairs(&f), vec![(r(1), r(1)), (r(-1), r(2))]);
        assert_eq!(pf_derivative(&f, 1, &r(0)).unwrap(), rat(-3, 4));
        assert_eq!(pf_derivative(&f, 0, &r(0)).unwrap(), rat(1, 2));

        let q = PochProductQuotient::new(
            vec![(lp(r(1), r(1)), 1)],
            vec![(lp(r(1), r(1)), 1), (lp(r(3), r(1)), 1)],
        )
        .unwrap();
        let f = decompose_multi(&q).unwrap();
        assert_eq!(coeff_pairs(&f), vec![(r(0), r(1)), (r(1), r(3))]);
        assert_eq!(f.eval(&r(0)).unwrap(), rat(1, 3));
    }

    #[test]
    fn multi_repeated_root() {
        let q = PochProductQuotient::new(vec![], vec![(lp(r(1), r(1)), 2), (lp(r(2), r(1)), 1)]).unwrap();
        match decompose_multi(&q).unwrap_err() {
            Error::RepeatedRoot {
                location,
                q1,
                j1,
                q2,
                j2,
            } => {
                assert_eq!(location, "-2");
                assert_eq!((q1, j1, q2, j2), (0, 1, 1, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn multi_degree_error() {
        let q = PochProductQuotient::new(vec![(lp(r(1), r(1)), 3)], vec![(lp(r(1), r(1)), 2)]).unwrap();
        assert!(matches!(
            decompose_multi(&q),
            Err(Error::Degree {
                numerator: 3,
                denominator: 2
            })
        ));
    }

    #[test]
    fn derivative_of_single_form() {
        let f = decompose_single(&lp(r(1), r(2)), 1, &lp(r(1), r(1)), 1).unwrap();
        assert_eq!(pf_derivative(&f, 1, &r(0)).unwrap(), r(1));
        let e = pf_derivative(&f, 0, &r(-1)).unwrap_err();
        assert!(matches!(e, Error::Pole { index: 0, .. }));
    }

    #[test]
    fn zero_slope_factors_become_scalar() {
        let q = PochProductQuotient::new(
            vec![(lp(r(2), r(0)), 2), (lp(r(1), r(1)), 1)],
            vec![(lp(r(3), r(0)), 1), (lp(r(1), r(1)), 2)],
        )
        .unwrap();
        assert_eq!(q.scalar(), &r(2));
        assert_eq!(q.numer().len(), 1);
        assert_eq!(q.denom().len(), 1);
        let f = decompose_multi(&q).unwrap();
        assert_eq!(f.to_series(10).unwrap(), q.to_series(10).unwrap());
        let e = PochProductQuotient::new(vec![], vec![(lp(r(-1), r(0)), 3)]).unwrap_err();
        assert!(matches!(e, Error::Pole { index: 1, .. }));
    }

    #[test]
    fn reduce_excess_examples() {
        let alpha = lp(r(1), r(1));
        let beta = lp(r(2), r(1));
        let ((p, len), core) = reduce_excess(&alpha, 3, &beta, 1).unwrap();
        assert_eq!(p, alpha);
        assert_eq!(len, 2);
        assert_eq!(core.numer(), &[(lp(r(3), r(1)), 1)]);
        assert_eq!(core.denom(), &[(beta.clone(), 1)]);
        let prefix_value = pochhammer(&p.constant, len);
        assert_eq!(prefix_value, r(2));
        assert_eq!(core.eval(&r(0)).unwrap(), rat(3, 2));
        assert_eq!(prefix_value * core.eval(&r(0)).unwrap(), r(3));
        assert!(matches!(reduce_excess(&alpha, 2, &beta, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn both_excess_splits_agree() {
        for (a, b) in [(rat(1, 2), r(3)), (r(-3), rat(5, 2)), (r(2), r(1))] {
            for n in 1..=4usize {
                for m in n + 1..=7 {
                    let ratio = pochhammer(&a, m) / pochhammer(&b, n);
                    // first: (a)_{m-n} (a+m-n)_n / (b)_n
                    let num = lp(a.clone(), r(1));
                    let ((p, len), core) = reduce_excess(&num, m, &lp(b.clone(), r(1)), n).unwrap();
                    let first = pochhammer(&p.constant, len) * core.eval(&r(0)).unwrap();
                    // second: (a)_n / (b)_n * (a+n)_{m-n}
                    let second = pochhammer(&a, n) / pochhammer(&b, n) * pochhammer(&(&a + r(n as i64)), m - n);
                    assert_eq!(first, ratio);
                    assert_eq!(second, ratio);
                }
            }
        }
    }

    fn by_product_sum(a: &Rational, b: &Rational, x: &Rational, m: usize, n: usize) -> Rational {
        (0..n)
            .map(|j| {
                let bj = b + r(j as i64);
                Rational::sign_power(j as i64) * pochhammer(&(a - &bj * x), m)
                    / (factorial(j) * factorial(n - 1 - j) * bj)
            })
            .sum()
    }

    #[test]
    fn by_product_identity_lower_degree() {
        let grid = [rat(1, 2), r(1), rat(7, 3), r(-2), rat(-5, 4)];
        for a in &grid {
            for b in &grid {
                if b.is_integer() && b <= &r(0) {
                    continue;
                }
                for x in [r(0), rat(1, 3), r(2), r(-1)] {
                    for n in 1..=5 {
                        for m in 0..n {
                            let lhs = pochhammer(a, m) / pochhammer(b, n);
                            assert_eq!(by_product_sum(a, b, &x, m, n), lhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn by_product_identity_equal_degree() {
        let grid = [rat(1, 2), r(3), rat(-7, 3)];
        for a in &grid {
            for b in &grid {
                for n in 1..=5 {
                    let lhs = pochhammer(a, n) / pochhammer(b, n);
                    let at = |x: Rational| x.pow(n as i32) + by_product_sum(a, b, &x, n, n);
                    let v1 = at(rat(1, 3));
                    let v2 = at(r(-2));
                    assert_eq!(v1, v2);
                    assert_eq!(v1, lhs);
                }
            }
        }
    }

    #[test]
    fn product_of_simple_poles_has_binomial_residues() {
        for c in [r(1), rat(2, 3), r(-3)] {
            for m in 1..=6usize {
                let denom = (1..=m).map(|j| (lp(r(1), -(&c / r(j as i64))), 1)).collect();
                let q = PochProductQuotient::new(vec![], denom).unwrap();
                let f = decompose_multi(&q).unwrap();
                assert_eq!(f.constant, r(0));
                for (j, t) in f.terms.iter().enumerate() {
                    let j = j as i64 + 1;
                    assert_eq!(t.coefficient, Rational::sign_power(j - 1) * binom_int(m as i64, j));
                }
            }
        }
    }

    fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
        let d = rng.gen_range(1..=4);
        rat(rng.gen_range(-8..=8), d)
    }

    fn random_quotient(rng: &mut ChaCha8Rng) -> PochProductQuotient {
        loop {
            let factors = rng.gen_range(1..=3);
            let denom: Vec<PochFactor> = (0..factors)
                .map(|_| {
                    let mut slope = small_rational(rng);
                    if slope.is_zero() {
                        slope = r(1);
                    }
                    (lp(small_rational(rng), slope), rng.gen_range(1..=3))
                })
                .collect();
            let total: usize = denom.iter().map(|(_, l)| l).sum();
            let mut budget = rng.gen_range(0..=total);
            let mut numer = Vec::new();
            while budget > 0 {
                let len = rng.gen_range(1..=budget);
                numer.push((lp(small_rational(rng), small_rational(rng)), len));
                budget -= len;
            }
            let q = PochProductQuotient::new(numer, denom).unwrap();
            if decompose_multi(&q).is_ok() {
                return q;
            }
        }
    }

    #[test]
    fn random_quotients_recombine() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..40 {
            let q = random_quotient(&mut rng);
            let f = decompose_multi(&q).unwrap();
            assert_eq!(f.to_series(10).unwrap(), q.to_series(10).unwrap(), "{q:?}");
            let at = rat(1, 7);
            if let Ok(v) = q.eval(&at) {
                assert_eq!(f.eval(&at).unwrap(), v);
            }
        }
    }

    #[test]
    fn random_single_quotients_recombine() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=n);
            let num = lp(small_rational(&mut rng), small_rational(&mut rng));
            let mut slope = small_rational(&mut rng);
            if slope.is_zero() {
                slope = r(-1);
            }
            let den = lp(small_rational(&mut rng), slope);
            let f = decompose_single(&num, m, &den, n).unwrap();
            let q = PochProductQuotient::new(vec![(num, m)], vec![(den, n)]).unwrap();
            assert_eq!(f.to_series(10).unwrap(), q.to_series(10).unwrap());
        }
    }

    #[test]
    fn parses_quotient_files() {
        let q: PochProductQuotient = "# example\n[numerator]\npoch = 1/2 1 : 2\n[denominator]\npoch = 3/2 -2 : 3\n"
            .parse()
            .unwrap();
        assert_eq!(q.numer(), &[(lp(rat(1, 2), r(1)), 2)]);
        assert_eq!(q.denom(), &[(lp(rat(3, 2), r(-2)), 3)]);
        let err = "[denominator]\npoch = 1 x : 2\n"
            .parse::<PochProductQuotient>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!("[numerator]\n[numerator]\n".parse::<PochProductQuotient>().is_err());
        assert!("poch = 1 1 : 1\n".parse::<PochProductQuotient>().is_err());
        assert!("[options]\n".parse::<PochProductQuotient>().is_err());
    }
}
