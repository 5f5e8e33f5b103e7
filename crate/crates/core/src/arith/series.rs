//! Truncated Laurent series in a single formal variable with exact coefficients.
//!
//! An [`EpsSeries`] stores the coefficients from `min_exponent` through
//! `max_exponent` inclusive; everything above `max_exponent` is unknown.
//! Every operation reports only the coefficients its inputs determine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpsSeries {
    min_exp: i32,
    coeffs: Vec<Rational>,
}

/// Elementary series available as ready-made constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Log1p,
}

impl EpsSeries {
    /// Builds a series from coefficients starting at `min_exp`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(min_exp: i32, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient slot");
        let mut s = EpsSeries { min_exp, coeffs };
        s.normalize();
        s
    }

    /// Coefficients of `c0 + c1 eps + ...` truncated or zero-padded to `order`.
    pub fn polynomial(coeffs: &[Rational], order: i32) -> Self {
        if order < 0 {
            return EpsSeries::zero(order);
        }
        let len = order as usize + 1;
        let mut v: Vec<Rational> = coeffs.iter().take(len).cloned().collect();
        v.resize(len, Rational::zero());
        EpsSeries::new(0, v)
    }

    pub fn zero(order: i32) -> Self {
        let min = order.min(0);
        EpsSeries::new(min, vec![Rational::zero(); (order - min) as usize + 1])
    }

    pub fn constant(c: Rational, order: i32) -> Self {
        EpsSeries::polynomial(&[c], order)
    }

    pub fn one(order: i32) -> Self {
        EpsSeries::constant(Rational::one(), order)
    }

    /// `c + s*eps`, known to `order`.
    pub fn linear(c: Rational, s: Rational, order: i32) -> Self {
        EpsSeries::polynomial(&[c, s], order)
    }

    pub fn elementary(kind: Elementary, order: i32) -> Self {
        match kind {
            Elementary::Exp => EpsSeries::exp(order),
            Elementary::Log1p => EpsSeries::log1p(order),
        }
    }

    /// `sum_n z^n / n!`
    pub fn exp(order: i32) -> Self {
        let mut coeffs = Vec::new();
        let mut term = Rational::one();
        for n in 0..=order.max(0) {
            if n > 0 {
                term /= Rational::from(n);
            }
            coeffs.push(term.clone());
        }
        EpsSeries::polynomial(&coeffs, order)
    }

    /// `sum_{n>=1} (-1)^{n-1} z^n / n`
    pub fn log1p(order: i32) -> Self {
        let mut coeffs = vec![Rational::zero()];
        for n in 1..=order.max(0) as i64 {
            coeffs.push(Rational::sign_power(n - 1) / Rational::from(n));
        }
        EpsSeries::polynomial(&coeffs, order)
    }

    fn normalize(&mut self) {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) => {}
            Some(lead) => {
                self.coeffs.drain(..lead);
                self.min_exp += lead as i32;
            }
            None => {
                let max = self.max_exponent();
                let min = max.min(0);
                self.min_exp = min;
                self.coeffs = vec![Rational::zero(); (max - min) as usize + 1];
            }
        }
    }

    pub fn min_exponent(&self) -> i32 {
        self.min_exp
    }

    /// The truncation order: the highest exponent whose coefficient is known.
    pub fn max_exponent(&self) -> i32 {
        self.min_exp + self.coeffs.len() as i32 - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(exponent, coefficient)` pairs over the stored window.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.min_exp + i as i32, c))
    }

    /// Known coefficient at `e`; `None` above the truncation order.
    pub fn get(&self, e: i32) -> Option<Rational> {
        if e > self.max_exponent() {
            None
        } else if e < self.min_exp {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(e - self.min_exp) as usize].clone())
        }
    }

    /// Coefficient at `e`. Panics above the truncation order.
    pub fn coeff(&self, e: i32) -> Rational {
        self.get(e).unwrap_or_else(|| {
            panic!(
                "coefficient of eps^{e} requested beyond truncation order {}",
                self.max_exponent()
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Exponent of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    // Zero series are treated as vanishing beyond their window.
    fn effective_valuation(&self) -> i32 {
        self.valuation().unwrap_or(self.max_exponent() + 1)
    }

    /// Drops coefficients above `order` (no-op if already coarser).
    pub fn truncate(&self, order: i32) -> Self {
        if order >= self.max_exponent() {
            return self.clone();
        }
        if order < self.min_exp {
            return EpsSeries::zero(order);
        }
        let keep = (order - self.min_exp) as usize + 1;
        EpsSeries::new(self.min_exp, self.coeffs[..keep].to_vec())
    }

    /// Truncates to exactly `order`, failing if the series is not known that far.
    pub fn to_order(&self, order: i32) -> Result<Self> {
        if order > self.max_exponent() {
            return Err(Error::InsufficientPrecision {
                requested: order,
                available: self.max_exponent(),
            });
        }
        Ok(self.truncate(order))
    }

    /// Multiplication by `eps^e`.
    pub fn shift(&self, e: i32) -> Self {
        EpsSeries::new(self.min_exp + e, self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        EpsSeries::new(self.min_exp, self.coeffs.iter().map(|x| x * c).collect())
    }

    fn combine(&self, other: &EpsSeries, f: impl Fn(Rational, Rational) -> Rational) -> Self {
        let order = self.max_exponent().min(other.max_exponent());
        let min = self.min_exp.min(other.min_exp).min(order);
        let coeffs = (min..=order)
            .map(|e| f(self.get(e).unwrap(), other.get(e).unwrap()))
            .collect();
        EpsSeries::new(min, coeffs)
    }

    /// Cauchy product. The result is known up to
    /// `min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &EpsSeries) -> Self {
        let order =
            (self.max_exponent() + other.effective_valuation()).min(other.max_exponent() + self.effective_valuation());
        let min = self.min_exp + other.min_exp;
        if order < min {
            return EpsSeries::zero(order);
        }
        let len = (order - min) as usize + 1;
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        EpsSeries::new(min, out)
    }

    /// Multiplicative inverse. A series `eps^p u` known to order `N` inverts
    /// to `eps^-p / u`, known to order `N - 2p`.
    pub fn invert(&self) -> Result<Self> {
        let p = self.valuation().ok_or(Error::ZeroSeries)?;
        let unit = &self.coeffs;
        let lead_inv = unit[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(unit.len());
        out.push(lead_inv.clone());
        for i in 1..unit.len() {
            let acc: Rational = (1..=i)
                .filter(|&j| !unit[j].is_zero())
                .map(|j| &unit[j] * &out[i - j])
                .sum();
            out.push(-(acc * &lead_inv));
        }
        Ok(EpsSeries::new(-p, out))
    }

    /// Inverse truncated at `order`; errors if the input cannot determine it.
    pub fn invert_to(&self, order: i32) -> Result<Self> {
        self.invert()?.to_order(order)
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return EpsSeries::one(self.max_exponent());
        }
        let rel = self.max_exponent() - self.effective_valuation();
        let mut acc = EpsSeries::one(rel);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal substitution `outer(inner(z))`.
    ///
    /// `inner` must vanish at zero and `outer` must have no negative powers.
    pub fn compose(outer: &EpsSeries, inner: &EpsSeries) -> Result<Self> {
        if outer.min_exp < 0 {
            return Err(Error::domain("outer series of a composition has negative powers"));
        }
        let q = inner.effective_valuation();
        if q <= 0 {
            return Err(Error::NonzeroConstantTerm);
        }
        let outer_order = outer.max_exponent();
        let order = (q * (outer_order + 1) - 1).min(inner.max_exponent());
        if order < 0 {
            return Ok(EpsSeries::zero(order));
        }
        let len = order as usize + 1;
        let inner_poly: Vec<Rational> = (0..len as i32).map(|e| inner.coeff(e)).collect();
        let mut acc = vec![Rational::zero(); len];
        for e in (0..=outer_order).rev() {
            acc = poly_mul_trunc(&acc, &inner_poly, len);
            acc[0] += outer.coeff(e);
        }
        Ok(EpsSeries::new(0, acc))
    }
}

fn poly_mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl Mul<&EpsSeries> for &EpsSeries {
    type Output = EpsSeries;
    fn mul(self, rhs: &EpsSeries) -> EpsSeries {
        EpsSeries::mul(self, rhs)
    }
}

impl Add<&EpsSeries> for &EpsSeries {
    type Output = EpsSeries;
    fn add(self, rhs: &EpsSeries) -> EpsSeries {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub<&EpsSeries> for &EpsSeries {
    type Output = EpsSeries;
    fn sub(self, rhs: &EpsSeries) -> EpsSeries {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &EpsSeries {
    type Output = EpsSeries;
    fn neg(self) -> EpsSeries {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*eps")?,
                _ => write!(f, "{c}*eps^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(eps^{})", self.max_exponent() + 1)
    }
}

impl fmt::Debug for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
