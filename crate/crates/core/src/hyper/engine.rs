//! Term-by-term expansion of a [`HyperTermSpec`] over the lattice
//! `m1 + m2 <= degree_bound`.
//!
//! Each lattice point is an independent exact series computation, so points
//! can be evaluated in any order or concurrently; results are merged into a
//! sorted map, making the table identical for every execution mode.

use std::collections::BTreeMap;

use super::spec::{HyperFactor, HyperTermSpec};
use super::table::{ExpansionTable, TableKey};
use crate::arith::{EpsSeries, Rational};
use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::pochhammer::{poch_eps_series, LinearParam};

/// How lattice points are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the rayon thread pool when the `parallel` feature is enabled and
    /// falls back to sequential evaluation otherwise.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

type PointResult = Result<Vec<(TableKey, Rational)>>;

fn lattice(degree_bound: u32) -> Vec<(u32, u32)> {
    (0..=degree_bound)
        .flat_map(|m1| (0..=degree_bound - m1).map(move |m2| (m1, m2)))
        .collect()
}

fn run_lattice<F>(degree_bound: u32, execution: Execution, point: F) -> Result<BTreeMap<TableKey, Rational>>
where
    F: Fn(u32, u32) -> PointResult + Sync,
{
    let points = lattice(degree_bound);
    let results: Vec<PointResult> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            points.par_iter().map(|&(a, b)| point(a, b)).collect()
        }
        _ => points.iter().map(|&(a, b)| point(a, b)).collect(),
    };
    // results are in lattice order, so the first error is deterministic
    let mut entries = BTreeMap::new();
    for r in results {
        entries.extend(r?);
    }
    Ok(entries)
}

fn lattice_scale(m1: u32, m2: u32) -> Rational {
    (factorial(m1 as usize) * factorial(m2 as usize)).recip()
}

/// Number of factors of `(p)_len` vanishing at `eps = 0`, or a pole error if
/// one of them can never be cancelled.
fn zero_factors(p: &LinearParam, len: usize, laurent: bool, m1: u32, m2: u32, idx: usize) -> Result<i32> {
    let mut count = 0;
    for j in 0..len {
        if (&p.constant + Rational::from(j)).is_zero() {
            if p.slope.is_zero() || !laurent {
                return Err(Error::Pole {
                    index: j,
                    context: format!(
                        "denominator factor {idx} ({}+{}*eps)_{len} vanishes at eps = 0 for lattice point (m1={m1}, m2={m2})",
                        p.constant, p.slope
                    ),
                });
            }
            count += 1;
        }
    }
    Ok(count)
}

fn term_series(
    numer: &[(LinearParam, usize)],
    denom: &[(LinearParam, usize)],
    pole_order: i32,
    eps_order: i32,
) -> Result<EpsSeries> {
    // inverting eps^p u known to N yields order N - 2p
    let work = eps_order + 2 * pole_order;
    let mut acc = EpsSeries::one(work);
    for (p, len) in numer {
        acc = acc.mul(&poch_eps_series(p, *len, work));
    }
    let mut den = EpsSeries::one(work);
    for (p, len) in denom {
        den = den.mul(&poch_eps_series(p, *len, work));
    }
    acc.mul(&den.invert()?).to_order(eps_order)
}

fn instantiate(factors: &[HyperFactor], delta: &Rational, m1: u32, m2: u32) -> Vec<(LinearParam, usize)> {
    factors
        .iter()
        .map(|f| (f.param_at(delta), f.law.length(m1, m2)))
        .collect()
}

/// Expands every lattice term through `eps^eps_order`.
pub fn expand_general(spec: &HyperTermSpec, eps_order: i32, degree_bound: u32) -> Result<ExpansionTable> {
    expand_general_with(spec, eps_order, degree_bound, Execution::default())
}

pub fn expand_general_with(
    spec: &HyperTermSpec,
    eps_order: i32,
    degree_bound: u32,
    execution: Execution,
) -> Result<ExpansionTable> {
    let delta = spec.delta()?;
    let laurent = spec.options.laurent;
    let point = |m1: u32, m2: u32| -> PointResult {
        let numer = instantiate(&spec.numer, &delta, m1, m2);
        let denom = instantiate(&spec.denom, &delta, m1, m2);
        let mut pole_order = 0;
        for (idx, (p, len)) in denom.iter().enumerate() {
            pole_order += zero_factors(p, *len, laurent, m1, m2, idx)?;
        }
        let k_min = -pole_order;
        if eps_order < k_min {
            return Ok(Vec::new());
        }
        let series = term_series(&numer, &denom, pole_order, eps_order)?;
        let scale = lattice_scale(m1, m2);
        Ok((k_min..=eps_order)
            .map(|k| ((k, m1, m2), series.coeff(k) * &scale))
            .collect())
    };
    let mut table = ExpansionTable::new(eps_order, degree_bound);
    table.entries = run_lattice(degree_bound, execution, point)?;
    Ok(table)
}

/// A truncated series together with its first derivative in an auxiliary
/// parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSeries {
    pub value: EpsSeries,
    pub deriv: EpsSeries,
}

impl DualSeries {
    pub fn one(order: i32) -> Self {
        DualSeries {
            value: EpsSeries::one(order),
            deriv: EpsSeries::zero(order),
        }
    }

    pub fn mul(&self, other: &DualSeries) -> DualSeries {
        DualSeries {
            value: self.value.mul(&other.value),
            deriv: &self.value.mul(&other.deriv) + &self.deriv.mul(&other.value),
        }
    }

    pub fn invert(&self) -> Result<DualSeries> {
        let inv = self.value.invert()?;
        let deriv = -&self.deriv.mul(&inv).mul(&inv);
        Ok(DualSeries { value: inv, deriv })
    }

    /// `(A + d*delta + a*eps)_len` at `delta = 0`, with its `delta` derivative.
    pub fn pochhammer(factor: &HyperFactor, len: usize, order: i32) -> DualSeries {
        let mut acc = DualSeries::one(order);
        for j in 0..len {
            let linear = DualSeries {
                value: EpsSeries::linear(
                    &factor.param.constant + Rational::from(j),
                    factor.param.slope.clone(),
                    order,
                ),
                deriv: EpsSeries::constant(factor.delta_coeff.clone(), order),
            };
            acc = acc.mul(&linear);
        }
        acc
    }
}

/// `d/d delta` of every coefficient of the expansion, taken at `delta = 0`.
///
/// Any `delta` value in the spec's parameters is ignored.
pub fn delta_dual_expand(spec: &HyperTermSpec, eps_order: i32, degree_bound: u32) -> Result<ExpansionTable> {
    delta_dual_expand_with(spec, eps_order, degree_bound, Execution::default())
}

pub fn delta_dual_expand_with(
    spec: &HyperTermSpec,
    eps_order: i32,
    degree_bound: u32,
    execution: Execution,
) -> Result<ExpansionTable> {
    if spec.options.laurent {
        return Err(Error::domain(
            "delta derivatives are not available with Laurent handling",
        ));
    }
    let zero = Rational::zero();
    let point = |m1: u32, m2: u32| -> PointResult {
        if eps_order < 0 {
            return Ok(Vec::new());
        }
        let mut num = DualSeries::one(eps_order);
        for f in &spec.numer {
            num = num.mul(&DualSeries::pochhammer(f, f.law.length(m1, m2), eps_order));
        }
        let mut den = DualSeries::one(eps_order);
        for (idx, f) in spec.denom.iter().enumerate() {
            let len = f.law.length(m1, m2);
            zero_factors(&f.param_at(&zero), len, false, m1, m2, idx)?;
            den = den.mul(&DualSeries::pochhammer(f, len, eps_order));
        }
        let term = num.mul(&den.invert()?);
        let scale = lattice_scale(m1, m2);
        Ok((0..=eps_order)
            .map(|k| ((k, m1, m2), term.deriv.coeff(k) * &scale))
            .collect())
    };
    let mut table = ExpansionTable::new(eps_order, degree_bound);
    table.entries = run_lattice(degree_bound, execution, point)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::hyper::spec::IndexLaw;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn factor(c: Rational, s: Rational, law: (u32, u32, u32)) -> HyperFactor {
        HyperFactor::new(c, s, IndexLaw::new(law.0, law.1, law.2))
    }

    #[test]
    fn bare_double_series() {
        let t = expand_general(&HyperTermSpec::default(), 2, 4).unwrap();
        for ((k, m1, m2), v) in &t.entries {
            let expect = if *k == 0 { lattice_scale(*m1, *m2) } else { r(0) };
            assert_eq!(v, &expect);
        }
        assert_eq!(t.len(), 3 * 15);
    }

    #[test]
    fn single_term_example() {
        // 2 (2+eps)/(1+eps) at m1 = m2 = 1
        let spec = HyperTermSpec::new(
            vec![factor(r(1), r(0), (0, 1, 1)), factor(r(1), r(1), (0, 1, 1))],
            vec![factor(r(1), r(1), (0, 1, 0)), factor(r(1), r(1), (0, 0, 1))],
        );
        let t = expand_general(&spec, 2, 2).unwrap();
        assert_eq!(t.get(0, 1, 1), Some(&r(4)));
        assert_eq!(t.get(1, 1, 1), Some(&r(-2)));
    }

    #[test]
    fn pole_names_lattice_point() {
        let spec = HyperTermSpec::new(vec![], vec![factor(r(-1), r(1), (0, 1, 0))]);
        match expand_general(&spec, 1, 3).unwrap_err() {
            Error::Pole { index, context } => {
                assert_eq!(index, 1);
                assert!(context.contains("m1=2, m2=0"), "{context}");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn laurent_entries_when_enabled() {
        // 1/(-1 + eps)_{m1}: a simple pole once m1 >= 2
        let mut spec = HyperTermSpec::new(vec![], vec![factor(r(-1), r(1), (0, 1, 0))]);
        spec.options.laurent = true;
        let t = expand_general(&spec, 1, 3).unwrap();
        // 1/((-1+eps) eps) / 2! = -(1/2) eps^-1 - 1/2 - eps/2 + ...
        assert_eq!(t.get(-1, 2, 0), Some(&rat(-1, 2)));
        assert_eq!(t.get(0, 2, 0), Some(&rat(-1, 2)));
        assert_eq!(t.get(1, 2, 0), Some(&rat(-1, 2)));
        assert_eq!(t.get(-1, 1, 0), None);
        assert_eq!(t.get(0, 1, 0), Some(&r(-1)));
    }

    #[test]
    fn execution_modes_agree() {
        let spec = HyperTermSpec::new(
            vec![factor(rat(1, 2), r(-1), (1, 1, 1))],
            vec![factor(r(2), r(3), (0, 2, 1))],
        );
        let a = expand_general_with(&spec, 3, 6, Execution::Sequential).unwrap();
        let b = expand_general_with(&spec, 3, 6, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dual_expansion_examples() {
        // no delta anywhere: identically zero
        let spec = HyperTermSpec::new(vec![factor(r(1), r(1), (0, 1, 1))], vec![factor(r(2), r(1), (0, 1, 0))]);
        let t = delta_dual_expand(&spec, 2, 3).unwrap();
        assert!(t.entries.values().all(Rational::is_zero));

        // d/d delta (1+delta)_{m2} at m2 = 1 is 1
        let spec = HyperTermSpec::new(vec![factor(r(1), r(0), (0, 0, 1)).with_delta(r(1))], vec![]);
        let t = delta_dual_expand(&spec, 1, 2).unwrap();
        assert_eq!(t.get(0, 0, 1), Some(&r(1)));
    }

    #[test]
    fn dual_derivative_of_quadratic() {
        let spec = HyperTermSpec::new(vec![factor(r(1), r(1), (2, 0, 0)).with_delta(r(3))], vec![]);
        let d = delta_dual_expand(&spec, 2, 0).unwrap();
        // (1 + 3 delta + eps)(2 + 3 delta + eps): d/d delta at 0 = 3*(2+eps) + 3*(1+eps)
        assert_eq!(d.get(0, 0, 0), Some(&r(9)));
        assert_eq!(d.get(1, 0, 0), Some(&r(6)));
        assert_eq!(d.get(2, 0, 0), Some(&r(0)));
    }
}
