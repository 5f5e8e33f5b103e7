//! Exact epsilon expansions built on derivatives of Pochhammer symbols.
//!
//! * [`arith`]: canonical rationals and truncated Laurent series.
//! * [`combinatorics`]: Stirling numbers, generalized Bernoulli numbers, harmonic sums.
//! * [`pochhammer`]: normalized derivatives of `(a)_m`, `1/(b)_m` and their quotients.
//! * [`partial_fractions`]: simple-pole decompositions of Pochhammer quotients.
//! * [`hyper`]: lattice expansions of double series, closed forms and table output.
//! * [`verify`]: a registry of checkable identities and generating relations.

use std::collections::BTreeMap;

pub mod arith;
pub mod combinatorics;
pub mod error;
pub mod hyper;
pub mod partial_fractions;
pub mod pochhammer;
pub mod verify;

pub use arith::{rat, EpsSeries, Rational};
pub use error::{Error, Result};

/// Named rational parameters such as `delta`, `m` or `k`.
pub type Params = BTreeMap<String, Rational>;
