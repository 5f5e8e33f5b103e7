//! Exact scalars and truncated Laurent series.

mod rational;
mod series;

pub use rational::{rat, ParseRationalError, Rational};
pub use series::{Elementary, EpsSeries};
