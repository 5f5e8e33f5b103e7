//! Epsilon expansions of double hypergeometric-class series.

mod closed;
mod engine;
mod spec;
mod table;

pub use closed::{expand_closed, ClosedForm};
pub use engine::{
    delta_dual_expand, delta_dual_expand_with, expand_general, expand_general_with, DualSeries, Execution,
};
pub use spec::{HyperFactor, HyperTermSpec, IndexLaw, Regrouping, SpecOptions};
pub use table::{emit_table, regroup_total_degree, ExpansionTable, TableFormat, TableKey};
