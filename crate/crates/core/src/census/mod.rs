//! Odd-index subgroup censuses and the desk-scale classification checks.

mod enumerate;
mod lattice;
mod verify;

use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_2at_coset_graphs, CensusGraph, GraphCensus, IDENTIFY_BUDGET, MAX_S};
pub use lattice::{
    class_group, maximal_odd_index_subgroups, odd_index_subgroups, sylow2_for, MaximalShape,
    SubgroupCensus, SubgroupRecord,
};
pub use verify::{
    expected_exceptions, predicted_families, verify_exceptional_degree6, verify_maximal_shapes,
    verify_graph_families, verify_insoluble_factors, Degree6Entry, Degree6Report, ExceptionEntry,
    MaximalShapeEntry, MaximalShapeReport, GraphFamilyDegree, GraphFamilyReport, InsolubleFactorReport,
};

/// Report schema version.
pub const SCHEMA: &str = "census-v1";

/// Outcome of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// The computed outcome contradicts the expected statement.
    Fail,
    /// A resource cap stopped the computation.
    Undecided,
}
