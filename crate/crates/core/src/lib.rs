//! Degree-sequence realization: graphicality tests, star-constrained tests,
//! exhaustive enumeration, exact counting and random sampling of simple
//! labeled graphs with a prescribed degree sequence.

pub mod cli;
pub mod constrained;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod graphicality;
pub mod model;
pub mod oracle;
pub mod sampling;

pub use constrained::{
    cg_test, colex_less, leftmost_restricted, reduce_by_set, set_leq, ReducedSequence,
};
pub use enumeration::{
    all_adjacency_sets, count_parallel, count_realizations, count_with_budget, enumerate_all,
    enumerate_parallel, rightmost_adjacency_set, CountResult, Realizations,
};
pub use error::{Error, Result};
pub use graphicality::{
    erdos_gallai_test, havel_hakimi_construct, havel_hakimi_reduce, is_graphical, EgReport,
    NodeSelectionPolicy,
};
pub use model::{
    sort_input_sequence, validate_input_sequence, AdjacencySet, DegreeSequence, ForbiddenSet,
    LabeledGraph, NodeLabel, ValidatedSequence,
};
pub use sampling::{
    estimate_count, molloy_reed_sample, sample_weighted, Estimate, MrConfig, MrRunStats,
    RealizationSample,
};
