//! Highly connected subgraphs of large chromatic number via template
//! inextensibility: exact oracles, the constructive extension pipelines, and
//! the extremal constructions that show the bounds are tight.

pub mod budget;
pub mod coloring;
pub mod connectivity;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod lab;
pub mod proof;
pub mod sequence;
pub mod shrink;
pub mod template;
pub mod witness;

pub use budget::{Budget, BudgetExhausted, BudgetKind};
pub use coloring::{
    check_proper, check_respects, chromatic_number, find_coloring, find_respecting_coloring,
    Color, ColorSet, Coloring, SolveError,
};
pub use connectivity::{find_cutset, vertex_connectivity_at_least, Separation};
pub use graph::{induced_subgraph, Graph, GraphError, InducedSubgraph, VertexSet};
pub use proof::{
    extend_316k, extend_4k, extract_subgraph, reduce_classes, ExtensionOutcome, ExtractionReport,
    PipelineTrace, ProofError, ReductionState, Variant,
};
pub use sequence::{
    critical_sequence, fit_singletons, jump_profile, partition_bounded, FitSequence, JumpProfile,
    SequenceError, TermKind, WeightedClass,
};
pub use shrink::{minimal_inextensible_subgraph, ShrinkChecks, ShrinkError, ShrinkMode, ShrinkOutcome};
pub use template::{Template, TemplateError, TemplateJson};
pub use witness::{enumerate_witness, goodify, verify_witness, Witness, WitnessError};
