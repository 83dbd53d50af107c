//! Two-dimensional, nine-neighborhood, null-boundary linear cellular
//! automata over GF(2).
//!
//! The crate implements all 512 linear rules (uniform and per-cell hybrid
//! assignments) through two independent execution paths that are tested
//! against each other:
//!
//! * direct synchronous stepping on bit-packed grids ([`step`]),
//! * explicit `mn x mn` rule matrices over GF(2) and their algebra
//!   ([`bitmat`], [`rulemat`]).
//!
//! On top of those sit reversibility classification and state-transition
//! graphs ([`reversibility`]), binary-image transforms — translation,
//! replication, zooming, thickening/thinning ([`transforms`]) — and the
//! gathering sweep that herds every set cell toward a destination point
//! ([`mod@sweep`]). Portable-bitmap I/O lives in [`pbm`].
//!
//! Throughout the crate a set cell (1) is black and cells outside the
//! grid read as 0 and stay 0: the null boundary.

pub mod bitmat;
pub mod error;
pub mod grid;
pub mod pbm;
pub mod reversibility;
pub mod rule;
pub mod rulemat;
pub mod step;
pub mod sweep;
pub mod transforms;

pub use bitmat::BitMatrix;
pub use error::{Error, ParseError};
pub use grid::Grid;
pub use pbm::{read_image, write_image, ImageFormat};
pub use reversibility::{
    always_invertible_set, half_plane_rules, order_of, reversibility_report, state_graph,
    unipotent_rules, ReversibilityReport, StateGraph,
};
pub use rule::{NeighborOffset, Rule};
pub use rulemat::{
    apply, basic_matrix, block_rule_matrix, hybrid_matrix, hybrid_matrix_from_rules, rule_matrix,
    to_dependency_map, BoundarySequence, DependencyMap, SequenceKind,
};
pub use step::{evolve, step_hybrid, step_uniform, HybridSpec};
pub use sweep::{metrics, sweep, sweep_iteration, SweepConfig, SweepMetrics, SweepMode};
pub use transforms::{
    connected_components, hybrid4, replicate_prediction, replication_check, seed, translate,
    Direction, FourRegionOp, RegionPartition, ReplicationCheck, SeedShape,
};
