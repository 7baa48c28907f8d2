//! Upper bounds on the burning number: disjoint-ball packings with an
//! explicit schedule, and minimisation of `n/f(x) + 2x` for a tethering `f`.

mod packing;
mod tether;
mod thresholds;

use thiserror::Error;

use crate::graph::GraphError;

pub use packing::{best_packing_bound, greedy_packing, PackingCertificate, PackingSummary};
pub use tether::{
    tether_bound, trianglefree_preset, verify_tethering, Piece, PieceForm, ScanPoint, TetherBoundReport, TetherCheck,
    TetherViolation, Tethering, TetheringError, SCAN_LIMIT, TRACE_LIMIT,
};
pub use thresholds::{
    caterpillar_condition, linear_threshold, linear_threshold_scan, trianglefree_wellburnable, LinearThreshold,
    TriangleFreeVerdict, VerdictBranch,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tethering(#[from] TetheringError),
    #[error("the tether method needs a tethering")]
    MissingTethering,
    #[error("packing radius must be at least 1")]
    ZeroRadius,
    #[error("a bound needs at least one vertex")]
    NoVertices,
    #[error("tethering evaluates to {value} at x = {x}")]
    NonPositiveTethering { x: f64, value: f64 },
    #[error("integer scan would need {limit} points, above the cap of {}", SCAN_LIMIT)]
    ScanTooLong { limit: u64 },
}
