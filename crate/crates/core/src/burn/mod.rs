//! Burning numbers through the ball-cover formulation.
//!
//! A schedule `x_1, …, x_k` burns `G` in `k` rounds exactly when the balls
//! `N_{k-i}(x_i)` cover every vertex. Sources may repeat; a repeated
//! source's ball is contained in the earlier, larger one, so the minimum
//! `k` is unaffected.

mod oracle;
mod solver;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::intmath::ceil_sqrt;

pub use oracle::{burning_number_bruteforce, spanning_tree_oracle, SpanningOracle, BRUTEFORCE_MAX_VERTICES};
pub use solver::BallCoverSolver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurnError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("schedule source {vertex} is not a vertex of a graph on {vertex_count} vertices")]
    SourceOutOfRange { vertex: usize, vertex_count: usize },
    #[error("a schedule needs at least one source")]
    EmptySchedule,
    #[error("burning number is unknown above the budget of {budget} rounds")]
    BudgetExhausted { budget: usize },
    #[error("graph has {vertex_count} vertices, above the cap of {cap}")]
    TooLarge { vertex_count: usize, cap: usize },
}

/// Ordered source sequence; source `i` (0-based) is lit in round `i + 1`
/// and has burned radius `rounds - 1 - i` at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurningSchedule {
    pub sources: Vec<usize>,
}

impl BurningSchedule {
    pub fn new(sources: Vec<usize>) -> Result<Self, BurnError> {
        if sources.is_empty() {
            return Err(BurnError::EmptySchedule);
        }
        Ok(BurningSchedule { sources })
    }

    pub fn rounds(&self) -> usize {
        self.sources.len()
    }

    /// `(source, radius)` pairs in lighting order.
    pub fn balls(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.rounds();
        self.sources.iter().enumerate().map(move |(i, &x)| (x, k - 1 - i))
    }
}

/// Why the search proved that `burning_number - 1` rounds are not enough.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LowerBoundProof {
    /// One round is the minimum for any graph.
    SingleRound,
    /// Even the largest balls of radii `0..k-1` hold fewer than `n` vertices.
    BallCapacity { rounds: usize },
    /// A diametral path has `diameter + 1 > (k-1)^2` vertices, more than
    /// `k - 1` balls can cover along a geodesic.
    Geodesic { diameter: usize },
    /// Exhaustive search over schedules of `rounds` sources found none.
    ExhaustiveSearch { rounds: usize, nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub burning_number: usize,
    pub witness: BurningSchedule,
    pub lower_bound_proof: LowerBoundProof,
}

/// Outcome of the conjecture check at `k = ⌈√n⌉`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellBurnability {
    pub well_burnable: bool,
    pub rounds_checked: usize,
    /// A schedule of `rounds_checked` sources when `well_burnable` holds.
    pub witness: Option<BurningSchedule>,
}

/// True iff the balls of `schedule` cover every vertex of `graph`.
pub fn verify_schedule(graph: &Graph, schedule: &BurningSchedule) -> Result<bool, BurnError> {
    let n = graph.vertex_count();
    if let Some(&source) = schedule.sources.iter().find(|&&x| x >= n) {
        return Err(BurnError::SourceOutOfRange { vertex: source, vertex_count: n });
    }
    let mut covered = vec![false; n];
    for (x, radius) in schedule.balls() {
        for v in graph.closed_neighborhood(x, radius) {
            covered[v] = true;
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Exact burning number with a verified witness.
///
/// Iterative deepening on `k` from a capacity lower bound; each `k` is a
/// depth-first ball-cover search (see [`BallCoverSolver`]). When the search
/// would need more than `budget` rounds, returns
/// [`BurnError::BudgetExhausted`] instead of a guess.
pub fn burning_number_exact(graph: &Graph, budget: Option<usize>) -> Result<ExactResult, BurnError> {
    let mut solver = BallCoverSolver::new(graph)?;
    solver.solve(budget)
}

/// Checks `b(G) ≤ ⌈√n⌉` with a single decision search at `k = ⌈√n⌉`.
pub fn is_well_burnable(graph: &Graph) -> Result<WellBurnability, BurnError> {
    let mut solver = BallCoverSolver::new(graph)?;
    let k = ceil_sqrt(graph.vertex_count() as u64) as usize;
    let witness = solver.decide(k);
    Ok(WellBurnability { well_burnable: witness.is_some(), rounds_checked: k, witness })
}
