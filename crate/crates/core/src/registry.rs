//! Named, runtime-selectable strategies: burning solvers, bound methods and
//! per-tree campaign checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{
    best_packing_bound, tether_bound, verify_tethering, BoundError, PackingSummary, TetherBoundReport, TetherCheck,
    Tethering,
};
use crate::burn::{
    burning_number_bruteforce, burning_number_exact, is_well_burnable, spanning_tree_oracle, BurnError,
    BurningSchedule, BRUTEFORCE_MAX_VERTICES,
};
use crate::degree::{stripped_criterion, DegreeError, DegreeProfile};
use crate::graph::Graph;
use crate::trees::TreeCode;

pub trait Strategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown {kind} '{name}' (known: {})", known.join(", "))]
    Unknown { kind: &'static str, name: String, known: Vec<&'static str> },
    #[error("{kind} '{name}' is already registered")]
    Duplicate { kind: &'static str, name: &'static str },
}

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Strategy> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    pub fn register(&mut self, strategy: Box<T>) -> Result<(), RegistryError> {
        let name = strategy.name();
        if self.entries.iter().any(|s| s.name() == name) {
            return Err(RegistryError::Duplicate { kind: self.kind, name });
        }
        self.entries.push(strategy);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&T, RegistryError> {
        self.entries.iter().find(|s| s.name() == name).map(|s| &**s).ok_or_else(|| RegistryError::Unknown {
            kind: self.kind,
            name: name.to_string(),
            known: self.names(),
        })
    }

    /// Names in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|s| &**s)
    }
}

// ---- burning solvers ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOutcome {
    pub burning_number: usize,
    pub witness: Option<BurningSchedule>,
}

pub trait BurningSolver: Strategy {
    fn solve(&self, graph: &Graph, budget: Option<usize>) -> Result<SolverOutcome, BurnError>;
}

struct BranchAndBound;

impl Strategy for BranchAndBound {
    fn name(&self) -> &'static str {
        "branch-and-bound"
    }
    fn summary(&self) -> &'static str {
        "iterative deepening ball-cover search with coverage pruning"
    }
}

impl BurningSolver for BranchAndBound {
    fn solve(&self, graph: &Graph, budget: Option<usize>) -> Result<SolverOutcome, BurnError> {
        let r = burning_number_exact(graph, budget)?;
        Ok(SolverOutcome { burning_number: r.burning_number, witness: Some(r.witness) })
    }
}

fn within_budget(b: usize, budget: Option<usize>) -> Result<usize, BurnError> {
    match budget {
        Some(limit) if b > limit => Err(BurnError::BudgetExhausted { budget: limit }),
        _ => Ok(b),
    }
}

struct BruteForce;

impl Strategy for BruteForce {
    fn name(&self) -> &'static str {
        "bruteforce"
    }
    fn summary(&self) -> &'static str {
        "every source sequence, for graphs on at most 10 vertices"
    }
}

impl BurningSolver for BruteForce {
    fn solve(&self, graph: &Graph, budget: Option<usize>) -> Result<SolverOutcome, BurnError> {
        let b = within_budget(burning_number_bruteforce(graph)?, budget)?;
        Ok(SolverOutcome { burning_number: b, witness: None })
    }
}

struct SpanningTrees;

impl Strategy for SpanningTrees {
    fn name(&self) -> &'static str {
        "spanning-tree"
    }
    fn summary(&self) -> &'static str {
        "minimum over all spanning trees, for graphs on at most 10 vertices"
    }
}

impl BurningSolver for SpanningTrees {
    fn solve(&self, graph: &Graph, budget: Option<usize>) -> Result<SolverOutcome, BurnError> {
        let b = within_budget(spanning_tree_oracle(graph, BRUTEFORCE_MAX_VERTICES)?.burning_number, budget)?;
        Ok(SolverOutcome { burning_number: b, witness: None })
    }
}

pub fn solvers() -> Registry<dyn BurningSolver> {
    let mut r: Registry<dyn BurningSolver> = Registry::new("solver");
    r.register(Box::new(BranchAndBound)).expect("fresh registry");
    r.register(Box::new(BruteForce)).expect("fresh registry");
    r.register(Box::new(SpanningTrees)).expect("fresh registry");
    r
}

// ---- bound methods ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum BoundCertificate {
    Pack(PackingSummary),
    Tether { report: TetherBoundReport, check: TetherCheck },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundOutcome {
    /// Upper bound on the burning number, in rounds.
    pub rounds: usize,
    /// False when the graph violates an assumption the bound relies on.
    pub sound_for_graph: bool,
    pub certificate: BoundCertificate,
}

pub trait BoundMethod: Strategy {
    fn bound(&self, graph: &Graph, tethering: Option<&Tethering>) -> Result<BoundOutcome, BoundError>;
}

struct Packing;

impl Strategy for Packing {
    fn name(&self) -> &'static str {
        "pack"
    }
    fn summary(&self) -> &'static str {
        "greedy disjoint-ball packing: |A| + 2r, or rad + 1 from a center"
    }
}

impl BoundMethod for Packing {
    fn bound(&self, graph: &Graph, _: Option<&Tethering>) -> Result<BoundOutcome, BoundError> {
        let summary = best_packing_bound(graph)?;
        Ok(BoundOutcome { rounds: summary.bound, sound_for_graph: true, certificate: BoundCertificate::Pack(summary) })
    }
}

struct Tether;

impl Strategy for Tether {
    fn name(&self) -> &'static str {
        "tether"
    }
    fn summary(&self) -> &'static str {
        "minimum of n/f(x) + 2x for a tethering f, checked against the graph"
    }
}

impl BoundMethod for Tether {
    fn bound(&self, graph: &Graph, tethering: Option<&Tethering>) -> Result<BoundOutcome, BoundError> {
        let tethering = tethering.ok_or(BoundError::MissingTethering)?;
        let check = verify_tethering(graph, tethering)?;
        let report = tether_bound(graph.vertex_count() as u64, tethering)?;
        Ok(BoundOutcome {
            rounds: report.rounds as usize,
            sound_for_graph: check.holds,
            certificate: BoundCertificate::Tether { report, check },
        })
    }
}

pub fn bound_methods() -> Registry<dyn BoundMethod> {
    let mut r: Registry<dyn BoundMethod> = Registry::new("bound method");
    r.register(Box::new(Packing)).expect("fresh registry");
    r.register(Box::new(Tether)).expect("fresh registry");
    r
}

// ---- tree checks ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "kebab-case")]
pub enum CheckVerdict {
    Verified,
    /// The check has nothing to say about this tree.
    Inconclusive,
    Violated(String),
}

pub trait TreeCheck: Strategy {
    fn check(&self, code: &TreeCode, tree: &Graph) -> CheckVerdict;
}

struct ExactWellBurnable;

impl Strategy for ExactWellBurnable {
    fn name(&self) -> &'static str {
        "exact-well-burnable"
    }
    fn summary(&self) -> &'static str {
        "exact decision search at ceil(sqrt(n)) rounds"
    }
}

impl TreeCheck for ExactWellBurnable {
    fn check(&self, _: &TreeCode, tree: &Graph) -> CheckVerdict {
        match is_well_burnable(tree) {
            Ok(w) if w.well_burnable => CheckVerdict::Verified,
            Ok(w) => CheckVerdict::Violated(format!("no schedule of {} rounds", w.rounds_checked)),
            Err(e) => CheckVerdict::Violated(e.to_string()),
        }
    }
}

struct StrippedCriterion;

impl Strategy for StrippedCriterion {
    fn name(&self) -> &'static str {
        "stripped-criterion"
    }
    fn summary(&self) -> &'static str {
        "ceil(2 sqrt(n'/3)) + 2 <= ceil(sqrt(n)); false is inconclusive"
    }
}

impl TreeCheck for StrippedCriterion {
    fn check(&self, code: &TreeCode, _: &Graph) -> CheckVerdict {
        let holds = DegreeProfile::from_code(code).and_then(|p| stripped_criterion(&p));
        match holds {
            Ok(true) => CheckVerdict::Verified,
            Ok(false) | Err(DegreeError::NoInternalVertices | DegreeError::TooSmall) => CheckVerdict::Inconclusive,
            Err(e) => CheckVerdict::Violated(e.to_string()),
        }
    }
}

struct Handshake;

impl Strategy for Handshake {
    fn name(&self) -> &'static str {
        "handshake"
    }
    fn summary(&self) -> &'static str {
        "2(n-1) = sum k n_k and n = 2 + sum (k-1) n_k"
    }
}

impl TreeCheck for Handshake {
    fn check(&self, code: &TreeCode, tree: &Graph) -> CheckVerdict {
        let n = code.vertex_count() as u64;
        if n < 2 {
            return CheckVerdict::Inconclusive;
        }
        let by_graph: u64 = (0..tree.vertex_count()).map(|v| tree.degree(v) as u64).sum();
        match DegreeProfile::from_code(code) {
            Ok(p) if p.degree_sum() == 2 * (n - 1) && by_graph == 2 * (n - 1) => CheckVerdict::Verified,
            Ok(p) => CheckVerdict::Violated(format!("degree sum {} for {n} vertices", p.degree_sum())),
            Err(e) => CheckVerdict::Violated(e.to_string()),
        }
    }
}

pub fn tree_checks() -> Registry<dyn TreeCheck> {
    let mut r: Registry<dyn TreeCheck> = Registry::new("tree check");
    r.register(Box::new(ExactWellBurnable)).expect("fresh registry");
    r.register(Box::new(StrippedCriterion)).expect("fresh registry");
    r.register(Box::new(Handshake)).expect("fresh registry");
    r
}
