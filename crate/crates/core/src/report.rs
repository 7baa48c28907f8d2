//! One JSON document per command invocation.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{LinearThreshold, TetherBoundReport, TriangleFreeVerdict};
use crate::burn::{BurningSchedule, LowerBoundProof};
use crate::campaign::{CampaignSpec, CampaignState, RunStatus};
use crate::degree::DegreeProfile;
use crate::registry::BoundOutcome;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn digest_bytes(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub payload: Payload,
    pub provenance: Vec<Provenance>,
}

impl Report {
    pub fn new(command: Vec<String>, input_digest: Option<String>, payload: Payload) -> Self {
        let provenance = payload.provenance();
        Report { tool_version: TOOL_VERSION.to_string(), command, input_digest, payload, provenance }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Which method produced a reported quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub quantity: String,
    pub method: String,
}

fn note(quantity: &str, method: &str) -> Provenance {
    Provenance { quantity: quantity.to_string(), method: method.to_string() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Exact(ExactPayload),
    Bound(BoundPayload),
    Tree(TreePayload),
    Campaign(CampaignPayload),
    Verify(VerifyPayload),
}

impl Payload {
    fn provenance(&self) -> Vec<Provenance> {
        match self {
            Payload::Exact(p) => vec![
                note("burning_number", &format!("{} solver", p.solver)),
                note("witness", "ball-cover search, rechecked by schedule verification"),
                note("well_burnable", "burning_number <= ceil(sqrt(n))"),
            ],
            Payload::Bound(p) => {
                let mut notes = vec![note("bound.rounds", &p.bound.method)];
                if p.trianglefree.is_some() {
                    notes.push(note("trianglefree", "spanning caterpillar, closed form, or tether engine"));
                }
                if p.linear_threshold.is_some() {
                    notes.push(note("linear_threshold", "exact closed form with integer correction"));
                }
                notes
            }
            Payload::Tree(_) => vec![
                note("stripped_criterion", "leaf stripping plus the non-leaf burning bound"),
                note("min_degree_criterion", "stripped criterion at n' = floor((n-2)/(d-1))"),
                note("degree_two_threshold", "ceiling-free strengthening, exact integer test"),
                note("excess_degree", "exact rational sum over degrees >= 4"),
            ],
            Payload::Campaign(_) => vec![note("tallies", "exhaustive free-tree enumeration with per-tree checks")],
            Payload::Verify(_) => vec![note("valid", "ball-cover check of the schedule")],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactPayload {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub solver: String,
    pub burning_number: usize,
    /// Sources as vertex indices after label compaction.
    pub witness: BurningSchedule,
    /// The same sources as input labels.
    pub witness_labels: Vec<u64>,
    pub lower_bound_proof: Option<LowerBoundProof>,
    pub sqrt_rounds: usize,
    pub well_burnable: bool,
}

/// An integer bound together with the method that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedBound {
    pub rounds: u64,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPayload {
    pub n: u64,
    pub bound: TaggedBound,
    /// Present when a graph was supplied.
    pub outcome: Option<BoundOutcome>,
    /// Present in pure-`n` mode, where no graph exists to check.
    pub tether: Option<TetherBoundReport>,
    pub trianglefree: Option<TriangleFreeVerdict>,
    pub linear_threshold: Option<LinearThreshold>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateOutcome {
    pub holds: bool,
    /// "well-burnable" when the predicate holds, otherwise "inconclusive":
    /// a false predicate never shows that a tree is hard to burn.
    pub conclusion: String,
}

impl PredicateOutcome {
    pub fn new(holds: bool, conclusion_if_true: &str) -> Self {
        let conclusion = if holds { conclusion_if_true } else { "inconclusive" };
        PredicateOutcome { holds, conclusion: conclusion.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTwoThreshold {
    pub p: String,
    /// `None` when `p ≥ 2/3`.
    pub threshold: Option<u64>,
    /// Holds when `n′` reaches the threshold.
    #[serde(flatten)]
    pub outcome: PredicateOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDegreeOutcome {
    pub d: u64,
    #[serde(flatten)]
    pub outcome: PredicateOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePayload {
    pub profile: DegreeProfile,
    pub stripped_criterion: Option<PredicateOutcome>,
    pub min_degree_criterion: Option<MinDegreeOutcome>,
    pub degree_two_threshold: Option<DegreeTwoThreshold>,
    pub excess_degree: Option<PredicateOutcome>,
    /// Exact check at `⌈√n⌉` rounds, when a tree (not just a histogram) was
    /// given.
    pub exact_well_burnable: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignPayload {
    pub spec: CampaignSpec,
    pub spec_digest: String,
    pub status: RunStatus,
    pub state: CampaignState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub vertex_count: usize,
    pub rounds: usize,
    pub sources: Vec<u64>,
    pub valid: bool,
}
