use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::graph::{Eccentricities, Graph};
use crate::intmath::ceil_sqrt;

use super::{BurnError, BurningSchedule, ExactResult, LowerBoundProof};

/// Failed `(depth, uncovered)` states kept per decision search.
const FAILURE_MEMO_CAP: usize = 1 << 20;

/// Depth-first search over ball covers for one connected graph.
///
/// Sources are assigned largest radius first. At each level the candidate
/// centers are restricted to those whose ball, intersected with the
/// still-uncovered set, is not contained in another candidate's (keeping the
/// lowest index among equals), and are tried in order of decreasing new
/// coverage. A branch is cut when even the most productive remaining balls
/// cannot reach the number of uncovered vertices.
pub struct BallCoverSolver<'g> {
    graph: &'g Graph,
    distances: Vec<Vec<usize>>,
    ecc: Eccentricities,
    /// `balls[r][v]` is `N_r(v)`, built on demand.
    balls: Vec<Vec<BitSet>>,
    /// `max_ball[r]` is `max_v |N_r(v)|`.
    max_ball: Vec<usize>,
    failed: HashSet<(usize, BitSet)>,
    nodes: u64,
    last_failed_nodes: u64,
}

impl<'g> BallCoverSolver<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self, BurnError> {
        let ecc = graph.eccentricities()?;
        Ok(BallCoverSolver {
            graph,
            distances: graph.all_pairs_distances(),
            ecc,
            balls: Vec::new(),
            max_ball: Vec::new(),
            failed: HashSet::new(),
            nodes: 0,
            last_failed_nodes: 0,
        })
    }

    /// Search nodes expanded so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn ensure_radius(&mut self, r: usize) {
        let n = self.graph.vertex_count();
        while self.balls.len() <= r {
            let radius = self.balls.len();
            let level: Vec<BitSet> = (0..n)
                .map(|v| BitSet::from_iter(n, (0..n).filter(|&u| self.distances[v][u] <= radius)))
                .collect();
            self.max_ball.push(level.iter().map(BitSet::count).max().unwrap_or(0));
            self.balls.push(level);
        }
    }

    /// Smallest `k` with enough ball capacity for `n` vertices.
    fn capacity_bound(&mut self) -> usize {
        let n = self.graph.vertex_count();
        let mut total = 0;
        let mut k = 0;
        while total < n {
            self.ensure_radius(k);
            total += self.max_ball[k];
            k += 1;
        }
        k.max(1)
    }

    /// Smallest `k` with `k^2 ≥ diameter + 1`: a ball of radius `i` meets a
    /// geodesic in at most `2i + 1` vertices.
    fn geodesic_bound(&self) -> usize {
        (ceil_sqrt(self.ecc.diameter as u64 + 1) as usize).max(1)
    }

    fn center_schedule(&self, k: usize) -> BurningSchedule {
        let mut sources = vec![self.ecc.center];
        sources.resize(k, self.ecc.center);
        BurningSchedule { sources }
    }

    /// A schedule of exactly `k` sources, if one exists.
    pub fn decide(&mut self, k: usize) -> Option<BurningSchedule> {
        if k == 0 {
            return None;
        }
        if k > self.ecc.radius {
            return Some(self.center_schedule(k));
        }
        if k < self.capacity_bound() || k < self.geodesic_bound() {
            return None;
        }
        self.ensure_radius(k - 1);
        self.failed.clear();
        let uncovered = BitSet::full(self.graph.vertex_count());
        let mut sources = Vec::with_capacity(k);
        if self.search(k, 0, &uncovered, &mut sources) {
            Some(BurningSchedule { sources })
        } else {
            None
        }
    }

    pub fn solve(&mut self, budget: Option<usize>) -> Result<ExactResult, BurnError> {
        let capacity = self.capacity_bound();
        let geodesic = self.geodesic_bound();
        let start = capacity.max(geodesic);
        let start_proof = if start == 1 {
            LowerBoundProof::SingleRound
        } else if capacity >= geodesic {
            LowerBoundProof::BallCapacity { rounds: start - 1 }
        } else {
            LowerBoundProof::Geodesic { diameter: self.ecc.diameter }
        };

        let mut k = start;
        loop {
            if budget.is_some_and(|b| k > b) {
                return Err(BurnError::BudgetExhausted { budget: budget.unwrap() });
            }
            let before = self.nodes;
            if let Some(witness) = self.decide(k) {
                let lower_bound_proof = if k == start {
                    start_proof
                } else {
                    LowerBoundProof::ExhaustiveSearch { rounds: k - 1, nodes: self.last_failed_nodes }
                };
                return Ok(ExactResult { burning_number: k, witness, lower_bound_proof });
            }
            self.last_failed_nodes = self.nodes - before;
            k += 1;
        }
    }

    fn search(&mut self, k: usize, depth: usize, uncovered: &BitSet, sources: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        if uncovered.is_empty() {
            let filler = sources.first().copied().unwrap_or(0);
            sources.resize(k, filler);
            return true;
        }
        if depth == k {
            return false;
        }
        let key = (depth, uncovered.clone());
        if self.failed.contains(&key) {
            return false;
        }

        let radius = k - 1 - depth;
        let level = &self.balls[radius];
        let mut candidates: Vec<(usize, usize)> = (0..self.graph.vertex_count())
            .filter_map(|v| {
                let gain = level[v].intersection_count(uncovered);
                (gain > 0).then_some((gain, v))
            })
            .collect();
        let best = candidates.iter().map(|c| c.0).max().unwrap_or(0);
        // Balls of smaller radius nest inside the same center's larger ball.
        let capacity: usize = (0..=radius).map(|r| self.max_ball[r].min(best)).sum();
        if capacity < uncovered.count() {
            self.remember_failure(key);
            return false;
        }

        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut kept: Vec<usize> = Vec::with_capacity(candidates.len());
        for &(_, v) in &candidates {
            if !kept.iter().any(|&w| level[v].is_subset_within(&level[w], uncovered)) {
                kept.push(v);
            }
        }

        for v in kept {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.balls[radius][v]);
            sources.push(v);
            if self.search(k, depth + 1, &rest, sources) {
                return true;
            }
            sources.pop();
        }
        self.remember_failure(key);
        false
    }

    fn remember_failure(&mut self, key: (usize, BitSet)) {
        if self.failed.len() < FAILURE_MEMO_CAP {
            self.failed.insert(key);
        }
    }
}
