use serde::{Deserialize, Serialize};

use crate::burn::{verify_schedule, BurningSchedule};
use crate::graph::Graph;

use super::BoundError;

/// A maximal set of vertices with pairwise-disjoint closed `r`-balls and
/// the schedule that burns the graph in `|A| + 2r` rounds from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingCertificate {
    pub radius: usize,
    pub packing: Vec<usize>,
    /// `(v, a)` for every vertex `v` outside the packing: `a` is a member
    /// within distance `2r`, which is what blocked `v`.
    pub blocked_by: Vec<(usize, usize)>,
    pub bound: usize,
    pub schedule: BurningSchedule,
}

impl PackingCertificate {
    /// Rechecks disjointness, maximality and the schedule from scratch.
    pub fn check(&self, graph: &Graph) -> bool {
        let n = graph.vertex_count();
        let r = self.radius;
        let dist: Vec<_> = self.packing.iter().map(|&a| graph.distances_from(a)).collect();
        let disjoint = dist.iter().enumerate().all(|(i, di)| {
            self.packing[i + 1..].iter().all(|&b| di.dist[b].is_none_or(|d| d > 2 * r))
        });
        let mut accounted = vec![false; n];
        for &a in &self.packing {
            accounted[a] = true;
        }
        let maximal = self.blocked_by.iter().all(|&(v, a)| {
            accounted[v] = true;
            self.packing.iter().position(|&x| x == a).is_some_and(|i| dist[i].dist[v].is_some_and(|d| d <= 2 * r))
        });
        disjoint
            && maximal
            && accounted.into_iter().all(|x| x)
            && self.bound == self.packing.len() + 2 * r
            && self.schedule.rounds() == self.bound
            && verify_schedule(graph, &self.schedule).unwrap_or(false)
    }
}

/// Greedy maximal packing in ascending vertex order: `v` joins when no
/// member lies within distance `2r`.
pub fn greedy_packing(graph: &Graph, r: usize) -> Result<PackingCertificate, BoundError> {
    if r == 0 {
        return Err(BoundError::ZeroRadius);
    }
    graph.require_connected()?;
    let n = graph.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut packing = Vec::new();
    let mut blocked_by = Vec::new();
    for v in 0..n {
        if let Some(a) = owner[v] {
            blocked_by.push((v, a));
            continue;
        }
        packing.push(v);
        for u in graph.closed_neighborhood(v, 2 * r) {
            owner[u].get_or_insert(v);
        }
    }

    let bound = packing.len() + 2 * r;
    let mut covered = vec![false; n];
    let mut sources = Vec::with_capacity(bound);
    for i in 0..bound {
        let x = match packing.get(i) {
            Some(&a) => a,
            None => covered.iter().position(|&c| !c).unwrap_or(0),
        };
        for u in graph.closed_neighborhood(x, bound - 1 - i) {
            covered[u] = true;
        }
        sources.push(x);
    }
    let schedule = BurningSchedule::new(sources).expect("bound is at least 2");
    Ok(PackingCertificate { radius: r, packing, blocked_by, bound, schedule })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingSummary {
    /// `(r, |A_r| + 2r)` for every `r` in `1..=rad`.
    pub per_radius: Vec<(usize, usize)>,
    /// Certificate for the smallest packing bound, lowest `r` on ties.
    pub best: Option<PackingCertificate>,
    pub center: usize,
    /// Rounds to burn everything from a center alone: `rad + 1`.
    pub center_burn_bound: usize,
    /// Smaller of the best packing bound and the center-burn bound.
    pub bound: usize,
}

pub fn best_packing_bound(graph: &Graph) -> Result<PackingSummary, BoundError> {
    let ecc = graph.eccentricities()?;
    let mut per_radius = Vec::with_capacity(ecc.radius);
    let mut best: Option<PackingCertificate> = None;
    for r in 1..=ecc.radius {
        let cert = greedy_packing(graph, r)?;
        per_radius.push((r, cert.bound));
        if best.as_ref().is_none_or(|b| cert.bound < b.bound) {
            best = Some(cert);
        }
    }
    let center_burn_bound = ecc.radius + 1;
    let bound = best.as_ref().map_or(center_burn_bound, |b| b.bound.min(center_burn_bound));
    Ok(PackingSummary { per_radius, best, center: ecc.center, center_burn_bound, bound })
}
