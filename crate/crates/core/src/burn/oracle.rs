use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::trees::canonical_code;

use super::{burning_number_exact, BurnError};

pub const BRUTEFORCE_MAX_VERTICES: usize = 10;

/// Minimum `k` by trying every length-`k` source sequence, `k` ascending.
///
/// Shares no code with the branch-and-bound solver; distances come from
/// repeated edge relaxation.
pub fn burning_number_bruteforce(graph: &Graph) -> Result<usize, BurnError> {
    let n = graph.vertex_count();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(BurnError::TooLarge { vertex_count: n, cap: BRUTEFORCE_MAX_VERTICES });
    }
    graph.require_connected()?;

    let far = n + 1;
    let mut dist = vec![vec![far; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0;
    }
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    for _ in 0..n {
        for &(u, v) in &edges {
            for row in dist.iter_mut() {
                let (du, dv) = (row[u], row[v]);
                row[v] = dv.min(du + 1);
                row[u] = du.min(dv + 1);
            }
        }
    }

    for k in 1..=n {
        let mut seq = vec![0usize; k];
        'sequences: loop {
            let covers = (0..n).all(|u| seq.iter().enumerate().any(|(i, &x)| dist[x][u] < k - i));
            if covers {
                return Ok(k);
            }
            for pos in (0..k).rev() {
                seq[pos] += 1;
                if seq[pos] < n {
                    continue 'sequences;
                }
                seq[pos] = 0;
            }
            break;
        }
    }
    unreachable!("a connected graph burns within n rounds")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningOracle {
    pub burning_number: usize,
    pub spanning_trees: u64,
    /// Isomorphism classes among the spanning trees.
    pub distinct_shapes: usize,
}

/// `min b(T)` over all spanning trees `T`, each solved exactly (results are
/// cached per isomorphism class).
pub fn spanning_tree_oracle(graph: &Graph, cap: usize) -> Result<SpanningOracle, BurnError> {
    let n = graph.vertex_count();
    if n > cap {
        return Err(BurnError::TooLarge { vertex_count: n, cap });
    }
    graph.require_connected()?;

    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut cache: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut best = usize::MAX;
    let mut spanning_trees = 0u64;
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    enumerate_spanning_trees(n, &edges, 0, &mut chosen, &mut |tree_edges| {
        spanning_trees += 1;
        let tree = Graph::from_edges(n, tree_edges.iter().copied()).expect("subset of a simple graph");
        let code = canonical_code(&tree).expect("spanning tree").into_levels();
        let b = *cache.entry(code).or_insert_with(|| {
            burning_number_exact(&tree, None).expect("trees are connected").burning_number
        });
        best = best.min(b);
    });
    Ok(SpanningOracle { burning_number: best, spanning_trees, distinct_shapes: cache.len() })
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut count = n;
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Include/exclude recursion; a branch is entered only while a spanning tree
/// is still reachable from it.
type Edges<'a> = &'a [(usize, usize)];

fn enumerate_spanning_trees(
    n: usize,
    edges: &[(usize, usize)],
    index: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(Edges<'_>),
) {
    if chosen.len() + 1 == n || n == 0 {
        visit(chosen);
        return;
    }
    if index == edges.len() {
        return;
    }
    let (u, v) = edges[index];
    let acyclic = components(n, chosen.iter().copied()) > components(n, chosen.iter().copied().chain([(u, v)]));
    if acyclic {
        chosen.push((u, v));
        enumerate_spanning_trees(n, edges, index + 1, chosen, visit);
        chosen.pop();
    }
    if components(n, chosen.iter().copied().chain(edges[index + 1..].iter().copied())) == 1 {
        enumerate_spanning_trees(n, edges, index + 1, chosen, visit);
    }
}
