//! Seeded instance generators for tests and experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform labelled tree via a Prüfer sequence.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 1, "a tree needs a vertex");
    if n <= 2 {
        return Graph::path(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &code {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &code {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf remains");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).expect("Prüfer decoding gives a tree")
}

/// A random spanning tree plus every other pair independently with
/// probability `p`; always connected.
pub fn connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("distinct pairs")
}

fn components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

fn to_graph(adj: &[Vec<usize>]) -> Graph {
    let edges = adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&w| u < w).map(move |&w| (u, w)));
    Graph::from_edges(adj.len(), edges).expect("adjacency lists are simple")
}

/// Connected bipartite graph with minimum degree at least `d`.
///
/// Part sizes are uniform in `[d, 2d + 4]`, each cross pair is an edge with
/// probability `p`, deficient vertices then gain random cross edges until
/// they reach degree `d`, and components are joined by cross edges.
pub fn bipartite_min_degree<R: Rng>(rng: &mut R, d: usize, p: f64) -> Graph {
    assert!(d >= 1);
    let left = rng.gen_range(d..=2 * d + 4);
    let right = rng.gen_range(d..=2 * d + 4);
    let n = left + right;
    let side = |v: usize| v < left;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..left {
        for v in left..n {
            if rng.gen_bool(p) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    for u in 0..n {
        if adj[u].len() >= d {
            continue;
        }
        let mut options: Vec<usize> = (0..n).filter(|&w| side(w) != side(u) && !adj[u].contains(&w)).collect();
        options.shuffle(rng);
        for w in options.into_iter().take(d - adj[u].len()) {
            adj[u].push(w);
            adj[w].push(u);
        }
    }
    loop {
        let comps = components(&adj);
        if comps.len() == 1 {
            break;
        }
        let u = *comps[0].iter().find(|&&v| side(v)).expect("every component has both sides");
        let w = *comps[1].iter().find(|&&v| !side(v)).expect("every component has both sides");
        adj[u].push(w);
        adj[w].push(u);
    }
    to_graph(&adj)
}

/// Connected graph of girth at least 5 and minimum degree at least `d` on
/// `n` vertices, grown by random edges between vertices at distance at least
/// 4. Gives up after `attempts` restarts.
pub fn girth_five_min_degree<R: Rng>(rng: &mut R, n: usize, d: usize, attempts: usize) -> Option<Graph> {
    'attempt: for _ in 0..attempts {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        loop {
            let deficient: Vec<usize> = (0..n).filter(|&v| adj[v].len() < d).collect();
            let Some(&u) = deficient.choose(rng) else { break };
            let far = far_vertices(&adj, u);
            let preferred: Vec<usize> = far.iter().copied().filter(|&w| adj[w].len() < d).collect();
            let pool = if preferred.is_empty() { far } else { preferred };
            let Some(&w) = pool.choose(rng) else { continue 'attempt };
            adj[u].push(w);
            adj[w].push(u);
        }
        // Joining components adds no cycle at all.
        loop {
            let comps = components(&adj);
            if comps.len() == 1 {
                break;
            }
            let (u, w) = (comps[0][0], comps[1][0]);
            adj[u].push(w);
            adj[w].push(u);
        }
        return Some(to_graph(&adj));
    }
    None
}

/// Vertices at distance at least 4 from `u` (or unreachable).
fn far_vertices(adj: &[Vec<usize>], u: usize) -> Vec<usize> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    dist[u] = 0;
    let mut frontier = vec![u];
    for depth in 1..=3 {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = depth;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    (0..n).filter(|&w| dist[w] == usize::MAX).collect()
}
