#![allow(dead_code)]

use burnkit::graph::Graph;

/// Free trees on `n` vertices grown leaf by leaf from smaller ones, keeping
/// one representative per isomorphism class by a pairwise test.
pub fn bruteforce_free_trees(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut next: Vec<Graph> = Vec::new();
        for tree in &level {
            for v in 0..size - 1 {
                let mut edges: Vec<(usize, usize)> = tree.edges().collect();
                edges.push((v, size - 1));
                let grown = Graph::from_edges(size, edges).unwrap();
                if !next.iter().any(|t| isomorphic(t, &grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    if n == 0 {
        Vec::new()
    } else {
        level
    }
}

/// Backtracking search for an adjacency-preserving bijection.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let (sa, sb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &sa, &sb, 0, &mut map, &mut used)
}

fn extend(
    a: &Graph,
    b: &Graph,
    da: &[usize],
    db: &[usize],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.vertex_count();
    if v == n {
        return true;
    }
    for w in 0..n {
        if used[w] || da[v] != db[w] {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, da, db, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}
