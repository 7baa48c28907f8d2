//! Immutable simple undirected graphs and the distance queries the rest of
//! the crate is built on.

mod edgelist;
pub mod graph6;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use edgelist::parse_edge_list;

/// Structural errors raised when building or querying a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
    #[error("graph is not a tree")]
    NotATree,
    #[error("removing leaves leaves no vertices")]
    EmptyAfterStrip,
}

/// Errors from the text formats, always carrying the position of the problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: label {label} is out of range")]
    LabelOutOfRange { line: usize, label: String },
    #[error("line {line}: self-loop at label {label}")]
    SelfLoop { line: usize, label: u64 },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: u64, v: u64 },
    #[error("graph6 byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("input contains no graph")]
    NoGraph,
}

/// Supported input encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Graph6,
    #[serde(alias = "edge-list")]
    EdgeList,
}

impl std::str::FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edgelist" | "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFormat::Graph6 => f.write_str("graph6"),
            GraphFormat::EdgeList => f.write_str("edgelist"),
        }
    }
}

/// A parsed graph together with the original label of every dense vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// `labels[v]` is the input label that was compacted to vertex `v`.
    pub labels: Vec<u64>,
}

/// Parses `input` in the given format.
///
/// graph6 input must hold exactly one graph (blank lines are ignored);
/// its labels are the identity map.
pub fn parse_graph(input: &str, format: GraphFormat) -> Result<ParsedGraph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(input),
        GraphFormat::Graph6 => {
            let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
            let (_, first) = lines.next().ok_or(ParseError::NoGraph)?;
            if let Some((line, _)) = lines.next() {
                return Err(ParseError::Malformed {
                    line: line + 1,
                    message: "graph6 input holds more than one graph".into(),
                });
            }
            let graph = graph6::decode(first.trim())?;
            let labels = (0..graph.vertex_count() as u64).collect();
            Ok(ParsedGraph { graph, labels })
        }
    }
}

/// Simple undirected graph on vertices `0..vertex_count` with sorted
/// adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

/// Breadth-first distances from one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    pub source: usize,
    /// `None` marks a vertex unreachable from `source`.
    pub dist: Vec<Option<usize>>,
    /// `layers[i]` holds the vertices at distance exactly `i`, ascending.
    pub layers: Vec<Vec<usize>>,
}

impl DistanceProfile {
    pub fn reached(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Largest finite distance.
    pub fn eccentricity(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    /// `|N_r(source)|` computed from the layer sizes.
    pub fn ball_size(&self, r: usize) -> usize {
        self.layers.iter().take(r + 1).map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eccentricities {
    pub eccentricity: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
    /// Lowest-index vertex attaining the radius.
    pub center: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub degrees: Vec<usize>,
    /// `degree_counts[k]` is the number of vertices of degree `k`.
    pub degree_counts: Vec<usize>,
    pub triangle_free: bool,
    pub connected: bool,
}

impl GraphStats {
    pub fn count_of_degree(&self, k: usize) -> usize {
        self.degree_counts.get(k).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }
}

/// Result of deleting every degree-1 vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrippedGraph {
    pub graph: Graph,
    /// `labels[v]` is the vertex of the original graph that became `v`.
    pub labels: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge { u: u.min(w[0]), v: u.max(w[0]) });
            }
        }
        Ok(Graph { adjacency })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph { adjacency: vec![Vec::new(); vertex_count] }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// Star with hub 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::from_edges(a + b, edges).expect("complete bipartite graph is simple")
    }

    /// Spider: hub 0 with `legs` paths of `length` vertices each.
    pub fn spider(legs: usize, length: usize) -> Self {
        let n = 1 + legs * length;
        let mut edges = Vec::with_capacity(n - 1);
        for leg in 0..legs {
            let base = 1 + leg * length;
            edges.push((0, base));
            for i in 1..length {
                edges.push((base + i - 1, base + i));
            }
        }
        Self::from_edges(n, edges).expect("spider is simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() })
        }
    }

    /// Breadth-first distances from `source`.
    ///
    /// # Panics
    ///
    /// If `source` is not a vertex.
    pub fn distances_from(&self, source: usize) -> DistanceProfile {
        self.check_vertex(source).expect("source vertex");
        let n = self.vertex_count();
        let mut dist = vec![None; n];
        let mut layers: Vec<Vec<usize>> = vec![vec![source]];
        dist[source] = Some(0);
        loop {
            let depth = layers.len();
            let mut next = Vec::new();
            for &u in layers.last().unwrap() {
                for &w in &self.adjacency[u] {
                    if dist[w].is_none() {
                        dist[w] = Some(depth);
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        DistanceProfile { source, dist, layers }
    }

    /// Hop distance between every pair; `usize::MAX` for unreachable pairs.
    pub fn all_pairs_distances(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count())
            .map(|v| {
                let mut row = vec![usize::MAX; self.vertex_count()];
                let mut queue = VecDeque::from([v]);
                row[v] = 0;
                while let Some(u) = queue.pop_front() {
                    for &w in &self.adjacency[u] {
                        if row[w] == usize::MAX {
                            row[w] = row[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                row
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).reached() == self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.vertex_count() == 0 {
            Err(GraphError::Empty)
        } else if !self.is_connected() {
            Err(GraphError::Disconnected)
        } else {
            Ok(())
        }
    }

    pub fn eccentricities(&self) -> Result<Eccentricities, GraphError> {
        self.require_connected()?;
        let eccentricity: Vec<usize> =
            (0..self.vertex_count()).map(|v| self.distances_from(v).eccentricity()).collect();
        let radius = *eccentricity.iter().min().unwrap();
        let diameter = *eccentricity.iter().max().unwrap();
        let center = eccentricity.iter().position(|&e| e == radius).unwrap();
        Ok(Eccentricities { eccentricity, radius, diameter, center })
    }

    /// `N_r(v)`: every vertex within distance `r` of `v`, ascending.
    pub fn closed_neighborhood(&self, v: usize, r: usize) -> Vec<usize> {
        let profile = self.distances_from(v);
        let mut ball: Vec<usize> = profile.layers.into_iter().take(r + 1).flatten().collect();
        ball.sort_unstable();
        ball
    }

    pub fn stats(&self) -> GraphStats {
        let degrees: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let mut degree_counts = vec![0; max_degree + 1];
        for &d in &degrees {
            degree_counts[d] += 1;
        }
        GraphStats {
            degrees,
            degree_counts,
            triangle_free: self.is_triangle_free(),
            connected: self.vertex_count() > 0 && self.is_connected(),
        }
    }

    /// No edge has endpoints with a common neighbor.
    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| !sorted_intersect(&self.adjacency[u], &self.adjacency[v]))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            dist.fill(usize::MAX);
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adjacency }
    }

    /// Deletes every degree-1 vertex.
    pub fn strip_leaves(&self) -> Result<StrippedGraph, GraphError> {
        self.require_connected()?;
        if self.vertex_count() < 2 {
            return Err(GraphError::EmptyAfterStrip);
        }
        let labels: Vec<usize> = (0..self.vertex_count()).filter(|&v| self.degree(v) != 1).collect();
        if labels.is_empty() {
            return Err(GraphError::EmptyAfterStrip);
        }
        Ok(StrippedGraph { graph: self.induced_subgraph(&labels), labels })
    }
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_distances(g: &Graph) -> Vec<Vec<usize>> {
        // Floyd-Warshall, independent of the BFS path.
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

    #[test]
    fn girths() {
        assert_eq!(Graph::complete(3).girth(), Some(3));
        assert_eq!(Graph::cycle(4).girth(), Some(4));
        assert_eq!(Graph::complete_bipartite(3, 3).girth(), Some(4));
        assert_eq!(Graph::cycle(7).girth(), Some(7));
        assert_eq!(Graph::spider(3, 4).girth(), None);
        let tadpole = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6)]).unwrap();
        assert_eq!(tadpole.girth(), Some(5));
    }

    #[test]
    fn path_distances() {
        let p = Graph::path(5);
        let d0: Vec<_> = p.distances_from(0).dist.into_iter().map(Option::unwrap).collect();
        assert_eq!(d0, vec![0, 1, 2, 3, 4]);
        let d2: Vec<_> = p.distances_from(2).dist.into_iter().map(Option::unwrap).collect();
        assert_eq!(d2, vec![2, 1, 0, 1, 2]);
    }

    #[test]
    fn cycle_layers_match_floyd_warshall() {
        let c = Graph::cycle(5);
        let profile = c.distances_from(0);
        let sizes: Vec<_> = profile.layers.iter().map(Vec::len).collect();
        let d = brute_distances(&c);
        let mut expected = vec![0; 3];
        for v in 0..5 {
            expected[d[0][v]] += 1;
        }
        assert_eq!(sizes, expected);
        assert_eq!(sizes, vec![1, 2, 2]);
    }

    #[test]
    fn layers_are_consistent_with_dist() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap();
        let p = g.distances_from(1);
        for (i, layer) in p.layers.iter().enumerate() {
            for &v in layer {
                assert_eq!(p.dist[v], Some(i));
                if i > 0 {
                    assert!(g.neighbors(v).iter().any(|&w| p.dist[w] == Some(i - 1)));
                }
            }
        }
        assert_eq!(p.dist[6], None);
        assert_eq!(p.reached(), 6);
    }

    #[test]
    fn radius_and_center() {
        let e = Graph::path(5).eccentricities().unwrap();
        assert_eq!((e.radius, e.center, e.diameter), (2, 2, 4));
        assert_eq!(Graph::empty(1).eccentricities().unwrap().radius, 0);
        let star = Graph::star(5);
        let e = star.eccentricities().unwrap();
        let d = brute_distances(&star);
        let brute_radius = d.iter().map(|row| *row.iter().max().unwrap()).min().unwrap();
        assert_eq!(e.radius, brute_radius);
        assert_eq!((e.radius, e.center), (1, 0));
        assert_eq!(Graph::empty(2).eccentricities(), Err(GraphError::Disconnected));
    }

    #[test]
    fn neighborhoods() {
        let p = Graph::path(9);
        assert_eq!(p.closed_neighborhood(3, 1), vec![2, 3, 4]);
        assert_eq!(p.closed_neighborhood(3, 0), vec![3]);
        assert_eq!(Graph::cycle(5).closed_neighborhood(0, 2), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn stats_counts_and_triangles() {
        assert!(!Graph::complete(3).stats().triangle_free);
        let c5 = Graph::cycle(5).stats();
        assert!(c5.triangle_free);
        assert_eq!(c5.count_of_degree(2), 5);
        let star = Graph::star(5).stats();
        assert_eq!((star.count_of_degree(1), star.count_of_degree(5)), (5, 1));
        assert_eq!(star.degree_counts.iter().sum::<usize>(), 6);
        assert!(!Graph::empty(3).stats().connected);
    }

    #[test]
    fn strip_leaves_cases() {
        let s = Graph::star(5).strip_leaves().unwrap();
        assert_eq!(s.graph.vertex_count(), 1);
        assert_eq!(s.labels, vec![0]);
        let p = Graph::path(5).strip_leaves().unwrap();
        assert_eq!(p.graph, Graph::path(3));
        let spider = Graph::spider(3, 2).strip_leaves().unwrap();
        assert_eq!(spider.graph.vertex_count(), 4);
        assert_eq!(spider.graph.stats().count_of_degree(3), 1);
        assert_eq!(spider.graph.stats().count_of_degree(1), 3);
        assert_eq!(Graph::path(2).strip_leaves(), Err(GraphError::EmptyAfterStrip));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop { vertex: 0 }));
        assert_eq!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 1 })
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn neighborhoods_monotone_and_exhaustive() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let ecc = g.eccentricities().unwrap();
        for v in 0..6 {
            for r in 0..4 {
                let a = g.closed_neighborhood(v, r);
                let b = g.closed_neighborhood(v, r + 1);
                assert!(a.iter().all(|x| b.contains(x)));
            }
            assert_eq!(g.closed_neighborhood(v, ecc.eccentricity[v]).len(), 6);
        }
    }
}
