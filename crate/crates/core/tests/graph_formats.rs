use burnkit::graph::{graph6, parse_graph, Graph, GraphFormat, ParseError};
use burnkit::random::{connected_graph, seeded};
use petgraph::graph::UnGraph;
use petgraph::graph6::{FromGraph6, ToGraph6};
use proptest::prelude::*;
use rand::Rng;

fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
    let mut edges: Vec<_> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges
}

fn petgraph_edges(g: &UnGraph<(), ()>) -> Vec<(usize, usize)> {
    let mut edges: Vec<_> = g
        .edge_indices()
        .map(|e| {
            let (a, b) = g.edge_endpoints(e).unwrap();
            (a.index().min(b.index()), a.index().max(b.index()))
        })
        .collect();
    edges.sort_unstable();
    edges
}

#[test]
fn d_question_brace_matches_petgraph() {
    let ours = parse_graph("D?{", GraphFormat::Graph6).unwrap().graph;
    let theirs = UnGraph::<(), ()>::from_graph6_string("D?{".to_string());
    assert_eq!(ours.vertex_count(), 5);
    assert_eq!(theirs.node_count(), 5);
    assert_eq!(edge_set(&ours), petgraph_edges(&theirs));
}

#[test]
fn random_graphs_decode_like_petgraph() {
    let mut rng = seeded(0x96);
    for _ in 0..300 {
        let n = rng.gen_range(1..=70);
        let p = rng.gen_range(0.0..0.6);
        let g = connected_graph(&mut rng, n, p);
        let text = graph6::encode(&g);
        let theirs = UnGraph::<(), ()>::from_graph6_string(text.clone());
        assert_eq!(theirs.node_count(), n);
        assert_eq!(petgraph_edges(&theirs), edge_set(&g), "{text}");
        assert_eq!(theirs.graph6_string(), text);
        assert_eq!(graph6::decode(&text).unwrap(), g);
    }
}

#[test]
fn graph6_header_is_optional() {
    let plain = parse_graph("D?{\n", GraphFormat::Graph6).unwrap();
    let headed = parse_graph(">>graph6<<D?{", GraphFormat::Graph6).unwrap();
    assert_eq!(plain, headed);
}

#[test]
fn edge_list_path() {
    let parsed = parse_graph("0 1\n1 2", GraphFormat::EdgeList).unwrap();
    let degrees: Vec<usize> = (0..3).map(|v| parsed.graph.degree(v)).collect();
    assert_eq!(degrees, [1, 2, 1]);
    assert_eq!(parsed.graph, Graph::path(3));
}

#[test]
fn edge_list_self_loop_is_rejected() {
    assert_eq!(
        parse_graph("0 0", GraphFormat::EdgeList).unwrap_err(),
        ParseError::SelfLoop { line: 1, label: 0 }
    );
}

#[test]
fn edge_list_comments_and_sparse_labels() {
    let parsed = parse_graph("# a path\n10 30\n\n  # indented\n30 20\n", GraphFormat::EdgeList).unwrap();
    assert_eq!(parsed.labels, [10, 20, 30]);
    assert!(parsed.graph.has_edge(0, 2) && parsed.graph.has_edge(1, 2));
    assert_eq!(parsed.graph.edge_count(), 2);
}

#[test]
fn malformed_inputs_report_positions() {
    match parse_graph("0 1\n1 x\n", GraphFormat::EdgeList).unwrap_err() {
        ParseError::Malformed { line, .. } => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    match parse_graph("0 1\n1 0\n", GraphFormat::EdgeList).unwrap_err() {
        ParseError::DuplicateEdge { line, .. } => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_graph("D?", GraphFormat::Graph6), Err(ParseError::Graph6 { .. })));
    assert!(matches!(parse_graph("", GraphFormat::Graph6), Err(ParseError::NoGraph)));
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph()) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let mut text: String = (0..g.vertex_count()).map(|v| format!("{v}\n")).collect();
        for (u, v) in g.edges() {
            text.push_str(&format!("{u} {v}\n"));
        }
        let parsed = parse_graph(&text, GraphFormat::EdgeList).unwrap();
        prop_assert_eq!(parsed.graph, g);
    }
}
