use std::collections::{BTreeMap, HashSet};

use super::{Graph, ParseError, ParsedGraph};

/// Largest accepted input label.
const MAX_LABEL: u64 = u32::MAX as u64;

/// Parses whitespace-separated edge lists.
///
/// Each non-comment line holds two labels (an edge) or a single label (an
/// isolated vertex declaration). Lines whose first non-blank character is
/// `#` are ignored. Labels are compacted to `0..n` in ascending label order.
pub fn parse_edge_list(input: &str) -> Result<ParsedGraph, ParseError> {
    let mut labelled_edges = Vec::new();
    let mut seen_labels = BTreeMap::new();
    let mut seen_edges = HashSet::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() > 2 {
            return Err(ParseError::Malformed {
                line,
                message: format!("expected one or two labels, found {}", tokens.len()),
            });
        }
        let mut parsed = [0u64; 2];
        for (slot, token) in parsed.iter_mut().zip(&tokens) {
            *slot = parse_label(token, line)?;
            seen_labels.insert(*slot, ());
        }
        if tokens.len() == 2 {
            let (u, v) = (parsed[0], parsed[1]);
            if u == v {
                return Err(ParseError::SelfLoop { line, label: u });
            }
            if !seen_edges.insert((u.min(v), u.max(v))) {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            labelled_edges.push((u, v));
        }
    }

    let labels: Vec<u64> = seen_labels.into_keys().collect();
    let dense = |label: u64| labels.binary_search(&label).expect("label was recorded");
    let edges = labelled_edges.iter().map(|&(u, v)| (dense(u), dense(v)));
    let graph = Graph::from_edges(labels.len(), edges).expect("validated while parsing");
    Ok(ParsedGraph { graph, labels })
}

fn parse_label(token: &str, line: usize) -> Result<u64, ParseError> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Malformed {
            line,
            message: format!("`{token}` is not a nonnegative integer label"),
        });
    }
    match token.parse::<u64>() {
        Ok(label) if label <= MAX_LABEL => Ok(label),
        _ => Err(ParseError::LabelOutOfRange { line, label: token.to_string() }),
    }
}
