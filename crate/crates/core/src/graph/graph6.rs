//! The graph6 ASCII encoding: a size prefix followed by the upper triangle
//! of the adjacency matrix, column by column, packed six bits per byte with
//! a bias of 63.

use super::{Graph, ParseError};

pub const HEADER: &str = ">>graph6<<";

/// Decoder refuses sizes beyond this.
pub const MAX_VERTICES: usize = 1 << 20;

const BIAS: u8 = 63;

fn err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Graph6 { offset, message: message.into() }
}

/// Decodes a single graph6 string; the optional `>>graph6<<` header is
/// accepted.
pub fn decode(text: &str) -> Result<Graph, ParseError> {
    let (skip, body) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, text.as_bytes()),
    };
    let sextet = |i: usize| -> Result<u64, ParseError> {
        match body.get(i) {
            Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok((b - BIAS) as u64),
            Some(&b) => Err(err(skip + i, format!("byte {b:#04x} outside the graph6 range"))),
            None => Err(err(skip + i, "unexpected end of input")),
        }
    };

    let (n, mut pos) = if body.is_empty() {
        return Err(err(skip, "empty graph6 string"));
    } else if body[0] != 126 {
        (sextet(0)? as usize, 1)
    } else if body.get(1) != Some(&126) {
        let mut n = 0u64;
        for i in 1..4 {
            n = (n << 6) | sextet(i)?;
        }
        (n as usize, 4)
    } else {
        let mut n = 0u64;
        for i in 2..8 {
            n = (n << 6) | sextet(i)?;
        }
        (n as usize, 8)
    };
    if n > MAX_VERTICES {
        return Err(err(skip, format!("vertex count {n} exceeds the limit of {MAX_VERTICES}")));
    }

    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(6);
    if body.len() != pos + byte_count {
        return Err(err(
            skip + body.len().min(pos + byte_count),
            format!("expected {} bytes for {n} vertices, found {}", pos + byte_count, body.len()),
        ));
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut current = 0u64;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                current = sextet(pos)?;
                pos += 1;
            }
            if (current >> (5 - bit % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let padding = current & ((1 << (6 - bit % 6)) - 1);
        if padding != 0 {
            return Err(err(skip + pos - 1, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("upper triangle encodes a simple graph"))
}

/// Encodes `graph` without the header.
pub fn encode(graph: &Graph) -> String {
    let n = graph.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + BIAS));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + BIAS));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | graph.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_star_example() {
        let g = decode("D?{").unwrap();
        assert_eq!(g.vertex_count(), 5);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn header_and_trivial_graphs() {
        assert_eq!(decode(">>graph6<<D?{").unwrap(), decode("D?{").unwrap());
        assert_eq!(decode("?").unwrap().vertex_count(), 0);
        assert_eq!(decode("@").unwrap(), Graph::empty(1));
        assert_eq!(encode(&Graph::empty(1)), "@");
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(decode(""), Err(ParseError::Graph6 { .. })));
        assert!(matches!(decode("D?"), Err(ParseError::Graph6 { .. })));
        assert!(matches!(decode("D?{?"), Err(ParseError::Graph6 { .. })));
        assert!(matches!(decode("D? "), Err(ParseError::Graph6 { offset: 2, .. })));
        // 'A' = 2 vertices, one bit used, '@' sets a padding bit.
        assert!(matches!(decode("A@"), Err(ParseError::Graph6 { offset: 1, .. })));
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::path(70);
        let text = encode(&g);
        assert_eq!(text.as_bytes()[0], 126);
        assert_eq!(decode(&text).unwrap(), g);
    }
}
