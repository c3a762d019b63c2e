//! graph6 and plain edge-list encodings.

use crate::graph::{Graph, GraphError};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn parse_err(msg: impl Into<String>) -> GraphError {
    GraphError::Parse(msg.into())
}

fn encode_size(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + BIAS) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    } else {
        out.push('~');
        out.push('~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + BIAS) as char);
        }
    }
}

/// graph6 encoding: size prefix, then the upper triangle column by column
/// (`x(0,1) x(0,2) x(1,2) x(0,3) ...`) packed six bits per byte, big-endian,
/// zero-padded.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + BIAS) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + BIAS) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    for &b in bytes {
        if !(BIAS..=126).contains(&b) {
            return Err(parse_err(format!("invalid graph6 byte {b:#04x}")));
        }
    }
    let six = |b: u8| (b - BIAS) as usize;
    let (n, rest) = match bytes {
        [] => return Err(parse_err("empty graph6 string")),
        [126, 126, tail @ ..] => {
            if tail.len() < 6 {
                return Err(parse_err("truncated graph6 size"));
            }
            let n = tail[..6].iter().fold(0, |acc, &b| (acc << 6) | six(b));
            (n, &tail[6..])
        }
        [126, tail @ ..] => {
            if tail.len() < 3 {
                return Err(parse_err("truncated graph6 size"));
            }
            let n = tail[..3].iter().fold(0, |acc, &b| (acc << 6) | six(b));
            (n, &tail[3..])
        }
        [b, tail @ ..] => (six(*b), tail),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(parse_err(format!(
            "graph6 body has {} bytes, expected {} for n={n}",
            rest.len(),
            nbits.div_ceil(6)
        )));
    }
    let bit = |k: usize| (six(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (k..rest.len() * 6).any(bit) {
        return Err(parse_err("nonzero graph6 padding bits"));
    }
    Graph::from_edges(n, edges)
}

/// Edge-list text: `"n m"` header, then one `"u v"` line per edge (`u < v`,
/// lexicographic order, 0-indexed).
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| parse_err("missing edge-list header"))?;
    let nums = |line: &str| -> Result<(usize, usize), GraphError> {
        let mut it = line.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(format!("not a nonnegative integer: {t:?}")))
        });
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Ok((a?, b?)),
            _ => Err(parse_err(format!("expected two integers, got {line:?}"))),
        }
    };
    let (n, m) = nums(header)?;
    let edges = lines.map(nums).collect::<Result<Vec<_>, _>>()?;
    if edges.len() != m {
        return Err(parse_err(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, edges)
}

/// Reads a graph in either format: a first line with two integers is an
/// edge list, anything else is graph6.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if first.split_whitespace().count() == 2 {
        from_edge_list(text)
    } else {
        from_graph6(first)
    }
}

/// One graph per nonempty line, graph6 encoded.
pub fn parse_graph6_catalog(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(from_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, petersen, random_graph};
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(to_graph6(&complete(2)), "A_");
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&cycle(5)), "Dhc");
        assert_eq!(to_graph6(&petersen()), "IheA@GUAo");
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap(), complete(4));
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::from_edges(70, [(0, 69), (3, 4)]).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("A`").is_err()); // padding bit set
        assert!(from_edge_list("3 2\n0 1\n").is_err());
        assert!(from_edge_list("3 1\n0 3\n").is_err());
        assert!(from_edge_list("3 1\n0 x\n").is_err());
    }

    #[test]
    fn format_sniffing() {
        assert_eq!(parse_graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap(), complete(4));
        assert_eq!(parse_graph("C~\n").unwrap(), complete(4));
    }

    proptest! {
        #[test]
        fn both_formats_round_trip(n in 0usize..20, p in 0.0f64..1.0, seed: u64) {
            let g = random_graph(n, p, seed).unwrap();
            let g6 = to_graph6(&g);
            prop_assert_eq!(from_graph6(&g6).unwrap(), g.clone());
            prop_assert_eq!(to_graph6(&from_graph6(&g6).unwrap()), g6);
            let el = to_edge_list(&g);
            prop_assert_eq!(to_edge_list(&from_edge_list(&el).unwrap()), el);
        }
    }
}
