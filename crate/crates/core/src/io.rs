//! Text encodings: the `n m` edge-list format and graph6.
//!
//! Edge-list format: a header line `n m`, then `m` lines `u v` with 0-based
//! indices separated by whitespace. [`parse_graph`] also accepts graph6 when
//! the first non-blank line does not start with a digit.

use crate::graph::{Graph, GraphError};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses either encoding; see the module docs.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| parse_err(1, "empty input"))?;
    if first.starts_with(|c: char| c.is_ascii_digit()) {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let nums = parse_pair(hline, header, "header must be `n m`")?;
    let (order, expected) = nums;
    let mut edges = Vec::with_capacity(expected);
    for (lineno, line) in lines {
        let (u, v) = parse_pair(lineno, line, "edge line must be `u v`")?;
        for x in [u, v] {
            if x >= order {
                return Err(parse_err(lineno, format!("vertex {x} out of range for order {order}")));
            }
        }
        edges.push((u, v));
    }
    if edges.len() != expected {
        return Err(GraphError::EdgeCountMismatch {
            expected,
            found: edges.len(),
        });
    }
    Graph::from_edges(order, edges)
}

fn parse_pair(line: usize, text: &str, msg: &str) -> Result<(usize, usize), GraphError> {
    let mut it = text.split_whitespace();
    let mut next = || {
        it.next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| parse_err(line, msg))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(parse_err(line, msg));
    }
    Ok((a, b))
}

/// Edge-list serialization with edges sorted, `u < v`, LF line endings.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, "graph6 byte outside 63..=126"));
    }
    let (order, rest) = match bytes {
        [126, 126, r @ ..] if r.len() >= 6 => (decode_n(&r[..6]), &r[6..]),
        [126, r @ ..] if r.len() >= 3 => (decode_n(&r[..3]), &r[3..]),
        [b, r @ ..] if *b != 126 => ((*b - 63) as usize, r),
        _ => return Err(parse_err(1, "truncated graph6 order")),
    };
    let pairs = order * order.saturating_sub(1) / 2;
    if rest.len() != pairs.div_ceil(6) {
        return Err(parse_err(
            1,
            format!("graph6 body has {} bytes, expected {}", rest.len(), pairs.div_ceil(6)),
        ));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..order {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(order, edges)
}

fn decode_n(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
