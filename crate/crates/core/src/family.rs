//! Standard graph families with fixed vertex numberings.

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, GraphError};

/// A named family member.
///
/// Numbering conventions:
/// * `Path(n)`, `Cycle(n)`: `0 - 1 - ... - (n-1)` (closed for the cycle);
/// * `Star(n)` is `K_{1,n}` with center 0 and leaves `1..=n`;
/// * `CompleteBipartite(m, n)`: sides `0..m` and `m..m+n`;
/// * `SubdividedStar(n)` is `S(K_{1,n})`: center 0, subdivision vertices
///   `1..=n`, leaves `n+1..=2n` with `i ~ n+i`;
/// * `Hypercube(d)`: vertices are the binary words of length `d`, numbered by
///   their value, adjacent when they differ in one bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    SubdividedStar(usize),
    Hypercube(usize),
    Empty(usize),
}

/// Largest hypercube dimension accepted.
pub const MAX_HYPERCUBE_DIMENSION: usize = 16;

impl GraphFamily {
    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: &str| Err(GraphError::InvalidFamily(format!("{self}: {msg}")));
        match *self {
            GraphFamily::Path(n) | GraphFamily::Complete(n) if n == 0 => bad("needs n >= 1"),
            GraphFamily::Cycle(n) if n < 3 => bad("needs n >= 3"),
            GraphFamily::CompleteBipartite(m, n) if m == 0 || n == 0 => bad("needs m, n >= 1"),
            GraphFamily::Star(n) | GraphFamily::SubdividedStar(n) if n == 0 => bad("needs n >= 1"),
            GraphFamily::Hypercube(d) if d > MAX_HYPERCUBE_DIMENSION => bad("dimension above supported maximum"),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        self.validate()?;
        let g = match *self {
            GraphFamily::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?,
            GraphFamily::Cycle(n) => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?,
            GraphFamily::Complete(n) => Graph::from_fn(n, |_, _| true),
            GraphFamily::CompleteBipartite(m, n) => Graph::from_fn(m + n, |u, v| u < m && v >= m),
            GraphFamily::Star(n) => Graph::from_edges(n + 1, (1..=n).map(|i| (0, i)))?,
            GraphFamily::SubdividedStar(n) => Graph::from_edges(2 * n + 1, (1..=n).flat_map(|i| [(0, i), (i, n + i)]))?,
            GraphFamily::Hypercube(d) => Graph::from_fn(1 << d, |u, v| (u ^ v).count_ones() == 1),
            GraphFamily::Empty(n) => Graph::empty(n),
        };
        Ok(g)
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphFamily::Path(n) => write!(f, "path:{n}"),
            GraphFamily::Cycle(n) => write!(f, "cycle:{n}"),
            GraphFamily::Complete(n) => write!(f, "complete:{n}"),
            GraphFamily::CompleteBipartite(m, n) => write!(f, "complete_bipartite:{m},{n}"),
            GraphFamily::Star(n) => write!(f, "star:{n}"),
            GraphFamily::SubdividedStar(n) => write!(f, "subdivided_star:{n}"),
            GraphFamily::Hypercube(d) => write!(f, "hypercube:{d}"),
            GraphFamily::Empty(n) => write!(f, "empty:{n}"),
        }
    }
}

/// Parses `name:params`, e.g. `cycle:5`, `complete_bipartite:2,3`,
/// `hypercube(4)`.
impl FromStr for GraphFamily {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || GraphError::InvalidFamily(s.to_string());
        let s = s.trim();
        let (name, params) = if let Some(open) = s.find('(') {
            let close = s.strip_suffix(')').ok_or_else(invalid)?;
            (&s[..open], &close[open + 1..])
        } else {
            s.split_once(':').ok_or_else(invalid)?
        };
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| invalid()))
            .collect::<Result<_, _>>()?;
        let one = || match nums.as_slice() {
            [n] => Ok(*n),
            _ => Err(invalid()),
        };
        let family = match name.trim().to_ascii_lowercase().as_str() {
            "path" | "p" => GraphFamily::Path(one()?),
            "cycle" | "c" => GraphFamily::Cycle(one()?),
            "complete" | "k" => GraphFamily::Complete(one()?),
            "complete_bipartite" | "kmn" => match nums.as_slice() {
                [m, n] => GraphFamily::CompleteBipartite(*m, *n),
                _ => return Err(invalid()),
            },
            "star" => GraphFamily::Star(one()?),
            "subdivided_star" => GraphFamily::SubdividedStar(one()?),
            "hypercube" | "q" => GraphFamily::Hypercube(one()?),
            "empty" | "edgeless" => GraphFamily::Empty(one()?),
            _ => return Err(invalid()),
        };
        family.validate()?;
        Ok(family)
    }
}
