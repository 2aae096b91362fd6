//! Generalized Sierpinski graphs `S_G^t` and their isolation bounds.
//!
//! A vertex is a length-`t` word over `V(G)`, stored as its base-`n` value
//! with the first letter most significant. The copy `iS_G^{t-1}` is then the
//! index range `i * n^(t-1) .. (i + 1) * n^(t-1)`, and prefixing a word with
//! `i` is an add.

use std::time::Instant;

use thiserror::Error;

use crate::graph::Graph;
use crate::solvers::mask::{count, to_set, Adjacency};
use crate::solvers::{
    domination_number, isolation_constraints, isolation_number, isolation_number_given_dominated, min_hitting, Budget,
    InvariantResult, NodeCounter, SearchStats, SolverError,
};
use crate::vertex_set::VertexSet;

/// Default vertex cap for generation.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

/// Largest Sierpinski graph handed to the direct exact isolation solver.
pub const DIRECT_SOLVE_CAP: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SierpinskiError {
    #[error("dimension must be at least {min}, got {t}")]
    Dimension { t: usize, min: usize },
    #[error("base graph must be nonempty")]
    EmptyBase,
    #[error("S_G^t would have {order} vertices, above the cap of {cap}")]
    TooLarge { order: u128, cap: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

#[derive(Clone, Debug)]
pub struct SierpinskiGraph {
    graph: Graph,
    base: Graph,
    dim: usize,
    extreme: VertexSet,
}

impl SierpinskiGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn base_order(&self) -> usize {
        self.base.order()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The constant words `x...x`.
    pub fn extreme_vertices(&self) -> &VertexSet {
        &self.extreme
    }

    /// Letters of vertex `v`, first letter first.
    pub fn word(&self, v: usize) -> Vec<usize> {
        let n = self.base_order();
        let mut letters = vec![0; self.dim];
        let mut x = v;
        for slot in letters.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        letters
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        let n = self.base_order();
        if word.len() != self.dim || word.iter().any(|&x| x >= n) {
            return None;
        }
        Some(word.iter().fold(0, |acc, &x| acc * n + x))
    }

    /// Vertex `x...x`.
    pub fn extreme(&self, x: usize) -> usize {
        constant_word(self.base_order(), x, self.dim)
    }

    /// The copy `iS_G^{t-1}` containing `v`, i.e. its first letter.
    pub fn copy_of(&self, v: usize) -> usize {
        v / self.base_order().pow(self.dim as u32 - 1)
    }

    /// Whether some edge `ij` of the base graph has both `i...i` and `j...j`
    /// outside `N[d]`.
    pub fn leaves_adjacent_extremes(&self, d: &VertexSet) -> bool {
        let dominated = self.graph.closed_neighborhood(d);
        self.base
            .edges()
            .any(|(i, j)| !dominated.contains(self.extreme(i)) && !dominated.contains(self.extreme(j)))
    }
}

/// Base-`n` value of the word `x^len`.
fn constant_word(n: usize, x: usize, len: usize) -> usize {
    (0..len).fold(0, |acc, _| acc * n + x)
}

fn checked_order(n: usize, t: usize, cap: usize) -> Result<usize, SierpinskiError> {
    let order = (n as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    if order > cap as u128 {
        return Err(SierpinskiError::TooLarge { order, cap });
    }
    Ok(order as usize)
}

fn check_input(g: &Graph, t: usize) -> Result<(), SierpinskiError> {
    if t < 1 {
        return Err(SierpinskiError::Dimension { t, min: 1 });
    }
    if g.order() == 0 {
        return Err(SierpinskiError::EmptyBase);
    }
    Ok(())
}

/// Edges of `S_G^t` from the word rule: `wxy...y ~ wyx...x` for every base
/// edge `xy` and every prefix `w`.
fn rule_edges(g: &Graph, t: usize) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut edges = Vec::new();
    for prefix_len in 0..t {
        let tail = t - 1 - prefix_len;
        let shift = n.pow(tail as u32);
        for w in 0..n.pow(prefix_len as u32) {
            for (x, y) in g.edges() {
                let u = (w * n + x) * shift + constant_word(n, y, tail);
                let v = (w * n + y) * shift + constant_word(n, x, tail);
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Edges of `S_G^t` from `n` copies of `S_G^{t-1}` plus the bridges
/// `xy^{t-1} ~ yx^{t-1}`.
fn recursive_edges(g: &Graph, t: usize) -> Vec<(usize, usize)> {
    if t == 1 {
        return g.edges().collect();
    }
    let n = g.order();
    let inner = recursive_edges(g, t - 1);
    let block = n.pow(t as u32 - 1);
    let mut edges = Vec::with_capacity(n * inner.len() + g.size());
    for i in 0..n {
        edges.extend(inner.iter().map(|&(u, v)| (i * block + u, i * block + v)));
    }
    for (x, y) in g.edges() {
        edges.push((
            x * block + constant_word(n, y, t - 1),
            y * block + constant_word(n, x, t - 1),
        ));
    }
    edges
}

fn assemble(g: &Graph, t: usize, order: usize, edges: Vec<(usize, usize)>) -> SierpinskiGraph {
    let n = g.order();
    let graph = Graph::from_edges(order, edges).expect("word indices in range");
    let extreme = VertexSet::from_indices(order, (0..n).map(|x| constant_word(n, x, t))).expect("in range");
    let mut s = SierpinskiGraph {
        graph,
        base: g.clone(),
        dim: t,
        extreme,
    };
    let labels = (0..order).map(|v| word_label(n, &s.word(v))).collect();
    s.graph = s.graph.with_labels(labels).expect("label count matches");
    s
}

/// Letters concatenated for bases up to 10, dot-separated above.
fn word_label(n: usize, word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(usize::to_string).collect();
    parts.join(if n <= 10 { "" } else { "." })
}

/// `S_G^t` by the word rule, within [`DEFAULT_VERTEX_CAP`].
pub fn sierpinski_graph(g: &Graph, t: usize) -> Result<SierpinskiGraph, SierpinskiError> {
    sierpinski_graph_with_cap(g, t, DEFAULT_VERTEX_CAP)
}

pub fn sierpinski_graph_with_cap(g: &Graph, t: usize, cap: usize) -> Result<SierpinskiGraph, SierpinskiError> {
    check_input(g, t)?;
    let order = checked_order(g.order(), t, cap)?;
    Ok(assemble(g, t, order, rule_edges(g, t)))
}

/// `S_G^t` assembled copy by copy; agrees with [`sierpinski_graph`].
pub fn sierpinski_graph_recursive(g: &Graph, t: usize) -> Result<SierpinskiGraph, SierpinskiError> {
    check_input(g, t)?;
    let order = checked_order(g.order(), t, DEFAULT_VERTEX_CAP)?;
    Ok(assemble(g, t, order, recursive_edges(g, t)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiResult {
    pub value: usize,
    /// Isolating in `S_G^2`, no larger than `gamma`, and leaving no pair of
    /// extreme vertices `ii`, `jj` with `ij` in `E(G)` undominated.
    pub witness: VertexSet,
    /// γ(S_G^2).
    pub gamma: usize,
    pub stats: SearchStats,
}

impl XiResult {
    pub fn verify(&self, s2: &SierpinskiGraph) -> bool {
        s2.dim() == 2
            && self.witness.len() == self.value
            && self.value <= self.gamma
            && s2.graph().is_isolating(&self.witness)
            && !s2.leaves_adjacent_extremes(&self.witness)
    }
}

/// ξ(S_G^2), together with the `S_G^2` it was computed on.
pub fn xi_number(g: &Graph, budget: Budget) -> Result<(SierpinskiGraph, XiResult), SierpinskiError> {
    let start = Instant::now();
    let s2 = sierpinski_graph(g, 2)?;
    let gamma = domination_number(s2.graph(), budget)?;
    let adj = Adjacency::new(s2.graph());
    let mut sets = isolation_constraints(&adj, 0);
    for (i, j) in g.edges() {
        sets.push(adj.closed(s2.extreme(i)) | adj.closed(s2.extreme(j)));
    }
    let mut counter = NodeCounter::new(budget);
    // Every γ-set satisfies all constraints, so the cardinality cap never
    // excludes the optimum.
    let m = min_hitting(s2.graph(), sets, Some(gamma.value), &mut counter)?
        .expect("a dominating set meets every constraint");
    let order = s2.graph().order();
    let result = XiResult {
        value: count(m),
        witness: to_set(order, m),
        gamma: gamma.value,
        stats: SearchStats {
            nodes: counter.nodes() + gamma.stats.nodes,
            elapsed: start.elapsed(),
        },
    };
    if !result.verify(&s2) {
        return Err(SierpinskiError::Certificate(format!(
            "xi witness {} fails its defining conditions",
            result.witness
        )));
    }
    Ok((s2, result))
}

/// ι(S_G^2 | Ex(S_G^2)).
pub fn iota_given_extremes(g: &Graph, budget: Budget) -> Result<InvariantResult, SierpinskiError> {
    let s2 = sierpinski_graph(g, 2)?;
    Ok(isolation_number_given_dominated(
        s2.graph(),
        s2.extreme_vertices(),
        budget,
    )?)
}

/// Exact ι of a Sierpinski graph, refused above [`DIRECT_SOLVE_CAP`] vertices.
pub fn exact_isolation(s: &SierpinskiGraph, budget: Budget) -> Result<InvariantResult, SierpinskiError> {
    let order = s.graph().order();
    if order > DIRECT_SOLVE_CAP {
        return Err(SierpinskiError::TooLarge {
            order: order as u128,
            cap: DIRECT_SOLVE_CAP,
        });
    }
    Ok(isolation_number(s.graph(), budget)?)
}

/// `D^t` on `S_G^t`: the ξ-set of `S_G^2` replicated into every copy.
#[derive(Clone, Debug)]
pub struct RecursiveSet {
    pub sierpinski: SierpinskiGraph,
    pub set: VertexSet,
    pub xi: XiResult,
}

pub fn recursive_isolating_set(g: &Graph, t: usize, budget: Budget) -> Result<RecursiveSet, SierpinskiError> {
    if t < 2 {
        return Err(SierpinskiError::Dimension { t, min: 2 });
    }
    check_input(g, t)?;
    checked_order(g.order(), t, DEFAULT_VERTEX_CAP)?;
    let (_, xi) = xi_number(g, budget)?;
    let s = sierpinski_graph(g, t)?;
    let n = g.order();
    let mut members = xi.witness.to_vec();
    for level in 3..=t {
        let block = n.pow(level as u32 - 1);
        members = (0..n)
            .flat_map(|i| members.iter().map(move |&w| i * block + w))
            .collect();
    }
    let set = VertexSet::from_indices(s.graph().order(), members).expect("in range");
    let expected = xi.value * n.pow(t as u32 - 2);
    if set.len() != expected {
        return Err(SierpinskiError::Certificate(format!(
            "replicated set has {} vertices, expected {expected}",
            set.len()
        )));
    }
    if !s.graph().is_isolating(&set) {
        return Err(SierpinskiError::Certificate("replicated set is not isolating".into()));
    }
    if s.leaves_adjacent_extremes(&set) {
        return Err(SierpinskiError::Certificate(
            "replicated set leaves adjacent extreme vertices undominated".into(),
        ));
    }
    Ok(RecursiveSet { sierpinski: s, set, xi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SierpinskiBounds {
    pub lower: usize,
    pub upper: usize,
    /// Present when the bounds meet.
    pub exact: Option<usize>,
    /// ι(S_G^2 | Ex).
    pub iota_given: usize,
    /// ξ(S_G^2).
    pub xi: usize,
}

impl SierpinskiBounds {
    /// `ξ(S_G^2) - ι(S_G^2 | Ex)`.
    pub fn gap(&self) -> usize {
        self.xi - self.iota_given
    }
}

/// `ι(S_G^2|Ex)·n^(t-2) ≤ ι(S_G^t) ≤ ξ(S_G^2)·n^(t-2)`; `S_G^t` itself is
/// never built.
pub fn sierpinski_bounds(g: &Graph, t: usize, budget: Budget) -> Result<SierpinskiBounds, SierpinskiError> {
    if t < 2 {
        return Err(SierpinskiError::Dimension { t, min: 2 });
    }
    check_input(g, t)?;
    let scale = (g.order() as u128)
        .checked_pow(t as u32 - 2)
        .filter(|&s| s <= usize::MAX as u128)
        .ok_or(SierpinskiError::TooLarge {
            order: u128::MAX,
            cap: usize::MAX,
        })? as usize;
    let iota_given = iota_given_extremes(g, budget)?.value;
    let (_, xi) = xi_number(g, budget)?;
    let lower = iota_given * scale;
    let upper = xi.value * scale;
    Ok(SierpinskiBounds {
        lower,
        upper,
        exact: (lower == upper).then_some(lower),
        iota_given,
        xi: xi.value,
    })
}
