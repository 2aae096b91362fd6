//! Set builders for product and Sierpinski graphs, each returning a set that
//! has been re-checked against the target graph, and the isolation graph.
//!
//! Whenever a builder is free to choose (which optimal set, which clique,
//! which fiber), it takes what the deterministic solvers return first.

use thiserror::Error;

use crate::family::GraphFamily;
use crate::graph::Graph;
use crate::products::{cartesian_product, lexicographic_product, ProductError, ProductGraph};
use crate::sierpinski::{recursive_isolating_set, SierpinskiError};
use crate::solvers::hitting::{Enumeration, HittingSet};
use crate::solvers::mask::{low, to_set, Adjacency};
use crate::solvers::{
    alpha_k, clique_number, domination_number, independence_number, isolation_constraints, isolation_number,
    saturation_number, total_domination_number, Budget, NodeCounter, SolverError, Witness,
};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Sierpinski(#[from] SierpinskiError),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("graph is not bipartite; odd cycle {0:?}")]
    NotBipartite(Vec<usize>),
    #[error("more than {cap} minimum isolating sets (stopped after {found})")]
    EnumerationCap { cap: usize, found: usize },
    #[error("{builder}: certificate check `{check}` failed")]
    Certificate { builder: &'static str, check: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

/// A constructed vertex set on `target` with the checks it passed.
#[derive(Clone, Debug)]
pub struct CertifiedSet {
    pub builder: &'static str,
    pub target: Graph,
    pub set: VertexSet,
    /// The bound the construction is meant to reach, from solver values.
    pub bound: usize,
    pub checks: Vec<Check>,
}

impl CertifiedSet {
    /// Runs the isolating and size checks plus `extra`; any failure is an
    /// error, never a degraded result.
    fn certify(
        builder: &'static str,
        target: Graph,
        set: VertexSet,
        bound: usize,
        extra: Vec<Check>,
    ) -> Result<Self, ConstructionError> {
        let mut checks = vec![
            Check {
                name: "isolating",
                passed: target.is_isolating(&set),
            },
            Check {
                name: "size equals bound",
                passed: set.len() == bound,
            },
        ];
        checks.extend(extra);
        if let Some(bad) = checks.iter().find(|c| !c.passed) {
            return Err(ConstructionError::Certificate {
                builder,
                check: bad.name,
            });
        }
        Ok(Self {
            builder,
            target,
            set,
            bound,
            checks,
        })
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// Re-runs the isolating check against the stored target.
    pub fn recheck(&self) -> bool {
        self.target.is_isolating(&self.set) && self.checks.iter().all(|c| c.passed)
    }
}

/// `I(G)`: one vertex per minimum isolating set, adjacent when their
/// undominated sets are disjoint.
#[derive(Clone, Debug)]
pub struct IsolationGraph {
    pub graph: Graph,
    pub iota: usize,
    /// ι-sets in order of their member lists.
    pub sets: Vec<VertexSet>,
    /// `L_A = V(G) - N[A]` for each set.
    pub undominated: Vec<VertexSet>,
}

pub const DEFAULT_ENUMERATION_CAP: usize = 10_000;

pub fn isolation_graph(g: &Graph, cap: usize, budget: Budget) -> Result<IsolationGraph, ConstructionError> {
    let iota = isolation_number(g, budget)?.value;
    let adj = Adjacency::new(g);
    let family = HittingSet::new(low(g.order()), isolation_constraints(&adj, 0));
    let mut counter = NodeCounter::new(budget);
    let masks = match family.all_minimum(iota, cap, &mut counter)? {
        Enumeration::Complete(m) => m,
        Enumeration::Capped(m) => return Err(ConstructionError::EnumerationCap { cap, found: m.len() }),
    };
    let sets: Vec<VertexSet> = masks.into_iter().map(|m| to_set(g.order(), m)).collect();
    let undominated: Vec<VertexSet> = sets.iter().map(|a| g.undominated(a)).collect();
    let graph = Graph::from_fn(sets.len(), |a, b| undominated[a].is_disjoint(&undominated[b]));
    Ok(IsolationGraph {
        graph,
        iota,
        sets,
        undominated,
    })
}

/// Places `(x, y)` pairs given in the orientation's own factor order.
fn place(p: &ProductGraph, swapped: bool, pairs: impl IntoIterator<Item = (usize, usize)>) -> VertexSet {
    let mut out = VertexSet::new(p.graph().order());
    for (x, y) in pairs {
        out.insert(if swapped { p.index(y, x) } else { p.index(x, y) });
    }
    out
}

fn pairs(a: &VertexSet, b: &VertexSet) -> Vec<(usize, usize)> {
    a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).collect()
}

/// Keeps the smaller of the two orientations, the first on ties.
fn smaller(a: (VertexSet, usize), b: (VertexSet, usize)) -> (VertexSet, usize) {
    if b.1 < a.1 {
        b
    } else {
        a
    }
}

/// On `G □ H`: `(A × I) ∪ ((V(G) - A) × D)` with `A` a maximum independent
/// set of `G`, `I` an ι-set and `D` a γ-set of `H`, or the same with the
/// factors' roles exchanged, whichever is smaller.
pub fn trivial_upper(g: &Graph, h: &Graph, budget: Budget) -> Result<CertifiedSet, ConstructionError> {
    let p = cartesian_product(g, h)?;
    let orient = |x: &Graph, y: &Graph, swapped: bool| -> Result<(VertexSet, usize), ConstructionError> {
        let a = independence_number(x, budget)?.set().clone();
        let i = isolation_number(y, budget)?.set().clone();
        let d = domination_number(y, budget)?.set().clone();
        let rest = a.complement();
        let bound = a.len() * i.len() + rest.len() * d.len();
        let mut all = pairs(&a, &i);
        all.extend(pairs(&rest, &d));
        Ok((place(&p, swapped, all), bound))
    };
    let (set, bound) = smaller(orient(g, h, false)?, orient(h, g, true)?);
    CertifiedSet::certify("trivial", p.into_graph(), set, bound, Vec::new())
}

/// On `G □ H`: with `k = ω(I(H))`, clique `A_1..A_k` in `I(H)`, a largest
/// k-colorable induced subgraph `G'` with classes `C_1..C_k` and a γ-set
/// `D_H`, the set `((V(G) - V(G')) × D_H) ∪ ⋃ C_i × A_i`. Both orientations
/// are tried and the smaller kept.
pub fn thm32(g: &Graph, h: &Graph, cap: usize, budget: Budget) -> Result<CertifiedSet, ConstructionError> {
    let p = cartesian_product(g, h)?;
    let orient = |x: &Graph, y: &Graph, swapped: bool| -> Result<(VertexSet, usize), ConstructionError> {
        let iy = isolation_graph(y, cap, budget)?;
        let clique = clique_number(&iy.graph, budget)?;
        let chosen: Vec<&VertexSet> = clique.set().iter().map(|c| &iy.sets[c]).collect();
        let k = chosen.len();
        let colored = alpha_k(x, k, budget)?;
        let Witness::Coloring { set: sub, colors } = &colored.witness else {
            unreachable!("alpha_k returns a coloring witness")
        };
        let d = domination_number(y, budget)?.set().clone();
        let mut all = pairs(&sub.complement(), &d);
        for &(v, c) in colors {
            all.extend(chosen[c].iter().map(|w| (v, w)));
        }
        let bound = colored.value * iy.iota + (x.order() - colored.value) * d.len();
        Ok((place(&p, swapped, all), bound))
    };
    let (set, bound) = smaller(orient(g, h, false)?, orient(h, g, true)?);
    CertifiedSet::certify("thm32", p.into_graph(), set, bound, Vec::new())
}

/// On `G □ H` for factors without isolated vertices: the product of two
/// minimum vertex covers.
pub fn beta_beta(g: &Graph, h: &Graph, budget: Budget) -> Result<CertifiedSet, ConstructionError> {
    for (name, f) in [("first", g), ("second", h)] {
        if f.has_isolated_vertex() || f.order() == 0 {
            return Err(ConstructionError::Hypothesis(format!(
                "{name} factor has an isolated vertex"
            )));
        }
    }
    let p = cartesian_product(g, h)?;
    let cover_g = independence_number(g, budget)?.set().complement();
    let cover_h = independence_number(h, budget)?.set().complement();
    let set = p.product_set(&cover_g, &cover_h);
    let bound = cover_g.len() * cover_h.len();
    CertifiedSet::certify("betabeta", p.into_graph(), set, bound, Vec::new())
}

/// On the prism `G □ K_2` of a bipartite `G`: a γ-set split by side, side-0
/// members in layer 0 and side-1 members in layer 1. Isolated vertices are
/// put on side 1.
pub fn prism(g: &Graph, budget: Budget) -> Result<CertifiedSet, ConstructionError> {
    let mut side = g.bipartition().map_err(ConstructionError::NotBipartite)?;
    for (v, s) in side.iter_mut().enumerate() {
        if g.degree(v) == 0 {
            *s = 1;
        }
    }
    let k2 = GraphFamily::Complete(2).build().expect("valid family");
    let p = cartesian_product(g, &k2)?;
    let d = domination_number(g, budget)?.set().clone();
    let set =
        VertexSet::from_indices(p.graph().order(), d.iter().map(|v| p.index(v, side[v] as usize))).expect("in range");
    let bound = d.len();
    CertifiedSet::certify("prism", p.into_graph(), set, bound, Vec::new())
}

/// On `G ∘ H` for connected nontrivial factors with ι(H) ≥ 2: `D × {0}` for
/// a minimum total dominating set `D` of `G`.
pub fn lex(g: &Graph, h: &Graph, budget: Budget) -> Result<CertifiedSet, ConstructionError> {
    for (name, f) in [("first", g), ("second", h)] {
        if f.order() < 2 || !f.is_connected() {
            return Err(ConstructionError::Hypothesis(format!(
                "{name} factor must be connected with at least two vertices"
            )));
        }
    }
    let iota_h = isolation_number(h, budget)?.value;
    if iota_h < 2 {
        return Err(ConstructionError::Hypothesis(format!(
            "second factor has isolation number {iota_h}, needs at least 2"
        )));
    }
    let p = lexicographic_product(g, h)?;
    let d = total_domination_number(g, budget)?.set().clone();
    let set = VertexSet::from_indices(p.graph().order(), d.iter().map(|v| p.index(v, 0))).expect("in range");
    let dominating = Check {
        name: "dominating",
        passed: p.graph().is_dominating(&set),
    };
    CertifiedSet::certify("lex", p.into_graph(), set, d.len(), vec![dominating])
}

/// On `G`: the lower endpoint of every edge of a minimum maximal matching.
pub fn saturation(g: &Graph, budget: Budget) -> Result<CertifiedSet, ConstructionError> {
    let s = saturation_number(g, budget)?;
    let Witness::Matching(edges) = &s.witness else {
        unreachable!("saturation returns a matching witness")
    };
    let set = VertexSet::from_indices(g.order(), edges.iter().map(|&(u, v)| u.min(v))).expect("in range");
    CertifiedSet::certify("saturation", g.clone(), set, s.value, Vec::new())
}

/// On `S_G^t`: the ξ-set of `S_G^2` replicated into every copy.
pub fn sierpinski(g: &Graph, t: usize, budget: Budget) -> Result<CertifiedSet, ConstructionError> {
    let r = recursive_isolating_set(g, t, budget)?;
    let bound = r.xi.value * g.order().pow(t as u32 - 2);
    let extremes = Check {
        name: "adjacent extremes dominated",
        passed: !r.sierpinski.leaves_adjacent_extremes(&r.set),
    };
    CertifiedSet::certify("sierpinski", r.sierpinski.graph().clone(), r.set, bound, vec![extremes])
}
