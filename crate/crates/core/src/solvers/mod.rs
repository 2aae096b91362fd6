//! Exact graph invariants with certifying witnesses.
//!
//! Every solver is an exhaustive search with pruning. Minimization
//! invariants iterate the target cardinality upward from a lower bound, so a
//! returned value is proved minimal; maximization invariants use branch and
//! bound. A [`Budget`] caps the number of search nodes; running out is an
//! error, never an approximate answer.

mod clique;
mod coloring;
pub(crate) mod hitting;
pub(crate) mod mask;
mod matching;

use std::cell::Cell;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;
use hitting::HittingSet;
use mask::{bit, bits, count, from_set, low, to_set, Adjacency, Mask};

pub use mask::MAX_SOLVER_ORDER;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("node budget exhausted at cardinality {cardinality} after {nodes} nodes")]
    BudgetExhausted { cardinality: usize, nodes: u64 },
    #[error("graph of order {order} exceeds the exact-solver limit of {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("{0} is undefined for this graph")]
    Undefined(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Optional cap on search nodes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    max_nodes: Option<u64>,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Self { max_nodes: None }
    }

    pub const fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
        }
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }
}

pub(crate) struct NodeCounter {
    nodes: u64,
    limit: u64,
}

impl NodeCounter {
    pub fn new(budget: Budget) -> Self {
        Self {
            nodes: 0,
            limit: budget.max_nodes.unwrap_or(u64::MAX),
        }
    }

    #[inline]
    pub fn tick(&mut self, cardinality: usize) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(SolverError::BudgetExhausted {
                cardinality,
                nodes: self.nodes - 1,
            });
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    /// ι
    Isolation,
    /// ι(G|X)
    IsolationGivenDominated,
    /// γ
    Domination,
    /// γ_t
    TotalDomination,
    /// α
    Independence,
    /// β
    VertexCover,
    /// α'
    Matching,
    /// ω
    Clique,
    /// s
    Saturation,
    /// ρ₂
    TwoPacking,
    /// γ_G(S)
    SetDomination,
    /// γ^i
    IndependenceDomination,
    /// α_k
    AlphaK(usize),
}

impl Invariant {
    /// Invariants computable from a graph alone.
    pub const STANDALONE: [Invariant; 10] = [
        Invariant::Isolation,
        Invariant::Domination,
        Invariant::TotalDomination,
        Invariant::Independence,
        Invariant::VertexCover,
        Invariant::Matching,
        Invariant::Clique,
        Invariant::Saturation,
        Invariant::TwoPacking,
        Invariant::IndependenceDomination,
    ];

    pub fn tag(&self) -> String {
        match self {
            Invariant::Isolation => "iota".into(),
            Invariant::IsolationGivenDominated => "iota_given".into(),
            Invariant::Domination => "gamma".into(),
            Invariant::TotalDomination => "gamma_t".into(),
            Invariant::Independence => "alpha".into(),
            Invariant::VertexCover => "beta".into(),
            Invariant::Matching => "alpha_prime".into(),
            Invariant::Clique => "omega".into(),
            Invariant::Saturation => "s".into(),
            Invariant::TwoPacking => "rho2".into(),
            Invariant::SetDomination => "gamma_set".into(),
            Invariant::IndependenceDomination => "gamma_i".into(),
            Invariant::AlphaK(k) => format!("alpha_{k}"),
        }
    }

    pub fn is_minimization(&self) -> bool {
        matches!(
            self,
            Invariant::Isolation
                | Invariant::IsolationGivenDominated
                | Invariant::Domination
                | Invariant::TotalDomination
                | Invariant::VertexCover
                | Invariant::Saturation
                | Invariant::SetDomination
        )
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Invariant {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inv = match s {
            "iota" => Invariant::Isolation,
            "iota_given" => Invariant::IsolationGivenDominated,
            "gamma" => Invariant::Domination,
            "gamma_t" => Invariant::TotalDomination,
            "alpha" => Invariant::Independence,
            "beta" => Invariant::VertexCover,
            "alpha_prime" => Invariant::Matching,
            "omega" => Invariant::Clique,
            "s" => Invariant::Saturation,
            "rho2" => Invariant::TwoPacking,
            "gamma_set" => Invariant::SetDomination,
            "gamma_i" => Invariant::IndependenceDomination,
            other => match other.strip_prefix("alpha_").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Invariant::AlphaK(k),
                _ => return Err(SolverError::InvalidArgument(format!("unknown invariant `{other}`"))),
            },
        };
        Ok(inv)
    }
}

/// The certificate behind a value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Vertices(VertexSet),
    /// A vertex set that certifies relative to a fixed set `given`: the
    /// already-dominated set for ι(G|X), the target for γ_G(S).
    Relative {
        set: VertexSet,
        given: VertexSet,
    },
    Matching(Vec<(usize, usize)>),
    /// Members with their colors, in increasing vertex order.
    Coloring {
        set: VertexSet,
        colors: Vec<(usize, usize)>,
    },
    /// γ^i: the independent set and a smallest set dominating it.
    IndependentDominated {
        independent: VertexSet,
        dominator: VertexSet,
    },
}

impl Witness {
    /// The primary vertex set, or the matched edges flattened.
    pub fn indices(&self) -> Vec<usize> {
        match self {
            Witness::Vertices(s) => s.to_vec(),
            Witness::Relative { set, .. } => set.to_vec(),
            Witness::Matching(edges) => edges.iter().flat_map(|&(u, v)| [u, v]).collect(),
            Witness::Coloring { set, .. } => set.to_vec(),
            Witness::IndependentDominated { independent, .. } => independent.to_vec(),
        }
    }

    /// The set whose size is the value (for γ^i, the dominator).
    pub fn value_set(&self) -> Option<&VertexSet> {
        match self {
            Witness::Vertices(s) => Some(s),
            Witness::Relative { set, .. } => Some(set),
            Witness::Coloring { set, .. } => Some(set),
            Witness::IndependentDominated { dominator, .. } => Some(dominator),
            Witness::Matching(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub invariant: Invariant,
    pub value: usize,
    pub witness: Witness,
    pub stats: SearchStats,
}

impl InvariantResult {
    /// The witness's vertex set; panics for matching witnesses.
    pub fn set(&self) -> &VertexSet {
        self.witness.value_set().expect("invariant has a vertex-set witness")
    }

    /// Re-checks the witness against the invariant's defining predicate and
    /// its size against the value. Optimality is not re-checked.
    pub fn verify(&self, g: &Graph) -> bool {
        match (&self.invariant, &self.witness) {
            (Invariant::Matching | Invariant::Saturation, Witness::Matching(edges)) => {
                let mut used = VertexSet::new(g.order());
                let valid = edges.len() == self.value
                    && edges
                        .iter()
                        .all(|&(u, v)| g.has_edge(u, v) && used.insert(u) && used.insert(v));
                let maximal = self.invariant == Invariant::Matching
                    || g.edges().all(|(u, v)| used.contains(u) || used.contains(v));
                valid && maximal
            }
            (Invariant::IndependenceDomination, Witness::IndependentDominated { independent, dominator }) => {
                g.is_independent(independent)
                    && independent.is_subset(&g.closed_neighborhood(dominator))
                    && dominator.len() == self.value
            }
            (Invariant::AlphaK(k), Witness::Coloring { set, colors }) => {
                set.len() == self.value
                    && colors.len() == set.len()
                    && colors.iter().map(|&(v, _)| v).eq(set.iter())
                    && colors
                        .iter()
                        .all(|&(v, c)| c < *k && colors.iter().all(|&(w, d)| !(g.has_edge(v, w) && c == d)))
            }
            (Invariant::IsolationGivenDominated, Witness::Relative { set, given }) => {
                set.len() == self.value && g.is_isolating_given(set, given)
            }
            (Invariant::SetDomination, Witness::Relative { set, given }) => {
                set.len() == self.value && given.is_subset(&g.closed_neighborhood(set))
            }
            (inv, Witness::Vertices(set)) => {
                set.len() == self.value
                    && match inv {
                        Invariant::Isolation => g.is_isolating(set),
                        Invariant::Domination => g.is_dominating(set),
                        Invariant::TotalDomination => g.is_total_dominating(set),
                        Invariant::Independence => g.is_independent(set),
                        Invariant::VertexCover => g.edges().all(|(u, v)| set.contains(u) || set.contains(v)),
                        Invariant::Clique => g.is_clique(set),
                        Invariant::TwoPacking => g.is_two_packing(set),
                        _ => false,
                    }
            }
            _ => false,
        }
    }
}

fn check_order(g: &Graph) -> Result<(), SolverError> {
    if g.order() > MAX_SOLVER_ORDER {
        return Err(SolverError::TooLarge {
            order: g.order(),
            limit: MAX_SOLVER_ORDER,
        });
    }
    Ok(())
}

fn check_bound(g: &Graph, s: &VertexSet) -> Result<(), SolverError> {
    if s.order() != g.order() {
        return Err(SolverError::InvalidArgument(format!(
            "vertex set bound to order {} used with a graph of order {}",
            s.order(),
            g.order()
        )));
    }
    Ok(())
}

struct Timer {
    start: Instant,
    counter: NodeCounter,
}

impl Timer {
    fn new(budget: Budget) -> Self {
        Self {
            start: Instant::now(),
            counter: NodeCounter::new(budget),
        }
    }

    fn finish(self, invariant: Invariant, value: usize, witness: Witness) -> InvariantResult {
        InvariantResult {
            invariant,
            value,
            witness,
            stats: SearchStats {
                nodes: self.counter.nodes(),
                elapsed: self.start.elapsed(),
            },
        }
    }
}

/// Minimum hitting set of `sets` over the vertices of `g`.
pub(crate) fn min_hitting(
    g: &Graph,
    sets: impl IntoIterator<Item = Mask>,
    max_size: Option<usize>,
    counter: &mut NodeCounter,
) -> Result<Option<Mask>, SolverError> {
    HittingSet::new(low(g.order()), sets).minimum(max_size, counter)
}

pub(crate) fn isolation_constraints(adj: &Adjacency, skip: Mask) -> Vec<Mask> {
    (0..adj.n)
        .filter(|&u| skip & bit(u) == 0)
        .flat_map(|u| bits(adj.open[u] & !low(u + 1) & !skip).map(move |v| adj.closed(u) | adj.closed(v)))
        .collect()
}

fn minimize(g: &Graph, invariant: Invariant, sets: Vec<Mask>, budget: Budget) -> Result<InvariantResult, SolverError> {
    let mut timer = Timer::new(budget);
    let m = min_hitting(g, sets, None, &mut timer.counter)?.expect("covering family is hittable by all vertices");
    Ok(timer.finish(invariant, count(m), Witness::Vertices(to_set(g.order(), m))))
}

/// ι(G): fewest vertices whose closed neighborhood leaves no edge
/// undominated.
pub fn isolation_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let adj = Adjacency::new(g);
    minimize(g, Invariant::Isolation, isolation_constraints(&adj, 0), budget)
}

/// ι(G|X): vertices of `dominated` count as dominated already; the isolating
/// set may still use them.
pub fn isolation_number_given_dominated(
    g: &Graph,
    dominated: &VertexSet,
    budget: Budget,
) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    check_bound(g, dominated)?;
    let adj = Adjacency::new(g);
    let sets = isolation_constraints(&adj, from_set(dominated));
    let mut timer = Timer::new(budget);
    let m = min_hitting(g, sets, None, &mut timer.counter)?.expect("hittable");
    Ok(timer.finish(
        Invariant::IsolationGivenDominated,
        count(m),
        Witness::Relative {
            set: to_set(g.order(), m),
            given: dominated.clone(),
        },
    ))
}

/// γ(G).
pub fn domination_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let adj = Adjacency::new(g);
    let sets = (0..g.order()).map(|v| adj.closed(v)).collect();
    minimize(g, Invariant::Domination, sets, budget)
}

/// γ_t(G); undefined when `g` has an isolated vertex.
pub fn total_domination_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    if g.has_isolated_vertex() {
        return Err(SolverError::Undefined("total domination number"));
    }
    let adj = Adjacency::new(g);
    minimize(g, Invariant::TotalDomination, adj.open.clone(), budget)
}

/// γ_G(S): fewest vertices of `g` whose closed neighborhood contains `target`.
pub fn set_domination_number(g: &Graph, target: &VertexSet, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    check_bound(g, target)?;
    let adj = Adjacency::new(g);
    let mut timer = Timer::new(budget);
    let m = min_hitting(g, target.iter().map(|v| adj.closed(v)), None, &mut timer.counter)?.expect("hittable");
    Ok(timer.finish(
        Invariant::SetDomination,
        count(m),
        Witness::Relative {
            set: to_set(g.order(), m),
            given: target.clone(),
        },
    ))
}

fn complement_masks(adj: &Adjacency) -> Vec<Mask> {
    (0..adj.n).map(|v| low(adj.n) & !adj.closed(v)).collect()
}

/// α(G).
pub fn independence_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let adj = Adjacency::new(g);
    let mut timer = Timer::new(budget);
    let m = clique::maximum_clique(&complement_masks(&adj), low(g.order()), &mut timer.counter)?;
    Ok(timer.finish(
        Invariant::Independence,
        count(m),
        Witness::Vertices(to_set(g.order(), m)),
    ))
}

/// β(G), as the complement of the maximum independent set.
pub fn vertex_cover_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    let alpha = independence_number(g, budget)?;
    let cover = alpha.set().complement();
    Ok(InvariantResult {
        invariant: Invariant::VertexCover,
        value: cover.len(),
        witness: Witness::Vertices(cover),
        stats: alpha.stats,
    })
}

/// ω(G).
pub fn clique_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let adj = Adjacency::new(g);
    let mut timer = Timer::new(budget);
    let m = clique::maximum_clique(&adj.open, low(g.order()), &mut timer.counter)?;
    Ok(timer.finish(Invariant::Clique, count(m), Witness::Vertices(to_set(g.order(), m))))
}

/// α'(G).
pub fn matching_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let adj = Adjacency::new(g);
    let mut timer = Timer::new(budget);
    let edges = matching::maximum_matching(&adj, &mut timer.counter)?;
    Ok(timer.finish(Invariant::Matching, edges.len(), Witness::Matching(edges)))
}

/// s(G): the smallest size of a maximal matching.
pub fn saturation_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let adj = Adjacency::new(g);
    let mut timer = Timer::new(budget);
    let edges = matching::minimum_maximal_matching(&adj, &mut timer.counter)?;
    Ok(timer.finish(Invariant::Saturation, edges.len(), Witness::Matching(edges)))
}

/// ρ₂(G): an independent set of the graph of distance at most two.
pub fn two_packing_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let sq = Adjacency::new(&g.square());
    let mut timer = Timer::new(budget);
    let m = clique::maximum_clique(&complement_masks(&sq), low(g.order()), &mut timer.counter)?;
    Ok(timer.finish(Invariant::TwoPacking, count(m), Witness::Vertices(to_set(g.order(), m))))
}

/// γ^i(G), maximized over inclusion-maximal independent sets only; γ_G is
/// monotone under inclusion so nothing is lost.
pub fn independence_domination_number(g: &Graph, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    let n = g.order();
    let adj = Adjacency::new(g);
    let mut timer = Timer::new(budget);
    let ceiling = min_hitting(g, (0..n).map(|v| adj.closed(v)), None, &mut timer.counter)?
        .map(count)
        .unwrap_or(0);
    let mut best: Option<(Mask, Mask)> = None;
    let mut failure = None;
    let comp = complement_masks(&adj);
    let dominators = |s: Mask| HittingSet::new(low(n), bits(s).map(|v| adj.closed(v)));
    // γ_G(S) is monotone, so a greedy dominator of a superset that is no
    // larger than the best value rules out everything below it.
    let best_value = Cell::new(0usize);
    let beaten = |s: Mask| best_value.get() > 0 && dominators(s).greedy().is_some_and(|d| count(d) <= best_value.get());
    // The enumeration and the inner domination searches each get the budget.
    let mut enumeration = NodeCounter::new(budget);
    clique::maximal_cliques(&comp, low(n), &mut enumeration, &mut |s| beaten(s), &mut |s| {
        if beaten(s) {
            return ControlFlow::Continue(());
        }
        match dominators(s).minimum(None, &mut timer.counter) {
            Ok(Some(d)) => {
                if best.is_none_or(|(_, b)| count(d) > count(b)) {
                    best = Some((s, d));
                    best_value.set(count(d));
                }
                if count(d) == ceiling {
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            }
            Ok(None) => unreachable!("every vertex dominates itself"),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    timer.counter.nodes += enumeration.nodes();
    let (s, d) = best.unwrap_or((0, 0));
    Ok(timer.finish(
        Invariant::IndependenceDomination,
        count(d),
        Witness::IndependentDominated {
            independent: to_set(n, s),
            dominator: to_set(n, d),
        },
    ))
}

/// Proper k-coloring of `g` (colors `0..k` per vertex), if one exists.
pub fn is_k_colorable(g: &Graph, k: usize) -> Result<Option<Vec<usize>>, SolverError> {
    check_order(g)?;
    let adj = Adjacency::new(g);
    let mut counter = NodeCounter::new(Budget::unlimited());
    let coloring = coloring::color_subset(&adj.open, low(g.order()), k, &mut counter)?;
    Ok(coloring.map(|pairs| pairs.into_iter().map(|(_, c)| c).collect()))
}

/// α_k(G): the largest vertex set inducing a k-colorable subgraph
/// (lexicographically smallest on ties), with its coloring.
pub fn alpha_k(g: &Graph, k: usize, budget: Budget) -> Result<InvariantResult, SolverError> {
    check_order(g)?;
    if k == 0 {
        return Err(SolverError::InvalidArgument("alpha_k needs k >= 1".into()));
    }
    let adj = Adjacency::new(g);
    let mut timer = Timer::new(budget);
    let (m, colors) = coloring::max_k_colorable(&adj.open, g.order(), k, &mut timer.counter)?;
    Ok(timer.finish(
        Invariant::AlphaK(k),
        count(m),
        Witness::Coloring {
            set: to_set(g.order(), m),
            colors,
        },
    ))
}

/// α, β, α' and ω together.
#[derive(Clone, Debug)]
pub struct ClassicInvariants {
    pub independence: InvariantResult,
    pub vertex_cover: InvariantResult,
    pub matching: InvariantResult,
    pub clique: InvariantResult,
}

pub fn classic_invariants(g: &Graph, budget: Budget) -> Result<ClassicInvariants, SolverError> {
    let independence = independence_number(g, budget)?;
    let cover = independence.set().complement();
    let vertex_cover = InvariantResult {
        invariant: Invariant::VertexCover,
        value: cover.len(),
        witness: Witness::Vertices(cover),
        stats: independence.stats,
    };
    Ok(ClassicInvariants {
        independence,
        vertex_cover,
        matching: matching_number(g, budget)?,
        clique: clique_number(g, budget)?,
    })
}

/// Dispatches a standalone invariant by tag.
pub fn compute(g: &Graph, invariant: Invariant, budget: Budget) -> Result<InvariantResult, SolverError> {
    match invariant {
        Invariant::Isolation => isolation_number(g, budget),
        Invariant::Domination => domination_number(g, budget),
        Invariant::TotalDomination => total_domination_number(g, budget),
        Invariant::Independence => independence_number(g, budget),
        Invariant::VertexCover => vertex_cover_number(g, budget),
        Invariant::Matching => matching_number(g, budget),
        Invariant::Clique => clique_number(g, budget),
        Invariant::Saturation => saturation_number(g, budget),
        Invariant::TwoPacking => two_packing_number(g, budget),
        Invariant::IndependenceDomination => independence_domination_number(g, budget),
        Invariant::AlphaK(k) => alpha_k(g, k, budget),
        Invariant::IsolationGivenDominated | Invariant::SetDomination => Err(SolverError::InvalidArgument(format!(
            "{invariant} needs a vertex set argument"
        ))),
    }
}

#[cfg(test)]
mod tests;
