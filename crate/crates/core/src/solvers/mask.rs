//! Single-word vertex masks used inside the search loops.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub(crate) type Mask = u128;

/// Largest order the exact solvers accept.
pub const MAX_SOLVER_ORDER: usize = 128;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1 << v
}

#[inline]
pub(crate) fn low(n: usize) -> Mask {
    if n >= 128 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

#[inline]
pub(crate) fn first(m: Mask) -> usize {
    m.trailing_zeros() as usize
}

#[inline]
pub(crate) fn count(m: Mask) -> usize {
    m.count_ones() as usize
}

pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = first(m);
            m &= m - 1;
            Some(b)
        }
    })
}

pub(crate) fn to_set(order: usize, m: Mask) -> VertexSet {
    VertexSet::from_indices(order, bits(m)).expect("mask within order")
}

pub(crate) fn from_set(s: &VertexSet) -> Mask {
    s.iter().fold(0, |m, v| m | bit(v))
}

/// Open and closed neighborhood masks of a graph.
pub(crate) struct Adjacency {
    pub n: usize,
    pub open: Vec<Mask>,
}

impl Adjacency {
    pub fn new(g: &Graph) -> Self {
        debug_assert!(g.order() <= MAX_SOLVER_ORDER);
        let open = (0..g.order())
            .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
            .collect();
        Self { n: g.order(), open }
    }

    #[inline]
    pub fn closed(&self, v: usize) -> Mask {
        self.open[v] | bit(v)
    }
}
