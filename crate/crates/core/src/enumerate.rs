//! Non-isomorphic enumeration of small graphs and trees.
//!
//! Every graph on `n` vertices arises from one on `n - 1` vertices by adding
//! a vertex with some neighborhood, and every tree on `n >= 2` vertices from
//! a smaller tree by attaching a leaf. Candidates are deduplicated by
//! [`canonical_form`], so the practical limit is about order 8 for graphs
//! and order 12 for trees.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::iso::{canonical_form, CanonicalForm};

fn extend(g: &Graph, neighbors: impl Iterator<Item = usize>) -> Graph {
    let n = g.order();
    Graph::from_edges(n + 1, g.edges().chain(neighbors.map(|u| (u, n)))).expect("extension edges are in range")
}

/// All graphs of order `n` up to isomorphism, in canonical-form order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::from([canonical_form(&Graph::empty(0))]);
    for k in 0..n {
        let mut next = BTreeSet::new();
        for form in &level {
            let g = form.to_graph();
            for mask in 0u64..1 << k {
                let h = extend(&g, (0..k).filter(|i| mask >> i & 1 == 1));
                next.insert(canonical_form(&h));
            }
        }
        level = next;
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}

/// Connected graphs of order `n` up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// Trees of order `n` up to isomorphism (`n >= 1`).
pub fn trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::from([canonical_form(&Graph::empty(1))]);
    for k in 1..n {
        let mut next = BTreeSet::new();
        for form in &level {
            let t = form.to_graph();
            for v in 0..k {
                next.insert(canonical_form(&extend(&t, std::iter::once(v))));
            }
        }
        level = next;
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}
