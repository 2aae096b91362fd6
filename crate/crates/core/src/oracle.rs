//! Pruning-free reference values by full subset enumeration.
//!
//! Only the defining predicates on [`Graph`] are used; nothing here shares
//! code with the search engines. Vertex-subset invariants are exponential in
//! the order and edge-subset ones in the size, so keep inputs to about 16
//! vertices and 20 edges.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n <= 24, "oracle enumeration limited to 24 vertices");
    (0u32..1 << n).map(move |m| VertexSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)).expect("in range"))
}

fn min_size(g: &Graph, pred: impl Fn(&VertexSet) -> bool) -> Option<usize> {
    subsets(g.order()).filter(|s| pred(s)).map(|s| s.len()).min()
}

fn max_size(g: &Graph, pred: impl Fn(&VertexSet) -> bool) -> usize {
    subsets(g.order())
        .filter(|s| pred(s))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

pub fn isolation(g: &Graph) -> usize {
    min_size(g, |s| g.is_isolating(s)).expect("V(G) isolates")
}

pub fn isolation_given(g: &Graph, dominated: &VertexSet) -> usize {
    min_size(g, |s| g.is_isolating_given(s, dominated)).expect("V(G) isolates")
}

pub fn domination(g: &Graph) -> usize {
    min_size(g, |s| g.is_dominating(s)).expect("V(G) dominates")
}

pub fn total_domination(g: &Graph) -> Option<usize> {
    min_size(g, |s| g.is_total_dominating(s))
}

pub fn set_domination(g: &Graph, target: &VertexSet) -> usize {
    min_size(g, |s| target.is_subset(&g.closed_neighborhood(s))).expect("V(G) dominates")
}

pub fn independence(g: &Graph) -> usize {
    max_size(g, |s| g.is_independent(s))
}

pub fn vertex_cover(g: &Graph) -> usize {
    min_size(g, |s| g.edges().all(|(u, v)| s.contains(u) || s.contains(v))).expect("V(G) covers")
}

pub fn clique(g: &Graph) -> usize {
    max_size(g, |s| g.is_clique(s))
}

pub fn two_packing(g: &Graph) -> usize {
    max_size(g, |s| g.is_two_packing(s))
}

pub fn independence_domination(g: &Graph) -> usize {
    subsets(g.order())
        .filter(|s| g.is_independent(s))
        .map(|s| set_domination(g, &s))
        .max()
        .unwrap_or(0)
}

/// Every edge subset that is a matching, as edge lists.
fn matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    assert!(edges.len() <= 24, "oracle enumeration limited to 24 edges");
    (0u32..1 << edges.len())
        .map(|m| {
            edges
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect::<Vec<_>>()
        })
        .filter(|chosen| {
            let mut ends: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect();
            let before = ends.len();
            ends.sort_unstable();
            ends.dedup();
            ends.len() == before
        })
        .collect()
}

pub fn matching(g: &Graph) -> usize {
    matchings(g).iter().map(Vec::len).max().unwrap_or(0)
}

pub fn saturation(g: &Graph) -> usize {
    matchings(g)
        .iter()
        .filter(|m| {
            g.edges()
                .all(|(u, v)| m.iter().any(|&(a, b)| a == u || a == v || b == u || b == v))
        })
        .map(Vec::len)
        .min()
        .unwrap_or(0)
}

/// Whether `s` induces a k-colorable subgraph, by trying every assignment.
pub fn induces_k_colorable(g: &Graph, s: &VertexSet, k: usize) -> bool {
    let members = s.to_vec();
    if members.is_empty() {
        return true;
    }
    if k == 0 {
        return false;
    }
    let total = k.checked_pow(members.len() as u32).expect("small search");
    (0..total).any(|code| {
        let mut c = code;
        let colors: Vec<usize> = members
            .iter()
            .map(|_| {
                let x = c % k;
                c /= k;
                x
            })
            .collect();
        members.iter().enumerate().all(|(i, &u)| {
            members
                .iter()
                .enumerate()
                .all(|(j, &v)| !g.has_edge(u, v) || colors[i] != colors[j])
        })
    })
}

pub fn alpha_k(g: &Graph, k: usize) -> usize {
    max_size(g, |s| induces_k_colorable(g, s, k))
}
