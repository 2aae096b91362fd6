//! Brute-force canonical forms for small graphs.
//!
//! Intended for graphs of order at most about 10: vertices are split into
//! classes by an isomorphism-invariant key (color refinement), and the
//! lexicographically least adjacency string is searched over all orderings
//! that respect the class order. Interchangeable twins are tried only once.

use crate::graph::Graph;

/// Lower-triangle adjacency bits of a graph under its canonical ordering,
/// prefixed with the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Rebuilds the canonically labeled graph.
    pub fn to_graph(&self) -> Graph {
        let mut k = 0;
        let mut adj = vec![vec![false; self.order]; self.order];
        for v in 1..self.order {
            for u in 0..v {
                adj[u][v] = self.bits[k];
                k += 1;
            }
        }
        Graph::from_fn(self.order, |u, v| adj[u][v])
    }
}

/// Stable color refinement; returns a class rank per vertex.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut color: Vec<usize> = g.degrees();
    loop {
        let mut keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = keys
            .iter_mut()
            .map(|k| sorted.binary_search(k).expect("key present"))
            .collect();
        let classes_before = {
            let mut c = color.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if sorted.len() == classes_before {
            return next;
        }
        color = next;
    }
}

struct Search<'a> {
    g: &'a Graph,
    class: Vec<usize>,
    slots: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    current: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        let n = self.g.order();
        if pos == n {
            if self.best.as_ref().is_none_or(|b| self.current < *b) {
                self.best = Some(self.current.clone());
            }
            return;
        }
        let want = self.slots[pos];
        for v in 0..n {
            if self.used[v] || self.class[v] != want {
                continue;
            }
            let twin_tried = (0..v).any(|u| !self.used[u] && self.class[u] == want && self.are_twins(u, v));
            if twin_tried {
                continue;
            }
            let mark = self.current.len();
            for q in 0..pos {
                self.current.push(self.g.has_edge(self.perm[q], v));
            }
            if self.prefix_ok() {
                self.used[v] = true;
                self.perm.push(v);
                self.run(pos + 1);
                self.perm.pop();
                self.used[v] = false;
            }
            self.current.truncate(mark);
        }
    }

    fn prefix_ok(&self) -> bool {
        match &self.best {
            None => true,
            Some(b) => self.current.as_slice() <= &b[..self.current.len()],
        }
    }

    fn are_twins(&self, u: usize, v: usize) -> bool {
        (0..self.g.order())
            .filter(|&w| w != u && w != v)
            .all(|w| self.g.has_edge(u, w) == self.g.has_edge(v, w))
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let class = refine(g);
    let mut slots = class.clone();
    slots.sort_unstable();
    let mut search = Search {
        g,
        class,
        slots,
        perm: Vec::with_capacity(g.order()),
        used: vec![false; g.order()],
        current: Vec::new(),
        best: None,
    };
    search.run(0);
    CanonicalForm {
        order: g.order(),
        bits: search.best.unwrap_or_default(),
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && {
            let mut a = g.degrees();
            let mut b = h.degrees();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
        && canonical_form(g) == canonical_form(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GraphFamily;

    /// Plain permutation search, no refinement or pruning.
    fn naive_isomorphic(g: &Graph, h: &Graph) -> bool {
        fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == g.order() {
                return true;
            }
            for x in 0..h.order() {
                if used[x] {
                    continue;
                }
                if (0..k).all(|i| g.has_edge(i, k) == h.has_edge(map[i], x)) {
                    used[x] = true;
                    map.push(x);
                    if go(g, h, map, used) {
                        return true;
                    }
                    map.pop();
                    used[x] = false;
                }
            }
            false
        }
        g.order() == h.order() && go(g, h, &mut Vec::new(), &mut vec![false; h.order()])
    }

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        Graph::from_edges(g.order(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn relabeled_graphs_share_form() {
        let c6 = GraphFamily::Cycle(6).build().unwrap();
        let shuffled = relabel(&c6, &[3, 0, 5, 1, 4, 2]);
        assert_eq!(canonical_form(&c6), canonical_form(&shuffled));
        assert!(are_isomorphic(&c6, &shuffled));
        let p6 = GraphFamily::Path(6).build().unwrap();
        assert!(!are_isomorphic(&c6, &p6));
    }

    #[test]
    fn regular_non_isomorphic_pair() {
        // C_6 and two disjoint triangles: same degree sequence.
        let c6 = GraphFamily::Cycle(6).build().unwrap();
        let two_k3 = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_k3));
        assert!(!naive_isomorphic(&c6, &two_k3));
    }

    #[test]
    fn form_rebuilds_isomorphic_graph() {
        let g = GraphFamily::SubdividedStar(3).build().unwrap();
        assert!(naive_isomorphic(&canonical_form(&g).to_graph(), &g));
    }

    #[test]
    fn agrees_with_naive_search_on_all_graphs_of_order_five() {
        let n = 5;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let graphs: Vec<Graph> = (0u32..1 << pairs.len())
            .step_by(7)
            .map(|mask| {
                Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap()
            })
            .collect();
        for a in graphs.iter().take(60) {
            for b in graphs.iter().take(60) {
                assert_eq!(are_isomorphic(a, b), naive_isomorphic(a, b));
            }
        }
    }
}
