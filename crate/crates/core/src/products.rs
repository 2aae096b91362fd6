//! Cartesian and lexicographic products with coordinate bookkeeping.
//!
//! Product vertex `(g, h)` has index `g * n(H) + h` (row-major). This
//! numbering is part of the public contract: witnesses in reports refer to
//! raw indices.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("product factors must be nonempty")]
    EmptyFactor,
    #[error("{which:?} fiber index {index} out of range (factor order {order})")]
    FiberOutOfRange { which: Factor, index: usize, order: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Cartesian,
    Lexicographic,
}

/// Selects the first factor `G` or the second factor `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    First,
    Second,
}

#[derive(Clone, Debug)]
pub struct ProductGraph {
    graph: Graph,
    kind: ProductKind,
    first_order: usize,
    second_order: usize,
}

impl ProductGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    /// `(n(G), n(H))`.
    pub fn factor_orders(&self) -> (usize, usize) {
        (self.first_order, self.second_order)
    }

    #[inline]
    pub fn index(&self, g: usize, h: usize) -> usize {
        debug_assert!(g < self.first_order && h < self.second_order);
        g * self.second_order + h
    }

    #[inline]
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.second_order, v % self.second_order)
    }

    /// `p_G(A)` or `p_H(A)`.
    pub fn project(&self, a: &VertexSet, which: Factor) -> VertexSet {
        let (order, pick): (usize, fn((usize, usize)) -> usize) = match which {
            Factor::First => (self.first_order, |c| c.0),
            Factor::Second => (self.second_order, |c| c.1),
        };
        let mut out = VertexSet::new(order);
        for v in a.iter() {
            out.insert(pick(self.coords(v)));
        }
        out
    }

    /// Fiber of the chosen factor: `Factor::First` with index `h` gives the
    /// G-fiber `G^h`; `Factor::Second` with index `g` gives the H-fiber `^gH`.
    pub fn fiber(&self, which: Factor, index: usize) -> Result<VertexSet, ProductError> {
        let (fixed_order, other_order) = match which {
            Factor::First => (self.second_order, self.first_order),
            Factor::Second => (self.first_order, self.second_order),
        };
        if index >= fixed_order {
            return Err(ProductError::FiberOutOfRange {
                which,
                index,
                order: fixed_order,
            });
        }
        let members = (0..other_order).map(|x| match which {
            Factor::First => self.index(x, index),
            Factor::Second => self.index(index, x),
        });
        Ok(VertexSet::from_indices(self.graph.order(), members)?)
    }

    /// `A × B` for `A ⊆ V(G)`, `B ⊆ V(H)`.
    pub fn product_set(&self, a: &VertexSet, b: &VertexSet) -> VertexSet {
        assert_eq!(a.order(), self.first_order);
        assert_eq!(b.order(), self.second_order);
        let mut out = VertexSet::new(self.graph.order());
        for g in a.iter() {
            for h in b.iter() {
                out.insert(self.index(g, h));
            }
        }
        out
    }
}

fn build(g: &Graph, h: &Graph, kind: ProductKind) -> Result<ProductGraph, ProductError> {
    if g.order() == 0 || h.order() == 0 {
        return Err(ProductError::EmptyFactor);
    }
    let nh = h.order();
    let graph = Graph::from_fn(g.order() * nh, |u, v| {
        let (g1, h1) = (u / nh, u % nh);
        let (g2, h2) = (v / nh, v % nh);
        match kind {
            ProductKind::Cartesian => (g1 == g2 && h.has_edge(h1, h2)) || (h1 == h2 && g.has_edge(g1, g2)),
            ProductKind::Lexicographic => g.has_edge(g1, g2) || (g1 == g2 && h.has_edge(h1, h2)),
        }
    });
    let labels = (0..graph.order())
        .map(|v| format!("({},{})", g.label(v / nh), h.label(v % nh)))
        .collect();
    Ok(ProductGraph {
        graph: graph.with_labels(labels)?,
        kind,
        first_order: g.order(),
        second_order: nh,
    })
}

/// `G □ H`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    build(g, h, ProductKind::Cartesian)
}

/// `G ∘ H`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    build(g, h, ProductKind::Lexicographic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GraphFamily;
    use crate::iso::are_isomorphic;
    use proptest::prelude::*;

    fn fam(f: GraphFamily) -> Graph {
        f.build().unwrap()
    }

    fn unlabeled(g: &Graph) -> Graph {
        Graph::from_edges(g.order(), g.edges()).unwrap()
    }

    #[test]
    fn cartesian_examples() {
        let k2 = fam(GraphFamily::Complete(2));
        let c4 = fam(GraphFamily::Cycle(4));
        assert!(are_isomorphic(cartesian_product(&k2, &k2).unwrap().graph(), &c4));
        let mut q = k2.clone();
        for _ in 1..4 {
            q = cartesian_product(&q, &k2).unwrap().into_graph();
        }
        assert_eq!(unlabeled(&q), fam(GraphFamily::Hypercube(4)));
    }

    #[test]
    fn lexicographic_examples() {
        let k2 = fam(GraphFamily::Complete(2));
        let k4 = fam(GraphFamily::Complete(4));
        assert!(are_isomorphic(lexicographic_product(&k2, &k2).unwrap().graph(), &k4));
        let c5 = fam(GraphFamily::Cycle(5));
        let k1 = Graph::empty(1);
        assert_eq!(unlabeled(lexicographic_product(&c5, &k1).unwrap().graph()), c5);
    }

    #[test]
    fn projections_and_fibers() {
        let k2 = fam(GraphFamily::Complete(2));
        let k3 = fam(GraphFamily::Complete(3));
        let p = cartesian_product(&k2, &k2).unwrap();
        let a = p.graph().set_of([p.index(0, 0), p.index(0, 1)]).unwrap();
        assert_eq!(p.project(&a, Factor::First).to_vec(), vec![0]);
        assert!(p.project(&p.graph().empty_set(), Factor::Second).is_empty());
        let p = cartesian_product(&k2, &k3).unwrap();
        let fiber = p.fiber(Factor::Second, 0).unwrap();
        assert_eq!(fiber.len(), 3);
        assert!(are_isomorphic(&p.graph().induced_subgraph(&fiber).graph, &k3));
        assert!(matches!(
            p.fiber(Factor::Second, 2),
            Err(ProductError::FiberOutOfRange { .. })
        ));
    }

    #[test]
    fn empty_factor_rejected() {
        let k2 = fam(GraphFamily::Complete(2));
        assert_eq!(
            cartesian_product(&Graph::empty(0), &k2).unwrap_err(),
            ProductError::EmptyFactor
        );
        assert_eq!(
            lexicographic_product(&k2, &Graph::empty(0)).unwrap_err(),
            ProductError::EmptyFactor
        );
    }

    fn arb_graph(max: usize) -> impl Strategy<Value = Graph> {
        (1..=max).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut k = 0;
                Graph::from_fn(n, |_, _| {
                    k += 1;
                    bits[k - 1]
                })
            })
        })
    }

    proptest! {
        #[test]
        fn degree_and_size_identities(g in arb_graph(5), h in arb_graph(5)) {
            let cart = cartesian_product(&g, &h).unwrap();
            let lex = lexicographic_product(&g, &h).unwrap();
            let (ng, nh) = (g.order(), h.order());
            prop_assert_eq!(cart.graph().size(), ng * h.size() + nh * g.size());
            prop_assert_eq!(lex.graph().size(), nh * nh * g.size() + ng * h.size());
            for v in 0..ng * nh {
                let (a, b) = cart.coords(v);
                prop_assert_eq!(cart.index(a, b), v);
                prop_assert_eq!(cart.graph().degree(v), g.degree(a) + h.degree(b));
                prop_assert_eq!(lex.graph().degree(v), g.degree(a) * nh + h.degree(b));
            }
            for x in 0..nh {
                let f = cart.fiber(Factor::First, x).unwrap();
                prop_assert!(are_isomorphic(&cart.graph().induced_subgraph(&f).graph, &g));
            }
            for x in 0..ng {
                let f = cart.fiber(Factor::Second, x).unwrap();
                prop_assert!(are_isomorphic(&cart.graph().induced_subgraph(&f).graph, &h));
            }
        }

        #[test]
        fn cartesian_commutes(g in arb_graph(4), h in arb_graph(3)) {
            let gh = cartesian_product(&g, &h).unwrap();
            let hg = cartesian_product(&h, &g).unwrap();
            prop_assert!(are_isomorphic(gh.graph(), hg.graph()));
        }
    }
}
