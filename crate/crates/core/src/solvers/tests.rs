use proptest::prelude::*;

use super::*;
use crate::family::GraphFamily;
use crate::oracle;

fn fam(f: GraphFamily) -> Graph {
    f.build().unwrap()
}

fn rook(n: usize) -> Graph {
    Graph::from_fn(n * n, |u, v| (u / n == v / n) != (u % n == v % n))
}

fn grid(n: usize) -> Graph {
    Graph::from_fn(n * n, |u, v| {
        let (a, b, c, d) = (u / n, u % n, v / n, v % n);
        (a == c && b.abs_diff(d) == 1) || (b == d && a.abs_diff(c) == 1)
    })
}

fn value(r: Result<InvariantResult, SolverError>, g: &Graph) -> usize {
    let r = r.unwrap();
    assert!(r.verify(g), "witness fails for {}", r.invariant);
    r.value
}

const B: Budget = Budget::unlimited();

#[test]
fn isolation_examples() {
    let s4 = fam(GraphFamily::SubdividedStar(4));
    assert_eq!(value(isolation_number(&s4, B), &s4), 1);
    let k33 = rook(3);
    assert_eq!(value(isolation_number(&k33, B), &k33), 2);
    let p55 = grid(5);
    assert_eq!(value(isolation_number(&p55, B), &p55), 4);
    let e = Graph::empty(5);
    let r = isolation_number(&e, B).unwrap();
    assert_eq!(r.value, 0);
    assert!(r.set().is_empty());
}

#[test]
fn isolation_given_dominated_examples() {
    let c7 = fam(GraphFamily::Cycle(7));
    let all = c7.vertex_set();
    assert_eq!(value(isolation_number_given_dominated(&c7, &all, B), &c7), 0);
    let none = c7.empty_set();
    assert_eq!(
        value(isolation_number_given_dominated(&c7, &none, B), &c7),
        isolation_number(&c7, B).unwrap().value
    );
    let wrong = VertexSet::new(3);
    assert!(matches!(
        isolation_number_given_dominated(&c7, &wrong, B),
        Err(SolverError::InvalidArgument(_))
    ));
}

#[test]
fn domination_examples() {
    let s4 = fam(GraphFamily::SubdividedStar(4));
    assert_eq!(value(domination_number(&s4, B), &s4), 4);
    for n in 2..6 {
        let k = fam(GraphFamily::Complete(n));
        assert_eq!(value(domination_number(&k, B), &k), 1);
        assert_eq!(value(total_domination_number(&k, B), &k), 2);
    }
    // γ(Q_4) by full enumeration of the 2^16 vertex subsets.
    let q4 = fam(GraphFamily::Hypercube(4));
    assert_eq!(oracle::domination(&q4), 4);
    assert_eq!(value(domination_number(&q4, B), &q4), 4);
}

#[test]
fn total_domination_undefined_with_isolated_vertex() {
    let g = Graph::from_edges(3, [(0, 1)]).unwrap();
    assert_eq!(
        total_domination_number(&g, B),
        Err(SolverError::Undefined("total domination number"))
    );
}

#[test]
fn classic_examples() {
    let c5 = fam(GraphFamily::Cycle(5));
    // Reference values from full enumeration on five vertices.
    assert_eq!(
        [
            oracle::independence(&c5),
            oracle::vertex_cover(&c5),
            oracle::matching(&c5),
            oracle::clique(&c5)
        ],
        [2, 3, 2, 2]
    );
    let c = classic_invariants(&c5, B).unwrap();
    assert_eq!(
        [
            c.independence.value,
            c.vertex_cover.value,
            c.matching.value,
            c.clique.value
        ],
        [2, 3, 2, 2]
    );
    let k4 = fam(GraphFamily::Complete(4));
    let c = classic_invariants(&k4, B).unwrap();
    assert_eq!(
        [
            c.independence.value,
            c.vertex_cover.value,
            c.matching.value,
            c.clique.value
        ],
        [1, 3, 2, 4]
    );
    for r in [&c.independence, &c.vertex_cover, &c.matching, &c.clique] {
        assert!(r.verify(&k4));
    }
    assert_eq!(c.vertex_cover.set(), &c.independence.set().complement());
}

#[test]
fn saturation_examples() {
    let p4 = fam(GraphFamily::Path(4));
    let r = saturation_number(&p4, B).unwrap();
    assert_eq!(r.value, 1);
    assert_eq!(r.witness, Witness::Matching(vec![(1, 2)]));
    for n in 1..6 {
        let star = fam(GraphFamily::Star(n));
        assert_eq!(value(saturation_number(&star, B), &star), 1);
    }
    let c5 = fam(GraphFamily::Cycle(5));
    assert_eq!(oracle::saturation(&c5), 2);
    assert_eq!(value(saturation_number(&c5, B), &c5), 2);
    let e = Graph::empty(4);
    assert_eq!(value(saturation_number(&e, B), &e), 0);
    assert_eq!(value(matching_number(&e, B), &e), 0);
}

#[test]
fn two_packing_examples() {
    let s4 = fam(GraphFamily::SubdividedStar(4));
    assert_eq!(value(two_packing_number(&s4, B), &s4), 4);
    let k33 = rook(3);
    assert_eq!(value(two_packing_number(&k33, B), &k33), 1);
    let k1 = Graph::empty(1);
    assert_eq!(value(two_packing_number(&k1, B), &k1), 1);
    assert_eq!(value(domination_number(&k1, B), &k1), 1);
}

#[test]
fn set_domination_examples() {
    let c6 = fam(GraphFamily::Cycle(6));
    assert_eq!(value(set_domination_number(&c6, &c6.empty_set(), B), &c6), 0);
    assert_eq!(
        value(set_domination_number(&c6, &c6.vertex_set(), B), &c6),
        domination_number(&c6, B).unwrap().value
    );
    let star = fam(GraphFamily::Star(5));
    let leaves = star.set_of(1..=5).unwrap();
    let r = set_domination_number(&star, &leaves, B).unwrap();
    assert_eq!((r.value, r.set().to_vec()), (1, vec![0]));
}

#[test]
fn independence_domination_examples() {
    let s4 = fam(GraphFamily::SubdividedStar(4));
    assert_eq!(value(independence_domination_number(&s4, B), &s4), 4);
    for m in 2..=4 {
        for n in m..=4 {
            let k = fam(GraphFamily::CompleteBipartite(m, n));
            assert_eq!(oracle::independence_domination(&k), 1);
            assert_eq!(value(independence_domination_number(&k, B), &k), 1);
        }
    }
    let k1 = Graph::empty(1);
    assert_eq!(value(independence_domination_number(&k1, B), &k1), 1);
    assert_eq!(independence_domination_number(&Graph::empty(0), B).unwrap().value, 0);
}

#[test]
fn alpha_k_examples() {
    for n in 1..6 {
        let star = fam(GraphFamily::Star(n));
        assert_eq!(value(alpha_k(&star, 2, B), &star), n + 1);
    }
    for n in 3..7 {
        let c = fam(GraphFamily::Cycle(n));
        assert_eq!(value(alpha_k(&c, n, B), &c), n);
        assert_eq!(
            alpha_k(&c, 1, B).unwrap().value,
            independence_number(&c, B).unwrap().value
        );
    }
    for n in 1..6 {
        let k = fam(GraphFamily::Complete(n));
        for m in n..n + 2 {
            assert_eq!(value(alpha_k(&k, m, B), &k), n);
        }
    }
    assert!(alpha_k(&Graph::empty(2), 0, B).is_err());
}

#[test]
fn alpha_k_lexicographic_witness() {
    // In C_5 the largest bipartite induced subgraphs have four vertices; the
    // lexicographically first is {0,1,2,3}.
    let c5 = fam(GraphFamily::Cycle(5));
    let r = alpha_k(&c5, 2, B).unwrap();
    assert_eq!(r.set().to_vec(), vec![0, 1, 2, 3]);
    assert!(r.verify(&c5));
}

#[test]
fn k_colorability() {
    let c5 = fam(GraphFamily::Cycle(5));
    assert!(is_k_colorable(&c5, 2).unwrap().is_none());
    let col = is_k_colorable(&c5, 3).unwrap().unwrap();
    assert!(c5.edges().all(|(u, v)| col[u] != col[v]));
}

#[test]
fn budget_exhaustion_is_an_error() {
    let g = grid(5);
    match isolation_number(&g, Budget::nodes(3)) {
        Err(SolverError::BudgetExhausted { nodes, .. }) => assert_eq!(nodes, 3),
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn too_large_is_an_error() {
    let g = Graph::empty(MAX_SOLVER_ORDER + 1);
    assert!(matches!(isolation_number(&g, B), Err(SolverError::TooLarge { .. })));
}

#[test]
fn invariant_tags_round_trip() {
    for inv in Invariant::STANDALONE.into_iter().chain([Invariant::AlphaK(3)]) {
        assert_eq!(inv.tag().parse::<Invariant>().unwrap(), inv);
    }
    assert!("alpha_0".parse::<Invariant>().is_err());
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
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matches_full_enumeration(g in arb_graph(7)) {
        prop_assert_eq!(value(isolation_number(&g, B), &g), oracle::isolation(&g));
        prop_assert_eq!(value(domination_number(&g, B), &g), oracle::domination(&g));
        prop_assert_eq!(value(independence_number(&g, B), &g), oracle::independence(&g));
        prop_assert_eq!(value(vertex_cover_number(&g, B), &g), oracle::vertex_cover(&g));
        prop_assert_eq!(value(clique_number(&g, B), &g), oracle::clique(&g));
        prop_assert_eq!(value(matching_number(&g, B), &g), oracle::matching(&g));
        prop_assert_eq!(value(saturation_number(&g, B), &g), oracle::saturation(&g));
        prop_assert_eq!(value(two_packing_number(&g, B), &g), oracle::two_packing(&g));
        prop_assert_eq!(value(independence_domination_number(&g, B), &g), oracle::independence_domination(&g));
        match total_domination_number(&g, B) {
            Ok(r) => {
                prop_assert!(r.verify(&g));
                prop_assert_eq!(Some(r.value), oracle::total_domination(&g));
            }
            Err(_) => prop_assert!(g.has_isolated_vertex()),
        }
        for k in 1..=3 {
            prop_assert_eq!(value(alpha_k(&g, k, B), &g), oracle::alpha_k(&g, k));
        }
    }

    #[test]
    fn bound_chains(g in arb_graph(8)) {
        let iota = isolation_number(&g, B).unwrap().value;
        let gamma = domination_number(&g, B).unwrap().value;
        let gamma_i = independence_domination_number(&g, B).unwrap().value;
        let rho2 = two_packing_number(&g, B).unwrap().value;
        let alpha = independence_number(&g, B).unwrap().value;
        let beta = vertex_cover_number(&g, B).unwrap().value;
        prop_assert!(iota <= gamma);
        prop_assert!(rho2 <= gamma_i && gamma_i <= gamma);
        prop_assert!(iota + gamma_i >= gamma);
        prop_assert_eq!(alpha + beta, g.order());
        if !g.has_isolated_vertex() {
            let s = saturation_number(&g, B).unwrap().value;
            let a1 = matching_number(&g, B).unwrap().value;
            prop_assert!(iota <= s && s <= a1 && gamma <= a1);
        }
    }

    #[test]
    fn relative_invariants_are_monotone(g in arb_graph(8), picks in proptest::collection::vec(any::<bool>(), 8)) {
        let n = g.order();
        let small = g.set_of((0..n).filter(|&v| picks[v] && v % 2 == 0)).unwrap();
        let large = g.set_of((0..n).filter(|&v| picks[v])).unwrap();
        let iota = isolation_number(&g, B).unwrap().value;
        let given_small = value(isolation_number_given_dominated(&g, &small, B), &g);
        let given_large = value(isolation_number_given_dominated(&g, &large, B), &g);
        prop_assert!(given_large <= given_small && given_small <= iota);
        prop_assert_eq!(given_large, oracle::isolation_given(&g, &large));
        let dom_small = value(set_domination_number(&g, &small, B), &g);
        let dom_large = value(set_domination_number(&g, &large, B), &g);
        prop_assert!(dom_small <= dom_large);
        prop_assert_eq!(dom_large, oracle::set_domination(&g, &large));
    }
}
