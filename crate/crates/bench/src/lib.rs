//! Benchmark inputs shared by the bench targets.

use isolation_core::products::cartesian_product;
use isolation_core::{Graph, GraphFamily};

pub fn family(spec: &str) -> Graph {
    spec.parse::<GraphFamily>()
        .and_then(|f| f.build())
        .unwrap_or_else(|e| panic!("bad family `{spec}`: {e}"))
}

/// `G □ H` from two family specs.
pub fn cart(g: &str, h: &str) -> Graph {
    cartesian_product(&family(g), &family(h))
        .expect("small product")
        .into_graph()
}

/// Named inputs for the solver benches, roughly in order of difficulty.
pub fn solver_inputs() -> Vec<(&'static str, Graph)> {
    vec![
        ("P5xP5", cart("path:5", "path:5")),
        ("K5xC5", cart("complete:5", "cycle:5")),
        ("K6xC6", cart("complete:6", "cycle:6")),
        ("Q5", family("hypercube:5")),
        ("C7xC7", cart("cycle:7", "cycle:7")),
    ]
}
