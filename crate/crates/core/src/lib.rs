//! Exact isolation and domination invariants, graph products, generalized
//! Sierpinski graphs and certified isolating-set constructions.

pub mod constructions;
pub mod enumerate;
pub mod family;
pub mod graph;
pub mod io;
pub mod iso;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod products;
pub mod sierpinski;
pub mod solvers;
pub mod vertex_set;

pub use constructions::{CertifiedSet, ConstructionError, IsolationGraph};
pub use family::GraphFamily;
pub use graph::{Graph, GraphError, InducedSubgraph};
pub use products::{Factor, ProductError, ProductGraph, ProductKind};
pub use sierpinski::{SierpinskiBounds, SierpinskiError, SierpinskiGraph, XiResult};
pub use solvers::{Budget, Invariant, InvariantResult, SolverError, Witness};
pub use vertex_set::VertexSet;
