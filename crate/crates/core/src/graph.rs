use std::collections::VecDeque;

use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("label count {labels} does not match order {order}")]
    LabelCount { labels: usize, order: usize },
}

/// An immutable simple undirected graph on the vertices `0..order`.
///
/// Adjacency is kept as sorted neighbor lists, plus packed bit rows for
/// graphs up to [`DENSE_ROW_LIMIT`] vertices so `has_edge` is a single bit
/// test; larger graphs fall back to binary search in the neighbor list.
/// Display labels are metadata only.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    size: usize,
    rows: Option<Vec<VertexSet>>,
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

/// Largest order for which a bit-matrix is kept.
pub const DENSE_ROW_LIMIT: usize = 4096;

/// An induced subgraph together with the map back to the parent's indices.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the parent index of subgraph vertex `i`.
    pub original: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut neighbors = vec![Vec::new(); order];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in neighbors.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_neighbors(neighbors))
    }

    /// Graph on `order` vertices with no edges.
    pub fn empty(order: usize) -> Self {
        Self::from_neighbors(vec![Vec::new(); order])
    }

    /// Builds from an adjacency predicate evaluated on every pair `u < v`.
    pub fn from_fn(order: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut neighbors = vec![Vec::new(); order];
        for u in 0..order {
            for v in u + 1..order {
                if adjacent(u, v) {
                    neighbors[u].push(v);
                    neighbors[v].push(u);
                }
            }
        }
        Self::from_neighbors(neighbors)
    }

    /// Neighbor lists must be sorted, duplicate-free and symmetric.
    fn from_neighbors(neighbors: Vec<Vec<usize>>) -> Self {
        let order = neighbors.len();
        let size = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        let rows = (order <= DENSE_ROW_LIMIT).then(|| {
            neighbors
                .iter()
                .map(|list| VertexSet::from_indices(order, list.iter().copied()).expect("in range"))
                .collect()
        });
        Self {
            order,
            size,
            rows,
            neighbors,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.order {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                order: self.order,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.order {
            return false;
        }
        match &self.rows {
            Some(rows) => rows[u].contains(v),
            None => self.neighbors[u].binary_search(&v).is_ok(),
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Open neighborhood of `v` as a set.
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_indices(self.order, self.neighbors[v].iter().copied()).expect("in range")
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.order)
    }

    /// Convenience for building a set bound to this graph.
    pub fn set_of<I: IntoIterator<Item = usize>>(&self, members: I) -> Result<VertexSet, GraphError> {
        VertexSet::from_indices(self.order, members)
    }

    /// `N[A]`: the members of `a` together with all their neighbors.
    pub fn closed_neighborhood(&self, a: &VertexSet) -> VertexSet {
        let mut out = a.clone();
        for v in a.iter() {
            for &w in &self.neighbors[v] {
                out.insert(w);
            }
        }
        out
    }

    /// `V(G) - N[A]`, the vertices left undominated by `a`.
    pub fn undominated(&self, a: &VertexSet) -> VertexSet {
        self.closed_neighborhood(a).complement()
    }

    /// `a` is isolating when the vertices outside `N[a]` induce no edges.
    pub fn is_isolating(&self, a: &VertexSet) -> bool {
        self.is_independent(&self.undominated(a))
    }

    /// Isolation with the vertices of `dominated` counted as dominated already.
    pub fn is_isolating_given(&self, a: &VertexSet, dominated: &VertexSet) -> bool {
        let left = self.undominated(a).difference(dominated);
        self.is_independent(&left)
    }

    pub fn is_dominating(&self, a: &VertexSet) -> bool {
        self.closed_neighborhood(a).len() == self.order
    }

    /// Every vertex, members of `a` included, has a neighbor in `a`.
    pub fn is_total_dominating(&self, a: &VertexSet) -> bool {
        (0..self.order).all(|v| self.neighbors[v].iter().any(|&w| a.contains(w)))
    }

    pub fn is_independent(&self, a: &VertexSet) -> bool {
        a.iter().all(|v| self.neighbors[v].iter().all(|&w| !a.contains(w)))
    }

    pub fn is_clique(&self, a: &VertexSet) -> bool {
        let members = a.to_vec();
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Vertices whose closed neighborhoods are pairwise disjoint.
    pub fn is_two_packing(&self, a: &VertexSet) -> bool {
        let members = a.to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if self.has_edge(u, v) || self.neighbors[u].iter().any(|&w| self.has_edge(w, v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Subgraph induced by `a`, keeping the relative order of vertices.
    pub fn induced_subgraph(&self, a: &VertexSet) -> InducedSubgraph {
        let original = a.to_vec();
        let graph = Graph::from_fn(original.len(), |i, j| self.has_edge(original[i], original[j]));
        let graph = match &self.labels {
            Some(labels) => graph
                .with_labels(original.iter().map(|&v| labels[v].clone()).collect())
                .expect("label count matches"),
            None => graph,
        };
        InducedSubgraph { graph, original }
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.order, |u, v| !self.has_edge(u, v))
    }

    /// Graph in which two vertices are adjacent when their distance is 1 or 2.
    pub fn square(&self) -> Graph {
        Graph::from_fn(self.order, |u, v| {
            self.has_edge(u, v) || self.neighbors[u].iter().any(|&w| self.has_edge(w, v))
        })
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.order).any(|v| self.neighbors[v].is_empty())
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.neighbors[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first 2-coloring per component. `Ok(side)` gives side 0 or 1
    /// per vertex (each component's smallest vertex, isolated vertices
    /// included, lands on side 0); `Err(cycle)` returns an odd cycle as a
    /// closed vertex walk without the repeated endpoint.
    pub fn bipartition(&self) -> Result<Vec<u8>, Vec<usize>> {
        let mut side = vec![u8::MAX; self.order];
        let mut parent = vec![usize::MAX; self.order];
        for s in 0..self.order {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.neighbors[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Err(odd_cycle(&parent, u, w));
                    }
                }
            }
        }
        Ok(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }
}

/// Joins the BFS-tree paths from `u` and `w` up to their common ancestor.
fn odd_cycle(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = path_to_root(u);
    let pw = path_to_root(w);
    let mut common = 0;
    while common < pu.len().min(pw.len()) && pu[pu.len() - 1 - common] == pw[pw.len() - 1 - common] {
        common += 1;
    }
    // pu[..=pu.len()-common] ends at the lowest common ancestor.
    let mut cycle: Vec<usize> = pu[..=pu.len() - common].to_vec();
    cycle.extend(pw[..pw.len() - common].iter().rev());
    cycle
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
