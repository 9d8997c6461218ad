//! Finite simple graphs on small integer vertex ids.
//!
//! Vertex ids need not stay contiguous: deleting a vertex leaves a gap, and
//! adding one always allocates `max id + 1`. Optional labels carry external
//! names (for example the original id of a vertex in an induced subgraph)
//! and are ignored by equality.

mod bitset;
mod hash;
pub mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bitset::VertexSet;
pub use hash::GraphDigest;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("expected two distinct vertices, got {0} twice")]
    SameVertex(Vertex),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("{0}-{1} is already an edge")]
    AlreadyAnEdge(Vertex, Vertex),
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
}

/// An elementary edit of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphEdit {
    DeleteVertex(Vertex),
    /// Add a fresh vertex (id `max + 1`) adjacent exactly to the given set.
    AddVertex(VertexSet),
    DeleteEdge(Vertex, Vertex),
    AddEdge(Vertex, Vertex),
}

#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(into = "GraphRecord", try_from = "GraphRecord")]
pub struct Graph {
    vertices: VertexSet,
    // Indexed by id; `adjacency.len() == max id + 1`, empty for absent ids.
    adjacency: Vec<VertexSet>,
    labels: BTreeMap<Vertex, String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
        self.adjacency.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ vertices: {:?}, edges: [", self.vertices)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "] }}")
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on `0..n`.
    pub fn empty(n: usize) -> Self {
        Self {
            vertices: VertexSet::range(n),
            adjacency: vec![VertexSet::new(); n],
            labels: BTreeMap::new(),
        }
    }

    /// Edgeless graph on an arbitrary id set.
    pub(crate) fn on_vertex_set(vertices: &VertexSet) -> Self {
        Self {
            vertices: vertices.clone(),
            adjacency: vec![VertexSet::new(); vertices.max().map_or(0, |m| m + 1)],
            labels: BTreeMap::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.link(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n {
            g.link(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = Self::path(n);
        g.link(n - 1, 0);
        g
    }

    /// Cycle on `0..rim` plus apex `rim` adjacent to every rim vertex.
    pub fn wheel(rim: usize) -> Self {
        let mut g = Self::cycle(rim);
        let apex = g.add_vertex_in_place(&VertexSet::range(rim));
        debug_assert_eq!(apex, rim);
        g
    }

    /// `K_{2,2,2}`: antipodal pairs `(0,1)`, `(2,3)`, `(4,5)` are the non-edges.
    pub fn octahedron() -> Self {
        let mut g = Self::complete(6);
        for pair in [(0, 1), (2, 3), (4, 5)] {
            g.unlink(pair.0, pair.1);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_k1(&self) -> bool {
        self.vertex_count() == 1
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency.get(u).is_some_and(|n| n.contains(v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency.get(v).map_or(0, VertexSet::len)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices
            .iter()
            .flat_map(move |u| self.adjacency[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Largest id in use, if any.
    pub fn max_vertex(&self) -> Option<Vertex> {
        self.vertices.max()
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Self {
        self.labels = labels;
        self
    }

    /// External name of `v`: its label, or the id itself.
    pub fn token(&self, v: Vertex) -> String {
        self.labels.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    fn require(&self, v: Vertex) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(())
    }

    /// `N(v)`.
    pub fn open_neighborhood(&self, v: Vertex) -> Result<&VertexSet, GraphError> {
        self.require(v)?;
        Ok(&self.adjacency[v])
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        let mut n = self.open_neighborhood(v)?.clone();
        n.insert(v);
        Ok(n)
    }

    /// `N(v, w) = N(v) ∩ N(w)`; `v` and `w` need not be adjacent.
    pub fn common_neighborhood(&self, v: Vertex, w: Vertex) -> Result<VertexSet, GraphError> {
        self.check_pair(v, w)?;
        Ok(self.adjacency[v].intersection(&self.adjacency[w]))
    }

    pub(crate) fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adjacency[v]
    }

    /// Subgraph induced by `subset`, re-indexed densely in ascending id order.
    /// Each new vertex is labelled with the token of the vertex it came from.
    pub fn induced(&self, subset: &VertexSet) -> Result<Graph, GraphError> {
        if let Some(v) = subset.difference(&self.vertices).min() {
            return Err(GraphError::UnknownVertex(v));
        }
        let old: Vec<Vertex> = subset.to_vec();
        let mut position = vec![usize::MAX; self.adjacency.len()];
        for (i, &v) in old.iter().enumerate() {
            position[v] = i;
        }
        let mut g = Graph::empty(old.len());
        for (i, &v) in old.iter().enumerate() {
            g.adjacency[i] = self.adjacency[v]
                .intersection(subset)
                .iter()
                .map(|w| position[w])
                .collect();
            g.labels.insert(i, self.token(v));
        }
        Ok(g)
    }

    /// Pure edit: returns the edited graph.
    pub fn apply_edit(&self, edit: &GraphEdit) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.edit_in_place(edit)?;
        Ok(g)
    }

    pub(crate) fn edit_in_place(&mut self, edit: &GraphEdit) -> Result<(), GraphError> {
        match edit {
            GraphEdit::DeleteVertex(v) => {
                self.require(*v)?;
                self.remove_vertex_in_place(*v);
            }
            GraphEdit::AddVertex(neighborhood) => {
                if let Some(v) = neighborhood.difference(&self.vertices).min() {
                    return Err(GraphError::UnknownVertex(v));
                }
                self.add_vertex_in_place(neighborhood);
            }
            GraphEdit::DeleteEdge(u, v) => {
                self.check_pair(*u, *v)?;
                if !self.has_edge(*u, *v) {
                    return Err(GraphError::NotAnEdge(*u, *v));
                }
                self.unlink(*u, *v);
            }
            GraphEdit::AddEdge(u, v) => {
                self.check_pair(*u, *v)?;
                if self.has_edge(*u, *v) {
                    return Err(GraphError::AlreadyAnEdge(*u, *v));
                }
                self.link(*u, *v);
            }
        }
        Ok(())
    }

    /// `G - v` without precondition checks beyond membership.
    pub(crate) fn without_vertex(&self, v: Vertex) -> Graph {
        let mut g = self.clone();
        g.remove_vertex_in_place(v);
        g
    }

    fn remove_vertex_in_place(&mut self, v: Vertex) {
        let neighbors = std::mem::take(&mut self.adjacency[v]);
        for w in &neighbors {
            self.adjacency[w].remove(v);
        }
        self.vertices.remove(v);
        self.labels.remove(&v);
        let len = self.vertices.max().map_or(0, |m| m + 1);
        self.adjacency.truncate(len);
    }

    pub(crate) fn add_vertex_in_place(&mut self, neighborhood: &VertexSet) -> Vertex {
        let v = self.vertices.max().map_or(0, |m| m + 1);
        self.vertices.insert(v);
        self.adjacency.resize(v + 1, VertexSet::new());
        for w in neighborhood {
            self.link(v, w);
        }
        v
    }

    pub(crate) fn link(&mut self, u: Vertex, v: Vertex) {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub(crate) fn unlink(&mut self, u: Vertex, v: Vertex) {
        self.adjacency[u].remove(v);
        self.adjacency[v].remove(u);
    }

    /// Refinement-based digest; see [`GraphDigest`].
    pub fn canonical_hash(&self) -> GraphDigest {
        hash::refinement_digest(self)
    }

    /// Erdős–Rényi `G(n, p)`.
    ///
    /// The stream is ChaCha8 seeded with `seed` via `seed_from_u64`; pairs
    /// `(u, v)`, `u < v`, are visited lexicographically and each draws one
    /// `f64` in `[0, 1)`, becoming an edge when the draw is below `p`.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidProbability(p));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    g.link(u, v);
                }
            }
        }
        Ok(g)
    }
}

/// JSON shape of a graph: explicit vertex ids, sorted edges, optional labels.
#[derive(Serialize, Deserialize)]
struct GraphRecord {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<Vertex, String>,
}

impl From<Graph> for GraphRecord {
    fn from(g: Graph) -> Self {
        GraphRecord {
            vertices: g.vertices.to_vec(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels,
        }
    }
}

impl TryFrom<GraphRecord> for Graph {
    type Error = GraphError;

    fn try_from(r: GraphRecord) -> Result<Self, GraphError> {
        let vertices: VertexSet = r.vertices.iter().copied().collect();
        let len = vertices.max().map_or(0, |m| m + 1);
        let mut g = Graph {
            vertices,
            adjacency: vec![VertexSet::new(); len],
            labels: BTreeMap::new(),
        };
        for [u, v] in r.edges {
            g.check_pair(u, v)?;
            g.link(u, v);
        }
        if let Some(&v) = r.labels.keys().find(|&&v| !g.contains(v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        g.labels = r.labels;
        Ok(g)
    }
}
