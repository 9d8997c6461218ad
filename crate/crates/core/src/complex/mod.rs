//! Finite abstract simplicial complexes stored by their facets.
//!
//! Faces are every nonempty subset of a facet and are only enumerated on
//! demand, under a face-count cap. Vertex ids are small integers; optional
//! labels give each vertex an external token (barycentric vertices are
//! labelled by the face they subdivide), and equality compares complexes by
//! token so that independently built complexes can be matched.

mod collapse;
mod construct;
pub mod io;
mod link_moves;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};

pub use collapse::{CollapseRun, FreeFace};
pub use construct::{Cylinder, FlagCheck};
pub use link_moves::{
    certify_complex_contractible, find_link_deletion_sequence, link_vertex_move, ComplexMove, ComplexMoveError,
    LinkSearch, LinkStep,
};

/// Sorted vertex list.
pub type Simplex = Vec<Vertex>;

/// Default upper bound on enumerated faces.
pub const DEFAULT_FACE_CAP: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_FACE_CAP`].
pub const FACE_CAP_ENV: &str = "FLAGFOLD_FACE_CAP";

/// Face cap from `FLAGFOLD_FACE_CAP`, else the default.
pub fn face_cap() -> usize {
    std::env::var(FACE_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_FACE_CAP)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown vertex token `{0}`")]
    UnknownToken(String),
    #[error("({face:?}, {facet:?}) is not a free pair")]
    NotFree { face: Simplex, facet: Simplex },
    #[error("cannot expand ({face:?}, {facet:?}): {reason}")]
    InvalidExpansion {
        face: Simplex,
        facet: Simplex,
        reason: String,
    },
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("face enumeration exceeds the cap of {cap} faces")]
    FaceCapExceeded { cap: usize },
    #[error("the complex is empty")]
    Empty,
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Invariant(String),
}

#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(into = "ComplexRecord", try_from = "ComplexRecord")]
pub struct SimplicialComplex {
    // Each sorted; pairwise non-contained; list sorted lexicographically.
    facets: Vec<Simplex>,
    labels: BTreeMap<Vertex, String>,
}

impl SimplicialComplex {
    /// Builds a complex from arbitrary generating simplices: vertex lists are
    /// sorted and deduplicated, empty lists dropped, non-maximal ones removed.
    pub fn from_facets<I, S>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let candidates = simplices.into_iter().map(|s| {
            let mut s: Simplex = s.into_iter().collect();
            s.sort_unstable();
            s.dedup();
            s
        });
        Self {
            facets: maximal(candidates),
            labels: BTreeMap::new(),
        }
    }

    /// The full `n`-simplex on `0..=n`.
    pub fn simplex(n: usize) -> Self {
        Self::from_facets([0..=n])
    }

    /// Boundary of the `n`-simplex (all `(n-1)`-faces of `0..=n`).
    pub fn simplex_boundary(n: usize) -> Self {
        Self::from_facets((0..=n).map(|skip| (0..=n).filter(move |&v| v != skip)))
    }

    /// Drops labels of vertices that are not in the complex.
    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Self {
        let vertices = self.vertex_set();
        self.labels = labels
            .into_iter()
            .filter(|(v, _)| vertices.contains(*v))
            .collect();
        self
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.facets.iter().flatten().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_set().len()
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn token(&self, v: Vertex) -> String {
        self.labels.get(&v).cloned().unwrap_or_else(|| v.to_string())
    }

    /// Whether `face` (sorted) lies in some facet.
    pub fn contains_face(&self, face: &[Vertex]) -> bool {
        self.facets.iter().any(|f| is_sorted_subset(face, f))
    }

    /// All faces grouped by dimension, each group sorted.
    pub fn faces(&self, cap: usize) -> Result<Vec<Vec<Simplex>>, ComplexError> {
        let Some(dim) = self.dimension() else {
            return Ok(Vec::new());
        };
        let mut seen: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim + 1];
        let mut total = 0usize;
        for facet in &self.facets {
            let k = facet.len();
            if k >= usize::BITS as usize - 1 {
                return Err(ComplexError::FaceCapExceeded { cap });
            }
            for mask in 1usize..(1 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| facet[i]).collect();
                let d = face.len() - 1;
                if seen[d].insert(face) {
                    total += 1;
                    if total > cap {
                        return Err(ComplexError::FaceCapExceeded { cap });
                    }
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|set| {
                let mut v: Vec<Simplex> = set.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect())
    }

    /// Face counts `f_0, f_1, ..`.
    pub fn f_vector(&self, cap: usize) -> Result<Vec<usize>, ComplexError> {
        Ok(self.faces(cap)?.iter().map(Vec::len).collect())
    }

    /// Subcomplex induced on `vertices`.
    pub fn induced(&self, vertices: &VertexSet) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| vertices.contains(v)).collect::<Simplex>());
        Self {
            facets: maximal(facets.filter(|f| !f.is_empty())),
            labels: restrict_labels(&self.labels, vertices),
        }
    }

    /// Whether every facet of `other` is a face of `self`, matching by token.
    pub fn contains_subcomplex(&self, other: &SimplicialComplex) -> bool {
        let ids = self.token_ids();
        other.facets.iter().all(|facet| {
            let mapped: Option<Simplex> = facet.iter().map(|&v| ids.get(&other.token(v)).copied()).collect();
            mapped.is_some_and(|mut f| {
                f.sort_unstable();
                self.contains_face(&f)
            })
        })
    }

    pub fn token_ids(&self) -> BTreeMap<String, Vertex> {
        self.vertex_set().iter().map(|v| (self.token(v), v)).collect()
    }

    /// Facets as sorted token lists; the basis of equality.
    pub fn token_facets(&self) -> BTreeSet<Vec<String>> {
        self.facets
            .iter()
            .map(|f| {
                let mut t: Vec<String> = f.iter().map(|&v| self.token(v)).collect();
                t.sort();
                t
            })
            .collect()
    }

    pub(crate) fn from_parts(facets: Vec<Simplex>, labels: BTreeMap<Vertex, String>) -> Self {
        let mut k = Self::from_facets(facets);
        let vertices = k.vertex_set();
        k.labels = restrict_labels(&labels, &vertices);
        k
    }

    /// `C(G)`: facets are the maximal cliques of `g` (Bron–Kerbosch with
    /// pivoting). Graph labels carry over.
    pub fn clique_complex(g: &Graph) -> SimplicialComplex {
        let mut cliques = Vec::new();
        if g.is_empty() {
            return Self::default();
        }
        bron_kerbosch(g, &mut Vec::new(), g.vertex_set().clone(), VertexSet::new(), &mut cliques);
        let mut facets: Vec<Simplex> = cliques;
        facets.sort_unstable();
        Self {
            facets,
            labels: g.labels().clone(),
        }
    }

    /// Graph on the vertices of the complex whose edges are the 1-faces.
    pub fn one_skeleton(&self) -> Graph {
        let vertices = self.vertex_set();
        let mut g = Graph::on_vertex_set(&vertices);
        for f in &self.facets {
            for (i, &u) in f.iter().enumerate() {
                for &v in &f[i + 1..] {
                    g.link(u, v);
                }
            }
        }
        g.with_labels(self.labels.clone())
    }

    /// `link(v) = { F : v ∉ F, F ∪ {v} ∈ K }`.
    pub fn link(&self, v: Vertex) -> Result<SimplicialComplex, ComplexError> {
        if !self.vertex_set().contains(v) {
            return Err(ComplexError::UnknownVertex(v));
        }
        let facets = self
            .facets
            .iter()
            .filter(|f| f.binary_search(&v).is_ok())
            .map(|f| f.iter().copied().filter(|&w| w != v).collect::<Simplex>())
            .filter(|f| !f.is_empty());
        let facets = maximal(facets);
        let vertices: VertexSet = facets.iter().flatten().copied().collect();
        Ok(Self {
            facets,
            labels: restrict_labels(&self.labels, &vertices),
        })
    }

    /// Removes `v` together with every face containing it.
    pub fn delete_vertex(&self, v: Vertex) -> SimplicialComplex {
        let mut keep = self.vertex_set();
        keep.remove(v);
        self.induced(&keep)
    }
}

fn restrict_labels(labels: &BTreeMap<Vertex, String>, vertices: &VertexSet) -> BTreeMap<Vertex, String> {
    labels
        .iter()
        .filter(|(v, _)| vertices.contains(**v))
        .map(|(v, s)| (*v, s.clone()))
        .collect()
}

fn bron_kerbosch(
    g: &Graph,
    clique: &mut Vec<Vertex>,
    mut candidates: VertexSet,
    mut excluded: VertexSet,
    out: &mut Vec<Simplex>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            let mut c = clique.clone();
            c.sort_unstable();
            out.push(c);
        }
        return;
    }
    let pivot = candidates
        .union(&excluded)
        .iter()
        .max_by_key(|&u| (candidates.intersection(g.neighbors(u)).len(), std::cmp::Reverse(u)))
        .expect("candidates nonempty");
    for v in candidates.difference(g.neighbors(pivot)).to_vec() {
        let around = g.neighbors(v);
        clique.push(v);
        bron_kerbosch(g, clique, candidates.intersection(around), excluded.intersection(around), out);
        clique.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
}

pub(crate) fn is_sorted_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Keeps only inclusion-maximal simplices, deduplicated and sorted.
pub(crate) fn maximal<I: IntoIterator<Item = Simplex>>(simplices: I) -> Vec<Simplex> {
    let mut all: Vec<Simplex> = simplices.into_iter().filter(|s| !s.is_empty()).collect();
    all.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut kept: Vec<Simplex> = Vec::with_capacity(all.len());
    for s in all {
        if !kept.iter().any(|k| k.len() > s.len() && is_sorted_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets.len() == other.facets.len() && self.token_facets() == other.token_facets()
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.facets.iter().map(|s| s.iter().map(|&v| self.token(v)).collect::<Vec<_>>()))
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRecord {
    facets: Vec<Simplex>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<Vertex, String>,
}

impl From<SimplicialComplex> for ComplexRecord {
    fn from(k: SimplicialComplex) -> Self {
        ComplexRecord {
            facets: k.facets,
            labels: k.labels,
        }
    }
}

impl TryFrom<ComplexRecord> for SimplicialComplex {
    type Error = ComplexError;

    fn try_from(r: ComplexRecord) -> Result<Self, ComplexError> {
        let k = SimplicialComplex::from_facets(r.facets);
        let vertices = k.vertex_set();
        if let Some(&v) = r.labels.keys().find(|&&v| !vertices.contains(v)) {
            return Err(ComplexError::UnknownVertex(v));
        }
        Ok(k.with_labels(r.labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn from_facets_normalizes() {
        let k = SimplicialComplex::from_facets(vec![vec![2, 1], vec![1, 2, 3], vec![4], vec![]]);
        assert_eq!(k.facets(), &[vec![1, 2, 3], vec![4]]);
        assert_eq!(k.dimension(), Some(2));
        assert_eq!(k.f_vector(100).unwrap(), vec![4, 3, 1]);
    }

    #[test]
    fn clique_complexes() {
        assert_eq!(SimplicialComplex::clique_complex(&Graph::complete(3)).facets(), &[vec![0, 1, 2]]);
        assert_eq!(SimplicialComplex::clique_complex(&Graph::cycle(4)).facets().len(), 4);
        let oct = SimplicialComplex::clique_complex(&Graph::octahedron());
        assert_eq!(oct.facets().len(), 8);
        assert!(oct.facets().iter().all(|f| f.len() == 3));
        assert!(SimplicialComplex::clique_complex(&Graph::new()).is_empty());
        assert_eq!(SimplicialComplex::clique_complex(&Graph::empty(2)).facets(), &[vec![0], vec![1]]);
    }

    #[test]
    fn skeletons() {
        assert_eq!(SimplicialComplex::simplex(2).one_skeleton(), Graph::complete(3));
        assert_eq!(SimplicialComplex::simplex_boundary(2).one_skeleton(), Graph::complete(3));
        assert_eq!(SimplicialComplex::simplex(0).one_skeleton(), Graph::complete(1));
    }

    #[test]
    fn links() {
        let l = SimplicialComplex::simplex(2).link(0).unwrap();
        assert_eq!(l.facets(), &[vec![1, 2]]);
        let l = SimplicialComplex::simplex_boundary(2).link(0).unwrap();
        assert_eq!(l.facets(), &[vec![1], vec![2]]);
        let oct = SimplicialComplex::clique_complex(&Graph::octahedron());
        for v in 0..6 {
            let l = oct.link(v).unwrap();
            assert_eq!(l.facets().len(), 4);
            assert_eq!(l.one_skeleton().edge_count(), 4);
            assert!(l.facets().iter().all(|f| f.len() == 2));
        }
        assert_eq!(
            SimplicialComplex::simplex(1).link(9),
            Err(ComplexError::UnknownVertex(9))
        );
        assert!(SimplicialComplex::from_facets([[0]]).link(0).unwrap().is_empty());
    }

    #[test]
    fn equality_is_by_token() {
        let g = Graph::cycle(5);
        let sub = g.induced(&[1usize, 2, 3].into_iter().collect::<VertexSet>()).unwrap();
        let a = SimplicialComplex::clique_complex(&sub);
        let b = SimplicialComplex::from_facets([[1, 2], [2, 3]]);
        assert_eq!(a, b);
        assert_ne!(a, SimplicialComplex::from_facets([[0, 1], [1, 2]]));
    }

    #[test]
    fn face_cap_is_enforced() {
        let k = SimplicialComplex::simplex(4);
        assert_eq!(k.faces(31).unwrap().iter().map(Vec::len).sum::<usize>(), 31);
        assert_eq!(k.faces(30), Err(ComplexError::FaceCapExceeded { cap: 30 }));
    }

    #[test]
    fn json_round_trip() {
        let k = SimplicialComplex::simplex_boundary(3);
        let text = serde_json::to_string(&k).unwrap();
        let back: SimplicialComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k);
    }
}
