//! Flagness, barycentric subdivision and the cylinder between a complex and
//! its subdivision.

use std::collections::BTreeMap;

use super::{maximal, ComplexError, Simplex, SimplicialComplex};
use crate::graph::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagCheck {
    pub flag: bool,
    /// A smallest clique of the 1-skeleton that is not a face; every proper
    /// subset of it is a face.
    pub witness: Option<Simplex>,
}

/// `K`, its subdivision, and `Cyl(K)` built on `V(K) ⊔ V(Bd(K))`.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub complex: SimplicialComplex,
    /// Ids of the original vertices (unchanged from `K`).
    pub base: VertexSet,
    /// Ids of the barycentric vertices inside the cylinder.
    pub subdivision: VertexSet,
}

fn combinations(items: &[Vertex], k: usize, out: &mut Vec<Simplex>) {
    fn go(items: &[Vertex], k: usize, start: usize, cur: &mut Simplex, out: &mut Vec<Simplex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::new(), out);
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

impl SimplicialComplex {
    /// Whether every clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> FlagCheck {
        let skeleton = self.one_skeleton();
        let cliques = SimplicialComplex::clique_complex(&skeleton);
        let missing: Vec<&Simplex> = cliques
            .facets()
            .iter()
            .filter(|c| !self.contains_face(c))
            .collect();
        if missing.is_empty() {
            return FlagCheck {
                flag: true,
                witness: None,
            };
        }
        let largest = missing.iter().map(|c| c.len()).max().unwrap_or(0);
        for k in 3..=largest {
            let mut candidates = Vec::new();
            for clique in &missing {
                combinations(clique, k, &mut candidates);
            }
            candidates.sort_unstable();
            if let Some(w) = candidates.into_iter().find(|c| !self.contains_face(c)) {
                return FlagCheck {
                    flag: false,
                    witness: Some(w),
                };
            }
        }
        unreachable!("a clique that is not a face has a minimal non-face of size at least 3")
    }

    /// Order complex of the face poset. Barycentric vertices are numbered by
    /// (face size, face) and labelled `(t1,t2,..)` with the tokens of the face.
    pub fn barycentric(&self, cap: usize) -> Result<SimplicialComplex, ComplexError> {
        let chains: usize = self
            .facets
            .iter()
            .map(|f| (1..=f.len()).product::<usize>())
            .sum();
        if chains > cap {
            return Err(ComplexError::FaceCapExceeded { cap });
        }
        let faces: Vec<Simplex> = self.faces(cap)?.into_iter().flatten().collect();
        let index: BTreeMap<&Simplex, Vertex> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut facets = Vec::with_capacity(chains);
        for facet in &self.facets {
            for order in permutations(facet) {
                let mut chain = Vec::with_capacity(order.len());
                let mut face: Simplex = Vec::with_capacity(order.len());
                for v in order {
                    let at = face.binary_search(&v).unwrap_err();
                    face.insert(at, v);
                    chain.push(index[&face]);
                }
                facets.push(chain);
            }
        }
        let labels = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (i, self.face_token(f)))
            .collect();
        Ok(SimplicialComplex::from_parts(facets, labels))
    }

    pub(crate) fn face_token(&self, face: &[Vertex]) -> String {
        let inner: Vec<String> = face.iter().map(|&v| self.token(v)).collect();
        format!("({})", inner.join(","))
    }

    /// `Cyl(K)`: subsets `σ` of `V(K) ⊔ V(Bd(K))` with `σ ∩ V(K) ∈ K`,
    /// `σ ∩ V(Bd(K))` a chain, and `σ ∩ V(K) ⊆ α` for every face `α` in that
    /// chain.
    pub fn cylinder(&self, cap: usize) -> Result<Cylinder, ComplexError> {
        if self.is_empty() {
            return Err(ComplexError::Empty);
        }
        let bd = self.barycentric(cap)?;
        let offset = self.vertex_set().max().map_or(0, |m| m + 1);
        let faces: Vec<Simplex> = self.faces(cap)?.into_iter().flatten().collect();

        // Any simplex is `A ∪ C` with `A ⊆ min C`; the largest admissible `A`
        // for a chain `C` is its least element itself.
        let chains: Vec<Simplex> = bd.faces(cap)?.into_iter().flatten().collect();
        let mut candidates = Vec::with_capacity(chains.len());
        for chain in chains {
            let least = chain.iter().map(|&i| &faces[i]).min_by_key(|f| f.len()).expect("nonempty chain");
            let mut simplex: Simplex = least.clone();
            simplex.extend(chain.iter().map(|&i| i + offset));
            candidates.push(simplex);
        }
        let mut labels: BTreeMap<Vertex, String> = self.vertex_set().iter().map(|v| (v, self.token(v))).collect();
        labels.extend(bd.labels().iter().map(|(&i, t)| (i + offset, t.clone())));
        let complex = SimplicialComplex::from_parts(maximal(candidates), labels);

        let base = self.vertex_set();
        let subdivision: VertexSet = (0..faces.len()).map(|i| i + offset).collect();
        if complex.induced(&base) != *self || complex.induced(&subdivision) != bd {
            return Err(ComplexError::Invariant(
                "cylinder does not restrict to K and Bd(K)".into(),
            ));
        }
        Ok(Cylinder {
            complex,
            base,
            subdivision,
        })
    }

    pub fn cyl(&self, cap: usize) -> Result<SimplicialComplex, ComplexError> {
        Ok(self.cylinder(cap)?.complex)
    }
}
