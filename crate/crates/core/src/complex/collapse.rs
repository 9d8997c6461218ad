use serde::{Deserialize, Serialize};

use super::{is_sorted_subset, maximal, ComplexError, Simplex, SimplicialComplex};

/// A face contained in exactly one facet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeFace {
    pub face: Simplex,
    pub facet: Simplex,
    /// `dim face == dim facet - 1`.
    pub elementary: bool,
}

/// Result of a greedy collapse: the pairs removed, in order, and what is left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseRun {
    pub steps: Vec<(Simplex, Simplex)>,
    pub result: SimplicialComplex,
}

impl CollapseRun {
    pub fn reached_point(&self) -> bool {
        self.result.facets().len() == 1 && self.result.facets()[0].len() == 1
    }
}

fn proper_nonempty_subsets(facet: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    let k = facet.len();
    let full = (1usize << k) - 1;
    (1..full).map(move |mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| facet[i]).collect())
}

impl SimplicialComplex {
    fn facets_containing(&self, face: &[usize]) -> usize {
        self.facets.iter().filter(|f| is_sorted_subset(face, f)).count()
    }

    /// Every pair `(τ, σ)` with `σ` the only facet containing the proper,
    /// nonempty face `τ`. Ordered by facet, then by face size descending,
    /// then lexicographically.
    pub fn free_faces(&self) -> Vec<FreeFace> {
        let mut out = Vec::new();
        for facet in &self.facets {
            let mut faces: Vec<Simplex> = proper_nonempty_subsets(facet)
                .filter(|face| self.facets_containing(face) == 1)
                .collect();
            faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            out.extend(faces.into_iter().map(|face| FreeFace {
                elementary: face.len() + 1 == facet.len(),
                face,
                facet: facet.clone(),
            }));
        }
        out
    }

    /// Removes every `α` with `τ ⊆ α ⊆ σ`.
    pub fn collapse_step(&self, face: &[usize], facet: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        let not_free = || ComplexError::NotFree {
            face: face.to_vec(),
            facet: facet.to_vec(),
        };
        if face.is_empty()
            || face.len() >= facet.len()
            || !is_sorted_subset(face, facet)
            || self.facets.binary_search_by(|f| f.as_slice().cmp(facet)).is_err()
            || self.facets_containing(face) != 1
        {
            return Err(not_free());
        }
        let survivors = face
            .iter()
            .map(|x| facet.iter().copied().filter(|v| v != x).collect::<Simplex>());
        let facets = self
            .facets
            .iter()
            .filter(|f| f.as_slice() != facet)
            .cloned()
            .chain(survivors);
        Ok(SimplicialComplex::from_parts(maximal(facets), self.labels.clone()))
    }

    /// Inverse of [`collapse_step`](Self::collapse_step): adds every `α` with
    /// `τ ⊆ α ⊆ σ`. Requires that `τ` is not yet a face and that every face of
    /// `σ` missing some vertex of `τ` already is.
    pub fn expand_step(&self, face: &[usize], facet: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        let invalid = |reason: &str| ComplexError::InvalidExpansion {
            face: face.to_vec(),
            facet: facet.to_vec(),
            reason: reason.to_string(),
        };
        if face.is_empty() || face.len() >= facet.len() || !is_sorted_subset(face, facet) {
            return Err(invalid("face must be a proper nonempty subset of the facet"));
        }
        if !facet.windows(2).all(|w| w[0] < w[1]) || !face.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("simplices must be sorted without repeats"));
        }
        if self.contains_face(face) {
            return Err(invalid("face is already in the complex"));
        }
        for x in face {
            let side: Simplex = facet.iter().copied().filter(|v| v != x).collect();
            if !self.contains_face(&side) {
                return Err(invalid("a face of the facet avoiding part of the free face is missing"));
            }
        }
        let facets = self.facets.iter().cloned().chain(std::iter::once(facet.to_vec()));
        Ok(SimplicialComplex::from_parts(maximal(facets), self.labels.clone()))
    }

    /// Repeated elementary collapses, always taking the first elementary free
    /// pair of a top-dimensional facet, until none is left or a single vertex
    /// remains.
    pub fn greedy_collapse(&self) -> CollapseRun {
        let mut current = self.clone();
        let mut steps = Vec::new();
        loop {
            if current.facets.len() == 1 && current.facets[0].len() == 1 {
                break;
            }
            let Some((face, facet)) = current.first_elementary_pair() else {
                break;
            };
            current = current
                .collapse_step(&face, &facet)
                .expect("pair was checked to be free");
            steps.push((face, facet));
        }
        CollapseRun { steps, result: current }
    }

    fn first_elementary_pair(&self) -> Option<(Simplex, Simplex)> {
        let mut by_dim: Vec<&Simplex> = self.facets.iter().filter(|f| f.len() > 1).collect();
        by_dim.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        by_dim.into_iter().find_map(|facet| {
            (0..facet.len()).rev().find_map(|skip| {
                let face: Simplex = facet
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                (self.facets_containing(&face) == 1).then(|| (face, facet.clone()))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn free_faces_of_a_triangle() {
        let k = SimplicialComplex::simplex(2);
        let free = k.free_faces();
        assert_eq!(free.len(), 6);
        assert!(free.contains(&FreeFace {
            face: vec![0, 1],
            facet: vec![0, 1, 2],
            elementary: true
        }));
        assert!(free.iter().any(|f| f.face == vec![0] && !f.elementary));
        assert!(SimplicialComplex::simplex_boundary(2).free_faces().is_empty());
    }

    #[test]
    fn collapse_and_expand_are_inverse() {
        let k = SimplicialComplex::simplex(2);
        let c = k.collapse_step(&[0, 1], &[0, 1, 2]).unwrap();
        assert_eq!(c.facets(), &[vec![0, 2], vec![1, 2]]);
        assert_eq!(c.expand_step(&[0, 1], &[0, 1, 2]).unwrap(), k);

        let c = k.collapse_step(&[0], &[0, 1, 2]).unwrap();
        assert_eq!(c.facets(), &[vec![1, 2]]);
        assert_eq!(c.expand_step(&[0], &[0, 1, 2]).unwrap(), k);
    }

    #[test]
    fn non_free_pairs_are_rejected() {
        let k = SimplicialComplex::simplex_boundary(2);
        assert!(matches!(k.collapse_step(&[0], &[0, 1]), Err(ComplexError::NotFree { .. })));
        let k = SimplicialComplex::simplex(2);
        assert!(k.collapse_step(&[0, 1, 2], &[0, 1, 2]).is_err());
        assert!(k.collapse_step(&[0, 3], &[0, 1, 2]).is_err());
        assert!(k.expand_step(&[0, 1], &[0, 1, 2]).is_err());
        let edge = SimplicialComplex::simplex(1);
        assert!(edge.expand_step(&[1], &[0, 1, 2]).is_err());
        assert_eq!(edge.expand_step(&[2], &[0, 1, 2]).unwrap(), k);
    }

    #[test]
    fn simplices_collapse_to_a_point() {
        for n in 0..=5 {
            let run = SimplicialComplex::simplex(n).greedy_collapse();
            assert!(run.reached_point(), "simplex {n}");
        }
    }

    #[test]
    fn cycles_do_not_collapse() {
        let run = SimplicialComplex::clique_complex(&Graph::cycle(5)).greedy_collapse();
        assert!(run.steps.is_empty());
        assert!(!run.reached_point());
    }
}
