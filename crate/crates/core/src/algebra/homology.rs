use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AlgebraError, IntMatrix};
use crate::complex::{Simplex, SimplicialComplex};

/// Integral homology, one Betti number per dimension `0..=dim K` plus the
/// torsion invariant factors as `(dimension, factor)` pairs.
///
/// Equality ignores trailing zero Betti numbers, so profiles of complexes of
/// different dimension compare as groups.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub reduced: bool,
    pub betti: Vec<usize>,
    pub torsion: Vec<(usize, u64)>,
}

impl HomologyProfile {
    fn significant_betti(&self) -> &[usize] {
        let end = self.betti.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        &self.betti[..end]
    }

    /// Whether every group is zero (meaningful for reduced profiles).
    pub fn is_trivial(&self) -> bool {
        self.significant_betti().is_empty() && self.torsion.is_empty()
    }

    pub fn betti(&self, d: usize) -> usize {
        self.betti.get(d).copied().unwrap_or(0)
    }

    pub fn torsion_in(&self, d: usize) -> Vec<u64> {
        self.torsion.iter().filter(|(e, _)| *e == d).map(|&(_, t)| t).collect()
    }

    /// Alternating Betti sum; for an unreduced profile this is the Euler
    /// characteristic.
    pub fn alternating_sum(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl PartialEq for HomologyProfile {
    fn eq(&self, other: &Self) -> bool {
        self.reduced == other.reduced
            && self.significant_betti() == other.significant_betti()
            && self.torsion == other.torsion
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let betti: Vec<String> = self.betti.iter().map(usize::to_string).collect();
        write!(f, "{}betti=({})", if self.reduced { "reduced " } else { "" }, betti.join(","))?;
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(|(d, n)| format!("H{d}:Z/{n}")).collect();
            write!(f, " torsion=[{}]", t.join(", "))?;
        }
        Ok(())
    }
}

fn boundary_from_faces(lower: &[Simplex], upper: &[Simplex]) -> IntMatrix {
    let index: HashMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = IntMatrix::zeros(lower.len(), upper.len());
    for (j, face) in upper.iter().enumerate() {
        for skip in 0..face.len() {
            let side: Simplex = face
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            m.set(index[&side], j, BigInt::from(sign));
        }
    }
    m
}

/// `∂_d`: rows are the `(d-1)`-faces, columns the `d`-faces, both in sorted
/// order; signs follow the sorted vertex order.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize, cap: usize) -> Result<IntMatrix, AlgebraError> {
    let dim = k.dimension().unwrap_or(0);
    if d == 0 || d > dim || k.is_empty() {
        return Err(AlgebraError::DimensionOutOfRange { d, dim });
    }
    let faces = k.faces(cap)?;
    Ok(boundary_from_faces(&faces[d - 1], &faces[d]))
}

fn to_u64(x: &BigInt) -> Result<u64, AlgebraError> {
    u64::try_from(x).map_err(|_| AlgebraError::TorsionOverflow(x.to_string()))
}

pub fn homology(k: &SimplicialComplex, reduced: bool, cap: usize) -> Result<HomologyProfile, AlgebraError> {
    if k.is_empty() {
        return Err(AlgebraError::EmptyComplex);
    }
    let faces = k.faces(cap)?;
    let top = faces.len() - 1;
    // ranks[d] = rank ∂_d, with ∂_0 = 0 and ∂_{top+1} = 0.
    let mut ranks = vec![0usize; top + 2];
    let mut torsion = Vec::new();
    for d in 1..=top {
        let snf = smith_normal_form(&boundary_from_faces(&faces[d - 1], &faces[d]));
        ranks[d] = snf.rank;
        for t in snf.torsion() {
            torsion.push((d - 1, to_u64(t)?));
        }
    }
    let mut betti: Vec<usize> = (0..=top).map(|d| faces[d].len() - ranks[d] - ranks[d + 1]).collect();
    if reduced {
        betti[0] -= 1;
    }
    Ok(HomologyProfile {
        reduced,
        betti,
        torsion,
    })
}

pub fn euler_characteristic(k: &SimplicialComplex, cap: usize) -> Result<i64, AlgebraError> {
    Ok(k.faces(cap)?
        .iter()
        .enumerate()
        .map(|(d, f)| if d % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_FACE_CAP as CAP;
    use crate::graph::Graph;

    fn profile(betti: &[usize], torsion: &[(usize, u64)]) -> HomologyProfile {
        HomologyProfile {
            reduced: false,
            betti: betti.to_vec(),
            torsion: torsion.to_vec(),
        }
    }

    #[test]
    fn triangle_boundary_matrix() {
        let m = boundary_matrix(&SimplicialComplex::simplex(2), 1, CAP).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(smith_normal_form(&m).rank, 2);
        // columns 01, 02, 12
        assert_eq!(m.get(0, 0), BigInt::from(-1));
        assert_eq!(m.get(1, 0), BigInt::from(1));
        assert!(boundary_matrix(&SimplicialComplex::simplex(2), 3, CAP).is_err());
        assert!(boundary_matrix(&SimplicialComplex::simplex(2), 0, CAP).is_err());
    }

    #[test]
    fn basic_profiles() {
        let hollow = SimplicialComplex::simplex_boundary(2);
        assert_eq!(homology(&hollow, false, CAP).unwrap(), profile(&[1, 1], &[]));
        let oct = SimplicialComplex::clique_complex(&Graph::octahedron());
        assert_eq!(homology(&oct, false, CAP).unwrap(), profile(&[1, 0, 1], &[]));
        let point = SimplicialComplex::simplex(0);
        assert!(homology(&point, true, CAP).unwrap().is_trivial());
        let two = SimplicialComplex::from_facets([[0], [1]]);
        assert_eq!(homology(&two, true, CAP).unwrap().betti, vec![1]);
        assert_eq!(
            homology(&SimplicialComplex::default(), true, CAP),
            Err(AlgebraError::EmptyComplex)
        );
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        assert_eq!(profile(&[1, 0, 0], &[(1, 2)]), profile(&[1], &[(1, 2)]));
        assert_ne!(profile(&[1, 0, 1], &[]), profile(&[1], &[]));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&SimplicialComplex::simplex(0), CAP).unwrap(), 1);
        assert_eq!(euler_characteristic(&SimplicialComplex::simplex_boundary(2), CAP).unwrap(), 0);
        let oct = SimplicialComplex::clique_complex(&Graph::octahedron());
        assert_eq!(euler_characteristic(&oct, CAP).unwrap(), 2);
        assert!(matches!(
            euler_characteristic(&oct, 10),
            Err(AlgebraError::Complex(_))
        ));
    }

    #[test]
    fn json_shape() {
        let p = profile(&[1, 0, 0], &[(1, 2)]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"reduced":false,"betti":[1,0,0],"torsion":[[1,2]]}"#
        );
    }
}
