//! Edge-path presentations of the fundamental group and a budgeted Tietze
//! simplifier.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AlgebraError, IntMatrix};
use crate::complex::SimplicialComplex;
use crate::graph::Vertex;

/// A generator to the power `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            ..self
        }
    }
}

pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    /// Generator names; for complexes, the non-tree edges `(u, v)`, `u < v`.
    pub generators: Vec<(Vertex, Vertex)>,
    pub relators: Vec<Word>,
}

/// Abelianization `Z^rank ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    Unknown,
}

/// Budget for [`try_trivialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TietzeBudget {
    pub max_steps: usize,
    pub max_relator_length: usize,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        Self {
            max_steps: 10_000,
            max_relator_length: 10_000,
        }
    }
}

impl Presentation {
    pub fn abelianization(&self) -> Result<AbelianGroup, AlgebraError> {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, word) in self.relators.iter().enumerate() {
            let mut sums: BTreeMap<usize, i64> = BTreeMap::new();
            for l in word {
                *sums.entry(l.generator).or_default() += if l.inverse { -1 } else { 1 };
            }
            for (g, s) in sums {
                m.set(i, g, BigInt::from(s));
            }
        }
        let snf = smith_normal_form(&m);
        let torsion = snf
            .torsion()
            .map(|t| u64::try_from(t).map_err(|_| AlgebraError::TorsionOverflow(t.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(AbelianGroup {
            rank: self.generators.len() - snf.rank,
            torsion,
        })
    }
}

/// Spanning tree by breadth-first search from the least vertex (neighbors in
/// ascending order); generators are the remaining edges, relators the
/// boundary words `[ab][bc][ac]^-1` of the 2-faces with tree edges erased.
/// Relators that erase completely are dropped.
pub fn pi1_presentation(k: &SimplicialComplex, cap: usize) -> Result<Presentation, AlgebraError> {
    if k.is_empty() {
        return Err(AlgebraError::EmptyComplex);
    }
    let skeleton = k.one_skeleton();
    let root = skeleton.vertices().next().expect("nonempty");
    let mut tree = std::collections::BTreeSet::new();
    let mut seen = std::collections::BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for w in skeleton.open_neighborhood(u)? {
            if seen.insert(w) {
                tree.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }
    if seen.len() != skeleton.vertex_count() {
        return Err(AlgebraError::Disconnected);
    }
    let generators: Vec<(Vertex, Vertex)> = skeleton.edges().filter(|e| !tree.contains(e)).collect();
    let index: BTreeMap<(Vertex, Vertex), usize> =
        generators.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let faces = k.faces(cap)?;
    let mut relators = Vec::new();
    if let Some(triangles) = faces.get(2) {
        for t in triangles {
            let (a, b, c) = (t[0], t[1], t[2]);
            let word: Word = [((a, b), false), ((b, c), false), ((a, c), true)]
                .into_iter()
                .filter_map(|(e, inverse)| index.get(&e).map(|&generator| Letter { generator, inverse }))
                .collect();
            if !word.is_empty() {
                relators.push(word);
            }
        }
    }
    Ok(Presentation { generators, relators })
}

fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == out[end - 1].inv() {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

fn invert(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inv()).collect()
}

/// Least cyclic rotation of the word or of its inverse; equal keys mean the
/// relators generate the same normal subgroup.
fn relator_key(word: &[Letter]) -> Word {
    let mut best: Option<Word> = None;
    for w in [word.to_vec(), invert(word)] {
        for r in 0..w.len().max(1) {
            let mut rotated = w[r..].to_vec();
            rotated.extend_from_slice(&w[..r]);
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

/// Tietze simplification: free and cyclic reduction, removal of duplicate
/// relators, and elimination of a generator occurring exactly once in some
/// relator. `Trivial` only when no generator survives.
pub fn try_trivialize(p: &Presentation, budget: TietzeBudget) -> Triviality {
    let mut alive: Vec<bool> = vec![true; p.generators.len()];
    let mut relators: Vec<Word> = p.relators.clone();
    for _ in 0..budget.max_steps {
        let mut keys = std::collections::BTreeSet::new();
        relators = relators
            .iter()
            .map(|r| free_reduce(r))
            .filter(|r| !r.is_empty() && keys.insert(relator_key(r)))
            .collect();
        if !alive.iter().any(|&a| a) {
            return Triviality::Trivial;
        }
        // Pick the shortest relator holding a generator exactly once.
        let mut choice: Option<(usize, usize, usize)> = None;
        for (ri, r) in relators.iter().enumerate() {
            if choice.is_some_and(|(_, _, len)| len <= r.len()) {
                continue;
            }
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for l in r {
                *counts.entry(l.generator).or_default() += 1;
            }
            if let Some((&g, _)) = counts.iter().find(|(_, &c)| c == 1) {
                choice = Some((ri, g, r.len()));
            }
        }
        let Some((ri, g, _)) = choice else {
            return Triviality::Unknown;
        };
        let r = relators.remove(ri);
        let at = r.iter().position(|l| l.generator == g).expect("generator occurs");
        // r = u x v with x = g^±1, so x = u^-1 v^-1 and g = x or x^-1.
        let x_value: Word = invert(&r[..at]).into_iter().chain(invert(&r[at + 1..])).collect();
        let g_value = if r[at].inverse { invert(&x_value) } else { x_value };
        let g_inverse = invert(&g_value);
        for rel in relators.iter_mut() {
            let mut out = Vec::with_capacity(rel.len());
            for &l in rel.iter() {
                if l.generator == g {
                    out.extend_from_slice(if l.inverse { &g_inverse } else { &g_value });
                } else {
                    out.push(l);
                }
            }
            if out.len() > budget.max_relator_length {
                return Triviality::Unknown;
            }
            *rel = out;
        }
        alive[g] = false;
    }
    Triviality::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_FACE_CAP as CAP;

    fn a() -> Letter {
        Letter::new(0)
    }

    #[test]
    fn simplex_presentation_is_trivial() {
        let p = pi1_presentation(&SimplicialComplex::simplex(2), CAP).unwrap();
        assert_eq!(p.generators, vec![(1, 2)]);
        assert_eq!(p.relators, vec![vec![a()]]);
        assert_eq!(try_trivialize(&p, TietzeBudget::default()), Triviality::Trivial);
    }

    #[test]
    fn circle_presentation_is_free() {
        let p = pi1_presentation(&SimplicialComplex::simplex_boundary(2), CAP).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert!(p.relators.is_empty());
        assert_eq!(try_trivialize(&p, TietzeBudget::default()), Triviality::Unknown);
        assert_eq!(p.abelianization().unwrap(), AbelianGroup { rank: 1, torsion: vec![] });
    }

    #[test]
    fn hand_presentations() {
        let trivial = Presentation {
            generators: vec![(0, 1)],
            relators: vec![vec![a()]],
        };
        assert_eq!(try_trivialize(&trivial, TietzeBudget::default()), Triviality::Trivial);
        let z = Presentation {
            generators: vec![(0, 1)],
            relators: vec![],
        };
        assert_eq!(try_trivialize(&z, TietzeBudget::default()), Triviality::Unknown);
        let z2 = Presentation {
            generators: vec![(0, 1)],
            relators: vec![vec![a(), a()]],
        };
        assert_eq!(try_trivialize(&z2, TietzeBudget::default()), Triviality::Unknown);
        assert_eq!(z2.abelianization().unwrap(), AbelianGroup { rank: 0, torsion: vec![2] });
        // <a, b | ab, b> is trivial after two eliminations.
        let b = Letter::new(1);
        let two = Presentation {
            generators: vec![(0, 1), (1, 2)],
            relators: vec![vec![a(), b], vec![b]],
        };
        assert_eq!(try_trivialize(&two, TietzeBudget::default()), Triviality::Trivial);
    }

    #[test]
    fn disconnected_is_an_error() {
        let k = SimplicialComplex::from_facets([[0], [1]]);
        assert_eq!(pi1_presentation(&k, CAP), Err(AlgebraError::Disconnected));
    }

    #[test]
    fn reduction_helpers() {
        assert!(free_reduce(&[a(), a().inv()]).is_empty());
        let b = Letter::new(1);
        assert_eq!(free_reduce(&[a(), b, a().inv()]), vec![b]);
        assert_eq!(relator_key(&[b, a()]), relator_key(&[a().inv(), b.inv()]));
    }
}
