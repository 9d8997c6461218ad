use std::fmt;

use sha2::{Digest, Sha256};

use super::Graph;

/// Relabelling-invariant digest of a graph.
///
/// Colors start at vertex degrees and are refined by the sorted multiset of
/// neighbor colors until the partition stops splitting. Every round's full
/// sorted signature list is fed to SHA-256, so two graphs share a digest only
/// if their whole refinement histories agree. Non-isomorphic graphs with equal
/// refinements (regular graphs of equal degree and order, for instance) do
/// collide; callers must confirm structural equality on a hit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphDigest([u8; 32]);

impl GraphDigest {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl fmt::Debug for GraphDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for GraphDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

fn feed(hasher: &mut Sha256, x: usize) {
    hasher.update((x as u64).to_le_bytes());
}

pub(super) fn refinement_digest(g: &Graph) -> GraphDigest {
    let vertices: Vec<usize> = g.vertices().collect();
    let n = vertices.len();
    let mut hasher = Sha256::new();
    feed(&mut hasher, n);
    feed(&mut hasher, g.edge_count());

    let mut color = vec![0usize; g.adjacency.len()];
    for &v in &vertices {
        color[v] = g.degree(v);
    }
    let mut classes = 0;
    for _ in 0..=n {
        let mut signatures: Vec<(usize, Vec<usize>)> = vertices
            .iter()
            .map(|&v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|w| color[w]).collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let by_vertex = signatures.clone();
        signatures.sort();
        feed(&mut hasher, usize::MAX);
        for (own, around) in &signatures {
            feed(&mut hasher, *own);
            feed(&mut hasher, around.len());
            for &c in around {
                feed(&mut hasher, c);
            }
        }
        signatures.dedup();
        for (&v, sig) in vertices.iter().zip(&by_vertex) {
            color[v] = signatures.binary_search(sig).expect("signature present");
        }
        if signatures.len() == classes {
            break;
        }
        classes = signatures.len();
    }
    GraphDigest(hasher.finalize().into())
}

#[cfg(test)]
mod tests {
    use crate::graph::{Graph, VertexSet};

    /// Relabel `g` by `perm` (old id i becomes perm[i]).
    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(g.vertex_count(), &edges).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn identical_and_relabelled_copies_agree() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.canonical_hash(), Graph::cycle(5).canonical_hash());
        for perm in permutations(5) {
            assert_eq!(relabel(&c5, &perm).canonical_hash(), c5.canonical_hash());
        }
    }

    #[test]
    fn cycle_and_path_differ() {
        // Degree sequences differ (P5 has two leaves), so the first round's
        // signature lists already differ.
        assert_ne!(Graph::cycle(5).canonical_hash(), Graph::path(5).canonical_hash());
    }

    #[test]
    fn gaps_do_not_matter() {
        let g = Graph::path(4).without_vertex(0);
        let h = Graph::path(3);
        assert_eq!(g.canonical_hash(), h.canonical_hash());
        let mut k = Graph::path(3);
        k.add_vertex_in_place(&VertexSet::new());
        assert_ne!(k.canonical_hash(), h.canonical_hash());
    }
}
