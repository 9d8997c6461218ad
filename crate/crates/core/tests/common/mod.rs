//! Independent oracles for the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap};

use flagfold::algebra::HomologyProfile;
use flagfold::complex::SimplicialComplex;
use flagfold::graph::Graph;

/// A prime below 2^31, so products fit in u64.
pub const BIG_PRIME: u64 = 2_147_483_647;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of a dense integer matrix reduced mod `p`.
pub fn rank_mod(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in c..cols {
                    m[r][j] = (m[r][j] + p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Faces by dimension, enumerated from the facets.
pub fn faces(k: &SimplicialComplex) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for f in k.facets() {
        for mask in 1u32..(1 << f.len()) {
            let s: Vec<usize> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s);
        }
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Dense boundary `C_d -> C_{d-1}`.
pub fn boundary(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let index: HashMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let mut side = s.clone();
            side.remove(i);
            m[index[&side]][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Betti numbers over Q (via a large prime) and, for each small prime `q`,
/// the number of torsion factors of `H_d` divisible by `q`, as
/// `rank_Q ∂_{d+1} - rank_q ∂_{d+1}`.
pub struct OracleHomology {
    pub betti: Vec<usize>,
    pub torsion_counts: Vec<(usize, u64, usize)>,
}

pub const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

pub fn oracle_homology(k: &SimplicialComplex) -> OracleHomology {
    let f = faces(k);
    let top = f.len() - 1;
    let mut rank_q = vec![0usize; top + 2];
    let mut rank_small: Vec<Vec<usize>> = vec![vec![0; top + 2]; SMALL_PRIMES.len()];
    for d in 1..=top {
        let m = boundary(&f[d - 1], &f[d]);
        rank_q[d] = rank_mod(&m, BIG_PRIME);
        for (i, &p) in SMALL_PRIMES.iter().enumerate() {
            rank_small[i][d] = rank_mod(&m, p);
        }
    }
    let betti = (0..=top).map(|d| f[d].len() - rank_q[d] - rank_q[d + 1]).collect();
    let mut torsion_counts = Vec::new();
    for d in 0..top {
        for (i, &p) in SMALL_PRIMES.iter().enumerate() {
            torsion_counts.push((d, p, rank_q[d + 1] - rank_small[i][d + 1]));
        }
    }
    OracleHomology { betti, torsion_counts }
}

/// Checks an exact profile against the oracle (torsion primes up to 7).
pub fn agrees_with_oracle(k: &SimplicialComplex, h: &HomologyProfile) -> Result<(), String> {
    assert!(!h.reduced);
    let o = oracle_homology(k);
    let mut betti = h.betti.clone();
    betti.resize(o.betti.len().max(betti.len()), 0);
    let mut ob = o.betti.clone();
    ob.resize(betti.len(), 0);
    if betti != ob {
        return Err(format!("betti {:?} vs oracle {:?}", h.betti, o.betti));
    }
    for (d, p, count) in o.torsion_counts {
        let got = h.torsion_in(d).iter().filter(|&&t| t % p == 0).count();
        if got != count {
            return Err(format!("H{d}: {got} factors divisible by {p}, oracle says {count}"));
        }
    }
    Ok(())
}

/// Graph on `n` vertices from an upper-triangle bit mask.
pub fn graph_from_mask(n: usize, adj: &[u32]) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

fn code(n: usize, adj: &[u32], perm: &[usize]) -> u64 {
    let mut c = 0u64;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if adj[perm[u]] >> perm[v] & 1 == 1 {
                c |= 1 << bit;
            }
            bit += 1;
        }
    }
    c
}

/// One adjacency list per isomorphism class of graphs on `n` vertices,
/// built by extending each class on `n - 1` vertices with every possible
/// neighborhood of a new vertex and deduplicating by the least edge code
/// over all vertex permutations.
pub fn nonisomorphic_graphs(max_n: usize) -> Vec<Vec<Vec<u32>>> {
    let mut levels: Vec<Vec<Vec<u32>>> = vec![vec![vec![0]]];
    for n in 2..=max_n {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &levels[n - 2] {
            for mask in 0u32..(1 << (n - 1)) {
                let mut adj = g.clone();
                adj.push(mask);
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        adj[u] |= 1 << (n - 1);
                    }
                }
                let canon = perms.iter().map(|p| code(n, &adj, p)).min().unwrap();
                if seen.insert(canon) {
                    next.push(adj);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Whether some order of dominated-vertex removals reaches one vertex,
/// memoised on the remaining vertex subset.
pub fn exhaustively_dismantlable(n: usize, adj: &[u32]) -> bool {
    fn dominated(adj: &[u32], alive: u32, v: usize) -> bool {
        let nv = (adj[v] | 1 << v) & alive;
        (0..adj.len()).any(|w| w != v && alive >> w & 1 == 1 && adj[v] >> w & 1 == 1 && {
            let nw = (adj[w] | 1 << w) & alive;
            nv & !nw == 0
        })
    }
    fn go(adj: &[u32], alive: u32, memo: &mut HashMap<u32, bool>) -> bool {
        if alive.count_ones() == 1 {
            return true;
        }
        if let Some(&r) = memo.get(&alive) {
            return r;
        }
        let r = (0..adj.len())
            .filter(|&v| alive >> v & 1 == 1 && dominated(adj, alive, v))
            .any(|v| go(adj, alive & !(1 << v), memo));
        memo.insert(alive, r);
        r
    }
    go(adj, (1u32 << n) - 1, &mut HashMap::new())
}
