//! Seeded randomized checks of the move calculus: homology invariance of
//! certified moves, acceptance of s-collapses as `I1` moves, and the link
//! identity `link(C(G), v) = C(G[N(v)])`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{euler_characteristic, homology, HomologyProfile};
use crate::complex::{face_cap, SimplicialComplex};
use crate::graph::{Graph, VertexSet};
use crate::itransform::{certify_move, check_precondition, IMove, MoveKind};
use crate::reduction::{s_reduce_unchecked, Budget};

/// Deliberate corruption of move application, used to check that the
/// suites report counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Adds an isolated vertex after every accepted move.
    IsolatedVertex,
    /// Deletes the lowest edge after every accepted move.
    DropEdge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub trials: usize,
    pub max_n: usize,
    pub probabilities: Vec<f64>,
    pub seed: u64,
    pub moves_per_graph: usize,
    /// Link identity is checked on corpus graphs with at most this many
    /// vertices.
    pub link_max_n: usize,
    pub budget: Budget,
    pub face_cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            max_n: 12,
            probabilities: vec![0.3, 0.5, 0.7],
            seed: 7,
            moves_per_graph: 20,
            link_max_n: 10,
            budget: Budget::default(),
            face_cap: face_cap(),
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusGraph {
    pub index: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub graph: Graph,
}

/// Trial `i` draws `n` uniformly from `1..=max_n` and a graph seed from one
/// ChaCha8 stream seeded with `seed`; `p` cycles through the probabilities.
pub fn corpus(config: &SuiteConfig) -> Vec<CorpusGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.trials)
        .map(|index| {
            let n = rng.gen_range(1..=config.max_n.max(1));
            let seed: u64 = rng.gen();
            let p = config.probabilities[index % config.probabilities.len()];
            let graph = Graph::random(n, p, seed).expect("probabilities lie in [0, 1]");
            CorpusGraph {
                index,
                n,
                p,
                seed,
                graph,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    pub graph: Graph,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub graphs: usize,
    pub checks: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            graphs: 0,
            checks: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteReport>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

pub fn run_all(config: &SuiteConfig) -> TheoremReport {
    let corpus = corpus(config);
    TheoremReport {
        config: config.clone(),
        suites: vec![
            move_invariance(config, &corpus),
            s_embedding(config, &corpus),
            link_identity(config, &corpus),
        ],
    }
}

fn profile(g: &Graph, cap: usize) -> Result<(HomologyProfile, i64), String> {
    let k = SimplicialComplex::clique_complex(g);
    let h = homology(&k, false, cap).map_err(|e| e.to_string())?;
    let chi = euler_characteristic(&k, cap).map_err(|e| e.to_string())?;
    Ok((h, chi))
}

fn propose(g: &Graph, rng: &mut ChaCha8Rng) -> Option<MoveKind> {
    let vertices: Vec<_> = g.vertices().collect();
    let &v = vertices.choose(rng)?;
    match rng.gen_range(0..4) {
        0 => Some(MoveKind::DeleteVertex(v)),
        1 => {
            // A random subset of N[v] containing v is a cone, so always certified.
            let mut s = VertexSet::singleton(v);
            s.extend(g.open_neighborhood(v).ok()?.iter().filter(|_| rng.gen_bool(0.5)));
            Some(MoveKind::GlueVertex(s))
        }
        2 => {
            let edges: Vec<_> = g.edges().collect();
            edges.choose(rng).map(|&(a, b)| MoveKind::DeleteEdge(a, b))
        }
        _ => {
            let &w = vertices.choose(rng)?;
            (v != w && !g.has_edge(v, w)).then_some(MoveKind::GlueEdge(v.min(w), v.max(w)))
        }
    }
}

fn corrupt(g: &mut Graph, fault: Option<Fault>) {
    match fault {
        None => {}
        Some(Fault::IsolatedVertex) => {
            g.add_vertex_in_place(&VertexSet::new());
        }
        Some(Fault::DropEdge) => {
            let first = g.edges().next();
            if let Some((u, v)) = first {
                g.unlink(u, v);
            }
        }
    }
}

/// Applies up to `moves_per_graph` certified moves to every corpus graph
/// and compares the clique-complex homology and Euler characteristic with
/// those of the starting graph after each one.
pub fn move_invariance(config: &SuiteConfig, corpus: &[CorpusGraph]) -> SuiteReport {
    let mut report = SuiteReport::new("move-homology-invariance");
    for entry in corpus {
        report.graphs += 1;
        let Ok(start) = profile(&entry.graph, config.face_cap) else {
            continue;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(entry.seed.rotate_left(17));
        let mut g = entry.graph.clone();
        let mut accepted = 0;
        for _ in 0..config.moves_per_graph * 4 {
            if accepted == config.moves_per_graph {
                break;
            }
            let Some(kind) = propose(&g, &mut rng) else { continue };
            let Ok((mut next, m)) = certify_move(&g, kind, config.budget) else {
                continue;
            };
            accepted += 1;
            corrupt(&mut next, config.fault);
            let Ok(after) = profile(&next, config.face_cap) else {
                break;
            };
            report.checks += 1;
            if after != start {
                report.counterexamples.push(Counterexample {
                    index: entry.index,
                    graph: g.clone(),
                    detail: format!(
                        "{} changed homology {} (chi {}) to {} (chi {})",
                        m.kind, start.0, start.1, after.0, after.1
                    ),
                });
                break;
            }
            g = next;
        }
    }
    report
}

/// Every deletion made by greedy s-reduction must pass as a certified `I1`.
pub fn s_embedding(config: &SuiteConfig, corpus: &[CorpusGraph]) -> SuiteReport {
    let mut report = SuiteReport::new("s-collapse-is-i1");
    for entry in corpus {
        report.graphs += 1;
        let mut g = entry.graph.clone();
        for v in s_reduce_unchecked(&g).deletions {
            report.checks += 1;
            let m = IMove::uncertified(MoveKind::DeleteVertex(v));
            match check_precondition(&g, &m, config.budget) {
                Ok(verdict) if verdict.is_yes() => {}
                outcome => {
                    let detail = match outcome {
                        Ok(verdict) => format!("I1 [{v}] rejected with {}", verdict.label()),
                        Err(e) => format!("I1 [{v}] failed: {e}"),
                    };
                    report.counterexamples.push(Counterexample {
                        index: entry.index,
                        graph: g.clone(),
                        detail,
                    });
                    break;
                }
            }
            g = m.kind.apply(&g).expect("s-collapse applies");
        }
    }
    report
}

/// `link(C(G), v) = C(G[N(v)])` for every vertex of every small corpus graph.
pub fn link_identity(config: &SuiteConfig, corpus: &[CorpusGraph]) -> SuiteReport {
    let mut report = SuiteReport::new("link-identity");
    for entry in corpus.iter().filter(|e| e.graph.vertex_count() <= config.link_max_n) {
        report.graphs += 1;
        let g = &entry.graph;
        let k = SimplicialComplex::clique_complex(g);
        for v in g.vertices() {
            report.checks += 1;
            let link = k.link(v).expect("vertex of the complex");
            let around = g.induced(g.open_neighborhood(v).expect("vertex present")).expect("subset");
            let expected = SimplicialComplex::clique_complex(&around);
            if link != expected {
                report.counterexamples.push(Counterexample {
                    index: entry.index,
                    graph: g.clone(),
                    detail: format!("vertex {v}: link {link:?} but C(G[N(v)]) = {expected:?}"),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            trials: 30,
            max_n: 8,
            moves_per_graph: 5,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = corpus(&small());
        assert_eq!(a, corpus(&small()));
        assert_eq!(a.len(), 30);
        assert!(a.iter().all(|e| (1..=8).contains(&e.n) && e.graph.vertex_count() == e.n));
        assert_eq!(a[1].p, 0.5);
    }

    #[test]
    fn small_run_passes() {
        let report = run_all(&small());
        assert!(report.passed(), "{report:?}");
        assert!(report.suites.iter().all(|s| s.checks > 0));
    }

    #[test]
    fn empty_run_passes() {
        let report = run_all(&SuiteConfig {
            trials: 0,
            ..small()
        });
        assert!(report.passed());
        assert!(report.suites.iter().all(|s| s.checks == 0));
    }

    #[test]
    fn injected_fault_is_reported() {
        let report = run_all(&SuiteConfig {
            fault: Some(Fault::IsolatedVertex),
            ..small()
        });
        assert!(!report.suites[0].passed());
    }
}
