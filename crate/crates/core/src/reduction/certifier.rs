use std::collections::HashMap;

use super::{dismantle_unchecked, s_reduce_unchecked, Budget, ReductionError, Refutation, Verdict};
use crate::algebra::homology;
use crate::complex::{face_cap, SimplicialComplex};
use crate::graph::{Graph, GraphDigest};
use crate::itransform::{search, ITrace, IMove, MoveKind, SearchOutcome};

struct MemoEntry {
    graph: Graph,
    verdict: Verdict,
    depth: u32,
}

/// Layered contractibility certifier with a memo shared by all nested link
/// certifications of one call.
pub struct Certifier {
    budget: Budget,
    nodes: u64,
    depth_limited: bool,
    memo: HashMap<GraphDigest, Vec<MemoEntry>>,
}

/// Certifies `G ∈ 𝔍` (Yes), refutes it by reduced homology (No), or gives up.
pub fn certify_contractible(g: &Graph, budget: Budget) -> Result<Verdict, ReductionError> {
    if g.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    Ok(Certifier::new(budget).certify(g))
}

impl Certifier {
    pub fn new(budget: Budget) -> Self {
        Self {
            budget,
            nodes: 0,
            depth_limited: false,
            memo: HashMap::new(),
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    /// Starts a fresh node allowance while keeping the memo.
    pub fn reset_nodes(&mut self) {
        self.nodes = 0;
        self.depth_limited = false;
    }

    pub fn certify(&mut self, g: &Graph) -> Verdict {
        self.certify_at(g, self.budget.max_depth)
    }

    pub(crate) fn out_of_nodes(&self) -> bool {
        self.nodes >= self.budget.max_nodes
    }

    pub(crate) fn tick(&mut self) {
        self.nodes += 1;
    }

    fn lookup(&self, key: &GraphDigest, g: &Graph, depth: u32) -> Option<Verdict> {
        self.memo.get(key)?.iter().find_map(|e| {
            let usable = !e.verdict.is_unknown() || e.depth >= depth;
            (usable && e.graph == *g).then(|| e.verdict.clone())
        })
    }

    fn store(&mut self, key: GraphDigest, g: &Graph, verdict: &Verdict, depth: u32) {
        let entries = self.memo.entry(key).or_default();
        entries.retain(|e| e.graph != *g);
        entries.push(MemoEntry {
            graph: g.clone(),
            verdict: verdict.clone(),
            depth,
        });
    }

    /// Layers 1 and 2 only.
    pub(crate) fn quick(g: &Graph) -> Option<Verdict> {
        if g.is_empty() {
            return None;
        }
        dismantling_certificate(g).or_else(|| s_certificate(g))
    }

    pub(crate) fn certify_at(&mut self, g: &Graph, depth: u32) -> Verdict {
        if g.is_empty() {
            return Verdict::No {
                witness: Refutation::Empty,
            };
        }
        let key = g.canonical_hash();
        if let Some(v) = self.lookup(&key, g, depth) {
            return v;
        }
        self.tick();
        let verdict = self.layers(g, depth);
        self.store(key, g, &verdict, depth);
        verdict
    }

    fn layers(&mut self, g: &Graph, depth: u32) -> Verdict {
        if let Some(v) = Self::quick(g) {
            return v;
        }
        if let Some(v) = homology_refutation(g) {
            return v;
        }
        if depth == 0 {
            self.depth_limited = true;
            return Verdict::unknown(self.nodes, true, "recursion depth exhausted");
        }
        match search(self, g, depth) {
            SearchOutcome::Found(moves) => {
                let end = replay_end(g, &moves);
                Verdict::yes_trace(ITrace {
                    start: g.clone(),
                    moves,
                    end,
                })
            }
            SearchOutcome::Exhausted => Verdict::unknown(
                self.nodes,
                self.depth_limited,
                "move search exhausted without reaching K1",
            ),
            SearchOutcome::OutOfNodes => {
                Verdict::unknown(self.nodes, self.depth_limited, "node budget exhausted")
            }
        }
    }
}

fn replay_end(g: &Graph, moves: &[IMove]) -> Graph {
    let mut h = g.clone();
    for m in moves {
        h = m.kind.apply(&h).expect("search moves apply");
    }
    h
}

/// Yes with a trace of `S-` domination moves when greedy dismantling works.
pub(crate) fn dismantling_certificate(g: &Graph) -> Option<Verdict> {
    let trace = dismantle_unchecked(g);
    trace.reached_k1().then(|| {
        let moves = trace
            .steps
            .iter()
            .map(|&(vertex, w)| IMove::uncertified(MoveKind::SCollapse {
                vertex,
                dominator: Some(w),
            }))
            .collect();
        Verdict::yes_trace(ITrace {
            start: g.clone(),
            moves,
            end: trace.core,
        })
    })
}

fn s_certificate(g: &Graph) -> Option<Verdict> {
    let red = s_reduce_unchecked(g);
    red.reached_k1().then(|| {
        let moves = red
            .deletions
            .iter()
            .map(|&vertex| IMove::uncertified(MoveKind::SCollapse { vertex, dominator: None }))
            .collect();
        Verdict::yes_trace(ITrace {
            start: g.clone(),
            moves,
            end: red.terminal,
        })
    })
}

/// No when the clique complex has nonzero reduced homology. Complexes beyond
/// the face cap are skipped.
pub(crate) fn homology_refutation(g: &Graph) -> Option<Verdict> {
    let k = SimplicialComplex::clique_complex(g);
    let profile = homology(&k, true, face_cap()).ok()?;
    (!profile.is_trivial()).then_some(Verdict::No {
        witness: Refutation::Homology { profile },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let b = Budget::default();
        assert!(certify_contractible(&Graph::empty(1), b).unwrap().is_yes());
        let c5 = certify_contractible(&Graph::cycle(5), b).unwrap();
        match &c5 {
            Verdict::No {
                witness: Refutation::Homology { profile },
            } => assert_eq!(profile.betti(1), 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(certify_contractible(&Graph::wheel(5), b).unwrap().is_yes());
        assert_eq!(certify_contractible(&Graph::new(), b), Err(ReductionError::EmptyGraph));
    }

    #[test]
    fn verdicts_replay() {
        let b = Budget::default();
        for g in [Graph::wheel(6), Graph::complete(4), Graph::cycle(6), Graph::octahedron()] {
            let v = certify_contractible(&g, b).unwrap();
            v.replay_graph(&g, b).unwrap();
        }
    }

    #[test]
    fn memo_reuses_verdicts() {
        let mut c = Certifier::new(Budget::default());
        let first = c.certify(&Graph::cycle(7));
        assert_eq!(c.memo.len(), 1);
        assert_eq!(c.certify(&Graph::cycle(7)), first);
    }
}
