use serde::{Deserialize, Serialize};

use crate::algebra::{homology, HomologyProfile};
use crate::complex::{face_cap, Simplex, SimplicialComplex};
use crate::graph::Graph;
use crate::itransform::{verify_trace, ITrace};

/// Search limits: nodes expanded across the whole call, and nesting depth of
/// link certifications inside the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_depth: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 100_000,
            max_depth: 8,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Yes { certificate: Certificate },
    No { witness: Refutation },
    Unknown { diagnostics: Diagnostics },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// Graph moves ending at K1.
    Trace(ITrace),
    /// Elementary collapses from the complex down to one vertex.
    Collapse {
        start: SimplicialComplex,
        steps: Vec<(Simplex, Simplex)>,
    },
    /// The complex is flag and its 1-skeleton is certified.
    Skeleton { verdict: Box<Verdict> },
    /// The 1-skeleton of the barycentric subdivision is certified.
    Subdivision { verdict: Box<Verdict> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Refutation {
    /// Nonzero reduced homology of the clique complex (or of the complex).
    Homology { profile: HomologyProfile },
    /// The empty graph or complex, excluded by definition.
    Empty,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub nodes_expanded: u64,
    pub depth_limited: bool,
    pub reason: String,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes { .. } => "Yes",
            Verdict::No { .. } => "No",
            Verdict::Unknown { .. } => "Unknown",
        }
    }

    pub(crate) fn unknown(nodes_expanded: u64, depth_limited: bool, reason: impl Into<String>) -> Self {
        Verdict::Unknown {
            diagnostics: Diagnostics {
                nodes_expanded,
                depth_limited,
                reason: reason.into(),
            },
        }
    }

    pub(crate) fn yes_trace(trace: ITrace) -> Self {
        Verdict::Yes {
            certificate: Certificate::Trace(trace),
        }
    }

    /// Re-checks the verdict for graph `g` from scratch: a Yes trace must
    /// start at `g`, end at K1 and verify with every precondition recertified;
    /// a No witness must match the recomputed nonzero reduced homology.
    /// Unknown always passes.
    pub fn replay_graph(&self, g: &Graph, budget: Budget) -> Result<(), String> {
        match self {
            Verdict::Yes { certificate } => match certificate {
                Certificate::Trace(trace) => {
                    if &trace.start != g {
                        return Err("trace does not start at the input graph".into());
                    }
                    if !trace.end.is_k1() {
                        return Err("trace does not end at K1".into());
                    }
                    let report = verify_trace(trace, budget);
                    match report.failure {
                        None => Ok(()),
                        Some(f) => Err(f.to_string()),
                    }
                }
                _ => Err("graph verdicts carry trace certificates".into()),
            },
            Verdict::No { witness } => match witness {
                Refutation::Empty if g.is_empty() => Ok(()),
                Refutation::Empty => Err("empty-graph witness for a nonempty graph".into()),
                Refutation::Homology { profile } => {
                    let k = SimplicialComplex::clique_complex(g);
                    check_profile(&k, profile)
                }
            },
            Verdict::Unknown { .. } => Ok(()),
        }
    }

    /// Complex analogue of [`Verdict::replay_graph`].
    pub fn replay_complex(&self, k: &SimplicialComplex, budget: Budget) -> Result<(), String> {
        match self {
            Verdict::Yes { certificate } => match certificate {
                Certificate::Collapse { start, steps } => {
                    if start != k {
                        return Err("collapse does not start at the input complex".into());
                    }
                    let mut current = k.clone();
                    for (i, (face, facet)) in steps.iter().enumerate() {
                        current = current
                            .collapse_step(face, facet)
                            .map_err(|e| format!("collapse {i}: {e}"))?;
                    }
                    let f = current.facets();
                    if f.len() == 1 && f[0].len() == 1 {
                        Ok(())
                    } else {
                        Err("collapses do not end at a point".into())
                    }
                }
                Certificate::Skeleton { verdict } => {
                    if let Some(w) = k.is_flag().witness {
                        return Err(format!("complex is not flag: {w:?}"));
                    }
                    verdict.replay_graph(&k.one_skeleton(), budget)?;
                    yes_or(verdict)
                }
                Certificate::Subdivision { verdict } => {
                    let bd = k.barycentric(face_cap()).map_err(|e| e.to_string())?;
                    verdict.replay_graph(&bd.one_skeleton(), budget)?;
                    yes_or(verdict)
                }
                Certificate::Trace(_) => Err("complex verdicts do not carry graph traces".into()),
            },
            Verdict::No { witness } => match witness {
                Refutation::Empty if k.is_empty() => Ok(()),
                Refutation::Empty => Err("empty witness for a nonempty complex".into()),
                Refutation::Homology { profile } => check_profile(k, profile),
            },
            Verdict::Unknown { .. } => Ok(()),
        }
    }
}

fn yes_or(v: &Verdict) -> Result<(), String> {
    if v.is_yes() {
        Ok(())
    } else {
        Err("nested verdict is not Yes".into())
    }
}

fn check_profile(k: &SimplicialComplex, claimed: &HomologyProfile) -> Result<(), String> {
    let actual = homology(k, true, face_cap()).map_err(|e| e.to_string())?;
    if actual != *claimed {
        return Err(format!("witness {claimed} differs from recomputed {actual}"));
    }
    if actual.is_trivial() {
        return Err("witness homology is trivial".into());
    }
    Ok(())
}
