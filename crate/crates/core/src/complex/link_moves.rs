//! Vertex moves with contractible links, and the search for deletion orders
//! between a complex and a subcomplex.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{face_cap, ComplexError, Simplex, SimplicialComplex};
use crate::algebra::homology;
use crate::graph::{Vertex, VertexSet};
use crate::reduction::{Budget, Certificate, Certifier, Diagnostics, Refutation, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ComplexMove {
    ElementaryCollapse { face: Simplex, facet: Simplex },
    ElementaryExpansion { face: Simplex, facet: Simplex },
    LinkDeleteVertex { vertex: Vertex },
    /// Cones a fresh vertex (`max + 1`) over the subcomplex with these facets.
    LinkAddVertex { link: Vec<Simplex> },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComplexMoveError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("link refuted")]
    Rejected(Refutation),
    #[error("link certification inconclusive: {}", .0.reason)]
    Inconclusive(Diagnostics),
}

/// Contractibility of a general complex: greedy collapse to a point, else
/// the graph certifier on the 1-skeleton when the complex is flag, else
/// homology refutation, else the graph certifier on the 1-skeleton of the
/// barycentric subdivision.
pub fn certify_complex_contractible(k: &SimplicialComplex, budget: Budget) -> Verdict {
    certify_with(&mut Certifier::new(budget), k)
}

fn certify_with(c: &mut Certifier, k: &SimplicialComplex) -> Verdict {
    if k.is_empty() {
        return Verdict::No {
            witness: Refutation::Empty,
        };
    }
    c.reset_nodes();
    let run = k.greedy_collapse();
    if run.reached_point() {
        return Verdict::Yes {
            certificate: Certificate::Collapse {
                start: k.clone(),
                steps: run.steps,
            },
        };
    }
    if k.is_flag().flag {
        return match c.certify(&k.one_skeleton()) {
            yes @ Verdict::Yes { .. } => Verdict::Yes {
                certificate: Certificate::Skeleton { verdict: Box::new(yes) },
            },
            other => other,
        };
    }
    match homology(k, true, face_cap()) {
        Ok(profile) if !profile.is_trivial() => {
            return Verdict::No {
                witness: Refutation::Homology { profile },
            }
        }
        _ => {}
    }
    let Ok(bd) = k.barycentric(face_cap()) else {
        return Verdict::unknown(0, false, "barycentric subdivision exceeds the face cap");
    };
    match c.certify(&bd.one_skeleton()) {
        yes @ Verdict::Yes { .. } => Verdict::Yes {
            certificate: Certificate::Subdivision { verdict: Box::new(yes) },
        },
        // Subdivision preserves homology, already checked to be trivial.
        Verdict::No { .. } => Verdict::unknown(c.nodes_expanded(), false, "inconsistent subdivision verdict"),
        unknown => unknown,
    }
}

fn require_yes(verdict: Verdict) -> Result<Verdict, ComplexMoveError> {
    match verdict {
        Verdict::Yes { .. } => Ok(verdict),
        Verdict::No { witness } => Err(ComplexMoveError::Rejected(witness)),
        Verdict::Unknown { diagnostics } => Err(ComplexMoveError::Inconclusive(diagnostics)),
    }
}

fn apply_with(
    c: &mut Certifier,
    k: &SimplicialComplex,
    m: &ComplexMove,
) -> Result<(SimplicialComplex, Option<Verdict>), ComplexMoveError> {
    let elementary = |face: &Simplex, facet: &Simplex| {
        if face.len() + 1 == facet.len() {
            Ok(())
        } else {
            Err(ComplexError::InvalidExpansion {
                face: face.clone(),
                facet: facet.clone(),
                reason: "pair is not elementary".into(),
            })
        }
    };
    match m {
        ComplexMove::ElementaryCollapse { face, facet } => {
            elementary(face, facet)?;
            Ok((k.collapse_step(face, facet)?, None))
        }
        ComplexMove::ElementaryExpansion { face, facet } => {
            elementary(face, facet)?;
            Ok((k.expand_step(face, facet)?, None))
        }
        ComplexMove::LinkDeleteVertex { vertex } => {
            let link = k.link(*vertex)?;
            let verdict = require_yes(certify_with(c, &link))?;
            Ok((k.delete_vertex(*vertex), Some(verdict)))
        }
        ComplexMove::LinkAddVertex { link } => {
            let sub = SimplicialComplex::from_facets(link.clone());
            if let Some(f) = sub.facets().iter().find(|f| !k.contains_face(f)) {
                return Err(ComplexError::NotAFace(f.clone()).into());
            }
            let verdict = require_yes(certify_with(c, &sub))?;
            let apex = k.vertex_set().max().map_or(0, |m| m + 1);
            let cones = sub.facets().iter().map(|f| {
                let mut f = f.clone();
                f.push(apex);
                f
            });
            let facets = k.facets().iter().cloned().chain(cones);
            Ok((
                SimplicialComplex::from_parts(facets.collect(), k.labels().clone()),
                Some(verdict),
            ))
        }
    }
}

/// Applies a complex move; link moves must have a certified contractible
/// link. Returns the new complex and the link verdict, if any.
pub fn link_vertex_move(
    k: &SimplicialComplex,
    m: &ComplexMove,
    budget: Budget,
) -> Result<(SimplicialComplex, Option<Verdict>), ComplexMoveError> {
    apply_with(&mut Certifier::new(budget), k, m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkStep {
    pub vertex: Vertex,
    pub token: String,
    pub certificate: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum LinkSearch {
    Found { steps: Vec<LinkStep> },
    /// `exhausted` means every order was tried without success.
    Unknown { exhausted: bool, reason: String },
}

struct Dfs<'a> {
    certifier: Certifier,
    max_nodes: u64,
    nodes: u64,
    failed: HashSet<VertexSet>,
    verdicts: HashMap<Vec<Simplex>, Verdict>,
    k: &'a SimplicialComplex,
}

impl Dfs<'_> {
    fn link_verdict(&mut self, link: &SimplicialComplex) -> Verdict {
        if let Some(v) = self.verdicts.get(link.facets()) {
            return v.clone();
        }
        self.nodes += 1;
        let v = certify_with(&mut self.certifier, link);
        self.verdicts.insert(link.facets().to_vec(), v.clone());
        v
    }

    /// `Some(true)` when `remaining` can all be deleted from `current`.
    fn go(&mut self, current: &SimplicialComplex, remaining: &VertexSet, steps: &mut Vec<LinkStep>) -> Option<bool> {
        if remaining.is_empty() {
            return Some(true);
        }
        if self.failed.contains(remaining) {
            return Some(false);
        }
        for v in remaining.iter() {
            if self.nodes >= self.max_nodes {
                return None;
            }
            let link = current.link(v).expect("vertex present");
            let verdict = self.link_verdict(&link);
            if !verdict.is_yes() {
                continue;
            }
            steps.push(LinkStep {
                vertex: v,
                token: self.k.token(v),
                certificate: verdict,
            });
            let mut rest = remaining.clone();
            rest.remove(v);
            match self.go(&current.delete_vertex(v), &rest, steps) {
                Some(true) => return Some(true),
                Some(false) => {
                    steps.pop();
                }
                None => return None,
            }
        }
        self.failed.insert(remaining.clone());
        Some(false)
    }
}

/// Depth-first search, lowest id first with backtracking, for an order of
/// certified link deletions from `k` down to `target`. Target vertices are
/// matched to `k` by token. `budget.max_nodes` bounds the number of link
/// certifications.
pub fn find_link_deletion_sequence(
    k: &SimplicialComplex,
    target: &SimplicialComplex,
    budget: Budget,
) -> Result<LinkSearch, ComplexError> {
    let ids = k.token_ids();
    let keep: VertexSet = target
        .vertex_set()
        .iter()
        .map(|v| {
            let t = target.token(v);
            ids.get(&t).copied().ok_or(ComplexError::UnknownToken(t))
        })
        .collect::<Result<_, _>>()?;
    if k.induced(&keep) != *target {
        return Ok(LinkSearch::Unknown {
            exhausted: true,
            reason: "target is not the subcomplex induced on its vertices".into(),
        });
    }
    let remaining = k.vertex_set().difference(&keep);
    let mut dfs = Dfs {
        certifier: Certifier::new(budget),
        max_nodes: budget.max_nodes,
        nodes: 0,
        failed: HashSet::new(),
        verdicts: HashMap::new(),
        k,
    };
    let mut steps = Vec::new();
    Ok(match dfs.go(k, &remaining, &mut steps) {
        Some(true) => LinkSearch::Found { steps },
        Some(false) => LinkSearch::Unknown {
            exhausted: true,
            reason: "no deletion order has only certified links".into(),
        },
        None => LinkSearch::Unknown {
            exhausted: false,
            reason: "link certification budget exhausted".into(),
        },
    })
}
