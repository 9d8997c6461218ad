//! The four 𝔍-moves with certified preconditions, trace replay and the
//! best-first move search.
//!
//! Besides `I1`..`I4`, traces may hold `S-` steps: removal of a dominated
//! vertex (`args = [v, w]`) or of an s-dismantlable vertex (`args = [v]`).
//! Their preconditions are checked combinatorially and need no certificate.

mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphEdit, GraphError, Vertex, VertexSet};
use crate::reduction::{
    dominates, dismantle_unchecked, Budget, Certifier, Diagnostics, ReductionError, Refutation, Verdict,
};

pub(crate) use search::{search, SearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    /// `S-`: delete a vertex whose link is dismantlable; with a dominator,
    /// the vertex must also satisfy `N[v] ⊆ N[w]`.
    SCollapse {
        vertex: Vertex,
        dominator: Option<Vertex>,
    },
    /// `I1`, precondition `G[N(v)]`.
    DeleteVertex(Vertex),
    /// `I2`, precondition `G[S]`; the new vertex gets id `max + 1`.
    GlueVertex(VertexSet),
    /// `I3`, precondition `G[N(v, w)]`.
    DeleteEdge(Vertex, Vertex),
    /// `I4`, precondition `G[N(v, w)]`.
    GlueEdge(Vertex, Vertex),
}

impl MoveKind {
    pub fn op(&self) -> &'static str {
        match self {
            MoveKind::SCollapse { .. } => "S-",
            MoveKind::DeleteVertex(_) => "I1",
            MoveKind::GlueVertex(_) => "I2",
            MoveKind::DeleteEdge(..) => "I3",
            MoveKind::GlueEdge(..) => "I4",
        }
    }

    pub fn args(&self) -> Vec<Vertex> {
        match self {
            MoveKind::SCollapse { vertex, dominator } => std::iter::once(*vertex).chain(*dominator).collect(),
            MoveKind::DeleteVertex(v) => vec![*v],
            MoveKind::GlueVertex(s) => s.to_vec(),
            MoveKind::DeleteEdge(v, w) | MoveKind::GlueEdge(v, w) => vec![*v, *w],
        }
    }

    pub fn from_wire(op: &str, args: &[Vertex]) -> Result<Self, String> {
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(format!("{op} takes {n} arguments, got {}", args.len()))
            }
        };
        match op {
            "S-" => match args {
                [v] => Ok(MoveKind::SCollapse {
                    vertex: *v,
                    dominator: None,
                }),
                [v, w] => Ok(MoveKind::SCollapse {
                    vertex: *v,
                    dominator: Some(*w),
                }),
                _ => Err(format!("S- takes 1 or 2 arguments, got {}", args.len())),
            },
            "I1" => arity(1).map(|_| MoveKind::DeleteVertex(args[0])),
            "I2" => Ok(MoveKind::GlueVertex(args.iter().copied().collect())),
            "I3" => arity(2).map(|_| MoveKind::DeleteEdge(args[0], args[1])),
            "I4" => arity(2).map(|_| MoveKind::GlueEdge(args[0], args[1])),
            other => Err(format!("unknown move `{other}`")),
        }
    }

    /// The graph edit, without precondition checks.
    pub fn edit(&self) -> GraphEdit {
        match self {
            MoveKind::SCollapse { vertex: v, .. } | MoveKind::DeleteVertex(v) => GraphEdit::DeleteVertex(*v),
            MoveKind::GlueVertex(s) => GraphEdit::AddVertex(s.clone()),
            MoveKind::DeleteEdge(v, w) => GraphEdit::DeleteEdge(*v, *w),
            MoveKind::GlueEdge(v, w) => GraphEdit::AddEdge(*v, *w),
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph, GraphError> {
        g.apply_edit(&self.edit())
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args().iter().map(Vertex::to_string).collect();
        write!(f, "{} [{}]", self.op(), args.join(", "))
    }
}

/// A move together with the verdict certifying its precondition subgraph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MoveRecord", try_from = "MoveRecord")]
pub struct IMove {
    pub kind: MoveKind,
    pub certificate: Option<Verdict>,
}

impl IMove {
    pub fn uncertified(kind: MoveKind) -> Self {
        Self {
            kind,
            certificate: None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MoveRecord {
    op: String,
    args: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cert: Option<Verdict>,
}

impl From<IMove> for MoveRecord {
    fn from(m: IMove) -> Self {
        Self {
            op: m.kind.op().to_string(),
            args: m.kind.args(),
            cert: m.certificate,
        }
    }
}

impl TryFrom<MoveRecord> for IMove {
    type Error = String;

    fn try_from(r: MoveRecord) -> Result<Self, String> {
        Ok(Self {
            kind: MoveKind::from_wire(&r.op, &r.args)?,
            certificate: r.cert,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ITrace {
    pub start: Graph,
    pub moves: Vec<IMove>,
    pub end: Graph,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoveError {
    #[error("move does not fit the graph: {0}")]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} is not dominated by {dominator}")]
    NotDominated { vertex: Vertex, dominator: Vertex },
    #[error("precondition refuted")]
    Rejected(Refutation),
    #[error("precondition inconclusive: {}", .0.reason)]
    Inconclusive(Diagnostics),
}

/// The induced subgraph a move's precondition is about. Structural
/// mismatches (absent vertex, edge present for `I4`, ...) are errors.
pub fn precondition_subgraph(g: &Graph, kind: &MoveKind) -> Result<Graph, MoveError> {
    let set = match kind {
        MoveKind::SCollapse { vertex, dominator } => {
            let around = g.open_neighborhood(*vertex)?.clone();
            if let Some(w) = *dominator {
                g.open_neighborhood(w)?;
                if !dominates(g, w, *vertex) {
                    return Err(MoveError::NotDominated {
                        vertex: *vertex,
                        dominator: w,
                    });
                }
            }
            around
        }
        MoveKind::DeleteVertex(v) => g.open_neighborhood(*v)?.clone(),
        MoveKind::GlueVertex(s) => s.clone(),
        MoveKind::DeleteEdge(v, w) => {
            let common = g.common_neighborhood(*v, *w)?;
            if !g.has_edge(*v, *w) {
                return Err(GraphError::NotAnEdge(*v, *w).into());
            }
            common
        }
        MoveKind::GlueEdge(v, w) => {
            let common = g.common_neighborhood(*v, *w)?;
            if g.has_edge(*v, *w) {
                return Err(GraphError::AlreadyAnEdge(*v, *w).into());
            }
            common
        }
    };
    Ok(g.induced(&set)?)
}

pub(crate) fn check_with(
    c: &mut Certifier,
    g: &Graph,
    kind: &MoveKind,
    depth: u32,
) -> Result<(Verdict, Graph), MoveError> {
    let sub = precondition_subgraph(g, kind)?;
    if sub.is_empty() {
        return Ok((
            Verdict::No {
                witness: Refutation::Empty,
            },
            sub,
        ));
    }
    let verdict = match kind {
        MoveKind::SCollapse { .. } => crate::reduction::dismantling_certificate(&sub)
            .unwrap_or_else(|| Verdict::unknown(0, false, "link is not dismantlable")),
        _ => c.certify_at(&sub, depth),
    };
    Ok((verdict, sub))
}

/// Certifies the precondition subgraph of `m` from scratch; any stored
/// certificate is ignored.
pub fn check_precondition(g: &Graph, m: &IMove, budget: Budget) -> Result<Verdict, MoveError> {
    let mut c = Certifier::new(budget);
    check_with(&mut c, g, &m.kind, budget.max_depth).map(|(v, _)| v)
}

/// Certifies and applies a move; the returned move carries the Yes verdict.
pub fn certify_move(g: &Graph, kind: MoveKind, budget: Budget) -> Result<(Graph, IMove), MoveError> {
    let m = IMove::uncertified(kind);
    let verdict = check_precondition(g, &m, budget)?;
    match verdict {
        Verdict::Yes { .. } => {
            let h = m.kind.apply(g)?;
            Ok((
                h,
                IMove {
                    kind: m.kind,
                    certificate: Some(verdict),
                },
            ))
        }
        Verdict::No { witness } => Err(MoveError::Rejected(witness)),
        Verdict::Unknown { diagnostics } => Err(MoveError::Inconclusive(diagnostics)),
    }
}

/// Applies `m` after recertifying its precondition.
pub fn apply_move(g: &Graph, m: &IMove, budget: Budget) -> Result<Graph, MoveError> {
    certify_move(g, m.kind.clone(), budget).map(|(h, _)| h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFailure {
    /// 1-based move index; `None` for an end-graph mismatch.
    pub step: Option<usize>,
    pub reason: String,
}

impl fmt::Display for TraceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(s) => write!(f, "step {s}: {}", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub ok: bool,
    pub failure: Option<TraceFailure>,
}

/// Replays `t`, recertifying every precondition with a fresh node budget
/// per step. A step whose recertification is inconclusive is accepted only
/// if its stored certificate itself replays on the precondition subgraph.
pub fn verify_trace(t: &ITrace, budget: Budget) -> TraceReport {
    let fail = |step: Option<usize>, reason: String| TraceReport {
        ok: false,
        failure: Some(TraceFailure { step, reason }),
    };
    let mut c = Certifier::new(budget);
    let mut h = t.start.clone();
    for (i, m) in t.moves.iter().enumerate() {
        let step = Some(i + 1);
        c.reset_nodes();
        let (verdict, sub) = match check_with(&mut c, &h, &m.kind, budget.max_depth) {
            Ok(x) => x,
            Err(e) => return fail(step, format!("{}: {e}", m.kind)),
        };
        match verdict {
            Verdict::Yes { .. } => {}
            Verdict::No { .. } => return fail(step, format!("{}: precondition refuted", m.kind)),
            Verdict::Unknown { diagnostics } => {
                let stored = m
                    .certificate
                    .as_ref()
                    .filter(|v| v.is_yes())
                    .map(|v| v.replay_graph(&sub, budget));
                if !matches!(stored, Some(Ok(()))) {
                    return fail(
                        step,
                        format!("{}: precondition inconclusive ({})", m.kind, diagnostics.reason),
                    );
                }
            }
        }
        h = match m.kind.apply(&h) {
            Ok(next) => next,
            Err(e) => return fail(step, format!("{}: {e}", m.kind)),
        };
    }
    if h != t.end {
        return fail(None, format!("end graph mismatch: replay gives {h:?}"));
    }
    TraceReport { ok: true, failure: None }
}

/// Looks for an `I1`..`I4` trace from `g` to K1: s-collapses become
/// certified `I1` deletions, nonzero reduced homology refutes, and otherwise
/// the best-first move search runs under `budget`.
pub fn reduce_via_moves(g: &Graph, budget: Budget) -> Result<Verdict, ReductionError> {
    if g.is_empty() {
        return Err(ReductionError::EmptyGraph);
    }
    let mut c = Certifier::new(budget);
    let red = crate::reduction::s_reduce_unchecked(g);
    if !red.reached_k1() {
        if let Some(no) = crate::reduction::homology_refutation(g) {
            return Ok(no);
        }
    }
    Ok(match search(&mut c, g, budget.max_depth) {
        SearchOutcome::Found(moves) => {
            let mut end = g.clone();
            for m in &moves {
                end = m.kind.apply(&end).expect("search moves apply");
            }
            Verdict::yes_trace(ITrace {
                start: g.clone(),
                moves,
                end,
            })
        }
        SearchOutcome::Exhausted => Verdict::unknown(c.nodes_expanded(), false, "move search exhausted"),
        SearchOutcome::OutOfNodes => Verdict::unknown(c.nodes_expanded(), false, "node budget exhausted"),
    })
}

/// `I1` certificate for an s-dismantlable vertex: the dismantling of its link.
pub(crate) fn link_dismantling(g: &Graph, v: Vertex) -> Option<Verdict> {
    let link = g.induced(g.open_neighborhood(v).ok()?).ok()?;
    if link.is_empty() || !dismantle_unchecked(&link).reached_k1() {
        return None;
    }
    crate::reduction::dismantling_certificate(&link)
}
