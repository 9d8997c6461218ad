//! `flagfold`: graph reductions, contractibility certificates, complex
//! constructions and the randomized verification suites.
//!
//! Exit codes: 0 yes (or success), 1 no (or a failing suite), 2 unknown,
//! 3 parse error, 4 any other error.

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flagfold::algebra::homology;
use flagfold::complex::io::{parse_complex, write_complex};
use flagfold::complex::{face_cap, SimplicialComplex};
use flagfold::graph::io::{parse_graph, write_graph};
use flagfold::graph::Graph;
use flagfold::itransform::{reduce_via_moves, IMove, ITrace, MoveKind};
use flagfold::reduction::{
    certify_contractible, dismantle, s_reduce, Budget, Certificate, Diagnostics, Refutation, Verdict,
};
use flagfold::suites::{self, Fault, SuiteConfig};

const EXIT_PARSE: u8 = 3;
const EXIT_OTHER: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "flagfold", version, about = "Certified reductions of graphs and clique complexes")]
struct Cli {
    /// Node budget for contractibility search.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget_nodes: u64,
    /// Nesting depth for link certification inside the search.
    #[arg(long, global = true, default_value_t = 8)]
    budget_depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Strategy {
    Dismantle,
    S,
    IMoves,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FaultArg {
    IsolatedVertex,
    DropEdge,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::IsolatedVertex => Fault::IsolatedVertex,
            FaultArg::DropEdge => Fault::DropEdge,
        }
    }
}

#[derive(Args, Debug)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a graph to K1 by dismantling, s-collapses or certified moves.
    Reduce {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Dismantle)]
        strategy: Strategy,
        /// Write the JSON trace here.
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Decide contractibility of the clique complex of a graph.
    Certify {
        input: PathBuf,
        /// Write the replayable move trace of a Yes verdict here.
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Run the seeded randomized suites.
    VerifyTheorems {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Largest vertex count in the corpus.
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Edge probabilities, cycled over the trials.
        #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.5, 0.7])]
        p: Vec<f64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        moves: usize,
        #[arg(long, default_value_t = 10)]
        link_max_n: usize,
        /// Corrupt every accepted move (test hook).
        #[arg(long, value_enum, hide = true)]
        fault: Option<FaultArg>,
    },
    /// Clique complex of a graph.
    Clique {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// 1-skeleton of a complex, as a graph.
    Skeleton {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Barycentric subdivision.
    Bd {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The cylinder Cyl(K) joining K to Bd(K).
    Cyl {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Greedy elementary collapses; writes what is left.
    Collapse {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Integral homology of a complex (or of a graph's clique complex).
    Homology {
        input: PathBuf,
        /// Read the input as a graph.
        #[arg(long)]
        graph: bool,
        #[arg(long)]
        reduced: bool,
    },
    /// Link of a vertex, named by its token.
    Link {
        input: PathBuf,
        vertex: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
struct InputError {
    path: String,
    message: String,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_input(path)?).map_err(|e| {
        InputError {
            path: path.display().to_string(),
            message: e.to_string(),
        }
        .into()
    })
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    parse_complex(&read_input(path)?).map_err(|e| {
        InputError {
            path: path.display().to_string(),
            message: e.to_string(),
        }
        .into()
    })
}

struct Run {
    format: Format,
    budget: Budget,
    config: Value,
}

impl Run {
    /// Prints the report; text mode leads with the effective config.
    fn report(&self, text: &str, body: Value) {
        match self.format {
            Format::Text => {
                println!("config: {}", self.config);
                print!("{text}");
            }
            Format::Json => {
                let mut obj = json!({ "config": self.config });
                if let (Some(o), Value::Object(b)) = (obj.as_object_mut(), body) {
                    o.extend(b);
                }
                println!("{}", serde_json::to_string_pretty(&obj).expect("json"));
            }
        }
    }

    /// Writes a file-format payload to `-o` or embeds it in the report.
    fn emit(&self, out: &Output, kind: &str, payload: String, summary: String) -> Result<u8> {
        match &out.output {
            Some(path) => {
                fs::write(path, &payload).with_context(|| format!("cannot write {}", path.display()))?;
                self.report(
                    &format!("{summary}\nwrote {}\n", path.display()),
                    json!({ "summary": summary, "output": path.display().to_string() }),
                );
            }
            None => match self.format {
                Format::Text => {
                    eprintln!("config: {}", self.config);
                    eprintln!("{summary}");
                    print!("{payload}");
                }
                Format::Json => self.report("", json!({ "summary": summary, kind: payload })),
            },
        }
        Ok(0)
    }
}

fn exit_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Yes { .. } => 0,
        Verdict::No { .. } => 1,
        Verdict::Unknown { .. } => 2,
    }
}

fn describe(v: &Verdict) -> String {
    match v {
        Verdict::Yes { certificate } => match certificate {
            Certificate::Trace(t) => format!("Yes: certified trace of {} moves to K1", t.moves.len()),
            Certificate::Collapse { steps, .. } => format!("Yes: {} elementary collapses to a point", steps.len()),
            Certificate::Skeleton { .. } => "Yes: flag complex with certified 1-skeleton".into(),
            Certificate::Subdivision { .. } => "Yes: certified 1-skeleton of the subdivision".into(),
        },
        Verdict::No { witness } => match witness {
            Refutation::Homology { profile } => format!("No: nonzero {profile}"),
            Refutation::Empty => "No: empty".into(),
        },
        Verdict::Unknown { diagnostics } => format!(
            "Unknown: {} ({} nodes expanded{})",
            diagnostics.reason,
            diagnostics.nodes_expanded,
            if diagnostics.depth_limited { ", depth limited" } else { "" }
        ),
    }
}

fn write_trace(path: &Path, trace: &ITrace) -> Result<()> {
    let text = serde_json::to_string_pretty(trace)? + "\n";
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Verdict for a greedy reduction that stopped at `core`: homology of the
/// core refutes, otherwise the greedy pass is inconclusive.
fn stuck_verdict(core: &Graph, strategy: &str) -> Result<Verdict> {
    let profile = homology(&SimplicialComplex::clique_complex(core), true, face_cap())?;
    Ok(if profile.is_trivial() {
        Verdict::Unknown {
            diagnostics: Diagnostics {
                nodes_expanded: 0,
                depth_limited: false,
                reason: format!("{strategy} stopped at {} vertices", core.vertex_count()),
            },
        }
    } else {
        Verdict::No {
            witness: Refutation::Homology { profile },
        }
    })
}

fn cmd_reduce(run: &Run, input: &Path, strategy: Strategy, emit: Option<&Path>) -> Result<u8> {
    let g = load_graph(input)?;
    let (trace, verdict) = match strategy {
        Strategy::Dismantle => {
            let d = dismantle(&g)?;
            let moves = d
                .steps
                .iter()
                .map(|&(v, w)| {
                    IMove::uncertified(MoveKind::SCollapse {
                        vertex: v,
                        dominator: Some(w),
                    })
                })
                .collect();
            let verdict = stuck_verdict(&d.core, "dismantling")?;
            (ITrace { start: g, moves, end: d.core }, verdict)
        }
        Strategy::S => {
            let s = s_reduce(&g)?;
            let moves = s
                .deletions
                .iter()
                .map(|&v| {
                    IMove::uncertified(MoveKind::SCollapse {
                        vertex: v,
                        dominator: None,
                    })
                })
                .collect();
            let verdict = stuck_verdict(&s.terminal, "s-reduction")?;
            (ITrace { start: g, moves, end: s.terminal }, verdict)
        }
        Strategy::IMoves => {
            let verdict = reduce_via_moves(&g, run.budget)?;
            let trace = match &verdict {
                Verdict::Yes {
                    certificate: Certificate::Trace(t),
                } => t.clone(),
                _ => ITrace {
                    start: g.clone(),
                    moves: Vec::new(),
                    end: g,
                },
            };
            (trace, verdict)
        }
    };
    let verdict = if trace.end.is_k1() {
        Verdict::Yes {
            certificate: Certificate::Trace(trace.clone()),
        }
    } else {
        verdict
    };
    if let Some(path) = emit {
        write_trace(path, &trace)?;
    }
    let text = format!(
        "{}\nmoves: {}, end: {} vertices, {} edges\n",
        describe(&verdict),
        trace.moves.len(),
        trace.end.vertex_count(),
        trace.end.edge_count()
    );
    run.report(&text, json!({ "verdict": verdict.label(), "detail": describe(&verdict), "trace": trace }));
    Ok(exit_code(&verdict))
}

fn cmd_certify(run: &Run, input: &Path, emit: Option<&Path>) -> Result<u8> {
    let g = load_graph(input)?;
    let verdict = certify_contractible(&g, run.budget)?;
    if let (Some(path), Verdict::Yes { certificate: Certificate::Trace(t) }) = (emit, &verdict) {
        write_trace(path, t)?;
    }
    run.report(&format!("{}\n", describe(&verdict)), json!({ "verdict": verdict }));
    Ok(exit_code(&verdict))
}

fn cmd_verify(run: &Run, config: &SuiteConfig) -> Result<u8> {
    let report = suites::run_all(config);
    let mut text = String::new();
    for s in &report.suites {
        let status = if s.passed() { "PASS" } else { "FAIL" };
        text += &format!(
            "{status} {}: {} graphs, {} checks, {} counterexamples\n",
            s.name,
            s.graphs,
            s.checks,
            s.counterexamples.len()
        );
        for c in &s.counterexamples {
            text += &format!("  trial {}: {}\n", c.index, c.detail);
            for line in write_graph(&c.graph).lines() {
                text += &format!("    {line}\n");
            }
        }
    }
    run.report(&text, json!({ "passed": report.passed(), "suites": report.suites }));
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_homology(run: &Run, input: &Path, graph: bool, reduced: bool) -> Result<u8> {
    let k = if graph {
        SimplicialComplex::clique_complex(&load_graph(input)?)
    } else {
        load_complex(input)?
    };
    let profile = homology(&k, reduced, face_cap())?;
    run.report(&format!("{profile}\n"), json!({ "homology": profile }));
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<u8> {
    let budget = Budget {
        max_nodes: cli.budget_nodes,
        max_depth: cli.budget_depth,
    };
    let mut config = json!({
        "budget": budget,
        "face_cap": face_cap(),
        "format": cli.format.to_possible_value().map(|v| v.get_name().to_string()),
    });
    let extend = |config: &mut Value, extra: Value| {
        if let (Some(c), Value::Object(e)) = (config.as_object_mut(), extra) {
            c.extend(e);
        }
    };
    match &cli.command {
        Command::Reduce { strategy, emit_trace, .. } => extend(
            &mut config,
            json!({ "command": "reduce", "strategy": strategy.to_possible_value().map(|v| v.get_name().to_string()), "emit_trace": emit_trace }),
        ),
        Command::Certify { emit_trace, .. } => {
            extend(&mut config, json!({ "command": "certify", "emit_trace": emit_trace }))
        }
        _ => {}
    }
    let mut run = Run {
        format: cli.format,
        budget,
        config,
    };
    let cap = face_cap();
    match cli.command {
        Command::Reduce {
            input,
            strategy,
            emit_trace,
        } => cmd_reduce(&run, &input, strategy, emit_trace.as_deref()),
        Command::Certify { input, emit_trace } => cmd_certify(&run, &input, emit_trace.as_deref()),
        Command::VerifyTheorems {
            trials,
            n,
            p,
            seed,
            moves,
            link_max_n,
            fault,
        } => {
            if let Some(bad) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(anyhow!("edge probability {bad} outside [0, 1]"));
            }
            if p.is_empty() {
                return Err(anyhow!("at least one edge probability is required"));
            }
            let config = SuiteConfig {
                trials,
                max_n: n,
                probabilities: p,
                seed,
                moves_per_graph: moves,
                link_max_n,
                budget,
                face_cap: cap,
                fault: fault.map(Fault::from),
            };
            run.config = json!({ "command": "verify-theorems", "format": run.config["format"], "suite": config });
            cmd_verify(&run, &config)
        }
        Command::Clique { input, out } => {
            let g = load_graph(&input)?;
            let k = SimplicialComplex::clique_complex(&g);
            run.config["command"] = "clique".into();
            run.emit(&out, "complex", write_complex(&k), format!("{} facets", k.facets().len()))
        }
        Command::Skeleton { input, out } => {
            let g = load_complex(&input)?.one_skeleton();
            run.config["command"] = "skeleton".into();
            let summary = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
            run.emit(&out, "graph", write_graph(&g), summary)
        }
        Command::Bd { input, out } => {
            let bd = load_complex(&input)?.barycentric(cap)?;
            run.config["command"] = "bd".into();
            let summary = format!("{} vertices, {} facets", bd.vertex_count(), bd.facets().len());
            run.emit(&out, "complex", write_complex(&bd), summary)
        }
        Command::Cyl { input, out } => {
            let cyl = load_complex(&input)?.cyl(cap)?;
            run.config["command"] = "cyl".into();
            let summary = format!("{} vertices, {} facets", cyl.vertex_count(), cyl.facets().len());
            run.emit(&out, "complex", write_complex(&cyl), summary)
        }
        Command::Collapse { input, out } => {
            let k = load_complex(&input)?;
            let collapse = k.greedy_collapse();
            let mut rest = k;
            for (face, facet) in &collapse.steps {
                rest = rest.collapse_step(face, facet)?;
            }
            run.config["command"] = "collapse".into();
            let summary = format!(
                "{} elementary collapses, {} to a point",
                collapse.steps.len(),
                if collapse.reached_point() { "collapsed" } else { "not collapsed" }
            );
            run.emit(&out, "complex", write_complex(&rest), summary)
        }
        Command::Homology { input, graph, reduced } => {
            run.config["command"] = "homology".into();
            run.config["reduced"] = reduced.into();
            cmd_homology(&run, &input, graph, reduced)
        }
        Command::Link { input, vertex, out } => {
            let k = load_complex(&input)?;
            let v = *k
                .token_ids()
                .get(&vertex)
                .ok_or_else(|| anyhow!("no vertex named `{vertex}`"))?;
            let link = k.link(v)?;
            run.config["command"] = "link".into();
            let summary = format!("link of {vertex}: {} facets", link.facets().len());
            run.emit(&out, "complex", write_complex(&link), summary)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::from(EXIT_OTHER)
            }
        }
    }
}
