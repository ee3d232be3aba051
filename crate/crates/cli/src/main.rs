use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use raag_core::convex::ComplexFile;
use raag_core::graph::export_dot;
use raag_core::gse::{default_max_total, qi_decide_with, verdict_from_json, SearchCache};
use raag_core::out_analysis::out_profile;
use raag_core::stability::vertex_dichotomy;
use raag_core::subgroup::theta;
use raag_core::{ConvexComplex, Error, Execution, GseState, QiVerdict, Raag, SimplicialGraph};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "raag", version, about = "Right-angled Artin group toolkit")]
struct Cli {
    /// Print only the JSON report.
    #[arg(long, global = true)]
    json: bool,

    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transvections, partial conjugations and Out-finiteness.
    OutCheck { graph: PathBuf },
    /// Minimal stable subgraph containing a vertex.
    Stable {
        graph: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Extension graph classes with representatives of length at most R.
    ExtBall {
        graph: PathBuf,
        #[arg(short = 'R', long = "radius")]
        radius: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Apply star-extension steps given as `label@rep` names.
    Gse {
        graph: PathBuf,
        #[arg(long)]
        steps: String,
    },
    /// Decide whether the two groups are quasi-isometric.
    Qi {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        max_total: Option<usize>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Special subgroup of a convex complex.
    Subgroup {
        graph: PathBuf,
        complex: PathBuf,
        #[arg(long)]
        verify: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Io { .. } | Error::Json(_) => EXIT_USAGE,
            Error::Verification { .. } => 1,
            Error::SearchExhausted(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed stdout (`raag ... | head`) is not an error worth reporting.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: 0,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn load_graph(path: &Path) -> Result<SimplicialGraph, Failure> {
    Ok(SimplicialGraph::load(path)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("json values serialise")
}

/// Reads a complex either as a bare list of words or as `{"vertices": [...]}`.
fn load_complex(raag: &Raag, path: &Path) -> Result<ConvexComplex, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
    let words = match &value {
        Value::Array(items) => items,
        Value::Object(map) => match map.get("vertices") {
            Some(Value::Array(items)) => items,
            _ => return Err(usage(format!("{}: expected a \"vertices\" array", path.display()))),
        },
        _ => return Err(usage(format!("{}: expected a list of words", path.display()))),
    };
    if let Some(graph) = value.get("graph") {
        let file: ComplexFile = serde_json::from_value(json!({"graph": graph, "vertices": []})).map_err(Error::from)?;
        if file.graph.into_graph()? != *raag.graph() {
            return Err(usage(format!("{}: graph differs from the one given", path.display())));
        }
    }
    let elements = words
        .iter()
        .map(|w| {
            w.as_str()
                .ok_or_else(|| usage("complex vertices must be strings"))
                .and_then(|w| Ok(raag.word(w)?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConvexComplex::validate(raag, elements)?)
}

fn emit_witness(raag: &Raag, verdict: &QiVerdict, dir: &Path) -> Result<(), Failure> {
    let QiVerdict::Yes { witness, subgroup } = verdict else {
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    let complex = ComplexFile::from_complex(raag, witness.complex());
    let complex = serde_json::to_value(complex).map_err(Error::from)?;
    write_file(&dir.join("complex.json"), &pretty(&complex))?;
    write_file(&dir.join("witness.json"), &pretty(&witness.to_json(raag)))?;
    write_file(&dir.join("subgroup.json"), &pretty(&subgroup.to_json(raag)))?;
    write_file(&dir.join("support.dot"), &export_dot(witness.support().graph()))?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::OutCheck { graph } => {
            let graph = load_graph(&graph)?;
            let profile = out_profile(&graph);
            let report = profile.to_json(&graph);
            if !cli.json {
                let yes_no = |b: bool| if b { "yes" } else { "no" };
                writeln!(
                    out,
                    "Out finite: {} ({} transvections, {} separating stars)",
                    yes_no(profile.finite),
                    profile.transvections.len(),
                    profile.partial_conjugation_sites.len()
                )?;
                for t in &profile.transvections {
                    let kind = if t.adjacent { "adjacent" } else { "non-adjacent" };
                    writeln!(out, "  transvection {} ↦ {}·{} ({kind})", graph.name(t.target), graph.name(t.target), graph.name(t.by))?;
                }
                for s in &profile.partial_conjugation_sites {
                    writeln!(out, "  separating star at {} ({} components)", graph.name(s.vertex), s.components.len())?;
                }
                writeln!(out, "connected: {}", yes_no(profile.connected))?;
                writeln!(out, "reconstruction applies: {}", yes_no(profile.reconstruction_ok))?;
                writeln!(out, "|Aut(Γ)| = {}, inversions = {}", profile.graph_automorphisms, profile.inversions)?;
            }
            writeln!(out, "{}", pretty(&report))?;
            Ok(0)
        }
        Command::Stable { graph, vertex } => {
            let graph = load_graph(&graph)?;
            let w = graph.vertex(&vertex)?;
            let d = vertex_dichotomy(&graph, w);
            let report = json!({
                "gamma_w": graph.set_names(d.gamma_w()),
                "dichotomy": d.to_json(&graph),
            });
            writeln!(out, "{}", pretty(&report))?;
            Ok(0)
        }
        Command::ExtBall { graph, radius, dot } => {
            let raag = Raag::new(load_graph(&graph)?);
            let t = raag.truncation_with(radius, exec)?;
            let g = t.graph.graph();
            let text = export_dot(g);
            if cli.json {
                let report = json!({"radius": radius, "graph": g.to_json_value()});
                writeln!(out, "{}", pretty(&report))?;
            } else {
                writeln!(out, "extension graph, R = {radius}: {} vertices, {} edges", g.len(), g.edge_count())?;
            }
            match dot {
                Some(path) => write_file(&path, &text)?,
                None if !cli.json => write!(out, "{text}")?,
                None => {}
            }
            Ok(0)
        }
        Command::Gse { graph, steps } => {
            let raag = Raag::new(load_graph(&graph)?);
            let names: Vec<&str> = steps.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let state = GseState::initial(&raag).apply(&raag, &names)?;
            if cli.json {
                writeln!(out, "{}", pretty(&state.to_json(&raag)))?;
            } else {
                let g = state.support().graph();
                let n = state.history().len();
                writeln!(
                    out,
                    "support after {n} step{} ({} nontrivial): {} vertices, {} edges",
                    if n == 1 { "" } else { "s" },
                    state.nontrivial_steps(),
                    g.len(),
                    g.edge_count()
                )?;
                write!(out, "{}", export_dot(g))?;
            }
            Ok(0)
        }
        Command::Qi {
            a,
            b,
            max_total,
            emit_witness: witness_dir,
            no_cache,
        } => {
            let raag = Raag::new(load_graph(&a)?);
            let target = load_graph(&b)?;
            let max_total = max_total.unwrap_or_else(|| default_max_total(&target));
            let cache = (!no_cache).then(SearchCache::from_env);
            let key = SearchCache::key(raag.graph(), &target, max_total)?;
            let cached = cache
                .as_ref()
                .and_then(|c| c.load(&key))
                .and_then(|v| verdict_from_json(&raag, &v).ok());
            let verdict = match cached {
                Some(v) => v,
                None => {
                    let v = qi_decide_with(&raag, &target, max_total, exec)?;
                    if let Some(c) = &cache {
                        // A failed cache write only costs a recomputation later.
                        let _ = c.store(&key, &v.to_json(&raag));
                    }
                    v
                }
            };
            if let Some(dir) = &witness_dir {
                emit_witness(&raag, &verdict, dir)?;
            }
            if !cli.json {
                writeln!(out, "{}", verdict.summary())?;
            }
            writeln!(out, "{}", pretty(&verdict.to_json(&raag)))?;
            Ok(match verdict {
                QiVerdict::Yes { .. } => 0,
                QiVerdict::No { .. } => 1,
                QiVerdict::Inconclusive { .. } => 3,
            })
        }
        Command::Subgroup { graph, complex, verify } => {
            let raag = Raag::new(load_graph(&graph)?);
            let k = load_complex(&raag, &complex)?;
            let sub = theta(&raag, &k)?;
            let mut report = sub.to_json(&raag);
            if let Some(r) = verify {
                let v = sub.verify_with(&raag, r, exec)?;
                report["verification"] = json!({
                    "radius": v.radius,
                    "ball": v.ball,
                    "tiles": v.tiles,
                    "injectivity_radius": v.injectivity_radius,
                    "products": v.products,
                });
            }
            writeln!(out, "{}", pretty(&report))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            if !f.message.is_empty() {
                eprintln!("raag: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
