//! Command-line shell: recognition, decomposition, solving, kernelization,
//! oracles, generators and obstruction search over graphs in a DIMACS-like
//! or JSON format.
//!
//! Exit codes: 0 solved/recognized, 1 negative answer (NO-instance, no
//! decomposition, no obstruction), 2 input error, 3 resource guard.

use clap::{Parser, Subcommand, ValueEnum};
use lrw1::gen::{self, BaseKind};
use lrw1::graph::Graph;
use lrw1::io::{graph_from_json, graph_to_json, parse_graph, write_graph_string};
use lrw1::kernel::{kernelize_with_trace, KernelOutcome, Thresholds};
use lrw1::necklace::{classify_component, Classification};
use lrw1::obstructions::{catalog, find_small_obstruction, ObstructionHit};
use lrw1::oracle;
use lrw1::solver::{solve_branching_stats, Instance};
use lrw1::split::canonical_thread_decomposition;
use lrw1::{cwx, Error};
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "lrw1", version, about = "Linear rankwidth-1 vertex deletion toolkit")]
struct Cli {
    /// Emit the result as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Graph file format for inputs and generated outputs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Dimacs)]
    format: Format,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Branch,
    Cwx,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdMode {
    Paper,
    Test,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Thread,
    Necklace,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a connected graph as thread, necklace or other.
    Recognize { input: Option<PathBuf> },
    /// Print the thread or necklace decomposition of a connected graph.
    Decompose { input: Option<PathBuf> },
    /// Decide and solve the deletion problem within budget k.
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Engine::Branch)]
        engine: Engine,
        /// k-expression file (required by the cwx engine).
        #[arg(long)]
        expr: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Reduce an instance with the kernelization pipeline.
    Kernelize {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ThresholdMode::Paper)]
        thresholds: ThresholdMode,
        /// Cap on obstruction-occurrence enumeration.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        input: Option<PathBuf>,
    },
    /// Brute-force oracles for cross-checking.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Seeded instance generators.
    Gen {
        #[command(subcommand)]
        cmd: GenCmd,
    },
    /// Find one induced catalog obstruction.
    FindObstruction { input: Option<PathBuf> },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact linear rankwidth (small graphs).
    Lrw { input: Option<PathBuf> },
    /// Brute-force minimum deletion set within budget k.
    Solve {
        #[arg(long)]
        k: usize,
        input: Option<PathBuf>,
    },
    /// Emit the embedded obstruction catalog.
    Catalog,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random thread graph with its decomposition.
    Thread {
        #[arg(long, default_value_t = 4)]
        blocks: usize,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Random necklace with its decomposition.
    Necklace {
        #[arg(long, default_value_t = 9)]
        cycle_len: usize,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Base graph plus noisy extra vertices; budget covers the extras.
    Planted {
        #[arg(long, value_enum, default_value_t = BaseArg::Thread)]
        base: BaseArg,
        #[arg(long, default_value_t = 2)]
        extra: usize,
        #[arg(long, default_value_t = 0.3)]
        prob: f64,
    },
    /// Vertex Cover reduction of the input graph.
    Vc { input: Option<PathBuf> },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::TooLarge { .. } | Error::CapExceeded { .. } => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}

fn read_input(cli: &Cli, input: &Option<PathBuf>) -> Result<Graph, Error> {
    let (text, source) = match input {
        Some(p) if p.as_os_str() != "-" => {
            (std::fs::read_to_string(p)?, p.display().to_string())
        }
        _ => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            (text, "<stdin>".to_string())
        }
    };
    match cli.format {
        Format::Dimacs => {
            let (g, warnings) = parse_graph(&text, &source)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            Ok(g)
        }
        Format::Json => {
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Format {
                file: source,
                line: e.line(),
                msg: e.to_string(),
            })?;
            graph_from_json(&v)
        }
    }
}

fn emit(cli: &Cli, text: String) -> Result<(), Error> {
    match &cli.out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => {
            use std::io::Write;
            // A closed pipe (e.g. piping into `head`) is not an error.
            if let Err(e) = writeln!(std::io::stdout(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn emit_graph(cli: &Cli, g: &Graph) -> Result<(), Error> {
    let text = match cli.format {
        Format::Dimacs => write_graph_string(g).trim_end().to_string(),
        Format::Json => graph_to_json(g).to_string(),
    };
    emit(cli, text)
}

fn hit_json(hit: &ObstructionHit) -> serde_json::Value {
    json!({
        "catalog_id": hit.catalog_id,
        "vertices": hit.vertices.iter().collect::<Vec<_>>(),
        "mapping": hit.mapping,
    })
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.cmd {
        Cmd::Recognize { input } => {
            let g = read_input(cli, input)?;
            let (class, cert, code) = match classify_component(&g)? {
                Classification::Thread(d) => {
                    ("thread", Some(serde_json::to_value(&d).unwrap()), 0)
                }
                Classification::Necklace(d) => {
                    ("necklace", Some(serde_json::to_value(&d).unwrap()), 0)
                }
                Classification::Other => ("other", None, 1),
            };
            if cli.json {
                emit(cli, json!({"class": class, "certificate": cert}).to_string())?;
            } else {
                emit(cli, class.to_string())?;
            }
            Ok(code)
        }
        Cmd::Decompose { input } => {
            let g = read_input(cli, input)?;
            match classify_component(&g)? {
                Classification::Thread(d) => {
                    emit(cli, serde_json::to_string_pretty(&d).unwrap())?;
                    Ok(0)
                }
                Classification::Necklace(d) => {
                    emit(cli, serde_json::to_string_pretty(&d).unwrap())?;
                    Ok(0)
                }
                Classification::Other => {
                    eprintln!("graph is neither a thread graph nor a necklace");
                    Ok(1)
                }
            }
        }
        Cmd::Solve { k, engine, expr, input } => {
            let start = Instant::now();
            let (solution, names, nodes) = match engine {
                Engine::Branch => {
                    let g = read_input(cli, input)?;
                    let names = g.names().map(|s| s.to_vec());
                    let (s, stats) = solve_branching_stats(&Instance::new(g, *k));
                    (s, names, Some(stats.nodes_expanded))
                }
                Engine::Cwx => {
                    let Some(path) = expr else {
                        return Err(Error::Format {
                            file: "<args>".into(),
                            line: 0,
                            msg: "the cwx engine needs --expr FILE".into(),
                        });
                    };
                    let text = std::fs::read_to_string(path)?;
                    let e = cwx::parse_kexpression(&text)?;
                    let (g, _) = cwx::eval_kexpression(&e);
                    let names = g.names().map(|s| s.to_vec());
                    (cwx::solve_branching_cwx(&e, *k), names, None)
                }
            };
            let time_ms = start.elapsed().as_millis();
            let decision = solution.is_some();
            let set: Vec<usize> =
                solution.map(|s| s.deletion_set.iter().collect()).unwrap_or_default();
            if cli.json {
                let set_names: Option<Vec<&str>> = names
                    .as_ref()
                    .map(|ns| set.iter().map(|&v| ns[v].as_str()).collect());
                emit(
                    cli,
                    json!({
                        "decision": decision,
                        "deletion_set": set,
                        "deletion_names": set_names,
                        "nodes_expanded": nodes,
                        "time_ms": time_ms,
                    })
                    .to_string(),
                )?;
            } else if decision {
                emit(cli, format!("yes, delete {set:?}"))?;
            } else {
                emit(cli, format!("no deletion set of size <= {k} exists"))?;
            }
            Ok(if decision { 0 } else { 1 })
        }
        Cmd::Kernelize { k, thresholds, cap, input } => {
            let g = read_input(cli, input)?;
            let th = match thresholds {
                ThresholdMode::Paper => Thresholds::paper(*k),
                ThresholdMode::Test => Thresholds::test(),
            };
            let (outcome, trace) = kernelize_with_trace(&g, *k, th, *cap)?;
            let (name, g2, k2, code) = match &outcome {
                KernelOutcome::Reduced(g2, k2) => ("reduced", g2.clone(), *k2, 0),
                KernelOutcome::No => ("no", Graph::new(0), 0, 1),
                KernelOutcome::Unchanged => ("unchanged", g.clone(), *k, 0),
            };
            if cli.json {
                emit(
                    cli,
                    json!({
                        "outcome": name,
                        "graph": if name == "no" { serde_json::Value::Null } else { graph_to_json(&g2) },
                        "k": if name == "no" { serde_json::Value::Null } else { k2.into() },
                        "trace": trace,
                    })
                    .to_string(),
                )?;
            } else if name == "no" {
                emit(cli, "no-instance".to_string())?;
            } else {
                emit(
                    cli,
                    format!(
                        "{name}: {} -> {} vertices, k {} -> {k2}, rules {trace:?}",
                        g.n(),
                        g2.n(),
                        k
                    ),
                )?;
            }
            Ok(code)
        }
        Cmd::Oracle { cmd } => match cmd {
            OracleCmd::Lrw { input } => {
                let g = read_input(cli, input)?;
                let w = oracle::linear_rankwidth_exact(&g)?;
                if cli.json {
                    emit(cli, json!({"lrw": w}).to_string())?;
                } else {
                    emit(cli, w.to_string())?;
                }
                Ok(0)
            }
            OracleCmd::Solve { k, input } => {
                let g = read_input(cli, input)?;
                let s = oracle::min_deletion_set_bruteforce(&g, *k)?;
                let decision = s.is_some();
                let set: Vec<usize> = s.map(|s| s.iter().collect()).unwrap_or_default();
                if cli.json {
                    emit(cli, json!({"decision": decision, "deletion_set": set}).to_string())?;
                } else {
                    emit(cli, format!("{decision} {set:?}"))?;
                }
                Ok(if decision { 0 } else { 1 })
            }
            OracleCmd::Catalog => {
                let members: Vec<_> = catalog()
                    .members()
                    .iter()
                    .map(|m| {
                        let hex: String =
                            m.canonical_form.iter().map(|b| format!("{b:02x}")).collect();
                        json!({
                            "id": m.id,
                            "n": m.graph.n(),
                            "edges": m.graph.edges(),
                            "canonical_form_hex": hex,
                            "name": m.name,
                        })
                    })
                    .collect();
                emit(cli, serde_json::to_string_pretty(&members).unwrap())?;
                Ok(0)
            }
        },
        Cmd::Gen { cmd } => match cmd {
            GenCmd::Thread { blocks, min_size, max_size } => {
                let (g, d) = gen::gen_thread_graph(*blocks, (*min_size, *max_size), cli.seed);
                if cli.json {
                    emit(
                        cli,
                        json!({"graph": graph_to_json(&g), "decomposition": d}).to_string(),
                    )?;
                } else {
                    emit_graph(cli, &g)?;
                }
                Ok(0)
            }
            GenCmd::Necklace { cycle_len, min_size, max_size } => {
                let (g, d) = gen::gen_necklace(*cycle_len, (*min_size, *max_size), cli.seed)?;
                if cli.json {
                    emit(
                        cli,
                        json!({"graph": graph_to_json(&g), "decomposition": d}).to_string(),
                    )?;
                } else {
                    emit_graph(cli, &g)?;
                }
                Ok(0)
            }
            GenCmd::Planted { base, extra, prob } => {
                let kind = match base {
                    BaseArg::Thread => BaseKind::Thread,
                    BaseArg::Necklace => BaseKind::Necklace,
                };
                let inst = gen::gen_planted(kind, *extra, *prob, cli.seed);
                if cli.json {
                    emit(
                        cli,
                        json!({"graph": graph_to_json(&inst.graph), "k": inst.k}).to_string(),
                    )?;
                } else {
                    emit(cli, format!("c k {}", inst.k))?;
                    emit_graph(cli, &inst.graph)?;
                }
                Ok(0)
            }
            GenCmd::Vc { input } => {
                let g = read_input(cli, input)?;
                emit_graph(cli, &gen::vc_reduction(&g))?;
                Ok(0)
            }
        },
        Cmd::FindObstruction { input } => {
            let g = read_input(cli, input)?;
            match find_small_obstruction(&g) {
                Some(hit) => {
                    emit(cli, hit_json(&hit).to_string())?;
                    Ok(0)
                }
                None => {
                    if cli.json {
                        emit(cli, "null".to_string())?;
                    } else if let Ok(d) = canonical_thread_decomposition(&g, false) {
                        emit(cli, format!("no obstruction ({} thread blocks)", d.blocks.len()))?;
                    } else {
                        emit(cli, "no obstruction".to_string())?;
                    }
                    Ok(1)
                }
            }
        }
    }
}
