use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hompat::error::{Error, Result};
use hompat::families;
use hompat::features::{self, FeatureOptions, Format, Normalize};
use hompat::graph::{read_graph_file, read_pattern_file, serialize_graph, Graph, LabelAlphabet, RootedPattern};
use hompat::hom::{hom_count_brute_rooted, CountMode, HomPlan, SubgraphPlan};
use hompat::trees::{theorem1_check, EnumerationBudget, WitnessSearch};
use hompat::wl::{f_wl, k_wl, wl1, VerdictRecord};

#[derive(Parser)]
#[command(name = "hompat", version, about = "Homomorphism-count features and refinement experiments")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Accepted for pipeline compatibility; every algorithm here is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output path, or - for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Wl1,
    Fwl,
    Kwl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fig1,
    Fig2,
    CycleUnion,
    CycleHierarchy,
    Cfi,
}

#[derive(Subcommand)]
enum Command {
    /// Per-vertex pattern counts for every graph of a JSON Lines dataset.
    Features {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        patterns: PathBuf,
        #[arg(long, default_value = "hom")]
        mode: String,
        /// none or log-z
        #[arg(long, default_value = "none")]
        normalize: String,
        /// csv or jsonl
        #[arg(long, default_value = "csv")]
        format: String,
        /// Dataset whose columns define the log-z statistics (defaults to --dataset).
        #[arg(long)]
        stats_from: Option<PathBuf>,
    },
    /// Classify candidate patterns against an existing pattern set.
    Advise {
        #[arg(long)]
        patterns: PathBuf,
        #[arg(long)]
        candidates: PathBuf,
    },
    /// Compare two graphs (first record of each file) by colour refinement.
    Wl {
        graph_a: PathBuf,
        graph_b: PathBuf,
        #[arg(long, value_enum, default_value = "wl1")]
        variant: Variant,
        #[arg(long)]
        patterns: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Emit a separating graph pair as JSON Lines.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Pattern file for the parity construction.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Vertex carrying the twist (defaults to the pattern root).
        #[arg(long)]
        v1: Option<usize>,
    },
    /// Check refinement against pattern tree counts and search for a separating tree.
    Witness {
        graph_a: PathBuf,
        graph_b: PathBuf,
        #[arg(long)]
        patterns: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        max_depth: usize,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 2)]
        max_multiplicity: u32,
        #[arg(long, default_value_t = hompat::trees::DEFAULT_TREE_CAP)]
        cap: usize,
        /// Compare rooted counts at this vertex pair, written v,w. Defaults to the
        /// graphs' meta.distinguished_vertex when both carry one.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        anchor: Option<Vec<usize>>,
    },
    /// Rooted counts of one pattern in every graph of a file.
    Count {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "hom")]
        mode: String,
        /// Only report this vertex (computed by direct search instead of the DP).
        #[arg(long)]
        anchor: Option<usize>,
    },
}

fn first_graph(path: &Path, alphabet: &mut LabelAlphabet) -> Result<Graph> {
    read_graph_file(path, alphabet)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidArgument(format!("{} holds no graph", path.display())))
}

fn single_pattern(path: &Path, alphabet: &mut LabelAlphabet) -> Result<RootedPattern> {
    let mut ps = read_pattern_file(path, alphabet)?;
    if ps.len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "{} must hold exactly one pattern, found {}",
            path.display(),
            ps.len()
        )));
    }
    Ok(ps.remove(0))
}

fn meta_vertex(g: &Graph) -> Option<usize> {
    g.meta()?.get("distinguished_vertex")?.as_u64().map(|v| v as usize)
}

/// Exit status 1: a checked property failed.
struct Verified(String);

fn run(cli: Cli, out: &mut dyn Write) -> Result<std::result::Result<(), Verified>> {
    let mut alphabet = LabelAlphabet::new();
    let _ = cli.seed;
    match cli.command {
        Command::Features {
            dataset,
            patterns,
            mode,
            normalize,
            format,
            stats_from,
        } => {
            let graphs = read_graph_file(&dataset, &mut alphabet)?;
            let pats = read_pattern_file(&patterns, &mut alphabet)?;
            let reference = stats_from.map(|p| read_graph_file(&p, &mut alphabet)).transpose()?;
            let opts = FeatureOptions {
                mode: mode.parse::<CountMode>()?,
                normalize: normalize.parse::<Normalize>()?,
                format: format.parse::<Format>()?,
                threads: cli.threads,
            };
            features::export_features(out, &graphs, &pats, &alphabet, &opts, reference.as_deref())?;
        }
        Command::Advise { patterns, candidates } => {
            let f = read_pattern_file(&patterns, &mut alphabet)?;
            let c = read_pattern_file(&candidates, &mut alphabet)?;
            writeln!(out, "{}", features::advise(&f, &c)?.to_json())?;
        }
        Command::Wl {
            graph_a,
            graph_b,
            variant,
            patterns,
            k,
            rounds,
        } => {
            let g = first_graph(&graph_a, &mut alphabet)?;
            let h = first_graph(&graph_b, &mut alphabet)?;
            let verdict = match variant {
                Variant::Wl1 => wl1(&g, &h, rounds).verdict,
                Variant::Fwl => {
                    let f = match patterns {
                        Some(p) => read_pattern_file(&p, &mut alphabet)?,
                        None => Vec::new(),
                    };
                    f_wl(&g, &h, &f, rounds)?.verdict
                }
                Variant::Kwl => k_wl(&g, &h, k.unwrap_or(2), rounds)?,
            };
            writeln!(out, "{}", VerdictRecord::new(g.id(), h.id(), &verdict).to_json())?;
        }
        Command::Gen {
            family,
            m,
            k,
            pattern,
            v1,
        } => {
            let need = |x: Option<usize>, name: &str| {
                x.ok_or_else(|| Error::InvalidArgument(format!("this family needs --{name}")))
            };
            let (a, b) = match family {
                Family::Fig1 => families::fig1_pair(),
                Family::Fig2 => families::fig2_pair(),
                Family::CycleUnion => families::cycle_union_pair(need(m, "m")?)?,
                Family::CycleHierarchy => families::cycle_hierarchy_pair(need(k, "k")?)?,
                Family::Cfi => {
                    let path = pattern.ok_or_else(|| Error::InvalidArgument("cfi needs --pattern".into()))?;
                    families::cfi_pair(&single_pattern(&path, &mut alphabet)?, v1)?
                }
            };
            writeln!(out, "{}", serialize_graph(&a, &alphabet))?;
            writeln!(out, "{}", serialize_graph(&b, &alphabet))?;
        }
        Command::Witness {
            graph_a,
            graph_b,
            patterns,
            depth,
            max_depth,
            max_vertices,
            max_multiplicity,
            cap,
            anchor,
        } => {
            let g = first_graph(&graph_a, &mut alphabet)?;
            let h = first_graph(&graph_b, &mut alphabet)?;
            let f = match patterns {
                Some(p) => read_pattern_file(&p, &mut alphabet)?,
                None => Vec::new(),
            };
            let anchor = match anchor {
                Some(a) => Some((a[0], a[1])),
                None => meta_vertex(&g).zip(meta_vertex(&h)),
            };
            if let Some((v, w)) = anchor {
                if v >= g.n() || w >= h.n() {
                    return Err(Error::InvalidArgument(format!("anchor ({v}, {w}) out of range")));
                }
            }
            let budget = EnumerationBudget {
                max_depth,
                max_vertices,
                max_multiplicity,
                cap,
            };
            let report = theorem1_check(&g, &h, &f, depth, &budget, anchor)?;
            let mut doc = report.to_json(&f);
            doc["pair"] = json!([g.id(), h.id()]);
            doc["anchor"] = json!(anchor.map(|(v, w)| [v, w]));
            writeln!(out, "{doc}")?;
            if !report.forward_ok() {
                return Ok(Err(Verified(format!(
                    "{} forward violations",
                    report.forward_violations.len()
                ))));
            }
            if let WitnessSearch::BudgetExhausted { .. } = report.witness {
                eprintln!("{}", json!({"warning": "budget-exhausted"}));
            }
        }
        Command::Count {
            pattern,
            graph,
            mode,
            anchor,
        } => {
            let p = single_pattern(&pattern, &mut alphabet)?;
            let mode = mode.parse::<CountMode>()?;
            let sub = match mode {
                CountMode::Sub => Some(SubgraphPlan::new(&p)?),
                CountMode::Hom => None,
            };
            let hom = HomPlan::rooted(&p);
            for g in read_graph_file(&graph, &mut alphabet)? {
                let record = match anchor {
                    Some(v) if v >= g.n() => {
                        return Err(Error::InvalidArgument(format!("anchor {v} out of range in {}", g.id())))
                    }
                    Some(v) => {
                        let c = match mode {
                            CountMode::Hom => hom_count_brute_rooted(&p, &g, v)?,
                            CountMode::Sub => hompat::hom::sub_count(&p, &g, v)?,
                        };
                        json!({"graph_id": g.id(), "pattern_id": p.id(), "mode": mode, "vertex": v, "count": c.to_string()})
                    }
                    None => {
                        let counts = match &sub {
                            Some(s) => s.sub_all(&g)?,
                            None => hom.run(&g)?,
                        };
                        let counts: Vec<String> = counts.iter().map(u128::to_string).collect();
                        json!({"graph_id": g.id(), "pattern_id": p.id(), "mode": mode, "counts": counts})
                    }
                };
                writeln!(out, "{record}")?;
            }
        }
    }
    Ok(Ok(()))
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({"error": kind, "message": message}));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            return fail("usage", first, 2);
        }
    };
    let result = if cli.output == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        run(cli, &mut lock)
    } else {
        match std::fs::File::create(&cli.output) {
            Ok(f) => {
                let mut w = std::io::BufWriter::new(f);
                let r = run(cli, &mut w);
                r.and_then(|ok| w.flush().map(|_| ok).map_err(Error::from))
            }
            Err(e) => return fail("io", &format!("{}: {e}", cli.output), 2),
        }
    };
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Verified(msg))) => fail("verification", &msg, 1),
        Err(e) if e.is_resource_guard() => fail("guard", &e.to_string(), 3),
        Err(e) => fail("input", &e.to_string(), 2),
    }
}
