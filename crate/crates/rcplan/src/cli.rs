//! Command-line interface. Exit codes: 0 success, 1 when a solver or
//! validator reports a non-solution, 2 on usage, configuration or IO errors.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use rcplan_core::cube::{format_moves, parse_moves, ActionSet, CubeState};
use rcplan_core::heuristics::{HeuristicConfig, HeuristicKind, DEFAULT_PDB_CAP};
use rcplan_core::oracle::{aggregate, validate_plan, OptimalityReport, plan_cost, optimal_length, Validation};
use rcplan_core::pddl::{emit_domain, emit_problem, format_plan, Variant};
use rcplan_core::scramble::{generate_dataset_sized, MAX_DEPTH, PER_DEPTH};
use rcplan_core::search::{solve, SearchKind, SearchLimits, SearchStatus};
use serde::Serialize;

use crate::bench::{parse_model, read_jsonl, run_bench, BenchConfig, LogEntry};
use crate::clock::StdClock;
use crate::convert::{format_state, parse_state, Format};
use crate::error::{read_to_string, Error, Result};
use crate::io::{load_dataset, read_plan, read_problem, to_json, write_json, write_text};
use crate::pdb_cache::{build_heuristic, cache_dir, file_name, load_max_pdb, read_pdb};
use crate::render::{render_state, render_trace};
use crate::report::format_percent;

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {e}");
        std::process::exit(2);
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(&(format!($($t)*) + "\n")) };
}

#[derive(Debug, Parser)]
#[command(name = "rcplan", version, about = "Rubik's Cube planning toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn parse_actions(s: &str) -> std::result::Result<ActionSet, String> {
    parse_model(s).ok_or_else(|| format!("expected 12 or 18 (or m1/m2), got {s:?}"))
}

fn parse_kind(s: &str) -> std::result::Result<HeuristicKind, String> {
    s.parse().map_err(|e: rcplan_core::heuristics::HeuristicError| e.to_string())
}

fn parse_search(s: &str) -> std::result::Result<SearchKind, String> {
    SearchKind::from_str_opt(s).ok_or_else(|| format!("expected astar or idastar, got {s:?}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded dataset (10 instances per depth 1..20 by default).
    Gen {
        #[arg(long, value_parser = parse_actions)]
        actions: ActionSet,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, default_value_t = PER_DEPTH)]
        per_depth: usize,
    },
    /// Emit the PDDL domain and, with a dataset, one problem per instance.
    Pddl {
        #[arg(long, value_parser = parse_actions)]
        model: ActionSet,
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Solve one problem.
    Solve {
        #[arg(long, value_parser = parse_kind, default_value = "pdb-man")]
        heuristic: HeuristicKind,
        #[arg(long, value_parser = parse_search, default_value = "astar")]
        search: SearchKind,
        /// Wall-time limit in seconds.
        #[arg(long)]
        time: Option<f64>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// 30-minute preset with a matching node cap.
        #[arg(long)]
        paper_budget: bool,
        #[arg(long, conflicts_with = "scramble", required_unless_present = "scramble")]
        problem: Option<PathBuf>,
        #[arg(long)]
        scramble: Option<String>,
        #[arg(long, value_parser = parse_actions, default_value = "18")]
        actions: ActionSet,
        /// Write the plan file here.
        #[arg(long)]
        plan_out: Option<PathBuf>,
        /// Print the full result as JSON instead of the plan.
        #[arg(long)]
        json: bool,
    },
    /// Check that a plan solves a problem using only allowed moves.
    Validate {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        #[arg(long, value_parser = parse_actions)]
        actions: ActionSet,
    },
    /// Classify the plans of a bench log against the optimal-length oracle.
    Optcheck {
        /// A bench `log.jsonl`, or the bench output directory holding it.
        #[arg(long)]
        results: PathBuf,
        /// Oracle time budget per instance, in seconds.
        #[arg(long, default_value_t = 10.0)]
        budget: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark configuration matrix.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the unfolded cube, or a step-by-step plan trace.
    Render {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long, value_parser = parse_actions, default_value = "18")]
        actions: ActionSet,
    },
    /// Convert a state between representations.
    Convert {
        #[arg(long, value_enum)]
        from: Format,
        #[arg(long, value_enum)]
        to: Format,
        /// Input file; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Problem name for PDDL output.
        #[arg(long, default_value = "converted")]
        name: String,
    },
    /// Build or inspect pattern database caches.
    Pdb {
        #[command(subcommand)]
        action: PdbCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum PdbCommand {
    /// Build the tables of a PDB heuristic into the cache.
    Build {
        #[arg(long, value_parser = parse_kind, default_value = "pdb-man")]
        heuristic: HeuristicKind,
        #[arg(long, value_parser = parse_actions)]
        actions: ActionSet,
        #[arg(long, default_value_t = DEFAULT_PDB_CAP)]
        cap: u64,
    },
    /// Print the header and distance histogram of a cache file.
    Inspect { file: PathBuf },
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_or_write(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    status: SearchStatus,
    plan: String,
    plan_len: usize,
    expansions: u64,
    generated: u64,
    peak_stored: u64,
    wall_s: f64,
    heuristic_initial: u32,
    heuristic: &'a str,
    search: &'a str,
}

#[derive(Serialize)]
struct OptcheckOutput {
    reports: Vec<OptimalityReport>,
    aggregate: rcplan_core::oracle::OptimalityAggregate,
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { actions, seed, out, max_depth, per_depth } => {
            let ds = generate_dataset_sized(actions, seed, max_depth, per_depth)?;
            print_or_write(out.as_deref(), &to_json(&ds))?;
        }
        Command::Pddl { model, dataset, out_dir } => {
            let variant = Variant::for_action_set(model);
            write_text(&out_dir.join("domain.pddl"), &emit_domain(variant))?;
            if let Some(path) = dataset {
                let ds = load_dataset(&path)?;
                for inst in &ds.instances {
                    let text = emit_problem(&inst.state, &inst.id)
                        .map_err(|source| Error::Pddl { path: path.clone(), source })?;
                    write_text(&out_dir.join(format!("{}.pddl", inst.id)), &text)?;
                }
                eprintln!("wrote domain and {} problems to {}", ds.instances.len(), out_dir.display());
            }
        }
        Command::Solve { heuristic, search, time, max_nodes, paper_budget, problem, scramble, actions, plan_out, json } => {
            let state = match (&problem, &scramble) {
                (Some(p), _) => read_problem(p)?,
                (None, Some(s)) => CubeState::SOLVED.apply_plan(&parse_moves(s)?),
                (None, None) => return Err(Error::Usage("give --problem or --scramble".into())),
            };
            let mut limits = if paper_budget { SearchLimits::EXTENDED } else { SearchLimits::DESK };
            if let Some(t) = time {
                if t.is_nan() || t <= 0.0 {
                    return Err(Error::Usage("--time must be positive".into()));
                }
                limits.wall_time = Duration::from_secs_f64(t);
            }
            if let Some(n) = max_nodes {
                limits.max_stored_nodes = n;
            }
            let h = build_heuristic(&HeuristicConfig::new(heuristic, actions), Some(&cache_dir()), DEFAULT_PDB_CAP)?;
            let r = solve(search, &state, h.as_ref(), actions, &limits, &StdClock::start());
            if json {
                let label = heuristic.label();
                let out = SolveOutput {
                    status: r.status,
                    plan: format_moves(&r.plan),
                    plan_len: r.plan.len(),
                    expansions: r.expansions,
                    generated: r.generated,
                    peak_stored: r.peak_stored,
                    wall_s: r.wall_time.as_secs_f64(),
                    heuristic_initial: r.heuristic_initial,
                    heuristic: &label,
                    search: search.as_str(),
                };
                out!("{}", to_json(&out));
            } else if r.is_solved() {
                out!("{}", format_plan(&r.plan));
            }
            eprintln!(
                "{}: {} moves, {} expansions, {} generated, {:.3} s",
                r.status,
                r.plan.len(),
                r.expansions,
                r.generated,
                r.wall_time.as_secs_f64()
            );
            if let (Some(p), true) = (plan_out, r.is_solved()) {
                write_text(&p, &format_plan(&r.plan))?;
            }
            if !r.is_solved() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Validate { problem, plan, actions } => {
            let state = read_problem(&problem)?;
            let plan = read_plan(&plan)?;
            match validate_plan(&state, &plan, actions) {
                Validation::Valid => outln!("VALID ({} moves)", plan.len()),
                Validation::Invalid(reason) => {
                    outln!("INVALID {reason:?}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Optcheck { results, budget, out } => {
            let path = if results.is_dir() { results.join(crate::bench::LOG_FILE) } else { results };
            let log: Vec<LogEntry> = read_jsonl(&path)?;
            if budget.is_nan() || budget <= 0.0 {
                return Err(Error::Usage("--budget must be positive".into()));
            }
            let limits = SearchLimits {
                wall_time: Duration::from_secs_f64(budget),
                max_stored_nodes: u64::MAX,
                max_expansions: None,
            };
            let mut reports = Vec::new();
            for metric in [ActionSet::Quarter12, ActionSet::Full18] {
                let entries: Vec<&LogEntry> =
                    log.iter().filter(|e| e.metric == metric && e.status == SearchStatus::Solved).collect();
                if entries.is_empty() {
                    continue;
                }
                let pdb = load_max_pdb("pdb-man", &rcplan_core::heuristics::manual_patterns(), metric, Some(&cache_dir()), DEFAULT_PDB_CAP)?;
                for e in entries {
                    let plan = parse_moves(&e.plan)?;
                    let plan_length = plan_cost(&plan, metric);
                    let optimal = optimal_length(&e.state, &pdb, &limits, &StdClock::start()).known();
                    reports.push(OptimalityReport {
                        id: format!("{}/{}", e.config, e.instance),
                        plan_length,
                        optimal_length: optimal,
                        is_optimal: optimal.map(|d| d == plan_length),
                        metric,
                    });
                }
            }
            let agg = aggregate(&reports, log.len());
            let pct = |p: Option<f64>| p.map_or("N/A".to_string(), format_percent);
            eprintln!(
                "{} solved, {} classified, {} optimal ({} of classified, {} of attempted), {} unknown",
                agg.solved,
                agg.classified,
                agg.optimal,
                pct(agg.percent_of_classified),
                pct(agg.percent_of_attempted),
                agg.unknown
            );
            let output = OptcheckOutput { reports, aggregate: agg };
            match out {
                Some(p) => write_json(&p, &output)?,
                None => out!("{}", to_json(&output)),
            }
        }
        Command::Bench { config } => {
            let cfg = BenchConfig::load(&config)?;
            let outcome = run_bench(&cfg)?;
            out!("{}", outcome.report_text);
        }
        Command::Render { problem, plan, actions } => {
            let state = read_problem(&problem)?;
            match plan {
                None => out!("{}", render_state(&state)),
                Some(p) => {
                    let plan = read_plan(&p)?;
                    for frame in render_trace(&state, &plan, actions)? {
                        outln!("{frame}");
                    }
                }
            }
        }
        Command::Convert { from, to, input, name } => {
            let text = match &input {
                Some(p) => read_to_string(p)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s).map_err(|e| Error::io("<stdin>", e))?;
                    s
                }
            };
            let state = parse_state(from, &text)?;
            out!("{}", format_state(to, &state, &name)?);
        }
        Command::Pdb { action: PdbCommand::Build { heuristic, actions, cap } } => {
            let patterns = heuristic
                .patterns()
                .ok_or_else(|| Error::Usage(format!("{heuristic} has no pattern databases")))??;
            let dir = cache_dir();
            let max = load_max_pdb(&heuristic.label(), &patterns, actions, Some(&dir), cap)?;
            for db in max.pdbs() {
                outln!("{}  {} entries  max {}", file_name(db.pattern(), actions), db.len(), db.max_distance());
            }
        }
        Command::Pdb { action: PdbCommand::Inspect { file } } => {
            let db = read_pdb(&file)?;
            outln!("pattern {}  actions {}  entries {}", db.pattern(), db.action_set(), db.len());
            let mut hist = std::collections::BTreeMap::new();
            for &d in db.table() {
                *hist.entry(d).or_insert(0u64) += 1;
            }
            for (d, n) in hist {
                let label = if d == rcplan_core::heuristics::UNREACHABLE { "unreachable".into() } else { d.to_string() };
                outln!("{label:>11}  {n}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
