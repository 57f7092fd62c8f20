//! Benchmark harness: runs a matrix of (search, heuristic, model)
//! configurations over a dataset, logs every instance as it finishes and
//! aggregates the log into result and report tables.
//!
//! Config file (TOML, `version = 1`):
//!
//! ```toml
//! version = 1
//! dataset = "d1.json"        # relative paths resolve against the config file
//! out_dir = "results"
//! threads = 1                # worker threads, 0 = one per core
//! max_depth = 9              # optional: only instances up to this depth
//! pdb_cap = 100000000        # optional: entry cap per pattern database
//! cache_dir = ".rcplan-cache" # optional: defaults to $RCPLAN_CACHE_DIR
//!
//! [limits]
//! time_s = 60.0
//! max_nodes = 10000000
//! max_expansions = 500000     # optional
//!
//! [oracle]
//! enabled = true
//! time_s = 10.0
//!
//! [[runs]]
//! search = "astar"           # astar | idastar
//! heuristic = "pdb-man"      # blind | gc | ff | pdb-man | pdb-sys1..3
//! model = "m1"               # optional, defaults to the dataset's model
//! allow_cross = false        # required to run m1 on d2 or m2 on d1
//! label = "astar-pdb"        # optional
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Duration;

use rayon::prelude::*;
use rcplan_core::cube::{format_moves, parse_moves, ActionSet, CubeState};
use rcplan_core::heuristics::{manual_patterns, Heuristic, HeuristicConfig, HeuristicKind, DEFAULT_PDB_CAP};
use rcplan_core::oracle::{optimal_length, plan_cost, validate_plan};
use rcplan_core::scramble::{Dataset, ProblemInstance};
use rcplan_core::search::{solve, SearchKind, SearchLimits, SearchStatus};
use serde::{Deserialize, Serialize};

use crate::clock::StdClock;
use crate::error::{read_to_string, Error, Result};
use crate::io::load_dataset;
use crate::pdb_cache::{build_heuristic, cache_dir, load_max_pdb};
use crate::report::{report_table, write_results, BenchRow, ResultRow};

pub const CONFIG_VERSION: u32 = 1;
pub const LOG_FILE: &str = "log.jsonl";
pub const ORACLE_FILE: &str = "optimal.jsonl";
pub const RESULTS_FILE: &str = "results.csv";
pub const REPORT_TEXT_FILE: &str = "report.txt";
pub const REPORT_CSV_FILE: &str = "report.csv";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsConfig {
    #[serde(default = "default_time")]
    pub time_s: f64,
    #[serde(default = "default_nodes")]
    pub max_nodes: u64,
    #[serde(default)]
    pub max_expansions: Option<u64>,
}

fn default_time() -> f64 {
    SearchLimits::DESK.wall_time.as_secs_f64()
}

fn default_nodes() -> u64 {
    SearchLimits::DESK.max_stored_nodes
}

impl Default for LimitsConfig {
    fn default() -> Self {
        LimitsConfig { time_s: default_time(), max_nodes: default_nodes(), max_expansions: None }
    }
}

impl LimitsConfig {
    pub fn to_limits(&self) -> Result<SearchLimits> {
        if self.time_s.is_nan() || self.time_s <= 0.0 || self.max_nodes == 0 || self.max_expansions == Some(0) {
            return Err(Error::Config("limits must be positive".into()));
        }
        Ok(SearchLimits {
            wall_time: Duration::from_secs_f64(self.time_s),
            max_stored_nodes: self.max_nodes,
            max_expansions: self.max_expansions,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default = "default_oracle_time")]
    pub time_s: f64,
    #[serde(default)]
    pub max_expansions: Option<u64>,
}

fn yes() -> bool {
    true
}

fn default_oracle_time() -> f64 {
    10.0
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { enabled: true, time_s: default_oracle_time(), max_expansions: None }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub label: Option<String>,
    pub search: SearchKind,
    pub heuristic: HeuristicKind,
    #[serde(default)]
    pub model: Option<String>,
    #[serde(default)]
    pub allow_cross: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub version: u32,
    pub dataset: PathBuf,
    pub out_dir: PathBuf,
    #[serde(default = "one")]
    pub threads: usize,
    #[serde(default)]
    pub max_depth: Option<usize>,
    #[serde(default)]
    pub pdb_cap: Option<u64>,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
    #[serde(default)]
    pub limits: LimitsConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    pub runs: Vec<RunConfig>,
}

fn one() -> usize {
    1
}

/// Parses `m1` / `m2` (or the action-set sizes).
pub fn parse_model(s: &str) -> Option<ActionSet> {
    match s.to_ascii_lowercase().as_str() {
        "m1" | "12" | "quarter_12" => Some(ActionSet::Quarter12),
        "m2" | "18" | "full_18" => Some(ActionSet::Full18),
        _ => None,
    }
}

pub fn model_name(set: ActionSet) -> &'static str {
    match set {
        ActionSet::Quarter12 => "m1",
        ActionSet::Full18 => "m2",
    }
}

/// A run after resolving defaults against the dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedRun {
    pub label: String,
    pub search: SearchKind,
    pub heuristic: HeuristicConfig,
}

impl BenchConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<BenchConfig> {
        let mut cfg: BenchConfig =
            toml::from_str(text).map_err(|source| Error::Toml { path: path.into(), source })?;
        if cfg.version != CONFIG_VERSION {
            return Err(Error::Config(format!("config version {} unsupported, expected {CONFIG_VERSION}", cfg.version)));
        }
        let base = path.parent().unwrap_or(Path::new(""));
        cfg.dataset = base.join(&cfg.dataset);
        cfg.out_dir = base.join(&cfg.out_dir);
        cfg.cache_dir = cfg.cache_dir.map(|d| base.join(d));
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<BenchConfig> {
        BenchConfig::from_toml(&read_to_string(path)?, path)
    }

    /// Resolves models and labels, rejecting model/dataset mismatches that
    /// are not explicitly allowed.
    pub fn resolve_runs(&self, dataset_set: ActionSet) -> Result<Vec<ResolvedRun>> {
        if self.runs.is_empty() {
            return Err(Error::Config("no runs configured".into()));
        }
        let mut seen = HashSet::new();
        self.runs
            .iter()
            .map(|r| {
                let set = match &r.model {
                    Some(m) => parse_model(m).ok_or_else(|| Error::Config(format!("unknown model {m:?}")))?,
                    None => dataset_set,
                };
                if set != dataset_set && !r.allow_cross {
                    return Err(Error::Config(format!(
                        "model {} does not match the dataset's action set {dataset_set}; set allow_cross = true",
                        model_name(set)
                    )));
                }
                let label = r.label.clone().unwrap_or_else(|| {
                    format!("{}-{}-{}", r.search.as_str(), r.heuristic, model_name(set))
                });
                if !seen.insert(label.clone()) {
                    return Err(Error::Config(format!("duplicate run label {label:?}")));
                }
                Ok(ResolvedRun { label, search: r.search, heuristic: HeuristicConfig::new(r.heuristic, set) })
            })
            .collect()
    }
}

/// One finished (run, instance) pair, as appended to the log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub config: String,
    pub instance: String,
    pub depth: usize,
    /// Action set of the dataset; optimality is judged in this metric.
    pub metric: ActionSet,
    /// Action set the planner used.
    pub model: ActionSet,
    pub state: CubeState,
    pub status: SearchStatus,
    pub plan: String,
    pub valid: Option<bool>,
    pub expansions: u64,
    pub generated: u64,
    pub peak_stored: u64,
    pub wall_s: f64,
    pub heuristic_initial: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub instance: String,
    pub optimal: Option<u32>,
}

/// Reads a JSON-lines file, ignoring a torn final line from an interrupted
/// write.
pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut out = Vec::new();
    let lines: Vec<String> =
        BufReader::new(file).lines().collect::<std::io::Result<_>>().map_err(|e| Error::io(path, e))?;
    let n = lines.len();
    for (i, line) in lines.into_iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(v) => out.push(v),
            Err(_) if i + 1 == n => {}
            Err(source) => return Err(Error::Json { path: path.into(), source }),
        }
    }
    Ok(out)
}

/// Serialised append-only sink shared by the workers.
struct Sink {
    path: PathBuf,
    file: Mutex<File>,
}

impl Sink {
    fn open(path: &Path) -> Result<Sink> {
        // Drop a torn tail so appended lines start on a fresh line.
        if let Ok(text) = fs::read_to_string(path) {
            if !text.is_empty() && !text.ends_with('\n') {
                let keep = text.rfind('\n').map_or(0, |i| i + 1);
                fs::write(path, &text[..keep]).map_err(|e| Error::io(path, e))?;
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| Error::io(path, e))?;
        Ok(Sink { path: path.into(), file: Mutex::new(file) })
    }

    fn append<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut line = serde_json::to_string(value).expect("log entries serialize");
        line.push('\n');
        let mut f = self.file.lock().unwrap_or_else(|e| e.into_inner());
        f.write_all(line.as_bytes()).and_then(|_| f.flush()).map_err(|e| Error::io(&self.path, e))
    }
}

/// Solves one instance and packages the outcome as a log entry.
pub fn run_instance(
    run: &ResolvedRun,
    inst: &ProblemInstance,
    metric: ActionSet,
    heuristic: &dyn Heuristic,
    limits: &SearchLimits,
) -> LogEntry {
    let set = run.heuristic.action_set;
    let r = solve(run.search, &inst.state, heuristic, set, limits, &StdClock::start());
    let valid = r.is_solved().then(|| validate_plan(&inst.state, &r.plan, set).is_valid());
    LogEntry {
        config: run.label.clone(),
        instance: inst.id.clone(),
        depth: inst.depth_n,
        metric,
        model: set,
        state: inst.state,
        status: r.status,
        plan: format_moves(&r.plan),
        valid,
        expansions: r.expansions,
        generated: r.generated,
        peak_stored: r.peak_stored,
        wall_s: r.wall_time.as_secs_f64(),
        heuristic_initial: r.heuristic_initial,
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

pub struct BenchOutcome {
    pub results: Vec<ResultRow>,
    pub rows: Vec<BenchRow>,
    pub report_text: String,
}

/// Runs every configured run, skipping (run, instance) pairs already in the
/// log, then writes `results.csv`, `report.txt` and `report.csv`.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome> {
    let dataset = load_dataset(&cfg.dataset)?;
    let runs = cfg.resolve_runs(dataset.action_set)?;
    let limits = cfg.limits.to_limits()?;
    let cap = cfg.pdb_cap.unwrap_or(DEFAULT_PDB_CAP);
    let cache = cfg.cache_dir.clone().unwrap_or_else(cache_dir);
    let instances: Vec<&ProblemInstance> =
        dataset.instances.iter().filter(|i| cfg.max_depth.is_none_or(|d| i.depth_n <= d)).collect();
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let pool = pool(cfg.threads)?;

    let log_path = cfg.out_dir.join(LOG_FILE);
    let done: HashSet<(String, String)> =
        read_jsonl::<LogEntry>(&log_path)?.into_iter().map(|e| (e.config, e.instance)).collect();
    let sink = Sink::open(&log_path)?;
    for run in &runs {
        let todo: Vec<&ProblemInstance> =
            instances.iter().copied().filter(|i| !done.contains(&(run.label.clone(), i.id.clone()))).collect();
        if todo.is_empty() {
            continue;
        }
        let heuristic = build_heuristic(&run.heuristic, Some(&cache), cap)?;
        pool.install(|| {
            todo.par_iter().try_for_each(|inst| {
                sink.append(&run_instance(run, inst, dataset.action_set, heuristic.as_ref(), &limits))
            })
        })?;
    }
    drop(sink);
    let log = read_jsonl::<LogEntry>(&log_path)?;

    let optimal = if cfg.oracle.enabled { oracle_lengths(cfg, &dataset, &log, &cache, cap, &pool)? } else { HashMap::new() };
    let results = result_rows(&runs, &instances, &log, &optimal);
    let rows = aggregate_rows(&runs, &results, &log);
    write_results(&cfg.out_dir.join(RESULTS_FILE), &results)?;
    let report = report_table(&rows);
    crate::io::write_text(&cfg.out_dir.join(REPORT_TEXT_FILE), &report.text)?;
    crate::io::write_text(&cfg.out_dir.join(REPORT_CSV_FILE), &report.csv)?;
    Ok(BenchOutcome { results, rows, report_text: report.text })
}

/// Optimal lengths for every instance solved by some run, computed once and
/// persisted alongside the log.
fn oracle_lengths(
    cfg: &BenchConfig,
    dataset: &Dataset,
    log: &[LogEntry],
    cache: &Path,
    cap: u64,
    pool: &rayon::ThreadPool,
) -> Result<HashMap<String, Option<u32>>> {
    let path = cfg.out_dir.join(ORACLE_FILE);
    let mut known: HashMap<String, Option<u32>> =
        read_jsonl::<OracleEntry>(&path)?.into_iter().map(|e| (e.instance, e.optimal)).collect();
    let wanted: HashSet<&str> =
        log.iter().filter(|e| e.status == SearchStatus::Solved).map(|e| e.instance.as_str()).collect();
    let todo: Vec<&ProblemInstance> =
        dataset.instances.iter().filter(|i| wanted.contains(i.id.as_str()) && !known.contains_key(&i.id)).collect();
    if !todo.is_empty() {
        let pdb = load_max_pdb("pdb-man", &manual_patterns(), dataset.action_set, Some(cache), cap)?;
        let budget = SearchLimits {
            wall_time: Duration::from_secs_f64(cfg.oracle.time_s),
            max_stored_nodes: u64::MAX,
            max_expansions: cfg.oracle.max_expansions,
        };
        let sink = Sink::open(&path)?;
        let fresh: Vec<OracleEntry> = pool.install(|| {
            todo.par_iter()
                .map(|inst| {
                    let d = optimal_length(&inst.state, &pdb, &budget, &StdClock::start()).known();
                    let e = OracleEntry { instance: inst.id.clone(), optimal: d };
                    sink.append(&e).map(|_| e)
                })
                .collect::<Result<_>>()
        })?;
        known.extend(fresh.into_iter().map(|e| (e.instance, e.optimal)));
    }
    Ok(known)
}

/// Rows in run order, then dataset order; independent of completion order.
pub fn result_rows(
    runs: &[ResolvedRun],
    instances: &[&ProblemInstance],
    log: &[LogEntry],
    optimal: &HashMap<String, Option<u32>>,
) -> Vec<ResultRow> {
    let by_key: HashMap<(&str, &str), &LogEntry> =
        log.iter().map(|e| ((e.config.as_str(), e.instance.as_str()), e)).collect();
    let mut rows = Vec::new();
    for run in runs {
        for inst in instances {
            let Some(e) = by_key.get(&(run.label.as_str(), inst.id.as_str())) else { continue };
            let solved = e.status == SearchStatus::Solved;
            let plan_len = solved.then(|| plan_cost(&parse_moves(&e.plan).unwrap_or_default(), e.metric));
            let optimal_len = optimal.get(&e.instance).copied().flatten().filter(|_| solved);
            rows.push(ResultRow {
                config: e.config.clone(),
                instance: e.instance.clone(),
                depth: e.depth,
                status: e.status,
                plan_len,
                optimal_len,
                is_optimal: plan_len.zip(optimal_len).map(|(p, o)| p == o),
                expansions: e.expansions,
                generated: e.generated,
                peak_nodes: e.peak_stored,
                wall_s: e.wall_s,
            });
        }
    }
    rows
}

fn median(mut v: Vec<u64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_unstable();
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] as f64 } else { (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0 })
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

pub fn aggregate_rows(runs: &[ResolvedRun], results: &[ResultRow], log: &[LogEntry]) -> Vec<BenchRow> {
    let valid: BTreeMap<(&str, &str), bool> =
        log.iter().filter_map(|e| Some(((e.config.as_str(), e.instance.as_str()), e.valid?))).collect();
    runs.iter()
        .map(|run| {
            let rs: Vec<&ResultRow> = results.iter().filter(|r| r.config == run.label).collect();
            let solved: Vec<&&ResultRow> = rs.iter().filter(|r| r.status == SearchStatus::Solved).collect();
            let classified = solved.iter().filter(|r| r.is_optimal.is_some()).count();
            let optimal = solved.iter().filter(|r| r.is_optimal == Some(true)).count();
            let pct = |n: usize, d: usize| (d > 0).then(|| 100.0 * n as f64 / d as f64);
            BenchRow {
                config: run.label.clone(),
                attempted: rs.len(),
                solved: solved.len(),
                valid: solved
                    .iter()
                    .filter(|r| valid.get(&(r.config.as_str(), r.instance.as_str())) == Some(&true))
                    .count(),
                classified,
                optimal,
                unknown: solved.len() - classified,
                optimal_pct: pct(optimal, classified),
                optimal_pct_attempted: pct(optimal, rs.len()),
                median_expansions: median(solved.iter().map(|r| r.expansions).collect()),
                mean_expansions: mean(&solved.iter().map(|r| r.expansions as f64).collect::<Vec<_>>()),
                mean_wall_s: mean(&rs.iter().map(|r| r.wall_s).collect::<Vec<_>>()),
                timeouts: rs.iter().filter(|r| r.status == SearchStatus::Timeout).count(),
                memouts: rs.iter().filter(|r| r.status == SearchStatus::Memout).count(),
            }
        })
        .collect()
}
