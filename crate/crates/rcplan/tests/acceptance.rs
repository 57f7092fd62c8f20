//! Acceptance suite. Runs every criterion in order and prints one PASS/FAIL
//! line each; the process fails if any criterion fails or overruns its
//! time bound. Pass criterion numbers as arguments to run a subset:
//! `cargo test -p rcplan --test acceptance -- 5 10`.

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Output};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rcplan::bench::{run_bench, BenchConfig};
use rcplan::clock::StdClock;
use rcplan::io::{load_dataset, read_problem, to_json, write_text};
use rcplan::report::parse_report_csv;
use rcplan_core::cube::{
    from_factored, from_stickers, to_factored, to_stickers, ActionSet, CubeState, Face, Move, Turn,
};
use rcplan_core::heuristics::{
    manual_patterns, systematic_patterns, Blind, Heuristic, MaxPdb, Pattern, PatternDb, DEFAULT_PDB_CAP,
};
use rcplan_core::oracle::{
    bfs_optimal, classify_optimality, metric_convert, optimal_length, plan_cost, validate_plan, SolvedInstance,
};
use rcplan_core::pddl::{self, build_domain, emit_domain, emit_problem, parse_domain, parse_problem, symbolic_apply, Variant};
use rcplan_core::scramble::{generate_dataset, generate_instance, generate_instance_any_depth};
use rcplan_core::search::{astar, idastar, SearchLimits, SearchStatus};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

struct Criterion {
    id: u32,
    title: &'static str,
    bound: Duration,
    run: fn(&Ctx) -> Outcome,
}

struct Ctx {
    dir: tempfile::TempDir,
    pdbs: [OnceLock<MaxPdb>; 2],
}

impl Ctx {
    fn path(&self, rel: &str) -> PathBuf {
        self.dir.path().join(rel)
    }

    fn cache(&self) -> PathBuf {
        self.path("cache")
    }

    fn pdb(&self, set: ActionSet) -> &MaxPdb {
        let i = usize::from(set == ActionSet::Full18);
        self.pdbs[i].get_or_init(|| MaxPdb::build("pdb-man", manual_patterns(), set, DEFAULT_PDB_CAP).unwrap())
    }

    fn cli(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_rcplan"))
            .args(args)
            .env("RCPLAN_CACHE_DIR", self.cache())
            .output()
            .expect("spawn rcplan")
    }
}

fn sets() -> [ActionSet; 2] {
    [ActionSet::Quarter12, ActionSet::Full18]
}

/// Random reachable states: seeded scrambles of 1..=30 face turns.
fn random_states(count: u64, salt: u64) -> impl Iterator<Item = CubeState> {
    (0..count).map(move |i| {
        let n = 1 + (i as usize * 7 + salt as usize) % 30;
        generate_instance_any_depth(n, ActionSet::Full18, salt.wrapping_mul(1_000_003) + i).state
    })
}

fn desk_limits() -> SearchLimits {
    SearchLimits::DESK
}

fn c1_move_group(_: &Ctx) -> Outcome {
    let probe = random_states(1, 11).next().unwrap();
    for s in [CubeState::SOLVED, probe] {
        for m in Move::ALL {
            ensure!(s.apply_move(m).apply_move(m.inverse()) == s, "{m} then its inverse is not the identity");
            let order = if m.turn == Turn::Half { 2 } else { 4 };
            let mut t = s;
            for k in 1..=order {
                t = t.apply_move(m);
                ensure!((t == s) == (k == order), "{m} has the wrong order ({k} turns returned: {})", t == s);
            }
            if m.turn == Turn::Half {
                let q = Move::new(m.face, Turn::Cw);
                ensure!(s.apply_move(q).apply_move(q) == s.apply_move(m), "{m} differs from two quarter turns");
            }
        }
        let mut pairs = 0;
        for a in Move::ALL {
            for b in Move::ALL {
                let same_axis = a.face == b.face || a.face.opposite() == b.face;
                let commute = s.apply_move(a).apply_move(b) == s.apply_move(b).apply_move(a);
                ensure!(commute == same_axis, "{a},{b}: commute={commute}, same axis={same_axis}");
                pairs += 1;
            }
        }
        ensure!(pairs == 324, "checked {pairs} pairs");
    }
    Ok("18 moves, 324 ordered pairs".into())
}

fn odd(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            inversions += usize::from(p[i] > p[j]);
        }
    }
    inversions % 2 == 1
}

fn c2_reachability(_: &Ctx) -> Outcome {
    for (i, s) in random_states(10_000, 2).enumerate() {
        let twist: u32 = s.corner_ori().iter().map(|&o| u32::from(o)).sum();
        let flip: u32 = s.edge_ori().iter().map(|&o| u32::from(o)).sum();
        ensure!(twist % 3 == 0, "state {i}: corner twist sum {twist}");
        ensure!(flip % 2 == 0, "state {i}: edge flip sum {flip}");
        ensure!(odd(s.corner_perm()) == odd(s.edge_perm()), "state {i}: permutation parities differ");
        ensure!(s.is_solvable(), "state {i}: reachable state rejected");
    }
    let s = random_states(1, 3).next().unwrap();
    let (cp, co, ep, eo) = (*s.corner_perm(), *s.corner_ori(), *s.edge_perm(), *s.edge_ori());
    let mut twisted = co;
    twisted[0] = (twisted[0] + 1) % 3;
    let mut flipped = eo;
    flipped[5] ^= 1;
    let mut swapped = ep;
    swapped.swap(0, 1);
    let corrupted = [
        ("twisted corner", CubeState::new(cp, twisted, ep, eo)),
        ("flipped edge", CubeState::new(cp, co, ep, flipped)),
        ("swapped edges", CubeState::new(cp, co, swapped, eo)),
    ];
    for (what, c) in corrupted {
        let c = c.map_err(|e| format!("{what}: {e}"))?;
        ensure!(!c.is_solvable(), "{what} passed the solvability check");
    }
    Ok("10000 scrambles lawful, 3 corruptions rejected".into())
}

fn c3_round_trips(_: &Ctx) -> Outcome {
    for (i, s) in random_states(1000, 3).enumerate() {
        let stickers = to_stickers(&s);
        let back = from_stickers(&stickers).map_err(|e| format!("state {i}: {e}"))?;
        ensure!(back == s, "state {i}: sticker round trip");
        let f = to_factored(&back);
        let back = from_factored(&f).map_err(|e| format!("state {i}: {e}"))?;
        ensure!(back == s, "state {i}: factored round trip");
        let text = emit_problem(&back, "p").map_err(|e| e.to_string())?;
        let back = parse_problem(&text).map_err(|e| format!("state {i}: {e}"))?.state;
        ensure!(back == s, "state {i}: PDDL problem round trip");
        ensure!(to_stickers(&back) == stickers, "state {i}: stickers changed along the chain");
    }
    Ok("1000 states through cubelet, sticker, factored and PDDL".into())
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn c4_pddl_isomorphism(_: &Ctx) -> Outcome {
    let text = emit_domain(Variant::M2);
    let parsed = parse_domain(&text).map_err(|e| e.to_string())?;
    ensure!(parsed.actions.len() == 18, "{} actions emitted", parsed.actions.len());
    ensure!(parsed.actions == build_domain(Variant::M2).actions, "parsed domain differs from the built one");
    let mut checks = 0;
    for s in random_states(200, 4) {
        let sym = pddl::encode(&s);
        for a in &parsed.actions {
            let got = symbolic_apply(a, &sym);
            ensure!(got.is_well_formed(), "{} produced a malformed state", a.name);
            ensure!(got == pddl::encode(&s.apply_move(a.name)), "{} disagrees with the engine", a.name);
            checks += 1;
        }
    }
    let squashed = squash(&text);
    let start = squashed.find("(:actionL:").ok_or("no L action in the domain")?;
    let rest = &squashed[start + 1..];
    let l_block = &squashed[start..start + 1 + rest.find("(:action").unwrap_or(rest.len())];
    ensure!(
        l_block.contains(&squash("(when (cube1 ?x ?y ?z) (and (cube2 ?y ?x ?z)))")),
        "L action lacks the cube1 -> cube2 clause"
    );
    Ok(format!("{checks} action applications, zero mismatches"))
}

fn c5_oracle_equivalence(ctx: &Ctx) -> Outcome {
    let mut agreed = 0;
    for (set, cap) in [(ActionSet::Quarter12, 7usize), (ActionSet::Full18, 6)] {
        let pdb = ctx.pdb(set);
        for i in 0..100u64 {
            let inst = generate_instance(1 + i as usize % cap, set, 5_000 + i).unwrap();
            let s = inst.state;
            let bfs = bfs_optimal(&s, set, cap as u32).map_err(|e| e.to_string())?;
            let bfs = bfs.ok_or_else(|| format!("{set} {}: BFS found nothing within {cap}", inst.id))?;
            let runs = [
                ("astar/blind", astar(&s, &Blind, set, &desk_limits(), &StdClock::start())),
                ("astar/pdb", astar(&s, pdb, set, &desk_limits(), &StdClock::start())),
                ("idastar/pdb", idastar(&s, pdb, set, &desk_limits(), &StdClock::start())),
            ];
            for (name, r) in runs {
                ensure!(r.status == SearchStatus::Solved, "{set} {}: {name} ended {}", inst.id, r.status);
                ensure!(
                    r.plan.len() as u32 == bfs,
                    "{set} {}: {name} length {} vs BFS {bfs}",
                    inst.id,
                    r.plan.len()
                );
                ensure!(validate_plan(&s, &r.plan, set).is_valid(), "{set} {}: {name} plan invalid", inst.id);
            }
            agreed += 1;
        }
    }
    Ok(format!("{agreed} instances, four-way exact agreement"))
}

fn c6_admissible_consistent(ctx: &Ctx) -> Outcome {
    let mut samples = 0;
    for set in sets() {
        let pdb = ctx.pdb(set);
        for i in 0..100u64 {
            let s = generate_instance(1 + i as usize % 6, set, 6_000 + i).unwrap().state;
            let d = bfs_optimal(&s, set, 6).map_err(|e| e.to_string())?.ok_or("BFS found nothing within 6")?;
            let h = pdb.evaluate(&s);
            ensure!(h <= d, "{set}: h = {h} exceeds the optimum {d}");
            samples += 1;
        }
    }
    let mut edges = 0;
    for s in random_states(1000, 6) {
        for set in sets() {
            let pdb = ctx.pdb(set);
            let hs = pdb.evaluate(&s);
            for &m in set.moves() {
                let ht = pdb.evaluate(&s.apply_move(m));
                ensure!(hs.abs_diff(ht) <= 1, "{set}: h jumps {hs} -> {ht} across {m}");
                edges += 1;
            }
        }
    }
    ensure!(ctx.pdb(ActionSet::Quarter12).evaluate(&CubeState::SOLVED) == 0, "h(goal) != 0");
    ensure!(ctx.pdb(ActionSet::Full18).evaluate(&CubeState::SOLVED) == 0, "h(goal) != 0");
    Ok(format!("{samples} admissibility samples, {edges} move edges, zero violations"))
}

fn c7_pdb_sizes(ctx: &Ctx) -> Outcome {
    let corner = Pattern::new(vec![0, 1, 2, 3], vec![]).map_err(|e| e.to_string())?;
    let edge = Pattern::new(vec![], vec![0, 1, 2, 3]).map_err(|e| e.to_string())?;
    let mut built = 0;
    for set in sets() {
        for (p, want) in [(&corner, 136_080usize), (&edge, 190_080)] {
            let db = PatternDb::build(p.clone(), set, DEFAULT_PDB_CAP).map_err(|e| e.to_string())?;
            ensure!(db.len() == want, "{set} {p}: {} entries, expected {want}", db.len());
            ensure!(p.table_size() == want as u64, "{p}: table_size {}", p.table_size());
        }
        let mut dbs: Vec<&PatternDb> = ctx.pdb(set).pdbs().iter().collect();
        let small = systematic_patterns(2).map_err(|e| e.to_string())?;
        let small: Vec<PatternDb> = small
            .into_iter()
            .map(|p| PatternDb::build(p, set, DEFAULT_PDB_CAP))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        dbs.extend(&small);
        for db in dbs {
            ensure!(db.table()[db.pattern().goal_index()] == 0, "{set} {}: table[solved] != 0", db.pattern());
            ensure!(db.lookup(&CubeState::SOLVED) == 0, "{set} {}: lookup(solved) != 0", db.pattern());
            built += 1;
        }
    }
    Ok(format!("136080 / 190080 exact; table[solved] = 0 in {built} tables"))
}

fn c8_metric_conversion(ctx: &Ctx) -> Outcome {
    let f = Move::new(Face::F, Turn::Cw);
    let f2 = Move::new(Face::F, Turn::Half);
    let s = CubeState::SOLVED.apply_move(f2);
    let ftm = bfs_optimal(&s, ActionSet::Full18, 6).map_err(|e| e.to_string())?;
    let qtm = bfs_optimal(&s, ActionSet::Quarter12, 7).map_err(|e| e.to_string())?;
    ensure!(ftm == Some(1) && qtm == Some(2), "optimal F2: FTM {ftm:?}, QTM {qtm:?}");
    let oracle_ftm = optimal_length(&s, ctx.pdb(ActionSet::Full18), &desk_limits(), &StdClock::start());
    ensure!(oracle_ftm.known() == Some(1), "pdb oracle says {oracle_ftm:?}");

    let plan = [f, f];
    ensure!(validate_plan(&s, &plan, ActionSet::Quarter12).is_valid(), "[F, F] does not solve F2");
    let solved = [SolvedInstance { id: "F2", state: s, plan: &plan }];
    let (reports, agg) = classify_optimality(&solved, 1, ActionSet::Full18, |_| oracle_ftm);
    ensure!(reports[0].plan_length == 2, "plan length {}", reports[0].plan_length);
    ensure!(reports[0].is_optimal == Some(false), "[F, F] classified {:?}", reports[0].is_optimal);
    ensure!(agg.optimal == 0 && agg.classified == 1, "aggregate {agg:?}");
    let (_, agg_q) = classify_optimality(&solved, 1, ActionSet::Quarter12, |_| {
        optimal_length(&s, ctx.pdb(ActionSet::Quarter12), &desk_limits(), &StdClock::start())
    });
    ensure!(agg_q.optimal == 1, "[F, F] should be optimal in QTM");
    ensure!(metric_convert(&plan, ActionSet::Full18) == [f2], "merging [F, F] did not give [F2]");
    ensure!(plan_cost(&[f2], ActionSet::Quarter12) == 2, "F2 should cost 2 in QTM");
    Ok("F2 optimal 1 (FTM) / 2 (QTM); [F, F] flagged non-optimal in FTM".into())
}

fn c9_dataset_protocol(ctx: &Ctx) -> Outcome {
    for (set, flag) in [(ActionSet::Quarter12, "12"), (ActionSet::Full18, "18")] {
        let ds = generate_dataset(set, 42).map_err(|e| e.to_string())?;
        ensure!(ds.instances.len() == 200, "{set}: {} instances", ds.instances.len());
        let mut per_depth = BTreeMap::new();
        for inst in &ds.instances {
            *per_depth.entry(inst.depth_n).or_insert(0) += 1;
            ensure!(inst.is_consistent(), "{}: state does not match scramble", inst.id);
            ensure!(inst.scramble.windows(2).all(|w| w[0].face != w[1].face), "{}: consecutive same face", inst.id);
        }
        ensure!(per_depth.keys().copied().eq(1..=20), "{set}: depths {:?}", per_depth.keys());
        ensure!(per_depth.values().all(|&n| n == 10), "{set}: per-depth counts {per_depth:?}");
        let distinct: HashSet<u128> = ds.instances.iter().map(|i| i.state.pack()).collect();
        ensure!(distinct.len() == 200, "{set}: only {} distinct states", distinct.len());

        let a = ctx.path(&format!("gen/{flag}-a.json"));
        let b = ctx.path(&format!("gen/{flag}-b.json"));
        for p in [&a, &b] {
            let out = ctx.cli(&["gen", "--actions", flag, "--seed", "42", "--out", p.to_str().unwrap()]);
            ensure!(out.status.success(), "gen failed: {}", String::from_utf8_lossy(&out.stderr));
        }
        let (ba, bb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        ensure!(ba == bb, "{set}: two runs differ");
        ensure!(ba == to_json(&ds).into_bytes(), "{set}: CLI output differs from the library dataset");
    }
    Ok("200 instances x 2 action sets, 10 per depth, distinct, byte-identical".into())
}

fn median(mut v: Vec<u64>) -> f64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] + v[n / 2]) as f64 / 2.0
    }
}

fn c10_heuristic_ordering(ctx: &Ctx) -> Outcome {
    let ds = generate_dataset(ActionSet::Quarter12, 42).map_err(|e| e.to_string())?;
    let data = ctx.path("c10/d1.json");
    write_text(&data, &to_json(&ds)).map_err(|e| e.to_string())?;
    let config = format!(
        r#"version = 1
dataset = "d1.json"
out_dir = "out"
max_depth = 9
cache_dir = "{}"

[limits]
time_s = 10.0
max_nodes = 2000000

[oracle]
enabled = false

[[runs]]
search = "astar"
heuristic = "pdb-man"
label = "pdb"

[[runs]]
search = "astar"
heuristic = "gc"
label = "gc"

[[runs]]
search = "astar"
heuristic = "blind"
label = "blind"

[[runs]]
search = "astar"
heuristic = "ff"
label = "ff"
"#,
        ctx.cache().display()
    );
    let cfg_path = ctx.path("c10/bench.toml");
    write_text(&cfg_path, &config).map_err(|e| e.to_string())?;
    let cfg = BenchConfig::load(&cfg_path).map_err(|e| e.to_string())?;
    let outcome = run_bench(&cfg).map_err(|e| e.to_string())?;

    let mut med = BTreeMap::new();
    let mut solved = BTreeMap::new();
    for label in ["pdb", "gc", "blind", "ff"] {
        let rows: Vec<_> = outcome.results.iter().filter(|r| r.config == label).collect();
        ensure!(rows.len() == 90, "{label}: {} instances attempted", rows.len());
        med.insert(label, median(rows.iter().map(|r| r.expansions).collect()));
        solved.insert(label, rows.iter().filter(|r| r.status == SearchStatus::Solved).count());
    }
    let summary = format!(
        "median expansions pdb {} < gc {} < blind {}; solved pdb {} gc {} blind {} ff {}",
        med["pdb"], med["gc"], med["blind"], solved["pdb"], solved["gc"], solved["blind"], solved["ff"]
    );
    ensure!(med["pdb"] < med["gc"] && med["gc"] < med["blind"], "ordering violated: {summary}");
    ensure!(solved["pdb"] >= solved["blind"], "solved counts violated: {summary}");
    let ff = outcome.rows.iter().find(|r| r.config == "ff").ok_or("no ff row")?;
    ensure!(ff.solved > 0 && ff.valid == ff.solved, "ff: {} of {} plans valid", ff.valid, ff.solved);
    Ok(format!("{summary}; ff plans {}/{} valid", ff.valid, ff.solved))
}

fn c11_pipeline(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    for (flag, model, set) in [("12", "m1", ActionSet::Quarter12), ("18", "m2", ActionSet::Full18)] {
        let root = ctx.path(&format!("c11-{model}"));
        let data = root.join("d.json");
        let s = |p: &Path| p.to_str().unwrap().to_string();
        let run = |args: &[&str]| -> Result<Output, String> {
            let out = ctx.cli(args);
            match out.status.code() {
                Some(0) => Ok(out),
                code => Err(format!("rcplan {args:?} exited {code:?}: {}", String::from_utf8_lossy(&out.stderr))),
            }
        };
        run(&["gen", "--actions", flag, "--seed", "7", "--max-depth", "5", "--out", &s(&data)])?;
        let ds = load_dataset(&data).map_err(|e| e.to_string())?;
        ensure!(ds.instances.len() == 50, "{} instances", ds.instances.len());

        let pddl_dir = root.join("pddl");
        run(&["pddl", "--model", model, "--dataset", &s(&data), "--out-dir", &s(&pddl_dir)])?;
        let domain = std::fs::read_to_string(pddl_dir.join("domain.pddl")).map_err(|e| e.to_string())?;
        let parsed = parse_domain(&domain).map_err(|e| e.to_string())?;
        ensure!(parsed.actions == build_domain(Variant::for_action_set(set)).actions, "domain did not parse back");

        for inst in &ds.instances {
            let problem = pddl_dir.join(format!("{}.pddl", inst.id));
            let back = read_problem(&problem).map_err(|e| e.to_string())?;
            ensure!(back == inst.state, "{}: problem parsed to a different state", inst.id);
            let plan = root.join(format!("plans/{}.plan", inst.id));
            run(&[
                "solve", "--problem", &s(&problem), "--heuristic", "pdb-man", "--search", "astar", "--actions", flag,
                "--plan-out", &s(&plan),
            ])?;
            let out = run(&["validate", "--problem", &s(&problem), "--plan", &s(&plan), "--actions", flag])?;
            ensure!(String::from_utf8_lossy(&out.stdout).starts_with("VALID"), "{}: not valid", inst.id);
            checked += 1;
        }

        let config = format!(
            "version = 1\ndataset = \"d.json\"\nout_dir = \"bench\"\ncache_dir = \"{}\"\n\n[oracle]\nenabled = true\n\n\
             [[runs]]\nsearch = \"astar\"\nheuristic = \"pdb-man\"\n\n\
             [[runs]]\nsearch = \"idastar\"\nheuristic = \"pdb-man\"\n\n\
             [[runs]]\nsearch = \"astar\"\nheuristic = \"blind\"\n",
            ctx.cache().display()
        );
        let cfg = root.join("bench.toml");
        write_text(&cfg, &config).map_err(|e| e.to_string())?;
        run(&["bench", "--config", &s(&cfg)])?;
        let opt = root.join("opt.json");
        run(&["optcheck", "--results", &s(&root.join("bench")), "--out", &s(&opt)])?;
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&opt).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let agg = &v["aggregate"];
        ensure!(agg["solved"] == 150 && agg["classified"] == 150, "optcheck aggregate {agg}");
        ensure!(agg["percent_of_classified"] == 100.0, "optcheck aggregate {agg}");

        let report = std::fs::read_to_string(root.join("bench/report.csv")).map_err(|e| e.to_string())?;
        let rows = parse_report_csv(&report)?;
        ensure!(rows.len() == 3, "{} report rows", rows.len());
        for r in &rows {
            ensure!(r.attempted == 50 && r.solved == 50 && r.valid == 50, "{}: {r:?}", r.config);
            ensure!(r.optimal_pct == Some(100.0), "{}: optimal {:?}", r.config, r.optimal_pct);
        }
        let text = std::fs::read_to_string(root.join("bench/report.txt")).map_err(|e| e.to_string())?;
        ensure!(text.matches("50 (100%)").count() == 3, "report text:\n{text}");
    }
    Ok(format!("{checked} problems solved and validated through the CLI; admissible rows 100% optimal"))
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "move-group laws", bound: Duration::from_secs(1), run: c1_move_group },
    Criterion { id: 2, title: "reachability invariants", bound: Duration::from_secs(5), run: c2_reachability },
    Criterion { id: 3, title: "representation round trips", bound: Duration::from_secs(5), run: c3_round_trips },
    Criterion { id: 4, title: "PDDL/engine isomorphism", bound: Duration::from_secs(10), run: c4_pddl_isomorphism },
    Criterion { id: 5, title: "oracle equivalence", bound: Duration::from_secs(600), run: c5_oracle_equivalence },
    Criterion { id: 6, title: "admissibility and consistency", bound: Duration::MAX, run: c6_admissible_consistent },
    Criterion { id: 7, title: "PDB table sizes", bound: Duration::MAX, run: c7_pdb_sizes },
    Criterion { id: 8, title: "metric conversion (F2)", bound: Duration::from_secs(1), run: c8_metric_conversion },
    Criterion { id: 9, title: "dataset protocol", bound: Duration::from_secs(30), run: c9_dataset_protocol },
    Criterion { id: 10, title: "heuristic ordering", bound: Duration::from_secs(900), run: c10_heuristic_ordering },
    Criterion { id: 11, title: "end-to-end pipeline", bound: Duration::from_secs(300), run: c11_pipeline },
];

fn main() -> ExitCode {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ctx = Ctx { dir: tempfile::tempdir().expect("temp dir"), pdbs: [OnceLock::new(), OnceLock::new()] };
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(&ctx))).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = t.elapsed();
        let bound = if c.bound == Duration::MAX { "none".to_string() } else { format!("{} s", c.bound.as_secs()) };
        let outcome = match outcome {
            Ok(detail) if elapsed > c.bound => Err(format!("over time bound; {detail}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {:>2} {tag} [{}] {:.2} s (bound {bound}): {detail}",
            c.id,
            c.title,
            elapsed.as_secs_f64()
        );
        failed += usize::from(outcome.is_err());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
