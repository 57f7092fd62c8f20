//! Per-instance result rows and the aggregated report table.

use std::fmt::Write;
use std::path::Path;

use rcplan_core::search::SearchStatus;
use serde::{Deserialize, Serialize};

use crate::error::{read_to_string, Error, Result};

/// First line of every report CSV. Bump the version when columns change.
pub const REPORT_SCHEMA: &str = "# rcplan-report v1";

pub const RESULTS_HEADER: &str =
    "config,instance,depth,status,plan_len,optimal_len,is_optimal,expansions,generated,peak_nodes,wall_s";

/// One line of `results.csv`. `plan_len` is counted in the dataset's
/// metric, so it is directly comparable with `optimal_len`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub config: String,
    pub instance: String,
    pub depth: usize,
    pub status: SearchStatus,
    pub plan_len: Option<u32>,
    pub optimal_len: Option<u32>,
    pub is_optimal: Option<bool>,
    pub expansions: u64,
    pub generated: u64,
    pub peak_nodes: u64,
    pub wall_s: f64,
}

/// One configuration's aggregate over a dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub config: String,
    pub attempted: usize,
    pub solved: usize,
    /// Solved plans that passed validation.
    pub valid: usize,
    pub classified: usize,
    pub optimal: usize,
    pub unknown: usize,
    /// Optimal among solved plans with a known optimum.
    pub optimal_pct: Option<f64>,
    /// Optimal among all attempted instances.
    pub optimal_pct_attempted: Option<f64>,
    pub median_expansions: Option<f64>,
    pub mean_expansions: Option<f64>,
    pub mean_wall_s: Option<f64>,
    pub timeouts: usize,
    pub memouts: usize,
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv { path: path.into(), source }
}

pub fn results_to_csv(rows: &[ResultRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        let mut s = RESULTS_HEADER.to_string();
        s.push('\n');
        return s;
    }
    for r in rows {
        w.serialize(r).expect("result rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn write_results(path: &Path, rows: &[ResultRow]) -> Result<()> {
    crate::io::write_text(path, &results_to_csv(rows))
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>> {
    let text = read_to_string(path)?;
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect::<Result<_, _>>().map_err(csv_err(path))
}

/// Two decimals with a bare integer when exact: `99.27%`, `100%`.
pub fn format_percent(p: f64) -> String {
    let s = format!("{p:.2}");
    format!("{}%", s.strip_suffix(".00").unwrap_or(&s))
}

/// Solved count with the optimal share in parentheses, e.g. `137 (99.27%)`.
pub fn solved_cell(row: &BenchRow) -> String {
    match row.optimal_pct {
        Some(p) => format!("{} ({})", row.solved, format_percent(p)),
        None => format!("{} (N/A)", row.solved),
    }
}

fn opt_num(v: Option<f64>, decimals: usize) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.decimals$}"))
}

pub struct Report {
    pub text: String,
    pub csv: String,
}

/// Fixed-column text table plus a versioned CSV of the same rows.
pub fn report_table(rows: &[BenchRow]) -> Report {
    let header = ["config", "solved (optimal)", "attempted", "valid", "unknown", "timeout", "memout", "median exp", "mean exp", "mean s"];
    let cells: Vec<[String; 10]> = rows
        .iter()
        .map(|r| {
            [
                r.config.clone(),
                solved_cell(r),
                r.attempted.to_string(),
                r.valid.to_string(),
                r.unknown.to_string(),
                r.timeouts.to_string(),
                r.memouts.to_string(),
                opt_num(r.median_expansions, 1),
                opt_num(r.mean_expansions, 1),
                opt_num(r.mean_wall_s, 3),
            ]
        })
        .collect();
    let widths: Vec<usize> =
        (0..10).map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap()).collect();
    let mut text = String::new();
    let line = |cols: Vec<&str>, text: &mut String| {
        let padded: Vec<String> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { format!("{c:<w$}", w = widths[i]) } else { format!("{c:>w$}", w = widths[i]) })
            .collect();
        writeln!(text, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec(), &mut text);
    for c in &cells {
        line(c.iter().map(String::as_str).collect(), &mut text);
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("report rows serialize");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8");
    Report { text, csv: format!("{REPORT_SCHEMA}\n{body}") }
}

pub fn parse_report_csv(text: &str) -> std::result::Result<Vec<BenchRow>, String> {
    let (first, body) = text.split_once('\n').ok_or("empty report")?;
    if first.trim_end() != REPORT_SCHEMA {
        return Err(format!("unsupported report schema line {first:?}"));
    }
    csv::Reader::from_reader(body.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> BenchRow {
        BenchRow {
            config: "astar-ff-m1".into(),
            attempted: 200,
            solved: 137,
            valid: 137,
            classified: 137,
            optimal: 136,
            unknown: 0,
            optimal_pct: Some(100.0 * 136.0 / 137.0),
            optimal_pct_attempted: Some(68.0),
            median_expansions: Some(12.0),
            mean_expansions: None,
            mean_wall_s: Some(0.25),
            timeouts: 63,
            memouts: 0,
        }
    }

    #[test]
    fn percent_style() {
        assert_eq!(format_percent(99.270_07), "99.27%");
        assert_eq!(format_percent(100.0), "100%");
        assert_eq!(format_percent(50.5), "50.50%");
        assert_eq!(solved_cell(&row()), "137 (99.27%)");
        assert_eq!(solved_cell(&BenchRow { optimal_pct: None, ..row() }), "137 (N/A)");
    }

    #[test]
    fn one_row_table() {
        let r = report_table(&[row()]);
        assert_eq!(r.text.lines().count(), 2);
        assert!(r.text.contains("137 (99.27%)"));
        let lines: Vec<&str> = r.csv.lines().collect();
        assert_eq!(lines[0], REPORT_SCHEMA);
        assert_eq!(lines.len(), 3);
        assert_eq!(parse_report_csv(&r.csv).unwrap(), vec![row()]);
        assert!(parse_report_csv("config\n").is_err());
    }

    #[test]
    fn results_csv_header_and_round_trip() {
        let rows = vec![
            ResultRow {
                config: "c".into(),
                instance: "d1-n01-00".into(),
                depth: 1,
                status: SearchStatus::Solved,
                plan_len: Some(1),
                optimal_len: Some(1),
                is_optimal: Some(true),
                expansions: 1,
                generated: 12,
                peak_nodes: 13,
                wall_s: 0.001,
            },
            ResultRow {
                config: "c".into(),
                instance: "d1-n20-09".into(),
                depth: 20,
                status: SearchStatus::Timeout,
                plan_len: None,
                optimal_len: None,
                is_optimal: None,
                expansions: 9,
                generated: 99,
                peak_nodes: 100,
                wall_s: 60.0,
            },
        ];
        let text = results_to_csv(&rows);
        assert_eq!(text.lines().next().unwrap(), RESULTS_HEADER);
        assert!(text.contains("d1-n20-09,20,TIMEOUT,,,,9"));
        let back: Vec<ResultRow> = csv::Reader::from_reader(text.as_bytes()).deserialize().collect::<Result<_, _>>().unwrap();
        assert_eq!(back, rows);
        assert_eq!(results_to_csv(&[]).trim_end(), RESULTS_HEADER);
    }
}
