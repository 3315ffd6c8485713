use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::examples::EXAMPLES;
use super::report::{run, RunOptions, SeedChoice};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub label: String,
    pub example: String,
    pub expected: i64,
    pub computed: Option<i64>,
    pub ped_double_cover_half: Option<i64>,
    pub ped_topological: Option<i64>,
    pub count_xq: Option<usize>,
    pub passed: bool,
    /// Failed checks or the error that stopped the run.
    pub detail: String,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

/// Runs every built-in example and compares against its known value.
pub fn run_suite(seed: u64) -> SuiteReport {
    let rows = EXAMPLES
        .iter()
        .map(|ex| {
            let start = Instant::now();
            let opts = RunOptions {
                example: Some(ex.name.to_string()),
                seed: SeedChoice::Fixed(seed),
                ..RunOptions::default()
            };
            let mut row = SuiteRow {
                label: ex.suite_label.to_string(),
                example: ex.name.to_string(),
                expected: ex.expected_ped,
                computed: None,
                ped_double_cover_half: None,
                ped_topological: None,
                count_xq: None,
                passed: false,
                detail: String::new(),
                elapsed_ms: 0,
            };
            match run(&opts) {
                Ok(report) => {
                    let xq = report.topology.as_ref().map(|t| t.count_xq);
                    let mut problems: Vec<String> = report
                        .consistency
                        .iter()
                        .filter(|(_, ok)| !**ok)
                        .map(|(name, _)| name.clone())
                        .collect();
                    if report.ped_double_cover_half != Some(ex.expected_ped) {
                        problems.push("double cover".into());
                    }
                    if report.ped_topological != Some(ex.expected_ped) {
                        problems.push("topological".into());
                    }
                    if ex.expected_xq.is_some() && xq != ex.expected_xq {
                        problems.push("X∩Q count".into());
                    }
                    row.computed = Some(report.ped_numeric);
                    row.ped_double_cover_half = report.ped_double_cover_half;
                    row.ped_topological = report.ped_topological;
                    row.count_xq = xq;
                    row.passed = problems.is_empty() && report.ped_numeric == ex.expected_ped;
                    row.detail = problems.join(", ");
                }
                Err(e) => row.detail = e.to_string(),
            }
            row.elapsed_ms = start.elapsed().as_millis() as u64;
            row
        })
        .collect();
    SuiteReport { seed, rows }
}

fn cell(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

pub fn format_suite(report: &SuiteReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<14} {:<16} {:>8} {:>8} {:>6} {:>6} {:>5}  result",
        "row", "example", "expected", "computed", "cover", "topo", "X∩Q"
    )
    .unwrap();
    for r in &report.rows {
        writeln!(
            out,
            "{:<14} {:<16} {:>8} {:>8} {:>6} {:>6} {:>5}  {}{}",
            r.label,
            r.example,
            r.expected,
            cell(r.computed),
            cell(r.ped_double_cover_half),
            cell(r.ped_topological),
            r.count_xq.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
            if r.passed { "PASS" } else { "FAIL" },
            if r.detail.is_empty() { String::new() } else { format!(" ({})", r.detail) },
        )
        .unwrap();
    }
    let passed = report.rows.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} rows passed (seed {})", report.rows.len(), report.seed).unwrap();
    out
}
