//! Benchmark runner: per-circuit metrics, mean reductions, CSV and JSON.

use std::path::Path;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::Result;
use crate::gen::{generate_ucc, ucc_suite, UccStyle};
use crate::pipeline::{load_circuit, run_pipeline, OracleMode, Pass, Verdict};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub name: String,
    pub width: usize,
    pub g_in: usize,
    pub d_in: usize,
    /// `None` on timeout.
    pub g_out: Option<usize>,
    pub d_out: Option<usize>,
    pub verdict: Option<Verdict>,
    pub seconds: Option<f64>,
}

impl Row {
    pub fn g_reduction(&self) -> Option<f64> {
        self.g_out.map(|g| percent(self.g_in, g))
    }

    pub fn d_reduction(&self) -> Option<f64> {
        self.d_out.map(|d| percent(self.d_in, d))
    }
}

fn percent(before: usize, after: usize) -> f64 {
    if before == 0 {
        0.0
    } else {
        100.0 * (before as f64 - after as f64) / before as f64
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub name: String,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub rows: Vec<Row>,
    pub skipped: Vec<Skipped>,
    /// Means over rows that finished; `None` when none did.
    pub mean_g_reduction: Option<f64>,
    pub mean_d_reduction: Option<f64>,
}

impl Summary {
    pub fn verification_failed(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.verdict == Some(Verdict::Checked { equivalent: false }))
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = xs.collect();
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

/// Runs `passes` on one circuit on a worker thread; a timeout leaves the
/// output cells empty.
pub fn bench_one(
    name: &str,
    c: Circuit,
    passes: &[Pass],
    oracle: OracleMode,
    timeout: Duration,
) -> Row {
    let (g_in, d_in, width) = (c.two_qubit_count(), c.two_qubit_depth(), c.width());
    let (tx, rx) = mpsc::channel();
    let passes = passes.to_vec();
    let owned = name.to_string();
    let start = Instant::now();
    thread::spawn(move || {
        let (out, report) = run_pipeline(&owned, &c, &passes, oracle);
        let _ = tx.send((out, report.verdict));
    });
    let mut row = Row {
        name: name.to_string(),
        width,
        g_in,
        d_in,
        g_out: None,
        d_out: None,
        verdict: None,
        seconds: None,
    };
    if let Ok((out, verdict)) = rx.recv_timeout(timeout) {
        row.g_out = Some(out.two_qubit_count());
        row.d_out = Some(out.two_qubit_depth());
        row.verdict = Some(verdict);
        row.seconds = Some(start.elapsed().as_secs_f64());
    }
    row
}

pub fn summarize(rows: Vec<Row>, skipped: Vec<Skipped>) -> Summary {
    Summary {
        schema: 1,
        mean_g_reduction: mean(rows.iter().filter_map(Row::g_reduction)),
        mean_d_reduction: mean(rows.iter().filter_map(Row::d_reduction)),
        rows,
        skipped,
    }
}

/// Every `*.qasm` and `*.gad` file in `dir`, sorted by name. Unreadable or
/// unparsable files are listed as skipped.
pub fn bench_dir(
    dir: &Path,
    passes: &[Pass],
    oracle: OracleMode,
    timeout: Duration,
) -> Result<Summary> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "qasm" || x == "gad"))
        .collect();
    paths.sort();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for p in paths {
        let name = p.file_name().unwrap().to_string_lossy().into_owned();
        let loaded = std::fs::read_to_string(&p)
            .map_err(crate::error::Error::from)
            .and_then(|t| load_circuit(&t));
        match loaded {
            Ok(c) => rows.push(bench_one(&name, c, passes, oracle, timeout)),
            Err(e) => skipped.push(Skipped {
                name,
                error: e.to_string(),
            }),
        }
    }
    Ok(summarize(rows, skipped))
}

/// `count` generated ladder-style UCC circuits on up to `max_qubits` qubits.
pub fn bench_generated(
    count: usize,
    max_qubits: usize,
    seed: u64,
    passes: &[Pass],
    oracle: OracleMode,
    timeout: Duration,
) -> Summary {
    let rows = ucc_suite(count, max_qubits, seed)
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let c = generate_ucc(e.n_qubits, e.n_terms, e.seed, UccStyle::Ladder);
            bench_one(&format!("ucc-{i:03}"), c, passes, oracle, timeout)
        })
        .collect();
    summarize(rows, Vec::new())
}

fn cell<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv(summary: &Summary, w: impl std::io::Write) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "name",
        "width",
        "g_in",
        "d_in",
        "g_out",
        "d_out",
        "g_red_pct",
        "d_red_pct",
        "verdict",
        "seconds",
    ])?;
    for r in &summary.rows {
        let verdict = match r.verdict {
            Some(Verdict::Checked { equivalent: true }) => "ok",
            Some(Verdict::Checked { equivalent: false }) => "MISMATCH",
            Some(Verdict::SkippedOverCap) => "skipped-over-cap",
            Some(Verdict::SkippedByFlag) => "skipped",
            None => "",
        };
        out.write_record([
            r.name.clone(),
            r.width.to_string(),
            r.g_in.to_string(),
            r.d_in.to_string(),
            cell(r.g_out),
            cell(r.d_out),
            cell(r.g_reduction().map(|x| format!("{x:.1}"))),
            cell(r.d_reduction().map(|x| format!("{x:.1}"))),
            verdict.to_string(),
            cell(r.seconds.map(|x| format!("{x:.3}"))),
        ])?;
    }
    if !summary.rows.is_empty() {
        let mut last = vec![String::new(); 10];
        last[0] = "mean".into();
        last[6] = cell(summary.mean_g_reduction.map(|x| format!("{x:.1}")));
        last[7] = cell(summary.mean_d_reduction.map(|x| format!("{x:.1}")));
        out.write_record(&last)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{golden_h2, parse_passes, standard_pipeline};

    #[test]
    fn golden_row() {
        let passes = parse_passes("detect-resynth,pair-reduce").unwrap();
        let row = bench_one(
            "h2",
            golden_h2(),
            &passes,
            OracleMode::Auto,
            DEFAULT_TIMEOUT,
        );
        assert_eq!(
            (row.g_in, row.d_in, row.g_out, row.d_out),
            (12, 12, Some(6), Some(4))
        );
        assert_eq!(row.verdict, Some(Verdict::Checked { equivalent: true }));
    }

    #[test]
    fn timeouts_leave_blank_cells() {
        let c = generate_ucc(8, 30, 1, UccStyle::Ladder);
        let row = bench_one(
            "slow",
            c,
            &standard_pipeline(),
            OracleMode::On,
            Duration::from_nanos(1),
        );
        assert_eq!(row.g_out, None);
        let s = summarize(vec![row], vec![]);
        let mut buf = Vec::new();
        write_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("slow,8,"));
        assert!(text.lines().nth(1).unwrap().ends_with(",,,,,,"));
        assert!(s.mean_d_reduction.is_none());
    }

    #[test]
    fn empty_corpus() {
        let dir = std::env::temp_dir().join(format!("gadgetopt-empty-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let s = bench_dir(
            &dir,
            &standard_pipeline(),
            OracleMode::Auto,
            DEFAULT_TIMEOUT,
        )
        .unwrap();
        assert!(s.rows.is_empty());
        let mut buf = Vec::new();
        write_csv(&s, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn generated_suite_is_monotone() {
        let s = bench_generated(
            20,
            8,
            7,
            &standard_pipeline(),
            OracleMode::Off,
            DEFAULT_TIMEOUT,
        );
        assert_eq!(s.rows.len(), 20);
        assert!(s.rows.iter().all(|r| r.g_out.unwrap() <= r.g_in));
    }
}
