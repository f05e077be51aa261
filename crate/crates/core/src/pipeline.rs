//! Pass orchestration, rewrite logging and reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::euler::normalize_angle;
use crate::pauli::{commutes, cx_pair_cost, PauliGadget, PauliString};
use crate::peephole::{cancel_inverses, commute_and_cancel, euler_1q, merge_rotations, EulerBasis};
use crate::reduce::{fuse, pair_synth};
use crate::sim::circuits_equivalent;
use crate::synth::{
    aligned_orders, detect_gadgets, resynthesize, synth_ladder, synth_tree_ordered, ChainStrategy,
    GadgetSegment, SegmentKind,
};

/// Widths above this are not checked by the oracle in `auto` mode.
pub const VERIFY_CAP: usize = 10;
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pass {
    DetectResynth,
    PairReduce,
    MergeRotations,
    CancelInverses,
    CommuteCancel,
    Euler1q,
}

impl Pass {
    pub const ALL: [Pass; 6] = [
        Pass::DetectResynth,
        Pass::PairReduce,
        Pass::MergeRotations,
        Pass::CancelInverses,
        Pass::CommuteCancel,
        Pass::Euler1q,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pass::DetectResynth => "detect-resynth",
            Pass::PairReduce => "pair-reduce",
            Pass::MergeRotations => "merge-rotations",
            Pass::CancelInverses => "cancel-inverses",
            Pass::CommuteCancel => "commute-cancel",
            Pass::Euler1q => "euler-1q",
        }
    }

    pub fn apply(self, c: &Circuit) -> Circuit {
        match self {
            Pass::DetectResynth => detect_resynth(c),
            Pass::PairReduce => pair_reduce(c),
            Pass::MergeRotations => merge_rotations(c),
            Pass::CancelInverses => cancel_inverses(c),
            Pass::CommuteCancel => commute_and_cancel(c),
            Pass::Euler1q => euler_1q(c, EulerBasis::Zxz),
        }
    }
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pass> {
        Pass::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::UnknownPass(s.trim().to_string()))
    }
}

pub fn parse_passes(list: &str) -> Result<Vec<Pass>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// detect-resynth, pair-reduce, commute-cancel, merge-rotations,
/// cancel-inverses, euler-1q, twice.
pub fn standard_pipeline() -> Vec<Pass> {
    let once = [
        Pass::DetectResynth,
        Pass::PairReduce,
        Pass::CommuteCancel,
        Pass::MergeRotations,
        Pass::CancelInverses,
        Pass::Euler1q,
    ];
    once.iter().chain(once.iter()).copied().collect()
}

pub fn detect_resynth(c: &Circuit) -> Circuit {
    let segments = detect_gadgets(c);
    let mut out = resynthesize(c.width(), &segments, ChainStrategy::Aligned);
    out.global_phase = c.global_phase;
    out
}

fn tree_cost(g: &PauliGadget) -> usize {
    2 * (g.string.weight().max(1) - 1)
}

/// Fuses each gadget into the latest earlier gadget with the same string when
/// everything in between commutes with it, and drops identity rotations.
fn fuse_run(run: Vec<PauliGadget>, phase: &mut f64) -> Vec<PauliGadget> {
    let mut out: Vec<PauliGadget> = Vec::with_capacity(run.len());
    'next: for g in run {
        for k in (0..out.len()).rev() {
            if let Some(f) = fuse(&out[k], &g) {
                out[k] = f;
                continue 'next;
            }
            if !commutes(&out[k].string, &g.string).unwrap_or(false) {
                break;
            }
        }
        out.push(g);
    }
    out.retain(|g| {
        let a = normalize_angle(g.angle);
        if a.abs() < 1e-12 {
            // P(2 pi n) = (-1)^n
            *phase += std::f64::consts::PI * ((g.angle - a) / std::f64::consts::TAU).round();
            false
        } else {
            true
        }
    });
    out
}

enum Block {
    Raw(Vec<Gate>),
    Run(Vec<PauliGadget>),
}

/// Re-detects gadgets, fuses equal strings across commuting neighbours, and
/// resynthesises neighbouring pairs through their intermediate form when that
/// is cheaper than two trees.
pub fn pair_reduce(c: &Circuit) -> Circuit {
    let mut blocks: Vec<Block> = Vec::new();
    for GadgetSegment { kind, .. } in detect_gadgets(c) {
        match (kind, blocks.last_mut()) {
            (SegmentKind::Gadget(g), Some(Block::Run(run))) => run.push(g),
            (SegmentKind::Gadget(g), _) => blocks.push(Block::Run(vec![g])),
            (SegmentKind::Raw(gs), _) => blocks.push(Block::Raw(gs)),
        }
    }
    let mut out = Circuit::new(c.width());
    out.global_phase = c.global_phase;
    for block in blocks {
        match block {
            Block::Raw(gs) => out.extend_unchecked(gs),
            Block::Run(run) => {
                let mut phase = 0.0;
                let run = fuse_run(run, &mut phase);
                out.global_phase += phase;
                let refs: Vec<&PauliGadget> = run.iter().collect();
                let orders = aligned_orders(&refs);
                let mut i = 0;
                while i < run.len() {
                    if i + 1 < run.len() {
                        let (a, b) = (&run[i], &run[i + 1]);
                        let paired = cx_pair_cost(&a.string, &b.string).unwrap_or(usize::MAX);
                        if paired < tree_cost(a) + tree_cost(b) {
                            let pc = pair_synth(a, b).expect("non-trivial gadgets");
                            out.global_phase += pc.global_phase;
                            out.extend_unchecked(pc.into_gates());
                            i += 2;
                            continue;
                        }
                    }
                    let tc = synth_tree_ordered(&run[i], &orders[i]).expect("non-trivial gadget");
                    out.extend_unchecked(tc.into_gates());
                    i += 1;
                }
            }
        }
    }
    out
}

/// One replacement: gates `window` of the circuit before the pass are
/// replaced by `inserted`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewriteLogEntry {
    pub pass: String,
    pub window: (usize, usize),
    pub removed: Vec<String>,
    pub inserted: Vec<String>,
    #[serde(skip)]
    pub inserted_gates: Vec<Gate>,
    pub phase_delta: f64,
}

/// The smallest window replacement turning `before` into `after`.
pub fn diff(pass: Pass, before: &Circuit, after: &Circuit) -> Option<RewriteLogEntry> {
    let (a, b) = (before.gates(), after.gates());
    let phase_delta = after.global_phase - before.global_phase;
    if a == b && phase_delta == 0.0 {
        return None;
    }
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    let max_suffix = a.len().min(b.len()) - prefix;
    let suffix = a
        .iter()
        .rev()
        .zip(b.iter().rev())
        .take(max_suffix)
        .take_while(|(x, y)| x == y)
        .count();
    let removed = &a[prefix..a.len() - suffix];
    let inserted = &b[prefix..b.len() - suffix];
    Some(RewriteLogEntry {
        pass: pass.name().to_string(),
        window: (prefix, a.len() - suffix),
        removed: removed.iter().map(Gate::to_string).collect(),
        inserted: inserted.iter().map(Gate::to_string).collect(),
        inserted_gates: inserted.to_vec(),
        phase_delta,
    })
}

/// Applies log entries in order to `c`.
pub fn replay(c: &Circuit, log: &[RewriteLogEntry]) -> Circuit {
    let mut gates = c.gates().to_vec();
    let mut phase = c.global_phase;
    for e in log {
        gates.splice(e.window.0..e.window.1, e.inserted_gates.iter().copied());
        phase += e.phase_delta;
    }
    let mut out = c.with_gates(gates);
    out.global_phase = phase;
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub two_qubit_count: usize,
    pub two_qubit_depth: usize,
    pub total_gates: usize,
}

impl Metrics {
    pub fn of(c: &Circuit) -> Metrics {
        Metrics {
            two_qubit_count: c.two_qubit_count(),
            two_qubit_depth: c.two_qubit_depth(),
            total_gates: c.len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PassMetrics {
    pub pass: String,
    #[serde(flatten)]
    pub metrics: Metrics,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Verdict {
    Checked { equivalent: bool },
    SkippedOverCap,
    SkippedByFlag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    On,
    Off,
    Auto,
}

impl FromStr for OracleMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "on" => Ok(OracleMode::On),
            "off" => Ok(OracleMode::Off),
            "auto" => Ok(OracleMode::Auto),
            other => Err(format!(
                "oracle mode must be on, off or auto, not {other:?}"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LogSummary {
    pub entries: usize,
    pub gates_removed: usize,
    pub gates_inserted: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PassReport {
    pub schema: u32,
    pub name: String,
    pub width: usize,
    pub input: Metrics,
    pub passes: Vec<PassMetrics>,
    pub output: Metrics,
    pub verdict: Verdict,
    pub log: LogSummary,
    #[serde(skip)]
    pub entries: Vec<RewriteLogEntry>,
}

pub fn run_pipeline(
    name: &str,
    input: &Circuit,
    passes: &[Pass],
    oracle: OracleMode,
) -> (Circuit, PassReport) {
    let mut c = input.clone();
    let mut per_pass = Vec::with_capacity(passes.len());
    let mut entries = Vec::new();
    for &pass in passes {
        let start = Instant::now();
        let next = pass.apply(&c);
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        entries.extend(diff(pass, &c, &next));
        c = next;
        per_pass.push(PassMetrics {
            pass: pass.name().to_string(),
            metrics: Metrics::of(&c),
            wall_ms,
        });
    }
    let cap = match oracle {
        OracleMode::Off => 0,
        OracleMode::Auto => VERIFY_CAP,
        OracleMode::On => crate::sim::ORACLE_LIMIT,
    };
    let verdict = if oracle == OracleMode::Off {
        Verdict::SkippedByFlag
    } else if input.width() > cap {
        Verdict::SkippedOverCap
    } else {
        Verdict::Checked {
            equivalent: circuits_equivalent(input, &c, VERIFY_TOL).unwrap_or(false),
        }
    };
    let log = LogSummary {
        entries: entries.len(),
        gates_removed: entries.iter().map(|e| e.removed.len()).sum(),
        gates_inserted: entries.iter().map(|e| e.inserted.len()).sum(),
    };
    let report = PassReport {
        schema: 1,
        name: name.to_string(),
        width: input.width(),
        input: Metrics::of(input),
        passes: per_pass,
        output: Metrics::of(&c),
        verdict,
        log,
        entries,
    };
    (c, report)
}

/// Gadget list text: `width=N`, then `angle pauli-string` per line. Blank
/// lines and `#` comments are skipped.
pub fn parse_gadget_list(text: &str) -> Result<(usize, Vec<PauliGadget>)> {
    let mut width = None;
    let mut gadgets = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let perr = |column: usize, message: String| Error::Parse {
            line: ln + 1,
            column,
            message,
        };
        let Some(w) = width else {
            let n = line
                .strip_prefix("width=")
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| perr(1, "expected width=N".into()))?;
            width = Some(n);
            continue;
        };
        let (angle, string) = line
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| perr(1, "expected `angle pauli-string`".into()))?;
        let angle = crate::qasm::parse_angle(angle.trim()).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => perr(column, message),
            other => other,
        })?;
        let col = raw.find(string).map_or(1, |i| i + 1);
        let string: PauliString = string
            .parse()
            .map_err(|e: Error| perr(col, e.to_string()))?;
        if string.len() != w {
            return Err(perr(
                col,
                format!("string length {} != width {w}", string.len()),
            ));
        }
        gadgets.push(PauliGadget::new(angle, string));
    }
    let width = width.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty gadget list".into(),
    })?;
    Ok((width, gadgets))
}

/// Reads QASM, or a gadget list (synthesised as ladders) when the first
/// meaningful line starts with `width=`.
pub fn load_circuit(text: &str) -> Result<Circuit> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .find(|l| !l.is_empty());
    if first.is_some_and(|l| l.starts_with("width=")) {
        let (width, gadgets) = parse_gadget_list(text)?;
        let mut c = Circuit::new(width);
        for g in &gadgets {
            match synth_ladder(g) {
                Ok(part) => c.append(&part)?,
                Err(_) => c.global_phase -= g.angle / 2.0,
            }
        }
        Ok(c)
    } else {
        crate::qasm::parse(text)
    }
}

/// The two-gadget 4-qubit circuit `P(0.3, YYXY) ; P(0.7, XYYY)` in ladder
/// form: 12 CX, depth 12.
pub fn golden_h2() -> Circuit {
    crate::qasm::parse(GOLDEN_H2_QASM).expect("bundled circuit parses")
}

pub const GOLDEN_H2_QASM: &str = include_str!("../data/h2.qasm");
