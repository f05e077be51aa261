use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use gadgetopt::bench::{bench_dir, bench_generated, write_csv, Summary};
use gadgetopt::pipeline::{
    load_circuit, parse_passes, run_pipeline, standard_pipeline, OracleMode, Verdict,
};
use gadgetopt::qasm::emit;
use gadgetopt::Error;

const EXIT_PARSE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "gadgetopt", version, about = "Pauli-gadget circuit optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize one QASM file or gadget list.
    Optimize {
        input: PathBuf,
        /// Comma-separated pass names; defaults to the standard pipeline.
        #[arg(long)]
        passes: Option<String>,
        /// Write optimized QASM here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the JSON pass report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        oracle: OracleMode,
    },
    /// Benchmark a corpus directory or a generated suite.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of .qasm / .gad files.
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    dir: Option<PathBuf>,
    /// Generated UCC suite: COUNT,MAX_QUBITS,SEED.
    #[arg(long, value_name = "COUNT,MAX_QUBITS,SEED")]
    gen: Option<String>,
    #[arg(long)]
    passes: Option<String>,
    /// Per-circuit timeout in seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value = "auto")]
    oracle: OracleMode,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn passes_or_default(list: Option<&str>) -> Result<Vec<gadgetopt::pipeline::Pass>, Error> {
    match list {
        Some(l) => parse_passes(l),
        None => Ok(standard_pipeline()),
    }
}

fn optimize(
    input: PathBuf,
    passes: Option<String>,
    out: Option<PathBuf>,
    report: Option<PathBuf>,
    oracle: OracleMode,
) -> ExitCode {
    let passes = match passes_or_default(passes.as_deref()) {
        Ok(p) => p,
        Err(e) => return fail(1, e),
    };
    let text = match fs::read_to_string(&input) {
        Ok(t) => t,
        Err(e) => return fail(1, format!("{}: {e}", input.display())),
    };
    let circuit = match load_circuit(&text) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", input.display())),
    };
    let name = input
        .file_name()
        .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    let (optimized, rep) = run_pipeline(&name, &circuit, &passes, oracle);
    let qasm = emit(&optimized);
    let written = match &out {
        Some(p) => fs::write(p, &qasm),
        None => {
            print!("{qasm}");
            Ok(())
        }
    };
    if let Err(e) = written {
        return fail(1, e);
    }
    if let Some(p) = &report {
        let json = serde_json::to_string_pretty(&rep).expect("report serializes");
        if let Err(e) = fs::write(p, json) {
            return fail(1, e);
        }
    }
    eprintln!(
        "{name}: cx {} -> {}, depth {} -> {}, oracle {:?}",
        rep.input.two_qubit_count,
        rep.output.two_qubit_count,
        rep.input.two_qubit_depth,
        rep.output.two_qubit_depth,
        rep.verdict
    );
    if rep.verdict == (Verdict::Checked { equivalent: false }) {
        return fail(
            EXIT_VERIFY,
            "optimized circuit is not equivalent to the input",
        );
    }
    ExitCode::SUCCESS
}

fn parse_gen(text: &str) -> Option<(usize, usize, u64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [n, m, s] => Some((n.parse().ok()?, m.parse().ok()?, s.parse().ok()?)),
        _ => None,
    }
}

fn bench(args: BenchArgs) -> ExitCode {
    let passes = match passes_or_default(args.passes.as_deref()) {
        Ok(p) => p,
        Err(e) => return fail(1, e),
    };
    let timeout = Duration::from_secs_f64(args.timeout.max(0.0));
    let summary: Summary = if let Some(text) = &args.gen {
        let Some((count, max_qubits, seed)) = parse_gen(text) else {
            return fail(
                1,
                format!("--gen expects COUNT,MAX_QUBITS,SEED, got {text:?}"),
            );
        };
        bench_generated(count, max_qubits, seed, &passes, args.oracle, timeout)
    } else {
        let dir = args.dir.expect("clap enforces dir or --gen");
        match bench_dir(&dir, &passes, args.oracle, timeout) {
            Ok(s) => s,
            Err(e) => return fail(1, format!("{}: {e}", dir.display())),
        }
    };
    for s in &summary.skipped {
        eprintln!("skipped {}: {}", s.name, s.error);
    }
    let csv_result = match &args.csv {
        Some(p) => fs::File::create(p)
            .map_err(|e| e.to_string())
            .and_then(|f| write_csv(&summary, f).map_err(|e| e.to_string())),
        None => write_csv(&summary, std::io::stdout()).map_err(|e| e.to_string()),
    };
    if let Err(e) = csv_result {
        return fail(1, e);
    }
    if let Some(p) = &args.json {
        let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
        if let Err(e) = fs::write(p, json) {
            return fail(1, e);
        }
    }
    if summary.verification_failed() {
        return fail(
            EXIT_VERIFY,
            "at least one optimized circuit failed verification",
        );
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Optimize {
            input,
            passes,
            out,
            report,
            oracle,
        } => optimize(input, passes, out, report, oracle),
        Command::Bench(args) => bench(args),
    }
}
