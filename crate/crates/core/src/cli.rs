//! Command-line surface.
//!
//! Exit codes: 0 success, 1 a verification found violations, 2 usage or input error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::enumerate::{gen_class, ClassSpec, Family};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::report::{write_jsonl, write_records, DistributionRow, Format, RecordRow};
use crate::sigma::sigma_distribution_bruteforce;
use crate::verify::{extremal_scan, Claim, ScanConfig, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sigma-ratio",
    version,
    about = "Exact σ₀, σ₁ and Q = σ₁/σ₀ for small graphs"
)]
struct Cli {
    /// Worker threads for scans (0 = all cores). Output order does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Read graph6 lines and emit σ₀, σ₁ and Q for each.
    Compute {
        /// Input file, or `-` for standard input.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Read graph6 lines and emit the full vector of σ_k by subset enumeration.
    Distribution {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Emit one graph6 line per isomorphism class.
    Gen {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        /// Keep only graphs whose maximum degree is exactly this.
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Report the graphs of a class with extreme Q.
    Scan {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long, value_enum)]
        objective: Option<Objective>,
    },
    /// Check a bound exhaustively for every supported order up to --n-max.
    Verify {
        /// One of 3.1 3.2 3.3 3.4 3.5 3.6 4.1 4.2 4.3 4.4 4.5, or `all`.
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Trees,
    Forests,
    Graphs,
    Connected,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Objective {
    Min,
    Max,
}

fn class_spec(class: ClassArg, n: usize, delta: Option<usize>) -> Result<ClassSpec, String> {
    let spec = match (class, delta) {
        (ClassArg::Graphs, Some(d)) => ClassSpec::bounded_degree(n, d),
        (_, Some(_)) => return Err("--delta only applies to --class graphs".to_string()),
        (ClassArg::Trees, None) => ClassSpec::new(Family::Trees, n),
        (ClassArg::Forests, None) => ClassSpec::new(Family::Forests, n),
        (ClassArg::Graphs, None) => ClassSpec::new(Family::AllGraphs, n),
        (ClassArg::Connected, None) => ClassSpec::new(Family::ConnectedGraphs, n),
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn open_input<'a>(path: &str, stdin: &'a mut dyn Read) -> io::Result<Box<dyn BufRead + 'a>> {
    if path == "-" {
        Ok(Box::new(BufReader::new(stdin)))
    } else {
        Ok(Box::new(BufReader::new(File::open(PathBuf::from(path))?)))
    }
}

fn read_graphs(reader: Box<dyn BufRead + '_>) -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| format!("line {}: {e}", i + 1))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_graph6(line.as_bytes()).map_err(|e| format!("line {}: {e}", i + 1))?);
    }
    Ok(out)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage<E: ToString>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs the CLI with explicit streams; returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let cfg = ScanConfig::with_jobs(cli.jobs);
    match cli.command {
        Command::Compute { input, format } => {
            let graphs =
                read_graphs(open_input(&input, stdin).map_err(usage)?).map_err(Failure::Usage)?;
            let rows: Vec<RecordRow> = pool(cli.jobs)
                .map_err(Failure::Usage)?
                .install(|| graphs.par_iter().map(RecordRow::compute).collect());
            write_records(stdout, &rows, format)?;
        }
        Command::Distribution { input } => {
            let graphs =
                read_graphs(open_input(&input, stdin).map_err(usage)?).map_err(Failure::Usage)?;
            let rows = pool(cli.jobs).map_err(Failure::Usage)?.install(|| {
                graphs
                    .par_iter()
                    .map(|g| sigma_distribution_bruteforce(g).map(|d| DistributionRow::new(g, d)))
                    .collect::<Result<Vec<_>, _>>()
            });
            write_jsonl(stdout, &rows.map_err(usage)?)?;
        }
        Command::Gen { class, n, delta } => {
            let spec = class_spec(class, n, delta).map_err(Failure::Usage)?;
            for g in gen_class(&spec).map_err(usage)? {
                writeln!(stdout, "{}", emit_graph6(&g))?;
            }
        }
        Command::Scan {
            class,
            n,
            delta,
            objective,
        } => {
            let spec = class_spec(class, n, delta).map_err(Failure::Usage)?;
            let mut report = extremal_scan(&spec, None, &cfg).map_err(usage)?;
            match objective {
                Some(Objective::Min) => report.max_witness = None,
                Some(Objective::Max) => report.min_witness = None,
                None => {}
            }
            write_jsonl(stdout, &[report])?;
        }
        Command::Verify { theorem, n_max } => {
            let claims: Vec<Claim> = if theorem == "all" {
                Claim::ALL.to_vec()
            } else {
                let claim: Claim = theorem.parse().map_err(Failure::Usage)?;
                let (min, max) = claim.order_range();
                if n_max < min || n_max > max {
                    return Err(Failure::Usage(format!(
                        "{claim} is checked for orders {min}..={max}; --n-max {n_max} is out of range"
                    )));
                }
                vec![claim]
            };
            let mut failed = false;
            for claim in claims {
                let reports = claim.run_up_to(n_max, &cfg).map_err(usage)?;
                write_jsonl(stdout, &reports)?;
                let summary = summarize(claim, &reports);
                failed |= !summary.1;
                writeln!(stderr, "{}", summary.0)?;
            }
            return Ok(if failed { EXIT_VIOLATION } else { EXIT_OK });
        }
    }
    Ok(EXIT_OK)
}

fn summarize(claim: Claim, reports: &[VerificationReport]) -> (String, bool) {
    let ok = reports.iter().all(|r| r.passed);
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    let orders = match (reports.first(), reports.last()) {
        (Some(a), Some(b)) => format!("n={}..={}", a.class.n, b.class.n),
        _ => "no orders in range".to_string(),
    };
    let status = if ok { "PASS" } else { "FAIL" };
    (
        format!("{status} {claim} {orders}: {checked} checked, {violations} violations"),
        ok,
    )
}
