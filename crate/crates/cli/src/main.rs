//! Command-line front end: compute lattice parameter reports for one or
//! more degrees and optionally verify them against the built-in
//! closed-form expectations.
//!
//! Exit codes: 0 success / all match; 2 usage error; 3 verification
//! mismatch (or the two computation paths disagreeing); 4 search budget or
//! span/bound limit exceeded; 5 basis cache mismatch; 1 anything else.

mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fermat_lattices::Error;
use report::{analyze, AnalyzeOptions, LatticeReport, PathsUsed};

const EXIT_MISMATCH: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_CACHE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "fermat-lattices",
    about = "Exact parameters of function-field lattices from Fermat curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute parameter reports.
    Analyze(RunArgs),
    /// Compute reports with both paths and exit nonzero on any mismatch
    /// with the built-in expected values.
    Verify(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PathsArg {
    Enumeration,
    Coset,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct RunArgs {
    /// Degree of the curve: a single value `5` or an inclusive range `4..7`.
    #[arg(long)]
    n: String,

    /// Computation paths; defaults to both where span enumeration permits.
    #[arg(long, value_enum)]
    paths: Option<PathsArg>,

    /// Squared-norm bound for the spectrum (default 6n).
    #[arg(long)]
    bound: Option<u64>,

    /// Enumeration node budget.
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,

    /// Directory holding cached bases; created on demand.
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Include the minimal vectors in the report.
    #[arg(long)]
    capture_minimal: bool,

    /// Largest accepted degree.
    #[arg(long, default_value_t = 10)]
    max_n: usize,
}

fn parse_degrees(input: &str, max_n: usize) -> Result<Vec<usize>, String> {
    let parse_one = |s: &str| -> Result<usize, String> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad degree {s:?}"))
    };
    let degrees = match input.split_once("..") {
        None => vec![parse_one(input)?],
        Some((lo, hi)) => {
            let lo = parse_one(lo)?;
            let hi = parse_one(hi.strip_prefix('=').unwrap_or(hi))?;
            if lo > hi {
                return Err(format!("empty range {input:?}"));
            }
            (lo..=hi).collect()
        }
    };
    for &n in &degrees {
        if n < 3 || n > max_n {
            return Err(format!(
                "degree {n} out of range: this tool accepts 3 <= n <= {max_n} \
                 (raise --max-n to go further)"
            ));
        }
    }
    Ok(degrees)
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. }
        | Error::SpanTooLarge { .. }
        | Error::SpectrumBoundTooLarge { .. } => EXIT_BUDGET,
        Error::CacheMismatch(_) => EXIT_CACHE,
        _ => 1,
    }
}

fn run_reports(args: &RunArgs, force_both: bool) -> Result<Vec<LatticeReport>, ExitCode> {
    let degrees = parse_degrees(&args.n, args.max_n).map_err(|msg| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })?;
    let opts = AnalyzeOptions {
        paths: if force_both {
            Some(PathsUsed::Both)
        } else {
            args.paths.map(|p| match p {
                PathsArg::Enumeration => PathsUsed::Enumeration,
                PathsArg::Coset => PathsUsed::Coset,
                PathsArg::Both => PathsUsed::Both,
            })
        },
        bound_sq: args.bound,
        node_budget: args.budget,
        cache_dir: args.cache_dir.clone(),
        capture_minimal: args.capture_minimal,
        max_n: args.max_n,
    };
    let mut reports = Vec::with_capacity(degrees.len());
    for n in degrees {
        match analyze(n, &opts) {
            Ok(report) => reports.push(report),
            Err(err) => {
                eprintln!("error: n = {n}: {err}");
                return Err(ExitCode::from(exit_for(&err)));
            }
        }
    }
    Ok(reports)
}

fn print_reports(reports: &[LatticeReport], format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(reports).expect("serializable")
            )
        }
        Format::Csv => {
            println!("{}", render::CSV_HEADER);
            for r in reports {
                println!("{}", render::csv_row(r));
            }
        }
        Format::Table => {
            for r in reports {
                print!("{}", render::table(r));
            }
        }
    }
}

fn cmd_analyze(args: &RunArgs) -> ExitCode {
    let reports = match run_reports(args, false) {
        Ok(r) => r,
        Err(code) => return code,
    };
    print_reports(&reports, args.format);
    if reports.iter().any(|r| !r.internally_consistent()) {
        eprintln!("error: the two computation paths disagree");
        return ExitCode::from(EXIT_MISMATCH);
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: &RunArgs) -> ExitCode {
    let reports = match run_reports(args, true) {
        Ok(r) => r,
        Err(code) => return code,
    };
    print_reports(&reports, args.format);
    let mut mismatched = false;
    for r in &reports {
        let consistent = r.internally_consistent();
        let matches = r.match_flags.all_match();
        if !consistent {
            eprintln!("verify n = {}: the two computation paths disagree", r.n);
        }
        if !matches {
            let f = &r.match_flags;
            let mut bad = Vec::new();
            if !f.rank {
                bad.push(format!("rank {} != {}", r.rank, r.expected.rank));
            }
            if !f.vol_sq {
                bad.push(format!("vol_sq {} != {}", r.vol_sq, r.expected.vol_sq));
            }
            if !f.class_invariants {
                bad.push("class_invariants".into());
            }
            if !f.min_norm_sq {
                bad.push(format!(
                    "min_norm_sq {} != {}",
                    r.min_norm_sq, r.expected.min_norm_sq
                ));
            }
            if f.kissing == Some(false) {
                bad.push(format!(
                    "kissing {} != {}",
                    r.kissing,
                    r.expected.kissing.unwrap()
                ));
            }
            if f.second_min_sq == Some(false) {
                bad.push(format!(
                    "second_min_sq {:?} != {}",
                    r.second_min_sq,
                    r.expected.second_min_sq.unwrap()
                ));
            }
            if f.well_rounded == Some(false) {
                bad.push(format!(
                    "well_rounded {:?} != {}",
                    r.well_rounded, r.expected.well_rounded
                ));
            }
            if f.minimal_vectors == Some(false) {
                bad.push("minimal_vectors".into());
            }
            eprintln!("verify n = {}: MISMATCH: {}", r.n, bad.join("; "));
        }
        if matches && consistent {
            eprintln!("verify n = {}: ok", r.n);
        }
        mismatched |= !matches || !consistent;
    }
    if mismatched {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
    }
}
