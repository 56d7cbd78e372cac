//! Command-line front end for the toepcirc toolkit.
//!
//! Exit codes: 0 on success; 2 on usage errors (malformed flags or argument
//! grammars, reported on standard error); 1 on domain errors (singular
//! symbols, cap violations, oversized rotation constants, unreadable data),
//! reported as one machine-readable JSON object `{"error": code, "detail":
//! message}` on standard output. Identical argv always produces
//! byte-identical output.

mod grammar;
mod render;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grammar::{help_text, load_rhs_file, parse_n_list, parse_rhs, parse_symbol, RhsSpec};
use toepcirc::analysis::{
    convergence_sweep, decompose_frobenius_error, eigenvalue_matching, rate_check_banded_rhs,
    rate_check_pseries, sweep_to_csv, ErrorDecomposition, DEFAULT_RATE_SEED,
};
use toepcirc::emulator::{Amplification, EmulationConfig, OracleSource};
use toepcirc::textfmt::json_string;
use toepcirc::{CirculantMatrix, Complex64, Error, ToeplitzMatrix};

#[derive(Parser)]
#[command(
    name = "toepcirc",
    version,
    about = "Structured solver, emulator, and convergence lab for Toeplitz systems",
    after_help = help_text()
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve T(f) x = b through the associated circulant (JSON report)
    Solve(SolveArgs),
    /// Emulate the quantum solver pipeline at statevector level (JSON report)
    Emulate(EmulateArgs),
    /// Sweep solution errors over a list of orders (CSV or JSON)
    Converge(ConvergeArgs),
    /// Split the circulant-substitution error into sampling and wrap terms
    Decompose(DecomposeArgs),
    /// Fit measured errors against reference decay envelopes (JSON report)
    Rates(RatesArgs),
    /// Compare sorted Toeplitz and circulant spectra per order
    Eigens(EigensArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
#[command(after_help = help_text())]
struct SolveArgs {
    /// Generating symbol (see SYMBOL GRAMMAR)
    #[arg(long)]
    symbol: String,
    /// Matrix order
    #[arg(long)]
    n: usize,
    /// Right-hand side (see RHS GRAMMAR)
    #[arg(long)]
    rhs: String,
    /// Report format (solve supports only json)
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output_path: Option<String>,
}

#[derive(Args)]
#[command(after_help = help_text())]
struct EmulateArgs {
    /// Generating symbol (see SYMBOL GRAMMAR)
    #[arg(long)]
    symbol: String,
    /// Matrix order; must be a power of two
    #[arg(long)]
    n: usize,
    /// Right-hand side (see RHS GRAMMAR)
    #[arg(long)]
    rhs: String,
    /// Rotation constant override (default: smallest admissible oracle value)
    #[arg(long)]
    m: Option<f64>,
    /// Fixed-point bits for the oracle value register (0 = exact)
    #[arg(long, default_value_t = 0)]
    bits: u32,
    /// Apply this many amplitude-amplification rounds instead of the
    /// analytic repeat estimate
    #[arg(long)]
    grover: Option<u32>,
    /// Oracle source: sample the symbol, or rebuild it from its coefficient
    /// head first
    #[arg(long, value_enum, default_value_t = OracleMode::Symbol)]
    mode: OracleMode,
    /// Report format (emulate supports only json)
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output_path: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    /// Oracle values are symbol samples f(2*pi*j/n)
    Symbol,
    /// Oracle values come from the truncated symbol rebuilt from n
    /// coefficients, rescaled to unit estimated maximum
    Wiener,
}

#[derive(Args)]
#[command(after_help = help_text())]
struct ConvergeArgs {
    /// Generating symbol (see SYMBOL GRAMMAR)
    #[arg(long)]
    symbol: String,
    /// Orders to sweep (see N-LIST GRAMMAR)
    #[arg(long)]
    n_list: String,
    /// Right-hand side family; file rhs is not available for sweeps
    #[arg(long)]
    rhs: String,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output_path: Option<String>,
}

#[derive(Args)]
#[command(after_help = help_text())]
struct DecomposeArgs {
    /// Generating symbol (see SYMBOL GRAMMAR)
    #[arg(long)]
    symbol: String,
    /// Single order (exclusive with --n-list)
    #[arg(long)]
    n: Option<usize>,
    /// Orders to sweep (see N-LIST GRAMMAR; exclusive with --n)
    #[arg(long)]
    n_list: Option<String>,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output_path: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RateCheck {
    /// Power-decay coefficients against the ln(n)*log2(n)/n envelope
    Pseries,
    /// Banded right-hand side against the 1/sqrt(n) envelope
    Banded,
}

#[derive(Args)]
#[command(after_help = help_text())]
struct RatesArgs {
    /// Which rate check to run
    #[arg(long, value_enum)]
    check: RateCheck,
    /// Orders to sweep (see N-LIST GRAMMAR)
    #[arg(long)]
    n_list: String,
    /// Coefficient decay exponent (pseries check only)
    #[arg(long)]
    p: Option<f64>,
    /// Zeroth coefficient (pseries check only)
    #[arg(long)]
    t0: Option<f64>,
    /// Seed for the random right-hand side (pseries check only)
    #[arg(long)]
    seed: Option<u64>,
    /// Generating symbol (banded check only)
    #[arg(long)]
    symbol: Option<String>,
    /// Right-hand-side window half-width (banded check only)
    #[arg(long)]
    half_width: Option<usize>,
    /// Report format (rates supports only json)
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output_path: Option<String>,
}

#[derive(Args)]
#[command(after_help = help_text())]
struct EigensArgs {
    /// Generating symbol (see SYMBOL GRAMMAR)
    #[arg(long)]
    symbol: String,
    /// Single order (exclusive with --n-list)
    #[arg(long)]
    n: Option<usize>,
    /// Orders to sweep (see N-LIST GRAMMAR; exclusive with --n)
    #[arg(long)]
    n_list: Option<String>,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output_path: Option<String>,
}

/// Failures after successful flag parsing, mapped to the exit-code policy.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        Failure::Domain(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Emulate(args) => run_emulate(args),
        Command::Converge(args) => run_converge(args),
        Command::Decompose(args) => run_decompose(args),
        Command::Rates(args) => run_rates(args),
        Command::Eigens(args) => run_eigens(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(err)) => {
            println!(
                "{{\"error\":{},\"detail\":{}}}",
                json_string(err.code()),
                json_string(&err.to_string())
            );
            ExitCode::from(1)
        }
    }
}

/// Writes a finished report to the requested destination. Reports that do
/// not already end in a newline get one on standard output.
fn emit(report: String, output_path: Option<&str>) -> Result<(), Failure> {
    match output_path {
        Some(path) => {
            let mut data = report;
            if !data.ends_with('\n') {
                data.push('\n');
            }
            fs::write(path, data).map_err(|e| {
                Failure::Domain(Error::InvalidArgument(format!(
                    "cannot write report to {path}: {e}"
                )))
            })
        }
        None => {
            if report.ends_with('\n') {
                print!("{report}");
            } else {
                println!("{report}");
            }
            Ok(())
        }
    }
}

fn require_json(output: OutputFormat, subcommand: &str) -> Result<(), Failure> {
    if output == OutputFormat::Json {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{subcommand} supports only --output json"
        )))
    }
}

/// Materializes a right-hand side at order `n`; file contents must match the
/// order exactly.
fn build_rhs(spec: &RhsSpec, n: usize) -> Result<Vec<Complex64>, Failure> {
    match spec {
        RhsSpec::Kind(kind) => Ok(kind.build(n)?),
        RhsSpec::File(path) => {
            let b = load_rhs_file(path)?;
            if b.len() != n {
                return Err(Failure::Domain(Error::DimensionMismatch {
                    left: n,
                    right: b.len(),
                }));
            }
            Ok(b)
        }
    }
}

fn run_solve(args: SolveArgs) -> Result<(), Failure> {
    require_json(args.output, "solve")?;
    let f = parse_symbol(&args.symbol)?;
    let rhs = parse_rhs(&args.rhs).map_err(Failure::Usage)?;
    let b = build_rhs(&rhs, args.n)?;
    let circulant = CirculantMatrix::associated(&f, args.n)?;
    let x_star = circulant.solve(&b)?;
    let product = circulant.matvec(&x_star)?;
    let defect: f64 = product
        .iter()
        .zip(b.iter())
        .map(|(got, want)| (got - want).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let b_norm: f64 = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let report = render::solve_json(&f.label(), args.n, &rhs.label(), &x_star, defect / b_norm);
    emit(report, args.output_path.as_deref())
}

fn run_emulate(args: EmulateArgs) -> Result<(), Failure> {
    require_json(args.output, "emulate")?;
    if !args.n.is_power_of_two() {
        return Err(Failure::Usage(format!(
            "emulate requires a power-of-two order, got {}",
            args.n
        )));
    }
    let f = parse_symbol(&args.symbol)?;
    let rhs = parse_rhs(&args.rhs).map_err(Failure::Usage)?;
    let b = build_rhs(&rhs, args.n)?;
    let source = match args.mode {
        OracleMode::Symbol => OracleSource::Symbol(f),
        OracleMode::Wiener => OracleSource::Sequence(f.coefficients_one_sided(args.n)),
    };
    let config = EmulationConfig {
        m: args.m,
        value_register_bits: args.bits,
        amplification: match args.grover {
            Some(k) => Amplification::Grover(k),
            None => Amplification::Analytic,
        },
    };
    let report = toepcirc::run_pipeline(&b, &source, &config)?;
    emit(report.to_json(), args.output_path.as_deref())
}

fn run_converge(args: ConvergeArgs) -> Result<(), Failure> {
    let f = parse_symbol(&args.symbol)?;
    let n_list = parse_n_list(&args.n_list).map_err(Failure::Usage)?;
    let rhs = match parse_rhs(&args.rhs).map_err(Failure::Usage)? {
        RhsSpec::Kind(kind) => kind,
        RhsSpec::File(_) => {
            return Err(Failure::Usage(
                "converge sweeps need a generator rhs (basis, random, or banded), not file".into(),
            ))
        }
    };
    let rows = convergence_sweep(&f, &n_list, &rhs);
    let report = match args.output {
        OutputFormat::Csv => sweep_to_csv(&rows),
        OutputFormat::Json => render::converge_json(&f.label(), &rows),
    };
    emit(report, args.output_path.as_deref())
}

/// Resolves the `--n` / `--n-list` pair shared by decompose and eigens.
fn orders_from(n: Option<usize>, n_list: Option<&str>) -> Result<Vec<usize>, Failure> {
    match (n, n_list) {
        (Some(n), None) => Ok(vec![n]),
        (None, Some(spec)) => parse_n_list(spec).map_err(Failure::Usage),
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--n and --n-list are mutually exclusive".into(),
        )),
        (None, None) => Err(Failure::Usage("one of --n or --n-list is required".into())),
    }
}

fn run_decompose(args: DecomposeArgs) -> Result<(), Failure> {
    let f = parse_symbol(&args.symbol)?;
    let orders = orders_from(args.n, args.n_list.as_deref())?;
    let mut rows: Vec<(usize, ErrorDecomposition)> = Vec::with_capacity(orders.len());
    for n in orders {
        rows.push((n, decompose_frobenius_error(&f, n)?));
    }
    let report = match args.output {
        OutputFormat::Csv => render::decompose_csv(&rows),
        OutputFormat::Json => render::decompose_json(&f.label(), &rows),
    };
    emit(report, args.output_path.as_deref())
}

fn run_rates(args: RatesArgs) -> Result<(), Failure> {
    require_json(args.output, "rates")?;
    let n_list = parse_n_list(&args.n_list).map_err(Failure::Usage)?;
    let fit = match args.check {
        RateCheck::Pseries => {
            if args.symbol.is_some() || args.half_width.is_some() {
                return Err(Failure::Usage(
                    "--symbol and --half-width apply only to --check banded".into(),
                ));
            }
            let p = args
                .p
                .ok_or_else(|| Failure::Usage("--check pseries requires --p".into()))?;
            let t0 = args
                .t0
                .ok_or_else(|| Failure::Usage("--check pseries requires --t0".into()))?;
            let seed = args.seed.unwrap_or(DEFAULT_RATE_SEED);
            rate_check_pseries(p, t0, &n_list, seed)?
        }
        RateCheck::Banded => {
            if args.p.is_some() || args.t0.is_some() || args.seed.is_some() {
                return Err(Failure::Usage(
                    "--p, --t0, and --seed apply only to --check pseries".into(),
                ));
            }
            let symbol = args
                .symbol
                .as_deref()
                .ok_or_else(|| Failure::Usage("--check banded requires --symbol".into()))?;
            let half_width = args
                .half_width
                .ok_or_else(|| Failure::Usage("--check banded requires --half-width".into()))?;
            let f = parse_symbol(symbol)?;
            rate_check_banded_rhs(&f, half_width, &n_list)?
        }
    };
    emit(fit.to_json(), args.output_path.as_deref())
}

fn run_eigens(args: EigensArgs) -> Result<(), Failure> {
    let f = parse_symbol(&args.symbol)?;
    let orders = orders_from(args.n, args.n_list.as_deref())?;
    let mut rows: Vec<(usize, f64)> = Vec::with_capacity(orders.len());
    for n in orders {
        let toeplitz = ToeplitzMatrix::from_symbol(&f, n)?;
        let circulant = CirculantMatrix::associated(&f, n)?;
        rows.push((n, eigenvalue_matching(&toeplitz, &circulant)?));
    }
    let report = match args.output {
        OutputFormat::Csv => render::eigens_csv(&rows),
        OutputFormat::Json => render::eigens_json(&f.label(), &rows),
    };
    emit(report, args.output_path.as_deref())
}
