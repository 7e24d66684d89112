use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Report;

/// Exact verification of r-matrices, co-brackets and classical doubles.
///
/// Exit status: 0 verified, 1 verification failed, 2 usage or parse error.
#[derive(Parser)]
#[command(name = "quasirat", version)]
struct Cli {
    /// Emit a JSON report on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the classical Yang-Baxter equation for an r-matrix.
    Verify(VerifyArgs),
    /// Truncated checks on the classical doubles.
    Double(DoubleArgs),
    /// Co-bracket of a g[u] element under a catalog r-matrix.
    Cobracket(CobracketArgs),
    /// Determine the Casimir normalisation and the Drinfeld-Jimbo orientation.
    Calibrate,
    /// Apply polynomial gauge transformations.
    Gauge(GaugeArgs),
    /// Constant r-matrices from quasi-Frobenius data.
    Frobenius(FrobeniusArgs),
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Catalog name (gamma1..gamma4, q0, q1, q2, eq5_rational).
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    builtin: Option<String>,
    /// r-matrix document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Rank parameter of sl(n) for builtins.
    #[arg(long, default_value_t = 2)]
    n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Lagrangian,
    Dualbasis,
    Wk,
    Lemma1,
    Quotient,
    Transversal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinSubspace {
    /// g[[u^-1]] ⊕ εg
    Pstar,
    /// the embedded copy of g[u]
    Ip,
}

#[derive(Args)]
pub struct DoubleArgs {
    #[arg(long, value_enum)]
    check: Check,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Index of d_k; every valid k when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// Series order for dualbasis (default 12); otherwise T gives the window [-2T, T] (default 4).
    #[arg(long, allow_negative_numbers = true)]
    trunc: Option<i64>,
    /// Subspace fixture for the transversal check.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Builtin subspace for the transversal check.
    #[arg(long, value_enum, default_value = "pstar")]
    subspace: BuiltinSubspace,
    /// N in the tail condition W ⊇ u^-N g[[u^-1]].
    #[arg(long, default_value_t = 0)]
    tail: i64,
}

#[derive(Args)]
pub struct CobracketArgs {
    /// Catalog r-matrix defining the co-bracket.
    #[arg(long)]
    gamma: String,
    /// Element as BASIS:u^D terms, e.g. "e:u^2 - h:u".
    #[arg(long, allow_hyphen_values = true)]
    element: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Also check the co-Jacobi identity on the element.
    #[arg(long)]
    axioms: bool,
}

#[derive(Args)]
pub struct GaugeArgs {
    /// Product of unip(root, degree, scalar) factors; seeded random draws when omitted.
    #[arg(long)]
    p: Option<String>,
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    count: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinPair {
    /// span{e, h} with B(e, h) = 1
    Borel,
    /// sl(2) with B(x, y) = K(f, [x, y])
    Killing,
}

#[derive(Args)]
pub struct FrobeniusArgs {
    /// Fixture with `algebra`, `L = [...]` and `B = [[...]]`.
    #[arg(long, conflicts_with = "builtin")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<BuiltinPair>,
    /// Also check the pair against the parabolic P_k.
    #[arg(long)]
    k: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => commands::verify(&a),
        Command::Double(a) => commands::double(&a),
        Command::Cobracket(a) => commands::cobracket(&a),
        Command::Calibrate => commands::calibrate(),
        Command::Gauge(a) => commands::gauge(&a),
        Command::Frobenius(a) => commands::frobenius(&a),
    };
    match outcome {
        Ok(report) => emit(&report, cli.json),
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Failed { command, message }) => {
            let mut r = Report::new(&command);
            r.verdict("error", false, message);
            emit(&r, cli.json)
        }
    }
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
