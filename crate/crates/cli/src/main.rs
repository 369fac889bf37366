//! Command-line front end: exact polynomial queries, inverse-erf
//! derivatives, asymptotic estimates, saddle solves, figure CSVs and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical-convergence failure.

mod figures;
mod output;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use inverf_poly::asymptotics::{
    phi, psi1, psi1_refined, psi2, psi3, psi4, saddle_regime_approx, saddle_series_large_x,
    solve_saddle, RegimeEstimate, SaddleBranch, SaddleRegime,
};
use inverf_poly::poly::{inverf_deriv_at_zero, poly_sequence, Polynomial, SEQUENCE_CEILING};
use inverf_poly::Error as CoreError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::figures::{FigureId, GridSpec};
use crate::output::{fmt_float, fmt_float17, OutputFormat};

#[derive(Parser)]
#[command(
    name = "inverf-poly",
    about = "Polynomials behind the derivatives of the inverse error function: exact values, asymptotic estimates, figure data, verification",
    version
)]
struct Cli {
    /// Output path for commands that write files (default: <figure>.csv)
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Grid override as lo:hi:count
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = GridSpec::parse_arg)]
    grid: Option<GridSpec>,

    /// Family index override
    #[arg(long, global = true)]
    n: Option<u64>,

    /// Table format for figure output
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print coefficients or an exact rational value of P_n
    Poly(PolyArgs),
    /// Exact n-th derivative of inverf at 0 (symbolic and float form)
    InverfDeriv {
        /// Derivative order (n >= 1)
        order: u64,
    },
    /// Evaluate an asymptotic estimate of P_n(x)/n!
    Approx(ApproxArgs),
    /// Solve or approximate the saddle parameter S(x, n)
    Saddle(SaddleArgs),
    /// Write the data behind one of the comparison figures as CSV
    Figure {
        #[arg(value_enum)]
        id: FigureId,
    },
    /// Run a verification suite; nonzero exit on any violation
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
    },
}

#[derive(Args)]
struct PolyArgs {
    /// Family index
    index: usize,
    /// Print the coefficient row (constant term first)
    #[arg(long)]
    coeffs: bool,
    /// Evaluate at an exact rational ("575", "1/2", "0.25")
    #[arg(long)]
    value: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApproxKind {
    /// Singularity-analysis form, fixed x > 0
    Psi1,
    /// Small-x scale y = n x
    Psi2,
    /// Uniform-in-x form
    Psi3,
    /// WKB-refined psi1
    Psi1r,
    /// Ray-method two-saddle sum
    Psi4,
    /// Pick by regime: psi2 when n|x| <= 4, psi3 when x >= sqrt(ln n), else psi1
    Auto,
}

#[derive(Args)]
struct ApproxArgs {
    #[arg(value_enum)]
    kind: ApproxKind,
    /// Evaluation point
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Family index
    #[arg(long)]
    n: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SaddleApprox {
    /// sqrt(W[(n+1)^2 x^2 e^{x^2}])
    LargeX,
    /// sqrt(W[(n+1)^2 / zeta^2(x)])
    FixedX,
    /// small-x Lambert-W form on the scale y = n x
    SmallX,
    /// sqrt-log scale x = u sqrt(ln n)
    SqrtLog,
    /// large-x series x + ln(n+1)/x + s3/x^3
    Series,
}

#[derive(Args)]
struct SaddleArgs {
    /// Evaluation point
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Family index
    #[arg(long)]
    n: u64,
    /// Root branch for the exact solve
    #[arg(long, value_enum, default_value_t = BranchArg::Positive)]
    branch: BranchArg,
    /// Evaluate a closed-form approximation instead of solving
    #[arg(long, value_enum)]
    approx: Option<SaddleApprox>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Positive,
    Negative,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}

/// Usage-shaped errors exit 2; convergence-shaped errors exit 3.
fn exit_code_for(err: &CliError) -> i32 {
    match err {
        CliError::Usage(_) => 2,
        CliError::Io(_) => 2,
        CliError::Core(CoreError::Convergence { .. })
        | CliError::Core(CoreError::QuadratureResidual { .. }) => 3,
        CliError::Core(_) => 2,
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(CoreError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Poly(args) => cmd_poly(args),
        Command::InverfDeriv { order } => cmd_inverf_deriv(order),
        Command::Approx(args) => cmd_approx(args),
        Command::Saddle(args) => cmd_saddle(args),
        Command::Figure { id } => {
            figures::cmd_figure(id, cli.n, cli.grid, cli.out, cli.format)?;
            Ok(0)
        }
        Command::Verify { suite } => verify::cmd_verify(suite),
    }
}

fn cmd_poly(args: PolyArgs) -> Result<i32, CliError> {
    if args.index > SEQUENCE_CEILING {
        return Err(CliError::Usage(format!(
            "index {} exceeds the ceiling {SEQUENCE_CEILING}",
            args.index
        )));
    }
    let seq = poly_sequence(args.index)?;
    let p: &Polynomial = &seq[args.index];
    match (&args.value, args.coeffs) {
        (Some(text), _) => {
            let x = parse_rational(text)?;
            let v = p.eval_exact(&x);
            println!("{}", rational_display(&v));
        }
        (None, true) => {
            let row: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            println!("{}", row.join(" "));
        }
        (None, false) => {
            return Err(CliError::Usage(
                "poly needs --coeffs or --value <x>".to_string(),
            ));
        }
    }
    Ok(0)
}

fn cmd_inverf_deriv(order: u64) -> Result<i32, CliError> {
    if order == 0 {
        return Err(CliError::Usage(
            "derivative order must be >= 1".to_string(),
        ));
    }
    let v = inverf_deriv_at_zero(order);
    if v.is_zero() {
        println!("0");
        return Ok(0);
    }
    let m = v.half_power_of_pi_over_2;
    let pi_factor = if m.is_multiple_of(2) {
        format!("(pi/2)^{}", m / 2)
    } else {
        format!("(pi/2)^({m}/2)")
    };
    let tail = if v.sqrt2_inverse { " / sqrt(2)" } else { "" };
    println!(
        "{} * {pi_factor}{tail} = {}",
        v.integer_part,
        fmt_float17(v.to_f64())
    );
    Ok(0)
}

/// The regime selector: psi2 on the n|x| <= 4 scale, psi3 once
/// x >= sqrt(ln n), psi1 otherwise.
fn select_regime(x: f64, n: u64) -> ApproxKind {
    if n as f64 * x.abs() <= 4.0 {
        ApproxKind::Psi2
    } else if x >= (n as f64).ln().sqrt() {
        ApproxKind::Psi3
    } else {
        ApproxKind::Psi1
    }
}

fn cmd_approx(args: ApproxArgs) -> Result<i32, CliError> {
    let ApproxArgs { kind, x, n } = args;
    if n < 2 {
        return Err(CliError::Usage("approx needs n >= 2".to_string()));
    }
    let kind = match kind {
        ApproxKind::Auto => select_regime(x, n),
        other => other,
    };
    let estimate: RegimeEstimate = match kind {
        ApproxKind::Psi1 => psi1(x, n)?,
        ApproxKind::Psi2 => psi2(n as f64 * x, n),
        ApproxKind::Psi3 => psi3(x, n)?,
        ApproxKind::Psi1r => psi1_refined(x, n)?,
        ApproxKind::Psi4 => psi4(x, n)?,
        ApproxKind::Auto => unreachable!("resolved above"),
    };
    print_estimate(&estimate);
    Ok(0)
}

fn print_estimate(e: &RegimeEstimate) {
    let v = e.value;
    if v.is_zero() {
        println!(
            "{} at x={}, n={}: exactly 0 (sign cancellation)",
            e.regime,
            fmt_float(e.x),
            e.n
        );
        return;
    }
    println!(
        "{} at x={}, n={}: sign {}, ln|Psi/n!| = {}, Psi/n! = {}",
        e.regime,
        fmt_float(e.x),
        e.n,
        v.sign(),
        fmt_float(v.log_magnitude()),
        fmt_float(v.to_f64())
    );
}

fn cmd_saddle(args: SaddleArgs) -> Result<i32, CliError> {
    let SaddleArgs { x, n, branch, approx } = args;
    if n == 0 {
        return Err(CliError::Usage("saddle needs n >= 1".to_string()));
    }
    match approx {
        None => {
            let b = match branch {
                BranchArg::Positive => SaddleBranch::Positive,
                BranchArg::Negative => SaddleBranch::Negative,
            };
            let root = solve_saddle(x, n, b)?;
            println!(
                "s = {} (bracket [{}, {}], residual {})",
                fmt_float(root.s),
                fmt_float(root.bracket_lo),
                fmt_float(root.bracket_hi),
                fmt_float(root.residual)
            );
            // the estimate this saddle feeds
            let est = phi(x, n, root.s)?;
            print_estimate(&est);
        }
        Some(SaddleApprox::Series) => {
            if x < 3.0 {
                return Err(CliError::Usage(
                    "the large-x series needs x >= 3".to_string(),
                ));
            }
            println!("s ~ {}", fmt_float(saddle_series_large_x(x, n)));
        }
        Some(a) => {
            let regime = match a {
                SaddleApprox::LargeX => SaddleRegime::LargeX,
                SaddleApprox::FixedX => SaddleRegime::FixedX,
                SaddleApprox::SmallX => SaddleRegime::SmallX,
                SaddleApprox::SqrtLog => SaddleRegime::SqrtLog,
                SaddleApprox::Series => unreachable!("handled above"),
            };
            println!("s ~ {}", fmt_float(saddle_regime_approx(x, n, regime)?));
        }
    }
    Ok(0)
}

/// Accept "p/q", integers, and decimal/scientific floats (converted to the
/// exact dyadic rational they denote).
fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let bad = |t: &str| CliError::Usage(format!("cannot parse '{t}' as a rational"));
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad(text))?;
        let d: BigInt = den.trim().parse().map_err(|_| bad(text))?;
        if d.is_zero() {
            return Err(CliError::Usage("zero denominator".to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = text.parse::<BigInt>() {
        return Ok(BigRational::from(n));
    }
    let f: f64 = text.parse().map_err(|_| bad(text))?;
    BigRational::from_float(f).ok_or_else(|| bad(text))
}

fn rational_display(v: &BigRational) -> String {
    v.to_string()
}
