use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dunkl::commands::{cmd_eval, cmd_jack, cmd_verify, to_pretty, EvalArgs, JackArgs, JackKind, Object};
use dunkl::exit::{CliError, Code};
use dunkl::parse;
use dunkl::suite::{Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "dunkl", version, about = "Dunkl-type special functions: exact Jack polynomials, kernels, transforms and zeta integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a Jack polynomial in canonical text form.
    Jack {
        #[arg(long)]
        n: usize,
        /// Multiplicity as "p/q"; negative values are accepted.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Comma-separated multi-index, e.g. "2,1,0".
        #[arg(long)]
        index: String,
        /// Emit JSON with exact rational coefficients.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one object and print a JSON report.
    Eval {
        #[arg(long, value_enum)]
        object: ObjectArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Multiplicity as "p/q".
        #[arg(long, default_value = "1/2")]
        k: String,
        /// Index ν, complex "a+bi" (rational "p/q" for hankel and zeta).
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Zeta index α as complex "a+bi".
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Comma-separated complex vector.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Comma-separated complex vector.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Series degree cap.
        #[arg(long)]
        degree: Option<u32>,
        /// Quadrature points per axis.
        #[arg(long, default_value_t = 80)]
        quad_points: usize,
        /// Relative accuracy budget; exit code 5 when the diagnostic exceeds it.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Also report an independent classical value (rank one only).
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
    },
    /// Run the verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Seed of the random rational parameter draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict the checks to one rank.
        #[arg(long)]
        n: Option<usize>,
        /// Fix the multiplicity k ("p/q").
        #[arg(long)]
        k: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "E")]
    E,
    #[value(name = "P")]
    P,
    #[value(name = "C")]
    C,
    #[value(name = "L")]
    L,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectArg {
    #[value(name = "dunkl_kernel")]
    DunklKernel,
    #[value(name = "bessel_E")]
    BesselE,
    #[value(name = "bessel_J")]
    BesselJ,
    #[value(name = "kbessel")]
    KBessel,
    #[value(name = "hankel")]
    Hankel,
    #[value(name = "gamma_n")]
    GammaN,
    #[value(name = "zeta")]
    Zeta,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Symbolic,
    Quadrature,
    Zeta,
    All,
}

fn run(cli: Cli) -> Result<Code, CliError> {
    match cli.command {
        Command::Jack { n, k, kind, index, json } => {
            let kind = match kind {
                KindArg::E => JackKind::E,
                KindArg::P => JackKind::P,
                KindArg::C => JackKind::C,
                KindArg::L => JackKind::L,
            };
            let args = JackArgs { n, k: parse::rational(&k)?, kind, index: parse::index(&index)? };
            emit(&cmd_jack(&args, json)?);
            Ok(Code::Ok)
        }
        Command::Eval { object, n, k, nu, alpha, w, z, degree, quad_points, tol, oracle } => {
            let object = match object {
                ObjectArg::DunklKernel => Object::DunklKernel,
                ObjectArg::BesselE => Object::BesselE,
                ObjectArg::BesselJ => Object::BesselJ,
                ObjectArg::KBessel => Object::KBessel,
                ObjectArg::Hankel => Object::Hankel,
                ObjectArg::GammaN => Object::GammaN,
                ObjectArg::Zeta => Object::Zeta,
            };
            let args = EvalArgs {
                object,
                n,
                k: parse::rational(&k)?,
                nu,
                alpha,
                w,
                z,
                degree,
                quad_points,
                tol,
                oracle_classical: oracle.is_some(),
            };
            let outcome = cmd_eval(&args)?;
            emit(&outcome.json);
            outcome.budget.map(|()| Code::Ok)
        }
        Command::Verify { suite, seed, n, k } => {
            let suite = match suite {
                SuiteArg::Symbolic => Suite::Symbolic,
                SuiteArg::Quadrature => Suite::Quadrature,
                SuiteArg::Zeta => Suite::Zeta,
                SuiteArg::All => Suite::All,
            };
            let k = k.as_deref().map(parse::rational).transpose()?;
            let report = cmd_verify(&SuiteConfig { suite, seed, n, k })?;
            emit(&to_pretty(&report));
            Ok(if report.all_passed() { Code::Ok } else { Code::Failure })
        }
    }
}

/// Writes one report to stdout. A reader that closes the pipe early (as in
/// `dunkl verify | head`) is not an error worth a panic, so write failures
/// are dropped.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Code::Usage } else { Code::Ok };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
