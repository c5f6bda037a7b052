//! The `jack`, `eval` and `verify` subcommands, independent of argument
//! parsing so that they can be driven from tests.

use serde::Serialize;
use serde_json::json;

use dunkl_core::hyp::{bessel_kernel, dunkl_kernel_a, BesselKind, TruncationConfig};
use dunkl_core::jack::JackBasis;
use dunkl_core::poly::{q, q_to_f64};
use dunkl_core::quad::QuadratureSpec;
use dunkl_core::scalars::{gamma, gamma_n, gamma_n_scalar, kbessel_rank_one_closed, GammaArg};
use dunkl_core::transforms::{hankel, kbessel, zeta_distribution, Engine, GaussPoly, ZetaRequest};
use dunkl_core::{Composition, MPoly, Params, Partition, C64, Q};

use crate::exit::CliError;
use crate::parse;
use crate::suite::{self, Check, Suite, SuiteConfig};

/// Version of every JSON document the tool emits.
pub const SCHEMA: u32 = 1;

/// Which Jack family `jack` renders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JackKind {
    /// Non-symmetric `E_η`.
    E,
    /// Symmetric `P_λ`, monic.
    P,
    /// Symmetric `C_λ`, summing to `(Σx_i)^p`.
    C,
    /// Non-symmetric `L_η`, summing to `(Σx_i)^p`.
    L,
}

impl JackKind {
    fn label(self) -> &'static str {
        match self {
            JackKind::E => "E",
            JackKind::P => "P",
            JackKind::C => "C",
            JackKind::L => "L",
        }
    }
}

/// A Jack polynomial request.
#[derive(Clone, Debug, PartialEq)]
pub struct JackArgs {
    pub n: usize,
    pub k: Q,
    pub kind: JackKind,
    pub index: Vec<u32>,
}

#[derive(Serialize)]
struct JackTerm {
    exponent: Vec<u32>,
    coefficient: String,
}

/// Computes the requested Jack polynomial.
pub fn jack_poly(args: &JackArgs) -> Result<MPoly, CliError> {
    if args.index.len() != args.n {
        return Err(CliError::usage(format!("index has {} entries, expected n = {}", args.index.len(), args.n)));
    }
    let params = Params::new_formal(args.n, args.k.clone(), q(1, 1))?;
    let degree: u32 = args.index.iter().sum();
    let basis = JackBasis::new(&params, degree);
    let layer = basis.layer(degree)?;
    let poly = match args.kind {
        JackKind::E => layer.e(&Composition::new(args.index.clone()))?.clone(),
        JackKind::L => layer.l(&Composition::new(args.index.clone()))?,
        JackKind::P | JackKind::C => {
            let lambda = Partition::new(args.index.clone()).map_err(|e| CliError::usage(e.to_string()))?;
            if args.kind == JackKind::P {
                layer.p(&lambda)?.clone()
            } else {
                layer.c(&lambda)?
            }
        }
    };
    Ok(poly)
}

/// `jack`: the canonical text form, or a JSON document with exact
/// coefficients.
pub fn cmd_jack(args: &JackArgs, as_json: bool) -> Result<String, CliError> {
    let poly = jack_poly(args)?;
    if !as_json {
        return Ok(poly.to_string());
    }
    let terms: Vec<JackTerm> =
        poly.terms().rev().map(|(e, c)| JackTerm { exponent: e.parts().to_vec(), coefficient: c.to_string() }).collect();
    let doc = json!({
        "schema": SCHEMA,
        "kind": args.kind.label(),
        "n": args.n,
        "k": args.k.to_string(),
        "index": args.index,
        "text": poly.to_string(),
        "terms": terms,
    });
    Ok(to_pretty(&doc))
}

/// Objects that `eval` knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Object {
    DunklKernel,
    BesselE,
    BesselJ,
    KBessel,
    Hankel,
    GammaN,
    Zeta,
}

impl Object {
    pub fn name(self) -> &'static str {
        match self {
            Object::DunklKernel => "dunkl_kernel",
            Object::BesselE => "bessel_E",
            Object::BesselJ => "bessel_J",
            Object::KBessel => "kbessel",
            Object::Hankel => "hankel",
            Object::GammaN => "gamma_n",
            Object::Zeta => "zeta",
        }
    }
}

/// Raw `eval` arguments. Numeric flags stay strings until the object says
/// how to read them.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalArgs {
    pub object: Object,
    pub n: usize,
    pub k: Q,
    pub nu: Option<String>,
    pub alpha: Option<String>,
    pub w: Option<String>,
    pub z: Option<String>,
    pub degree: Option<u32>,
    pub quad_points: usize,
    pub tol: f64,
    pub oracle_classical: bool,
}

/// Result of `eval`: the JSON document, and an accuracy error if the
/// diagnostic exceeds the tolerance. The document is printed either way.
pub struct EvalOutcome {
    pub json: String,
    pub budget: Result<(), CliError>,
}

struct Evaluated {
    value: C64,
    diagnostic: f64,
    oracle: Option<C64>,
}

/// `eval`: one value with its diagnostic and an echo of the configuration.
pub fn cmd_eval(args: &EvalArgs) -> Result<EvalOutcome, CliError> {
    let degree = args.degree.unwrap_or(match args.object {
        Object::Hankel => suite::HANKEL_DEGREE,
        _ => 30,
    });
    let trunc = TruncationConfig { max_degree: degree, tail_tol: 1e-15 };
    let spec = QuadratureSpec::gauss(args.quad_points);
    let e = evaluate(args, &trunc, &spec)?;
    let mut doc = json!({
        "schema": SCHEMA,
        "object": args.object.name(),
        "value": [e.value.re, e.value.im],
        "diagnostic": e.diagnostic,
        "config_echo": {
            "n": args.n,
            "k": args.k.to_string(),
            "nu": args.nu,
            "alpha": args.alpha,
            "w": args.w,
            "z": args.z,
            "degree": degree,
            "quad_points": args.quad_points,
            "tol": args.tol,
            "oracle": if args.oracle_classical { Some("classical") } else { None },
        },
    });
    if let Some(o) = e.oracle {
        doc["oracle"] = json!({ "classical": [o.re, o.im] });
    }
    let budget = if e.diagnostic <= args.tol {
        Ok(())
    } else {
        Err(CliError::accuracy(format!("diagnostic {:.3e} exceeds the tolerance {:.1e}", e.diagnostic, args.tol)))
    };
    Ok(EvalOutcome { json: to_pretty(&doc), budget })
}

fn required<'a>(flag: &str, v: &'a Option<String>, object: Object) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::usage(format!("--{flag} is required for {}", object.name())))
}

fn vector(flag: &str, v: &Option<String>, args: &EvalArgs) -> Result<Vec<C64>, CliError> {
    let list = parse::complex_list(required(flag, v, args.object)?)?;
    if list.len() != args.n {
        return Err(CliError::usage(format!("--{flag} has {} entries, expected n = {}", list.len(), args.n)));
    }
    Ok(list)
}

/// `ν` as an exact rational for objects that need it in the parameters;
/// defaults to `μ0 + 1`.
fn rational_nu(args: &EvalArgs) -> Result<Q, CliError> {
    match &args.nu {
        Some(s) => parse::rational(s).map_err(|_| CliError::usage(format!("{} needs a rational --nu \"p/q\", got {s:?}", args.object.name()))),
        None => Ok(&args.k * Q::from_integer((args.n as i64 - 1).into()) + q(1, 1)),
    }
}

fn params_with(args: &EvalArgs, nu: Q) -> Result<Params, CliError> {
    Ok(Params::new(args.n, args.k.clone(), nu)?)
}

/// Parameters for objects whose series parameter is passed separately; `ν`
/// inside them only matters to the type-B operators, which these objects do
/// not use.
fn plain_params(args: &EvalArgs) -> Result<Params, CliError> {
    let nu = &args.k * Q::from_integer((args.n as i64 - 1).into()) + q(1, 1);
    params_with(args, nu)
}

fn no_oracle(args: &EvalArgs) -> Result<(), CliError> {
    if args.oracle_classical {
        Err(CliError::usage(format!("no classical oracle for {} at n = {}", args.object.name(), args.n)))
    } else {
        Ok(())
    }
}

fn evaluate(args: &EvalArgs, trunc: &TruncationConfig, spec: &QuadratureSpec) -> Result<Evaluated, CliError> {
    match args.object {
        Object::DunklKernel => {
            let (w, z) = (vector("w", &args.w, args)?, vector("z", &args.z, args)?);
            let params = plain_params(args)?;
            let basis = JackBasis::new(&params, trunc.max_degree);
            let v = dunkl_kernel_a(&w, &z, trunc, &basis)?;
            let oracle = if args.oracle_classical {
                if args.n != 1 {
                    no_oracle(args)?;
                }
                Some((w[0] * z[0]).exp())
            } else {
                None
            };
            Ok(Evaluated { value: v.value, diagnostic: v.relative_tail(), oracle })
        }
        Object::BesselE | Object::BesselJ => {
            no_oracle(args)?;
            let nu = parse::complex(required("nu", &args.nu, args.object)?)?;
            let (w, z) = (vector("w", &args.w, args)?, vector("z", &args.z, args)?);
            let params = plain_params(args)?;
            let basis = JackBasis::new(&params, trunc.max_degree);
            let kind = if args.object == Object::BesselE { BesselKind::E } else { BesselKind::J };
            let v = bessel_kernel(kind, nu, &w, &z, trunc, &basis)?;
            Ok(Evaluated { value: v.value, diagnostic: v.relative_tail(), oracle: None })
        }
        Object::KBessel => {
            let nu = parse::complex(required("nu", &args.nu, args.object)?)?;
            let (w, z) = (vector("w", &args.w, args)?, vector("z", &args.z, args)?);
            let engine = Engine::new(&plain_params(args)?, *trunc);
            let v = kbessel(nu, &w, &z, spec, &engine)?;
            let oracle = if args.oracle_classical {
                let real = |x: C64| x.im == 0.0 && x.re > 0.0;
                if args.n != 1 || !real(w[0]) || !real(z[0]) {
                    return Err(CliError::usage("the classical K-Bessel oracle needs n = 1 and real positive w, z".into()));
                }
                Some(kbessel_rank_one_closed(nu, w[0].re, z[0].re)?)
            } else {
                None
            };
            Ok(Evaluated { value: v.value, diagnostic: v.relative_diagnostic(), oracle })
        }
        Object::Hankel => {
            no_oracle(args)?;
            let nu = rational_nu(args)?;
            let w = vector("w", &args.w, args)?;
            let engine = Engine::new(&params_with(args, nu.clone())?, *trunc);
            let gaussian = |t: &[f64]| -> dunkl_core::Result<C64> { Ok(C64::new((-t.iter().sum::<f64>()).exp(), 0.0)) };
            let v = hankel(&gaussian, C64::new(q_to_f64(&nu), 0.0), &w, spec, &engine)?;
            let scale = v.value.norm().max(f64::MIN_POSITIVE);
            let diagnostic = (v.diagnostic() + v.noise_floor()) / scale;
            Ok(Evaluated { value: v.value, diagnostic, oracle: None })
        }
        Object::GammaN => {
            let z = parse::complex_list(required("z", &args.z, args.object)?)?;
            let params = plain_params(args)?;
            let value = match z.as_slice() {
                [a] => gamma_n_scalar(*a, &params)?,
                _ => gamma_n(&GammaArg::Vector(z.clone()), &params)?,
            };
            let oracle = if args.oracle_classical {
                if args.n != 1 || z.len() != 1 {
                    no_oracle(args)?;
                }
                Some(gamma(z[0])?)
            } else {
                None
            };
            Ok(Evaluated { value, diagnostic: 0.0, oracle })
        }
        Object::Zeta => {
            no_oracle(args)?;
            let alpha = parse::complex(required("alpha", &args.alpha, args.object)?)?;
            let params = params_with(args, rational_nu(args)?)?;
            let v = zeta_distribution(&ZetaRequest::new(GaussPoly::gaussian(args.n), alpha), spec, &params)?;
            let g = gamma_n_scalar(alpha, &params)?;
            Ok(Evaluated { value: v.value * g, diagnostic: v.relative_diagnostic(), oracle: None })
        }
    }
}

/// The `verify` report.
#[derive(Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: Suite,
    pub seed: u64,
    pub n: Option<usize>,
    pub k: Option<String>,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// `verify`: runs the suite and returns the report.
pub fn cmd_verify(config: &SuiteConfig) -> Result<SuiteReport, CliError> {
    if let Some(k) = &config.k {
        suite::validate_k(k)?;
    }
    let checks = suite::run(config);
    let passed = checks.iter().filter(|c| c.passed()).count();
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: config.suite,
        seed: config.seed,
        n: config.n,
        k: config.k.as_ref().map(ToString::to_string),
        passed,
        failed: checks.len() - passed,
        checks,
    })
}

/// Deterministic pretty JSON.
pub fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}
