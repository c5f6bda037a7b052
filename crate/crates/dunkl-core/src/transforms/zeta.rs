//! Zeta integrals
//!
//! ```text
//! 𝒵(f; α) = ∫_{ℝⁿ} f(x) Δ(x²)^{α−ν} ω^B(x) dx,      ⟨ζ_α, f⟩ = 𝒵(f; α) / Γ_n(α),
//! ```
//!
//! their continuation to all `α ∈ ℂ`, the functional equation
//! `ζ_α = 2^{n(2α−ν)} 𝓕^B ζ_{ν−α}` and the discrete Wallach points.
//!
//! Because `ω^B(x) = Δ(x²)^{k′} ω^A(x²)` with `k′ = ν − μ0 − ½`, the
//! substitution `t = x²` turns the integral into
//! `∫_{ℝⁿ₊} f0(t) Δ(t)^{α−μ0−1} ω^A(t) dt` with `f0(t) = 2^{−n} Σ_τ f(τ√t)`.
//! That is the orthant integral with `μ = α`, and it does not depend on `ν`.

use alloc::vec::Vec;

// Float supplies the math methods on f64 when std is not linked.
#[allow(unused_imports)]
use num_traits::{Float, ToPrimitive};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::poly::{q_to_f64, MPoly, Q};
use crate::quad::{integrate_orthant, orthant_rule, probe_scale, coarse_points, OrthantRule, QuadResult, QuadratureSpec, Scheme};
use crate::scalars::{bernstein_b, gamma_n_scalar};
use crate::C64;

use super::gauss::{delta_tb_squared, even_part_at_sqrt, GaussPoly};
use super::hankel::{dunkl_transform_b_even_planned, HankelPlan, HankelValue};
use super::Engine;

/// Margin above `μ0` from which [`zeta_distribution`] integrates directly.
pub const DIRECT_MARGIN: f64 = 0.5;

/// Below this modulus a factor `b(α + j − ν)` counts as a zero.
pub const B_ZERO_TOL: f64 = 1e-8;

/// Relative envelope cutoff of the outer integral in
/// [`functional_equation_check`].
pub const TRANSFORM_ENVELOPE_CUTOFF: f64 = 1e-8;

/// Largest noise-to-value ratio at which an inner transform value is used.
pub const RESOLUTION_REL: f64 = 0.1;

/// A request for `⟨ζ_α, f⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaRequest {
    pub f: GaussPoly,
    pub alpha: C64,
    /// Continuation depth. `None` picks [`auto_lift`].
    pub m_lift: Option<u32>,
}

impl ZetaRequest {
    /// Request with automatic continuation depth.
    pub fn new(f: GaussPoly, alpha: C64) -> Self {
        Self { f, alpha, m_lift: None }
    }
}

/// A value of the zeta distribution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaValue {
    pub value: C64,
    /// Quadrature diagnostic, carried through the continuation factors.
    pub diagnostic: f64,
    /// Continuation depth used.
    pub m_lift: u32,
}

impl ZetaValue {
    pub fn relative_diagnostic(&self) -> f64 {
        let v = self.value.norm();
        if v == 0.0 {
            self.diagnostic
        } else {
            self.diagnostic / v
        }
    }
}

fn check_function(f: &GaussPoly, params: &Params) -> Result<()> {
    if f.n() != params.n() {
        return Err(Error::VariableMismatch { expected: params.n(), found: f.n() });
    }
    if !(q_to_f64(f.c()) > 0.0) {
        return Err(Error::Domain("zeta integrals need a decaying test function (c > 0)".into()));
    }
    Ok(())
}

/// `𝒵(f; α)` by direct quadrature; needs `Re α > μ0`.
///
/// A complex `α` puts an oscillating factor into the weight, for which the
/// tanh-sinh scheme of `spec` is the accurate choice.
pub fn zeta_integral(f: &GaussPoly, alpha: C64, spec: &QuadratureSpec, params: &Params) -> Result<QuadResult> {
    check_function(f, params)?;
    if !(alpha.re > params.mu0_f64()) {
        return Err(Error::Domain(alloc::format!(
            "the zeta integral converges for Re α > μ0 = {}; use zeta_distribution below that",
            params.mu0_f64()
        )));
    }
    let compiled = f.compile();
    let g = |t: &[f64]| -> Result<C64> { Ok(C64::new(even_part_at_sqrt(&compiled, t), 0.0)) };
    integrate_orthant(&g, alpha, spec, params)
}

/// The continuation depth `⌈μ0 + 1 − Re α⌉ + 1`, or `0` when
/// `Re α > μ0 + DIRECT_MARGIN` and the integral can be taken directly.
pub fn auto_lift(alpha: C64, params: &Params) -> u32 {
    let mu0 = params.mu0_f64();
    if alpha.re > mu0 + DIRECT_MARGIN {
        0
    } else {
        ((mu0 + 1.0 - alpha.re).ceil().max(0.0) as u32) + 1
    }
}

/// `4^{nm} ∏_{j=1}^m b(α + j − ν)`, failing when a factor vanishes.
fn continuation_factor(alpha: C64, m: u32, params: &Params) -> Result<C64> {
    let nu = params.nu_f64();
    let mut acc = C64::new(4f64.powi((params.n() as u32 * m) as i32), 0.0);
    for j in 1..=m {
        let b = bernstein_b(alpha + j as f64 - nu, params);
        if b.norm() < B_ZERO_TOL {
            return Err(Error::Pole(alloc::format!(
                "the continuation path crosses a zero of b at α + {j} − ν = {}; choose another ν",
                alpha + j as f64 - nu
            )));
        }
        acc *= b;
    }
    Ok(acc)
}

/// `⟨ζ_α, f⟩` for every `α ∈ ℂ`, by
///
/// ```text
/// ⟨ζ_α, f⟩ = ⟨ζ_{α+m}, Δ(T^B)^{2m} f⟩ / (4^{nm} ∏_{j=1}^m b(α + j − ν)),
/// ```
///
/// with `Δ(T^B)^{2m} f` computed exactly and one quadrature at `α + m`.
///
/// A zero of `b(α + j − ν)` on the path is reported as [`Error::Pole`]. A
/// different `m` does not help there: the factors for smaller `j` are part
/// of every deeper path, and a shallower one leaves the convergent range.
pub fn zeta_distribution(req: &ZetaRequest, spec: &QuadratureSpec, params: &Params) -> Result<ZetaValue> {
    check_function(&req.f, params)?;
    let m = req.m_lift.unwrap_or_else(|| auto_lift(req.alpha, params));
    let lifted_alpha = req.alpha + m as f64;
    if !(lifted_alpha.re > params.mu0_f64()) {
        return Err(Error::Domain(alloc::format!(
            "m_lift = {m} leaves Re(α + m) = {} at or below μ0 = {}",
            lifted_alpha.re,
            params.mu0_f64()
        )));
    }
    let factor = continuation_factor(req.alpha, m, params)?;
    let mut g = req.f.clone();
    for _ in 0..m {
        g = delta_tb_squared(&g, params)?;
    }
    let norm = gamma_n_scalar(lifted_alpha, params)? * factor;
    let quad = zeta_integral(&g, lifted_alpha, spec, params)?;
    Ok(ZetaValue { value: quad.value / norm, diagnostic: quad.diagnostic / norm.norm(), m_lift: m })
}

/// Both sides of the functional equation on one test function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionalEquationReport {
    /// `⟨ζ_α, f⟩`.
    pub lhs: ZetaValue,
    /// `2^{n(2α−ν)} ⟨ζ_{ν−α}, 𝓕^B f⟩`.
    pub rhs: C64,
    /// Outer quadrature diagnostic of `rhs`.
    pub rhs_outer_diagnostic: f64,
    /// Change of `rhs` when the inner Hankel moments come from the coarser rule.
    pub rhs_inner_diagnostic: f64,
    /// Outer nodes whose inner series hit the degree cap.
    pub unconverged_nodes: usize,
    /// Outer nodes dropped because cancellation swamped the inner series.
    /// Their envelope bound is included in `rhs_inner_diagnostic`.
    pub unresolved_nodes: usize,
}

impl FunctionalEquationReport {
    /// `rhs / lhs`.
    pub fn ratio(&self) -> C64 {
        self.rhs / self.lhs.value
    }

    /// Fails unless the inner diagnostic is at most a tenth of `tol`
    /// relative to `rhs`, the split between inner and outer error budgets.
    pub fn check_budget(&self, tol: f64) -> Result<()> {
        let rel = self.rhs_inner_diagnostic / self.rhs.norm();
        if rel <= 0.1 * tol {
            Ok(())
        } else {
            Err(Error::Accuracy(alloc::format!("inner Hankel diagnostic {rel:.3e} exceeds a tenth of {tol:.1e}")))
        }
    }
}

fn delta_squared(n: usize) -> MPoly {
    MPoly::delta(n).square_vars()
}

/// Outer sums of [`functional_equation_check`] on one rule.
struct OuterSum {
    fine: C64,
    inner_coarse: C64,
    /// Envelope estimate of the dropped unresolved nodes.
    unresolved_mass: f64,
    unresolved: usize,
    unconverged: usize,
}

/// Applies a rule to the transform, skipping nodes whose weighted envelope is
/// below `cutoff` times the largest.
///
/// Nodes where the inner series is noise (see [`HankelValue::is_resolved`])
/// contribute zero. Their true size is bounded by `|w| A bound(t)`, where `A`
/// is the largest ratio `|value| / bound` seen on resolved nodes, and that
/// bound is returned as `unresolved_mass`.
fn apply_outer_rule(
    rule: &OrthantRule,
    bound: &dyn Fn(&[f64]) -> f64,
    cutoff: f64,
    transform: &mut dyn FnMut(&[f64]) -> Result<HankelValue>,
) -> Result<OuterSum> {
    let env: Vec<f64> = rule.points.iter().zip(&rule.weights).map(|(x, w)| w.norm() * bound(x)).collect();
    let max = env.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let mut out = OuterSum { fine: C64::new(0.0, 0.0), inner_coarse: C64::new(0.0, 0.0), unresolved_mass: 0.0, unresolved: 0, unconverged: 0 };
    let mut calibration = 0.0f64;
    let mut dropped_envelope = 0.0;
    for ((x, w), e) in rule.points.iter().zip(&rule.weights).zip(&env) {
        if !(*e > cutoff * max) {
            continue;
        }
        let v = transform(x)?;
        if !v.converged {
            out.unconverged += 1;
        }
        if v.is_resolved(RESOLUTION_REL) {
            calibration = calibration.max(v.value.norm() / bound(x));
            out.fine += *w * v.value;
            out.inner_coarse += *w * v.coarse_value;
        } else {
            out.unresolved += 1;
            dropped_envelope += e;
        }
    }
    out.unresolved_mass = calibration * dropped_envelope;
    Ok(out)
}

/// Checks `ζ_α = 2^{n(2α−ν)} 𝓕^B ζ_{ν−α}` on `f`, with `ν` from the engine.
///
/// `f` is first averaged over `W_B`. The left side is [`zeta_distribution`].
/// On the right, `𝓕^B h(√t) = 2^{−nν} 𝓗_ν h0(t/4)` is evaluated at the nodes
/// of the outer zeta quadrature from a [`HankelPlan`] of `h0(t) = h(√t)`.
/// When `β = ν − α` needs continuation, the lift uses
/// `Δ(T^B)^{2m} 𝓕^B f = (−1)^{nm} 𝓕^B(Δ(x²)^m f)`, so the inner transform is
/// taken of `h = Δ(x²)^m f`.
///
/// `𝓕^B h` is again a polynomial times `e^{−|ξ|²/(4c)}`, which gives the
/// outer envelope `(1 + Σt)^{deg h / 2} e^{−Σt/(4c)}`. Nodes below
/// [`TRANSFORM_ENVELOPE_CUTOFF`] of it are skipped, and so are nodes where
/// the inner series is swamped by cancellation; the envelope bound of the
/// latter is added to the inner diagnostic.
pub fn functional_equation_check(f: &GaussPoly, alpha: C64, spec: &QuadratureSpec, engine: &Engine) -> Result<FunctionalEquationReport> {
    let params = engine.params();
    let n = params.n();
    check_function(f, params)?;
    let f = f.symmetrize_b()?;
    let nu = params.nu_f64();
    let lhs = zeta_distribution(&ZetaRequest::new(f.clone(), alpha), spec, params)?;

    let beta = C64::new(nu, 0.0) - alpha;
    let m = auto_lift(beta, params);
    let factor = continuation_factor(beta, m, params)?;
    let h = f.mul_poly(&delta_squared(n).pow(m))?;
    let sign = if (n as u32 * m).is_multiple_of(2) { 1.0 } else { -1.0 };
    let outer_mu = beta + m as f64;

    let compiled = h.compile();
    let h0 = |t: &[f64]| -> Result<C64> { Ok(C64::new(even_part_at_sqrt(&compiled, t), 0.0)) };
    let c = q_to_f64(h.c());
    // `h0 = p·e^{−cΣt}`, so the radial scale `1/c` makes the moment rule
    // exact on every monomial up to its polynomial degree.
    let inner_spec = QuadratureSpec { axis_scale: Some(spec.axis_scale.unwrap_or(1.0 / c)), ..spec.clone() };
    let plan = HankelPlan::new(&h0, C64::new(nu, 0.0), &inner_spec, engine)?;

    let half_degree = h.p().degree().unwrap_or(0) as f64 / 2.0;
    let bound = move |t: &[f64]| {
        let s: f64 = t.iter().sum();
        (1.0 + s).powf(half_degree) * (-s / (4.0 * c)).exp()
    };
    let bound_c = |t: &[f64]| -> Result<C64> { Ok(C64::new(bound(t), 0.0)) };
    let scale = probe_scale(&bound_c, n, outer_mu.re, spec.scheme);
    let scheme = spec.scheme;
    let m_out = spec.points_per_axis;
    let fine_rule = orthant_rule(outer_mu, m_out, scheme, scale, params)?;
    let coarse_rule = orthant_rule(outer_mu, coarse_points(m_out), scheme, scale, params)?;

    let mut transform = |t: &[f64]| -> Result<HankelValue> {
        let xi: Vec<C64> = t.iter().map(|v| C64::new(v.sqrt(), 0.0)).collect();
        dunkl_transform_b_even_planned(&plan, &xi)
    };
    let fine = apply_outer_rule(&fine_rule, &bound, TRANSFORM_ENVELOPE_CUTOFF, &mut transform)?;
    let coarse = apply_outer_rule(&coarse_rule, &bound, TRANSFORM_ENVELOPE_CUTOFF, &mut transform)?;

    let ln2 = core::f64::consts::LN_2;
    let prefactor = ((alpha * 2.0 - nu) * (n as f64 * ln2)).exp() * sign / (gamma_n_scalar(outer_mu, params)? * factor);
    let rhs = prefactor * fine.fine;
    Ok(FunctionalEquationReport {
        lhs,
        rhs,
        rhs_outer_diagnostic: (prefactor * (fine.fine - coarse.fine)).norm(),
        rhs_inner_diagnostic: (prefactor * (fine.fine - fine.inner_coarse)).norm() + prefactor.norm() * fine.unresolved_mass,
        unconverged_nodes: fine.unconverged,
        unresolved_nodes: fine.unresolved,
    })
}

/// Both sides of the Wallach-point formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WallachReport {
    /// `⟨ζ_{kr}, f⟩` by continuation.
    pub lhs: ZetaValue,
    /// The symmetrized lower-rank zeta integral of the restriction of `f`.
    pub rhs: C64,
    /// Quadrature diagnostic of `rhs`.
    pub rhs_diagnostic: f64,
}

/// The discrete Wallach point `α = kr`, where `ζ_{kr}` is the positive
/// measure `(ζ^{(r)}_{kn} ⊗ δ₀^{(n−r)})` symmetrized over `𝒮ₙ`.
///
/// Supported for `n = 2`, `r = 1`: the right side is
/// `½[⟨ζ^{(1)}_{2k}, f(·, 0)⟩ + ⟨ζ^{(1)}_{2k}, f(0, ·)⟩]`, where the rank-one
/// zeta is `⟨ζ^{(1)}_β, φ⟩ = Γ(β)^{−1} ∫_0^∞ φ0(t) t^{β−1} dt`.
pub fn wallach_discrete_check(r: usize, f: &GaussPoly, spec: &QuadratureSpec, params: &Params) -> Result<WallachReport> {
    let n = params.n();
    if n != 2 || r != 1 {
        return Err(Error::InvalidInput(alloc::format!("the Wallach check supports n = 2, r = 1; got n = {n}, r = {r}")));
    }
    check_function(f, params)?;
    let k = params.k().clone();
    let alpha = C64::new(q_to_f64(&k) * r as f64, 0.0);
    let lhs = zeta_distribution(&ZetaRequest::new(f.clone(), alpha), spec, params)?;

    let index = &k * Q::from_integer((n as i64).into());
    let rank_one = Params::new(1, k.clone(), index.clone())?;
    let beta = C64::new(index.to_f64().unwrap_or(f64::NAN), 0.0);
    let gamma = gamma_n_scalar(beta, &rank_one)?;
    let lower_spec = QuadratureSpec { scheme: Scheme::GaussLaguerreScaled, ..spec.clone() };
    let mut rhs = C64::new(0.0, 0.0);
    let mut diag = 0.0;
    for axis in 0..n {
        let restricted = f.restrict(&[axis])?;
        let q = zeta_integral(&restricted, beta, &lower_spec, &rank_one)?;
        rhs += q.value / gamma / n as f64;
        diag += q.diagnostic / gamma.norm() / n as f64;
    }
    Ok(WallachReport { lhs, rhs, rhs_diagnostic: diag })
}
