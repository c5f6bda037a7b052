//! Deterministic quadrature against the Dunkl weights.
//!
//! The basic integral is
//!
//! ```text
//! I(f; μ) = ∫_{ℝⁿ₊} f(x) Δ(x)^{μ−μ0−1} ω^A(x) dx,   ω^A(x) = ∏_{i<j} |x_i − x_j|^{2k},
//! ```
//!
//! for ranks `n ≤ 3`. The orthant is split into the `n!` ordered chambers
//! `x_{σ(1)} > ⋯ > x_{σ(n)}`, on which the weight is the same function of the
//! sorted coordinates, so `I(f; μ) = ∫_{chamber} Σ_σ f(σx) · weight`. On the
//! chamber we write `x = s·p` with `s = Σ x_i` and `p` in the ordered simplex.
//! The radial part of the weight is `s^{nμ−1}`. The simplex is mapped onto a
//! unit square (a unit interval for `n = 2`) so that the factors that vanish or
//! blow up on its boundary (`x_min^{μ−μ0−1}` and the gaps `|x_i − x_j|^{2k}`)
//! become Jacobi weights in the new coordinates.
//!
//! Two schemes turn this into a tensor rule.
//!
//! * [`Scheme::GaussLaguerreScaled`]: generalized Gauss–Laguerre in `s`
//!   (after rescaling `s = scale·y`) and Gauss–Jacobi in the simplex
//!   coordinates, so all singular factors sit in the node weights. Requires
//!   `Re μ > μ0`.
//! * [`Scheme::TanhSinhMapped`]: exp-sinh in `s` and tanh-sinh in the simplex
//!   coordinates with the full weight evaluated at each node. It accepts any
//!   `μ`, provided the integrand itself supplies the decay at the boundary.
//!
//! Every result carries a diagnostic: the difference to the same rule with
//! fewer points per axis.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

// Float supplies the math methods on f64 when std is not linked.
#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::scalars::ln_gamma_real;
use crate::C64;

/// Quadrature scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    GaussLaguerreScaled,
    TanhSinhMapped,
}

/// Accuracy contract of one quadrature call.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Nodes per axis of the tensor rule, at least 2.
    pub points_per_axis: usize,
    pub scheme: Scheme,
    /// Scale of the radial coordinate `s = Σ x_i`. `None` picks it with a
    /// one-dimensional moment probe of the integrand along the diagonal.
    pub axis_scale: Option<f64>,
}

impl QuadratureSpec {
    /// Gauss–Laguerre/Jacobi rule with automatic scale.
    pub fn gauss(points_per_axis: usize) -> Self {
        Self { points_per_axis, scheme: Scheme::GaussLaguerreScaled, axis_scale: None }
    }

    /// Exp-sinh/tanh-sinh rule with automatic scale.
    pub fn tanh_sinh(points_per_axis: usize) -> Self {
        Self { points_per_axis, scheme: Scheme::TanhSinhMapped, axis_scale: None }
    }

    /// The same rule with a fixed radial scale.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.axis_scale = Some(scale);
        self
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::gauss(80)
    }
}

/// A quadrature estimate with its convergence diagnostic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    /// `|I(m) − I(m′)|` with `m′ = m − max(2, m/4)` points per axis.
    pub diagnostic: f64,
    /// Number of integrand evaluations spent on `value`.
    pub evaluations: usize,
}

impl QuadResult {
    /// Diagnostic relative to the value (absolute if the value is zero).
    pub fn relative_diagnostic(&self) -> f64 {
        let v = self.value.norm();
        if v == 0.0 {
            self.diagnostic
        } else {
            self.diagnostic / v
        }
    }

    /// The value, or an accuracy error when the relative diagnostic exceeds `tol`.
    pub fn require(&self, tol: f64) -> Result<C64> {
        if self.relative_diagnostic() <= tol {
            Ok(self.value)
        } else {
            Err(Error::Accuracy(format!(
                "quadrature diagnostic {:.3e} exceeds the tolerance {tol:.1e}",
                self.relative_diagnostic()
            )))
        }
    }
}

/// A one-dimensional rule: nodes with their (possibly log-scaled) weights.
#[derive(Clone, Debug)]
struct Rule1 {
    /// Node in the reference coordinate.
    x: Vec<f64>,
    /// `1 − x` computed without cancellation (only meaningful on `[0, 1]`).
    one_minus_x: Vec<f64>,
    w: Vec<f64>,
}

/// Eigenvalues and squared first eigenvector components of the symmetric
/// tridiagonal matrix with diagonal `d` and off-diagonal `e` (`e[i]` couples
/// `i` and `i+1`), by the implicit QL method with Wilkinson shifts.
fn tridiagonal_eigen(d: &[f64], e: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.iter().copied().chain(core::iter::once(0.0)).collect();
    e.truncate(n);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Internal("tridiagonal QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|a, b| d[*a].total_cmp(&d[*b]));
    Ok((idx.iter().map(|i| d[*i]).collect(), idx.iter().map(|i| z[*i] * z[*i]).collect()))
}

/// Generalized Gauss–Laguerre rule for `∫_0^∞ g(y) y^α e^{−y} dy`.
fn gauss_laguerre(m: usize, alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let d: Vec<f64> = (0..m).map(|j| 2.0 * j as f64 + alpha + 1.0).collect();
    let e: Vec<f64> = (1..m).map(|j| (j as f64 * (j as f64 + alpha)).sqrt()).collect();
    let (x, v) = tridiagonal_eigen(&d, &e)?;
    let mu0 = ln_gamma_real(alpha + 1.0).exp();
    Ok((x, v.into_iter().map(|vi| vi * mu0).collect()))
}

/// Gauss–Jacobi rule on `[0, 1]` for `∫_0^1 g(u) u^β (1−u)^α du`.
fn gauss_jacobi_unit(m: usize, alpha: f64, beta: f64) -> Result<Rule1> {
    let ab = alpha + beta;
    let mut d = Vec::with_capacity(m);
    for j in 0..m {
        let jf = j as f64;
        let t = 2.0 * jf + ab;
        d.push(if j == 0 { (beta - alpha) / (ab + 2.0) } else { (beta * beta - alpha * alpha) / (t * (t + 2.0)) });
    }
    let mut e = Vec::with_capacity(m.saturating_sub(1));
    for j in 1..m {
        let jf = j as f64;
        let t = 2.0 * jf + ab;
        let v = if j == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * jf * (jf + alpha) * (jf + beta) * (jf + ab) / (t * t * (t + 1.0) * (t - 1.0))
        };
        e.push(v.sqrt());
    }
    let (t, v) = tridiagonal_eigen(&d, &e)?;
    // Total mass of (1−t)^α(1+t)^β on [−1, 1] is 2^{α+β+1}B(α+1, β+1); the
    // map u = (1+t)/2 divides it by 2^{α+β+1}.
    let mass = (ln_gamma_real(alpha + 1.0) + ln_gamma_real(beta + 1.0) - ln_gamma_real(ab + 2.0)).exp();
    let x: Vec<f64> = t.iter().map(|ti| (1.0 + ti) / 2.0).collect();
    let one_minus_x = t.iter().map(|ti| (1.0 - ti) / 2.0).collect();
    Ok(Rule1 { x, one_minus_x, w: v.into_iter().map(|vi| vi * mass).collect() })
}

/// Half-width of the exp-sinh parameter interval.
const EXP_SINH_T: f64 = 3.8;
/// Half-width of the tanh-sinh parameter interval.
const TANH_SINH_T: f64 = 3.2;

/// Tanh-sinh rule on `(0, 1)` for `∫_0^1 g(u) du` (unit weight).
fn tanh_sinh_unit(m: usize) -> Rule1 {
    let h = 2.0 * TANH_SINH_T / (m - 1) as f64;
    let mut rule = Rule1 { x: Vec::with_capacity(m), one_minus_x: Vec::with_capacity(m), w: Vec::with_capacity(m) };
    for j in 0..m {
        let t = -TANH_SINH_T + j as f64 * h;
        let q = PI / 2.0 * t.sinh();
        let u = 1.0 / (1.0 + (-2.0 * q).exp());
        let um = 1.0 / (1.0 + (2.0 * q).exp());
        rule.x.push(u);
        rule.one_minus_x.push(um);
        rule.w.push(h * 2.0 * u * um * PI / 2.0 * t.cosh());
    }
    rule
}

/// Exp-sinh rule on `(0, ∞)` for `∫_0^∞ g(y) dy` (unit weight, unit scale).
fn exp_sinh(m: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 2.0 * EXP_SINH_T / (m - 1) as f64;
    let mut x = Vec::with_capacity(m);
    let mut w = Vec::with_capacity(m);
    for j in 0..m {
        let t = -EXP_SINH_T + j as f64 * h;
        let y = (PI / 2.0 * t.sinh()).exp();
        x.push(y);
        w.push(h * y * PI / 2.0 * t.cosh());
    }
    (x, w)
}

/// A fully assembled tensor rule: chamber points `x` (sorted decreasingly)
/// with complex weights that already contain the Dunkl weight.
struct TensorRule {
    points: Vec<Vec<f64>>,
    weights: Vec<C64>,
}

/// One simplex node: the sorted point `p` (sum 1) and its weight, which
/// includes the parts of the Dunkl weight the reference rule did not absorb.
struct SimplexNode {
    p: Vec<f64>,
    weight: f64,
}

/// Simplex nodes for rank `n` in the ordered chamber.
///
/// `a = Re μ − μ0 − 1`. For the Gauss scheme the factors `x_min^a` and the
/// gap powers become Jacobi weights; for tanh-sinh every factor is
/// multiplied in here.
fn simplex_nodes(n: usize, m: usize, a: f64, k: f64, scheme: Scheme) -> Result<Vec<SimplexNode>> {
    match n {
        1 => Ok(vec![SimplexNode { p: vec![1.0], weight: 1.0 }]),
        2 => {
            // p = ((1+u)/2, (1−u)/2), dA = du/2, gap = u, x_min = (1−u)/2.
            // Weight: 4^{−a}(1+u)^a (1−u)^a u^{2k} / 2.
            let rule = match scheme {
                Scheme::GaussLaguerreScaled => gauss_jacobi_unit(m, a, 2.0 * k)?,
                Scheme::TanhSinhMapped => tanh_sinh_unit(m),
            };
            let mut out = Vec::with_capacity(m);
            for j in 0..m {
                let u = rule.x[j];
                let um = rule.one_minus_x[j];
                let mut ln_w = -a * 4f64.ln() + a * (1.0 + u).ln() - 2f64.ln();
                if scheme == Scheme::TanhSinhMapped {
                    ln_w += a * um.ln() + 2.0 * k * u.ln();
                }
                out.push(SimplexNode { p: vec![(1.0 + u) / 2.0, um / 2.0], weight: rule.w[j] * ln_w.exp() });
            }
            Ok(out)
        }
        3 => {
            // Gaps d1 = p1 − p2, d2 = p2 − p3 and p3 with 3p3 + d1 + 2d2 = 1:
            // 3p3 = v1, d1 = (1−v1)v2, 2d2 = (1−v1)(1−v2), dA = (1−v1)/6 dv.
            // Weight: p3^a d1^{2k} d2^{2k} (d1+d2)^{2k} (p1p2)^a, i.e.
            // v1^a (1−v1)^{6k+1} v2^{2k}(1−v2)^{2k} · 3^{−a} 2^{−2k}
            // (v2 + (1−v2)/2)^{2k} (p1p2)^a / 6.
            let (r1, r2) = match scheme {
                Scheme::GaussLaguerreScaled => (gauss_jacobi_unit(m, 6.0 * k + 1.0, a)?, gauss_jacobi_unit(m, 2.0 * k, 2.0 * k)?),
                Scheme::TanhSinhMapped => (tanh_sinh_unit(m), tanh_sinh_unit(m)),
            };
            let mut out = Vec::with_capacity(m * m);
            for i in 0..m {
                let (v1, v1m) = (r1.x[i], r1.one_minus_x[i]);
                for j in 0..m {
                    let (v2, v2m) = (r2.x[j], r2.one_minus_x[j]);
                    let p3 = v1 / 3.0;
                    let d1 = v1m * v2;
                    let d2 = v1m * v2m / 2.0;
                    let p = vec![p3 + d1 + d2, p3 + d2, p3];
                    let mut ln_w = -a * 3f64.ln() - 2.0 * k * 2f64.ln() + 2.0 * k * (v2 + v2m / 2.0).ln()
                        + a * (p[0] * p[1]).ln()
                        - 6f64.ln();
                    if scheme == Scheme::TanhSinhMapped {
                        ln_w += a * v1.ln() + (6.0 * k + 1.0) * v1m.ln() + 2.0 * k * (v2.ln() + v2m.ln());
                    }
                    out.push(SimplexNode { p, weight: r1.w[i] * r2.w[j] * ln_w.exp() });
                }
            }
            Ok(out)
        }
        _ => Err(Error::InvalidInput(format!("quadrature supports rank n ≤ 3, got n = {n}"))),
    }
}

fn build_rule(n: usize, m: usize, mu: C64, scale: f64, scheme: Scheme, params: &Params) -> Result<TensorRule> {
    let k = params.k_f64();
    let a = mu.re - params.mu0_f64() - 1.0;
    let radial_exp = n as f64 * mu.re - 1.0;
    let (s_nodes, s_weights): (Vec<f64>, Vec<f64>) = match scheme {
        Scheme::GaussLaguerreScaled => {
            let (y, w) = gauss_laguerre(m, radial_exp)?;
            // ∫ g(s) s^{r} ds = scale^{r+1} ∫ g(scale·y) y^r e^{−y} e^{y} dy.
            let pref = scale.powf(radial_exp + 1.0);
            let ws = y.iter().zip(&w).map(|(yi, wi)| pref * wi * yi.exp()).collect();
            (y.iter().map(|yi| scale * yi).collect(), ws)
        }
        Scheme::TanhSinhMapped => {
            let (y, w) = exp_sinh(m);
            let s: Vec<f64> = y.iter().map(|yi| scale * yi).collect();
            let ws = s.iter().zip(&w).map(|(si, wi)| scale * wi * si.powf(radial_exp)).collect();
            (s, ws)
        }
    };
    let simplex = simplex_nodes(n, m, a, k, scheme)?;
    let mut points = Vec::with_capacity(m * simplex.len());
    let mut weights = Vec::with_capacity(m * simplex.len());
    for (s, ws) in s_nodes.iter().zip(&s_weights) {
        if *ws == 0.0 || !ws.is_finite() {
            continue;
        }
        for node in &simplex {
            let x: Vec<f64> = node.p.iter().map(|pi| s * pi).collect();
            let mut w = C64::new(ws * node.weight, 0.0);
            if mu.im != 0.0 {
                let ln_delta: f64 = x.iter().map(|xi| xi.ln()).sum();
                w *= C64::new(0.0, mu.im * ln_delta).exp();
            }
            if w.norm() == 0.0 || !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            points.push(x);
            weights.push(w);
        }
    }
    Ok(TensorRule { points, weights })
}

/// All permutations of `0..n` for `n ≤ 3`, in a fixed order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    match n {
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        _ => vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]],
    }
}

/// Default relative threshold below which a node's weighted envelope is skipped.
pub const ENVELOPE_CUTOFF: f64 = 1e-18;

/// A bound `bound(x) ≥ |f(x)|` on the integrand. Nodes whose weighted bound
/// is below `cutoff` times the largest weighted bound are not evaluated.
#[derive(Clone, Copy)]
pub struct Envelope<'a> {
    pub bound: &'a dyn Fn(&[f64]) -> f64,
    pub cutoff: f64,
}

impl<'a> Envelope<'a> {
    /// Envelope with the default cutoff [`ENVELOPE_CUTOFF`].
    pub fn new(bound: &'a dyn Fn(&[f64]) -> f64) -> Self {
        Self { bound, cutoff: ENVELOPE_CUTOFF }
    }

    /// The same envelope with another relative cutoff.
    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        self.cutoff = cutoff;
        self
    }
}

impl core::fmt::Debug for Envelope<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Envelope").field("cutoff", &self.cutoff).finish_non_exhaustive()
    }
}

fn apply_rule(rule: &TensorRule, f: &dyn Fn(&[f64]) -> Result<C64>, envelope: Option<Envelope<'_>>) -> Result<(C64, usize)> {
    let n = rule.points.first().map_or(1, Vec::len);
    let perms = permutations(n);
    let mut x = vec![0.0; n];
    // First pass: weighted envelope per (node, permutation) to find what is negligible.
    let mut env_vals = Vec::new();
    let mut env_max: f64 = 0.0;
    if let Some(env) = envelope {
        let env = env.bound;
        env_vals.reserve(rule.points.len() * perms.len());
        for (p, w) in rule.points.iter().zip(&rule.weights) {
            for perm in &perms {
                for (i, pi) in perm.iter().enumerate() {
                    x[*pi] = p[i];
                }
                let v = w.norm() * env(&x);
                env_max = env_max.max(if v.is_finite() { v } else { 0.0 });
                env_vals.push(v);
            }
        }
    }
    let mut acc = C64::zero();
    let mut evals = 0;
    let mut idx = 0;
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        for perm in &perms {
            let skip = envelope.is_some_and(|e| !(env_vals[idx] > e.cutoff * env_max));
            idx += 1;
            if skip {
                continue;
            }
            for (i, pi) in perm.iter().enumerate() {
                x[*pi] = p[i];
            }
            let v = f(&x)?;
            evals += 1;
            acc += *w * v;
        }
    }
    if !(acc.re.is_finite() && acc.im.is_finite()) {
        return Err(Error::Accuracy("quadrature produced a non-finite value".into()));
    }
    Ok((acc, evals))
}

/// Radial scale from the first two moments of `s ↦ |f(s·1̲/n)| s^{nμ−1}`.
///
/// For a gamma-shaped profile `s^c e^{−s/θ}` this returns `θ` (Gauss scheme,
/// matching the Laguerre decay) or the mean (tanh-sinh scheme, centring the
/// exp-sinh nodes on the mass).
pub fn probe_scale(f: &dyn Fn(&[f64]) -> Result<C64>, n: usize, mu_re: f64, scheme: Scheme) -> f64 {
    let steps = 400;
    let (lo, hi) = (-5.0 * core::f64::consts::LN_10, 5.0 * core::f64::consts::LN_10);
    let h = (hi - lo) / steps as f64;
    let radial_exp = n as f64 * mu_re - 1.0;
    let mut m = [0.0f64; 3];
    for j in 0..=steps {
        let ls = lo + j as f64 * h;
        let s = ls.exp();
        let x = vec![s / n as f64; n];
        let g = match f(&x) {
            Ok(v) if v.norm().is_finite() => v.norm(),
            _ => 0.0,
        };
        let base = g * (ls * (radial_exp + 1.0)).exp();
        if !base.is_finite() {
            continue;
        }
        m[0] += base;
        m[1] += base * s;
        m[2] += base * s * s;
    }
    if !(m[0] > 0.0) {
        return 1.0;
    }
    let mean = m[1] / m[0];
    let var = m[2] / m[0] - mean * mean;
    let scale = match scheme {
        Scheme::GaussLaguerreScaled if var > 0.0 => var / mean,
        Scheme::GaussLaguerreScaled => mean,
        Scheme::TanhSinhMapped => mean,
    };
    if scale.is_finite() {
        scale.clamp(1e-3, 1e3)
    } else {
        1.0
    }
}

fn check_spec(spec: &QuadratureSpec, mu: C64, params: &Params) -> Result<()> {
    if spec.points_per_axis < 2 {
        return Err(Error::InvalidInput("points_per_axis must be at least 2".into()));
    }
    if let Some(s) = spec.axis_scale {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidInput(format!("axis scale must be positive, got {s}")));
        }
    }
    if spec.scheme == Scheme::GaussLaguerreScaled && !(mu.re > params.mu0_f64()) {
        return Err(Error::Domain(format!(
            "Gauss scheme needs Re μ > μ0 = {}, got {}; use the tanh-sinh scheme with a boundary-decaying integrand",
            params.mu0_f64(),
            mu.re
        )));
    }
    Ok(())
}

/// `∫_{ℝⁿ₊} f(x) Δ(x)^{μ−μ0−1} ω^A(x) dx` for `n ≤ 3`.
pub fn integrate_orthant(
    f: &dyn Fn(&[f64]) -> Result<C64>,
    mu: C64,
    spec: &QuadratureSpec,
    params: &Params,
) -> Result<QuadResult> {
    integrate_orthant_enveloped(f, None, mu, spec, params)
}

/// [`integrate_orthant`] with an optional [`Envelope`]. Skipping the nodes
/// where the weighted envelope is negligible keeps expensive integrands cheap
/// far out in the tails, and keeps integrands that lose accuracy there (such
/// as cancelling series) away from those nodes.
pub fn integrate_orthant_enveloped(
    f: &dyn Fn(&[f64]) -> Result<C64>,
    envelope: Option<Envelope<'_>>,
    mu: C64,
    spec: &QuadratureSpec,
    params: &Params,
) -> Result<QuadResult> {
    check_spec(spec, mu, params)?;
    let n = params.n();
    let m = spec.points_per_axis;
    let scale = spec.axis_scale.unwrap_or_else(|| probe_scale(f, n, mu.re, spec.scheme));
    let rule = build_rule(n, m, mu, scale, spec.scheme, params)?;
    let (value, evaluations) = apply_rule(&rule, f, envelope)?;
    let coarse = build_rule(n, coarse_points(m), mu, scale, spec.scheme, params)?;
    let (coarse_value, _) = apply_rule(&coarse, f, envelope)?;
    Ok(QuadResult { value, diagnostic: (value - coarse_value).norm(), evaluations })
}

/// A tensor rule expanded over all chambers: `Σ_i weights[i]·f(points[i])`
/// approximates `∫_{ℝⁿ₊} f(x) Δ(x)^{μ−μ0−1} ω^A(x) dx`.
///
/// Useful when many integrals share one rule, for example the moments of a
/// single function against a whole polynomial basis.
#[derive(Clone, Debug)]
pub struct OrthantRule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<C64>,
}

/// The expanded rule that [`integrate_orthant`] applies, for a fixed radial
/// scale.
pub fn orthant_rule(mu: C64, points_per_axis: usize, scheme: Scheme, scale: f64, params: &Params) -> Result<OrthantRule> {
    let spec = QuadratureSpec { points_per_axis, scheme, axis_scale: Some(scale) };
    check_spec(&spec, mu, params)?;
    let n = params.n();
    let rule = build_rule(n, points_per_axis, mu, scale, scheme, params)?;
    let perms = permutations(n);
    let mut out = OrthantRule { points: Vec::with_capacity(rule.points.len() * perms.len()), weights: Vec::new() };
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        for perm in &perms {
            let mut x = vec![0.0; n];
            for (i, pi) in perm.iter().enumerate() {
                x[*pi] = p[i];
            }
            out.points.push(x);
            out.weights.push(*w);
        }
    }
    Ok(out)
}

/// Points per axis of the coarser rule behind every diagnostic.
pub fn coarse_points(m: usize) -> usize {
    (m - core::cmp::max(2, m / 4).min(m - 2)).max(2)
}

/// `∫_{ℝⁿ} f(x) ω^B(x) dx` with `ω^B(x) = ∏|x_i|^{2k′} ∏_{i<j}|x_i² − x_j²|^{2k}`,
/// computed as `2^{−n} Σ_τ ∫_{ℝⁿ₊} f(τ√x) Δ(x)^{ν−μ0−1} ω^A(x) dx` over the
/// sign changes `τ`, with `ν` taken from `params`.
pub fn integrate_rn_b(f: &dyn Fn(&[f64]) -> Result<C64>, spec: &QuadratureSpec, params: &Params) -> Result<QuadResult> {
    let n = params.n();
    if !(params.nu_f64() > params.mu0_f64() + 0.5) {
        return Err(Error::Domain(format!(
            "type-B integration needs ν > μ0 + 1/2 (k′ > 0), got ν = {}",
            params.nu_f64()
        )));
    }
    let signs = 1usize << n;
    let g = |x: &[f64]| -> Result<C64> {
        let root: Vec<f64> = x.iter().map(|v| v.sqrt()).collect();
        let mut y = root.clone();
        let mut acc = C64::zero();
        for mask in 0..signs {
            for i in 0..n {
                y[i] = if mask >> i & 1 == 1 { -root[i] } else { root[i] };
            }
            acc += f(&y)?;
        }
        Ok(acc / signs as f64)
    };
    integrate_orthant(&g, C64::new(params.nu_f64(), 0.0), spec, params)
}

/// Checks the invariance of `dμ_inv = Δ(x)^{−μ0−1} ω^A(x) dx` under
/// `x ↦ 1/x` and `x ↦ s·x` on a test integrand `h`.
///
/// Returns `(|∫h dμ − ∫h(1/·) dμ|, |∫h dμ − ∫h(s·) dμ|)`. The weight
/// corresponds to `μ = 0`, so the tanh-sinh scheme is used and `h` must
/// decay at the boundary of the orthant and at infinity.
pub fn invariance_check_measure(
    h: &dyn Fn(&[f64]) -> Result<C64>,
    s: f64,
    points_per_axis: usize,
    params: &Params,
) -> Result<(f64, f64)> {
    let spec = QuadratureSpec::tanh_sinh(points_per_axis).with_scale(params.n() as f64);
    let zero = C64::zero();
    let direct = integrate_orthant(h, zero, &spec, params)?.value;
    let inv = |x: &[f64]| -> Result<C64> {
        let y: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
        h(&y)
    };
    let scaled = |x: &[f64]| -> Result<C64> {
        let y: Vec<f64> = x.iter().map(|v| s * v).collect();
        h(&y)
    };
    let inverted = integrate_orthant(&inv, zero, &spec, params)?.value;
    let dilated = integrate_orthant(&scaled, zero, &spec, params)?.value;
    Ok(((direct - inverted).norm(), (direct - dilated).norm()))
}
