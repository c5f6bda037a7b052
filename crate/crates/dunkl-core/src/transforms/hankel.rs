//! The Hankel transform
//!
//! ```text
//! 𝓗_ν f(w) = Γ_n(ν)^{−1} ∫_{ℝⁿ₊} f(x) ℰ_ν(x, w) Δ(x)^{ν−μ0−1} ω^A(x) dx
//! ```
//!
//! with `ℰ_ν(x, w) = 0K1(ν; x, −w) = Σ_η L_η(x) L_η(−w) / (|η|! [ν]_{η₊} L_η(1̲))`.
//!
//! Inserting the series under the integral turns the transform into a power
//! series in `−w` whose coefficients are the moments `∫ f L_η Δ^{ν−μ0−1} ω^A`.
//! [`HankelPlan`] computes those moments once with one quadrature rule and
//! then evaluates the transform at any `w` for the cost of one polynomial
//! evaluation. For `f ≥ 0` the moments are free of cancellation because the
//! `L_η` have nonnegative coefficients; what cancels is the final alternating
//! sum at large `|w|`, which callers keep in range with an [`Envelope`].

use alloc::vec;
use alloc::vec::Vec;

// Float supplies the math methods on f64 when std is not linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hyp::{check_admissible, hyp_eval, HypSpec, SeriesKind};
use crate::quad::{coarse_points, integrate_orthant, orthant_rule, probe_scale, Envelope, OrthantRule, QuadResult, QuadratureSpec};
use crate::scalars::{cdiv, gamma_n_scalar, pochhammer_gen};
use crate::C64;

use super::{delta_power, require_right_half_plane, to_complex, Engine};

/// Relative envelope cutoff used by the outer integrals of this module.
/// Below it the alternating Hankel series loses more digits than the node
/// contributes.
pub const HANKEL_ENVELOPE_CUTOFF: f64 = 1e-10;

/// A Hankel transform value with its accuracy indicators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HankelValue {
    pub value: C64,
    /// The same series built from moments on the coarser quadrature rule.
    pub coarse_value: C64,
    /// Highest degree layer added.
    pub degree_used: u32,
    /// Magnitude of the last layer added.
    pub last_layer: f64,
    /// Largest layer magnitude. `f64::EPSILON · max_layer` is the rounding
    /// floor of the alternating sum.
    pub max_layer: f64,
    /// Whether the layer tail test passed before the degree cap.
    pub converged: bool,
}

impl HankelValue {
    /// `|value − coarse_value|`, the quadrature part of the error.
    pub fn diagnostic(&self) -> f64 {
        (self.value - self.coarse_value).norm()
    }

    /// `f64::EPSILON · max_layer`, the cancellation part of the error.
    pub fn rounding_floor(&self) -> f64 {
        f64::EPSILON * self.max_layer
    }

    /// The observed absolute error of a converged sum, which is the rounding
    /// floor inflated by the relative error of the moments.
    pub fn noise_floor(&self) -> f64 {
        CANCELLATION_NOISE_FACTOR * self.rounding_floor()
    }

    /// Whether [`Self::noise_floor`] is at most `rel` times the value. Far
    /// from the origin the layers grow like `e^{Σ|w|}` while the transform
    /// decays, and the sum becomes pure noise even when the tail test passes.
    pub fn is_resolved(&self, rel: f64) -> bool {
        self.converged && self.noise_floor() <= rel * self.value.norm()
    }
}

/// Ratio of the observed cancellation error to `f64::EPSILON · max_layer`.
/// Errors of one to three units have been measured on Gaussian moments, so
/// sixteen leaves a margin.
pub const CANCELLATION_NOISE_FACTOR: f64 = 16.0;

/// Moments of one function, ready to evaluate `𝓗_ν f` anywhere.
#[derive(Debug)]
pub struct HankelPlan<'a> {
    engine: &'a Engine,
    nu: C64,
    /// Per degree, coefficients over the layer monomials of `z ↦ 𝓗_ν f(−z)`.
    fine: Vec<Vec<C64>>,
    coarse: Vec<Vec<C64>>,
}

impl<'a> HankelPlan<'a> {
    /// Collects the moments of `f0` up to the engine's degree cap.
    ///
    /// `spec` sets the moment quadrature. Without an explicit scale the
    /// radial scale is probed from `f0` itself.
    pub fn new(f0: &dyn Fn(&[f64]) -> Result<C64>, nu: C64, spec: &QuadratureSpec, engine: &'a Engine) -> Result<Self> {
        let params = engine.params();
        let n = params.n();
        if !(nu.re > params.mu0_f64()) {
            return Err(Error::Domain(alloc::format!("the Hankel transform needs Re ν > μ0 = {}", params.mu0_f64())));
        }
        let degree = engine.trunc().max_degree;
        check_admissible(&[nu], params.k_f64(), n, degree)?;
        let scale = spec.axis_scale.unwrap_or_else(|| probe_scale(f0, n, nu.re, spec.scheme));
        let fine_rule = orthant_rule(nu, spec.points_per_axis, spec.scheme, scale, params)?;
        let coarse_rule = orthant_rule(nu, coarse_points(spec.points_per_axis), spec.scheme, scale, params)?;
        let gamma = gamma_n_scalar(nu, params)?;
        let fine = Self::coefficients(f0, &fine_rule, nu, gamma, engine)?;
        let coarse = Self::coefficients(f0, &coarse_rule, nu, gamma, engine)?;
        Ok(Self { engine, nu, fine, coarse })
    }

    /// The index `ν`.
    pub fn nu(&self) -> C64 {
        self.nu
    }

    fn coefficients(
        f0: &dyn Fn(&[f64]) -> Result<C64>,
        rule: &OrthantRule,
        nu: C64,
        gamma: C64,
        engine: &Engine,
    ) -> Result<Vec<Vec<C64>>> {
        let basis = engine.basis();
        let params = engine.params();
        let degree = engine.trunc().max_degree;
        let layers = (0..=degree).map(|d| basis.numeric_layer(d)).collect::<Result<Vec<_>>>()?;
        // Monomial moments Σ_i W_i f0(x_i) x_i^α for every |α| ≤ degree.
        let mut moments: Vec<Vec<C64>> = layers.iter().map(|l| vec![C64::new(0.0, 0.0); l.monomials().len()]).collect();
        for (x, w) in rule.points.iter().zip(&rule.weights) {
            let fw = f0(x)? * *w;
            if fw.norm() == 0.0 {
                continue;
            }
            let table = power_table(x, degree as usize, 1.0);
            for (layer, m) in layers.iter().zip(moments.iter_mut()) {
                for (acc, mono) in m.iter_mut().zip(layer.monomials()) {
                    *acc += fw * monomial_from_table(&table, mono.parts(), 1.0);
                }
            }
        }
        let mut out = Vec::with_capacity(layers.len());
        let mut fact = 1.0;
        for (d, (layer, m)) in layers.iter().zip(&moments).enumerate() {
            if d > 0 {
                fact *= d as f64;
            }
            let mut coeffs = vec![C64::new(0.0, 0.0); layer.monomials().len()];
            for ((eta, row), one) in layer.compositions().iter().zip(layer.l_rows()).zip(layer.l_ones()) {
                let v: C64 = row.iter().zip(m).map(|(r, mi)| *mi * *r).sum();
                let c = cdiv(cdiv(v / (fact * *one), pochhammer_gen(nu, &eta.to_partition(), params)), gamma);
                for (a, r) in coeffs.iter_mut().zip(row) {
                    *a += c * *r;
                }
            }
            out.push(coeffs);
        }
        Ok(out)
    }

    /// `𝓗_ν f(w)`.
    pub fn eval(&self, w: &[C64]) -> Result<HankelValue> {
        let n = self.engine.params().n();
        if w.len() != n {
            return Err(Error::VariableMismatch { expected: n, found: w.len() });
        }
        let z: Vec<C64> = w.iter().map(|v| -*v).collect();
        let tol = self.engine.trunc().tail_tol;
        let mut out = HankelValue {
            value: C64::new(0.0, 0.0),
            coarse_value: C64::new(0.0, 0.0),
            degree_used: 0,
            last_layer: 0.0,
            max_layer: 0.0,
            converged: false,
        };
        let mut prev_small = false;
        let one = C64::new(1.0, 0.0);
        let table = power_table(&z, self.fine.len(), one);
        for (d, (fine, coarse)) in self.fine.iter().zip(&self.coarse).enumerate() {
            let layer = self.engine.basis().numeric_layer(d as u32)?;
            let mut s = C64::new(0.0, 0.0);
            let mut sc = C64::new(0.0, 0.0);
            for ((c, cc), mono) in fine.iter().zip(coarse).zip(layer.monomials()) {
                let m = monomial_from_table(&table, mono.parts(), one);
                s += *c * m;
                sc += *cc * m;
            }
            out.value += s;
            out.coarse_value += sc;
            out.degree_used = d as u32;
            out.last_layer = s.norm();
            out.max_layer = out.max_layer.max(out.last_layer);
            // Once the layers are below the rounding of the largest one,
            // further terms cannot change the computed sum.
            let small = out.last_layer <= tol * out.value.norm() || out.last_layer <= f64::EPSILON * out.max_layer;
            if d > 0 && small && prev_small {
                out.converged = true;
                break;
            }
            prev_small = small;
        }
        Ok(out)
    }

    /// `𝓗_ν f(x)` at a real point, failing when the series has not converged.
    pub fn eval_real_converged(&self, x: &[f64]) -> Result<C64> {
        let v = self.eval(&to_complex(x))?;
        if !v.converged {
            return Err(Error::Accuracy(alloc::format!(
                "Hankel series not converged at degree {} (last layer {:.3e})",
                v.degree_used,
                v.last_layer
            )));
        }
        Ok(v.value)
    }
}

/// `table[i][a] = x_i^a` for `a ≤ degree`.
fn power_table<T: Copy + core::ops::Mul<Output = T>>(x: &[T], degree: usize, one: T) -> Vec<Vec<T>> {
    x.iter()
        .map(|xi| {
            let mut row = Vec::with_capacity(degree + 1);
            let mut p = one;
            for _ in 0..=degree {
                row.push(p);
                p = p * *xi;
            }
            row
        })
        .collect()
}

fn monomial_from_table<T: Copy + core::ops::Mul<Output = T>>(table: &[Vec<T>], parts: &[u32], one: T) -> T {
    table.iter().zip(parts).fold(one, |acc, (row, a)| acc * row[*a as usize])
}

/// `𝓗_ν f0(w)` for a single point. Prefer [`HankelPlan`] for many points.
pub fn hankel(f0: &dyn Fn(&[f64]) -> Result<C64>, nu: C64, w: &[C64], spec: &QuadratureSpec, engine: &Engine) -> Result<HankelValue> {
    HankelPlan::new(f0, nu, spec, engine)?.eval(w)
}

/// The type-B Dunkl transform of the `ℤ₂ⁿ`-even function `f(x) = f0(x²)`:
/// `𝓕^B f(ξ) = 2^{−nν} 𝓗_ν f0(ξ²/4)`.
pub fn dunkl_transform_b_even(
    f0: &dyn Fn(&[f64]) -> Result<C64>,
    nu: C64,
    xi: &[C64],
    spec: &QuadratureSpec,
    engine: &Engine,
) -> Result<HankelValue> {
    let plan = HankelPlan::new(f0, nu, spec, engine)?;
    dunkl_transform_b_even_planned(&plan, xi)
}

/// [`dunkl_transform_b_even`] with precomputed moments of `f0`.
pub fn dunkl_transform_b_even_planned(plan: &HankelPlan<'_>, xi: &[C64]) -> Result<HankelValue> {
    let n = plan.engine.params().n();
    let w: Vec<C64> = xi.iter().map(|v| *v * *v / 4.0).collect();
    let mut v = plan.eval(&w)?;
    let factor = (-(n as f64) * plan.nu * core::f64::consts::LN_2).exp();
    v.value *= factor;
    v.coarse_value *= factor;
    v.last_layer *= factor.norm();
    v.max_layer *= factor.norm();
    Ok(v)
}

/// The kernel family `e_z(x) = E^A(−x, z)` at a real point.
pub fn kernel_family(engine: &Engine, z: &[C64], x: &[f64]) -> Result<C64> {
    let minus_x: Vec<C64> = x.iter().map(|v| C64::new(-*v, 0.0)).collect();
    engine.kernel_a(&minus_x, z)
}

/// The closed form `⟨e_z, e_w⟩ = Γ_n(ν) Δ(z)^{−ν} ₁K₀(ν; w̄, −1/z)` of the
/// weighted inner product on the kernel family. The series needs
/// `‖w‖∞ ‖1/z‖∞ < 1`.
pub fn kernel_inner_product_closed(z: &[C64], w: &[C64], nu: C64, engine: &Engine) -> Result<C64> {
    require_right_half_plane("z", z)?;
    require_right_half_plane("w", w)?;
    let w_bar: Vec<C64> = w.iter().map(|v| v.conj()).collect();
    let minus_inv_z: Vec<C64> = z.iter().map(|v| -v.inv()).collect();
    let spec = HypSpec::new(vec![nu], Vec::new(), SeriesKind::K);
    let series = hyp_eval(&spec, &w_bar, &minus_inv_z, engine.trunc(), engine.basis())?;
    if !series.converged {
        return Err(Error::Accuracy("₁K₀ series did not converge".into()));
    }
    Ok(gamma_n_scalar(nu, engine.params())? * delta_power(z, -nu) * series.value)
}

/// `⟨e_z, e_w⟩ = ∫ e_z ē_w Δ^{ν−μ0−1} ω^A` by quadrature.
pub fn kernel_inner_product_quad(z: &[C64], w: &[C64], nu: C64, spec: &QuadratureSpec, engine: &Engine) -> Result<QuadResult> {
    require_right_half_plane("z", z)?;
    require_right_half_plane("w", w)?;
    let f = |x: &[f64]| -> Result<C64> { Ok(kernel_family(engine, z, x)? * kernel_family(engine, w, x)?.conj()) };
    integrate_orthant(&f, nu, spec, engine.params())
}

/// `min_i Re(1/z_i)`, the decay rate of `𝓗_ν e_z = Δ(z)^{−ν} E^A(·, −1/z)`.
fn inverse_decay(z: &[C64]) -> f64 {
    z.iter().map(|v| v.inv().re).fold(f64::INFINITY, f64::min)
}

/// Both sides of the isometry `⟨𝓗_ν e_z, 𝓗_ν e_w⟩ = ⟨e_z, e_w⟩`.
#[derive(Clone, Copy, Debug)]
pub struct IsometryReport {
    /// `⟨𝓗_ν e_z, 𝓗_ν e_w⟩`: outer quadrature over two Hankel plans.
    pub transformed: QuadResult,
    /// `⟨e_z, e_w⟩` by quadrature.
    pub direct: QuadResult,
    /// `⟨e_z, e_w⟩` in closed form, when the series is in its domain.
    pub closed: Option<C64>,
}

/// Computes the three numbers of [`IsometryReport`].
///
/// The Hankel images are evaluated through their moment series, never
/// through the kernel law. The outer quadrature skips nodes where
/// `e^{−Σx (a_z + a_w)}`, with `a_z = min Re(1/z_i)`, is below
/// [`HANKEL_ENVELOPE_CUTOFF`]. This bound on the images comes from
/// `|E^A(−x, y)| ≤ e^{−min(Re y) Σx}`.
pub fn hankel_isometry_check(z: &[C64], w: &[C64], nu: C64, spec: &QuadratureSpec, engine: &Engine) -> Result<IsometryReport> {
    require_right_half_plane("z", z)?;
    require_right_half_plane("w", w)?;
    let params = engine.params();
    let n = params.n();
    let ez = |x: &[f64]| kernel_family(engine, z, x);
    let ew = |x: &[f64]| kernel_family(engine, w, x);
    let plan_z = HankelPlan::new(&ez, nu, spec, engine)?;
    let plan_w = HankelPlan::new(&ew, nu, spec, engine)?;
    let decay = inverse_decay(z) + inverse_decay(w);
    let bound = move |x: &[f64]| (-decay * x.iter().sum::<f64>()).exp();
    let envelope = Envelope::new(&bound).with_cutoff(HANKEL_ENVELOPE_CUTOFF);
    let bound_c = |x: &[f64]| -> Result<C64> { Ok(C64::new(bound(x), 0.0)) };
    let scale = spec.axis_scale.unwrap_or_else(|| probe_scale(&bound_c, n, nu.re, spec.scheme));
    let outer = QuadratureSpec { axis_scale: Some(scale), ..spec.clone() };
    let product = |x: &[f64]| -> Result<C64> { Ok(plan_z.eval_real_converged(x)? * plan_w.eval_real_converged(x)?.conj()) };
    let transformed = crate::quad::integrate_orthant_enveloped(&product, Some(envelope), nu, &outer, params)?;
    let direct = kernel_inner_product_quad(z, w, nu, spec, engine)?;
    let closed = kernel_inner_product_closed(z, w, nu, engine).ok();
    Ok(IsometryReport { transformed, direct, closed })
}

/// `𝓛((𝓗_ν f)Δ^{ν−μ0−1})(z) = ∫ 𝓗_ν f(x) E^A(−x, z) Δ(x)^{ν−μ0−1} ω^A(x) dx`
/// by quadrature over the plan, for `f = e_w`.
///
/// The nodes are trimmed with the bound `e^{−Σx (a_w + min Re z)}` on the
/// integrand, as in [`hankel_isometry_check`].
pub fn laplace_of_hankel_kernel_family(w: &[C64], z: &[C64], nu: C64, spec: &QuadratureSpec, engine: &Engine) -> Result<QuadResult> {
    require_right_half_plane("z", z)?;
    require_right_half_plane("w", w)?;
    let params = engine.params();
    let n = params.n();
    let ew = |x: &[f64]| kernel_family(engine, w, x);
    let plan = HankelPlan::new(&ew, nu, spec, engine)?;
    let decay = inverse_decay(w) + z.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    let bound = move |x: &[f64]| (-decay * x.iter().sum::<f64>()).exp();
    let envelope = Envelope::new(&bound).with_cutoff(HANKEL_ENVELOPE_CUTOFF);
    let bound_c = |x: &[f64]| -> Result<C64> { Ok(C64::new(bound(x), 0.0)) };
    let scale = spec.axis_scale.unwrap_or_else(|| probe_scale(&bound_c, n, nu.re, spec.scheme));
    let outer = QuadratureSpec { axis_scale: Some(scale), ..spec.clone() };
    let f = |x: &[f64]| -> Result<C64> { Ok(plan.eval_real_converged(x)? * kernel_family(engine, z, x)?) };
    crate::quad::integrate_orthant_enveloped(&f, Some(envelope), nu, &outer, params)
}
