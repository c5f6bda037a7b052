//! Truncated Jack hypergeometric series and the kernels built from them.
//!
//! For parameter lists `μ = (μ_1, …, μ_p)` and `ν = (ν_1, …, ν_q)` the two
//! series are
//!
//! ```text
//! pKq(μ; ν; w, z) = Σ_η  [μ]_{η₊} / [ν]_{η₊} · L_η(w) L_η(z) / (|η|! L_η(1̲))
//! pFq(μ; ν; w, z) = Σ_λ  [μ]_λ / [ν]_λ · C_λ(w) C_λ(z) / (|λ|! C_λ(1̲))
//! ```
//!
//! with `[μ]_λ = ∏_i [μ_i]_λ`. They are summed degree layer by degree layer.
//! The Dunkl kernel is `E^A = 0K0` and the Bessel kernels are
//! `ℰ_ν(w, z) = 0K1(ν; w, −z)` and `𝒥_ν(w, z) = 0F1(ν; w, −z)`.
//!
//! For rank `n ≤ 2` the Dunkl kernel also has a closed form through the
//! confluent function `₁F₁`, which stays accurate where the series cancels
//! badly; [`dunkl_kernel_a_closed`] provides it.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

// Float supplies the math methods on f64 when std is not linked.
#[allow(unused_imports)]
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::jack::{dot_row, JackBasis, NumericLayer};
use crate::poly::{Composition, MPoly, Partition, Q};
use crate::scalars::{cdiv, gamma, pochhammer_gen, pochhammer_gen_q};
use crate::C64;

/// Ratio of the largest layer to the partial sum above which [`hyp_eval`]
/// refuses to answer.
pub const CANCELLATION_GUARD: f64 = 1e6;

/// Truncation policy of the series engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationConfig {
    /// Largest degree layer that is summed.
    pub max_degree: u32,
    /// Summation stops once two consecutive layers are below `tail_tol`
    /// times the partial sum.
    pub tail_tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self { max_degree: 30, tail_tol: 1e-15 }
    }
}

/// Non-symmetric (`K`, Jack `L_η`) or symmetric (`F`, Jack `C_λ`) series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    K,
    F,
}

/// Numerator and denominator parameters of a series.
#[derive(Clone, Debug, PartialEq)]
pub struct HypSpec {
    pub p_params: Vec<C64>,
    pub q_params: Vec<C64>,
    pub kind: SeriesKind,
}

impl HypSpec {
    /// Series with the given parameter lists.
    pub fn new(p_params: Vec<C64>, q_params: Vec<C64>, kind: SeriesKind) -> Self {
        Self { p_params, q_params, kind }
    }
}

/// A truncated series value together with its accuracy report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypValue {
    pub value: C64,
    /// Highest degree layer included in `value`.
    pub degree_used: u32,
    /// Magnitude of the last included layer.
    pub last_layer: f64,
    /// Magnitude of the largest layer.
    pub max_layer: f64,
    /// Whether the tail criterion was met before `max_degree`.
    pub converged: bool,
}

impl HypValue {
    /// `last_layer / |value|`, the accuracy proxy of the truncation.
    pub fn relative_tail(&self) -> f64 {
        let v = self.value.norm();
        if v == 0.0 {
            self.last_layer
        } else {
            self.last_layer / v
        }
    }
}

/// Rejects denominator parameters that hit `{0, k, …, k(n−1)} − ℕ₀` before
/// degree `depth`.
pub fn check_admissible(q_params: &[C64], k: f64, n: usize, depth: u32) -> Result<()> {
    for nu in q_params {
        for j in 0..n {
            for m in 0..depth.max(1) {
                let v = *nu - k * j as f64 + m as f64;
                if v.norm() < 1e-12 {
                    return Err(Error::Pole(format!(
                        "denominator parameter {nu} is inadmissible: [ν]_λ vanishes at depth {m}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn check_domain(spec: &HypSpec, w: &[C64], z: &[C64]) -> Result<()> {
    let p = spec.p_params.len();
    let q = spec.q_params.len();
    if p > q + 1 {
        return Err(Error::Domain(format!("{p}K{q} series with p > q + 1 diverge")));
    }
    if p == q + 1 {
        let inf = |v: &[C64]| v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let r = inf(w) * inf(z);
        if r >= 1.0 {
            return Err(Error::Domain(format!("p = q + 1 needs ‖w‖∞‖z‖∞ < 1, got {r}")));
        }
    }
    Ok(())
}

fn check_point(n: usize, v: &[C64]) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::VariableMismatch { expected: n, found: v.len() })
    }
}

/// The scalar `[μ]_λ / ([ν]_λ · |λ|!)` multiplying the Jack products.
fn layer_factor(spec: &HypSpec, lambda: &Partition, fact: f64, basis: &JackBasis) -> C64 {
    let params = basis.params();
    let mut c = C64::new(1.0 / fact, 0.0);
    for mu in &spec.p_params {
        c *= pochhammer_gen(*mu, lambda, params);
    }
    for nu in &spec.q_params {
        c = cdiv(c, pochhammer_gen(*nu, lambda, params));
    }
    c
}

/// Rows of the Jack functions that make up a series layer, with their
/// index partitions and values at `1̲`.
fn layer_jacks<'a>(spec: &HypSpec, layer: &'a NumericLayer) -> (Vec<Partition>, &'a [Vec<f64>], &'a [f64]) {
    match spec.kind {
        SeriesKind::K => (layer.compositions().iter().map(Composition::to_partition).collect(), layer.l_rows(), layer.l_ones()),
        SeriesKind::F => (layer.partitions().to_vec(), layer.c_rows(), layer.c_ones()),
    }
}

/// Per-degree weights: the layer `d` equals `Σ_i coeff_i · J_i(z)` where
/// `J_i` runs over the `L_η` or `C_λ` of degree `d`.
fn layer_weights(spec: &HypSpec, w: &[C64], d: u32, fact: f64, basis: &JackBasis) -> Result<Vec<C64>> {
    let layer = basis.numeric_layer(d)?;
    let monos = layer.monomial_values(w);
    let (parts, rows, ones) = layer_jacks(spec, layer);
    Ok(parts
        .iter()
        .zip(rows)
        .zip(ones)
        .map(|((lambda, row), one)| layer_factor(spec, lambda, fact, basis) * dot_row(row, &monos) / *one)
        .collect())
}

/// Evaluates `pKq` or `pFq` at `(w, z)`.
///
/// Layers are added until two consecutive ones fall below
/// `tail_tol · |partial sum|` or `max_degree` is reached; in the latter case
/// `converged` is false and the caller decides whether that is acceptable.
/// The evaluation is refused when the largest layer exceeds
/// [`CANCELLATION_GUARD`] times the result.
pub fn hyp_eval(spec: &HypSpec, w: &[C64], z: &[C64], trunc: &TruncationConfig, basis: &JackBasis) -> Result<HypValue> {
    let params = basis.params();
    let n = params.n();
    check_point(n, w)?;
    check_point(n, z)?;
    check_domain(spec, w, z)?;
    check_admissible(&spec.q_params, params.k_f64(), n, trunc.max_degree)?;
    let raw = sum_layers(trunc, |d, fact| {
        let layer = basis.numeric_layer(d)?;
        let weights = layer_weights(spec, w, d, fact, basis)?;
        let monos = layer.monomial_values(z);
        let (_, rows, _) = layer_jacks(spec, layer);
        Ok(weights.iter().zip(rows).map(|(c, row)| *c * dot_row(row, &monos)).sum())
    })?;
    if raw.max_layer > CANCELLATION_GUARD * raw.value.norm() {
        return Err(Error::Accuracy(format!(
            "series ill-conditioned: largest layer {:.3e} against value {:.3e}",
            raw.max_layer,
            raw.value.norm()
        )));
    }
    Ok(raw)
}

fn sum_layers(trunc: &TruncationConfig, mut layer: impl FnMut(u32, f64) -> Result<C64>) -> Result<HypValue> {
    let mut sum = C64::zero();
    let mut fact = 1.0;
    let mut prev_small = false;
    let mut out = HypValue { value: sum, degree_used: 0, last_layer: 0.0, max_layer: 0.0, converged: false };
    for d in 0..=trunc.max_degree {
        if d > 0 {
            fact *= d as f64;
        }
        let s = layer(d, fact)?;
        sum += s;
        let mag = s.norm();
        out.value = sum;
        out.degree_used = d;
        out.last_layer = mag;
        out.max_layer = out.max_layer.max(mag);
        let small = mag <= trunc.tail_tol * sum.norm();
        if d > 0 && small && prev_small {
            out.converged = true;
            break;
        }
        prev_small = small;
    }
    Ok(out)
}

/// A series with its first argument fixed, stored as one coefficient vector
/// per degree layer over the monomials of that degree.
///
/// Useful when the same kernel `z ↦ F(w, z)` is evaluated at many points,
/// as in quadrature. No cancellation guard is applied; the caller receives
/// the layer magnitudes and does its own error accounting.
#[derive(Clone, Debug)]
pub struct FrozenSeries<'a> {
    basis: &'a JackBasis,
    layers: Vec<Vec<C64>>,
}

impl<'a> FrozenSeries<'a> {
    /// Collects the layers `0..=max_degree` of `spec` at the fixed point `w`.
    pub fn new(spec: &HypSpec, w: &[C64], max_degree: u32, basis: &'a JackBasis) -> Result<Self> {
        let params = basis.params();
        let n = params.n();
        check_point(n, w)?;
        check_admissible(&spec.q_params, params.k_f64(), n, max_degree)?;
        if spec.p_params.len() > spec.q_params.len() {
            return Err(Error::Domain("frozen series are only provided for entire series (p ≤ q)".into()));
        }
        let mut layers = Vec::with_capacity(max_degree as usize + 1);
        let mut fact = 1.0;
        for d in 0..=max_degree {
            if d > 0 {
                fact *= d as f64;
            }
            let layer = basis.numeric_layer(d)?;
            let weights = layer_weights(spec, w, d, fact, basis)?;
            let (_, rows, _) = layer_jacks(spec, layer);
            let mut acc = alloc::vec![C64::zero(); layer.monomials().len()];
            for (c, row) in weights.iter().zip(rows) {
                for (a, v) in acc.iter_mut().zip(row) {
                    *a += *c * *v;
                }
            }
            layers.push(acc);
        }
        Ok(Self { basis, layers })
    }

    /// Highest stored degree.
    pub fn max_degree(&self) -> u32 {
        (self.layers.len() - 1) as u32
    }

    /// Sums all stored layers at `z` and reports the layer magnitudes.
    pub fn eval(&self, z: &[C64]) -> Result<HypValue> {
        check_point(self.basis.params().n(), z)?;
        let mut out = HypValue { value: C64::zero(), degree_used: 0, last_layer: 0.0, max_layer: 0.0, converged: true };
        for (d, coeffs) in self.layers.iter().enumerate() {
            let monos = self.basis.numeric_layer(d as u32)?.monomial_values(z);
            let s = coeffs.iter().zip(&monos).fold(C64::zero(), |acc, (c, m)| acc + *c * *m);
            out.value += s;
            out.degree_used = d as u32;
            out.last_layer = s.norm();
            out.max_layer = out.max_layer.max(out.last_layer);
        }
        Ok(out)
    }
}

/// The type-A Dunkl kernel `E^A(w, z) = 0K0(w, z)` by the series.
pub fn dunkl_kernel_a(w: &[C64], z: &[C64], trunc: &TruncationConfig, basis: &JackBasis) -> Result<HypValue> {
    hyp_eval(&HypSpec::new(Vec::new(), Vec::new(), SeriesKind::K), w, z, trunc, basis)
}

/// Which Bessel kernel [`bessel_kernel`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    /// `ℰ_ν(w, z) = 0K1(ν; w, −z)`.
    E,
    /// `𝒥_ν(w, z) = 0F1(ν; w, −z)`.
    J,
}

/// The type-A Bessel kernels `ℰ_ν` and `𝒥_ν` by the series.
pub fn bessel_kernel(
    kind: BesselKind,
    nu: C64,
    w: &[C64],
    z: &[C64],
    trunc: &TruncationConfig,
    basis: &JackBasis,
) -> Result<HypValue> {
    let series = match kind {
        BesselKind::E => SeriesKind::K,
        BesselKind::J => SeriesKind::F,
    };
    let minus_z: Vec<C64> = z.iter().map(|v| -*v).collect();
    hyp_eval(&HypSpec::new(Vec::new(), alloc::vec![nu], series), w, &minus_z, trunc, basis)
}

/// Exact degree-`≤ max_degree` truncation of a series with rational
/// parameters, as a polynomial in `z` with the first argument fixed at the
/// rational point `w`.
pub fn series_poly_q(
    p_params: &[Q],
    q_params: &[Q],
    kind: SeriesKind,
    w: &[Q],
    max_degree: u32,
    basis: &JackBasis,
) -> Result<MPoly> {
    let params = basis.params();
    let n = params.n();
    if w.len() != n {
        return Err(Error::VariableMismatch { expected: n, found: w.len() });
    }
    let k = params.k();
    let ratio = |lambda: &Partition| -> Result<Q> {
        let mut c = Q::one();
        for mu in p_params {
            c *= pochhammer_gen_q(mu, lambda, k);
        }
        for nu in q_params {
            let den = pochhammer_gen_q(nu, lambda, k);
            if den.is_zero() {
                return Err(Error::Pole(format!("[{nu}]_{lambda} vanishes")));
            }
            c /= den;
        }
        Ok(c)
    };
    let mut out = MPoly::zero(n);
    let mut fact = Q::one();
    for d in 0..=max_degree {
        if d > 0 {
            fact *= Q::from_integer(d.into());
        }
        let layer = basis.layer(d)?;
        match kind {
            SeriesKind::K => {
                for eta in layer.compositions() {
                    let l = layer.l(eta)?;
                    let c = ratio(&eta.to_partition())? * l.eval_q(w)? / (&fact * layer.l_at_ones(eta)?);
                    out.add_scaled(&l, &c);
                }
            }
            SeriesKind::F => {
                for lambda in layer.partitions() {
                    let cl = layer.c(lambda)?;
                    let c = ratio(lambda)? * cl.eval_q(w)? / (&fact * layer.c_at_ones(lambda)?);
                    out.add_scaled(&cl, &c);
                }
            }
        }
    }
    Ok(out)
}

/// `1/Γ(z)`, zero at the poles.
fn recip_gamma(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Ok(C64::zero());
    }
    Ok(gamma(z)?.inv())
}

/// Argument size beyond which `₁F₁` switches to its asymptotic expansion.
fn kummer_asymptotic_threshold(a: f64, b: f64) -> f64 {
    60.0 + (a.abs() + b.abs()).powi(2)
}

/// `₁F₁(a; b; x)` as `(m, s)` with value `m · e^s`. Moderate arguments use
/// the power series with rescaling (intended for `Re x ≥ 0`, where the terms
/// do not alternate); large ones use the two-term asymptotic expansion.
fn kummer_scaled(a: f64, b: f64, x: C64) -> Result<(C64, f64)> {
    if x.norm() > kummer_asymptotic_threshold(a, b) {
        return kummer_asymptotic(a, b, x);
    }
    const RESCALE: f64 = 1e200;
    let mut term = C64::one();
    let mut sum = C64::one();
    let mut log_scale = 0.0;
    let xn = x.norm();
    for m in 0..100_000u32 {
        let mf = m as f64;
        term *= x * ((a + mf) / ((b + mf) * (mf + 1.0)));
        sum += term;
        if sum.norm() > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            log_scale += RESCALE.ln();
        }
        if term == C64::zero() || (term.norm() <= 1e-17 * sum.norm() && mf > xn) {
            return Ok((sum, log_scale));
        }
    }
    Err(Error::Accuracy(format!("₁F₁({a}; {b}; {x}) did not converge")))
}

/// Asymptotic sum `Σ_s (p)_s (q)_s / s! · y^{−s}`, stopped at the smallest term.
fn asymptotic_sum(p: f64, q: f64, y: C64) -> C64 {
    let mut term = C64::one();
    let mut sum = C64::one();
    let mut last = f64::INFINITY;
    for s in 0..500u32 {
        let sf = s as f64;
        let next = term * ((p + sf) * (q + sf) / (sf + 1.0)) / y;
        let mag = next.norm();
        if mag >= last || mag <= 1e-17 * sum.norm() {
            if mag <= 1e-17 * sum.norm() {
                sum += next;
            }
            break;
        }
        sum += next;
        term = next;
        last = mag;
    }
    sum
}

/// Large-argument expansion of `₁F₁(a; b; x)`:
/// `Γ(b)[e^{±iπa} x^{−a}/Γ(b−a) Σ(a)_s(a−b+1)_s/s! (−x)^{−s} + e^x x^{a−b}/Γ(a) Σ(1−a)_s(b−a)_s/s! x^{−s}]`,
/// with the upper sign when `Im x ≥ 0`.
fn kummer_asymptotic(a: f64, b: f64, x: C64) -> Result<(C64, f64)> {
    let gb = gamma(C64::new(b, 0.0))?;
    let sign = if x.im >= 0.0 { 1.0 } else { -1.0 };
    let ln_x = x.ln();
    let scale = x.re;
    let first = C64::new(0.0, sign * PI * a).exp()
        * (-a * ln_x - scale).exp()
        * recip_gamma(C64::new(b - a, 0.0))?
        * asymptotic_sum(a, a - b + 1.0, -x);
    let second = (C64::new(0.0, x.im) + (a - b) * ln_x).exp()
        * recip_gamma(C64::new(a, 0.0))?
        * asymptotic_sum(1.0 - a, b - a, x);
    Ok((gb * (first + second), scale))
}

/// The rank-one kernel `E_k(t) = e^t ₁F₁(k; 2k+1; −2t)` as `(m, s)` with
/// value `m · e^s`. Kummer's transformation picks the form whose series has
/// no cancellation for real `t`.
fn rank_one_kernel_scaled(k: f64, t: C64) -> Result<(C64, f64)> {
    let (prefactor, (m, s)) = if t.re <= 0.0 {
        (t, kummer_scaled(k, 2.0 * k + 1.0, -2.0 * t)?)
    } else {
        (-t, kummer_scaled(k + 1.0, 2.0 * k + 1.0, 2.0 * t)?)
    };
    let phase = C64::new(0.0, prefactor.im).exp();
    Ok((m * phase, s + prefactor.re))
}

/// The type-A Dunkl kernel in closed form for rank `n ≤ 2`:
/// `E^A(w, z) = e^{wz}` for `n = 1` and
/// `E^A(w, z) = e^{(w_1+w_2)(z_1+z_2)/2} E_k((w_1−w_2)(z_1−z_2)/2)` for `n = 2`,
/// where `E_k` is the rank-one Dunkl kernel with multiplicity `k`.
pub fn dunkl_kernel_a_closed(w: &[C64], z: &[C64], k: f64) -> Result<C64> {
    if w.len() != z.len() {
        return Err(Error::VariableMismatch { expected: w.len(), found: z.len() });
    }
    match w.len() {
        1 => Ok((w[0] * z[0]).exp()),
        2 => {
            let s = (w[0] + w[1]) * (z[0] + z[1]) * 0.5;
            let t = (w[0] - w[1]) * (z[0] - z[1]) * 0.5;
            let (m, scale) = rank_one_kernel_scaled(k, t)?;
            Ok(m * (s + scale).exp())
        }
        n => Err(Error::InvalidInput(format!("closed-form Dunkl kernel is only available for n ≤ 2, got n = {n}"))),
    }
}

/// `ln |E^A(w, z)|` for `n ≤ 2`, finite even where the value under- or
/// overflows. Used to build decay envelopes for quadrature.
pub fn dunkl_kernel_a_closed_ln_abs(w: &[C64], z: &[C64], k: f64) -> Result<f64> {
    match w.len() {
        1 => Ok((w[0] * z[0]).re),
        2 => {
            let s = (w[0] + w[1]) * (z[0] + z[1]) * 0.5;
            let t = (w[0] - w[1]) * (z[0] - z[1]) * 0.5;
            let (m, scale) = rank_one_kernel_scaled(k, t)?;
            Ok(s.re + scale + m.norm().ln())
        }
        n => Err(Error::InvalidInput(format!("closed-form Dunkl kernel is only available for n ≤ 2, got n = {n}"))),
    }
}

/// `E^A(w, z)` by the closed form when `n ≤ 2` and by the series otherwise.
pub fn dunkl_kernel_a_fast(w: &[C64], z: &[C64], trunc: &TruncationConfig, basis: &JackBasis) -> Result<C64> {
    if w.len() <= 2 {
        check_point(basis.params().n(), w)?;
        check_point(basis.params().n(), z)?;
        dunkl_kernel_a_closed(w, z, basis.params().k_f64())
    } else {
        Ok(dunkl_kernel_a(w, z, trunc, basis)?.value)
    }
}
