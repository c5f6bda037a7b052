//! 𝒦-Bessel functions
//!
//! ```text
//! 𝒦_ν(w, z) = ∫_{ℝⁿ₊} E^A(−x, w) E^A(−1/x, z) Δ(x)^{ν−μ0−1} ω^A(x) dx
//! ```
//!
//! and the partition-shifted version with `Δ(x)^s E_λ(x)/E_λ(1̲)` in place of
//! `Δ(x)^ν`. Both kernel factors decay exponentially, toward infinity and
//! toward the boundary of the orthant respectively, so the integral exists
//! for every index when `Re w, Re z > 0`.

use alloc::vec;
use alloc::vec::Vec;

// Float supplies the math methods on f64 when std is not linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::dunkl::{apply_dunkl_numeric, FiniteDifference};
use crate::error::{Error, Result};
use crate::params::RootSystem;
use crate::poly::{q_to_f64, CompiledPoly, Partition};
use crate::quad::{integrate_orthant_enveloped, probe_scale, Envelope, QuadResult, QuadratureSpec, Scheme};
use crate::C64;

use super::{require_right_half_plane, Engine};

/// The kernel product `E^A(−x, w) E^A(−1/x, z)`.
fn kernel_product(engine: &Engine, w: &[C64], z: &[C64], x: &[f64]) -> Result<C64> {
    let minus_x: Vec<C64> = x.iter().map(|v| C64::new(-*v, 0.0)).collect();
    let minus_inv: Vec<C64> = x.iter().map(|v| C64::new(-1.0 / *v, 0.0)).collect();
    let a = engine.kernel_a(&minus_x, w)?;
    if a.norm() == 0.0 {
        return Ok(a);
    }
    Ok(a * engine.kernel_a(&minus_inv, z)?)
}

/// The bound `e^{−min Re w Σx − min Re z Σ1/x}` on the kernel product.
fn kernel_bound(w: &[C64], z: &[C64]) -> impl Fn(&[f64]) -> f64 {
    let a = w.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    let b = z.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    move |x: &[f64]| (-a * x.iter().sum::<f64>() - b * x.iter().map(|v| 1.0 / v).sum::<f64>()).exp()
}

/// The rule actually used for a 𝒦 integral.
///
/// The factor `E^A(−1/x, z)` vanishes to infinite order at the boundary of
/// the orthant. Gauss–Jacobi rules in the chamber coordinates resolve that
/// only to about `1e−7`, while the double-exponential tanh-sinh rule reaches
/// full precision. A Gauss `spec` is therefore replaced by tanh-sinh with
/// half as many points again.
fn effective_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    if spec.scheme == Scheme::GaussLaguerreScaled {
        QuadratureSpec { points_per_axis: spec.points_per_axis * 3 / 2, scheme: Scheme::TanhSinhMapped, axis_scale: spec.axis_scale }
    } else {
        spec.clone()
    }
}

fn integrate_kernel(
    weight: &dyn Fn(&[f64]) -> f64,
    growth: u32,
    mu: C64,
    w: &[C64],
    z: &[C64],
    spec: &QuadratureSpec,
    engine: &Engine,
) -> Result<QuadResult> {
    require_right_half_plane("w", w)?;
    require_right_half_plane("z", z)?;
    let params = engine.params();
    if w.len() != params.n() || z.len() != params.n() {
        return Err(Error::VariableMismatch { expected: params.n(), found: w.len().min(z.len()) });
    }
    let spec = effective_spec(spec);
    let decay = kernel_bound(w, z);
    let bound = move |x: &[f64]| decay(x) * (1.0 + x.iter().sum::<f64>()).powi(growth as i32);
    let f = |x: &[f64]| -> Result<C64> { Ok(kernel_product(engine, w, z, x)? * weight(x)) };
    let spec = match spec.axis_scale {
        Some(_) => spec,
        None => {
            let probe = |x: &[f64]| -> Result<C64> { Ok(C64::new(bound(x), 0.0)) };
            let s = probe_scale(&probe, params.n(), mu.re, spec.scheme);
            spec.with_scale(s)
        }
    };
    integrate_orthant_enveloped(&f, Some(Envelope::new(&bound)), mu, &spec, params)
}

/// `𝒦_ν(w, z)` by quadrature. Requires `Re w, Re z > 0` componentwise.
///
/// Any index is accepted. In the middle range `|Re ν| ≤ μ0` the weight is
/// singular on the walls and the diagnostic is larger; it is reported as is.
pub fn kbessel(nu: C64, w: &[C64], z: &[C64], spec: &QuadratureSpec, engine: &Engine) -> Result<QuadResult> {
    integrate_kernel(&|_| 1.0, 0, nu, w, z, spec, engine)
}

/// The 𝒦-Bessel function with spectral index `λ = lambda_part + s·1̲`:
/// the integral of `E^A(−x, w) E^A(−1/x, z) Δ(x)^s E_λ(x)/E_λ(1̲)` against
/// `Δ(x)^{−μ0−1} ω^A(x)`.
pub fn kbessel_shifted(
    lambda_part: &Partition,
    s: C64,
    w: &[C64],
    z: &[C64],
    spec: &QuadratureSpec,
    engine: &Engine,
) -> Result<QuadResult> {
    let n = engine.params().n();
    if lambda_part.parts().len() != n {
        return Err(Error::VariableMismatch { expected: n, found: lambda_part.parts().len() });
    }
    let eta = lambda_part.to_composition();
    let layer = engine.basis().layer(lambda_part.degree())?;
    let e: CompiledPoly = layer.e(&eta)?.compile();
    let one = q_to_f64(layer.e_at_ones(&eta)?);
    let weight = move |x: &[f64]| e.eval_real(x) / one;
    integrate_kernel(&weight, lambda_part.degree(), s, w, z, spec, engine)
}

/// The index `ν − μ0 − 1` for which `f_w(x) = 𝒦_index(x², w)` solves
/// `(¼)(T_i^B)² f_w = w_i f_w` with `k′ = ν − μ0 − ½`.
pub fn kbessel_eigen_index(engine: &Engine) -> C64 {
    let p = engine.params();
    C64::new(p.nu_f64() - p.mu0_f64() - 1.0, 0.0)
}

/// Relative residuals `|(¼)(T_i^B)² f_w(x) − w_i f_w(x)| / |w_i f_w(x)|`
/// for `f_w(x) = 𝒦_index(x², w)`, one per axis.
///
/// `(T_i^B)²` is two nested [`apply_dunkl_numeric`] calls. Every evaluation
/// of `f_w` uses the same quadrature rule (the radial scale is fixed at `x`),
/// so the quadrature error varies smoothly with the point and is not blown
/// up by the second difference.
pub fn kbessel_eigen_residual(
    index: C64,
    w: &[C64],
    x: &[f64],
    fd: FiniteDifference,
    spec: &QuadratureSpec,
    engine: &Engine,
) -> Result<Vec<f64>> {
    let params = engine.params();
    let n = params.n();
    if x.len() != n || w.len() != n {
        return Err(Error::VariableMismatch { expected: n, found: x.len() });
    }
    let mut spec = effective_spec(spec);
    if spec.axis_scale.is_none() {
        let sq: Vec<C64> = x.iter().map(|v| C64::new(v * v, 0.0)).collect();
        let decay = kernel_bound(&sq, w);
        let probe = |y: &[f64]| -> Result<C64> { Ok(C64::new(decay(y), 0.0)) };
        spec.axis_scale = Some(probe_scale(&probe, n, index.re, spec.scheme));
    }
    let value = |y: &[f64]| -> Result<QuadResult> {
        let sq: Vec<C64> = y.iter().map(|v| C64::new(v * v, 0.0)).collect();
        kbessel(index, &sq, w, &spec, engine)
    };
    let centre = value(x)?;
    if centre.relative_diagnostic() > fd.h {
        return Err(Error::Accuracy(alloc::format!(
            "𝒦 quadrature diagnostic {:.3e} too large for step {:.1e}",
            centre.relative_diagnostic(),
            fd.h
        )));
    }
    let complex = w.iter().any(|v| v.im != 0.0);
    let mut out = vec![0.0; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let second = |part: fn(C64) -> f64| -> Result<f64> {
            let f = |y: &[f64]| -> Result<f64> { Ok(part(value(y)?.value)) };
            let tf = |y: &[f64]| apply_dunkl_numeric(&f, y, i, RootSystem::B, params, fd);
            apply_dunkl_numeric(&tf, x, i, RootSystem::B, params, fd)
        };
        let re = second(|c| c.re)?;
        let im = if complex { second(|c| c.im)? } else { 0.0 };
        let lhs = C64::new(re, im) * 0.25;
        let rhs = w[i] * centre.value;
        *slot = (lhs - rhs).norm() / rhs.norm();
    }
    Ok(out)
}

/// [`kbessel_eigen_residual`] at the index [`kbessel_eigen_index`].
pub fn kbessel_eigen_check(w: &[C64], x: &[f64], fd: FiniteDifference, spec: &QuadratureSpec, engine: &Engine) -> Result<Vec<f64>> {
    kbessel_eigen_residual(kbessel_eigen_index(engine), w, x, fd, spec, engine)
}
