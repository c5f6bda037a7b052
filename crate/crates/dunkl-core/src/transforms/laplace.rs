//! The Dunkl–Laplace transform `𝓛f(z) = ∫_{ℝⁿ₊} f(x) E^A(−x, z) ω^A(x) dx`
//! and the Jack Laplace identities
//!
//! ```text
//! ∫ E^A(−x, z) E_η(x) Δ(x)^{μ−μ0−1} ω^A(x) dx = Γ_n(μ̲ + η₊) E_η(1/z) Δ(z)^{−μ},
//! ```
//!
//! with the same formula for the symmetric `P_λ`.

use alloc::vec::Vec;

use crate::error::Result;
use crate::poly::{Composition, MPoly, Partition};
use crate::quad::{integrate_orthant, QuadResult, QuadratureSpec};
use crate::scalars::{gamma_n, GammaArg};
use crate::C64;

use super::{delta_power, require_right_half_plane, Engine};

/// A Jack polynomial index for [`laplace_jack_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JackIndex {
    /// The non-symmetric `E_η`.
    E(Composition),
    /// The symmetric `P_λ`.
    P(Partition),
}

/// Quadrature and closed form of one Jack Laplace identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplaceCheck {
    pub quadrature: QuadResult,
    pub closed: C64,
}

impl LaplaceCheck {
    /// `|quadrature − closed| / |closed|`.
    pub fn relative_error(&self) -> f64 {
        (self.quadrature.value - self.closed).norm() / self.closed.norm()
    }
}

/// `∫ f(x) E^A(−x, z) Δ(x)^{μ−μ0−1} ω^A(x) dx`, i.e. `𝓛(f Δ^{μ−μ0−1})(z)`.
pub fn dunkl_laplace_weighted(
    f: &dyn Fn(&[f64]) -> Result<C64>,
    mu: C64,
    z: &[C64],
    spec: &QuadratureSpec,
    engine: &Engine,
) -> Result<QuadResult> {
    require_right_half_plane("z", z)?;
    let g = |x: &[f64]| -> Result<C64> {
        let minus_x: Vec<C64> = x.iter().map(|v| C64::new(-*v, 0.0)).collect();
        Ok(f(x)? * engine.kernel_a(&minus_x, z)?)
    };
    integrate_orthant(&g, mu, spec, engine.params())
}

/// `𝓛f(z) = ∫ f(x) E^A(−x, z) ω^A(x) dx`.
pub fn dunkl_laplace(f: &dyn Fn(&[f64]) -> Result<C64>, z: &[C64], spec: &QuadratureSpec, engine: &Engine) -> Result<QuadResult> {
    let mu = C64::new(engine.params().mu0_f64() + 1.0, 0.0);
    dunkl_laplace_weighted(f, mu, z, spec, engine)
}

/// Both sides of the Jack Laplace identity for `E_η` or `P_λ`.
pub fn laplace_jack_check(index: &JackIndex, mu: C64, z: &[C64], spec: &QuadratureSpec, engine: &Engine) -> Result<LaplaceCheck> {
    require_right_half_plane("z", z)?;
    let (poly, parts): (MPoly, Vec<u32>) = match index {
        JackIndex::E(eta) => (engine.basis().nonsymmetric_jack(eta)?, eta.to_partition().parts().to_vec()),
        JackIndex::P(lambda) => (engine.basis().symmetric_jack(lambda)?, lambda.parts().to_vec()),
    };
    let compiled = poly.compile();
    let f = |x: &[f64]| -> Result<C64> { Ok(C64::new(compiled.eval_real(x), 0.0)) };
    let quadrature = dunkl_laplace_weighted(&f, mu, z, spec, engine)?;
    let shifted: Vec<C64> = parts.iter().map(|p| mu + *p as f64).collect();
    let inv_z: Vec<C64> = z.iter().map(|v| v.inv()).collect();
    let closed = gamma_n(&GammaArg::Vector(shifted), engine.params())? * poly.eval(&inv_z)? * delta_power(z, -mu);
    Ok(LaplaceCheck { quadrature, closed })
}
