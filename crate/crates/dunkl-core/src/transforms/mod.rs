//! The analytic transforms built on the series and quadrature layers.
//!
//! * [`laplace`]: the Dunkl–Laplace transform `𝓛f(z) = ∫ f(x) E^A(−x, z) ω^A(x) dx`
//!   and the Jack Laplace identities.
//! * [`hankel`]: the Hankel transform `𝓗_ν`, the type-B Dunkl transform of
//!   `ℤ₂ⁿ`-even functions and the isometry on the kernel family `e_z = E^A(·, −z)`.
//! * [`kbessel`]: 𝒦-Bessel functions with scalar and partition-shifted index.
//! * [`gauss`] and [`zeta`]: the test functions `p(x)e^{−c|x|²}`, zeta integrals,
//!   their continuation in `α`, the functional equation and the Wallach points.
//! * [`conjugation`]: the exact operator `𝓛_ν` conjugating `Δ(T^B)²` to the
//!   squared variables.
//!
//! Every numeric routine takes an [`Engine`], which owns the Jack memo tables
//! and the truncation policy for the series kernels.

pub mod conjugation;
pub mod gauss;
pub mod hankel;
pub mod kbessel;
pub mod laplace;
pub mod zeta;

pub use conjugation::{l_nu_operator, ShiftedPoly};
pub use gauss::{apply_tb_gausspoly, GaussPoly};
pub use hankel::{dunkl_transform_b_even, hankel, hankel_isometry_check, HankelPlan, HankelValue};
pub use kbessel::{kbessel, kbessel_eigen_check, kbessel_shifted};
pub use laplace::{dunkl_laplace, laplace_jack_check, JackIndex};
pub use zeta::{functional_equation_check, wallach_discrete_check, zeta_distribution, zeta_integral, ZetaRequest};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hyp::{dunkl_kernel_a_fast, TruncationConfig};
use crate::jack::JackBasis;
use crate::params::Params;
use crate::C64;

/// Jack memo tables plus the truncation policy of the series kernels.
#[derive(Debug)]
pub struct Engine {
    basis: JackBasis,
    trunc: TruncationConfig,
}

impl Engine {
    /// An engine whose series stop at `trunc.max_degree`.
    pub fn new(params: &Params, trunc: TruncationConfig) -> Self {
        Self { basis: JackBasis::new(params, trunc.max_degree), trunc }
    }

    pub fn params(&self) -> &Params {
        self.basis.params()
    }

    pub fn basis(&self) -> &JackBasis {
        &self.basis
    }

    pub fn trunc(&self) -> &TruncationConfig {
        &self.trunc
    }

    /// `E^A(w, z)`, closed form at `n ≤ 2` and series at `n = 3`.
    pub fn kernel_a(&self, w: &[C64], z: &[C64]) -> Result<C64> {
        dunkl_kernel_a_fast(w, z, &self.trunc, &self.basis)
    }
}

/// Real point as a complex vector.
pub(crate) fn to_complex(x: &[f64]) -> Vec<C64> {
    x.iter().map(|v| C64::new(*v, 0.0)).collect()
}

/// `Δ(z)^μ = ∏ z_i^μ` with principal powers, the branch that is analytic on
/// `Re z > 0` and positive on the orthant.
pub(crate) fn delta_power(z: &[C64], mu: C64) -> C64 {
    z.iter().fold(C64::new(1.0, 0.0), |acc, zi| acc * (mu * zi.ln()).exp())
}

/// Fails unless every entry has positive real part.
pub(crate) fn require_right_half_plane(name: &str, z: &[C64]) -> Result<()> {
    if z.iter().all(|v| v.re > 0.0) {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("{name} needs positive real parts componentwise")))
    }
}
