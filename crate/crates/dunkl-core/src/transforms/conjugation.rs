//! The operator `𝓛_ν = 4ⁿ Δ(x)^{1+μ0−ν} Δ(T^A) Δ(x)^{ν−μ0} Δ(T^A)`, which
//! satisfies `Δ(T^B)² f = (𝓛_ν f0)(x²)` for even `f(x) = f0(x²)`.
//!
//! The intermediate function `Δ^{ν−μ0}·q` is not a polynomial when `ν` is
//! not an integer shift of `μ0`, so it is carried exactly as a
//! [`ShiftedPoly`]. The final result is again a polynomial.

use num_traits::{One, Zero};

use crate::dunkl::{apply_delta_dunkl, apply_delta_dunkl_b_squared, apply_dunkl};
use crate::error::{Error, Result};
use crate::params::{Params, RootSystem};
use crate::poly::{Composition, MPoly, Q};

/// The function `Δ(x)^shift · poly(x)` with a rational shift.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedPoly {
    pub shift: Q,
    pub poly: MPoly,
}

impl ShiftedPoly {
    /// `Δ^shift · poly`.
    pub fn new(shift: Q, poly: MPoly) -> Self {
        Self { shift, poly }
    }

    /// `Δ^s · Δ^{shift} poly`.
    pub fn times_delta_power(&self, s: &Q) -> ShiftedPoly {
        Self { shift: &self.shift + s, poly: self.poly.clone() }
    }

    /// The plain polynomial `Δ^shift · poly` when the shift is a nonnegative
    /// integer, or when it is a negative integer that divides out exactly.
    pub fn to_poly(&self) -> Option<MPoly> {
        if !self.shift.is_integer() {
            return None;
        }
        let n = self.poly.n();
        let s = self.shift.to_integer();
        let e: u32 = s.magnitude().try_into().ok()?;
        let delta_e = Composition::new(alloc::vec![e; n]);
        if s >= Zero::zero() {
            Some(self.poly.shift(&delta_e))
        } else {
            self.poly.div_monomial(&delta_e)
        }
    }
}

/// `T_i^A(Δ^s q) = Δ^{s−1}(Δ · T_i^A q + s · q · ∏_{j≠i} x_j)`.
///
/// `Δ^s` is symmetric, so the reflection parts of `T_i^A` pass through it
/// and only the derivative of `Δ^s` adds a term.
pub fn apply_dunkl_a_shifted(f: &ShiftedPoly, i: usize, params: &Params) -> Result<ShiftedPoly> {
    let n = params.n();
    if f.poly.n() != n {
        return Err(Error::VariableMismatch { expected: n, found: f.poly.n() });
    }
    let delta = MPoly::delta(n);
    let mut poly = apply_dunkl(&f.poly, i, RootSystem::A, params)?.try_mul(&delta)?;
    if !f.shift.is_zero() {
        let mut others = alloc::vec![1u32; n];
        others[i] = 0;
        let cofactor = f.poly.shift(&Composition::new(others));
        poly.add_scaled(&cofactor, &f.shift);
    }
    Ok(ShiftedPoly { shift: &f.shift - Q::one(), poly })
}

/// `𝓛_ν f0`, exact.
pub fn l_nu_operator(f0: &MPoly, params: &Params) -> Result<MPoly> {
    let n = params.n();
    let mu0 = params.mu0();
    let inner = apply_delta_dunkl(f0, RootSystem::A, params)?;
    let mut g = ShiftedPoly::new(params.nu() - &mu0, inner);
    for i in 0..n {
        g = apply_dunkl_a_shifted(&g, i, params)?;
    }
    let g = g.times_delta_power(&(Q::one() + &mu0 - params.nu()));
    let four_n = num_traits::pow(Q::from_integer(4.into()), n);
    g.to_poly()
        .map(|p| p.scale(&four_n))
        .ok_or_else(|| Error::Internal("𝓛_ν left a non-polynomial remainder".into()))
}

/// Both sides of the conjugation identity for `f(x) = f0(x²)`:
/// `(Δ(T^B)² f, (𝓛_ν f0)(x²))`.
pub fn conjugation_sides(f0: &MPoly, params: &Params) -> Result<(MPoly, MPoly)> {
    let lhs = apply_delta_dunkl_b_squared(&f0.square_vars(), params)?;
    let rhs = l_nu_operator(f0, params)?.square_vars();
    Ok((lhs, rhs))
}
