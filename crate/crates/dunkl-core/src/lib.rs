//! Dunkl-type special functions at small rank.
//!
//! The crate works in two registers. The symbolic layer is exact: sparse
//! polynomials over the rationals ([`poly`]), rational Dunkl and Cherednik
//! operators of types A and B ([`dunkl`]), and non-symmetric and symmetric Jack
//! polynomials with their `C`/`L` renormalizations ([`jack`]). The numeric
//! layer is built on top of it: generalized gamma functions and Pochhammer
//! symbols ([`scalars`]), truncated Jack hypergeometric series ([`hyp`]),
//! weighted quadrature on the positive orthant ([`quad`]) and the analytic
//! transforms ([`transforms`]): Laplace identities, the Hankel transform,
//! 𝒦-Bessel functions and zeta integrals.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]
// Guards of the form `!(x > 0.0)` are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dunkl;
pub mod error;
pub mod hyp;
pub mod jack;
pub mod params;
pub mod poly;
pub mod quad;
pub mod scalars;
pub mod transforms;

pub use error::{Error, Result};
pub use params::{Params, RootSystem};
pub use poly::{Composition, MPoly, Partition, SignedPerm, Q};

/// Complex scalar used by every numeric routine.
pub type C64 = num_complex::Complex64;
