//! The multiplicity bundle `(n, k, ν)` and the root-system selector.

use alloc::format;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::{q, q_to_f64, Q};

/// Root system selector.
///
/// `A` uses the roots `±(e_i − e_j)` with multiplicity `k`. `B` uses `±e_i`
/// with multiplicity `k′` and `±e_i ± e_j` with multiplicity `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSystem {
    A,
    B,
}

/// Rank `n`, multiplicity `k ≥ 0` and the index `ν`.
///
/// The derived quantities are `μ0 = k(n−1)` and `k′ = ν − μ0 − 1/2`. They are
/// recomputed on demand, so `(k, ν) ↔ (k, k′)` stays a bijection. Both `k`
/// and `ν` are rational so that every symbolic identity can be checked
/// exactly; numeric routines that take a complex index receive it as an
/// explicit argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    n: usize,
    k: Q,
    nu: Q,
}

impl Params {
    /// Validates `n ≥ 1` and `k ≥ 0`.
    pub fn new(n: usize, k: Q, nu: Q) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank n must be at least 1".into()));
        }
        if k.is_negative() {
            return Err(Error::InvalidInput(format!("multiplicity k = {k} must be non-negative")));
        }
        Ok(Self { n, k, nu })
    }

    /// Like [`Params::new`] but accepts a negative `k`. Only the exact Jack
    /// construction is meaningful there: it is rational in `k` and fails
    /// with [`Error::Degenerate`] exactly where Cherednik spectra collide.
    pub fn new_formal(n: usize, k: Q, nu: Q) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank n must be at least 1".into()));
        }
        Ok(Self { n, k, nu })
    }

    /// Builds the parameters from `(k, k′)` instead of `(k, ν)`.
    pub fn from_kprime(n: usize, k: Q, kprime: Q) -> Result<Self> {
        let nu = kprime + &k * Q::from_integer((n as i64 - 1).into()) + q(1, 2);
        Self::new(n, k, nu)
    }

    /// Rank `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicity `k` on `±(e_i ± e_j)`.
    pub fn k(&self) -> &Q {
        &self.k
    }

    /// The index `ν`.
    pub fn nu(&self) -> &Q {
        &self.nu
    }

    /// `μ0 = k(n−1)`.
    pub fn mu0(&self) -> Q {
        &self.k * Q::from_integer((self.n as i64 - 1).into())
    }

    /// `k′ = ν − μ0 − 1/2`, the multiplicity on `±e_i`.
    pub fn kprime(&self) -> Q {
        &self.nu - self.mu0() - q(1, 2)
    }

    /// `k` as a float.
    pub fn k_f64(&self) -> f64 {
        q_to_f64(&self.k)
    }

    /// `ν` as a float.
    pub fn nu_f64(&self) -> f64 {
        q_to_f64(&self.nu)
    }

    /// `μ0` as a float.
    pub fn mu0_f64(&self) -> f64 {
        q_to_f64(&self.mu0())
    }

    /// Copy with a different `ν`.
    pub fn with_nu(&self, nu: Q) -> Self {
        Self { n: self.n, k: self.k.clone(), nu }
    }

    /// Copy with a different rank, same `k` and `ν`.
    pub fn with_rank(&self, n: usize) -> Result<Self> {
        Self::new(n, self.k.clone(), self.nu.clone())
    }
}
