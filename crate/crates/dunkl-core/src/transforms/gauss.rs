//! Test functions `x ↦ p(x)e^{−c|x|²}` and the exact action of the type-B
//! Dunkl operators on them.

use alloc::vec::Vec;

// Float supplies the math methods on f64 when std is not linked.
#[allow(unused_imports)]
use num_traits::{Float, Signed, Zero};

use crate::dunkl::apply_dunkl;
use crate::error::{Error, Result};
use crate::params::{Params, RootSystem};
use crate::poly::{q_to_f64, CompiledPoly, Composition, MPoly, SignedPerm, Q};
use crate::C64;

/// The function `x ↦ p(x)·e^{−c|x|²}` with `p` a rational polynomial and
/// `c ≥ 0` rational. `c = 0` is the pure polynomial case.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPoly {
    p: MPoly,
    c: Q,
}

impl GaussPoly {
    /// `p(x)e^{−c|x|²}`; `c` must not be negative.
    pub fn new(p: MPoly, c: Q) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::InvalidInput("GaussPoly needs c ≥ 0".into()));
        }
        Ok(Self { p, c })
    }

    /// The Gaussian `g(x) = e^{−|x|²}` in `n` variables.
    pub fn gaussian(n: usize) -> Self {
        Self { p: MPoly::one(n), c: Q::from_integer(1.into()) }
    }

    pub fn p(&self) -> &MPoly {
        &self.p
    }

    pub fn c(&self) -> &Q {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// `q(x)·p(x)e^{−c|x|²}`.
    pub fn mul_poly(&self, q: &MPoly) -> Result<GaussPoly> {
        Ok(Self { p: self.p.try_mul(q)?, c: self.c.clone() })
    }

    /// `f + g` for two functions with the same exponent `c`.
    pub fn try_add(&self, other: &GaussPoly) -> Result<GaussPoly> {
        if self.c != other.c {
            return Err(Error::InvalidInput("GaussPoly sum needs equal exponents".into()));
        }
        Ok(Self { p: self.p.try_add(&other.p)?, c: self.c.clone() })
    }

    /// `p(x)e^{−c|x|²}` at a real point.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n() {
            return Err(Error::VariableMismatch { expected: self.n(), found: x.len() });
        }
        Ok(self.compile().eval(x))
    }

    /// A floating-point copy for repeated evaluation.
    pub fn compile(&self) -> CompiledGauss {
        CompiledGauss { p: self.p.compile(), c: q_to_f64(&self.c) }
    }

    /// The average `|W_B|^{−1} Σ_g f∘g` over sign changes and permutations.
    /// `|x|²` is invariant, so only `p` is averaged.
    pub fn symmetrize_b(&self) -> Result<GaussPoly> {
        let n = self.n();
        let perms = SignedPerm::all_permutations(n);
        let signs = SignedPerm::all_sign_changes(n);
        let mut acc = MPoly::zero(n);
        for s in &signs {
            for g in &perms {
                acc = acc.try_add(&self.p.group_act(&s.compose(g))?)?;
            }
        }
        let order = Q::from_integer(((perms.len() * signs.len()) as i64).into());
        Ok(Self { p: acc.scale(&(Q::from_integer(1.into()) / order)), c: self.c.clone() })
    }

    /// True when `p` is invariant under every sign change and permutation.
    pub fn is_b_invariant(&self) -> Result<bool> {
        Ok(self.symmetrize_b()?.p == self.p)
    }

    /// The restriction `(x_1, …, x_r) ↦ f(x_1, …, x_r, 0, …, 0)` after placing
    /// the kept coordinates at positions `keep` (in order).
    pub fn restrict(&self, keep: &[usize]) -> Result<GaussPoly> {
        let n = self.n();
        if keep.iter().any(|i| *i >= n) {
            return Err(Error::InvalidInput("restriction axis out of range".into()));
        }
        let r = keep.len();
        let mut out = MPoly::zero(r);
        for (eta, v) in self.p.terms() {
            let parts = eta.parts();
            let dropped: u32 = (0..n).filter(|i| !keep.contains(i)).map(|i| parts[i]).sum();
            if dropped == 0 {
                out.add_term(Composition::new(keep.iter().map(|i| parts[*i]).collect()), v.clone());
            }
        }
        Ok(Self { p: out, c: self.c.clone() })
    }
}

/// Floating-point form of a [`GaussPoly`].
#[derive(Clone, Debug)]
pub struct CompiledGauss {
    p: CompiledPoly,
    c: f64,
}

impl CompiledGauss {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        self.p.eval_real(x) * (-self.c * r2).exp()
    }

    /// Value at a complex point.
    pub fn eval_complex(&self, x: &[C64]) -> C64 {
        let r2: C64 = x.iter().map(|v| v * v).sum();
        self.p.eval(x) * (-r2 * self.c).exp()
    }
}

/// `T_i^B(p e^{−c|x|²}) = (T_i^B p − 2c x_i p)e^{−c|x|²}`, exact.
///
/// The Gaussian factor is `W_B`-invariant, so the reflection parts of `T_i^B`
/// pass through it and only the derivative produces the extra term.
pub fn apply_tb_gausspoly(f: &GaussPoly, i: usize, params: &Params) -> Result<GaussPoly> {
    let n = params.n();
    if f.n() != n {
        return Err(Error::VariableMismatch { expected: n, found: f.n() });
    }
    let mut p = apply_dunkl(&f.p, i, RootSystem::B, params)?;
    if !f.c.is_zero() {
        let xp = f.p.try_mul(&MPoly::var(n, i))?;
        p.add_scaled(&xp, &(-Q::from_integer(2.into()) * &f.c));
    }
    Ok(GaussPoly { p, c: f.c.clone() })
}

/// `Δ(T^B)² f = (T_1^B)² ⋯ (T_n^B)² f`, exact.
pub fn delta_tb_squared(f: &GaussPoly, params: &Params) -> Result<GaussPoly> {
    let mut g = f.clone();
    for i in 0..params.n() {
        g = apply_tb_gausspoly(&g, i, params)?;
        g = apply_tb_gausspoly(&g, i, params)?;
    }
    Ok(g)
}

/// The `ℤ₂ⁿ`-average of `f` at `√t`: `f0(t) = 2^{−n} Σ_τ f(τ√t)`.
pub(crate) fn even_part_at_sqrt(f: &CompiledGauss, t: &[f64]) -> f64 {
    let n = t.len();
    let root: Vec<f64> = t.iter().map(|v| v.sqrt()).collect();
    let mut y = root.clone();
    let mut acc = 0.0;
    for mask in 0..(1usize << n) {
        for i in 0..n {
            y[i] = if mask >> i & 1 == 1 { -root[i] } else { root[i] };
        }
        acc += f.eval(&y);
    }
    acc / (1usize << n) as f64
}
