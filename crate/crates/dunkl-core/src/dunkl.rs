//! Rational Dunkl operators of types A and B, Cherednik operators and the
//! Dunkl pairing.
//!
//! Operators use the positive-root form
//! `T_ξ f = ∂_ξ f + Σ_{α∈R₊} κ(α)⟨α,ξ⟩ (f − s_α f)/⟨α,x⟩`, with
//! `R₊ = {e_i − e_j}` for type A and `R₊ = {e_i, e_i ± e_j}` for type B.
//! The difference quotients are computed monomial by monomial with closed
//! formulas, which is exact polynomial division with zero remainder.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::params::{Params, RootSystem};
use crate::poly::{q_to_f64, qi, Composition, MPoly, SignedPerm, Q};

/// Adds `c·(x^e − s_ij x^e)/(x_i − x_j)` to `out`.
fn add_dd_minus(out: &mut MPoly, e: &Composition, c: &Q, i: usize, j: usize) {
    let (a, b) = (e.parts()[i], e.parts()[j]);
    if a == b {
        return;
    }
    let (lo, d) = if a > b { (b, a - b) } else { (a, b - a) };
    let coeff = if a > b { c.clone() } else { -c.clone() };
    for t in 0..d {
        let mut parts = e.parts().to_vec();
        parts[i] = lo + t;
        parts[j] = lo + d - 1 - t;
        out.add_term(Composition::new(parts), coeff.clone());
    }
}

/// Adds `c·(x^e − τ_ij x^e)/(x_i + x_j)` where `τ_ij: x_i ↦ −x_j, x_j ↦ −x_i`.
fn add_dd_plus(out: &mut MPoly, e: &Composition, c: &Q, i: usize, j: usize) {
    let (a, b) = (e.parts()[i], e.parts()[j]);
    if a == b {
        // τ fixes x_i^a x_j^a because (−1)^{2a} = 1.
        return;
    }
    let (lo, d) = if a > b { (b, a - b) } else { (a, b - a) };
    let base_sign_negative = (b % 2 == 1) ^ (a < b);
    for t in 0..d {
        // substitute y = −x_j in x_i^{lo+t} y^{lo+d−1−t}
        let ypow = lo + d - 1 - t;
        let negative = base_sign_negative ^ (ypow % 2 == 1);
        let mut parts = e.parts().to_vec();
        parts[i] = lo + t;
        parts[j] = ypow;
        out.add_term(Composition::new(parts), if negative { -c.clone() } else { c.clone() });
    }
}

/// Adds `c·(x^e − σ_i x^e)/x_i` where `σ_i` flips the sign of `x_i`.
fn add_dd_sign(out: &mut MPoly, e: &Composition, c: &Q, i: usize) {
    let a = e.parts()[i];
    if a % 2 == 1 {
        let mut parts = e.parts().to_vec();
        parts[i] -= 1;
        out.add_term(Composition::new(parts), c * qi(2));
    }
}

fn check_axis(p: &MPoly, i: usize, params: &Params) -> Result<()> {
    if p.n() != params.n() {
        return Err(Error::VariableMismatch { expected: params.n(), found: p.n() });
    }
    if i >= params.n() {
        return Err(Error::InvalidInput(alloc::format!("axis {i} out of range for n={}", params.n())));
    }
    Ok(())
}

/// `T_i^R p`, the Dunkl operator in direction `e_i` (zero-based `i`).
pub fn apply_dunkl(p: &MPoly, i: usize, root: RootSystem, params: &Params) -> Result<MPoly> {
    check_axis(p, i, params)?;
    let n = params.n();
    let k = params.k();
    let kprime = params.kprime();
    let mut out = p.derivative(i);
    for (e, c) in p.terms() {
        if !k.is_zero() {
            let ck = c * k;
            for j in (0..n).filter(|&j| j != i) {
                add_dd_minus(&mut out, e, &ck, i, j);
                if root == RootSystem::B {
                    add_dd_plus(&mut out, e, &ck, i, j);
                }
            }
        }
        if root == RootSystem::B && !kprime.is_zero() {
            add_dd_sign(&mut out, e, &(c * &kprime), i);
        }
    }
    Ok(out)
}

/// `q(T^R) p`: substitutes `T_i^R` for `x_i` in `q` and applies the result to `p`.
///
/// The operators commute, so the monomial order inside `q` is irrelevant.
/// Intermediate results `T^c p` are memoized over the exponents `c` of `q`.
pub fn apply_poly_of_dunkl(q: &MPoly, p: &MPoly, root: RootSystem, params: &Params) -> Result<MPoly> {
    if q.n() != p.n() {
        return Err(Error::VariableMismatch { expected: p.n(), found: q.n() });
    }
    let n = p.n();
    let max_deg = p.degree().unwrap_or(0);
    let mut memo: BTreeMap<Composition, MPoly> = BTreeMap::new();
    memo.insert(Composition::zeros(n), p.clone());
    let mut out = MPoly::zero(n);
    for (c, coeff) in q.terms() {
        if c.degree() > max_deg {
            continue;
        }
        let v = dunkl_monomial(c, &mut memo, root, params)?;
        out.add_scaled(&v, coeff);
    }
    Ok(out)
}

fn dunkl_monomial(
    c: &Composition,
    memo: &mut BTreeMap<Composition, MPoly>,
    root: RootSystem,
    params: &Params,
) -> Result<MPoly> {
    if let Some(v) = memo.get(c) {
        return Ok(v.clone());
    }
    let i = c.parts().iter().position(|&a| a > 0).expect("non-zero composition");
    let mut prev = c.parts().to_vec();
    prev[i] -= 1;
    let inner = dunkl_monomial(&Composition::new(prev), memo, root, params)?;
    let v = if inner.is_zero() { inner } else { apply_dunkl(&inner, i, root, params)? };
    memo.insert(c.clone(), v.clone());
    Ok(v)
}

/// The Dunkl pairing `[p, q]^R = p(T^R) q (0)`.
pub fn dunkl_pairing(p: &MPoly, q: &MPoly, root: RootSystem, params: &Params) -> Result<Q> {
    // Only components of equal degree contribute.
    let mut acc = Q::zero();
    let dmax = p.degree().unwrap_or(0).min(q.degree().unwrap_or(0));
    for d in 0..=dmax {
        let pd = p.homogeneous_part(d);
        let qd = q.homogeneous_part(d);
        if pd.is_zero() || qd.is_zero() {
            continue;
        }
        acc += apply_poly_of_dunkl(&pd, &qd, root, params)?.constant_term();
    }
    Ok(acc)
}

/// The Cherednik operator `𝒟_j = x_j T_j^A + k(1−n) + k Σ_{i>j} s_ij` (zero-based `j`).
pub fn apply_cherednik(p: &MPoly, j: usize, params: &Params) -> Result<MPoly> {
    check_axis(p, j, params)?;
    let n = params.n();
    let k = params.k();
    let mut out = apply_dunkl(p, j, RootSystem::A, params)?.shift(&Composition::unit(n, j));
    out.add_scaled(p, &(k * qi(1 - n as i64)));
    for i in (j + 1)..n {
        out.add_scaled(&p.group_act(&SignedPerm::transposition(n, i, j))?, k);
    }
    Ok(out)
}

/// Returns `(e_i − e_j)`-type and other positive roots as coefficient vectors.
pub fn positive_roots(n: usize, root: RootSystem) -> Vec<(Vec<f64>, bool)> {
    // The flag marks short roots ±e_i, which carry k′ instead of k.
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut a = alloc::vec![0.0; n];
            a[i] = 1.0;
            a[j] = -1.0;
            out.push((a, false));
            if root == RootSystem::B {
                let mut b = alloc::vec![0.0; n];
                b[i] = 1.0;
                b[j] = 1.0;
                out.push((b, false));
            }
        }
        if root == RootSystem::B {
            let mut c = alloc::vec![0.0; n];
            c[i] = 1.0;
            out.push((c, true));
        }
    }
    out
}

fn reflect(x: &[f64], alpha: &[f64]) -> Vec<f64> {
    let dot: f64 = x.iter().zip(alpha).map(|(a, b)| a * b).sum();
    let norm: f64 = alpha.iter().map(|a| a * a).sum();
    x.iter().zip(alpha).map(|(xi, ai)| xi - 2.0 * dot / norm * ai).collect()
}

/// Step and extrapolation settings for [`apply_dunkl_numeric`].
#[derive(Clone, Copy, Debug)]
pub struct FiniteDifference {
    /// Step `h` of the central difference.
    pub h: f64,
    /// Combine steps `h` and `h/2` to cancel the `O(h²)` term.
    pub richardson: bool,
}

impl Default for FiniteDifference {
    fn default() -> Self {
        Self { h: 1e-4, richardson: false }
    }
}

/// `T_i^R f (x)` for a function given by values.
///
/// The partial derivative is a central difference; the reflection terms
/// `κ(α)⟨α,e_i⟩(f(x) − f(s_α x))/⟨α,x⟩` are evaluated exactly from values of `f`.
pub fn apply_dunkl_numeric(
    f: &dyn Fn(&[f64]) -> Result<f64>,
    x: &[f64],
    i: usize,
    root: RootSystem,
    params: &Params,
    fd: FiniteDifference,
) -> Result<f64> {
    let n = params.n();
    if x.len() != n {
        return Err(Error::VariableMismatch { expected: n, found: x.len() });
    }
    if i >= n {
        return Err(Error::InvalidInput(alloc::format!("axis {i} out of range for n={n}")));
    }
    let k = params.k_f64();
    let kprime = q_to_f64(&params.kprime());
    let roots = positive_roots(n, root);
    for (alpha, _) in &roots {
        let dot: f64 = x.iter().zip(alpha).map(|(a, b)| a * b).sum();
        if dot.abs() < 10.0 * fd.h {
            return Err(Error::MirrorProximity { distance: dot.abs(), step: fd.h });
        }
    }
    let central = |h: f64| -> Result<f64> {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        Ok((f(&xp)? - f(&xm)?) / (2.0 * h))
    };
    let mut value = if fd.richardson {
        let d1 = central(fd.h)?;
        let d2 = central(fd.h / 2.0)?;
        (4.0 * d2 - d1) / 3.0
    } else {
        central(fd.h)?
    };
    let fx = f(x)?;
    for (alpha, short) in &roots {
        let kappa = if *short { kprime } else { k };
        if kappa == 0.0 || alpha[i] == 0.0 {
            continue;
        }
        let dot: f64 = x.iter().zip(alpha).map(|(a, b)| a * b).sum();
        let fs = f(&reflect(x, alpha))?;
        value += kappa * alpha[i] * (fx - fs) / dot;
    }
    Ok(value)
}

/// `Δ(T^R) = T_1^R ⋯ T_n^R` applied to `p`.
pub fn apply_delta_dunkl(p: &MPoly, root: RootSystem, params: &Params) -> Result<MPoly> {
    let mut cur = p.clone();
    for i in 0..params.n() {
        if cur.is_zero() {
            break;
        }
        cur = apply_dunkl(&cur, i, root, params)?;
    }
    Ok(cur)
}

/// `Δ(T^B)² p`.
pub fn apply_delta_dunkl_b_squared(p: &MPoly, params: &Params) -> Result<MPoly> {
    let once = apply_delta_dunkl(p, RootSystem::B, params)?;
    apply_delta_dunkl(&once, RootSystem::B, params)
}

/// Spectral value of `𝒟_j` on `E_η` from the closed formula
/// `η_j − k(#{i<j : η_i ≥ η_j} + #{i>j : η_i > η_j})`.
///
/// The Jack construction reads eigenvalues off the operator matrices; this
/// formula is kept as an independent cross-check.
pub fn cherednik_spectral_value(eta: &Composition, j: usize, params: &Params) -> Q {
    let parts = eta.parts();
    let before = parts[..j].iter().filter(|&&a| a >= parts[j]).count();
    let after = parts[j + 1..].iter().filter(|&&a| a > parts[j]).count();
    qi(parts[j] as i64) - params.k() * qi((before + after) as i64)
}
