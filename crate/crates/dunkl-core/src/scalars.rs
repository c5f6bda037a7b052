//! Scalar special functions: classical and generalized gamma, generalized
//! Pochhammer symbols, Bernstein polynomials, the shift vector `ρ(k)`, the
//! Mehta constants `c_A`, `c_B`, and the classical Macdonald function `K_ν`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

// Float supplies the math methods on f64 when std is not linked.
#[allow(unused_imports)]
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::poly::{q, q_to_f64, qi, Partition, Q};
use crate::C64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Classical `Γ(z)` for complex `z` (Lanczos, `g = 7`; reflection for `Re z < 1/2`).
pub fn gamma(z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Γ has a pole at {z}")));
    }
    if z.re < 0.5 {
        let s = (C64::new(PI, 0.0) * z).sin();
        return Ok(C64::new(PI, 0.0) / (s * gamma(C64::new(1.0, 0.0) - z)?));
    }
    Ok(ln_gamma_right(z).exp())
}

/// `ln Γ(z)` for `Re z ≥ 1/2` (principal branch of the Lanczos form).
fn ln_gamma_right(z: C64) -> C64 {
    let z = z - 1.0;
    let mut a = C64::new(LANCZOS[0], 0.0);
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (z + i as f64);
    }
    C64::new(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + a.ln()
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma_right(C64::new(x, 0.0)).re
}

/// Argument of [`gamma_n`]: a scalar `α` (meaning `α·1̲`) or a vector `z`.
#[derive(Clone, Debug, PartialEq)]
pub enum GammaArg {
    Scalar(C64),
    Vector(Vec<C64>),
}

impl GammaArg {
    fn expand(&self, n: usize) -> Result<Vec<C64>> {
        match self {
            GammaArg::Scalar(a) => Ok(alloc::vec![*a; n]),
            GammaArg::Vector(v) if v.len() == n => Ok(v.clone()),
            GammaArg::Vector(v) => Err(Error::VariableMismatch { expected: n, found: v.len() }),
        }
    }
}

/// `c_A (2π)^{−n/2} = ∏_{j=1}^n Γ(1+jk)/Γ(1+k)`.
fn mehta_ratio(params: &Params) -> f64 {
    let k = params.k_f64();
    (1..=params.n()).map(|j| (ln_gamma_real(1.0 + j as f64 * k) - ln_gamma_real(1.0 + k)).exp()).product()
}

/// Generalized gamma `Γ_n(z) = c_A (2π)^{−n/2} ∏_j Γ(z_j − k(j−1))`.
pub fn gamma_n(z: &GammaArg, params: &Params) -> Result<C64> {
    let z = z.expand(params.n())?;
    let k = params.k_f64();
    let mut acc = C64::new(mehta_ratio(params), 0.0);
    for (j, zj) in z.iter().enumerate() {
        acc *= gamma(*zj - k * j as f64)?;
    }
    Ok(acc)
}

/// Shorthand for `Γ_n(α·1̲)`.
pub fn gamma_n_scalar(alpha: C64, params: &Params) -> Result<C64> {
    gamma_n(&GammaArg::Scalar(alpha), params)
}

/// Generalized Pochhammer `[α]_λ = ∏_j ∏_{i<λ_j} (α − k(j−1) + i)`.
pub fn pochhammer_gen(alpha: C64, lambda: &Partition, params: &Params) -> C64 {
    let k = params.k_f64();
    let mut acc = C64::new(1.0, 0.0);
    for (j, lj) in lambda.parts().iter().enumerate() {
        for i in 0..*lj {
            acc *= alpha - k * j as f64 + i as f64;
        }
    }
    acc
}

/// Exact generalized Pochhammer symbol for rational `α` and `k`.
pub fn pochhammer_gen_q(alpha: &Q, lambda: &Partition, k: &Q) -> Q {
    let mut acc = Q::one();
    for (j, lj) in lambda.parts().iter().enumerate() {
        for i in 0..*lj {
            acc *= alpha - k * qi(j as i64) + qi(i as i64);
        }
    }
    acc
}

/// `b(μ) = ∏_{j=1}^n (μ + k(j−1))`.
pub fn bernstein_b(mu: C64, params: &Params) -> C64 {
    let k = params.k_f64();
    (0..params.n()).map(|j| mu + k * j as f64).product()
}

/// Exact `b(μ)`.
pub fn bernstein_b_q(mu: &Q, params: &Params) -> Q {
    (0..params.n()).fold(Q::one(), |acc, j| acc * (mu + params.k() * qi(j as i64)))
}

/// `𝓑(μ) = 4ⁿ ∏_j (μ + k(j−1))(μ − 1/2 + k′ + k(j−1))`.
pub fn bernstein_big_b(mu: C64, params: &Params) -> C64 {
    let k = params.k_f64();
    let kp = q_to_f64(&params.kprime());
    let mut acc = C64::new(4f64.powi(params.n() as i32), 0.0);
    for j in 0..params.n() {
        let s = k * j as f64;
        acc *= (mu + s) * (mu - 0.5 + kp + s);
    }
    acc
}

/// The equivalent form `𝓑(μ) = 4ⁿ b(μ) b(ν + μ − μ0 − 1)`.
pub fn bernstein_big_b_via_b(mu: C64, params: &Params) -> C64 {
    let shift = params.nu_f64() - params.mu0_f64() - 1.0;
    4f64.powi(params.n() as i32) * bernstein_b(mu, params) * bernstein_b(mu + shift, params)
}

/// Exact `𝓑(μ)`.
pub fn bernstein_big_b_q(mu: &Q, params: &Params) -> Q {
    let kp = params.kprime();
    let mut acc = num_traits::pow(qi(4), params.n());
    for j in 0..params.n() {
        let s = params.k() * qi(j as i64);
        acc *= (mu + &s) * (mu - q(1, 2) + &kp + &s);
    }
    acc
}

/// `ρ(k) = −(k/2)(n−1, n−3, …, −n+1)`.
pub fn rho_vector(params: &Params) -> Vec<Q> {
    let n = params.n() as i64;
    (0..n).map(|j| -(params.k() * q(n - 1 - 2 * j, 2))).collect()
}

/// Mehta constant `c_A = (2π)^{n/2} ∏_{j=1}^n Γ(1+jk)/Γ(1+k)`.
pub fn c_a(params: &Params) -> f64 {
    (2.0 * PI).powf(params.n() as f64 / 2.0) * mehta_ratio(params)
}

/// Type-B Mehta constant `c_B = 2^{nν} Γ_n(ν)` at the given `ν`.
pub fn c_b_at(nu: C64, params: &Params) -> Result<C64> {
    let pow = (nu * (params.n() as f64 * 2f64.ln())).exp();
    Ok(pow * gamma_n_scalar(nu, params)?)
}

/// `c_B` at the `ν` stored in `params`.
pub fn c_b(params: &Params) -> Result<C64> {
    c_b_at(C64::new(params.nu_f64(), 0.0), params)
}

/// Classical Macdonald function `K_ν(x)` for `x > 0`, from
/// `K_ν(x) = ∫_0^∞ e^{−x cosh t} cosh(νt) dt` by the trapezoidal rule,
/// which converges geometrically for this analytic, doubly decaying integrand.
pub fn bessel_k(nu: C64, x: f64) -> Result<C64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("K_ν needs x > 0, got {x}")));
    }
    // Beyond t_max the integrand is below e^{-740} relative to the peak.
    let t_max = ((740.0 + nu.re.abs() * 40.0) / x + 1.0).acosh().max(1.0);
    let steps = 4000usize;
    let h = t_max / steps as f64;
    let mut acc = C64::zero();
    for i in 0..=steps {
        let t = i as f64 * h;
        let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
        let e = (-x * t.cosh()).exp();
        if e == 0.0 {
            continue;
        }
        acc += (nu * t).cosh() * (w * e);
    }
    Ok(acc * h)
}

/// `2 (z/w)^{ν/2} K_ν(2√(wz))`: the rank-one 𝒦-Bessel closed form for real `w, z > 0`.
pub fn kbessel_rank_one_closed(nu: C64, w: f64, z: f64) -> Result<C64> {
    if !(w > 0.0 && z > 0.0) {
        return Err(Error::Domain("rank-one 𝒦-Bessel closed form needs w, z > 0".into()));
    }
    let pref = (nu * 0.5 * (z / w).ln()).exp() * 2.0;
    Ok(pref * bessel_k(nu, 2.0 * (w * z).sqrt())?)
}

/// Converts an exact rational to a complex scalar.
pub fn q_to_c64(v: &Q) -> C64 {
    C64::new(q_to_f64(v), 0.0)
}

/// `a / b` without forming `|b|²`, which overflows once `|b| > 1e154`.
/// Large generalized Pochhammer symbols and factorials reach that range.
pub fn cdiv(a: C64, b: C64) -> C64 {
    let s = b.re.abs().max(b.im.abs());
    if s == 0.0 || !s.is_finite() {
        return a / b;
    }
    let (br, bi) = (b.re / s, b.im / s);
    let d = br * br + bi * bi;
    C64::new((a.re * br + a.im * bi) / d, (a.im * br - a.re * bi) / d) / s
}
