//! Exact sparse multivariate polynomials over the rationals.
//!
//! [`MPoly`] is the symbolic carrier for every identity in the crate. Terms are
//! kept in a `BTreeMap` keyed by [`Composition`], whose ordering is graded
//! lexicographic, so equality is structural and printing is canonical.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::C64;

/// Exact rational scalar.
pub type Q = BigRational;

/// Builds the rational `num/den`.
///
/// # Panics
/// Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `v` as a rational.
pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Converts a rational to the nearest `f64`.
pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let num = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(num, den))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// A multi-index `η ∈ ℕ₀ⁿ`.
///
/// Compositions are ordered graded-lexicographically: first by degree, then
/// lexicographically by parts. The order is total and deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Wraps the given parts.
    pub fn new(parts: Vec<u32>) -> Self {
        Self { parts }
    }

    /// The zero composition of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self { parts: vec![0; n] }
    }

    /// The unit vector `e_i` of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut parts = vec![0; n];
        parts[i] = 1;
        Self { parts }
    }

    /// The parts `η_1, …, η_n`.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number of parts `n`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// True when there are no parts at all (rank zero).
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|η| = Σ η_i`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The partition `η₊` obtained by sorting the parts in decreasing order.
    pub fn to_partition(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// True when the parts are weakly decreasing.
    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &Composition) -> Composition {
        Composition::new(self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A partition `λ ∈ Λ₊ⁿ`: `n` weakly decreasing non-negative parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).all(|w| w[0] >= w[1]) {
            Ok(Self { parts })
        } else {
            Err(Error::InvalidInput(format!("{parts:?} is not weakly decreasing")))
        }
    }

    /// The zero partition of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self { parts: vec![0; n] }
    }

    /// The parts `λ_1 ≥ … ≥ λ_n`.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The same multi-index viewed as a composition.
    pub fn to_composition(&self) -> Composition {
        Composition::new(self.parts.clone())
    }

    /// The partition `(λ_1 − λ_n, λ_1 − λ_{n−1}, …, 0)`, i.e. `−λ^R` shifted by `λ_1·1̲`.
    pub fn complement(&self) -> Partition {
        let top = self.parts.first().copied().unwrap_or(0);
        Partition { parts: self.parts.iter().rev().map(|p| top - p).collect() }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_composition(), f)
    }
}

/// All compositions of `degree` into `n` parts, in increasing graded-lex order.
pub fn compositions(n: usize, degree: u32) -> Vec<Composition> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(Composition::new(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if degree == 0 {
            out.push(Composition::new(Vec::new()));
        }
        return out;
    }
    rec(n, degree, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

/// All partitions of `degree` with at most `n` parts, padded to length `n`,
/// in increasing lexicographic order.
pub fn partitions(n: usize, degree: u32) -> Vec<Partition> {
    let mut out: Vec<Partition> = compositions(n, degree)
        .into_iter()
        .filter(Composition::is_partition)
        .map(|c| Partition { parts: c.parts })
        .collect();
    out.sort();
    out
}

/// An element of the hyperoctahedral group `𝒮ₙ ⋉ ℤ₂ⁿ`.
///
/// It maps the basis vector `e_i` to `signs[i]·e_{perm[i]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPerm {
    /// Validates a permutation with a sign vector of entries `±1`.
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.len() != n || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidInput(format!("bad sign vector {signs:?}")));
        }
        Ok(Self { perm, signs })
    }

    /// The identity of rank `n`.
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// The transposition `s_ij` (reflection in `e_i − e_j`).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(n);
        g.perm.swap(i, j);
        g
    }

    /// The sign change `σ_i` (reflection in `e_i`).
    pub fn sign_flip(n: usize, i: usize) -> Self {
        let mut g = Self::identity(n);
        g.signs[i] = -1;
        g
    }

    /// Reflection in `e_i + e_j`: `x_i ↦ −x_j`, `x_j ↦ −x_i`.
    pub fn anti_transposition(n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::transposition(n, i, j);
        g.signs[i] = -1;
        g.signs[j] = -1;
        g
    }

    /// A pure permutation.
    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![1; n])
    }

    /// Rank `n`.
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    /// True for rank zero.
    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// The composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            signs[i] = other.signs[i] * self.signs[j];
        }
        SignedPerm { perm, signs }
    }

    /// The action on a point: `(g·x)_{perm[i]} = signs[i]·x_i`.
    pub fn apply<T: Copy + Neg<Output = T>>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for i in 0..self.len() {
            out[self.perm[i]] = if self.signs[i] < 0 { -x[i] } else { x[i] };
        }
        out
    }

    /// All `n!` permutations of rank `n` (no sign changes).
    pub fn all_permutations(n: usize) -> Vec<SignedPerm> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out.into_iter().map(|perm| SignedPerm { perm, signs: vec![1; n] }).collect()
    }

    /// All `2ⁿ` pure sign changes of rank `n`.
    pub fn all_sign_changes(n: usize) -> Vec<SignedPerm> {
        (0..(1usize << n))
            .map(|mask| SignedPerm {
                perm: (0..n).collect(),
                signs: (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
            })
            .collect()
    }
}

/// Sparse polynomial in `n` variables with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Composition, Q>,
}

impl MPoly {
    /// The zero polynomial.
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// The constant `c`.
    pub fn constant(n: usize, c: Q) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Composition::zeros(n), c);
        p
    }

    /// The constant 1.
    pub fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    /// The coordinate function `x_i` (zero-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(Composition::unit(n, i), Q::one())
    }

    /// The monomial `c·x^η`.
    pub fn monomial(eta: Composition, c: Q) -> Self {
        let mut p = Self::zero(eta.len());
        p.add_term(eta, c);
        p
    }

    /// `Δ(x) = x_1⋯x_n`.
    pub fn delta(n: usize) -> Self {
        Self::monomial(Composition::new(vec![1; n]), Q::one())
    }

    /// `x_1 + ⋯ + x_n`.
    pub fn power_sum_1(n: usize) -> Self {
        let mut p = Self::zero(n);
        for i in 0..n {
            p.add_term(Composition::unit(n, i), Q::one());
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Composition, Q)>>(n: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(n);
        for (eta, c) in terms {
            if eta.len() != n {
                return Err(Error::VariableMismatch { expected: n, found: eta.len() });
            }
            p.add_term(eta, c);
        }
        Ok(p)
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored (non-zero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`MPoly::is_zero`]; pairs with [`MPoly::len`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Composition, &Q)> {
        self.terms.iter()
    }

    /// The coefficient of `x^η` (zero when absent).
    pub fn coeff(&self, eta: &Composition) -> Q {
        self.terms.get(eta).cloned().unwrap_or_else(Q::zero)
    }

    /// The constant term `p(0)`.
    pub fn constant_term(&self) -> Q {
        self.coeff(&Composition::zeros(self.n))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Composition::degree).max()
    }

    /// True when all terms share one degree (the zero polynomial counts).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Composition::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// The degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The truncation to total degree `≤ d`.
    pub fn truncate(&self, d: u32) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Adds `c·x^η` in place, pruning a resulting zero.
    pub fn add_term(&mut self, eta: Composition, c: Q) {
        debug_assert_eq!(eta.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(eta) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c·other` in place.
    pub fn add_scaled(&mut self, other: &MPoly, c: &Q) {
        assert_eq!(self.n, other.n, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::VariableMismatch { expected: self.n, found: other.n })
        }
    }

    /// Checked sum.
    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        Ok(out)
    }

    /// Checked difference.
    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        Ok(out)
    }

    /// Checked product.
    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = MPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `c·p`.
    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.n);
        }
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// `p^e` by repeated squaring.
    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut result = MPoly::one(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies by the monomial `x^η`.
    pub fn shift(&self, eta: &Composition) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.plus(eta), v.clone())).collect() }
    }

    /// `p(x²)`: every exponent doubled.
    pub fn square_vars(&self) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (Composition::new(e.parts().iter().map(|a| 2 * a).collect()), v.clone()))
                .collect(),
        }
    }

    /// `p∘g⁻¹`, the left action of a signed permutation.
    pub fn group_act(&self, g: &SignedPerm) -> Result<MPoly> {
        if g.len() != self.n {
            return Err(Error::VariableMismatch { expected: self.n, found: g.len() });
        }
        let mut out = MPoly::zero(self.n);
        for (e, v) in &self.terms {
            let mut parts = vec![0; self.n];
            let mut negative = false;
            for i in 0..self.n {
                parts[g.perm[i]] = e.parts[i];
                if g.signs[i] < 0 && e.parts[i] % 2 == 1 {
                    negative = !negative;
                }
            }
            out.add_term(Composition::new(parts), if negative { -v.clone() } else { v.clone() });
        }
        Ok(out)
    }

    /// `∂p/∂x_i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e, v) in &self.terms {
            let a = e.parts[i];
            if a > 0 {
                let mut parts = e.parts.clone();
                parts[i] -= 1;
                out.add_term(Composition::new(parts), v * qi(a as i64));
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval_q(&self, x: &[Q]) -> Result<Q> {
        if x.len() != self.n {
            return Err(Error::VariableMismatch { expected: self.n, found: x.len() });
        }
        let mut acc = Q::zero();
        for (e, v) in &self.terms {
            let mut t = v.clone();
            for (xi, a) in x.iter().zip(e.parts()) {
                if *a > 0 {
                    t *= num_traits::pow(xi.clone(), *a as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact value at `1̲ = (1, …, 1)`: the sum of the coefficients.
    pub fn eval_at_ones(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, b| a + b)
    }

    /// Floating-point evaluation at a complex point, summing term by term.
    pub fn eval(&self, x: &[C64]) -> Result<C64> {
        if x.len() != self.n {
            return Err(Error::VariableMismatch { expected: self.n, found: x.len() });
        }
        let mut acc = C64::new(0.0, 0.0);
        for (e, v) in &self.terms {
            let mut t = C64::new(q_to_f64(v), 0.0);
            for (xi, a) in x.iter().zip(e.parts()) {
                if *a > 0 {
                    t *= xi.powu(*a);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ c·x_i` for all `i`, i.e. returns `p(c·x)`.
    pub fn dilate(&self, c: &Q) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * num_traits::pow(c.clone(), e.degree() as usize)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Exact division by the monomial `x^η`; `None` if some term is not divisible.
    pub fn div_monomial(&self, eta: &Composition) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let mut parts = e.parts.clone();
            for (p, d) in parts.iter_mut().zip(eta.parts()) {
                if *p < *d {
                    return None;
                }
                *p -= d;
            }
            terms.insert(Composition::new(parts), v.clone());
        }
        Some(MPoly { n: self.n, terms })
    }

    /// A compiled floating-point copy suitable for repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.parts.clone(), q_to_f64(v))).collect(),
        }
    }

    /// Parses the canonical text form (for example `"x1^2 - 1/2*x1*x2 + 3"`).
    ///
    /// The parser accepts any order of terms and repeated variables in a term.
    pub fn parse(n: usize, s: &str) -> Result<MPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        let mut out = MPoly::zero(n);
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut idx = 1;
        let mut pieces = Vec::new();
        while idx <= bytes.len() {
            if idx == bytes.len() || ((bytes[idx] == b'+' || bytes[idx] == b'-') && bytes[idx - 1] != b'^') {
                pieces.push(&compact[start..idx]);
                start = idx;
            }
            idx += 1;
        }
        for piece in pieces {
            let (negative, body) = match piece.as_bytes()[0] {
                b'+' => (false, &piece[1..]),
                b'-' => (true, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(Error::InvalidInput(format!("dangling sign in {s:?}")));
            }
            let mut coeff = Q::one();
            let mut parts = vec![0u32; n];
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx_str, exp) = match rest.split_once('^') {
                        Some((i, e)) => (
                            i,
                            e.parse::<u32>()
                                .map_err(|_| Error::InvalidInput(format!("bad exponent in {factor:?}")))?,
                        ),
                        None => (rest, 1),
                    };
                    let var: usize = idx_str
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad variable {factor:?}")))?;
                    if var == 0 || var > n {
                        return Err(Error::InvalidInput(format!("variable {factor:?} out of range for n={n}")));
                    }
                    parts[var - 1] += exp;
                } else {
                    coeff *= parse_q(factor)?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Composition::new(parts), coeff);
        }
        Ok(out)
    }
}

fn fmt_monomial(e: &Composition) -> String {
    let mut s = String::new();
    for (i, a) in e.parts().iter().enumerate() {
        if *a == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&format!("x{}", i + 1));
        if *a > 1 {
            s.push_str(&format!("^{a}"));
        }
    }
    s
}

impl fmt::Display for MPoly {
    /// Canonical form: terms in decreasing graded-lex order, `coeff*x1^a1*…`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (e, v)) in self.terms.iter().rev().enumerate() {
            let negative = v.is_negative();
            let abs = v.abs();
            if pos == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    /// # Panics
    /// Panics on a variable-count mismatch; use [`MPoly::try_add`] to handle it.
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    /// # Panics
    /// Panics on a variable-count mismatch; use [`MPoly::try_sub`] to handle it.
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    /// # Panics
    /// Panics on a variable-count mismatch; use [`MPoly::try_mul`] to handle it.
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Q::one())
    }
}

/// A polynomial with `f64` coefficients for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    n: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl CompiledPoly {
    /// Value at a complex point.
    pub fn eval(&self, x: &[C64]) -> C64 {
        debug_assert_eq!(x.len(), self.n);
        let mut acc = C64::new(0.0, 0.0);
        for (e, v) in &self.terms {
            let mut t = C64::new(*v, 0.0);
            for (xi, a) in x.iter().zip(e) {
                if *a > 0 {
                    t *= xi.powu(*a);
                }
            }
            acc += t;
        }
        acc
    }

    /// Value at a real point.
    pub fn eval_real(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, v) in &self.terms {
            let mut t = *v;
            for (xi, a) in x.iter().zip(e) {
                if *a > 0 {
                    t *= num_traits::Float::powi(*xi, *a as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// The stored `(exponents, coefficient)` pairs.
    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }
}

impl FromStr for Composition {
    type Err = Error;
    /// Parses `"a,b,c"` (parentheses optional).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Composition::new(Vec::new()));
        }
        t.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("bad index {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Composition::new)
    }
}
