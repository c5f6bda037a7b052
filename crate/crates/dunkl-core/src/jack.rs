//! Non-symmetric and symmetric Jack polynomials and their renormalizations.
//!
//! `E_η` is the monic (`x^η + lower terms`) joint eigenfunction of the
//! Cherednik operators `𝒟_1, …, 𝒟_n` with Jack parameter `α = 1/k`. It is
//! built degree by degree: the operators are assembled as matrices on the
//! monomials of degree `p`, ordered so that every matrix is upper triangular,
//! and the eigenvectors are extracted by exact back-substitution. `P_λ` is the
//! symmetrization of `E_λ` rescaled to be monic. `L_η = c_η E_η` and
//! `C_λ = c_λ P_λ` are fixed by `Σ_η L_η = Σ_λ C_λ = (x_1 + ⋯ + x_n)^p`.
//!
//! All data for one `(n, k)` live in a [`JackBasis`], which memoizes each
//! degree layer the first time it is requested.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;
use once_cell::race::OnceBox;

use crate::dunkl::apply_cherednik;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::poly::{compositions, partitions, q_to_f64, Composition, MPoly, Partition, SignedPerm, Q};
use crate::C64;

/// Everything known about one homogeneous degree.
#[derive(Debug)]
pub struct JackLayer {
    degree: u32,
    comps: Vec<Composition>,
    index: BTreeMap<Composition, usize>,
    spectra: Vec<Vec<Q>>,
    e: Vec<MPoly>,
    l_coeffs: Vec<Q>,
    e_at_ones: Vec<Q>,
    parts: Vec<Partition>,
    part_index: BTreeMap<Partition, usize>,
    p: Vec<MPoly>,
    c_coeffs: Vec<Q>,
    p_at_ones: Vec<Q>,
}

impl JackLayer {
    /// The degree `p` of this layer.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Compositions of this degree, in the triangular order used for the construction.
    pub fn compositions(&self) -> &[Composition] {
        &self.comps
    }

    /// Partitions of this degree with at most `n` parts.
    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    fn comp_idx(&self, eta: &Composition) -> Result<usize> {
        self.index
            .get(eta)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("composition {eta} not in degree {}", self.degree)))
    }

    fn part_idx(&self, lambda: &Partition) -> Result<usize> {
        self.part_index
            .get(lambda)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("partition {lambda} not in degree {}", self.degree)))
    }

    /// Monic `E_η`.
    pub fn e(&self, eta: &Composition) -> Result<&MPoly> {
        Ok(&self.e[self.comp_idx(eta)?])
    }

    /// The eigenvalues of `𝒟_1, …, 𝒟_n` on `E_η`.
    pub fn spectrum(&self, eta: &Composition) -> Result<&[Q]> {
        Ok(&self.spectra[self.comp_idx(eta)?])
    }

    /// The scalar `c_η` with `L_η = c_η E_η`.
    pub fn l_coeff(&self, eta: &Composition) -> Result<&Q> {
        Ok(&self.l_coeffs[self.comp_idx(eta)?])
    }

    /// `L_η`.
    pub fn l(&self, eta: &Composition) -> Result<MPoly> {
        let i = self.comp_idx(eta)?;
        Ok(self.e[i].scale(&self.l_coeffs[i]))
    }

    /// `E_η(1̲)`.
    pub fn e_at_ones(&self, eta: &Composition) -> Result<&Q> {
        Ok(&self.e_at_ones[self.comp_idx(eta)?])
    }

    /// `L_η(1̲)`.
    pub fn l_at_ones(&self, eta: &Composition) -> Result<Q> {
        let i = self.comp_idx(eta)?;
        Ok(&self.e_at_ones[i] * &self.l_coeffs[i])
    }

    /// Monic `P_λ`.
    pub fn p(&self, lambda: &Partition) -> Result<&MPoly> {
        Ok(&self.p[self.part_idx(lambda)?])
    }

    /// The scalar `c_λ` with `C_λ = c_λ P_λ`.
    pub fn c_coeff(&self, lambda: &Partition) -> Result<&Q> {
        Ok(&self.c_coeffs[self.part_idx(lambda)?])
    }

    /// `C_λ`.
    pub fn c(&self, lambda: &Partition) -> Result<MPoly> {
        let i = self.part_idx(lambda)?;
        Ok(self.p[i].scale(&self.c_coeffs[i]))
    }

    /// `P_λ(1̲)`.
    pub fn p_at_ones(&self, lambda: &Partition) -> Result<&Q> {
        Ok(&self.p_at_ones[self.part_idx(lambda)?])
    }

    /// `C_λ(1̲)`.
    pub fn c_at_ones(&self, lambda: &Partition) -> Result<Q> {
        let i = self.part_idx(lambda)?;
        Ok(&self.p_at_ones[i] * &self.c_coeffs[i])
    }
}

/// Sort key making the Cherednik matrices triangular: the partition `η₊`
/// first, then the composition itself, both lexicographically.
fn triangular_key(eta: &Composition) -> (Partition, Composition) {
    (eta.to_partition(), eta.clone())
}

/// Memo of Jack data for a fixed rank `n` and multiplicity `k`.
///
/// Layers are filled lazily. Concurrent first requests may both compute a
/// layer; exactly one result is kept, so fills are idempotent and later reads
/// do not contend.
pub struct JackBasis {
    params: Params,
    layers: Vec<OnceBox<Result<JackLayer>>>,
    numeric: Vec<OnceBox<Result<NumericLayer>>>,
}

impl core::fmt::Debug for JackBasis {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("JackBasis")
            .field("n", &self.params.n())
            .field("k", self.params.k())
            .field("max_degree", &self.max_degree())
            .finish()
    }
}

impl JackBasis {
    /// A memo able to hold degrees `0..=max_degree`. Only `n` and `k` of
    /// `params` matter.
    pub fn new(params: &Params, max_degree: u32) -> Self {
        let layers = (0..=max_degree).map(|_| OnceBox::new()).collect();
        let numeric = (0..=max_degree).map(|_| OnceBox::new()).collect();
        Self { params: params.clone(), layers, numeric }
    }

    /// The largest degree this memo can hold.
    pub fn max_degree(&self) -> u32 {
        (self.layers.len() - 1) as u32
    }

    /// The parameters the basis was built for.
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// The layer of degree `p`, building it on first use.
    pub fn layer(&self, p: u32) -> Result<&JackLayer> {
        let slot = self
            .layers
            .get(p as usize)
            .ok_or_else(|| Error::InvalidInput(format!("degree {p} exceeds the memo capacity {}", self.max_degree())))?;
        match slot.get_or_init(|| Box::new(build_layer(&self.params, p))) {
            Ok(layer) => Ok(layer),
            Err(e) => Err(e.clone()),
        }
    }

    /// The floating-point layer of degree `p`, building it on first use.
    pub fn numeric_layer(&self, p: u32) -> Result<&NumericLayer> {
        let slot = self
            .numeric
            .get(p as usize)
            .ok_or_else(|| Error::InvalidInput(format!("degree {p} exceeds the memo capacity {}", self.max_degree())))?;
        match slot.get_or_init(|| Box::new(build_numeric_layer(&self.params, p))) {
            Ok(layer) => Ok(layer),
            Err(e) => Err(e.clone()),
        }
    }

    /// Monic non-symmetric Jack polynomial `E_η`.
    pub fn nonsymmetric_jack(&self, eta: &Composition) -> Result<MPoly> {
        self.check_len(eta.len())?;
        Ok(self.layer(eta.degree())?.e(eta)?.clone())
    }

    /// Monic symmetric Jack polynomial `P_λ`.
    pub fn symmetric_jack(&self, lambda: &Partition) -> Result<MPoly> {
        self.check_len(lambda.parts().len())?;
        Ok(self.layer(lambda.degree())?.p(lambda)?.clone())
    }

    /// Coefficients `c_λ` with `Σ_{|λ|=p} c_λ P_λ = (x_1 + ⋯ + x_n)^p`.
    pub fn normalize_c(&self, p: u32) -> Result<BTreeMap<Partition, Q>> {
        let layer = self.layer(p)?;
        Ok(layer.parts.iter().cloned().zip(layer.c_coeffs.iter().cloned()).collect())
    }

    /// Coefficients `c_η` with `Σ_{|η|=p} c_η E_η = (x_1 + ⋯ + x_n)^p`.
    pub fn normalize_l(&self, p: u32) -> Result<BTreeMap<Composition, Q>> {
        let layer = self.layer(p)?;
        Ok(layer.comps.iter().cloned().zip(layer.l_coeffs.iter().cloned()).collect())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.params.n() {
            Ok(())
        } else {
            Err(Error::VariableMismatch { expected: self.params.n(), found: len })
        }
    }
}

/// One-off `E_η` without an external memo.
pub fn nonsymmetric_jack(eta: &Composition, params: &Params) -> Result<MPoly> {
    JackBasis::new(params, eta.degree()).nonsymmetric_jack(eta)
}

/// One-off `P_λ` without an external memo.
pub fn symmetric_jack(lambda: &Partition, params: &Params) -> Result<MPoly> {
    JackBasis::new(params, lambda.degree()).symmetric_jack(lambda)
}

/// Exact value at `1̲`.
pub fn eval_at_ones(q: &MPoly) -> Q {
    q.eval_at_ones()
}

fn build_layer(params: &Params, degree: u32) -> Result<JackLayer> {
    let n = params.n();
    let mut comps = compositions(n, degree);
    comps.sort_by_key(triangular_key);
    let index: BTreeMap<Composition, usize> = comps.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let size = comps.len();

    // rows[j][s] lists the entries (r, M_j[s, r]) with r > s of the matrix of
    // 𝒟_j; diag[j][s] holds M_j[s, s].
    let mut rows: Vec<Vec<Vec<(usize, Q)>>> = Vec::with_capacity(n);
    let mut diag: Vec<Vec<Q>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut rj: Vec<Vec<(usize, Q)>> = (0..size).map(|_| Vec::new()).collect();
        let mut dj = alloc::vec![Q::zero(); size];
        for (r, rho) in comps.iter().enumerate() {
            let image = apply_cherednik(&MPoly::monomial(rho.clone(), Q::from_integer(1.into())), j, params)?;
            for (nu, v) in image.terms() {
                let s = index[nu];
                if s > r {
                    return Err(Error::Internal(format!(
                        "Cherednik operator not triangular: {rho} maps onto {nu}"
                    )));
                }
                if s == r {
                    dj[s] = v.clone();
                } else {
                    rj[s].push((r, v.clone()));
                }
            }
        }
        rows.push(rj);
        diag.push(dj);
    }
    let spectra: Vec<Vec<Q>> = (0..size).map(|s| (0..n).map(|j| diag[j][s].clone()).collect()).collect();
    for t in 0..size {
        for s in 0..size {
            if s != t && spectra[s] == spectra[t] {
                return Err(Error::Degenerate(format!(
                    "k = {}: compositions {} and {} share the Cherednik spectrum",
                    params.k(),
                    comps[s],
                    comps[t]
                )));
            }
        }
    }

    // Back-substitution for each E_η.
    let mut e = Vec::with_capacity(size);
    for t in 0..size {
        let mut v: Vec<Q> = alloc::vec![Q::zero(); t + 1];
        v[t] = Q::from_integer(1.into());
        for s in (0..t).rev() {
            let j = (0..n)
                .find(|&j| spectra[s][j] != spectra[t][j])
                .expect("spectra separated above");
            let mut acc = Q::zero();
            for (r, m) in &rows[j][s] {
                if *r <= t && !v[*r].is_zero() {
                    acc += m * &v[*r];
                }
            }
            if !acc.is_zero() {
                v[s] = -acc / (&spectra[s][j] - &spectra[t][j]);
            }
        }
        let poly = MPoly::from_terms(n, comps.iter().cloned().zip(v))?;
        e.push(poly);
    }

    let target = MPoly::power_sum_1(n).pow(degree);
    let l_coeffs = triangular_expand(&target, &e, comps.iter(), "E")?;
    let e_at_ones: Vec<Q> = e.iter().map(MPoly::eval_at_ones).collect();

    let parts = partitions(n, degree);
    let part_index: BTreeMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let perms = SignedPerm::all_permutations(n);
    let mut p = Vec::with_capacity(parts.len());
    for lambda in &parts {
        let el = &e[index[&lambda.to_composition()]];
        let mut sym = MPoly::zero(n);
        for g in &perms {
            sym.add_scaled(&el.group_act(g)?, &Q::from_integer(1.into()));
        }
        let lead = sym.coeff(&lambda.to_composition());
        if lead.is_zero() {
            return Err(Error::Degenerate(format!("symmetrization of E_{lambda} loses its leading term")));
        }
        p.push(sym.scale(&(Q::from_integer(1.into()) / lead)));
    }
    let c_coeffs = triangular_expand(&target, &p, parts.iter().map(Partition::to_composition).collect::<Vec<_>>().iter(), "P")?;
    let p_at_ones = p.iter().map(MPoly::eval_at_ones).collect();

    Ok(JackLayer {
        degree,
        comps,
        index,
        spectra,
        e,
        l_coeffs,
        e_at_ones,
        parts,
        part_index,
        p,
        c_coeffs,
        p_at_ones,
    })
}

/// Floating-point Jack data of one degree, for the numeric series.
///
/// The construction mirrors the exact one (triangular Cherednik matrices,
/// back-substitution, triangular expansion of `(Σx)^p`) in `f64`, with the
/// spectra and matrix entries still computed exactly. It is much cheaper at
/// high degree, where exact coefficients grow to hundreds of digits. All
/// polynomials are stored as dense coefficient rows over
/// [`NumericLayer::monomials`].
#[derive(Debug)]
pub struct NumericLayer {
    degree: u32,
    monomials: Vec<Composition>,
    compositions: Vec<Composition>,
    partitions: Vec<Partition>,
    l_rows: Vec<Vec<f64>>,
    l_ones: Vec<f64>,
    c_rows: Vec<Vec<f64>>,
    c_ones: Vec<f64>,
}

impl NumericLayer {
    /// The degree of this layer.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The monomial basis indexing every coefficient row.
    pub fn monomials(&self) -> &[Composition] {
        &self.monomials
    }

    /// Index set of the `L_η` rows.
    pub fn compositions(&self) -> &[Composition] {
        &self.compositions
    }

    /// Index set of the `C_λ` rows.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Coefficient rows of `L_η` over [`Self::monomials`].
    pub fn l_rows(&self) -> &[Vec<f64>] {
        &self.l_rows
    }

    /// `L_η(1̲)`.
    pub fn l_ones(&self) -> &[f64] {
        &self.l_ones
    }

    /// Coefficient rows of `C_λ` over [`Self::monomials`].
    pub fn c_rows(&self) -> &[Vec<f64>] {
        &self.c_rows
    }

    /// `C_λ(1̲)`.
    pub fn c_ones(&self) -> &[f64] {
        &self.c_ones
    }

    /// Values of all monomials of this degree at `x`.
    pub fn monomial_values(&self, x: &[C64]) -> Vec<C64> {
        self.monomials
            .iter()
            .map(|m| m.parts().iter().zip(x).fold(C64::new(1.0, 0.0), |acc, (a, xi)| acc * xi.powu(*a)))
            .collect()
    }

    /// Values of all monomials of this degree at a real point.
    pub fn monomial_values_real(&self, x: &[f64]) -> Vec<f64> {
        self.monomials
            .iter()
            .map(|m| m.parts().iter().zip(x).fold(1.0, |acc, (a, xi)| acc * num_traits::Float::powi(*xi, *a as i32)))
            .collect()
    }
}

/// `Σ_i row[i]·values[i]`.
pub fn dot_row(row: &[f64], values: &[C64]) -> C64 {
    row.iter().zip(values).fold(C64::new(0.0, 0.0), |acc, (r, v)| acc + *v * *r)
}

fn build_numeric_layer(params: &Params, degree: u32) -> Result<NumericLayer> {
    let n = params.n();
    let mut comps = compositions(n, degree);
    comps.sort_by_key(triangular_key);
    let index: BTreeMap<Composition, usize> = comps.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let size = comps.len();

    let mut rows: Vec<Vec<Vec<(usize, f64)>>> = Vec::with_capacity(n);
    let mut spectra: Vec<Vec<Q>> = alloc::vec![Vec::with_capacity(n); size];
    for j in 0..n {
        let mut rj: Vec<Vec<(usize, f64)>> = (0..size).map(|_| Vec::new()).collect();
        for (r, rho) in comps.iter().enumerate() {
            let image = apply_cherednik(&MPoly::monomial(rho.clone(), Q::from_integer(1.into())), j, params)?;
            let mut diag = Q::zero();
            for (nu, v) in image.terms() {
                let s = index[nu];
                if s > r {
                    return Err(Error::Internal(format!(
                        "Cherednik operator not triangular: {rho} maps onto {nu}"
                    )));
                }
                if s == r {
                    diag = v.clone();
                } else {
                    rj[s].push((r, q_to_f64(v)));
                }
            }
            spectra[r].push(diag);
        }
        rows.push(rj);
    }
    for t in 0..size {
        for s in 0..t {
            if spectra[s] == spectra[t] {
                return Err(Error::Degenerate(format!(
                    "k = {}: compositions {} and {} share the Cherednik spectrum",
                    params.k(),
                    comps[s],
                    comps[t]
                )));
            }
        }
    }
    let spectra_f: Vec<Vec<f64>> = spectra.iter().map(|v| v.iter().map(q_to_f64).collect()).collect();

    let mut e: Vec<Vec<f64>> = Vec::with_capacity(size);
    for t in 0..size {
        let mut v = alloc::vec![0.0; size];
        v[t] = 1.0;
        for s in (0..t).rev() {
            let j = (0..n).find(|&j| spectra[s][j] != spectra[t][j]).expect("spectra separated above");
            let acc: f64 = rows[j][s].iter().filter(|(r, _)| *r <= t).map(|(r, m)| m * v[*r]).sum();
            v[s] = -acc / (spectra_f[s][j] - spectra_f[t][j]);
        }
        e.push(v);
    }

    // Coefficients of (Σx)^p: multinomials, computed exactly.
    let target: Vec<f64> = {
        let power = MPoly::power_sum_1(n).pow(degree);
        comps.iter().map(|c| q_to_f64(&power.coeff(c))).collect()
    };
    let leads: Vec<usize> = (0..size).collect();
    let l_coeffs = triangular_expand_f64(&target, &e, &leads, "E")?;
    let l_rows: Vec<Vec<f64>> = e.iter().zip(&l_coeffs).map(|(row, c)| row.iter().map(|v| v * c).collect()).collect();
    let l_ones = l_rows.iter().map(|r| r.iter().sum()).collect();

    let parts = partitions(n, degree);
    let perms = SignedPerm::all_permutations(n);
    let mut p_rows = Vec::with_capacity(parts.len());
    let mut p_leads = Vec::with_capacity(parts.len());
    for lambda in &parts {
        let lead = index[&lambda.to_composition()];
        let el = &e[lead];
        let mut sym = alloc::vec![0.0; size];
        for g in &perms {
            for (s, v) in el.iter().enumerate() {
                if *v != 0.0 {
                    let image = Composition::new(g.apply(&comps[s].parts().iter().map(|a| *a as i64).collect::<Vec<_>>()).iter().map(|a| *a as u32).collect());
                    sym[index[&image]] += v;
                }
            }
        }
        let lc = sym[lead];
        if lc == 0.0 {
            return Err(Error::Degenerate(format!("symmetrization of E_{lambda} loses its leading term")));
        }
        p_rows.push(sym.iter().map(|v| v / lc).collect::<Vec<f64>>());
        p_leads.push(lead);
    }
    let c_coeffs = triangular_expand_f64(&target, &p_rows, &p_leads, "P")?;
    let c_rows: Vec<Vec<f64>> = p_rows.iter().zip(&c_coeffs).map(|(row, c)| row.iter().map(|v| v * c).collect()).collect();
    let c_ones = c_rows.iter().map(|r| r.iter().sum()).collect();

    Ok(NumericLayer { degree, monomials: comps.clone(), compositions: comps, partitions: parts, l_rows, l_ones, c_rows, c_ones })
}

/// Floating-point version of [`triangular_expand`] on dense rows; `leads`
/// lists the index of each basis element's leading monomial in increasing order.
fn triangular_expand_f64(target: &[f64], basis: &[Vec<f64>], leads: &[usize], name: &str) -> Result<Vec<f64>> {
    let mut residual = target.to_vec();
    let mut coeffs = alloc::vec![0.0; basis.len()];
    for i in (0..basis.len()).rev() {
        let c = residual[leads[i]];
        if c != 0.0 {
            for (r, b) in residual.iter_mut().zip(&basis[i]) {
                *r -= c * b;
            }
        }
        coeffs[i] = c;
    }
    let scale = target.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let left = residual.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if left > 1e-9 * scale {
        return Err(Error::Internal(format!("{name}-expansion of (Σx)^p left a remainder of relative size {:.2e}", left / scale)));
    }
    Ok(coeffs)
}

/// Solves `Σ c_i b_i = target` for a basis `b_i` that is unitriangular with
/// respect to the listed leading monomials (given in increasing order).
fn triangular_expand<'a, I>(target: &MPoly, basis: &[MPoly], leads: I, name: &str) -> Result<Vec<Q>>
where
    I: DoubleEndedIterator<Item = &'a Composition> + ExactSizeIterator,
{
    let leads: Vec<&Composition> = leads.collect();
    let mut residual = target.clone();
    let mut coeffs = alloc::vec![Q::zero(); basis.len()];
    for i in (0..basis.len()).rev() {
        let c = residual.coeff(leads[i]);
        if !c.is_zero() {
            residual.add_scaled(&basis[i], &-c.clone());
        }
        coeffs[i] = c;
    }
    // For the P basis only partition coordinates are eliminated; a symmetric
    // target then leaves no remainder at all.
    if !residual.is_zero() {
        return Err(Error::Internal(format!("{name}-expansion of (Σx)^p left remainder {residual}")));
    }
    Ok(coeffs)
}
