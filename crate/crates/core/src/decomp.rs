//! Splitting of a finite-dimensional cochain complex into harmonic, exact and
//! coexact parts, `C^p = 𝓗^p ⊕ d(C^{p−1}) ⊕ 𝓐^p`, with the operators
//! `H`, `β` and `δ = d⁻¹∘β`.
//!
//! Two strategies are offered. `Metric` declares the monomial basis
//! orthonormal for `⟨u, v⟩ = Σ u_i·conj(v_i)` and takes `𝓐 = im d*`,
//! `𝓗 = ker d ∩ ker d*`. `Pivot` takes `𝓐` spanned by the basis monomials at
//! the pivot columns of `d` and `𝓗` from the kernel basis, greedily.
//!
//! When generator weights are supplied every space is built inside a single
//! weight block, so `δ` preserves weight.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::ce::{mask_indices, wedge_masks, Dga, Mask, PdTypeCheck};
use crate::error::{GermError, Result};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::liealg::Grading;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Metric,
    Pivot,
}

impl std::str::FromStr for Strategy {
    type Err = GermError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "metric" => Ok(Strategy::Metric),
            "pivot" => Ok(Strategy::Pivot),
            other => Err(GermError::parse("--strategy", format!("unknown strategy `{}`", other))),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Metric => "metric",
            Strategy::Pivot => "pivot",
        })
    }
}

/// The three summands of one degree.
#[derive(Clone, Debug)]
pub struct DegreeSplit {
    pub harmonic: Vec<Vector>,
    /// Basis of `d(C^{p−1})`, equal to `d` of the coexact basis one degree down.
    pub exact: Vec<Vector>,
    pub coexact: Vec<Vector>,
    /// Inverse of the change of basis `[𝓗 | B | 𝓐]`.
    coords: Matrix,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    dga: Dga,
    strategy: Strategy,
    weights: Option<Vec<usize>>,
    splits: Vec<DegreeSplit>,
    harmonic_proj: Vec<Matrix>,
    harmonic_coords: Vec<Matrix>,
    beta: Vec<Matrix>,
    /// `delta[p]: C^p → C^{p−1}`; `delta[0]` has no rows.
    delta: Vec<Matrix>,
}

fn select_rows(m: &Matrix, rows: std::ops::Range<usize>) -> Matrix {
    Matrix::from_fn(rows.len(), m.cols(), |r, c| m[(rows.start + r, c)].clone())
}

fn restrict_cols(m: &Matrix, cols: &[usize]) -> Matrix {
    Matrix::from_fn(m.rows(), cols.len(), |r, c| m[(r, cols[c])].clone())
}

fn embed(v: &[Scalar], support: &[usize], n: usize) -> Vector {
    let mut out = zero_vec(n);
    for (x, &k) in v.iter().zip(support) {
        out[k] = x.clone();
    }
    out
}

fn monomial_weight(m: Mask, weights: &[usize]) -> usize {
    mask_indices(m).iter().map(|&k| weights[k]).sum()
}

/// Index groups of degree `p`: one group, or one per monomial weight.
fn blocks(dga: &Dga, p: usize, weights: Option<&[usize]>) -> Vec<Vec<usize>> {
    match weights {
        None => vec![(0..dga.dim(p)).collect()],
        Some(w) => {
            let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, &m) in dga.basis(p).iter().enumerate() {
                by.entry(monomial_weight(m, w)).or_default().push(i);
            }
            by.into_values().collect()
        }
    }
}

fn check_weight_homogeneous(dga: &Dga, weights: &[usize]) -> Result<()> {
    for p in 0..dga.max_degree() {
        let d = dga.differential(p);
        for (c, &src) in dga.basis(p).iter().enumerate() {
            let w = monomial_weight(src, weights);
            for (r, &dst) in dga.basis(p + 1).iter().enumerate() {
                if !d[(r, c)].is_zero() && monomial_weight(dst, weights) != w {
                    return Err(GermError::Precondition(format!(
                        "differential is not weight-homogeneous: d({}) has a term {} of weight {} ≠ {} \
                         (a graded algebra needs d(a^(k)*) ⊂ W_k)",
                        dga.monomial_label(src),
                        dga.monomial_label(dst),
                        monomial_weight(dst, weights),
                        w
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Builds the decomposition; a grading must be aligned with the basis.
pub fn split_complex(dga: &Dga, strategy: Strategy, grading: Option<&Grading>) -> Result<Decomposition> {
    let weights = match grading {
        None => None,
        Some(g) => Some(g.aligned_weights().ok_or_else(|| {
            GermError::Precondition(
                "grading layers are not spanned by basis vectors; rewrite the algebra in the grading's adapted basis"
                    .into(),
            )
        })?),
    };
    split_complex_weighted(dga, strategy, weights)
}

pub fn split_complex_weighted(dga: &Dga, strategy: Strategy, weights: Option<Vec<usize>>) -> Result<Decomposition> {
    if let Some(w) = &weights {
        if w.len() != dga.generators() {
            return Err(GermError::DimensionMismatch("one weight per generator is required".into()));
        }
        check_weight_homogeneous(dga, w)?;
    }
    let top = dga.max_degree();
    let wref = weights.as_deref();

    // coexact complements 𝓐^p of ker d_p
    let mut coexact: Vec<Vec<Vector>> = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let n = dga.dim(p);
        let d = dga.differential(p);
        let mut basis = Vec::new();
        for block in blocks(dga, p, wref) {
            let sub = restrict_cols(&d, &block);
            match strategy {
                Strategy::Metric => {
                    // columns of d^† restricted to this block's rows
                    for v in sub.conj_transpose().column_space() {
                        basis.push(embed(&v, &block, n));
                    }
                }
                Strategy::Pivot => {
                    for piv in sub.rref().pivots {
                        basis.push(unit_vec(n, block[piv]));
                    }
                }
            }
        }
        coexact.push(basis);
    }

    let mut splits = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let n = dga.dim(p);
        let exact: Vec<Vector> = if p == 0 {
            Vec::new()
        } else {
            coexact[p - 1].iter().map(|a| dga.apply_d(p - 1, a)).collect()
        };
        let d = dga.differential(p);
        let mut harmonic = Vec::new();
        for block in blocks(dga, p, wref) {
            match strategy {
                Strategy::Metric => {
                    let mut rows: Vec<Vector> = d.row_vecs();
                    if p > 0 {
                        rows.extend(dga.differential(p - 1).conj_transpose().row_vecs());
                    }
                    let stacked = Matrix::from_rows(&rows, n);
                    for v in restrict_cols(&stacked, &block).nullspace() {
                        harmonic.push(embed(&v, &block, n));
                    }
                }
                Strategy::Pivot => {
                    let block_exact: Vec<Vector> =
                        exact.iter().filter(|v| block.iter().any(|&k| !v[k].is_zero())).cloned().collect();
                    let mut acc = Subspace::span(n, &block_exact);
                    for v in restrict_cols(&d, &block).nullspace() {
                        let v = embed(&v, &block, n);
                        if !acc.contains(&v) {
                            acc = acc.sum(&Subspace::span(n, std::slice::from_ref(&v)));
                            harmonic.push(v);
                        }
                    }
                }
            }
        }
        let mut cols = harmonic.clone();
        cols.extend(exact.iter().cloned());
        cols.extend(coexact[p].iter().cloned());
        if cols.len() != n {
            return Err(GermError::Invariant(format!(
                "degree {}: summand dimensions {} + {} + {} ≠ {}",
                p,
                harmonic.len(),
                exact.len(),
                coexact[p].len(),
                n
            )));
        }
        let coords = if n == 0 {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_cols(&cols, n)
                .inverse()
                .map_err(|_| GermError::Invariant(format!("degree {}: summands are not independent", p)))?
        };
        splits.push(DegreeSplit { harmonic, exact, coexact: coexact[p].clone(), coords });
    }

    let mut harmonic_proj = Vec::new();
    let mut harmonic_coords = Vec::new();
    let mut beta = Vec::new();
    let mut delta = Vec::new();
    for p in 0..=top {
        let s = &splits[p];
        let n = dga.dim(p);
        let (h, b) = (s.harmonic.len(), s.exact.len());
        let hc = select_rows(&s.coords, 0..h);
        let bc = select_rows(&s.coords, h..h + b);
        harmonic_proj.push(if h == 0 { Matrix::zeros(n, n) } else { Matrix::from_cols(&s.harmonic, n).mul(&hc) });
        beta.push(if b == 0 { Matrix::zeros(n, n) } else { Matrix::from_cols(&s.exact, n).mul(&bc) });
        delta.push(if p == 0 || b == 0 {
            Matrix::zeros(if p == 0 { 0 } else { dga.dim(p - 1) }, n)
        } else {
            Matrix::from_cols(&splits[p - 1].coexact, dga.dim(p - 1)).mul(&bc)
        });
        harmonic_coords.push(hc);
    }

    let dec = Decomposition { dga: dga.clone(), strategy, weights, splits, harmonic_proj, harmonic_coords, beta, delta };
    dec.verify()?;
    Ok(dec)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ContainmentCheck {
    Pass,
    /// A degree-2 cocycle with a component of weight above `ν + 1`.
    Witness { cocycle: Vector, weight: usize },
}

impl ContainmentCheck {
    pub fn passed(&self) -> bool {
        matches!(self, ContainmentCheck::Pass)
    }
}

/// Degree-2 weight spaces `W_k` of a graded complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpaces {
    pub generator_weights: Vec<usize>,
    /// weight `k` → indices of the degree-2 monomials spanning `W_k`
    pub degree2: BTreeMap<usize, Vec<usize>>,
}

impl WeightSpaces {
    pub fn new(dga: &Dga, generator_weights: Vec<usize>) -> Self {
        let mut degree2: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &m) in dga.basis(2).iter().enumerate() {
            degree2.entry(monomial_weight(m, &generator_weights)).or_default().push(i);
        }
        WeightSpaces { generator_weights, degree2 }
    }

    pub fn weight_of(&self, m: Mask) -> usize {
        monomial_weight(m, &self.generator_weights)
    }
}

/// Every degree-2 cocycle must live in weights `≤ ν + 1`.
pub fn kernel_containment_check(dga: &Dga, grading: &Grading) -> Result<ContainmentCheck> {
    let weights = grading
        .aligned_weights()
        .ok_or_else(|| GermError::Precondition("grading is not aligned with the basis".into()))?;
    let nu = grading.layers.len();
    let ws = WeightSpaces::new(dga, weights);
    if dga.max_degree() < 2 {
        return Ok(ContainmentCheck::Pass);
    }
    for z in dga.differential(2).nullspace() {
        for (i, c) in z.iter().enumerate() {
            let w = ws.weight_of(dga.basis(2)[i]);
            if !c.is_zero() && w > nu + 1 {
                return Ok(ContainmentCheck::Witness { cocycle: z.clone(), weight: w });
            }
        }
    }
    Ok(ContainmentCheck::Pass)
}

impl Decomposition {
    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn weights(&self) -> Option<&[usize]> {
        self.weights.as_deref()
    }

    pub fn split(&self, p: usize) -> &DegreeSplit {
        &self.splits[p]
    }

    pub fn max_degree(&self) -> usize {
        self.splits.len() - 1
    }

    pub fn harmonic_basis(&self, p: usize) -> &[Vector] {
        self.splits.get(p).map_or(&[], |s| s.harmonic.as_slice())
    }

    /// `H: C^p → 𝓗^p ⊂ C^p`.
    pub fn harmonic_projection(&self, p: usize) -> &Matrix {
        &self.harmonic_proj[p]
    }

    /// Coordinates of `H(v)` in the harmonic basis of degree `p`.
    pub fn harmonic_coordinates(&self, p: usize) -> &Matrix {
        &self.harmonic_coords[p]
    }

    pub fn beta(&self, p: usize) -> &Matrix {
        &self.beta[p]
    }

    /// `δ: C^p → C^{p−1}`.
    pub fn delta(&self, p: usize) -> &Matrix {
        &self.delta[p]
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.splits.iter().map(|s| s.harmonic.len()).collect()
    }

    /// Checks every identity the splitting guarantees.
    pub fn verify(&self) -> Result<()> {
        let bad = |what: String| Err(GermError::Invariant(what));
        let top = self.max_degree();
        let ranks: Vec<usize> = (0..=top).map(|p| self.dga.differential(p).rank()).collect();
        let mut euler_h = 0i64;
        let mut euler_c = 0i64;
        for p in 0..=top {
            let n = self.dga.dim(p);
            let s = &self.splits[p];
            let betti = n - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 };
            if s.harmonic.len() != betti {
                return bad(format!("dim 𝓗^{} = {} but b_{} = {}", p, s.harmonic.len(), p, betti));
            }
            let sign = if p % 2 == 0 { 1 } else { -1 };
            euler_h += sign * s.harmonic.len() as i64;
            euler_c += sign * n as i64;
            let d = self.dga.differential(p);
            if !d.mul(&self.harmonic_proj[p]).is_zero() {
                return bad(format!("d∘H ≠ 0 in degree {}", p));
            }
            if p < top && !self.harmonic_proj[p + 1].mul(&d).is_zero() {
                return bad(format!("H∘d ≠ 0 in degree {}", p));
            }
            if p >= 1 {
                let del = &self.delta[p];
                if self.dga.differential(p - 1).mul(del) != self.beta[p] {
                    return bad(format!("d∘δ ≠ β in degree {}", p));
                }
                if !del.mul(&self.harmonic_proj[p]).is_zero() {
                    return bad(format!("δ∘H ≠ 0 in degree {}", p));
                }
                if s.coexact.iter().any(|a| !is_zero_vec(&del.apply(a))) {
                    return bad(format!("δ does not vanish on 𝓐^{}", p));
                }
                if p >= 2 && !self.delta[p - 1].mul(del).is_zero() {
                    return bad(format!("δ∘δ ≠ 0 in degree {}", p));
                }
            }
        }
        if euler_h != euler_c {
            return bad("Euler characteristics disagree".into());
        }
        Ok(())
    }

    /// `δ(W_k) ⊂ a^(k)*`: the degree-1 image of each weight space stays in weight `k`.
    pub fn check_weight_compatibility(&self) -> Result<()> {
        let Some(w) = &self.weights else { return Ok(()) };
        if self.max_degree() < 2 {
            return Ok(());
        }
        let del = &self.delta[2];
        for (c, &m) in self.dga.basis(2).iter().enumerate() {
            let k = monomial_weight(m, w);
            for (r, &g) in self.dga.basis(1).iter().enumerate() {
                if !del[(r, c)].is_zero() && monomial_weight(g, w) != k {
                    return Err(GermError::Invariant(format!(
                        "δ({}) has a component {} outside weight {}",
                        self.dga.monomial_label(m),
                        self.dga.monomial_label(g),
                        k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Hermitian adjoint `d*: C^p → C^{p−1}`.
    pub fn codifferential(&self, p: usize) -> Matrix {
        if p == 0 {
            return Matrix::zeros(0, self.dga.dim(0));
        }
        self.dga.differential(p - 1).conj_transpose()
    }

    /// `Δ = d d* + d* d` on `C^p`.
    pub fn laplacian(&self, p: usize) -> Matrix {
        let n = self.dga.dim(p);
        let mut lap = Matrix::zeros(n, n);
        if p >= 1 {
            lap = lap.add(&self.dga.differential(p - 1).mul(&self.codifferential(p)));
        }
        if p < self.max_degree() {
            lap = lap.add(&self.codifferential(p + 1).mul(&self.dga.differential(p)));
        }
        lap
    }
}

/// Conjugate-linear Hodge star `∗̄: C^p → C^{N−p}` with
/// `α ∧ ∗̄β = ⟨α, β⟩·vol` for the monomial volume form.
pub fn hodge_star(dga: &Dga, p: usize, v: &[Scalar]) -> Result<Vector> {
    let top = dga.top_degree();
    if !matches!(dga.pd_type_check(), PdTypeCheck::Pass) {
        return Err(GermError::Precondition("the Hodge star needs a complex of PD type".into()));
    }
    let vol = dga.basis(top)[0];
    let mut out = zero_vec(dga.dim(top - p));
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = dga.basis(p)[i];
        let comp = vol & !m;
        let (neg, _) = wedge_masks(m, comp).expect("complement is disjoint");
        let k = dga.index_of(comp).ok_or_else(|| GermError::Invariant("complement monomial missing".into()))?;
        out[k] = if neg { -c.conj() } else { c.conj() };
    }
    Ok(out)
}

/// `d*` written through the star: `(−1)^{p + (N−p+1)(p−1)} ∗̄ d ∗̄` on `C^p`.
///
/// For even `N` the sign is always `−1`; for odd `N` it is `(−1)^p`.
pub fn star_codifferential(dga: &Dga, p: usize, v: &[Scalar]) -> Result<Vector> {
    let top = dga.top_degree();
    if p == 0 {
        return Ok(Vec::new());
    }
    let s1 = hodge_star(dga, p, v)?;
    let ds = dga.apply_d(top - p, &s1);
    let out = hodge_star(dga, top - p + 1, &ds)?;
    let exponent = p + (top - p + 1) * (p - 1);
    Ok(if exponent % 2 == 1 { out.iter().map(|x| -x.clone()).collect() } else { out })
}

/// Sum of the harmonic, exact and coexact dimensions in each degree.
pub fn summand_dims(dec: &Decomposition) -> Vec<(usize, usize, usize)> {
    dec.splits.iter().map(|s| (s.harmonic.len(), s.exact.len(), s.coexact.len())).collect()
}
