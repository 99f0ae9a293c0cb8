//! The DGLA `L = C ⊗ 𝔞`, Maurer–Cartan residuals and the Kuranishi series.
//!
//! Elements of `L^p` are flat vectors indexed by `(monomial, 𝔞-basis)` with
//! the target index varying fastest. A [`PolyCochain`] is a polynomial in the
//! parameters `t` with coefficients in one `L^p`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::ce::{Dga, SubDga};
use crate::decomp::Decomposition;
use crate::error::{GermError, Result};
use crate::linalg::{is_zero_vec, zero_vec, Matrix, Vector};
use crate::liealg::LieAlgebra;
use crate::poly::{variable_names, Monomial, MultiPoly};
use crate::scalar::Scalar;

/// `C ⊗ 𝔞` with bracket `[α⊗u, β⊗v] = (α∧β)⊗[u,v]`.
#[derive(Clone, Debug)]
pub struct TensorDgla {
    base: Dga,
    target: LieAlgebra,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl TensorDgla {
    pub fn new(base: Dga, target: LieAlgebra) -> Self {
        let m = target.dim();
        let table = (0..m)
            .map(|u| {
                (0..m)
                    .map(|v| {
                        target
                            .bracket_basis(u, v)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        TensorDgla { base, target, table }
    }

    pub fn base(&self) -> &Dga {
        &self.base
    }

    pub fn target(&self) -> &LieAlgebra {
        &self.target
    }

    pub fn dim(&self, p: usize) -> usize {
        self.base.dim(p) * self.target.dim()
    }

    /// The element `α ⊗ e_u`.
    pub fn pure(&self, p: usize, alpha: &[Scalar], u: usize) -> Vector {
        let m = self.target.dim();
        let mut out = zero_vec(self.dim(p));
        for (i, c) in alpha.iter().enumerate() {
            out[i * m + u] = c.clone();
        }
        out
    }

    pub fn bracket(&self, p: usize, a: &[Scalar], q: usize, b: &[Scalar]) -> Vector {
        let m = self.target.dim();
        let mut out = zero_vec(self.dim(p + q));
        let nz = |v: &[Scalar]| -> Vec<(usize, usize, Scalar)> {
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k / m, k % m, c.clone())).collect()
        };
        let (na, nb) = (nz(a), nz(b));
        for (i, u, ca) in &na {
            for (j, v, cb) in &nb {
                let entries = &self.table[*u][*v];
                if entries.is_empty() {
                    continue;
                }
                let Some((neg, k)) = self.base.wedge_index(self.base.basis(p)[*i], self.base.basis(q)[*j]) else {
                    continue;
                };
                let mut c = ca * cb;
                if neg {
                    c = -c;
                }
                for (w, s) in entries {
                    out[k * m + w] += &(&c * s);
                }
            }
        }
        out
    }

    pub fn d(&self, p: usize, a: &[Scalar]) -> Vector {
        self.apply_base(&self.base.differential(p), a)
    }

    /// `(M ⊗ id)(a)` for a linear map `M` on the form factor.
    pub fn apply_base(&self, mat: &Matrix, a: &[Scalar]) -> Vector {
        let m = self.target.dim();
        let mut out = zero_vec(mat.rows() * m);
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, u) = (k / m, k % m);
            for r in 0..mat.rows() {
                let e = &mat[(r, i)];
                if !e.is_zero() {
                    out[r * m + u] += &(e * c);
                }
            }
        }
        out
    }

    /// `dω + ½[ω, ω]`.
    pub fn mc_residual(&self, omega: &[Scalar]) -> Vector {
        let mut out = self.d(1, omega);
        let half = Scalar::half();
        for (o, b) in out.iter_mut().zip(self.bracket(1, omega, 1, omega)) {
            *o += &(&half * &b);
        }
        out
    }

    pub fn format(&self, p: usize, a: &[Scalar]) -> String {
        let m = self.target.dim();
        let mut parts = Vec::new();
        for u in 0..m {
            let alpha: Vector = (0..self.base.dim(p)).map(|i| a[i * m + u].clone()).collect();
            let support = alpha.iter().filter(|c| !c.is_zero()).count();
            let form = self.base.format_cochain(p, &alpha);
            match support {
                0 => {}
                1 => parts.push(format!("{}⊗{}", form, self.target.labels()[u])),
                _ => parts.push(format!("({})⊗{}", form, self.target.labels()[u])),
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Polynomial in `t` with values in `L^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCochain {
    pub degree: usize,
    nvars: usize,
    len: usize,
    terms: BTreeMap<Monomial, Vector>,
}

impl PolyCochain {
    pub fn zero(degree: usize, nvars: usize, len: usize) -> Self {
        PolyCochain { degree, nvars, len, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Vector)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, v: &[Scalar]) {
        let entry = self.terms.entry(m.clone()).or_insert_with(|| zero_vec(v.len()));
        for (e, x) in entry.iter_mut().zip(v) {
            *e += x;
        }
        if is_zero_vec(entry) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &PolyCochain) -> PolyCochain {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PolyCochain {
        let mut out = PolyCochain::zero(self.degree, self.nvars, self.len);
        if !c.is_zero() {
            for (m, v) in &self.terms {
                out.terms.insert(m.clone(), v.iter().map(|x| c * x).collect());
            }
        }
        out
    }

    /// Component of total degree `r` in `t`.
    pub fn slice(&self, r: usize) -> PolyCochain {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == r).map(|(m, v)| (m.clone(), v.clone())).collect();
        PolyCochain { terms, ..*self }
    }

    pub fn truncate(&self, max: usize) -> PolyCochain {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= max).map(|(m, v)| (m.clone(), v.clone())).collect();
        PolyCochain { terms, ..*self }
    }

    pub fn max_t_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn eval(&self, point: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.len);
        for (m, v) in &self.terms {
            let c = m.eval(point);
            for (o, x) in out.iter_mut().zip(v) {
                *o += &(&c * x);
            }
        }
        out
    }

    /// Apply a linear map `L^p → L^q` coefficientwise.
    pub fn map(&self, degree: usize, len: usize, f: impl Fn(&[Scalar]) -> Vector) -> PolyCochain {
        let mut out = PolyCochain::zero(degree, self.nvars, len);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &f(v));
        }
        out
    }

    pub fn bracket(&self, other: &PolyCochain, dgla: &TensorDgla) -> PolyCochain {
        let deg = self.degree + other.degree;
        let mut out = PolyCochain::zero(deg, self.nvars, dgla.dim(deg));
        for (m1, v1) in &self.terms {
            for (m2, v2) in &other.terms {
                out.add_term(m1.mul(m2), &dgla.bracket(self.degree, v1, other.degree, v2));
            }
        }
        out
    }

    /// One polynomial per coordinate.
    pub fn coordinates(&self, vars: &Arc<[String]>) -> Vec<MultiPoly> {
        (0..self.len)
            .map(|k| {
                let terms = self.terms.iter().map(|(m, v)| (m.clone(), v[k].clone()));
                MultiPoly::from_terms(vars.clone(), terms).expect("exponent vectors match the variables")
            })
            .collect()
    }
}

/// `φ = φ₁ + φ₂ + …` together with its provenance.
#[derive(Clone, Debug)]
pub struct KuranishiSeries {
    pub dgla: TensorDgla,
    pub variables: Arc<[String]>,
    /// `(harmonic 1-form label, target label)` for each variable.
    pub variable_table: Vec<(String, String)>,
    /// `slices[r - 1] = φ_r`.
    pub slices: Vec<PolyCochain>,
    pub cap: usize,
    pub terminated: bool,
}

/// `2ν` for a nilpotent base, `2·dim` otherwise.
pub fn default_cap(base: &LieAlgebra) -> usize {
    match base.nilpotency_step() {
        Some(nu) => (2 * nu).max(2),
        None => (2 * base.dim()).max(2),
    }
}

pub fn kuranishi_series(dec: &Decomposition, target: &LieAlgebra, cap: usize) -> Result<KuranishiSeries> {
    if cap < 2 {
        return Err(GermError::Precondition("the truncation cap must be at least 2".into()));
    }
    let dga = dec.dga().clone();
    let dgla = TensorDgla::new(dga, target.clone());
    let harm = dec.harmonic_basis(1);
    let m = target.dim();
    let nvars = harm.len() * m;
    let variables = variable_names("t", nvars);
    let mut variable_table = Vec::with_capacity(nvars);
    let mut phi1 = PolyCochain::zero(1, nvars, dgla.dim(1));
    for (k, h) in harm.iter().enumerate() {
        for u in 0..m {
            variable_table.push((dgla.base().format_cochain(1, h), target.labels()[u].clone()));
            phi1.add_term(Monomial::var(nvars, k * m + u), &dgla.pure(1, h, u));
        }
    }
    let delta2 = dec.delta(2).clone();
    let mut slices = vec![phi1];
    let mut last_nonzero = if slices[0].is_zero() { 0 } else { 1 };
    let mut terminated = false;
    for r in 2..=cap {
        if r > 2 * last_nonzero {
            terminated = true;
            break;
        }
        let mut sum = PolyCochain::zero(2, nvars, dgla.dim(2));
        for s in 1..=r / 2 {
            let b = slices[s - 1].bracket(&slices[r - s - 1], &dgla);
            // degree-one brackets are symmetric, so the pair (s, r−s) appears twice
            sum = sum.add(&if 2 * s == r { b } else { b.scale(&Scalar::from(2)) });
        }
        let half = -Scalar::half();
        let phi_r = sum.map(1, dgla.dim(1), |v| dgla.apply_base(&delta2, v)).scale(&half);
        if !phi_r.is_zero() {
            last_nonzero = r;
        }
        slices.push(phi_r);
    }
    if !terminated && cap >= 2 * last_nonzero {
        terminated = true;
    }
    while slices.len() > 1 && slices.last().is_some_and(PolyCochain::is_zero) {
        slices.pop();
    }
    Ok(KuranishiSeries { dgla, variables, variable_table, slices, cap, terminated })
}

impl KuranishiSeries {
    pub fn phi(&self) -> PolyCochain {
        let first = self.slices[0].clone();
        self.slices[1..].iter().fold(first, |acc, s| acc.add(s))
    }

    pub fn phi1(&self) -> &PolyCochain {
        &self.slices[0]
    }

    /// Largest `r` with `φ_r ≠ 0`.
    pub fn length(&self) -> usize {
        self.slices.iter().rposition(|s| !s.is_zero()).map_or(0, |i| i + 1)
    }

    pub fn slice(&self, r: usize) -> Option<&PolyCochain> {
        r.checked_sub(1).and_then(|i| self.slices.get(i))
    }

    /// The same series with `φ_r` removed.
    pub fn with_slice_removed(&self, r: usize) -> KuranishiSeries {
        let mut out = self.clone();
        if let Some(s) = r.checked_sub(1).and_then(|i| out.slices.get_mut(i)) {
            *s = PolyCochain::zero(1, s.nvars, s.len);
        }
        out
    }

    /// `φ_r + ½Σ δ[φ_s, φ_{r−s}] = 0` for every stored slice.
    pub fn recursion_check(&self, dec: &Decomposition) -> Result<()> {
        for r in 2..=self.slices.len() {
            let mut acc = self.slices[r - 1].clone();
            for s in 1..r {
                let b = self.slices[s - 1].bracket(&self.slices[r - s - 1], &self.dgla);
                let d = b.map(1, self.dgla.dim(1), |v| self.dgla.apply_base(dec.delta(2), v));
                acc = acc.add(&d.scale(&Scalar::half()));
            }
            if !acc.is_zero() {
                return Err(GermError::Invariant(format!("recursion fails in t-degree {}", r)));
            }
        }
        Ok(())
    }

    /// `φ_r` has form weight `r`, and `[φ_i, φ_j]` lies in `W_{i+j} ⊗ 𝔞`.
    pub fn weight_check(&self, weights: &[usize]) -> Result<()> {
        let base = self.dgla.base();
        let m = self.dgla.target().dim();
        let weight_of = |p: usize, k: usize| -> usize {
            crate::ce::mask_indices(base.basis(p)[k / m]).iter().map(|&g| weights[g]).sum()
        };
        let confined = |p: usize, c: &PolyCochain, w: usize| -> bool {
            c.terms().all(|(_, v)| v.iter().enumerate().all(|(k, x)| x.is_zero() || weight_of(p, k) == w))
        };
        for (i, s) in self.slices.iter().enumerate() {
            if !confined(1, s, i + 1) {
                return Err(GermError::Invariant(format!("φ_{} has a component outside weight {}", i + 1, i + 1)));
            }
        }
        for i in 1..=self.slices.len() {
            for j in i..=self.slices.len() {
                let b = self.slices[i - 1].bracket(&self.slices[j - 1], &self.dgla);
                if !confined(2, &b, i + j) {
                    return Err(GermError::Invariant(format!("[φ_{}, φ_{}] leaves W_{}", i, j, i + j)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: usize,
    /// Number of polynomials with a nonzero component of this degree.
    pub polynomials: usize,
}

#[derive(Clone, Debug)]
pub struct ObstructionSystem {
    pub variables: Arc<[String]>,
    pub variable_table: Vec<(String, String)>,
    /// Label of each `𝓗² ⊗ 𝔞` coordinate.
    pub labels: Vec<String>,
    pub polynomials: Vec<MultiPoly>,
    pub nu: Option<usize>,
    pub max_degree: usize,
    pub cap: usize,
    pub terminated: bool,
    pub degree_structure: Vec<DegreeCount>,
}

impl ObstructionSystem {
    pub fn is_smooth(&self) -> bool {
        self.polynomials.iter().all(MultiPoly::is_zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &MultiPoly)> {
        self.polynomials.iter().enumerate().filter(|(_, p)| !p.is_zero())
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.polynomials.iter().map(|p| p.eval(point)).collect()
    }

    /// Caveat printed next to a truncated system.
    pub fn validity(&self) -> String {
        if self.terminated {
            "exact".into()
        } else {
            format!("valid modulo degree > {}", self.cap + 1)
        }
    }
}

/// Coordinates of `H[φ, φ]` in the harmonic basis of `𝓗² ⊗ 𝔞`.
pub fn obstruction_system(series: &KuranishiSeries, dec: &Decomposition) -> Result<ObstructionSystem> {
    let dgla = &series.dgla;
    let phi = series.phi();
    let mut sq = phi.bracket(&phi, dgla);
    if !series.terminated {
        // terms of degree ≤ cap + 1 only involve computed slices
        sq = sq.truncate(series.cap + 1);
    }
    let hc = dec.harmonic_coordinates(2);
    let h = sq.map(2, hc.rows() * dgla.target().dim(), |v| dgla.apply_base(hc, v));
    let polynomials = h.coordinates(&series.variables);
    let mut labels = Vec::new();
    for hb in dec.harmonic_basis(2) {
        for u in dgla.target().labels() {
            labels.push(format!("{}⊗{}", dgla.base().format_cochain(2, hb), u));
        }
    }
    let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &polynomials {
        if let Some(c) = p.terms().find(|(m, _)| m.degree() < 2) {
            return Err(GermError::Invariant(format!(
                "obstruction polynomial {} has a term of degree {}",
                p,
                c.0.degree()
            )));
        }
        for (deg, _) in p.homogeneous_components() {
            *by_degree.entry(deg).or_default() += 1;
        }
    }
    let max_degree = polynomials.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0);
    Ok(ObstructionSystem {
        variables: series.variables.clone(),
        variable_table: series.variable_table.clone(),
        labels,
        polynomials,
        nu: dgla.base().algebra().nilpotency_step(),
        max_degree,
        cap: series.cap,
        terminated: series.terminated,
        degree_structure: by_degree.into_iter().map(|(degree, polynomials)| DegreeCount { degree, polynomials }).collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum DegreeBound {
    Pass,
    Witness { index: usize, degree: usize },
}

impl DegreeBound {
    pub fn passed(&self) -> bool {
        matches!(self, DegreeBound::Pass)
    }
}

pub fn verify_degree_bound(sys: &ObstructionSystem, nu: usize) -> DegreeBound {
    for (index, p) in sys.polynomials.iter().enumerate() {
        if let Some(degree) = p.total_degree() {
            if degree > nu + 1 {
                return DegreeBound::Witness { index, degree };
            }
        }
    }
    DegreeBound::Pass
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeCheck {
    Pass,
    Fail(String),
}

impl GaugeCheck {
    pub fn passed(&self) -> bool {
        matches!(self, GaugeCheck::Pass)
    }
}

/// `δφ ≡ 0` and `φ + ½δ[φ, φ] = φ₁` as polynomial identities.
pub fn gauge_identity_check(series: &KuranishiSeries, dec: &Decomposition) -> Result<GaugeCheck> {
    if !series.terminated {
        return Err(GermError::Precondition("the gauge identities need a terminated series".into()));
    }
    let dgla = &series.dgla;
    let phi = series.phi();
    let dphi = phi.map(0, dgla.dim(0), |v| dgla.apply_base(dec.delta(1), v));
    if !dphi.is_zero() {
        return Ok(GaugeCheck::Fail("δφ(t) is not identically zero".into()));
    }
    let sq = phi.bracket(&phi, dgla);
    let lhs = phi.add(&sq.map(1, dgla.dim(1), |v| dgla.apply_base(dec.delta(2), v)).scale(&Scalar::half()));
    if lhs != *series.phi1() {
        let diff = lhs.add(&series.phi1().scale(&Scalar::from(-1)));
        let deg = diff.max_t_degree().unwrap_or(0);
        return Ok(GaugeCheck::Fail(format!("φ + ½δ[φ, φ] ≠ φ₁ (difference in t-degree {})", deg)));
    }
    Ok(GaugeCheck::Pass)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpotCheck {
    /// The obstructions vanish and `φ(point)` solves Maurer–Cartan with `δφ = 0`.
    Pass,
    /// Nonvanishing obstruction values, by polynomial index.
    Obstructed { values: Vec<(usize, Scalar)>, residual: Vector },
    /// The obstructions vanish yet `φ(point)` is not a solution.
    Violation(String),
}

impl SpotCheck {
    pub fn passed(&self) -> bool {
        matches!(self, SpotCheck::Pass)
    }
}

pub fn mc_spot_check(
    series: &KuranishiSeries,
    sys: &ObstructionSystem,
    dec: &Decomposition,
    point: &[Scalar],
) -> Result<SpotCheck> {
    if !series.terminated {
        return Err(GermError::Precondition("spot checks need a terminated series".into()));
    }
    if point.len() != series.variables.len() {
        return Err(GermError::DimensionMismatch(format!(
            "point has {} coordinates, the germ has {} variables",
            point.len(),
            series.variables.len()
        )));
    }
    let omega = series.phi().eval(point);
    let residual = series.dgla.mc_residual(&omega);
    let values: Vec<(usize, Scalar)> =
        sys.eval(point)?.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
    if !values.is_empty() {
        return Ok(SpotCheck::Obstructed { values, residual });
    }
    if !is_zero_vec(&residual) {
        return Ok(SpotCheck::Violation(format!(
            "obstructions vanish but dω + ½[ω, ω] = {}",
            series.dgla.format(2, &residual)
        )));
    }
    if !is_zero_vec(&series.dgla.apply_base(dec.delta(1), &omega)) {
        return Ok(SpotCheck::Violation("obstructions vanish but δω ≠ 0".into()));
    }
    Ok(SpotCheck::Pass)
}

#[derive(Clone, Debug, PartialEq)]
pub enum EmbeddingCheck {
    Pass,
    Witness { sample: usize, detail: String },
}

impl EmbeddingCheck {
    pub fn passed(&self) -> bool {
        matches!(self, EmbeddingCheck::Pass)
    }
}

/// Includes `L_sub^p` into the ambient `L^p`.
pub fn inclusion(sub: &Dga, ambient: &Dga, m: usize, p: usize, v: &[Scalar]) -> Result<Vector> {
    let mut out = zero_vec(ambient.dim(p) * m);
    for (i, &mask) in sub.basis(p).iter().enumerate() {
        let j = ambient
            .index_of(mask)
            .ok_or_else(|| GermError::Precondition("sub-DGA monomial missing from the ambient complex".into()))?;
        for u in 0..m {
            out[j * m + u] = v[i * m + u].clone();
        }
    }
    Ok(out)
}

/// Maurer–Cartan residuals computed in the sub-DGLA agree with the ambient
/// ones after inclusion.
pub fn linear_embedding_check(sub: &SubDga, target: &LieAlgebra, samples: &[Vector]) -> Result<EmbeddingCheck> {
    let inner = TensorDgla::new(sub.to_dga()?, target.clone());
    let outer = TensorDgla::new(sub.parent().clone(), target.clone());
    let m = target.dim();
    for (idx, omega) in samples.iter().enumerate() {
        if omega.len() != inner.dim(1) {
            return Err(GermError::DimensionMismatch(format!(
                "sample {} has length {}, expected {}",
                idx,
                omega.len(),
                inner.dim(1)
            )));
        }
        let r_inner = inclusion(inner.base(), outer.base(), m, 2, &inner.mc_residual(omega))?;
        let r_outer = outer.mc_residual(&inclusion(inner.base(), outer.base(), m, 1, omega)?);
        if r_inner != r_outer {
            return Ok(EmbeddingCheck::Witness {
                sample: idx,
                detail: format!("sub: {}, ambient: {}", outer.format(2, &r_inner), outer.format(2, &r_outer)),
            });
        }
    }
    Ok(EmbeddingCheck::Pass)
}
