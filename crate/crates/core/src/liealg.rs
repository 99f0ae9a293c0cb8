//! Lie algebras given by structure constants.
//!
//! The bracket is stored only for `i < j`; antisymmetry is structural. Use
//! [`LieAlgebra::new`] for untrusted input: it runs the Jacobi check and
//! refuses algebras that fail it.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{GermError, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// `[X_i, X_j]` for `i < j`, row-major over pairs.
    table: Vec<Vector>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}; {})", self.name, self.bracket_summary().join(", "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum JacobiCheck {
    Pass,
    /// Basis triple `(i, j, k)` with nonzero cyclic sum.
    Violation { triple: (usize, usize, usize), cyclic_sum: Vector },
}

impl JacobiCheck {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiCheck::Pass)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerCentralSeries {
    /// `n^(1) ⊇ n^(2) ⊇ …` up to the first repeated term (or zero).
    pub terms: Vec<Subspace>,
    /// Nilpotency step ν, when the chain reaches zero.
    pub step: Option<usize>,
}

impl LowerCentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// `n^(i)` with 1-based index, zero past the end of a terminating chain.
    pub fn term(&self, i: usize) -> Subspace {
        let last = self.terms.last().expect("series is never empty");
        match self.terms.get(i - 1) {
            Some(s) => s.clone(),
            None if self.step.is_some() => Subspace::zero(last.ambient()),
            None => last.clone(),
        }
    }
}

/// Complements `a^(1), …, a^(ν)` of the lower central series steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub layers: Vec<Subspace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingCheck {
    Pass,
    Violation(String),
}

impl GradingCheck {
    pub fn passed(&self) -> bool {
        matches!(self, GradingCheck::Pass)
    }
}

impl Grading {
    /// Weight of each basis vector when every layer is spanned by basis vectors.
    pub fn aligned_weights(&self) -> Option<Vec<usize>> {
        let n = self.layers.first()?.ambient();
        let mut weights = vec![0; n];
        for (w, layer) in self.layers.iter().enumerate() {
            for v in layer.basis() {
                let support: Vec<usize> = (0..n).filter(|&k| !v[k].is_zero()).collect();
                if support.len() != 1 {
                    return None;
                }
                weights[support[0]] = w + 1;
            }
        }
        weights.iter().all(|&w| w > 0).then_some(weights)
    }

    /// Layer bases concatenated in weight order.
    pub fn adapted_basis(&self) -> Vec<Vector> {
        self.layers.iter().flat_map(|l| l.basis().iter().cloned()).collect()
    }

    pub fn adapted_weights(&self) -> Vec<usize> {
        self.layers.iter().enumerate().flat_map(|(w, l)| std::iter::repeat_n(w + 1, l.dim())).collect()
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Builds an algebra without checking Jacobi.
    ///
    /// `brackets` lists `(i, j, [X_i, X_j])`; pairs with `i > j` are stored
    /// antisymmetrically, unlisted pairs are zero.
    pub fn from_brackets_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(GermError::Precondition("Lie algebra must have positive dimension".into()));
        }
        let mut table = vec![zero_vec(n); n * (n - 1) / 2];
        for (i, j, v) in brackets {
            if i >= n || j >= n || v.len() != n {
                return Err(GermError::DimensionMismatch(format!("bracket ({}, {}) outside dimension {}", i, j, n)));
            }
            if i == j {
                if !is_zero_vec(&v) {
                    return Err(GermError::Precondition(format!("[{0}, {0}] must vanish", labels[i])));
                }
                continue;
            }
            let (a, b, v) = if i < j { (i, j, v) } else { (j, i, v.iter().map(|x| -x.clone()).collect()) };
            let slot = &mut table[pair_index(n, a, b)];
            for (s, x) in slot.iter_mut().zip(&v) {
                *s += x;
            }
        }
        Ok(LieAlgebra { name: name.into(), labels, table })
    }

    /// Builds an algebra and rejects it unless the Jacobi identity holds.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let alg = Self::from_brackets_unchecked(name, labels, brackets)?;
        if let JacobiCheck::Violation { triple: (i, j, k), cyclic_sum } = alg.jacobi_check() {
            return Err(GermError::Precondition(format!(
                "Jacobi identity fails for ({}, {}, {}): cyclic sum = {}",
                alg.labels[i],
                alg.labels[j],
                alg.labels[k],
                alg.format_vector(&cyclic_sum)
            )));
        }
        Ok(alg)
    }

    /// Integer structure constants given as `(i, j, k, c)` meaning `c_{ij}^k = c`.
    pub fn from_int_constants(name: &str, labels: &[&str], consts: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let n = labels.len();
        let brackets = consts.iter().map(|&(i, j, k, c)| {
            let mut v = zero_vec(n);
            v[k] = Scalar::from_int(c);
            (i, j, v)
        });
        Self::new(name, labels.iter().map(|s| s.to_string()).collect(), brackets)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_rational(&self) -> bool {
        self.table.iter().flatten().all(Scalar::is_real)
    }

    /// `[X_i, X_j]` in basis coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => zero_vec(n),
            std::cmp::Ordering::Less => self.table[pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => self.table[pair_index(n, j, i)].iter().map(|x| -x.clone()).collect(),
        }
    }

    /// Structure constant `c_{ij}^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Scalar::zero(),
            std::cmp::Ordering::Less => self.table[pair_index(n, i, j)][k].clone(),
            std::cmp::Ordering::Greater => -self.table[pair_index(n, j, i)][k].clone(),
        }
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate() {
                if i == j || vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                axpy(&mut out, &c, &self.bracket_basis(i, j));
            }
        }
        out
    }

    /// Matrix of `ad_u = [u, ·]`; column `c` is `[u, X_c]`.
    pub fn ad(&self, u: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|c| self.bracket(u, &unit_vec(n, c))).collect();
        Matrix::from_cols(&cols, n)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vec(self.dim(), i))
    }

    /// Checks `Σ_cyc [X_i, [X_j, X_k]] = 0` for all `i < j < k`.
    pub fn jacobi_check(&self) -> JacobiCheck {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |x| unit_vec(n, x);
                    let mut s = self.bracket(&e(i), &self.bracket_basis(j, k));
                    for (a, b, c) in [(j, k, i), (k, i, j)] {
                        let t = self.bracket(&e(a), &self.bracket_basis(b, c));
                        s = s.iter().zip(&t).map(|(x, y)| x + y).collect();
                    }
                    if !is_zero_vec(&s) {
                        return JacobiCheck::Violation { triple: (i, j, k), cyclic_sum: s };
                    }
                }
            }
        }
        JacobiCheck::Pass
    }

    /// `span{[u, w] : u ∈ a, w ∈ b}`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for u in a.basis() {
            for w in b.basis() {
                let v = self.bracket(u, w);
                if !is_zero_vec(&v) {
                    vecs.push(v);
                }
            }
        }
        Subspace::span(self.dim(), &vecs)
    }

    /// Lower central series of the subalgebra `sub`: `s, [s, s], [s, [s, s]], …`.
    pub fn lower_central_series_of(&self, sub: &Subspace) -> LowerCentralSeries {
        let mut terms = vec![sub.clone()];
        loop {
            let last = terms.last().unwrap();
            if last.dim() == 0 {
                let step = terms.len() - 1;
                return LowerCentralSeries { terms, step: Some(step) };
            }
            let next = self.bracket_span(sub, last);
            if next == *last {
                return LowerCentralSeries { terms, step: None };
            }
            terms.push(next);
        }
    }

    pub fn lower_central_series(&self) -> LowerCentralSeries {
        self.lower_central_series_of(&Subspace::full(self.dim()))
    }

    pub fn nilpotency_step(&self) -> Option<usize> {
        self.lower_central_series().step
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full)
    }

    /// True iff `tr(ad_X) = 0` for every basis vector.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim()).all(|i| self.ad_basis(i).trace().is_zero())
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }

    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        sub.contains_subspace(&self.bracket_span(&Subspace::full(self.dim()), sub))
    }

    /// Same algebra written in a new basis `f_i = Σ_k basis[i][k] X_k`.
    pub fn change_basis(&self, basis: &[Vector], labels: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        if basis.len() != n || labels.len() != n {
            return Err(GermError::DimensionMismatch("change of basis needs n vectors and n labels".into()));
        }
        let p = Matrix::from_cols(basis, n);
        let p_inv = p.inverse().map_err(|_| GermError::Precondition("new basis is not a basis".into()))?;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = p_inv.apply(&self.bracket(&basis[i], &basis[j]));
                if !is_zero_vec(&v) {
                    brackets.push((i, j, v));
                }
            }
        }
        LieAlgebra::from_brackets_unchecked(self.name.clone(), labels, brackets)
    }

    /// Direct sum `self ⊕ other` on concatenated bases.
    pub fn direct_sum(&self, other: &LieAlgebra, name: &str) -> LieAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut brackets = Vec::new();
        for (alg, off) in [(self, 0), (other, n)] {
            for i in 0..alg.dim() {
                for j in i + 1..alg.dim() {
                    let b = alg.bracket_basis(i, j);
                    if !is_zero_vec(&b) {
                        let mut v = zero_vec(n + m);
                        for (k, x) in b.into_iter().enumerate() {
                            v[off + k] = x;
                        }
                        brackets.push((off + i, off + j, v));
                    }
                }
            }
        }
        LieAlgebra::from_brackets_unchecked(name, labels, brackets).expect("direct sum of valid algebras")
    }

    /// Nonzero brackets `[X_i, X_j] = …`, `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.table[pair_index(n, i, j)];
                if !is_zero_vec(v) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &self.labels[k];
            let s = if c.is_one() {
                label.clone()
            } else if (-c).is_one() {
                format!("-{}", label)
            } else if c.is_real() {
                format!("{}*{}", c.pretty(), label)
            } else {
                format!("({})*{}", c.pretty(), label)
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    pub fn bracket_summary(&self) -> Vec<String> {
        self.nonzero_brackets()
            .iter()
            .map(|(i, j, v)| format!("[{},{}] = {}", self.labels[*i], self.labels[*j], self.format_vector(v)))
            .collect()
    }

    pub fn verify_natural_grading(&self, g: &Grading) -> Result<GradingCheck> {
        let lcs = self.lower_central_series();
        let nu = lcs.step.ok_or_else(|| GermError::Precondition("algebra is not nilpotent".into()))?;
        if g.layers.len() != nu {
            return Err(GermError::Precondition(format!(
                "grading has {} layers but the algebra is {}-step nilpotent",
                g.layers.len(),
                nu
            )));
        }
        for (idx, layer) in g.layers.iter().enumerate() {
            let i = idx + 1;
            let (ni, next) = (lcs.term(i), lcs.term(i + 1));
            if !ni.contains_subspace(layer) {
                return Ok(GradingCheck::Violation(format!("layer {} is not inside n^({})", i, i)));
            }
            if !layer.is_independent_of(&next) || layer.dim() + next.dim() != ni.dim() {
                return Ok(GradingCheck::Violation(format!(
                    "layer {} does not complement n^({}) in n^({})",
                    i,
                    i + 1,
                    i
                )));
            }
        }
        for (a, la) in g.layers.iter().enumerate() {
            for (b, lb) in g.layers.iter().enumerate().skip(a) {
                let target = g.layers.get(a + b + 1).cloned().unwrap_or_else(|| Subspace::zero(self.dim()));
                for u in la.basis() {
                    for v in lb.basis() {
                        let w = self.bracket(u, v);
                        if !target.contains(&w) {
                            return Ok(GradingCheck::Violation(format!(
                                "[{}, {}] = {} is not in layer {}",
                                self.format_vector(u),
                                self.format_vector(v),
                                self.format_vector(&w),
                                a + b + 2
                            )));
                        }
                    }
                }
            }
        }
        Ok(GradingCheck::Pass)
    }

    /// Searches for a natural grading whose layers are spanned by input basis
    /// vectors, taking the smallest indices first. `None` does not mean the
    /// algebra is not naturally graded.
    pub fn infer_grading_basis_aligned(&self) -> Option<Grading> {
        let lcs = self.lower_central_series();
        let nu = lcs.step?;
        let n = self.dim();
        let mut layers = Vec::with_capacity(nu);
        for i in 1..=nu {
            let (ni, next) = (lcs.term(i), lcs.term(i + 1));
            let want = ni.dim() - next.dim();
            let mut chosen: Vec<Vector> = Vec::new();
            let mut acc = next.clone();
            for k in 0..n {
                if chosen.len() == want {
                    break;
                }
                let e = unit_vec(n, k);
                if ni.contains(&e) && !acc.contains(&e) {
                    acc = acc.sum(&Subspace::span(n, std::slice::from_ref(&e)));
                    chosen.push(e);
                }
            }
            if chosen.len() < want {
                return None;
            }
            layers.push(Subspace::span(n, &chosen));
        }
        let g = Grading { layers };
        matches!(self.verify_natural_grading(&g), Ok(GradingCheck::Pass)).then_some(g)
    }
}

/// Built-in algebras.
pub mod presets {
    use super::*;

    pub fn abelian(n: usize) -> LieAlgebra {
        let labels = (1..=n).map(|k| format!("e{}", k)).collect();
        LieAlgebra::from_brackets_unchecked(format!("abelian-{}", n), labels, []).expect("n > 0")
    }

    /// Heisenberg algebra of dimension `2k+1`: `[x_i, y_i] = z`.
    pub fn heisenberg(k: usize) -> LieAlgebra {
        let n = 2 * k + 1;
        let mut labels = Vec::new();
        if k == 1 {
            labels.extend(["x", "y", "z"].map(String::from));
        } else {
            labels.extend((1..=k).map(|i| format!("x{}", i)));
            labels.extend((1..=k).map(|i| format!("y{}", i)));
            labels.push("z".into());
        }
        let brackets = (0..k).map(|i| (i, k + i, unit_vec(n, n - 1)));
        LieAlgebra::new(format!("h{}", n), labels, brackets).expect("Heisenberg satisfies Jacobi")
    }

    /// `sl_2` on `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::from_int_constants("sl2", &["e", "h", "f"], &[(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)])
            .expect("sl2 satisfies Jacobi")
    }

    /// `gl_n` on the matrix units `E_ij`, row-major.
    pub fn gl(n: usize) -> LieAlgebra {
        let dim = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
        let mut brackets = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
                let mut v = zero_vec(dim);
                if j == k {
                    v[idx(i, l)] += &Scalar::one();
                }
                if l == i {
                    v[idx(k, j)] -= &Scalar::one();
                }
                if !is_zero_vec(&v) {
                    brackets.push((a, b, v));
                }
            }
        }
        LieAlgebra::new(format!("gl{}", n), labels, brackets).expect("gl_n satisfies Jacobi")
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn filiform4() -> LieAlgebra {
        LieAlgebra::from_int_constants("filiform4", &["e1", "e2", "e3", "e4"], &[(0, 1, 2, 1), (0, 2, 3, 1)]).unwrap()
    }

    #[test]
    fn jacobi_on_standard_algebras() {
        assert!(heisenberg(1).jacobi_check().passed());
        assert!(sl2().jacobi_check().passed());
        assert!(gl(3).jacobi_check().passed());
        let two = LieAlgebra::from_int_constants("r2", &["t", "x"], &[(0, 1, 1, 1)]).unwrap();
        assert!(two.jacobi_check().passed());
    }

    #[test]
    fn jacobi_counterexample() {
        let bad = LieAlgebra::from_brackets_unchecked(
            "bad",
            vec!["e1".into(), "e2".into(), "e3".into()],
            [(0, 1, unit_vec(3, 2)), (0, 2, unit_vec(3, 0))],
        )
        .unwrap();
        match bad.jacobi_check() {
            JacobiCheck::Violation { triple, cyclic_sum } => {
                assert_eq!(triple, (0, 1, 2));
                assert_eq!(cyclic_sum, unit_vec(3, 2));
            }
            JacobiCheck::Pass => panic!("expected violation"),
        }
        assert!(LieAlgebra::from_int_constants("bad", &["e1", "e2", "e3"], &[(0, 1, 2, 1), (0, 2, 0, 1)]).is_err());
    }

    #[test]
    fn lower_central_series_examples() {
        let h = heisenberg(1);
        let lcs = h.lower_central_series();
        assert_eq!(lcs.dims(), vec![3, 1, 0]);
        assert_eq!(lcs.terms[1], Subspace::span(3, &[unit_vec(3, 2)]));
        assert_eq!(lcs.step, Some(2));
        assert_eq!(abelian(3).nilpotency_step(), Some(1));
        assert_eq!(filiform4().nilpotency_step(), Some(3));
        assert_eq!(sl2().nilpotency_step(), None);
    }

    #[test]
    fn unimodularity() {
        assert!(heisenberg(1).is_unimodular());
        let r2 = LieAlgebra::from_int_constants("r2", &["t", "x"], &[(0, 1, 1, 1)]).unwrap();
        assert!(!r2.is_unimodular());
        let exc = LieAlgebra::from_int_constants("exc", &["T", "X", "Y", "Z"], &[(0, 1, 1, 1), (0, 2, 2, -1), (1, 2, 3, 1)])
            .unwrap();
        assert!(exc.is_unimodular());
    }

    #[test]
    fn natural_gradings() {
        let h = heisenberg(1);
        let e = |k| unit_vec(3, k);
        let g = Grading { layers: vec![Subspace::span(3, &[e(0), e(1)]), Subspace::span(3, &[e(2)])] };
        assert_eq!(h.verify_natural_grading(&g).unwrap(), GradingCheck::Pass);
        // a^(1) = <X, Y+Z>
        let ypz: Vector = vec![0.into(), 1.into(), 1.into()];
        let g2 = Grading { layers: vec![Subspace::span(3, &[e(0), ypz]), Subspace::span(3, &[e(2)])] };
        assert_eq!(h.verify_natural_grading(&g2).unwrap(), GradingCheck::Pass);
        let g3 = Grading { layers: vec![Subspace::full(3)] };
        assert!(h.verify_natural_grading(&g3).is_err());

        let f = filiform4();
        let e4 = |k| unit_vec(4, k);
        let gf = Grading {
            layers: vec![Subspace::span(4, &[e4(0), e4(1)]), Subspace::span(4, &[e4(2)]), Subspace::span(4, &[e4(3)])],
        };
        assert!(f.verify_natural_grading(&gf).unwrap().passed());
    }

    #[test]
    fn grading_inference() {
        let g = heisenberg(1).infer_grading_basis_aligned().unwrap();
        assert_eq!(g.aligned_weights(), Some(vec![1, 1, 2]));
        let a = abelian(3).infer_grading_basis_aligned().unwrap();
        assert_eq!(a.layers, vec![Subspace::full(3)]);
        assert_eq!(filiform4().infer_grading_basis_aligned().unwrap().aligned_weights(), Some(vec![1, 1, 2, 3]));
        assert_eq!(heisenberg(2).infer_grading_basis_aligned().unwrap().aligned_weights(), Some(vec![1, 1, 1, 1, 2]));
    }

    #[test]
    fn basis_change_preserves_structure() {
        let h = heisenberg(1);
        let basis = vec![vec![1.into(), 0.into(), 0.into()], vec![1.into(), 1.into(), 0.into()], unit_vec(3, 2)];
        let h2 = h.change_basis(&basis, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert!(h2.jacobi_check().passed());
        assert_eq!(h2.bracket_basis(0, 1), unit_vec(3, 2));
    }

    #[test]
    fn gl2_brackets() {
        let g = gl(2);
        // [E12, E21] = E11 - E22
        let v = g.bracket_basis(1, 2);
        assert_eq!(v, vec![Scalar::one(), Scalar::zero(), Scalar::zero(), -Scalar::one()]);
        assert!(!g.is_abelian());
        assert!(g.is_unimodular());
    }
}
