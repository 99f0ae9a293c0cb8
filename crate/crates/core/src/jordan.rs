//! Jordan–Chevalley decomposition over ℚ(i) and the nilshadow of a solvable
//! Lie algebra.
//!
//! The semisimple part is found by Newton iteration on the squarefree part
//! `q` of the characteristic polynomial: `S ← S − q(S)·u(S)` where
//! `u = (q')⁻¹ mod q`. Each step squares the nilpotent defect `q(S)`, so
//! `⌈log₂ n⌉ + 1` steps suffice; the result is verified before returning.

use num_traits::Zero;

use crate::error::{GermError, Result};
use crate::linalg::{is_zero_vec, sub_vec, Matrix, Subspace, Vector};
use crate::liealg::{JacobiCheck, LieAlgebra};
use crate::scalar::Scalar;

/// `M = S + N` with `S` semisimple, `N` nilpotent and `SN = NS`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanChevalley {
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
}

pub fn newton_cap(dim: usize) -> usize {
    let mut bits = 0;
    while (1usize << bits) < dim.max(1) {
        bits += 1;
    }
    bits + 1
}

pub fn jordan_chevalley(m: &Matrix) -> Result<JordanChevalley> {
    if !m.is_square() {
        return Err(GermError::DimensionMismatch("Jordan-Chevalley needs a square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(JordanChevalley { semisimple: m.clone(), nilpotent: m.clone() });
    }
    let q = m.char_poly().squarefree_part();
    let u = q
        .derivative()
        .inverse_mod(&q)
        .ok_or_else(|| GermError::Invariant("squarefree part is not coprime to its derivative".into()))?;
    let mut s = m.clone();
    for _ in 0..newton_cap(n) {
        let qs = s.eval_poly(&q);
        if qs.is_zero() {
            break;
        }
        s = s.sub(&qs.mul(&s.eval_poly(&u)));
    }
    if !s.eval_poly(&q).is_zero() {
        return Err(GermError::Invariant("Newton iteration did not reach q(S) = 0".into()));
    }
    let nilpotent = m.sub(&s);
    if !nilpotent.is_nilpotent() || !s.commutator(&nilpotent).is_zero() {
        return Err(GermError::Invariant("Jordan-Chevalley parts fail verification".into()));
    }
    Ok(JordanChevalley { semisimple: s, nilpotent })
}

/// A solvable algebra split as `g = V ⊕ n` with `n` a nilpotent ideal
/// containing `[g, g]` and `(ad_A)_s(B) = 0` for `A, B ∈ V`.
#[derive(Clone, Debug)]
pub struct SolvableInput {
    algebra: LieAlgebra,
    nilradical: Subspace,
    complement: Subspace,
}

impl SolvableInput {
    /// Validates the splitting; errors name the failing condition.
    pub fn new(algebra: LieAlgebra, nilradical: Subspace, complement: Subspace) -> Result<Self> {
        let n = algebra.dim();
        let fail = |msg: String| Err(GermError::Precondition(msg));
        if nilradical.ambient() != n || complement.ambient() != n {
            return Err(GermError::DimensionMismatch("nilradical/complement live in the wrong dimension".into()));
        }
        if !complement.is_independent_of(&nilradical) || complement.dim() + nilradical.dim() != n {
            return fail("g is not the direct sum V ⊕ n".into());
        }
        if !algebra.is_ideal(&nilradical) {
            return fail("n is not an ideal of g".into());
        }
        if !nilradical.contains_subspace(&algebra.derived_algebra()) {
            return fail("n does not contain [g, g]".into());
        }
        if algebra.lower_central_series_of(&nilradical).step.is_none() {
            return fail("n is not nilpotent".into());
        }
        let input = SolvableInput { algebra, nilradical, complement };
        for a in input.complement.basis() {
            let s = jordan_chevalley(&input.algebra.ad(a))?.semisimple;
            for b in input.complement.basis() {
                let image = s.apply(b);
                if !is_zero_vec(&image) {
                    return fail(format!(
                        "(ad_A)_s(B) ≠ 0 for A={}, B={}",
                        input.algebra.format_vector(a),
                        input.algebra.format_vector(b)
                    ));
                }
            }
        }
        Ok(input)
    }

    /// The nilpotent case `V = 0`.
    pub fn nilpotent(algebra: LieAlgebra) -> Result<Self> {
        let n = algebra.dim();
        Self::new(algebra, Subspace::full(n), Subspace::zero(n))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn nilradical(&self) -> &Subspace {
        &self.nilradical
    }

    pub fn complement(&self) -> &Subspace {
        &self.complement
    }

    /// Splits `x = a + m` with `a ∈ V`, `m ∈ n`; returns `a`.
    fn complement_part(&self, x: &[Scalar]) -> Result<Vector> {
        let n = self.algebra.dim();
        let mut cols: Vec<Vector> = self.complement.basis().to_vec();
        cols.extend(self.nilradical.basis().iter().cloned());
        let coords = Matrix::from_cols(&cols, n).inverse()?.apply(x);
        let mut a = vec![Scalar::zero(); n];
        for (k, v) in self.complement.basis().iter().enumerate() {
            crate::linalg::axpy(&mut a, &coords[k], v);
        }
        Ok(a)
    }

    /// `ad_s(x) = (ad_{π_V x})_s`, evaluated directly from the definition.
    pub fn ad_s_direct(&self, x: &[Scalar]) -> Result<Matrix> {
        let a = self.complement_part(x)?;
        Ok(jordan_chevalley(&self.algebra.ad(&a))?.semisimple)
    }
}

/// Matrices `ad_s(X_i)` on the basis, extended linearly.
#[derive(Clone, Debug, PartialEq)]
pub struct AdSMap {
    pub matrices: Vec<Matrix>,
}

impl AdSMap {
    pub fn apply(&self, x: &[Scalar]) -> Matrix {
        let n = self.matrices.len();
        let mut out = Matrix::zeros(n, n);
        for (c, m) in x.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(Matrix::is_zero)
    }
}

/// Builds `ad_s` and asserts linearity, commutativity, the derivation
/// property, semisimplicity and vanishing on the nilradical.
pub fn ad_s_map(input: &SolvableInput) -> Result<AdSMap> {
    let alg = input.algebra();
    let n = alg.dim();
    let basis: Vec<Vector> = (0..n).map(|i| crate::linalg::unit_vec(n, i)).collect();
    let matrices = basis.iter().map(|e| input.ad_s_direct(e)).collect::<Result<Vec<_>>>()?;
    let map = AdSMap { matrices };
    let broken = |what: String| Err(GermError::Precondition(format!("ad_s {}", what)));

    // linearity: direct evaluation on sums of complement vectors agrees with the extension
    let vb = input.complement().basis();
    for (i, a) in vb.iter().enumerate() {
        for b in &vb[i..] {
            let sum: Vector = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if input.ad_s_direct(&sum)? != map.apply(&sum) {
                return broken(format!(
                    "is not linear on V: ad_s({} + {}) differs from the sum",
                    alg.format_vector(a),
                    alg.format_vector(b)
                ));
            }
        }
    }
    for v in input.nilradical().basis() {
        if !map.apply(v).is_zero() {
            return broken(format!("does not vanish on n at {}", alg.format_vector(v)));
        }
    }
    for (i, mi) in map.matrices.iter().enumerate() {
        if !mi.minimal_poly().is_squarefree() {
            return broken(format!("({}) is not semisimple", alg.labels()[i]));
        }
        for (j, mj) in map.matrices.iter().enumerate().skip(i + 1) {
            if !mi.commutator(mj).is_zero() {
                return broken(format!("images of {} and {} do not commute", alg.labels()[i], alg.labels()[j]));
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let lhs = mi.apply(&alg.bracket_basis(u, v));
                let r1 = alg.bracket(&mi.col(u), &basis[v]);
                let r2 = alg.bracket(&basis[u], &mi.col(v));
                let rhs: Vector = r1.iter().zip(&r2).map(|(x, y)| x + y).collect();
                if !is_zero_vec(&sub_vec(&lhs, &rhs)) {
                    return broken(format!(
                        "({}) is not a derivation on ({}, {})",
                        alg.labels()[i],
                        alg.labels()[u],
                        alg.labels()[v]
                    ));
                }
            }
        }
    }
    Ok(map)
}

/// The nilshadow on the underlying space of `g`:
/// `[X, Y]_u = [X, Y] − ad_s(X)(Y) + ad_s(Y)(X)`.
pub fn nilshadow(input: &SolvableInput) -> Result<LieAlgebra> {
    let map = ad_s_map(input)?;
    let alg = input.algebra();
    let n = alg.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = alg.bracket_basis(i, j);
            let a = map.matrices[i].col(j);
            let b = map.matrices[j].col(i);
            for k in 0..n {
                v[k] = &(&v[k] - &a[k]) + &b[k];
            }
            if !is_zero_vec(&v) {
                brackets.push((i, j, v));
            }
        }
    }
    let u = LieAlgebra::from_brackets_unchecked(format!("nilshadow({})", alg.name()), alg.labels().to_vec(), brackets)?;
    let hypotheses = || GermError::Precondition("input data violates nilshadow hypotheses".into());
    if !matches!(u.jacobi_check(), JacobiCheck::Pass) || u.nilpotency_step().is_none() {
        return Err(hypotheses());
    }
    Ok(u)
}
