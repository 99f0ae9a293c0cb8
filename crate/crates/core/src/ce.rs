//! The Chevalley–Eilenberg complex `∧g*` and its monomial sub-DGAs.
//!
//! Cochains of degree `p` are dense vectors over the monomials `x_I`,
//! `|I| = p`, listed in lexicographic order of the sorted index set. A
//! monomial is stored as a bitmask over the dual basis.
//!
//! Sign convention: `dω(X, Y) = −ω([X, Y])` on 1-forms, i.e.
//! `dx^k = −Σ_{i<j} c_{ij}^k x^i∧x^j`, extended as an anti-derivation.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GermError, Result};
use crate::linalg::{is_zero_vec, zero_vec, Matrix, Vector};
use crate::liealg::LieAlgebra;
use crate::scalar::Scalar;

pub type Mask = u64;

pub const MAX_GENERATORS: usize = 63;

/// Sign and support of `x_a ∧ x_b`, or `None` when they share an index.
pub fn wedge_masks(a: Mask, b: Mask) -> Option<(bool, Mask)> {
    if a & b != 0 {
        return None;
    }
    // inversions: pairs (i in a, j in b) with i > j
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        inversions += above.count_ones();
    }
    Some((inversions % 2 == 1, a | b))
}

pub fn mask_indices(m: Mask) -> Vec<usize> {
    (0..64).filter(|&k| m & (1 << k) != 0).collect()
}

pub fn indices_mask(ix: &[usize]) -> Mask {
    ix.iter().fold(0, |m, &k| m | (1 << k))
}

fn combinations_lex(n: usize, p: usize) -> Vec<Mask> {
    fn rec(start: usize, n: usize, left: usize, cur: Mask, out: &mut Vec<Mask>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for k in start..=n - left {
            rec(k + 1, n, left - 1, cur | (1 << k), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, 0, &mut out);
    out
}

/// A finite-dimensional cochain algebra spanned by monomials of `∧g*`:
/// either the full complex or a monomial sub-DGA of it.
#[derive(Clone, Debug)]
pub struct Dga {
    algebra: LieAlgebra,
    basis: Vec<Vec<Mask>>,
    lookup: HashMap<Mask, usize>,
    /// `d[p]: C^p → C^{p+1}`
    d: Vec<Matrix>,
    full: bool,
}

/// The differential of a single generator, `dx^k`, as `(mask, coef)` terms.
fn generator_differential(alg: &LieAlgebra, k: usize) -> Vec<(Mask, Scalar)> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = alg.constant(i, j, k);
            if !c.is_zero() {
                out.push(((1 << i) | (1 << j), -c));
            }
        }
    }
    out
}

/// `d x_I` on the full exterior algebra, as `(mask, coef)` terms.
fn monomial_differential(gens: &[Vec<(Mask, Scalar)>], m: Mask) -> HashMap<Mask, Scalar> {
    let mut out: HashMap<Mask, Scalar> = HashMap::new();
    for (pos, k) in mask_indices(m).into_iter().enumerate() {
        let below = m & ((1 << k) - 1);
        let above = m & !((1 << (k + 1)) - 1);
        for (pair, c) in &gens[k] {
            let Some((s1, m1)) = wedge_masks(below, *pair) else { continue };
            let Some((s2, m2)) = wedge_masks(m1, above) else { continue };
            let negative = s1 ^ s2 ^ (pos % 2 == 1);
            let term = if negative { -c.clone() } else { c.clone() };
            let e = out.entry(m2).or_insert_with(Scalar::zero);
            *e += &term;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Dga {
    /// Builds `∧g*` and verifies `d ∘ d = 0`.
    pub fn ce_complex(alg: &LieAlgebra) -> Result<Dga> {
        let n = alg.dim();
        if n > MAX_GENERATORS {
            return Err(GermError::Precondition(format!("at most {} generators supported", MAX_GENERATORS)));
        }
        let basis: Vec<Vec<Mask>> = (0..=n).map(|p| combinations_lex(n, p)).collect();
        let dga = Self::assemble(alg.clone(), basis, true)?;
        dga.check_d_squared()?;
        Ok(dga)
    }

    fn assemble(algebra: LieAlgebra, basis: Vec<Vec<Mask>>, full: bool) -> Result<Dga> {
        let gens: Vec<_> = (0..algebra.dim()).map(|k| generator_differential(&algebra, k)).collect();
        let mut lookup = HashMap::new();
        for layer in &basis {
            for (i, &m) in layer.iter().enumerate() {
                lookup.insert(m, i);
            }
        }
        let mut d = Vec::with_capacity(basis.len());
        for p in 0..basis.len() {
            let rows = basis.get(p + 1).map_or(0, Vec::len);
            let mut mat = Matrix::zeros(rows, basis[p].len());
            for (c, &m) in basis[p].iter().enumerate() {
                for (target, coef) in monomial_differential(&gens, m) {
                    let Some(&r) = lookup.get(&target).filter(|_| target.count_ones() as usize == p + 1) else {
                        return Err(GermError::Precondition(format!(
                            "selection is not closed under d: d({}) involves {}",
                            format_mask(&algebra, m),
                            format_mask(&algebra, target)
                        )));
                    };
                    mat[(r, c)] = coef;
                }
            }
            d.push(mat);
        }
        Ok(Dga { algebra, basis, lookup, d, full })
    }

    fn check_d_squared(&self) -> Result<()> {
        for p in 0..self.d.len().saturating_sub(1) {
            let dd = self.d[p + 1].mul(&self.d[p]);
            for r in 0..dd.rows() {
                for c in 0..dd.cols() {
                    if !dd[(r, c)].is_zero() {
                        return Err(GermError::Precondition(format!(
                            "d∘d ≠ 0: coefficient of {} in dd({}) is {} (Jacobi identity fails)",
                            format_mask(&self.algebra, self.basis[p + 2][r]),
                            format_mask(&self.algebra, self.basis[p][c]),
                            dd[(r, c)].pretty()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Number of generators of the ambient exterior algebra.
    pub fn generators(&self) -> usize {
        self.algebra.dim()
    }

    /// Highest degree with a nonzero space.
    pub fn top_degree(&self) -> usize {
        (0..self.basis.len()).rev().find(|&p| !self.basis[p].is_empty()).unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self, p: usize) -> usize {
        self.basis.get(p).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, p: usize) -> &[Mask] {
        self.basis.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, m: Mask) -> Option<usize> {
        self.lookup.get(&m).copied()
    }

    /// `d: C^p → C^{p+1}` (an empty matrix past the top).
    pub fn differential(&self, p: usize) -> Matrix {
        match self.d.get(p) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(p + 1), self.dim(p)),
        }
    }

    pub fn d_matrix(&self, p: usize) -> &Matrix {
        &self.d[p]
    }

    pub fn apply_d(&self, p: usize, v: &[Scalar]) -> Vector {
        match self.d.get(p) {
            Some(m) => m.apply(v),
            None => zero_vec(self.dim(p + 1)),
        }
    }

    /// Monomial product with sign, as `(sign_negative, index in degree p+q)`.
    pub fn wedge_index(&self, a: Mask, b: Mask) -> Option<(bool, usize)> {
        let (neg, m) = wedge_masks(a, b)?;
        self.lookup.get(&m).map(|&i| (neg, i))
    }

    /// `a ∧ b` for `a ∈ C^p`, `b ∈ C^q`. Errors if the product leaves the span.
    pub fn wedge(&self, p: usize, a: &[Scalar], q: usize, b: &[Scalar]) -> Result<Vector> {
        let mut out = zero_vec(self.dim(p + q));
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (ma, mb) = (self.basis[p][i], self.basis[q][j]);
                let Some((neg, m)) = wedge_masks(ma, mb) else { continue };
                let k = self.lookup.get(&m).ok_or_else(|| {
                    GermError::Precondition(format!(
                        "selection is not closed under wedge: {} ∧ {}",
                        format_mask(&self.algebra, ma),
                        format_mask(&self.algebra, mb)
                    ))
                })?;
                let t = x * y;
                if neg {
                    out[*k] -= &t;
                } else {
                    out[*k] += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn monomial(&self, m: Mask) -> Option<(usize, Vector)> {
        let p = m.count_ones() as usize;
        let i = self.index_of(m)?;
        let mut v = zero_vec(self.dim(p));
        v[i] = Scalar::one();
        Some((p, v))
    }

    pub fn format_cochain(&self, p: usize, v: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = format_mask(&self.algebra, self.basis[p][i]);
            parts.push(if c.is_one() {
                m
            } else if (-c).is_one() {
                format!("-{}", m)
            } else if c.is_real() {
                format!("{}*{}", c.pretty(), m)
            } else {
                format!("({})*{}", c.pretty(), m)
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    pub fn monomial_label(&self, m: Mask) -> String {
        format_mask(&self.algebra, m)
    }

    /// Betti numbers from ranks of `d`: `b_p = dim C^p − rk d_p − rk d_{p−1}`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.basis.len()).map(|p| self.differential(p).rank()).collect();
        (0..self.basis.len()).map(|p| self.dim(p) - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 }).collect()
    }

    /// Checks the Poincaré-duality-type conditions.
    pub fn pd_type_check(&self) -> PdTypeCheck {
        let top = self.top_degree();
        let violation = |s: String| PdTypeCheck::Violation(s);
        if self.dim(0) != 1 || self.index_of(0).is_none() {
            return violation("A^0 is not spanned by the unit".into());
        }
        if top == 0 {
            return violation("no positive top degree".into());
        }
        if self.dim(top) != 1 {
            return violation(format!("top degree {} has dimension {}", top, self.dim(top)));
        }
        let vol = self.basis[top][0];
        for i in 1..top {
            let (a, b) = (self.basis(i), self.basis(top - i));
            if a.len() != b.len() {
                return violation(format!("pairing A^{} × A^{} is not square", i, top - i));
            }
            let pairing = Matrix::from_fn(a.len(), b.len(), |r, c| match wedge_masks(a[r], b[c]) {
                Some((neg, m)) if m == vol => {
                    if neg {
                        -Scalar::one()
                    } else {
                        Scalar::one()
                    }
                }
                _ => Scalar::zero(),
            });
            if pairing.rank() != a.len() {
                return violation(format!("pairing A^{} × A^{} is degenerate", i, top - i));
            }
        }
        if !self.differential(top - 1).is_zero() {
            let col = (0..self.dim(top - 1)).find(|&c| !is_zero_vec(&self.d[top - 1].col(c))).unwrap();
            let m = self.basis[top - 1][col];
            let dm = self.d[top - 1].col(col);
            return violation(format!(
                "dA^{} ≠ 0: d({}) = {}",
                top - 1,
                self.monomial_label(m),
                self.format_cochain(top, &dm)
            ));
        }
        if !self.differential(0).is_zero() {
            return violation("dA^0 ≠ 0".into());
        }
        PdTypeCheck::Pass
    }
}

pub fn format_mask(alg: &LieAlgebra, m: Mask) -> String {
    if m == 0 {
        return "1".into();
    }
    mask_indices(m).iter().map(|&k| alg.labels()[k].to_lowercase()).collect::<Vec<_>>().join("∧")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdTypeCheck {
    Pass,
    Violation(String),
}

impl PdTypeCheck {
    pub fn passed(&self) -> bool {
        matches!(self, PdTypeCheck::Pass)
    }
}

/// A selection of monomials of a parent complex.
#[derive(Clone, Debug)]
pub struct SubDga {
    parent: Dga,
    selected: Vec<Vec<Mask>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubDgaCheck {
    Pass,
    Violation(String),
}

impl SubDgaCheck {
    pub fn passed(&self) -> bool {
        matches!(self, SubDgaCheck::Pass)
    }
}

impl SubDga {
    /// Groups the given monomials by degree, in the parent's order.
    pub fn new(parent: Dga, monomials: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let mut chosen: Vec<Mask> = monomials.into_iter().collect();
        chosen.sort_unstable();
        chosen.dedup();
        for &m in &chosen {
            if parent.index_of(m).is_none() {
                return Err(GermError::Precondition(format!("monomial {:#b} is not in the parent complex", m)));
            }
        }
        let selected = (0..parent.basis.len())
            .map(|p| parent.basis[p].iter().copied().filter(|m| chosen.binary_search(m).is_ok()).collect())
            .collect();
        Ok(SubDga { parent, selected })
    }

    pub fn full(parent: Dga) -> Self {
        let selected = parent.basis.clone();
        SubDga { parent, selected }
    }

    pub fn parent(&self) -> &Dga {
        &self.parent
    }

    pub fn selected(&self) -> &[Vec<Mask>] {
        &self.selected
    }

    pub fn monomials(&self) -> impl Iterator<Item = Mask> + '_ {
        self.selected.iter().flatten().copied()
    }

    pub fn verify(&self) -> SubDgaCheck {
        let set: std::collections::HashSet<Mask> = self.monomials().collect();
        let alg = self.parent.algebra();
        if !set.contains(&0) {
            return SubDgaCheck::Violation("the unit 1 is not selected".into());
        }
        for &m in &set {
            let p = m.count_ones() as usize;
            let Some((_, v)) = self.parent.monomial(m) else { continue };
            let dv = self.parent.apply_d(p, &v);
            for (i, c) in dv.iter().enumerate() {
                let target = self.parent.basis[p + 1][i];
                if !c.is_zero() && !set.contains(&target) {
                    return SubDgaCheck::Violation(format!(
                        "not closed under d: d({}) = {} leaves the span",
                        format_mask(alg, m),
                        self.parent.format_cochain(p + 1, &dv)
                    ));
                }
            }
        }
        for &a in &set {
            for &b in &set {
                if let Some((_, m)) = wedge_masks(a, b) {
                    if !set.contains(&m) {
                        return SubDgaCheck::Violation(format!(
                            "not closed under wedge: {} ∧ {} leaves the span",
                            format_mask(alg, a),
                            format_mask(alg, b)
                        ));
                    }
                }
            }
        }
        SubDgaCheck::Pass
    }

    /// The selection as a complex in its own right, with the restricted `d`.
    pub fn to_dga(&self) -> Result<Dga> {
        if let SubDgaCheck::Violation(v) = self.verify() {
            return Err(GermError::Precondition(format!("not a sub-DGA: {}", v)));
        }
        Dga::assemble(self.parent.algebra.clone(), self.selected.clone(), false)
    }
}

/// Characters enter through exponent vectors: `α_I` is trivial iff
/// `Σ_{i∈I} v_i = 0` and every torsion residue sums to `0` mod its modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterData {
    pub rank: usize,
    pub exponents: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<TorsionComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionComponent {
    pub modulus: i64,
    pub residues: Vec<i64>,
}

impl CharacterData {
    pub fn free(exponents: Vec<Vec<i64>>) -> Self {
        let rank = exponents.first().map_or(0, Vec::len);
        CharacterData { rank, exponents, torsion: Vec::new() }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.exponents.len() != n {
            return Err(GermError::Precondition(format!(
                "{} exponent vectors given for {} basis vectors",
                self.exponents.len(),
                n
            )));
        }
        if let Some(v) = self.exponents.iter().find(|v| v.len() != self.rank) {
            return Err(GermError::Precondition(format!("exponent vector {:?} does not have rank {}", v, self.rank)));
        }
        for t in &self.torsion {
            if t.modulus < 2 {
                return Err(GermError::Precondition(format!("torsion modulus {} is below 2", t.modulus)));
            }
            if t.residues.len() != n {
                return Err(GermError::Precondition("torsion residues must cover every basis vector".into()));
            }
        }
        Ok(())
    }

    pub fn is_trivial_on(&self, m: Mask) -> bool {
        let ix = mask_indices(m);
        let free_ok = (0..self.rank).all(|r| ix.iter().map(|&i| self.exponents[i][r]).sum::<i64>() == 0);
        free_ok && self.torsion.iter().all(|t| ix.iter().map(|&i| t.residues[i]).sum::<i64>().rem_euclid(t.modulus) == 0)
    }
}

/// Selects every monomial whose character is trivial.
pub fn subdga_from_characters(dga: &Dga, chars: &CharacterData) -> Result<SubDga> {
    chars.validate(dga.generators())?;
    let picked: Vec<Mask> = dga.basis.iter().flatten().copied().filter(|&m| chars.is_trivial_on(m)).collect();
    let sub = SubDga::new(dga.clone(), picked)?;
    if let SubDgaCheck::Violation(v) = sub.verify() {
        return Err(GermError::Precondition(format!("character data is not compatible with the algebra: {}", v)));
    }
    Ok(sub)
}
