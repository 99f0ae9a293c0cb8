//! Sparse polynomials over ℚ(i).
//!
//! [`MultiPoly`] is the multivariate ring in named parameters `t_1..t_m`,
//! stored canonically: no zero coefficients, terms keyed by [`Monomial`] in
//! graded lexicographic order. [`UniPoly`] is a dense univariate polynomial
//! used for characteristic and minimal polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GermError, Result};
use crate::scalar::Scalar;

/// Exponent vector of a monomial in the parameters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::one();
        for (x, &e) in point.iter().zip(&self.0) {
            if e > 0 {
                acc = &acc * &x.pow(e);
            }
        }
        acc
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the larger exponent of
    /// the earliest variable wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in an ordered list of named variables.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Serialized form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coefficient: Scalar,
}

pub fn variable_names(prefix: &str, m: usize) -> Arc<[String]> {
    (1..=m).map(|k| format!("{}{}", prefix, k)).collect::<Vec<_>>().into()
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(vars);
        let one = Monomial::one(p.nvars());
        p.add_term(one, c);
        p
    }

    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars);
        p.add_term(Monomial::var(n, i), Scalar::one());
        p
    }

    pub fn from_terms(vars: Arc<[String]>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in terms {
            if m.0.len() != p.nvars() {
                return Err(GermError::DimensionMismatch(format!(
                    "monomial has {} exponents, ring has {} variables",
                    m.0.len(),
                    p.nvars()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c·m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Resolves the common ring of two operands; a constant in any ring may
    /// be lifted into the other operand's ring.
    fn common_vars(&self, other: &MultiPoly) -> Result<Arc<[String]>> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return Ok(self.vars.clone());
        }
        if other.is_constant() {
            return Ok(self.vars.clone());
        }
        if self.is_constant() {
            return Ok(other.vars.clone());
        }
        Err(GermError::DimensionMismatch(format!(
            "variable lists differ: [{}] vs [{}]",
            self.vars.join(","),
            other.vars.join(",")
        )))
    }

    fn lifted_terms(&self, vars: &Arc<[String]>) -> Vec<(Monomial, Scalar)> {
        if self.vars.len() == vars.len() {
            return self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        }
        // constant only
        self.terms.values().map(|c| (Monomial::one(vars.len()), c.clone())).collect()
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let vars = self.common_vars(other)?;
        let mut out = MultiPoly::zero(vars.clone());
        for (m, c) in self.lifted_terms(&vars).into_iter().chain(other.lifted_terms(&vars)) {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let vars = self.common_vars(other)?;
        let a = self.lifted_terms(&vars);
        let b = other.lifted_terms(&vars);
        let mut out = MultiPoly::zero(vars);
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.clone());
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(m.clone(), x * c);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars() {
            return Err(GermError::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        Ok(self.terms.iter().map(|(m, c)| c * &m.eval(point)).sum())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    /// Splits into homogeneous parts, ascending by degree; zero gives `[]`.
    pub fn homogeneous_components(&self) -> Vec<(usize, MultiPoly)> {
        let mut by_deg: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_deg
                .entry(m.degree())
                .or_insert_with(|| MultiPoly::zero(self.vars.clone()))
                .terms
                .insert(m.clone(), c.clone());
        }
        by_deg.into_iter().collect()
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        // highest grlex term first, as usually printed
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord { exponents: m.0.clone(), coefficient: c.clone() })
            .collect()
    }

    pub fn from_records(vars: Arc<[String]>, records: &[TermRecord]) -> Result<Self> {
        MultiPoly::from_terms(vars, records.iter().map(|r| (Monomial(r.exponents.clone()), r.coefficient.clone())))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            let mut coef = c.pretty();
            let negative = coef.starts_with('-') && c.is_real();
            if negative {
                coef.remove(0);
            }
            if !c.is_real() {
                coef = format!("({})", coef);
            }
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if mono.is_empty() {
                coef
            } else if coef == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", coef, mono.join("*"))
            };
            write!(f, "{}{}", sep, body)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense univariate polynomial, coefficients from the constant term upward.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(Vec<Scalar>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.0.last()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * &Scalar::from_int(k as i64)).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        let z = Scalar::zero();
        UniPoly::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) + other.0.get(k).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => UniPoly::zero(),
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dl = divisor.lead().ok_or(GermError::DivisionByZero)?.inv()?;
        let dd = divisor.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.0.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `u·self + v·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let li = l.inv().expect("nonzero");
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `modulus`, when coprime.
    pub fn inverse_mod(&self, modulus: &UniPoly) -> Option<UniPoly> {
        let (g, u, _) = self.ext_gcd(modulus);
        if g.degree() != Some(0) {
            return None;
        }
        Some(u.div_rem(modulus).ok()?.1)
    }

    /// `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(m: usize) -> Arc<[String]> {
        variable_names("t", m)
    }

    fn t(vars: &Arc<[String]>, i: usize) -> MultiPoly {
        MultiPoly::var(vars.clone(), i)
    }

    #[test]
    fn product_of_variables() {
        let r = ring(2);
        let p = t(&r, 0).mul(&t(&r, 1)).unwrap();
        assert_eq!(p.to_string(), "t1*t2");
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(2);
        let a = t(&r, 0).add(&t(&r, 1)).unwrap();
        let b = t(&r, 0).sub(&t(&r, 1)).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_string(), "t1^2 - t2^2");
        assert_eq!(p.eval(&[1.into(), 1.into()]).unwrap(), Scalar::zero());
    }

    #[test]
    fn scaling_by_zero_annihilates() {
        let r = ring(2);
        assert!(t(&r, 0).scale(&Scalar::zero()).is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = t(&ring(2), 0);
        let b = t(&variable_names("s", 2), 0);
        assert!(a.add(&b).is_err());
        let c = MultiPoly::constant(variable_names("s", 2), 3.into());
        assert!(a.mul(&c).is_ok());
    }

    #[test]
    fn evaluation() {
        let r = ring(2);
        let p = t(&r, 0).mul(&t(&r, 1)).unwrap();
        assert_eq!(p.eval(&[2.into(), 3.into()]).unwrap(), Scalar::from_int(6));
        assert!(p.eval(&[2.into()]).is_err());
        let q = p.add(&MultiPoly::constant(r.clone(), 7.into())).unwrap();
        assert_eq!(q.eval(&[0.into(), 0.into()]).unwrap(), Scalar::from_int(7));
    }

    #[test]
    fn homogeneous_split() {
        let r = ring(2);
        let p = t(&r, 0).add(&t(&r, 0).mul(&t(&r, 1)).unwrap()).unwrap();
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!((comps[0].0, comps[0].1.to_string()), (1, "t1".to_string()));
        assert_eq!((comps[1].0, comps[1].1.to_string()), (2, "t1*t2".to_string()));
        assert!(MultiPoly::zero(r.clone()).homogeneous_components().is_empty());
        let cube = t(&r, 0).mul(&t(&r, 0)).unwrap().mul(&t(&r, 0)).unwrap();
        let c = cube.homogeneous_components();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, 3);
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn univariate_euclid() {
        // (x-1)^2 (x+2)
        let p = UniPoly::new(vec![2.into(), (-3).into(), 0.into(), 1.into()]);
        let sf = p.squarefree_part();
        assert_eq!(sf, UniPoly::new(vec![(-2).into(), 1.into(), 1.into()]));
        assert!(!p.is_squarefree());
        assert!(sf.is_squarefree());
        let d = sf.derivative();
        let inv = d.inverse_mod(&sf).unwrap();
        let (_, r) = inv.mul(&d).div_rem(&sf).unwrap();
        assert_eq!(r, UniPoly::one());
    }

    fn arb_poly(m: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, m), -5i64..5), 0..6).prop_map(move |ts| {
            MultiPoly::from_terms(ring(m), ts.into_iter().map(|(e, c)| (Monomial(e), Scalar::from_int(c)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws_and_evaluation(p in arb_poly(3), q in arb_poly(3), r in arb_poly(3),
                                    pt in proptest::collection::vec(-3i64..4, 3)) {
            let pt: Vec<Scalar> = pt.into_iter().map(Scalar::from_int).collect();
            prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
            prop_assert_eq!(p.add(&q).unwrap().add(&r).unwrap(), p.add(&q.add(&r).unwrap()).unwrap());
            prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
            prop_assert_eq!(p.mul(&q).unwrap().eval(&pt).unwrap(), &p.eval(&pt).unwrap() * &q.eval(&pt).unwrap());
            let mut sum = MultiPoly::zero(ring(3));
            for (d, c) in p.homogeneous_components() {
                prop_assert!(c.is_homogeneous());
                prop_assert_eq!(c.total_degree(), Some(d));
                sum = sum.add(&c).unwrap();
            }
            prop_assert_eq!(sum, p.clone());
            if !p.is_zero() && !q.is_zero() {
                prop_assert_eq!(p.mul(&q).unwrap().total_degree(),
                    Some(p.total_degree().unwrap() + q.total_degree().unwrap()));
            }
        }
    }
}
