#![allow(dead_code)]

use std::sync::Arc;

use germkit::linalg::{Matrix, Vector};
use germkit::poly::{variable_names, MultiPoly};
use germkit::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Structure constants `(i, j, k, c)` with `i < j`, written out by hand.
pub type Table = &'static [(usize, usize, usize, i64)];

/// `(e, h, f)` with `[e,h] = -2e`, `[e,f] = h`, `[h,f] = -2f`.
pub const SL2: Table = &[(0, 1, 0, -2), (0, 2, 1, 1), (1, 2, 2, -2)];
/// `(x, y, z)` with `[x,y] = z`.
pub const H3: Table = &[(0, 1, 2, 1)];
pub const ABELIAN: Table = &[];

/// Bracket of two vectors of polynomials, expanded straight from a table.
pub fn poly_bracket(table: Table, u: &[MultiPoly], v: &[MultiPoly]) -> Vec<MultiPoly> {
    let vars = u[0].vars().clone();
    let mut out = vec![MultiPoly::zero(vars.clone()); u.len()];
    for &(i, j, k, c) in table {
        let c = Scalar::from(c);
        let term = u[i].mul(&v[j]).unwrap().sub(&u[j].mul(&v[i]).unwrap()).unwrap();
        out[k] = out[k].add(&term.scale(&c)).unwrap();
    }
    out
}

/// The two cubic families `[a,[a,b]]` and `[b,[a,b]]` for generic
/// `a = Σ t_i e_i`, `b = Σ t_{m+i} e_i` in an `m`-dimensional target.
pub fn cubic_oracle(table: Table, m: usize) -> (Arc<[String]>, Vec<MultiPoly>, Vec<MultiPoly>) {
    let vars = variable_names("t", 2 * m);
    let a: Vec<MultiPoly> = (0..m).map(|i| MultiPoly::var(vars.clone(), i)).collect();
    let b: Vec<MultiPoly> = (0..m).map(|i| MultiPoly::var(vars.clone(), m + i)).collect();
    let ab = poly_bracket(table, &a, &b);
    (vars, poly_bracket(table, &a, &ab), poly_bracket(table, &b, &ab))
}

pub fn rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-span..=span), rng.gen_range(1..=max_den)).unwrap()
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Scalar {
    loop {
        let c = rational(rng, span, max_den);
        if c != Scalar::from(0) {
            return c;
        }
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| rational(rng, 5, 4)).collect()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vector> = (0..n).map(|_| (0..n).map(|_| rational(rng, 3, 3)).collect()).collect();
        let m = Matrix::from_rows(&rows, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// A block-diagonal matrix with its known semisimple and nilpotent parts.
pub struct BlockForm {
    pub matrix: Matrix,
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
}

/// Random direct sum of Jordan blocks, rotation blocks `[[a,-b],[b,a]]`
/// and doubled rotation blocks coupled by the identity.
pub fn random_block_form(rng: &mut ChaCha8Rng, n: usize) -> BlockForm {
    let mut s = Matrix::zeros(n, n);
    let mut nil = Matrix::zeros(n, n);
    let mut at = 0;
    while at < n {
        let left = n - at;
        let kind = rng.gen_range(0..3);
        if kind == 1 && left >= 2 {
            let (a, b) = (rational(rng, 4, 3), nonzero_rational(rng, 4, 3));
            let reps = if left >= 4 && rng.gen_bool(0.5) { 2 } else { 1 };
            for r in 0..reps {
                let o = at + 2 * r;
                s[(o, o)] = a.clone();
                s[(o + 1, o + 1)] = a.clone();
                s[(o, o + 1)] = -b.clone();
                s[(o + 1, o)] = b.clone();
            }
            if reps == 2 {
                nil[(at, at + 2)] = Scalar::from(1);
                nil[(at + 1, at + 3)] = Scalar::from(1);
            }
            at += 2 * reps;
        } else {
            let k = rng.gen_range(1..=left.min(3));
            let lambda = rational(rng, 4, 3);
            for i in 0..k {
                s[(at + i, at + i)] = lambda.clone();
                if i + 1 < k {
                    nil[(at + i, at + i + 1)] = Scalar::from(1);
                }
            }
            at += k;
        }
    }
    BlockForm { matrix: s.add(&nil), semisimple: s, nilpotent: nil }
}

/// Conjugates `m` by `p`: `p m p⁻¹`.
pub fn conjugate(p: &Matrix, m: &Matrix) -> Matrix {
    p.mul(m).mul(&p.inverse().unwrap())
}
