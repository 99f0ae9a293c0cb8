mod common;

use germkit::ce::Dga;
use germkit::decomp::{split_complex, split_complex_weighted, Strategy};
use germkit::fixtures;
use germkit::io::AlgebraFile;
use germkit::kuranishi::{kuranishi_series, obstruction_system, TensorDgla};
use germkit::linalg::is_zero_vec;
use germkit::liealg::{presets, LieAlgebra};
use germkit::poly::{variable_names, MultiPoly};
use germkit::Scalar;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn relabel(alg: &LieAlgebra, seed: u64) -> LieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = common::random_invertible(&mut rng, alg.dim());
    let labels = (0..alg.dim()).map(|k| format!("v{}", k + 1)).collect();
    alg.change_basis(&p.col_vecs(), labels).unwrap()
}

fn sign(exp: usize) -> Scalar {
    if exp.is_multiple_of(2) {
        Scalar::from(1)
    } else {
        Scalar::from(-1)
    }
}

fn scaled(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

fn added(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_survive_a_change_of_basis(k in 0usize..fixtures::ALGEBRAS.len(), seed in any::<u64>()) {
        let alg = fixtures::load(fixtures::ALGEBRAS[k].0).unwrap().algebra;
        let moved = relabel(&alg, seed);
        prop_assert!(moved.jacobi_check().passed());
        prop_assert_eq!(moved.lower_central_series().dims(), alg.lower_central_series().dims());
        prop_assert_eq!(moved.nilpotency_step(), alg.nilpotency_step());
        prop_assert_eq!(moved.is_unimodular(), alg.is_unimodular());
        let (a, b) = (Dga::ce_complex(&alg).unwrap(), Dga::ce_complex(&moved).unwrap());
        prop_assert_eq!(a.betti_numbers(), b.betti_numbers());
        prop_assert_eq!(a.pd_type_check().passed(), b.pd_type_check().passed());
    }

    #[test]
    fn algebra_files_round_trip(k in 0usize..fixtures::ALGEBRAS.len(), seed in any::<u64>()) {
        let alg = relabel(&fixtures::load(fixtures::ALGEBRAS[k].0).unwrap().algebra, seed);
        let json = AlgebraFile::from_algebra(&alg).to_json();
        let back = AlgebraFile::from_json(&json, "memory").unwrap().resolve().unwrap().algebra;
        prop_assert_eq!(back, alg);
    }

    #[test]
    fn tensor_dgla_is_a_graded_lie_algebra(k in 0usize..4, seed in any::<u64>()) {
        let base = fixtures::load(["h3", "filiform4", "exc", "q_plus_h3"][k]).unwrap().algebra;
        let target = [presets::sl2(), presets::gl(2)][(seed % 2) as usize].clone();
        let l = TensorDgla::new(Dga::ce_complex(&base).unwrap(), target);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = l.base().max_degree();
        for p in 0..=top {
            for q in 0..=top - p {
                let a = common::random_vector(&mut rng, l.dim(p));
                let b = common::random_vector(&mut rng, l.dim(q));
                // skew symmetry
                let ab = l.bracket(p, &a, q, &b);
                let ba = l.bracket(q, &b, p, &a);
                prop_assert_eq!(&ab, &scaled(&-sign(p * q), &ba));
                // d is a derivation
                if p + q < top {
                    let lhs = l.d(p + q, &ab);
                    let rhs = added(&l.bracket(p + 1, &l.d(p, &a), q, &b), &scaled(&sign(p), &l.bracket(p, &a, q + 1, &l.d(q, &b))));
                    prop_assert_eq!(lhs, rhs);
                }
                for r in 0..=top - p - q {
                    let c = common::random_vector(&mut rng, l.dim(r));
                    let t1 = scaled(&sign(p * r), &l.bracket(p, &a, q + r, &l.bracket(q, &b, r, &c)));
                    let t2 = scaled(&sign(q * p), &l.bracket(q, &b, r + p, &l.bracket(r, &c, p, &a)));
                    let t3 = scaled(&sign(r * q), &l.bracket(r, &c, p + q, &l.bracket(p, &a, q, &b)));
                    prop_assert!(is_zero_vec(&added(&added(&t1, &t2), &t3)));
                }
            }
            if p + 1 < top {
                let a = common::random_vector(&mut rng, l.dim(p));
                prop_assert!(is_zero_vec(&l.d(p + 1, &l.d(p, &a))));
            }
        }
    }

    #[test]
    fn germ_does_not_depend_on_the_strategy(k in 0usize..fixtures::GRADED_NILPOTENT.len()) {
        let input = fixtures::load(fixtures::GRADED_NILPOTENT[k]).unwrap();
        let dga = Dga::ce_complex(&input.algebra).unwrap();
        let g = input.grading.unwrap();
        let systems: Vec<_> = [Strategy::Metric, Strategy::Pivot].into_iter().map(|s| {
            let dec = split_complex(&dga, s, Some(&g)).unwrap();
            let series = kuranishi_series(&dec, &presets::sl2(), 8).unwrap();
            let sys = obstruction_system(&series, &dec).unwrap();
            (series.terminated, sys.max_degree, sys.polynomials.len())
        }).collect();
        // polynomials depend on the complement, their number and degree do not
        prop_assert_eq!(systems[0], systems[1]);
    }
}

/// `x^i ∧ x^j ⊗ u` coordinate of `[ω, ω]`, which is `2[a_i, a_j]`, for `ω = Σ x^i ⊗ a_i` on an
/// abelian base, straight from the structure table.
fn quadratic_oracle(table: common::Table, n: usize, m: usize) -> Vec<MultiPoly> {
    let vars = variable_names("t", n * m);
    let a: Vec<Vec<MultiPoly>> =
        (0..n).map(|i| (0..m).map(|u| MultiPoly::var(vars.clone(), i * m + u)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.extend(common::poly_bracket(table, &a[i], &a[j]).iter().map(|p| p.scale(&Scalar::from(2))));
        }
    }
    out
}

#[test]
fn abelian_base_obstructions_are_brackets_of_the_linear_part() {
    for (target, table) in [(presets::sl2(), common::SL2), (presets::heisenberg(1), common::H3)] {
        let dga = Dga::ce_complex(&presets::abelian(3)).unwrap();
        let dec = split_complex_weighted(&dga, Strategy::Metric, Some(vec![1, 1, 1])).unwrap();
        let series = kuranishi_series(&dec, &target, 4).unwrap();
        assert!(series.terminated && series.length() == 1);
        let sys = obstruction_system(&series, &dec).unwrap();
        let oracle = quadratic_oracle(table, 3, 3);
        assert_eq!(sys.polynomials.len(), oracle.len());
        for (k, (p, q)) in sys.polynomials.iter().zip(&oracle).enumerate() {
            assert_eq!(p, q, "{} ⊗ {}: coordinate {}", dga.algebra().name(), target.name(), sys.labels[k]);
        }
    }
}

#[test]
fn heisenberg_target_over_h3_is_unobstructed_to_third_order() {
    // [a,[a,b]] vanishes identically in a 2-step target
    let (_, aab, bab) = common::cubic_oracle(common::H3, 3);
    assert!(aab.iter().chain(&bab).all(MultiPoly::is_zero));
    let input = fixtures::load("h3").unwrap();
    let dga = Dga::ce_complex(&input.algebra).unwrap();
    let dec = split_complex(&dga, Strategy::Metric, input.grading.as_ref()).unwrap();
    let series = kuranishi_series(&dec, &presets::heisenberg(1), 4).unwrap();
    let sys = obstruction_system(&series, &dec).unwrap();
    assert!(sys.polynomials.iter().all(MultiPoly::is_zero));
    assert_eq!(sys.polynomials.len(), 6);
}

#[test]
fn abelian_target_gives_a_smooth_germ() {
    for name in ["h3", "h5", "filiform4"] {
        let input = fixtures::load(name).unwrap();
        let dga = Dga::ce_complex(&input.algebra).unwrap();
        let dec = split_complex(&dga, Strategy::Pivot, input.grading.as_ref()).unwrap();
        let series = kuranishi_series(&dec, &presets::abelian(2), 6).unwrap();
        assert_eq!(series.length(), 1, "{}", name);
        assert!(obstruction_system(&series, &dec).unwrap().polynomials.iter().all(MultiPoly::is_zero), "{}", name);
    }
}

#[test]
fn gaussian_coefficients_round_trip() {
    let i = Scalar::i();
    let h = presets::heisenberg(1);
    let basis = vec![
        vec![Scalar::from(1), Scalar::from(0), Scalar::from(0)],
        vec![Scalar::from(0), i.clone(), Scalar::from(0)],
        vec![Scalar::from(0), Scalar::from(0), Scalar::from(1)],
    ];
    let alg = h.change_basis(&basis, vec!["a".into(), "b".into(), "c".into()]).unwrap();
    let json = AlgebraFile::from_algebra(&alg).to_json();
    // [a, b] = i c
    assert!(json.contains("Q(i)") && json.contains("0/1+1/1*i"), "{}", json);
    let back = AlgebraFile::from_json(&json, "memory").unwrap().resolve().unwrap().algebra;
    assert_eq!(back, alg);
}
