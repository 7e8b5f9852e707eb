mod common;

use num_traits::Zero;
use proptest::prelude::*;
use tracesim::intertwiner::{
    gl_similar, intertwiner_basis, intertwining_residual, GlVerdict, SearchConfig,
};
use tracesim::io::TupleFile;
use tracesim::linalg;
use tracesim::orthogonal::{
    orthogonal_witness, specht_equivalent, sqrt_spd, OrthogonalVerdict,
};
use tracesim::scalar::rational;
use tracesim::sylvester::{resultant, sylvester_solve, sylvester_unique, Polynomial};
use tracesim::units::{check_epsilon, scalar_lift, theta_embedding, UnitSystem};
use tracesim::words::{enumerate_canonical, fingerprint_with, Word, DEFAULT_ENUMERATION_BUDGET};
use tracesim::{Complex, Execution, Matrix, MatrixTuple, Rational, StarMode};

use common::*;

fn small_int() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), rows * cols).prop_map(move |v| {
        Matrix::from_vec(rows, cols, v.into_iter().map(|(p, q)| rational(p, q)).collect()).unwrap()
    })
}

fn square_rational(max_n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max_n).prop_flat_map(|n| rational_matrix(n, n))
}

fn float_matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * n)
        .prop_map(move |v| Matrix::from_vec(n, n, v).unwrap())
}

fn raw_word(d: usize, max_degree: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=d, any::<bool>()), 1..=max_degree).prop_map(|v| {
        Word::new(v.into_iter().map(|(i, s)| tracesim::words::Letter::new(i, s)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_an_involutive_anti_homomorphism(a in rational_matrix(3, 3), b in rational_matrix(3, 3)) {
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn conjugate_star_is_involutive(re in float_matrix(3), im in float_matrix(3)) {
        let m = Matrix::from_fn(3, 3, |i, j| Complex::new(re[(i, j)], im[(i, j)]));
        let s = StarMode::ConjugateTranspose;
        prop_assert_eq!(m.star(s).star(s), m);
    }

    #[test]
    fn trace_is_cyclic(a in rational_matrix(3, 3), b in rational_matrix(3, 3)) {
        prop_assert_eq!((&a * &b).trace().unwrap(), (&b * &a).trace().unwrap());
    }

    #[test]
    fn float_trace_is_cyclic(a in float_matrix(4), b in float_matrix(4)) {
        let (ab, ba) = ((&a * &b).trace().unwrap(), (&b * &a).trace().unwrap());
        prop_assert!((ab - ba).abs() <= 1e-12 * ab.abs().max(1.0));
    }

    #[test]
    fn trace_of_gram_is_sum_of_squares(m in rational_matrix(3, 4)) {
        let sum = m.as_slice().iter().fold(Rational::zero(), |acc, x| acc + x * x);
        prop_assert_eq!((&m.transpose() * &m).trace().unwrap(), sum);
    }

    #[test]
    fn inverse_is_exact(m in square_rational(4)) {
        if !linalg::det(&m).unwrap().is_zero() {
            let inv = linalg::inverse(&m, 0.0).unwrap();
            prop_assert_eq!(&m * &inv, Matrix::identity(m.rows()));
        } else {
            prop_assert_eq!(linalg::inverse(&m, 0.0), Err(tracesim::Error::Singular));
        }
    }

    #[test]
    fn nullspace_is_a_kernel_basis(m in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| rational_matrix(r, c))) {
        let basis = linalg::nullspace(&m, 0.0);
        prop_assert_eq!(basis.len(), m.cols() - linalg::rank(&m, 0.0));
        for v in &basis {
            prop_assert!((&m * v).is_zero());
        }
    }

    #[test]
    fn det_is_multiplicative(a in rational_matrix(3, 3), b in rational_matrix(3, 3)) {
        let lhs = linalg::det(&(&a * &b)).unwrap();
        prop_assert_eq!(lhs, linalg::det(&a).unwrap() * linalg::det(&b).unwrap());
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(w in raw_word(3, 7), k in 0usize..7) {
        let c = w.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(w.rotate(k % w.degree()).canonicalize(), c.clone());
        prop_assert_eq!(w.star_reverse().canonicalize(), c.clone());
        prop_assert!(c <= w);
        if w.is_pure() {
            prop_assert!(c.is_pure());
        }
    }

    #[test]
    fn word_parse_display_round_trip(w in raw_word(4, 6)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn tuple_files_round_trip(m in rational_matrix(3, 3), f in float_matrix(2), g in float_matrix(2)) {
        let t = MatrixTuple::single(m).unwrap();
        let file = TupleFile::from_tuple(&t);
        let parsed = TupleFile::parse(&file.to_json_string()).unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(parsed.to_tuple::<Rational>().unwrap(), t);

        let t = MatrixTuple::new(vec![f.clone()], StarMode::Transpose).unwrap();
        let parsed = TupleFile::parse(&TupleFile::from_tuple(&t).to_json_string()).unwrap();
        prop_assert_eq!(parsed.to_tuple::<f64>().unwrap(), t);

        let c = Matrix::from_fn(2, 2, |i, j| Complex::new(f[(i, j)], g[(i, j)]));
        let t = MatrixTuple::new(vec![c], StarMode::ConjugateTranspose).unwrap();
        let parsed = TupleFile::parse(&TupleFile::from_tuple(&t).to_json_string()).unwrap();
        prop_assert_eq!(parsed.to_tuple::<Complex>().unwrap(), t);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        lhs in prop::collection::vec(small_int(), 2..=4),
        rhs in prop::collection::vec(small_int(), 2..=4),
        shared in any::<bool>(),
        root in -3i64..=3,
    ) {
        let mut p: Poly = lhs.into_iter().map(q).collect();
        let mut qq: Poly = rhs.into_iter().map(q).collect();
        if shared {
            // Multiply both by (t - root).
            let lin = vec![q(-root), q(1)];
            p = mul(&p, &lin);
            qq = mul(&qq, &lin);
        }
        let (pp, qp) = (Polynomial::new(p.clone()), Polynomial::new(qq.clone()));
        prop_assume!(!pp.is_zero() && !qp.is_zero());
        let res = resultant(&pp, &qp).unwrap();
        let g = poly_gcd(&poly_trim(p), &poly_trim(qq));
        prop_assert_eq!(res.is_zero(), g.len() > 1);
    }

    #[test]
    fn unique_sylvester_solutions(a in square_rational(3), b in square_rational(3), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let c: Matrix<Rational> = int_matrix(&mut rng, a.rows(), b.rows(), 5);
        if sylvester_unique(&a, &b, None).unwrap() {
            let x = sylvester_solve(&a, &b, &c).unwrap().unwrap();
            prop_assert_eq!(&(&a * &x) - &(&x * &b), c.clone());
            let again = sylvester_solve(&a, &b, &c).unwrap().unwrap();
            prop_assert!((&x - &again).is_zero());
        }
    }

    #[test]
    fn sqrt_spd_reconstructs(m in float_matrix(4)) {
        let s = &(&m * &m.transpose()) + &Matrix::identity(4);
        let h = sqrt_spd(&s, 1e-12).unwrap();
        let err = (&(&h * &h) - &s).frobenius_norm();
        prop_assert!(err <= 1e-10 * s.frobenius_norm());
        prop_assert!(h.max_abs_diff(&h.transpose()) <= 1e-12);
    }

    #[test]
    fn sandwich_identity(n in 1usize..=3) {
        let sys = UnitSystem::<Rational>::standard(n);
        for i in 0..n { for j in 0..n { for s in 0..n { for t in 0..n {
            let prod = &(sys.get(s, s) * sys.get(i, j)) * sys.get(t, t);
            if (s, t) == (i, j) {
                prop_assert_eq!(&prod, sys.get(i, j));
            } else {
                prop_assert!(prod.is_zero());
            }
        }}}}
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn intertwiner_basis_satisfies_equations(seed in any::<u64>(), n in 1usize..=4, d in 1usize..=2, with_star in any::<bool>()) {
        let mut rng = rng(seed);
        let x: MatrixTuple<Rational> = int_tuple(&mut rng, n, d, 3);
        let (p, p_inv) = invertible_int(&mut rng, n, 2);
        let y = x.sandwich(&p, &p_inv);
        let basis = intertwiner_basis(&x, &y, with_star).unwrap();
        for b in basis.basis() {
            prop_assert_eq!(intertwining_residual(b, &x, &y, with_star), 0.0);
        }
        let own = intertwiner_basis(&x, &x, false).unwrap();
        prop_assert!(own.dim() >= 1);
        let stacked = Matrix::from_rows(basis.basis().iter().map(|b| b.as_slice().to_vec()).collect::<Vec<_>>());
        if let Ok(stacked) = stacked {
            prop_assert_eq!(linalg::rank(&stacked, 0.0), basis.dim());
        }
    }

    #[test]
    fn gl_verdict_is_symmetric(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = rng(seed);
        let x: MatrixTuple<Rational> = int_tuple(&mut rng, n, 1, 2);
        let y: MatrixTuple<Rational> = int_tuple(&mut rng, n, 1, 2);
        let config = SearchConfig::deterministic(seed);
        let forward = gl_similar(&x, &y, &config).unwrap().is_similar();
        let backward = gl_similar(&y, &x, &config).unwrap().is_similar();
        prop_assert_eq!(forward, backward);
        prop_assert!(gl_similar(&x, &x, &config).unwrap().is_similar());
    }

    #[test]
    fn float_gl_round_trip(seed in any::<u64>(), n in 1usize..=5, d in 1usize..=3) {
        let mut rng = rng(seed);
        let x = float_tuple(&mut rng, n, d);
        let o = givens_product(&mut rng, n, 3);
        let p = &o * &Matrix::diag(&(1..=n).map(|k| k as f64).collect::<Vec<_>>());
        let p_inv = linalg::inverse(&p, 1e-12).unwrap();
        let y = x.sandwich(&p, &p_inv);
        match gl_similar(&x, &y, &SearchConfig::monte_carlo(seed)).unwrap() {
            GlVerdict::Similar { witness } => {
                prop_assert!(intertwining_residual(&witness, &x, &y, false) <= 1e-7);
            }
            v => prop_assert!(false, "{}", v.label()),
        }
    }

    #[test]
    fn witnesses_imply_equal_fingerprints(seed in any::<u64>(), n in 1usize..=4, d in 1usize..=2) {
        let mut rng = rng(seed);
        let x = float_tuple(&mut rng, n, d);
        let o = givens_product(&mut rng, n, 2 * n);
        let y = x.sandwich(&o, &o.transpose());
        let verdict = orthogonal_witness(&x, &y, &SearchConfig::monte_carlo(seed)).unwrap();
        prop_assert!(matches!(verdict, OrthogonalVerdict::Equivalent(_)));
        for degree in 1..=4 {
            prop_assert!(specht_equivalent(&x, &y, Some(degree), None).unwrap().is_equal());
        }
    }

    #[test]
    fn unit_embedding_is_a_homomorphism(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = rng(seed);
        let (p, p_inv) = invertible_int(&mut rng, n, 2);
        let sys = UnitSystem::<Rational>::standard(n).conjugate(&p, &p_inv);
        prop_assert!(check_epsilon(&sys, None).is_none());
        let c1: Matrix<Rational> = int_matrix(&mut rng, n, n, 4);
        let c2: Matrix<Rational> = int_matrix(&mut rng, n, n, 4);
        let theta = |c: &Matrix<Rational>| theta_embedding(&sys, &scalar_lift(c, n), None).unwrap();
        prop_assert_eq!(&theta(&c1) * &theta(&c2), theta(&(&c1 * &c2)));
        prop_assert_eq!(&theta(&c1) + &theta(&c2), theta(&(&c1 + &c2)));
        if !c1.is_zero() {
            prop_assert!(!theta(&c1).is_zero());
        }
    }

    #[test]
    fn schedules_give_identical_fingerprints(seed in any::<u64>(), d in 1usize..=2) {
        let mut rng = rng(seed);
        let x: MatrixTuple<Rational> = int_tuple(&mut rng, 3, d, 3);
        let seq = fingerprint_with(&x, 4, true, DEFAULT_ENUMERATION_BUDGET, Execution::Sequential).unwrap();
        let par = fingerprint_with(&x, 4, true, DEFAULT_ENUMERATION_BUDGET, Execution::Parallel).unwrap();
        prop_assert_eq!(seq, par);
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

#[test]
fn enumeration_counts_for_one_letter() {
    // One letter without stars: a single orbit per degree.
    assert_eq!(enumerate_canonical(1, 8, false).unwrap().len(), 8);
}

#[test]
fn units_of_larger_size_are_independent() {
    for n in 1..=5 {
        let sys = UnitSystem::<Rational>::standard(n);
        let center = tracesim::units::commutant(sys.units(), n).unwrap();
        assert_eq!(center, vec![Matrix::identity(n)]);
    }
}
