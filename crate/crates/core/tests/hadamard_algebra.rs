mod common;

use common::{random_matrix, random_vector, rng};
use proptest::prelude::*;
use wrm_core::hadamard::{
    had_func, had_inverse, had_power, had_product, kron, selection_matrix, sjt_post, sjt_pre,
    symmetric_eigenvalues, ElementwiseFn, FunctionRegistry, RealMatrix, RealVector,
};
use wrm_core::Error;

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = RealMatrix> {
    prop::collection::vec(-1e3..1e3f64, rows * cols)
        .prop_map(move |v| RealMatrix::new(rows, cols, v).unwrap())
}

fn pair_strategy() -> impl Strategy<Value = (RealMatrix, RealMatrix)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| (matrix_strategy(r, c), matrix_strategy(r, c)))
}

#[test]
fn product_matches_scalar_loop() {
    let mut r = rng(11);
    let a = random_matrix(&mut r, 6, 6);
    let b = random_matrix(&mut r, 6, 6);
    let p = had_product(&a, &b).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(p[(i, j)], a[(i, j)] * b[(i, j)]);
        }
    }
}

#[test]
fn product_shape_mismatch_names_both_shapes() {
    let err = had_product(&RealMatrix::ones(2, 3), &RealMatrix::ones(3, 2)).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("2x3") && msg.contains("3x2"), "{msg}");
}

#[test]
fn inverse_and_func_examples() {
    let a = RealMatrix::from_rows(&[[2.0, 4.0]]).unwrap();
    assert_eq!(had_inverse(&a).unwrap().as_slice(), &[0.5, 0.25]);
    assert_eq!(had_product(&a, &had_inverse(&a).unwrap()).unwrap(), RealMatrix::ones(1, 2));
    let z = RealMatrix::from_rows(&[[1.0, 0.0]]).unwrap();
    assert!(matches!(had_inverse(&z), Err(Error::Domain { row: 0, col: 1, .. })));
    let e = had_func(&ElementwiseFn::exp(), &RealMatrix::zeros(3, 3)).unwrap();
    assert_eq!(e, RealMatrix::ones(3, 3));
    let half_pi = RealMatrix::from_rows(&[[0.0, std::f64::consts::FRAC_PI_2]]).unwrap();
    let s = had_func(&ElementwiseFn::sin(), &half_pi).unwrap();
    assert_eq!(s.as_slice(), &[0.0, 1.0]);
    assert!(matches!(
        FunctionRegistry::with_builtins().get("tanh"),
        Err(Error::UnknownFunction(_))
    ));
}

#[test]
fn func_matches_scalar_loop() {
    let mut r = rng(12);
    let a = random_matrix(&mut r, 4, 4);
    for f in [ElementwiseFn::sin(), ElementwiseFn::cos(), ElementwiseFn::exp()] {
        let m = had_func(&f, &a).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = match f.name() {
                    "sin" => a[(i, j)].sin(),
                    "cos" => a[(i, j)].cos(),
                    _ => a[(i, j)].exp(),
                };
                assert_eq!(m[(i, j)], want);
            }
        }
    }
}

#[test]
fn power_examples() {
    let a = RealMatrix::from_rows(&[[4.0, 9.0]]).unwrap();
    assert_eq!(had_power(&a, 0.5).unwrap().as_slice(), &[2.0, 3.0]);
    assert_eq!(had_power(&a, 1.0).unwrap(), a);
    let b = RealMatrix::from_rows(&[[2.0, 3.0]]).unwrap();
    assert_eq!(had_power(&b, 3.0).unwrap().as_slice(), &[8.0, 27.0]);
    let neg = RealMatrix::from_rows(&[[1.0, -1.0]]).unwrap();
    assert!(matches!(had_power(&neg, 0.5), Err(Error::Domain { col: 1, .. })));
}

#[test]
fn kron_mixed_product_rule() {
    let mut r = rng(13);
    let a = random_matrix(&mut r, 3, 3);
    let b = random_matrix(&mut r, 3, 3);
    let x = random_vector(&mut r, 3);
    let y = random_vector(&mut r, 3);
    let xy = RealVector::new(
        (0..9).map(|i| x[i / 3] * y[i % 3]).collect(),
    )
    .unwrap();
    let lhs = kron(&a, &b).matvec(&xy).unwrap();
    let ax = a.matvec(&x).unwrap();
    let by = b.matvec(&y).unwrap();
    for i in 0..9 {
        assert!((lhs[i] - ax[i / 3] * by[i % 3]).abs() < 1e-12);
    }
    let one = RealMatrix::from_rows(&[[1.0]]).unwrap();
    assert_eq!(kron(&one, &a), a);
    let k = kron(
        &RealMatrix::from_rows(&[[1.0, 2.0]]).unwrap(),
        &RealMatrix::from_rows(&[[3.0], [4.0]]).unwrap(),
    );
    assert_eq!(k, RealMatrix::from_rows(&[[3.0, 6.0], [4.0, 8.0]]).unwrap());
}

#[test]
fn selection_matrix_examples() {
    let e2 = selection_matrix(2).unwrap();
    assert_eq!(
        e2,
        RealMatrix::from_rows(&[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 1.0]]).unwrap()
    );
    for n in 1..=6 {
        let e = selection_matrix(n).unwrap();
        assert_eq!(e.transpose().matmul(&e).unwrap(), RealMatrix::identity(n));
    }
    let mut r = rng(14);
    let a = random_matrix(&mut r, 4, 3);
    let b = random_matrix(&mut r, 4, 3);
    let bridged = selection_matrix(4)
        .unwrap()
        .transpose()
        .matmul(&kron(&a, &b))
        .unwrap()
        .matmul(&selection_matrix(3).unwrap())
        .unwrap();
    assert!(common::mat_rel_err(&bridged, &had_product(&a, &b).unwrap()) < 1e-12);
}

#[test]
fn sjt_examples_and_dense_equivalents() {
    let a = RealMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
    let u = common::vector(&[10.0, 100.0]);
    assert_eq!(sjt_post(&a, &u).unwrap(), RealMatrix::from_rows(&[[10.0, 20.0], [300.0, 400.0]]).unwrap());
    assert_eq!(sjt_pre(&u, &a).unwrap(), RealMatrix::from_rows(&[[10.0, 200.0], [30.0, 400.0]]).unwrap());
    assert_eq!(sjt_pre(&RealVector::ones(2), &a).unwrap(), a);
    let col = RealMatrix::from_rows(&[[2.0], [5.0]]).unwrap();
    assert_eq!(sjt_post(&col, &u).unwrap(), had_product(&col, &u.to_column()).unwrap());

    let mut r = rng(15);
    let m = random_matrix(&mut r, 5, 5);
    let v = random_vector(&mut r, 5);
    let post = RealMatrix::diagonal(&v).matmul(&m).unwrap();
    let pre = m.matmul(&RealMatrix::diagonal(&v)).unwrap();
    assert!(common::mat_rel_err(&sjt_post(&m, &v).unwrap(), &post) < 1e-15);
    assert!(common::mat_rel_err(&sjt_pre(&v, &m).unwrap(), &pre) < 1e-15);
    assert!(sjt_post(&m, &RealVector::ones(4)).is_err());
}

#[test]
fn eigenvalues_of_known_spectra() {
    let a = RealMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
    let ev = symmetric_eigenvalues(&a).unwrap();
    assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    let n = 7;
    let t = RealMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => 2.0,
        1 => -1.0,
        _ => 0.0,
    })
    .unwrap();
    let ev = symmetric_eigenvalues(&t).unwrap();
    for (k, l) in ev.iter().enumerate() {
        let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
        assert!((l - want).abs() < 1e-12, "{l} vs {want}");
    }
}

proptest! {
    #[test]
    fn commutative_bitwise((a, b) in pair_strategy()) {
        prop_assert_eq!(had_product(&a, &b).unwrap(), had_product(&b, &a).unwrap());
    }

    #[test]
    fn scalar_association((a, b) in pair_strategy(), k in -10.0..10.0f64) {
        let lhs = had_product(&a, &b).unwrap().scale(k);
        let rhs = had_product(&a.scale(k), &b).unwrap();
        prop_assert!(common::mat_rel_err(&lhs, &rhs) <= 1e-14);
    }

    #[test]
    fn distributive((a, b) in pair_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = random_matrix(&mut r, a.rows(), a.cols());
        let lhs = had_product(&a.add(&b).unwrap(), &q).unwrap();
        let rhs = had_product(&a, &q).unwrap().add(&had_product(&b, &q).unwrap()).unwrap();
        let scale = a.max_abs().max(b.max_abs()) * q.max_abs();
        let diff = lhs.sub(&rhs).unwrap().max_abs();
        prop_assert!(diff <= 1e-14 * scale.max(f64::MIN_POSITIVE) * 4.0);
    }

    #[test]
    fn kronecker_bridge((a, b) in pair_strategy()) {
        let e_n = selection_matrix(a.rows()).unwrap();
        let e_m = selection_matrix(a.cols()).unwrap();
        let lhs = e_n.transpose().matmul(&kron(&a, &b)).unwrap().matmul(&e_m).unwrap();
        prop_assert!(common::mat_rel_err(&lhs, &had_product(&a, &b).unwrap()) <= 1e-12);
    }

    #[test]
    fn sjt_matches_double_loop(a in matrix_strategy(4, 3), u in prop::collection::vec(-5.0..5.0f64, 4), v in prop::collection::vec(-5.0..5.0f64, 3)) {
        let post = sjt_post(&a, &RealVector::new(u.clone()).unwrap()).unwrap();
        let pre = sjt_pre(&RealVector::new(v.clone()).unwrap(), &a).unwrap();
        for i in 0..4 {
            for j in 0..3 {
                prop_assert_eq!(post[(i, j)], a[(i, j)] * u[i]);
                prop_assert_eq!(pre[(i, j)], a[(i, j)] * v[j]);
            }
        }
    }
}
