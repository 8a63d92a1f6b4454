use anosov_core::exact::FieldExt;
use anosov_core::jacobi_perron::{factor_nonneg, jp_expand, product, ElementaryMatrix};
use anosov_core::matrix::{conjugate, perron_data, perron_data_of_power, residual, IntMatrix};
use anosov_core::quad::{conductor_of, gauss_conjugacy_test, ConjugacyVerdict};
use anosov_core::trace_form::{form_report, module_of};
use num_bigint::BigInt;
use proptest::prelude::*;

fn elementary_product(digits: &[Vec<i64>]) -> IntMatrix {
    let n = digits[0].len() + 1;
    let big: Vec<Vec<BigInt>> = digits
        .iter()
        .map(|b| b.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    product(&big, n)
}

/// Product of transvections `I ± E_ij`.
fn unimodular(n: usize, moves: &[(usize, usize, bool)]) -> IntMatrix {
    let mut t = IntMatrix::identity(n);
    for &(i, j, plus) in moves {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(if plus { 1 } else { -1 }));
        t = t.mul(&e);
    }
    t
}

fn digits2() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..4, 1), 2..7)
}

fn digits3() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..3, 2), 3..7)
}

fn moves() -> impl Strategy<Value = Vec<(usize, usize, bool)>> {
    prop::collection::vec((0usize..3, 0usize..3, any::<bool>()), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_round_trips(d in digits3(), mv in moves()) {
        let a = elementary_product(&d);
        let t = unimodular(3, &mv);
        let b = conjugate(&a, &t).unwrap();
        prop_assert_eq!(conjugate(&b, &t.inverse_unimodular().unwrap()).unwrap(), a);
    }

    #[test]
    fn perron_data_is_exact(d in digits3()) {
        let a = elementary_product(&d);
        if let Ok(pd) = perron_data(&a) {
            prop_assert!(residual(&pd).iter().all(|r| r.is_zero()));
            prop_assert!(pd.eigenvector.iter().all(|v| v.sign_at(&pd.embedding).is_gt()));
        }
    }

    #[test]
    fn powers_share_field_and_eigenvector(d in digits2(), k in 2u32..4) {
        let a = elementary_product(&d);
        if let Ok(pd) = perron_data(&a) {
            let pk = perron_data_of_power(&a, k).unwrap();
            prop_assert_eq!(pk.field.minpoly(), pd.field.minpoly());
            prop_assert_eq!(&pk.eigenvector, &pd.eigenvector);
            prop_assert_eq!(&pk.eigenvalue, &pd.eigenvalue.pow(k));
        }
    }

    #[test]
    fn cubic_powers_keep_the_module(d in digits3(), k in 2u32..4) {
        let a = elementary_product(&d);
        if let Ok(pd) = perron_data(&a) {
            let pk = perron_data_of_power(&a, k).unwrap();
            prop_assert_eq!(&pk.matrix, &a.pow(k));
            prop_assert!(residual(&pk).iter().all(|r| r.is_zero()));
            let (r, rk) = (form_report(&module_of(&pd)).unwrap(), form_report(&module_of(&pk)).unwrap());
            prop_assert_eq!(r, rk);
        }
    }

    #[test]
    fn form_invariants_survive_conjugation(d in digits2(), mv in moves()) {
        let a = elementary_product(&d);
        let Ok(pa) = perron_data(&a) else { return Ok(()) };
        let b = conjugate(&a, &unimodular(2, &mv)).unwrap();
        let Ok(pb) = perron_data(&b) else { return Ok(()) };
        let (ma, mb) = (module_of(&pa), module_of(&pb));
        let (ra, rb) = (form_report(&ma).unwrap(), form_report(&mb).unwrap());
        prop_assert_eq!(ra.ring_discriminant, rb.ring_discriminant);
        prop_assert_eq!(ra.signature, rb.signature);
        prop_assert_eq!(conductor_of(&ma).unwrap(), conductor_of(&mb).unwrap());
    }

    #[test]
    fn form_report_ignores_basis_and_scale(d in digits3(), mv in moves()) {
        let a = elementary_product(&d);
        let Ok(pd) = perron_data(&a) else { return Ok(()) };
        let m = module_of(&pd);
        let r = form_report(&m).unwrap();
        let u = unimodular(3, &mv).rows();
        let changed = form_report(&m.with_basis_change(&u).unwrap()).unwrap();
        prop_assert_eq!(&changed.determinant, &r.determinant);
        prop_assert_eq!(changed.signature, r.signature);
        let mu = pd.field.from_i64s(&[1, 1]);
        let scaled = form_report(&m.scaled(&mu).unwrap()).unwrap();
        prop_assert_eq!(&scaled.ring_discriminant, &r.ring_discriminant);
        prop_assert_eq!(scaled.determinant, r.determinant * mu.norm() * mu.norm());
    }

    #[test]
    fn gauss_test_sees_sl2_conjugates(d in digits2(), mv in moves()) {
        let a = elementary_product(&d);
        let t = unimodular(2, &mv);
        if a.det() == BigInt::from(1) && a.trace() > BigInt::from(2) {
            let b = conjugate(&a, &t).unwrap();
            prop_assert_eq!(gauss_conjugacy_test(&a, &b).unwrap(), ConjugacyVerdict::Conjugate);
        }
    }

    #[test]
    fn factorization_round_trips(d in prop::collection::vec(prop::collection::vec(0i64..4, 1), 1..7)) {
        let a = elementary_product(&d);
        let f = factor_nonneg(&a, 12).unwrap();
        let big: Vec<Vec<BigInt>> = f.digits.clone();
        prop_assert_eq!(product(&big, 2), a);
    }

    #[test]
    fn quadratic_jp_expansions_are_periodic(d in digits2()) {
        let a = elementary_product(&d);
        if let Ok(pd) = perron_data(&a) {
            let e = jp_expand(&pd, 200).unwrap();
            prop_assert!(e.is_periodic());
        }
    }
}

#[test]
fn elementary_products_are_unimodular() {
    let b = ElementaryMatrix::from_i64(&[1, 2]).to_matrix();
    assert!(b.is_unimodular());
    assert_eq!(
        b.inverse_unimodular().unwrap().mul(&b),
        IntMatrix::identity(3)
    );
}
