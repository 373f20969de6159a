mod common;

use common::*;
use proptest::prelude::*;
use skewrank::format::{parse_certificate, parse_matrix, write_matrix, write_scaling_certificate};
use skewrank::{
    check_all_principal_even, m_ordering, precheck, recognize_general_scaling, recognize_sign,
    verify_witness, Certificate, FieldSpec, IndexSet, Matrix, Permutation, Precheck,
    ScalingCertificate, SearchMode, SignCertificate, SignVerdict,
};

fn any_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Prime(7)),
        Just(FieldSpec::Prime(2_147_483_647)),
        Just(FieldSpec::Rationals),
    ]
}

fn sign_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Prime(2)),
        Just(FieldSpec::Prime(3)),
        Just(FieldSpec::Prime(5)),
        Just(FieldSpec::Rationals),
    ]
}

fn scalar_in(field: FieldSpec) -> impl Strategy<Value = skewrank::Scalar> {
    (-1000i64..=1000, 1i64..=12).prop_map(move |(num, den)| match field {
        FieldSpec::Rationals => field.from_integer(num) / field.from_integer(den),
        FieldSpec::Prime(_) => field.from_integer(num),
    })
}

fn nonzero_in(field: FieldSpec) -> impl Strategy<Value = skewrank::Scalar> {
    scalar_in(field).prop_filter("nonzero", |s| !s.is_zero())
}

fn matrix_in(field: FieldSpec, max_n: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(scalar_in(field), n * n)
            .prop_map(move |entries| Matrix::from_scalars(field, n, n, entries).unwrap())
    })
}

fn any_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
    any_field().prop_flat_map(move |f| matrix_in(f, max_n))
}

/// {0, ±1} matrices biased towards the interesting near-skew region.
fn sign_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
    (sign_field(), 1..=max_n, any::<u64>(), 0usize..3).prop_map(|(f, n, seed, kind)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        mixed_sign_matrix(&mut rng, f, n, kind)
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn signs(n: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), n)
}

fn flipping(d: &[bool], e: &[bool]) -> SignCertificate {
    let pick = |v: &[bool]| (1..=v.len()).filter(|&i| v[i - 1]).collect::<Vec<_>>();
    SignCertificate::flipping(d.len(), &pick(d), &pick(e)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(
        (f, a, b, c) in any_field().prop_flat_map(|f| (Just(f), scalar_in(f), scalar_in(f), scalar_in(f)))
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &f.zero(), a.clone());
        prop_assert_eq!(&a * &f.one(), a.clone());
        prop_assert!((&a + &-&a).is_zero());
        prop_assert_eq!(&a - &b, &a + &-&b);
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&b.try_div(&a).unwrap() * &a, b.clone());
        }
    }

    #[test]
    fn integers_map_homomorphically(f in any_field(), x in -1_000_000i64..1_000_000, y in -1_000_000i64..1_000_000) {
        prop_assert_eq!(f.from_integer(x + y), &f.from_integer(x) + &f.from_integer(y));
        prop_assert_eq!(f.from_integer(x * y), &f.from_integer(x) * &f.from_integer(y));
        prop_assert_eq!(f.from_integer(-x), -&f.from_integer(x));
    }

    #[test]
    fn rank_matches_gaussian_elimination(m in any_matrix(7)) {
        prop_assert_eq!(m.rank(), rank_gauss(&m));
    }

    #[test]
    fn rank_matches_minors_on_small_matrices(m in any_matrix(4)) {
        prop_assert_eq!(m.rank(), rank_by_minors(&m));
    }

    #[test]
    fn rank_is_invariant(
        (m, p, d, e) in any_matrix(6).prop_flat_map(|m| {
            let n = m.rows();
            let f = m.field();
            (
                Just(m),
                permutation(n),
                prop::collection::vec(nonzero_in(f), n),
                prop::collection::vec(nonzero_in(f), n),
            )
        })
    ) {
        let r = m.rank();
        prop_assert!(r <= m.rows());
        prop_assert_eq!(m.transpose().rank(), r);
        prop_assert_eq!(m.scale(&d, &e).unwrap().rank(), r);
        prop_assert_eq!(m.permute_simultaneous(&p).unwrap().rank(), r);
    }

    #[test]
    fn simultaneous_permutation_moves_entries(
        (m, p) in any_matrix(6).prop_flat_map(|m| { let n = m.rows(); (Just(m), permutation(n)) })
    ) {
        let q = m.permute_simultaneous(&p).unwrap();
        for i in 1..=m.rows() {
            for j in 1..=m.rows() {
                prop_assert_eq!(q.entry(i, j), m.entry(p.image(i), p.image(j)));
            }
        }
        prop_assert_eq!(q.permute_simultaneous(&p.inverse()).unwrap(), m);
    }

    #[test]
    fn rank_additivity_on_invertible_blocks(
        (m, mask) in any_matrix(6).prop_flat_map(|m| { let n = m.rows(); (Just(m), 0u64..(1u64 << n)) })
    ) {
        let n = m.rows();
        let blk = IndexSet::from_mask(mask);
        prop_assume!(!blk.is_empty() && blk.len() < n);
        prop_assume!(principal_rank_gauss(&m, &blk) == blk.len());
        let s = m.schur_complement(&blk).unwrap();
        prop_assert_eq!(s.rows(), n - blk.len());
        prop_assert_eq!(rank_gauss(&m), blk.len() + rank_gauss(&s));
        prop_assert!(m.guttman_check(&blk).unwrap().holds);
    }

    #[test]
    fn skew_matrices_have_even_rank(
        (f, upper) in any_field().prop_flat_map(|f| (Just(f), prop::collection::vec(scalar_in(f), 36)))
    ) {
        let n = 9;
        let mut m = Matrix::zeros(f, n, n);
        let mut it = upper.into_iter();
        for i in 1..=n {
            for j in i + 1..=n {
                let x = it.next().unwrap();
                m.set(j, i, -&x).unwrap();
                m.set(i, j, x).unwrap();
            }
        }
        prop_assert!(m.is_skew_symmetric());
        prop_assert_eq!(m.rank() % 2, 0);
    }

    #[test]
    fn recognizer_agrees_with_oracle(m in sign_matrix(7)) {
        let verdict = recognize_sign(&m).unwrap();
        let oracle = check_all_principal_even(&m, SearchMode::Exhaustive).unwrap();
        prop_assert_eq!(verdict.is_accept(), oracle.is_all_even());
        match verdict {
            SignVerdict::Accept(cert) => prop_assert!(is_skew_independent(&apply_signs(&m, &cert))),
            SignVerdict::Reject(w) => {
                prop_assert!(verify_witness(&m, &w).unwrap());
                prop_assert_eq!(principal_rank_gauss(&m, &w.indices) % 2, 1);
            }
        }
    }

    #[test]
    fn recognizer_is_deterministic(m in sign_matrix(8)) {
        prop_assert_eq!(recognize_sign(&m).unwrap(), recognize_sign(&m).unwrap());
    }

    #[test]
    fn verdict_invariant_under_signs_and_reordering(
        (m, p, d, e) in sign_matrix(7).prop_flat_map(|m| {
            let n = m.rows();
            (Just(m), permutation(n), signs(n), signs(n))
        })
    ) {
        let accept = recognize_sign(&m).unwrap().is_accept();
        let flipped = flipping(&d, &e).apply(&m).unwrap();
        prop_assert_eq!(recognize_sign(&flipped).unwrap().is_accept(), accept);
        let moved = m.permute_simultaneous(&p).unwrap();
        prop_assert_eq!(recognize_sign(&moved).unwrap().is_accept(), accept);
    }

    #[test]
    fn acceptance_is_closed_under_principal_submatrices(
        (m, mask) in sign_matrix(7).prop_flat_map(|m| { let n = m.rows(); (Just(m), 1u64..(1u64 << n)) })
    ) {
        prop_assume!(recognize_sign(&m).unwrap().is_accept());
        let sub = m.principal_submatrix(&IndexSet::from_mask(mask)).unwrap();
        prop_assert!(recognize_sign(&sub).unwrap().is_accept());
    }

    #[test]
    fn general_scaling_agrees_on_sign_matrices(m in sign_matrix(7)) {
        let general = recognize_general_scaling(&m).unwrap();
        prop_assert_eq!(general.is_accept(), recognize_sign(&m).unwrap().is_accept());
        if let skewrank::ScalingVerdict::Accept(cert) = general {
            prop_assert!(is_skew_independent(&cert.apply(&m).unwrap()));
        }
    }

    #[test]
    fn general_scaling_certificates_verify(
        (m, d, e) in matrix_in(FieldSpec::Rationals, 6).prop_flat_map(|m| {
            let n = m.rows();
            let q = FieldSpec::Rationals;
            (Just(m), prop::collection::vec(nonzero_in(q), n), prop::collection::vec(nonzero_in(q), n))
        })
    ) {
        // Antisymmetrize, then hide the skew structure behind random scalings.
        let n = m.rows();
        let mut skew = Matrix::zeros(FieldSpec::Rationals, n, n);
        for i in 1..=n {
            for j in i + 1..=n {
                skew.set(i, j, m.entry(i, j).clone()).unwrap();
                skew.set(j, i, -m.entry(i, j)).unwrap();
            }
        }
        let hidden = skew.scale(&d, &e).unwrap();
        match recognize_general_scaling(&hidden).unwrap() {
            skewrank::ScalingVerdict::Accept(cert) => {
                prop_assert!(is_skew_independent(&cert.apply(&hidden).unwrap()));
            }
            skewrank::ScalingVerdict::Reject(r) => prop_assert!(false, "rejected: {:?}", r),
        }
    }

    #[test]
    fn sampled_search_is_sound(m in sign_matrix(9), seed in any::<u64>()) {
        let sampled = check_all_principal_even(&m, SearchMode::Sampled { trials: 64, seed }).unwrap();
        if let Some(w) = sampled.witness() {
            prop_assert!(verify_witness(&m, w).unwrap());
            prop_assert!(!check_all_principal_even(&m, SearchMode::Exhaustive).unwrap().is_all_even());
        }
        let again = check_all_principal_even(&m, SearchMode::Sampled { trials: 64, seed }).unwrap();
        prop_assert_eq!(sampled, again);
    }

    #[test]
    fn m_ordering_is_valid(m in sign_matrix(9)) {
        if let Precheck::Support(g) = precheck(&m).unwrap() {
            let ord = m_ordering(&g);
            let reordered = m.permute_simultaneous(ord.permutation()).unwrap();
            prop_assert_eq!(ord.validate(&reordered), Ok(()));
        }
    }

    #[test]
    fn matrix_files_round_trip(m in any_matrix(6)) {
        let text = write_matrix(&m);
        prop_assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn certificate_files_round_trip(
        (f, rows, cols) in any_field().prop_flat_map(|f| {
            (1usize..8).prop_flat_map(move |n| {
                (Just(f), prop::collection::vec(nonzero_in(f), n), prop::collection::vec(nonzero_in(f), n))
            })
        })
    ) {
        let cert = ScalingCertificate { row_scalars: rows, col_scalars: cols };
        let text = write_scaling_certificate(&cert);
        prop_assert_eq!(parse_certificate(&text, f).unwrap(), cert);
    }

    #[test]
    fn parser_never_panics(text in "(field (q|gf [0-9]{1,3})\n)?(size [0-9]\n)?([-+0-9/ #a-z]{0,12}\n){0,5}") {
        let _ = parse_matrix(&text);
        let _ = parse_certificate(&text, FieldSpec::Rationals);
    }
}
