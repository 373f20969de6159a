#![no_main]

//! Differential target: the recognizer against the exhaustive oracle on
//! any parseable {0, ±1} matrix of size at most 10.

use libfuzzer_sys::fuzz_target;
use skewrank::format::parse_matrix;
use skewrank::{check_all_principal_even, recognize_sign, Certificate, SearchMode, SignVerdict};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = parse_matrix(text) else {
        return;
    };
    if m.rows() > 10 || !m.entries().iter().all(|x| x.is_signed_unit_or_zero()) {
        return;
    }
    let verdict = recognize_sign(&m).expect("sign matrices are always decided");
    let oracle = check_all_principal_even(&m, SearchMode::Exhaustive).unwrap();
    assert_eq!(verdict.is_accept(), oracle.is_all_even(), "{m}");
    if let SignVerdict::Accept(cert) = verdict {
        assert!(cert.verify(&m).unwrap());
    }
});
