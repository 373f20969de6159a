#![no_main]

use libfuzzer_sys::fuzz_target;
use skewrank::format::{parse_certificate, write_scaling_certificate};
use skewrank::FieldSpec;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let field = match selector % 4 {
        0 => FieldSpec::Rationals,
        1 => FieldSpec::Prime(2),
        2 => FieldSpec::Prime(5),
        _ => FieldSpec::Prime(2_147_483_647),
    };
    if let Ok(cert) = parse_certificate(text, field) {
        assert_eq!(cert.row_scalars.len(), cert.col_scalars.len());
        let again = parse_certificate(&write_scaling_certificate(&cert), field).unwrap();
        assert_eq!(again, cert);
    }
});
