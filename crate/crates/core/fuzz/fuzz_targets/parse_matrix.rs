#![no_main]

use libfuzzer_sys::fuzz_target;
use skewrank::format::{parse_matrix, write_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matrix(text) {
        let again = parse_matrix(&write_matrix(&m)).expect("written matrix parses");
        assert_eq!(again, m);
    }
});
