#![no_main]

use libfuzzer_sys::fuzz_target;
use skewrank::FieldSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(field) = text.parse::<FieldSpec>() {
        assert_eq!(field.to_string().parse::<FieldSpec>().unwrap(), field);
    }
});
