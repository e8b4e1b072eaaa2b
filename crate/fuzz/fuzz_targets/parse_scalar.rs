#![no_main]

use libfuzzer_sys::fuzz_target;
use majority_paint::{Rational, Scalar};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = f64::parse_literal(text);
    if let Ok(x) = Rational::parse_literal(text) {
        assert_eq!(Rational::parse_literal(&x.to_string()), Ok(x));
    }
});
