#![no_main]

use libfuzzer_sys::fuzz_target;
use majority_paint::io::{parse_coloring, parse_ranks, parse_vector};
use majority_paint::Rational;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let _ = parse_ranks::<Rational>(text);
    let _ = parse_ranks::<f64>(text);
    let _ = parse_coloring(text);
    let _ = parse_vector::<Rational>(text, n as usize);
});
