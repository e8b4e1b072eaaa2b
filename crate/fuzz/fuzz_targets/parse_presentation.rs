#![no_main]

use libfuzzer_sys::fuzz_target;
use majority_paint::io::{format_presentation, parse_presentation};
use majority_paint::lister::ListerMove;
use majority_paint::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(mv) = parse_presentation::<Rational>(line) else {
        return;
    };
    let again: ListerMove<Rational> = parse_presentation(&format_presentation(&mv)).expect("formatted move parses");
    assert_eq!(mv, again);
});
