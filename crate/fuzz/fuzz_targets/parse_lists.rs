#![no_main]

use libfuzzer_sys::fuzz_target;
use majority_paint::io::{parse_lists, write_lists};
use majority_paint::lister::ListAssignment;
use majority_paint::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(lists) = parse_lists::<Rational>(text) else {
        return;
    };
    let again: ListAssignment<Rational> = parse_lists(&write_lists(&lists)).expect("written lists parse");
    assert_eq!(lists, again);
});
