#![no_main]

use libfuzzer_sys::fuzz_target;
use majority_paint::engine::{parse_trace, GameTrace};
use majority_paint::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_trace::<f64>(text);
    let Ok(trace) = parse_trace::<Rational>(text) else {
        return;
    };
    let again: GameTrace<Rational> = parse_trace(&trace.to_jsonl()).expect("written trace parses");
    assert_eq!(trace, again);
});
