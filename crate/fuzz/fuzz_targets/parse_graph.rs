#![no_main]

use libfuzzer_sys::fuzz_target;
use majority_paint::io::{parse_graph, write_graph};
use majority_paint::{Rational, WeightedDigraph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_graph::<f64>(text);
    let Ok(g) = parse_graph::<Rational>(text) else {
        return;
    };
    let again: WeightedDigraph<Rational> = parse_graph(&write_graph(&g)).expect("written graph parses");
    assert_eq!(g, again);
    let _ = g.condensation();
});
