#![no_main]

use dihomotopy::io::{parse_map_json, Resolver};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_map_json(text, &Resolver::InlineOnly) {
        for (x, y) in f.domain().edges() {
            let (a, b) = (f.apply(x), f.apply(y));
            assert!(a == b || f.codomain().has_edge(a, b));
        }
    }
});
