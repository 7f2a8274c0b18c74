#![no_main]

use dihomotopy::io::{digraph_json, parse_digraph_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_digraph_json(text) {
        let again = parse_digraph_json(&digraph_json(&g)).expect("canonical JSON re-parses");
        assert_eq!(g, again);
    }
});
