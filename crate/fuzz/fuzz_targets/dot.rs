#![no_main]

use dihomotopy::io::{parse_dot, to_dot};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_dot(text) {
        assert_eq!(parse_dot(&to_dot(&g)).expect("rendered DOT re-parses"), g);
    }
});
