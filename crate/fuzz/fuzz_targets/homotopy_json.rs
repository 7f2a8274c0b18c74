#![no_main]

use dihomotopy::io::{parse_homotopy_json, Resolver};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = parse_homotopy_json(text, &Resolver::InlineOnly) {
        assert_eq!(h.frames().len(), h.line().steps() + 1);
        assert_eq!(h.verify(), h.first_failure().is_none());
        assert_eq!(h.verify(), h.reverse().verify());
    }
});
