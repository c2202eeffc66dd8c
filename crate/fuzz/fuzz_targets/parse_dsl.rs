#![no_main]
use libfuzzer_sys::fuzz_target;

use f3links::expr::parse;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(e) = parse(src) {
        // the canonical print must parse back to the same tree
        let printed = e.to_string();
        assert_eq!(parse(&printed).expect("printed form parses"), e);
    }
});
