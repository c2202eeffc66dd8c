#![no_main]
use libfuzzer_sys::fuzz_target;

use f3links::Element;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(f) = Element::from_json(src) {
        let back = Element::from_json(&f.to_json()).expect("own output parses");
        assert_eq!(back, f);
        assert!(f.multiply(&f.invert()).is_identity());
    }
});
