#![no_main]

use libfuzzer_sys::fuzz_target;
use presforge::presentations::parse_presentation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_presentation(text) {
        // Rendering must parse back to the same value.
        let again = parse_presentation(&p.to_string()).expect("rendered presentation parses");
        assert_eq!(again, p);
    }
});
