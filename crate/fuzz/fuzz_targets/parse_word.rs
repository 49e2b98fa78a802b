#![no_main]

use libfuzzer_sys::fuzz_target;
use presforge::freewords::{parse_word, Alphabet};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::new(["a", "b", "x_1", "t"]).unwrap();
    if let Ok(w) = parse_word(text, &alphabet) {
        let rendered = w.display(&alphabet).to_string();
        assert_eq!(parse_word(&rendered, &alphabet).unwrap(), w);
    }
});
