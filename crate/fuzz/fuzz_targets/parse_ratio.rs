#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use presforge::smallcancel::Ratio;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = Ratio::from_str(s);
    }
});
