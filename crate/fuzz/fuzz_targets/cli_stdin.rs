#![no_main]

use libfuzzer_sys::fuzz_target;

// Presentation text arrives on stdin, as with `presforge ... -`.
fuzz_target!(|data: &[u8]| {
    for cmd in ["homology", "verify-sc"] {
        let mut input = data;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = presforge::cli::run(
            ["presforge", "--format", "json", cmd, "-"],
            &mut input,
            &mut out,
            &mut err,
        );
        assert!((0..=3).contains(&code));
        if code != 3 {
            let _: serde_json::Value = serde_json::from_slice(&out).expect("manifest is json");
        }
    }
});
