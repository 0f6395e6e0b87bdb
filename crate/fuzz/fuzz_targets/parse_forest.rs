#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = fsg_core::syntax::parse_forest(s) {
            let back = fsg_core::syntax::parse_forest(&f.to_string()).expect("printed forest parses");
            assert_eq!(back, f);
        }
    }
});
