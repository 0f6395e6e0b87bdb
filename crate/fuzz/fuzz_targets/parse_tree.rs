#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(t) = fsg_core::syntax::parse_tree(s) {
            // printing and reparsing must be lossless
            let back = fsg_core::syntax::parse_tree(&t.to_string()).expect("printed tree parses");
            assert_eq!(back, t);
        }
    }
});
