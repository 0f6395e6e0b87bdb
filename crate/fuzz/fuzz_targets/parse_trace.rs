#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(trace) = fsg_core::syntax::parse_trace(s) {
            let back = fsg_core::syntax::parse_trace(&trace.to_string()).expect("printed trace parses");
            assert_eq!(back, trace);
            // replay may fail, but must not panic
            let ctx = fsg_core::SkeinContext::new(3).expect("n = 3");
            let _ = trace.replay(ctx, &fsg_core::Tree::Leaf);
        }
    }
});
