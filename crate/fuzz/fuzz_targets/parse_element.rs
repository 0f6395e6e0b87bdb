#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // first byte picks n
    let Some((&k, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let ctx = fsg_core::SkeinContext::new(3 + usize::from(k % 4)).expect("n ≥ 3");
    if let Ok(x) = fsg_core::syntax::parse_element(ctx, s) {
        let back = fsg_core::syntax::parse_element(ctx, &x.to_string()).expect("printed element parses");
        assert_eq!(back, x);
        let _ = x.inverse().to_string();
    }
});
