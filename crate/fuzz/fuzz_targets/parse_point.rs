#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if s.len() < 4096 {
            if let Ok(x) = fsg_core::RationalPoint::parse(s) {
                assert_eq!(fsg_core::RationalPoint::parse(&x.to_string()).ok(), Some(x.clone()));
                let _ = x.sigma();
            }
        }
    }
});
