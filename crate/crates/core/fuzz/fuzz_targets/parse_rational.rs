#![no_main]
use amply::rational::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() > 64 {
        return;
    }
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_rational(s) {
        assert_eq!(parse_rational(&format_rational(&r)), Ok(r));
    }
});
