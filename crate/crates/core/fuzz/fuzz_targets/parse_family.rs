#![no_main]
use amply::{generate, Family};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(family) = Family::parse(s) else { return };
    // only build what fits in memory quickly
    if family.vertex_count().is_some_and(|n| n <= 256) {
        if let Ok(g) = generate(&family) {
            assert_eq!(Some(g.vertex_count()), family.vertex_count());
        }
    }
});
