#![no_main]
use amply::io::{read_plan, write_plan};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(plan) = read_plan(text) else { return };
    let written = write_plan(&plan);
    let again = read_plan(&written).expect("written plan parses");
    assert_eq!(write_plan(&again), written);
});
