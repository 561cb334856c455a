#![no_main]
use amply::io::{read_graph, write_graph, write_signed_graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = read_graph(text) else { return };
    // whatever parses must survive a write/read round trip
    let again = match &file.signature {
        Some(sigma) => read_graph(&write_signed_graph(&file.graph, sigma)).expect("signed round trip"),
        None => read_graph(&write_graph(&file.graph)).expect("round trip"),
    };
    assert_eq!(again.graph, file.graph);
    assert_eq!(again.signature, file.signature);
});
