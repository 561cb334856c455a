//! Replays the checked-in fuzz corpus through the same round-trip checks the
//! fuzz targets make, so the seeds stay meaningful on stable.

use std::fs;
use std::path::PathBuf;

use amply::io::{read_graph, read_plan, write_graph, write_plan, write_signed_graph};
use amply::rational::{format_rational, parse_rational};
use amply::{generate, Family};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter_map(|p| Some((p.file_name()?.to_string_lossy().into_owned(), fs::read_to_string(&p).ok()?)))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn graph_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("read_graph") {
        let Ok(file) = read_graph(&text) else { continue };
        let again = match &file.signature {
            Some(s) => read_graph(&write_signed_graph(&file.graph, s)),
            None => read_graph(&write_graph(&file.graph)),
        }
        .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(again.graph, file.graph, "{name}");
        assert_eq!(again.signature, file.signature, "{name}");
        parsed += 1;
    }
    assert!(parsed >= 2);
}

#[test]
fn plan_seeds() {
    for (name, text) in seeds("read_plan") {
        let plan = read_plan(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let written = write_plan(&plan);
        assert_eq!(write_plan(&read_plan(&written).unwrap()), written, "{name}");
    }
}

#[test]
fn rational_seeds() {
    for (name, text) in seeds("parse_rational") {
        if let Ok(r) = parse_rational(&text) {
            assert_eq!(parse_rational(&format_rational(&r)), Ok(r), "{name}");
        }
    }
    assert!(parse_rational("1/0").is_err());
}

#[test]
fn family_seeds() {
    for (name, text) in seeds("parse_family") {
        let Ok(family) = Family::parse(&text) else { continue };
        if family.vertex_count().is_some_and(|n| n <= 256) {
            let g = generate(&family).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(Some(g.vertex_count()), family.vertex_count(), "{name}");
        }
    }
}
