//! Replays the checked-in fuzz corpus through the fuzz targets' checks.

use std::path::PathBuf;

use f3links::expr::parse;
use f3links::treelink::{build_tree_link, LabelledTree};
use f3links::Element;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus", target].iter().collect();
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn parse_dsl_seeds() {
    let mut parsed = 0;
    for (name, src) in seeds("parse_dsl") {
        if let Ok(e) = parse(&src) {
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn element_json_seeds() {
    for (name, src) in seeds("element_json") {
        match Element::from_json(&src) {
            Ok(f) => {
                assert_eq!(Element::from_json(&f.to_json()).unwrap(), f, "{name}");
                assert!(f.multiply(&f.invert()).is_identity());
            }
            Err(_) => assert!(name.starts_with("malformed"), "{name} should parse"),
        }
    }
}

#[test]
fn labelled_tree_json_seeds() {
    for (name, src) in seeds("labelled_tree_json") {
        let tree = LabelledTree::from_json(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(LabelledTree::from_json(&tree.to_json()).unwrap(), tree);
        let b = build_tree_link(&tree).unwrap();
        assert_eq!(b.link(&tree.elements()).unwrap().diagram.component_count(), tree.vertices.len());
    }
}
