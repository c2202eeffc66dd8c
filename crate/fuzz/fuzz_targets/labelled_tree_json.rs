#![no_main]
use libfuzzer_sys::fuzz_target;

use f3links::treelink::{build_tree_link, LabelledTree};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(tree) = LabelledTree::from_json(src) else { return };
    let back = LabelledTree::from_json(&tree.to_json()).expect("own output parses");
    assert_eq!(back, tree);
    // keep builds small enough to stay fast
    if tree.vertices.len() <= 6 && tree.elements().iter().all(|e| e.size() <= 8) {
        if let Ok(b) = build_tree_link(&tree) {
            let _ = b.vertex_linking(&tree.elements());
        }
    }
});
