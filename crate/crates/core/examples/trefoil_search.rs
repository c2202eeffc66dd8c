//! Exhaustive search for the smallest elements whose link is a single
//! component with the Jones polynomial of a trefoil.
//!
//!     cargo run --release -p f3links --example trefoil_search [max_carets]

use f3links::invariants::{jones_polynomial, InvariantOptions};
use f3links::links::jones_diagram;
use f3links::poly::LaurentPoly;
use f3links::{Element, TernaryTree};

fn trees(k: usize) -> Vec<TernaryTree> {
    if k == 0 {
        return vec![TernaryTree::Leaf];
    }
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k - a {
            let c = k - 1 - a - b;
            for l in trees(a) {
                for m in trees(b) {
                    for r in trees(c) {
                        out.push(TernaryTree::caret(l.clone(), m.clone(), r));
                    }
                }
            }
        }
    }
    out
}

fn main() {
    let max: usize = std::env::args().nth(1).map(|s| s.parse().expect("max carets")).unwrap_or(5);
    // V in powers of t^{1/2}
    let right = LaurentPoly::from_terms([(2, 1), (6, 1), (8, -1)]);
    let left = LaurentPoly::from_terms([(-2, 1), (-6, 1), (-8, -1)]);
    let opts = InvariantOptions::default();
    let mut found = 0;
    for k in 1..=max {
        let ts = trees(k);
        let mut checked = 0;
        for p in &ts {
            for m in &ts {
                let Ok(f) = Element::reduce(p.clone(), m.clone()) else { continue };
                if f.size() != k {
                    continue;
                }
                checked += 1;
                let d = jones_diagram(&f).diagram;
                if d.component_count() != 1 {
                    continue;
                }
                let v = jones_polynomial(&d, &opts).expect("small diagram");
                if v == right || v == left {
                    found += 1;
                    let hand = if v == right { "right" } else { "left" };
                    println!("{k} {hand} {}", f.to_json());
                }
            }
        }
        eprintln!("size {k}: {} trees, {checked} reduced elements, {found} trefoils so far", ts.len());
    }
}
