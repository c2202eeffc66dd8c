//! Named, seeded property suites, as run by `f3links verify`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::address::Address;
use crate::element::Element;
use crate::error::Result;
use crate::fingerprint::{fingerprint, unoriented_fingerprint};
use crate::group::random_nontrivial;
use crate::invariants::{jones_polynomial, jones_unsimplified, simplify, InvariantOptions};
use crate::links::{jones_diagram, jones_diagram_hinted, retarget_central};
use crate::monoid::{diamond, diamond_i, phi};
use crate::moves::{random_move, MoveKind};
use crate::poly::LaurentPoly;
use crate::thompson_f::{include_f, BinaryPair};
use crate::treelink::{
    build_tree_link, hopf_element, label_matrix, linking_move, linking_move_hints, LabelledTree, TreeEdge, TreeVertex,
};

pub const SUITES: &[&str] =
    &["relations", "group", "monoid", "calibration", "linking", "treelink", "pointed", "reidemeister"];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cases: usize,
    pub invariants: InvariantOptions,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, cases: 200, invariants: InvariantOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the suite called `name`, or `None` if there is no such suite.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<SuiteReport> {
    let mut rng = StdRng::seed_from_u64(opts.seed);
    Some(match name {
        "relations" => relations(),
        "group" => group(opts, &mut rng),
        "monoid" => monoid(opts, &mut rng),
        "calibration" => calibration(opts),
        "linking" => linking(),
        "treelink" => treelink(opts, &mut rng),
        "pointed" => pointed(opts, &mut rng),
        "reidemeister" => reidemeister(opts, &mut rng),
        _ => return None,
    })
}

fn relations() -> SuiteReport {
    let mut r = SuiteReport::new("relations");
    let y: Vec<Element> = (0..=8).map(|n| Element::generator(n).unwrap()).collect();
    for n in 1..=6 {
        for m in 0..n {
            r.check(y[n].multiply(&y[m]) == y[m].multiply(&y[n + 2]), || format!("y{n}·y{m} ≠ y{m}·y{}", n + 2));
        }
    }
    r.check(include_f(&BinaryPair::x0()) == y[0], || "include_F(x0) ≠ y0".into());
    r.check(include_f(&BinaryPair::x1()) == y[2], || "include_F(x1) ≠ y2".into());
    r
}

/// All points k/3ᵈ of [0, 1].
fn triadic_grid(depth: usize) -> Vec<BigRational> {
    let den = BigInt::from(3u32).pow(depth as u32);
    let n = 3usize.pow(depth as u32);
    (0..=n).map(|k| BigRational::new(BigInt::from(k), den.clone())).collect()
}

fn group(opts: &SuiteOptions, rng: &mut StdRng) -> SuiteReport {
    let mut r = SuiteReport::new("group");
    for case in 0..opts.cases {
        let f = random_nontrivial(rng, 4);
        let g = random_nontrivial(rng, 4);
        let fg = f.multiply(&g);
        let depth = [f.plus(), f.minus(), g.plus(), g.minus()].iter().map(|t| t.depth()).max().unwrap() + 1;
        let ok = triadic_grid(depth).iter().all(|q| {
            let lhs = fg.evaluate(q).unwrap();
            let rhs = g.evaluate(&f.evaluate(q).unwrap()).unwrap();
            lhs == rhs
        });
        r.check(ok, || format!("case {case}: (f·g)(q) ≠ g(f(q))"));
        r.check(f.multiply(&f.invert()).is_identity(), || format!("case {case}: f·f⁻¹ ≠ 1"));
        let h = random_nontrivial(rng, 3);
        r.check(fg.multiply(&h) == f.multiply(&g.multiply(&h)), || format!("case {case}: not associative"));
    }
    r
}

fn random_leaf(f: &Element, rng: &mut StdRng) -> Address {
    let leaves = f.plus().leaves();
    leaves[rng.gen_range(0..leaves.len())].clone()
}

fn monoid(opts: &SuiteOptions, rng: &mut StdRng) -> SuiteReport {
    let mut r = SuiteReport::new("monoid");
    let one = Element::identity();
    for case in 0..opts.cases {
        let f = random_nontrivial(rng, 4);
        let g = random_nontrivial(rng, 4);
        let h = random_nontrivial(rng, 4);
        let fg = diamond(&f, &g);
        r.check(diamond(&fg, &h) == diamond(&f, &diamond(&g, &h)), || format!("case {case}: ⋄ not associative"));
        r.check(diamond(&f, &one) == f && diamond(&one, &f) == f, || format!("case {case}: 1 is not a ⋄ unit"));
        r.check(fg == phi(&f.central_leaf(), &g).multiply(&f), || format!("case {case}: f⋄g ≠ φ_l(f)(g)·f"));
        let (n, m) = (f.central_leaf().len(), g.central_leaf().len());
        r.check(fg.central_leaf() == Address::repeat(1, n + m), || format!("case {case}: l(f⋄g) ≠ 1^(n+m)"));
        r.check(
            phi(&f.central_leaf(), &diamond(&g, &h))
                == phi(&fg.central_leaf(), &h).multiply(&phi(&f.central_leaf(), &g)),
            || format!("case {case}: cocycle identity fails"),
        );
        // φ commutation for incomparable addresses
        let a = random_leaf(&f, rng);
        let mut b = random_leaf(&f, rng);
        if a == b {
            b = Address::root();
        }
        if !a.comparable(&b) {
            let (pa, pb) = (phi(&a, &g), phi(&b, &h));
            r.check(pa.multiply(&pb) == pb.multiply(&pa), || format!("case {case}: φ_{a} and φ_{b} do not commute"));
        }
        let i = rng.gen_range(0..3u8);
        let j = (i + rng.gen_range(1..3u8)) % 3;
        let lhs = diamond_i(&diamond_i(&f, i, &g).unwrap(), j, &h).unwrap();
        let rhs = diamond_i(&diamond_i(&f, j, &h).unwrap(), i, &g).unwrap();
        r.check(lhs == rhs, || format!("case {case}: ⋄{i} and ⋄{j} do not commute"));
    }
    r
}

fn calibration(opts: &SuiteOptions) -> SuiteReport {
    let mut r = SuiteReport::new("calibration");
    let o = &opts.invariants;
    let id = jones_diagram(&Element::identity()).diagram;
    r.check(id.crossing_count() == 0 && id.component_count() == 1, || "L(1) is not a trivial circle".into());
    let x0 = include_f(&BinaryPair::x0());
    if let Some(v) = r.check_result(jones_polynomial(&jones_diagram(&x0).diagram, o), || "V(L(x0))".into()) {
        r.check(v == LaurentPoly::one(), || format!("V(L(include_F(x0))) = {v:?}"));
    }
    for (n, want) in [(1, 1), (-1, -1)] {
        let h = hopf_element(n).unwrap();
        let d = jones_diagram(&h).diagram;
        r.check(d.component_count() == 2, || format!("L(H({n})) has {} components", d.component_count()));
        if d.component_count() == 2 {
            r.check(d.linking_matrix()[0][1] == want, || format!("lk(H({n})) ≠ {want}"));
        }
    }
    let hp = hopf_element(1).unwrap();
    r.check(linking_move(1, &Element::identity(), &Element::identity()).ok() == Some(hp), || "l₊(1,1) ≠ H⁺".into());
    r
}

fn linking() -> SuiteReport {
    let mut r = SuiteReport::new("linking");
    let y0 = Element::generator(0).unwrap();
    for n in [1i64, 2, 3, 4, -1, -2, -3, -4] {
        let f = linking_move(n, &y0, &y0).unwrap();
        let hints = linking_move_hints(n, &y0, &y0);
        let Some(j) = r.check_result(jones_diagram_hinted(&f, &hints), || format!("L(l({n}))")) else {
            continue;
        };
        let comps = j.diagram.component_count();
        r.check(comps == 2, || format!("L(l_{n}(y0,y0)) has {comps} components"));
        let (a, b) = (j.component_of_leaf(&hints[0].leaf), j.component_of_leaf(&hints[1].leaf));
        if let (Some(a), Some(b)) = (a, b) {
            let lk = j.diagram.linking_matrix()[a][b];
            r.check(a != b && lk == n, || format!("lk in L(l_{n}(y0,y0)) is {lk}"));
        }
    }
    r
}

/// A random labelled tree with at most `max` vertices.
pub fn random_labelled_tree<R: Rng + ?Sized>(rng: &mut R, max: usize, labels: i64) -> LabelledTree {
    let n = rng.gen_range(1..=max);
    let vertices = (0..n)
        .map(|i| TreeVertex { name: format!("v{}", i + 1), element: Element::generator(rng.gen_range(0..2)).unwrap() })
        .collect();
    let edges = (1..n)
        .map(|i| TreeEdge {
            a: format!("v{}", rng.gen_range(0..i) + 1),
            b: format!("v{}", i + 1),
            label: rng.gen_range(-labels..=labels),
        })
        .collect();
    LabelledTree { vertices, edges }
}

/// The tree of the three-vertex path v₂—v₁—v₃ with labels +1 and −1.
pub fn example_path() -> LabelledTree {
    let y0 = Element::generator(0).unwrap();
    let v = |name: &str| TreeVertex { name: name.into(), element: y0.clone() };
    LabelledTree {
        vertices: vec![v("v1"), v("v2"), v("v3")],
        edges: vec![
            TreeEdge { a: "v2".into(), b: "v1".into(), label: 1 },
            TreeEdge { a: "v1".into(), b: "v3".into(), label: -1 },
        ],
    }
}

fn treelink(opts: &SuiteOptions, rng: &mut StdRng) -> SuiteReport {
    let mut r = SuiteReport::new("treelink");
    let mut trees = vec![example_path()];
    trees.extend((0..opts.cases).map(|_| random_labelled_tree(rng, 5, 3)));
    for (case, t) in trees.iter().enumerate() {
        let Some(b) = r.check_result(build_tree_link(t), || format!("case {case}: build")) else { continue };
        let elements = t.elements();
        let Some(link) = r.check_result(b.link(&elements), || format!("case {case}: link")) else { continue };
        r.check(link.diagram.component_count() == t.vertices.len(), || {
            format!("case {case}: {} components for {} vertices", link.diagram.component_count(), t.vertices.len())
        });
        let got = b.vertex_linking(&elements).ok();
        r.check(got == label_matrix(t).ok(), || format!("case {case}: linking matrix {got:?}"));
        let zero =
            LabelledTree { edges: t.edges.iter().map(|e| TreeEdge { label: 0, ..e.clone() }).collect(), ..t.clone() };
        if let Some(z) = r.check_result(build_tree_link(&zero), || format!("case {case}: zero build")) {
            let want = crate::monoid::sqcup_n(&elements).ok();
            r.check(Some(z.element) == want, || format!("case {case}: all-zero tree is not the ⊔ representative"));
        }
    }
    r
}

fn pointed(opts: &SuiteOptions, rng: &mut StdRng) -> SuiteReport {
    let mut r = SuiteReport::new("pointed");
    let o = &opts.invariants;
    for case in 0..opts.cases {
        let f = random_nontrivial(rng, 4);
        let j = jones_diagram(&f);
        for (c, leaves) in j.component_leaves().iter().enumerate() {
            let Some(g) = r.check_result(retarget_central(&f, &leaves[0]), || format!("case {case}")) else {
                continue;
            };
            let want = j.diagram.with_marked(c).and_then(|d| unoriented_fingerprint(&d, o, true));
            let got = unoriented_fingerprint(&jones_diagram(&g).diagram, o, true);
            r.check(matches!((&want, &got), (Ok(a), Ok(b)) if a == b), || {
                format!("case {case}, component {c}: pointed fingerprint changed")
            });
        }
    }
    r
}

fn reidemeister(opts: &SuiteOptions, rng: &mut StdRng) -> SuiteReport {
    let mut r = SuiteReport::new("reidemeister");
    let o = &opts.invariants;
    let mut done = 0;
    let mut attempts = 0;
    while done < opts.cases && attempts < opts.cases * 20 {
        attempts += 1;
        let f = random_nontrivial(rng, 4);
        let d = jones_diagram(&f).diagram;
        let kind = [MoveKind::R1, MoveKind::R2, MoveKind::R3][done % 3];
        let Some(e) = random_move(&d, kind, rng) else { continue };
        done += 1;
        let same = e.validate().is_ok()
            && e.is_planar()
            && e.component_count() == d.component_count()
            && e.linking_matrix() == d.linking_matrix()
            && jones_unsimplified(&e, o).ok() == jones_unsimplified(&d, o).ok();
        r.check(same, || format!("{kind:?} move changed the link of {}", f.to_json()));
    }
    r.check(done == opts.cases, || format!("only {done} moves applied"));
    for case in 0..opts.cases {
        let f = random_nontrivial(rng, 5);
        let d = jones_diagram(&f).diagram;
        let s = simplify(&d);
        r.check(s.crossing_count() <= d.crossing_count(), || format!("case {case}: simplify grew"));
        let (a, b) = (fingerprint(&d, o), fingerprint(&s, o));
        r.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || format!("case {case}: simplify changed fingerprint"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_briefly() {
        let opts = SuiteOptions { seed: 1, cases: 12, ..SuiteOptions::default() };
        for name in SUITES {
            let r = run_suite(name, &opts).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert!(r.checks > 0);
        }
        assert!(run_suite("nope", &opts).is_none());
    }
}
