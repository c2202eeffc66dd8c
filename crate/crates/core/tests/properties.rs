use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use f3links::expr::{eval_str, parse, BinOp, Expr};
use f3links::group::random_element;
use f3links::treelink::{build_tree_link, LabelledTree};
use f3links::verify::random_labelled_tree;
use f3links::{Address, Element};

fn address() -> impl Strategy<Value = Address> {
    prop::collection::vec(0u8..3, 0..5).prop_map(|d| Address::from_digits(&d).unwrap())
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Identity),
        (0u64..12).prop_map(Expr::Gen),
        (-5i64..=5).prop_map(Expr::Hopf),
        prop::collection::vec((0u8..2, prop_oneof![-3i64..=-1, 1i64..=3]), 0..4).prop_map(Expr::Incl),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        let op = prop_oneof![Just(BinOp::Mul), Just(BinOp::Diamond), (0u8..3).prop_map(BinOp::DiamondI)];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Inverse(Box::new(e))),
            inner.clone().prop_map(|e| Expr::Rot(Box::new(e))),
            (address(), inner.clone()).prop_map(|(a, e)| Expr::Phi(a, Box::new(e))),
            (address(), inner.clone(), inner.clone()).prop_map(|(a, x, y)| Expr::DiamAt(a, Box::new(x), Box::new(y))),
            (-4i64..=4, inner.clone(), inner.clone()).prop_map(|(n, x, y)| Expr::Link(n, Box::new(x), Box::new(y))),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Union),
            (op, inner.clone(), inner).prop_map(|(op, x, y)| Expr::Binary(op, Box::new(x), Box::new(y))),
        ]
    })
}

fn element() -> impl Strategy<Value = Element> {
    (any::<u64>(), 0usize..6).prop_map(|(seed, k)| random_element(&mut ChaCha8Rng::seed_from_u64(seed), k))
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let printed = e.to_string();
        let back = parse(&printed).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn element_json_round_trip(f in element()) {
        prop_assert_eq!(Element::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn group_laws(f in element(), g in element(), h in element()) {
        prop_assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
        prop_assert!(f.multiply(&f.invert()).is_identity());
        prop_assert_eq!(f.invert().invert(), f);
    }

    #[test]
    fn rotation_is_an_involution(f in element()) {
        prop_assert_eq!(f.rotate180().rotate180(), f.clone());
        prop_assert_eq!(f.rotate180().size(), f.size());
    }

    #[test]
    fn labelled_tree_json_round_trip(seed in any::<u64>()) {
        let t = random_labelled_tree(&mut ChaCha8Rng::seed_from_u64(seed), 5, 3);
        let back = LabelledTree::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(build_tree_link(&back).unwrap().element, build_tree_link(&t).unwrap().element);
    }

    #[test]
    fn parser_never_panics(s in "[ y0-9()*<>^@,eUHlinkphdamrotcxl-]{0,24}") {
        let _ = parse(&s);
    }
}

#[test]
fn dsl_relation_example() {
    assert_eq!(eval_str("y2*y0").unwrap().element, eval_str("y0*y4").unwrap().element);
    assert!(eval_str("1").unwrap().element.is_identity());
}

#[test]
fn dsl_link_matches_definition() {
    use f3links::monoid::{diamond_at, diamond_i};
    use f3links::treelink::hopf_element;
    let y0 = Element::generator(0).unwrap();
    let h = hopf_element(1).unwrap();
    let want = diamond_i(&diamond_at(&h, &"12".parse().unwrap(), &y0).unwrap(), 0, &y0).unwrap();
    assert_eq!(eval_str("link(1,y0,y0)").unwrap().element, want);
}
