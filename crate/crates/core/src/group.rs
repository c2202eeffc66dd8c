//! Group structure on F₃ and random sampling.

use num_rational::BigRational;
use rand::Rng;

use crate::element::Element;
use crate::error::Result;
use crate::tree::TernaryTree;

/// `f · g`, the composite `g ∘ f`.
pub fn multiply(f: &Element, g: &Element) -> Element {
    f.multiply(g)
}

pub fn invert(f: &Element) -> Element {
    f.invert()
}

pub fn evaluate(f: &Element, q: &BigRational) -> Result<BigRational> {
    f.evaluate(q)
}

pub fn equals(f: &Element, g: &Element) -> bool {
    f == g
}

/// Product of a list, left to right.
pub fn product<'a>(items: impl IntoIterator<Item = &'a Element>) -> Element {
    items.into_iter().fold(Element::identity(), |acc, x| acc.multiply(x))
}

/// A uniformly grown random tree with `carets` internal vertices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, carets: usize) -> TernaryTree {
    let mut t = TernaryTree::Leaf;
    for _ in 0..carets {
        let i = rng.gen_range(0..t.leaf_count());
        t = t.expand_leaf(i).expect("index in range");
    }
    t
}

/// A random element built from two random trees with `carets` internal
/// vertices each, then reduced (so it may be smaller).
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, carets: usize) -> Element {
    let p = random_tree(rng, carets);
    let m = random_tree(rng, carets);
    Element::reduce(p, m).expect("equal leaf counts")
}

/// A random non-identity element with at most `max_carets` carets per tree.
pub fn random_nontrivial<R: Rng + ?Sized>(rng: &mut R, max_carets: usize) -> Element {
    assert!(max_carets >= 1);
    loop {
        let k = rng.gen_range(1..=max_carets);
        let e = random_element(rng, k);
        if !e.is_identity() {
            return e;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn presentation_relations() {
        let y: Vec<Element> = (0..=8).map(|n| Element::generator(n).unwrap()).collect();
        for n in 1..=6 {
            for m in 0..n {
                assert_eq!(y[n].multiply(&y[m]), y[m].multiply(&y[n + 2]), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn inverses() {
        for n in 0..=6 {
            let y = Element::generator(n).unwrap();
            assert!(y.multiply(&y.invert()).is_identity());
            assert!(y.invert().multiply(&y).is_identity());
        }
    }

    #[test]
    fn associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let f = random_element(&mut rng, 4);
            let g = random_element(&mut rng, 4);
            let h = random_element(&mut rng, 4);
            assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
            assert_eq!(f.multiply(&Element::identity()), f);
        }
    }
}
