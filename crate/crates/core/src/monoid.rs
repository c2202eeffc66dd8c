//! The central monoid (F₃, ⋄), its address-indexed variants, φ_α, the
//! disjoint union ⊔ and ⋄-factorization.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::address::Address;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::tree::TernaryTree;

/// φ_α(f): a copy of `f` acting inside I_α, the identity elsewhere.
pub fn phi(alpha: &Address, f: &Element) -> Element {
    let full = TernaryTree::full(alpha.len());
    let plus = full.graft(alpha, f.plus().clone()).expect("α is a leaf of the full tree");
    let minus = full.graft(alpha, f.minus().clone()).expect("α is a leaf of the full tree");
    Element::reduce(plus, minus).expect("equal leaf counts")
}

/// f ⋄ g: g's pair grafted at l(f) above and at f(l(f)) below.
pub fn diamond(f: &Element, g: &Element) -> Element {
    diamond_at(f, &f.central_leaf(), g).expect("central leaf is a leaf")
}

/// f ⋄_α g for a leaf α of T₊(f); equals φ_α(g)·f.
pub fn diamond_at(f: &Element, alpha: &Address, g: &Element) -> Result<Element> {
    if !f.plus().is_leaf_at(alpha) {
        return Err(Error::InvalidAddress(format!("{alpha} is not a leaf of the domain tree")));
    }
    let image = f.apply_address(alpha)?;
    let plus = f.plus().graft(alpha, g.plus().clone())?;
    let minus = f.minus().graft(&image, g.minus().clone())?;
    // Grafting a reduced pair at matching leaves keeps the pair reduced.
    Ok(Element::from_parts_unchecked(plus, minus))
}

/// f ⋄ᵢ g, attaching at the maximal leaf iᵐ of T₊(f).
pub fn diamond_i(f: &Element, i: u8, g: &Element) -> Result<Element> {
    if i > 2 {
        return Err(Error::Domain(format!("diamond index {i} is not in {{0,1,2}}")));
    }
    diamond_at(f, &f.extreme_leaf(i), g)
}

/// ⊔(f, g) = φ₁(f)·φ₀(g). Both arguments must be non-trivial.
pub fn sqcup(f: &Element, g: &Element) -> Result<Element> {
    if f.is_identity() || g.is_identity() {
        return Err(Error::DegenerateOperand("disjoint union needs non-identity arguments".into()));
    }
    Ok(sqcup_unchecked(f, g))
}

/// ⊔ without the identity guard.
pub fn sqcup_unchecked(f: &Element, g: &Element) -> Element {
    let plus = TernaryTree::caret(g.plus().clone(), f.plus().clone(), TernaryTree::Leaf);
    let minus = TernaryTree::caret(g.minus().clone(), f.minus().clone(), TernaryTree::Leaf);
    Element::reduce(plus, minus).expect("equal leaf counts")
}

/// ⊔(f₁, …, fₙ) = ⊔(⊔(…⊔(f₁, f₂)…), fₙ).
pub fn sqcup_n(items: &[Element]) -> Result<Element> {
    let (first, rest) = items.split_first().ok_or_else(|| Error::DegenerateOperand("empty disjoint union".into()))?;
    if first.is_identity() {
        return Err(Error::DegenerateOperand("disjoint union needs non-identity arguments".into()));
    }
    rest.iter().try_fold(first.clone(), |acc, g| sqcup(&acc, g))
}

/// A factorization f = f₁ ⋄ … ⋄ fₖ into ⋄-irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondFactorization {
    pub factors: Vec<Element>,
}

impl DiamondFactorization {
    pub fn fold(&self) -> Element {
        self.factors.iter().fold(Element::identity(), |acc, g| diamond(&acc, g))
    }
}

/// Splits f as g ⋄ h with l(g) = 1ᵏ, for the largest such k.
pub fn diamond_split(f: &Element) -> Option<(Element, Element)> {
    let n = f.central_leaf().len();
    for k in (1..n).rev() {
        let at = Address::repeat(1, k);
        let h_plus = f.plus().subtree_at(&at).ok()?;
        let g_plus = f.plus().prune(&at).ok()?;
        let j = g_plus.leaf_index(&at)?;
        let Some(beta) = f.minus().vertex_with_leaf_block(j, h_plus.leaf_count()) else {
            continue;
        };
        let h_minus = f.minus().subtree_at(&beta).ok()?;
        let g_minus = f.minus().prune(&beta).ok()?;
        let Ok(g) = Element::from_reduced(g_plus, g_minus) else { continue };
        if g.is_identity() {
            continue;
        }
        let h = Element::from_reduced(h_plus, h_minus).ok()?;
        return Some((g, h));
    }
    None
}

pub fn is_diamond_irreducible(f: &Element) -> bool {
    !f.is_identity() && diamond_split(f).is_none()
}

pub fn diamond_factorize(f: &Element) -> DiamondFactorization {
    fn go(f: &Element, out: &mut Vec<Element>) {
        if f.is_identity() {
            return;
        }
        match diamond_split(f) {
            Some((g, h)) => {
                go(&g, out);
                go(&h, out);
            }
            None => out.push(f.clone()),
        }
    }
    let mut factors = Vec::new();
    go(f, &mut factors);
    DiamondFactorization { factors }
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Number c(n) of ⊔-representatives of an n-fold disjoint union, by the
/// even/odd recursion.
pub fn count_disjoint_reps(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("count needs n >= 1".into()));
    }
    let mut c = vec![BigUint::zero(), BigUint::one()];
    for m in 2..=n {
        let mut s = BigUint::zero();
        let top = if m % 2 == 0 { m / 2 - 1 } else { m / 2 };
        for i in 1..=top {
            s += binomial(m, i) * &c[i as usize] * &c[(m - i) as usize];
        }
        s *= 4u32;
        if m % 2 == 0 {
            let h = &c[(m / 2) as usize];
            s += binomial(m, m / 2) * h * h * 2u32;
        }
        c.push(s);
    }
    Ok(c[n as usize].clone())
}

/// Closed form 2ⁿ⁻¹·n!·Cat(n−1).
pub fn count_disjoint_reps_closed(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("count needs n >= 1".into()));
    }
    let fact = (1..=n).fold(BigUint::one(), |acc, i| acc * i);
    Ok((BigUint::one() << (n - 1) as usize) * fact * catalan(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting() {
        assert_eq!(count_disjoint_reps(1).unwrap(), 1u32.into());
        assert_eq!(count_disjoint_reps(2).unwrap(), 4u32.into());
        assert_eq!(count_disjoint_reps(3).unwrap(), 48u32.into());
        for n in 1..=12 {
            assert_eq!(count_disjoint_reps(n).unwrap(), count_disjoint_reps_closed(n).unwrap());
        }
        assert!(count_disjoint_reps(0).is_err());
    }

    #[test]
    fn phi_root_is_identity_map() {
        let y0 = Element::generator(0).unwrap();
        assert_eq!(phi(&Address::root(), &y0), y0);
        assert!(phi(&"12".parse().unwrap(), &Element::identity()).is_identity());
    }

    #[test]
    fn sqcup_shape() {
        let y0 = Element::generator(0).unwrap();
        let y1 = Element::generator(1).unwrap();
        let s = sqcup(&y0, &y1).unwrap();
        let one: Address = "1".parse().unwrap();
        let zero: Address = "0".parse().unwrap();
        assert_eq!(s, phi(&one, &y0).multiply(&phi(&zero, &y1)));
        assert_eq!(s, phi(&zero, &y1).multiply(&phi(&one, &y0)));
        assert!(sqcup(&y0, &Element::identity()).is_err());
    }

    #[test]
    fn factorize_generators() {
        let y0 = Element::generator(0).unwrap();
        let y1 = Element::generator(1).unwrap();
        assert!(diamond_factorize(&Element::identity()).factors.is_empty());
        let d = diamond(&y1, &y0);
        let fac = diamond_factorize(&d);
        assert_eq!(fac.fold(), d);
        assert_eq!(fac.factors, vec![y1, y0]);
    }
}
