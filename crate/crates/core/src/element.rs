//! Elements of F₃ as reduced ternary tree pairs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::address::{Address, TriadicInterval};
use crate::error::{Error, Result};
use crate::tree::TernaryTree;

/// An element of F₃: the domain tree `plus` and range tree `minus`, always
/// in reduced form. Leaf `i` of `plus` maps to leaf `i` of `minus`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct Element {
    plus: TernaryTree,
    minus: TernaryTree,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    plus: TernaryTree,
    minus: TernaryTree,
}

impl TryFrom<RawPair> for Element {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        Element::reduce(raw.plus, raw.minus)
    }
}

impl Default for Element {
    fn default() -> Self {
        Element::identity()
    }
}

impl Element {
    pub fn identity() -> Self {
        Element { plus: TernaryTree::Leaf, minus: TernaryTree::Leaf }
    }

    /// Reduces an arbitrary pair with equal leaf counts.
    pub fn reduce(plus: TernaryTree, minus: TernaryTree) -> Result<Self> {
        let (np, nm) = (plus.leaf_count(), minus.leaf_count());
        if np != nm {
            return Err(Error::MalformedPair(format!("domain tree has {np} leaves but range tree has {nm}")));
        }
        let (mut plus, mut minus) = (plus, minus);
        loop {
            let a = plus.exposed_carets();
            let b = minus.exposed_carets();
            let Some(&i) = a.iter().find(|i| b.contains(i)) else { break };
            plus = plus.collapse_caret(i).expect("exposed caret");
            minus = minus.collapse_caret(i).expect("exposed caret");
        }
        Ok(Element { plus, minus })
    }

    /// Builds an element from a pair that must already be reduced.
    pub fn from_reduced(plus: TernaryTree, minus: TernaryTree) -> Result<Self> {
        let e = Element::reduce(plus.clone(), minus.clone())?;
        if e.plus != plus {
            return Err(Error::MalformedPair("pair is not reduced".into()));
        }
        Ok(e)
    }

    /// Skips the reduction; callers guarantee the pair is reduced.
    pub(crate) fn from_parts_unchecked(plus: TernaryTree, minus: TernaryTree) -> Self {
        debug_assert_eq!(plus.leaf_count(), minus.leaf_count());
        debug_assert!({
            let a = plus.exposed_carets();
            let b = minus.exposed_carets();
            !a.iter().any(|i| b.contains(i))
        });
        Element { plus, minus }
    }

    pub fn plus(&self) -> &TernaryTree {
        &self.plus
    }

    pub fn minus(&self) -> &TernaryTree {
        &self.minus
    }

    pub fn is_identity(&self) -> bool {
        self.plus.is_leaf()
    }

    /// Internal vertices per tree.
    pub fn size(&self) -> usize {
        self.plus.internal_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.plus.leaf_count()
    }

    /// The generator yₙ.
    pub fn generator(n: i64) -> Result<Self> {
        use TernaryTree as T;
        let c = T::single_caret;
        let l = T::leaf;
        match n {
            n if n < 0 => Err(Error::Domain(format!("generator index {n} is negative"))),
            0 => Ok(Element::from_parts_unchecked(T::caret(c(), l(), l()), T::caret(l(), l(), c()))),
            1 => Ok(Element::from_parts_unchecked(T::caret(l(), c(), l()), T::caret(l(), l(), c()))),
            2 => Ok(Element::from_parts_unchecked(
                T::caret(l(), l(), T::caret(c(), l(), l())),
                T::caret(l(), l(), T::caret(l(), l(), c())),
            )),
            n => {
                let y0 = Element::generator(0)?;
                Ok(y0.invert().multiply(&Element::generator(n - 2)?).multiply(&y0))
            }
        }
    }

    pub fn invert(&self) -> Self {
        Element { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    /// `self · other`, i.e. the composite map `other ∘ self`.
    pub fn multiply(&self, other: &Element) -> Self {
        let common = union(&self.minus, &other.plus);
        let plus = refine_along(&self.plus, &self.minus, &common);
        let minus = refine_along(&other.minus, &other.plus, &common);
        Element::reduce(plus, minus).expect("refined trees have equal leaf counts")
    }

    /// The central leaf l(f): the maximal address 1ⁿ in the domain tree.
    pub fn central_leaf(&self) -> Address {
        let mut t = &self.plus;
        let mut n = 0;
        while let Some(c) = t.children() {
            t = &c[1];
            n += 1;
        }
        Address::repeat(1, n)
    }

    /// The maximal address iᵐ in the domain tree.
    pub fn extreme_leaf(&self, i: u8) -> Address {
        let mut t = &self.plus;
        let mut n = 0;
        while let Some(c) = t.children() {
            t = &c[i as usize];
            n += 1;
        }
        Address::repeat(i, n)
    }

    /// Image f(α) of an address. Below a domain leaf λ this is f(λ)·γ; at an
    /// internal domain vertex it is the address of the image interval, when
    /// that interval is triadic.
    pub fn apply_address(&self, alpha: &Address) -> Result<Address> {
        let plus_leaves = self.plus.leaves();
        let minus_leaves = self.minus.leaves();
        if let Some(i) = plus_leaves.iter().position(|l| l.is_prefix_of(alpha)) {
            let gamma = plus_leaves[i].strip_prefix_of(alpha).unwrap();
            return Ok(minus_leaves[i].concat(&gamma));
        }
        let first = plus_leaves.iter().position(|l| alpha.is_prefix_of(l));
        let last = plus_leaves.iter().rposition(|l| alpha.is_prefix_of(l));
        let (Some(first), Some(last)) = (first, last) else {
            return Err(Error::UnresolvableAddress(alpha.to_string()));
        };
        let image = TriadicInterval { lo: minus_leaves[first].interval().lo, hi: minus_leaves[last].interval().hi };
        interval_address(&image).ok_or_else(|| Error::UnresolvableAddress(alpha.to_string()))
    }

    /// Rotation by 180 degrees: swaps the trees and mirrors both.
    pub fn rotate180(&self) -> Self {
        Element { plus: self.minus.mirror(), minus: self.plus.mirror() }
    }

    /// f(q) as a PL homeomorphism of [0,1].
    pub fn evaluate(&self, q: &BigRational) -> Result<BigRational> {
        if q < &BigRational::zero() || q > &BigRational::one() {
            return Err(Error::Domain(format!("{q} is outside [0,1]")));
        }
        let plus_leaves = self.plus.leaves();
        let minus_leaves = self.minus.leaves();
        for (a, b) in plus_leaves.iter().zip(&minus_leaves) {
            let ia = a.interval();
            if &ia.lo <= q && q <= &ia.hi {
                let ib = b.interval();
                return Ok(&ib.lo + (q - &ia.lo) * ib.length() / ia.length());
            }
        }
        unreachable!("leaf intervals cover [0,1]")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trees always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} / {})", self.plus, self.minus)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} / {})", self.plus, self.minus)
    }
}

/// Smallest tree containing both.
pub fn union(a: &TernaryTree, b: &TernaryTree) -> TernaryTree {
    match (a, b) {
        (TernaryTree::Leaf, t) | (t, TernaryTree::Leaf) => t.clone(),
        (TernaryTree::Caret(x), TernaryTree::Caret(y)) => {
            TernaryTree::caret(union(&x[0], &y[0]), union(&x[1], &y[1]), union(&x[2], &y[2]))
        }
    }
}

/// Given a pair (`other`, `side`) and a refinement `target` of `side`, grows
/// `other` with the same carets leaf-by-leaf.
fn refine_along(other: &TernaryTree, side: &TernaryTree, target: &TernaryTree) -> TernaryTree {
    let mut out = other.clone();
    for (a, b) in other.leaves().iter().zip(side.leaves()) {
        let sub = target.get(&b).expect("target refines side").clone();
        if !sub.is_leaf() {
            out = out.graft(a, sub).expect("leaf of other");
        }
    }
    out
}

/// The address whose interval is exactly `iv`, if any.
pub fn interval_address(iv: &TriadicInterval) -> Option<Address> {
    let len = iv.length();
    let three = BigInt::from(3);
    let mut k = 0usize;
    let mut den = BigInt::one();
    // len must be 3^-k
    loop {
        let l = BigRational::new(BigInt::one(), den.clone());
        if l == len {
            break;
        }
        if l < len {
            return None;
        }
        den *= &three;
        k += 1;
    }
    let scaled = &iv.lo * BigRational::from_integer(den);
    if !scaled.is_integer() {
        return None;
    }
    let mut n = scaled.to_integer();
    let mut digits = vec![0u8; k];
    for d in digits.iter_mut().rev() {
        let r: BigInt = &n % &three;
        *d = u8::try_from(r).ok()?;
        n /= &three;
    }
    Address::from_digits(&digits).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_removes_common_caret() {
        let t = TernaryTree::single_caret();
        let e = Element::reduce(t.clone(), t).unwrap();
        assert!(e.is_identity());
        assert!(Element::reduce(TernaryTree::single_caret(), TernaryTree::Leaf).is_err());
    }

    #[test]
    fn grow_then_reduce() {
        let y0 = Element::generator(0).unwrap();
        let i = 0;
        let p = y0.plus().expand_leaf(i).unwrap();
        let m = y0.minus().expand_leaf(i).unwrap();
        assert_eq!(Element::reduce(p, m).unwrap(), y0);
    }

    #[test]
    fn generators_are_reduced() {
        for n in 0..3 {
            let y = Element::generator(n).unwrap();
            assert_eq!(Element::from_reduced(y.plus().clone(), y.minus().clone()).unwrap(), y);
        }
        assert_eq!(Element::generator(0).unwrap().leaf_count(), 5);
        assert!(Element::generator(-1).is_err());
    }

    #[test]
    fn central_leaf_of_identity() {
        assert_eq!(Element::identity().central_leaf(), Address::root());
        assert_eq!(Element::generator(1).unwrap().central_leaf(), a("11"));
    }

    #[test]
    fn apply_address_on_y0() {
        let y0 = Element::generator(0).unwrap();
        let expected = [("00", "0"), ("01", "1"), ("02", "20"), ("1", "21"), ("2", "22")];
        for (x, y) in expected {
            assert_eq!(y0.apply_address(&a(x)).unwrap(), a(y));
        }
        // below a leaf
        assert_eq!(y0.apply_address(&a("0212")).unwrap(), a("2012"));
        // internal vertex 0 maps onto [0, 7/9], not triadic
        assert!(y0.apply_address(&a("0")).is_err());
        assert_eq!(y0.apply_address(&Address::root()).unwrap(), Address::root());
    }

    #[test]
    fn interval_addresses() {
        for s in ["e", "0", "12", "2101"] {
            assert_eq!(interval_address(&a(s).interval()), Some(a(s)));
        }
    }

    #[test]
    fn json_round_trip() {
        let y2 = Element::generator(2).unwrap();
        let s = y2.to_json();
        assert_eq!(Element::from_json(&s).unwrap(), y2);
        assert_eq!(Element::from_json(&s).unwrap().to_json(), s);
        assert!(Element::from_json(r#"{"plus":"L","minus":["L","L","L"]}"#).is_err());
        assert_eq!(Element::from_json(r#"{"plus":"L","minus":"L"}"#).unwrap(), Element::identity());
    }

    #[test]
    fn rotation_involution() {
        let y0 = Element::generator(0).unwrap();
        assert_eq!(y0.rotate180().rotate180(), y0);
        assert_eq!(Element::identity().rotate180(), Element::identity());
    }
}
