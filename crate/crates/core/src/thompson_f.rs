//! Thompson's group F as reduced binary tree pairs, and its inclusion into F₃.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::tree::TernaryTree;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<[BinaryTree; 2]>),
}

impl BinaryTree {
    pub fn node(a: BinaryTree, b: BinaryTree) -> Self {
        BinaryTree::Node(Box::new([a, b]))
    }

    pub fn caret() -> Self {
        Self::node(BinaryTree::Leaf, BinaryTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(c) => c[0].leaf_count() + c[1].leaf_count(),
        }
    }

    /// Adds a middle leaf at every internal vertex.
    pub fn to_ternary(&self) -> TernaryTree {
        match self {
            BinaryTree::Leaf => TernaryTree::Leaf,
            BinaryTree::Node(c) => TernaryTree::caret(c[0].to_ternary(), TernaryTree::Leaf, c[1].to_ternary()),
        }
    }

    fn carets(&self) -> Vec<usize> {
        fn walk(t: &BinaryTree, off: &mut usize, out: &mut Vec<usize>) {
            match t {
                BinaryTree::Leaf => *off += 1,
                BinaryTree::Node(c) => {
                    if c.iter().all(|x| *x == BinaryTree::Leaf) {
                        out.push(*off);
                        *off += 2;
                    } else {
                        walk(&c[0], off, out);
                        walk(&c[1], off, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut 0, &mut out);
        out
    }

    fn collapse(&self, start: usize, off: &mut usize) -> Option<BinaryTree> {
        match self {
            BinaryTree::Leaf => {
                *off += 1;
                None
            }
            BinaryTree::Node(c) => {
                if *off == start && c.iter().all(|x| *x == BinaryTree::Leaf) {
                    return Some(BinaryTree::Leaf);
                }
                let mut kids = c.clone();
                for k in kids.iter_mut() {
                    if let Some(r) = k.collapse(start, off) {
                        *k = r;
                        return Some(BinaryTree::Node(kids));
                    }
                }
                None
            }
        }
    }

    fn leaf_paths(&self) -> Vec<Vec<u8>> {
        fn walk(t: &BinaryTree, p: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            match t {
                BinaryTree::Leaf => out.push(p.clone()),
                BinaryTree::Node(c) => {
                    for i in 0..2 {
                        p.push(i as u8);
                        walk(&c[i], p, out);
                        p.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    fn get(&self, path: &[u8]) -> Option<&BinaryTree> {
        let mut t = self;
        for &d in path {
            match t {
                BinaryTree::Leaf => return None,
                BinaryTree::Node(c) => t = &c[d as usize],
            }
        }
        Some(t)
    }

    fn graft(&self, path: &[u8], sub: BinaryTree) -> BinaryTree {
        match (self, path.split_first()) {
            (_, None) => sub,
            (BinaryTree::Node(c), Some((&d, rest))) => {
                let mut kids = c.clone();
                kids[d as usize] = kids[d as usize].graft(rest, sub);
                BinaryTree::Node(kids)
            }
            (BinaryTree::Leaf, Some(_)) => panic!("graft below a leaf"),
        }
    }

    fn union(&self, other: &BinaryTree) -> BinaryTree {
        match (self, other) {
            (BinaryTree::Leaf, t) | (t, BinaryTree::Leaf) => t.clone(),
            (BinaryTree::Node(a), BinaryTree::Node(b)) => BinaryTree::node(a[0].union(&b[0]), a[1].union(&b[1])),
        }
    }
}

/// An element of F as a reduced binary tree pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryPair {
    plus: BinaryTree,
    minus: BinaryTree,
}

impl BinaryPair {
    pub fn identity() -> Self {
        BinaryPair { plus: BinaryTree::Leaf, minus: BinaryTree::Leaf }
    }

    pub fn new(plus: BinaryTree, minus: BinaryTree) -> Result<Self> {
        if plus.leaf_count() != minus.leaf_count() {
            return Err(Error::MalformedPair("binary trees have different leaf counts".into()));
        }
        let (mut plus, mut minus) = (plus, minus);
        loop {
            let a = plus.carets();
            let b = minus.carets();
            let Some(&i) = a.iter().find(|i| b.contains(i)) else { break };
            plus = plus.collapse(i, &mut 0).unwrap();
            minus = minus.collapse(i, &mut 0).unwrap();
        }
        Ok(BinaryPair { plus, minus })
    }

    pub fn x0() -> Self {
        use BinaryTree as B;
        BinaryPair { plus: B::node(B::caret(), B::Leaf), minus: B::node(B::Leaf, B::caret()) }
    }

    pub fn x1() -> Self {
        use BinaryTree as B;
        BinaryPair {
            plus: B::node(B::Leaf, B::node(B::caret(), B::Leaf)),
            minus: B::node(B::Leaf, B::node(B::Leaf, B::caret())),
        }
    }

    pub fn plus(&self) -> &BinaryTree {
        &self.plus
    }

    pub fn minus(&self) -> &BinaryTree {
        &self.minus
    }

    pub fn invert(&self) -> Self {
        BinaryPair { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    /// `self · other` = `other ∘ self`.
    pub fn multiply(&self, other: &BinaryPair) -> Self {
        let common = self.minus.union(&other.plus);
        let grow = |base: &BinaryTree, side: &BinaryTree| {
            let mut out = base.clone();
            for (a, b) in base.leaf_paths().iter().zip(side.leaf_paths()) {
                let sub = common.get(&b).unwrap().clone();
                if sub != BinaryTree::Leaf {
                    out = out.graft(a, sub);
                }
            }
            out
        };
        BinaryPair::new(grow(&self.plus, &self.minus), grow(&other.minus, &other.plus)).expect("equal leaf counts")
    }

    /// Parses a word such as `x0*x1^-1*x0^2`; `1` is the identity.
    pub fn parse_word(src: &str) -> Result<Self> {
        let err = |column: usize, message: String| Error::Parse { line: 1, column, message };
        let bytes = src.as_bytes();
        let mut i = 0;
        let mut acc = BinaryPair::identity();
        let skip = |i: &mut usize| {
            while *i < bytes.len() && (bytes[*i].is_ascii_whitespace() || bytes[*i] == b'*') {
                *i += 1;
            }
        };
        skip(&mut i);
        if i == bytes.len() {
            return Err(err(1, "empty F-word".into()));
        }
        while i < bytes.len() {
            let start = i;
            let g = match bytes.get(i..i + 2) {
                Some(b"x0") => {
                    i += 2;
                    BinaryPair::x0()
                }
                Some(b"x1") => {
                    i += 2;
                    BinaryPair::x1()
                }
                _ if bytes[i] == b'1' => {
                    i += 1;
                    BinaryPair::identity()
                }
                _ => return Err(err(start + 1, "expected x0, x1 or 1".into())),
            };
            let mut power: i64 = 1;
            if bytes.get(i) == Some(&b'^') {
                i += 1;
                let s = i;
                if bytes.get(i) == Some(&b'-') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = src[s..i].parse().map_err(|_| err(s + 1, "expected an integer exponent".into()))?;
                if power.unsigned_abs() > 64 {
                    return Err(err(s + 1, "exponent too large".into()));
                }
            }
            let base = if power < 0 { g.invert() } else { g };
            for _ in 0..power.unsigned_abs() {
                acc = acc.multiply(&base);
            }
            skip(&mut i);
        }
        Ok(acc)
    }
}

/// The inclusion F → F₃ adding a middle leaf at every vertex.
pub fn include_f(b: &BinaryPair) -> Element {
    Element::reduce(b.plus.to_ternary(), b.minus.to_ternary()).expect("inclusion preserves leaf counts")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_map_to_y0_y2() {
        assert_eq!(include_f(&BinaryPair::x0()), Element::generator(0).unwrap());
        assert_eq!(include_f(&BinaryPair::x1()), Element::generator(2).unwrap());
        assert!(include_f(&BinaryPair::identity()).is_identity());
    }

    #[test]
    fn f_relation() {
        // x1 x0 = x0 x2 with x2 = x0^-1 x1 x0
        let x0 = BinaryPair::x0();
        let x1 = BinaryPair::x1();
        let x2 = x0.invert().multiply(&x1).multiply(&x0);
        let x3 = x0.invert().multiply(&x2).multiply(&x0);
        assert_eq!(x2.multiply(&x1), x1.multiply(&x3));
        assert_eq!(x0.multiply(&x0.invert()), BinaryPair::identity());
    }

    #[test]
    fn words() {
        let w = BinaryPair::parse_word("x0*x1^-1 x0^2").unwrap();
        let x0 = BinaryPair::x0();
        let manual = x0.multiply(&BinaryPair::x1().invert()).multiply(&x0).multiply(&x0);
        assert_eq!(w, manual);
        assert!(BinaryPair::parse_word("x2").is_err());
        assert!(BinaryPair::parse_word("").is_err());
    }
}
