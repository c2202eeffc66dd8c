//! Ordered rooted ternary trees.

use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::address::Address;
use crate::error::{Error, Result};

/// A rooted ternary tree: each vertex is a leaf or has exactly three ordered
/// children (left, middle, right).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum TernaryTree {
    #[default]
    Leaf,
    Caret(Box<[TernaryTree; 3]>),
}

impl TernaryTree {
    pub fn leaf() -> Self {
        TernaryTree::Leaf
    }

    pub fn caret(left: TernaryTree, middle: TernaryTree, right: TernaryTree) -> Self {
        TernaryTree::Caret(Box::new([left, middle, right]))
    }

    /// A single caret with three leaves.
    pub fn single_caret() -> Self {
        Self::caret(Self::Leaf, Self::Leaf, Self::Leaf)
    }

    /// The complete ternary tree of the given depth.
    pub fn full(depth: usize) -> Self {
        if depth == 0 {
            Self::Leaf
        } else {
            let c = Self::full(depth - 1);
            Self::caret(c.clone(), c.clone(), c)
        }
    }

    /// Builds the tree whose internal vertices are exactly `internal`.
    /// The set must be prefix-closed.
    pub fn from_internal<A: AsRef<str>>(internal: &[A]) -> Result<Self> {
        let addrs = internal.iter().map(|s| s.as_ref().parse::<Address>()).collect::<Result<Vec<_>>>()?;
        let mut t = TernaryTree::Leaf;
        let mut sorted = addrs.clone();
        sorted.sort_by_key(|a| a.len());
        sorted.dedup();
        for a in &sorted {
            t = t
                .graft(a, TernaryTree::single_caret())
                .map_err(|_| Error::MalformedPair(format!("internal vertex set is not prefix-closed at {a}")))?;
        }
        Ok(t)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TernaryTree::Leaf)
    }

    pub fn children(&self) -> Option<&[TernaryTree; 3]> {
        match self {
            TernaryTree::Leaf => None,
            TernaryTree::Caret(c) => Some(c),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TernaryTree::Leaf => 1,
            TernaryTree::Caret(c) => c.iter().map(|t| t.leaf_count()).sum(),
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            TernaryTree::Leaf => 0,
            TernaryTree::Caret(c) => 1 + c.iter().map(|t| t.internal_count()).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TernaryTree::Leaf => 0,
            TernaryTree::Caret(c) => 1 + c.iter().map(|t| t.depth()).max().unwrap_or(0),
        }
    }

    /// Leaf addresses in left-to-right order.
    pub fn leaves(&self) -> Vec<Address> {
        let mut out = Vec::with_capacity(self.leaf_count());
        let mut path = Vec::new();
        fn walk(t: &TernaryTree, path: &mut Vec<u8>, out: &mut Vec<Address>) {
            match t {
                TernaryTree::Leaf => out.push(Address::from_digits(path).unwrap()),
                TernaryTree::Caret(c) => {
                    for (i, ch) in c.iter().enumerate() {
                        path.push(i as u8);
                        walk(ch, path, out);
                        path.pop();
                    }
                }
            }
        }
        walk(self, &mut path, &mut out);
        out
    }

    /// Internal vertex addresses in preorder.
    pub fn internal_vertices(&self) -> Vec<Address> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        fn walk(t: &TernaryTree, path: &mut Vec<u8>, out: &mut Vec<Address>) {
            if let TernaryTree::Caret(c) = t {
                out.push(Address::from_digits(path).unwrap());
                for (i, ch) in c.iter().enumerate() {
                    path.push(i as u8);
                    walk(ch, path, out);
                    path.pop();
                }
            }
        }
        walk(self, &mut path, &mut out);
        out
    }

    /// All vertex addresses V(T), internal and leaves, in preorder.
    pub fn vertices(&self) -> Vec<Address> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        fn walk(t: &TernaryTree, path: &mut Vec<u8>, out: &mut Vec<Address>) {
            out.push(Address::from_digits(path).unwrap());
            if let TernaryTree::Caret(c) = t {
                for (i, ch) in c.iter().enumerate() {
                    path.push(i as u8);
                    walk(ch, path, out);
                    path.pop();
                }
            }
        }
        walk(self, &mut path, &mut out);
        out
    }

    pub fn get(&self, at: &Address) -> Option<&TernaryTree> {
        let mut t = self;
        for &d in at.digits() {
            t = &t.children()?[d as usize];
        }
        Some(t)
    }

    pub fn contains_vertex(&self, at: &Address) -> bool {
        self.get(at).is_some()
    }

    pub fn is_leaf_at(&self, at: &Address) -> bool {
        matches!(self.get(at), Some(TernaryTree::Leaf))
    }

    pub fn subtree_at(&self, at: &Address) -> Result<TernaryTree> {
        self.get(at).cloned().ok_or_else(|| Error::NotAVertex(at.to_string()))
    }

    /// Replaces the leaf at `at` by `sub`.
    pub fn graft(&self, at: &Address, sub: TernaryTree) -> Result<TernaryTree> {
        let mut out = self.clone();
        let mut slot = &mut out;
        for &d in at.digits() {
            slot = match slot {
                TernaryTree::Caret(c) => &mut c[d as usize],
                TernaryTree::Leaf => return Err(Error::NotALeaf(at.to_string())),
            };
        }
        if !slot.is_leaf() {
            return Err(Error::NotALeaf(at.to_string()));
        }
        *slot = sub;
        Ok(out)
    }

    /// Replaces the subtree at `at` by a leaf.
    pub fn prune(&self, at: &Address) -> Result<TernaryTree> {
        let mut out = self.clone();
        let mut slot = &mut out;
        for &d in at.digits() {
            slot = match slot {
                TernaryTree::Caret(c) => &mut c[d as usize],
                TernaryTree::Leaf => return Err(Error::NotAVertex(at.to_string())),
            };
        }
        *slot = TernaryTree::Leaf;
        Ok(out)
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> TernaryTree {
        match self {
            TernaryTree::Leaf => TernaryTree::Leaf,
            TernaryTree::Caret(c) => TernaryTree::caret(c[2].mirror(), c[1].mirror(), c[0].mirror()),
        }
    }

    /// Index (left to right) of the leaf at `at`.
    pub fn leaf_index(&self, at: &Address) -> Option<usize> {
        let mut t = self;
        let mut idx = 0;
        for &d in at.digits() {
            let c = t.children()?;
            idx += c[..d as usize].iter().map(|s| s.leaf_count()).sum::<usize>();
            t = &c[d as usize];
        }
        t.is_leaf().then_some(idx)
    }

    /// Address of the vertex whose leaves are exactly the block
    /// `[start, start + len)`, if there is one.
    pub fn vertex_with_leaf_block(&self, start: usize, len: usize) -> Option<Address> {
        let mut t = self;
        let mut offset = 0;
        let mut path = Vec::new();
        loop {
            let n = t.leaf_count();
            if offset == start && n == len {
                return Some(Address::from_digits(&path).unwrap());
            }
            let c = t.children()?;
            let mut found = false;
            for (i, ch) in c.iter().enumerate() {
                let m = ch.leaf_count();
                if start >= offset && start + len <= offset + m {
                    path.push(i as u8);
                    t = ch;
                    found = true;
                    break;
                }
                offset += m;
            }
            if !found {
                return None;
            }
        }
    }

    /// Start indices of exposed carets: internal vertices whose three
    /// children are all leaves, keyed by the index of their left leaf.
    pub fn exposed_carets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn walk(t: &TernaryTree, offset: &mut usize, out: &mut Vec<usize>) {
            match t {
                TernaryTree::Leaf => *offset += 1,
                TernaryTree::Caret(c) => {
                    if c.iter().all(|ch| ch.is_leaf()) {
                        out.push(*offset);
                        *offset += 3;
                    } else {
                        for ch in c.iter() {
                            walk(ch, offset, out);
                        }
                    }
                }
            }
        }
        let mut offset = 0;
        walk(self, &mut offset, &mut out);
        out
    }

    /// Collapses the exposed caret whose left leaf has index `start`.
    pub fn collapse_caret(&self, start: usize) -> Option<TernaryTree> {
        fn walk(t: &TernaryTree, offset: &mut usize, start: usize) -> Option<TernaryTree> {
            match t {
                TernaryTree::Leaf => {
                    *offset += 1;
                    None
                }
                TernaryTree::Caret(c) => {
                    if *offset == start && c.iter().all(|ch| ch.is_leaf()) {
                        return Some(TernaryTree::Leaf);
                    }
                    let mut kids = c.clone();
                    for ch in kids.iter_mut() {
                        if let Some(r) = walk(ch, offset, start) {
                            *ch = r;
                            return Some(TernaryTree::Caret(kids));
                        }
                    }
                    None
                }
            }
        }
        let mut offset = 0;
        walk(self, &mut offset, start)
    }

    /// Adds a caret below the leaf with index `index`.
    pub fn expand_leaf(&self, index: usize) -> Option<TernaryTree> {
        fn walk(t: &TernaryTree, offset: &mut usize, index: usize) -> Option<TernaryTree> {
            match t {
                TernaryTree::Leaf => {
                    if *offset == index {
                        return Some(TernaryTree::single_caret());
                    }
                    *offset += 1;
                    None
                }
                TernaryTree::Caret(c) => {
                    let mut kids = c.clone();
                    for ch in kids.iter_mut() {
                        let n = ch.leaf_count();
                        if index < *offset + n {
                            *ch = walk(ch, offset, index)?;
                            return Some(TernaryTree::Caret(kids));
                        }
                        *offset += n;
                    }
                    None
                }
            }
        }
        let mut offset = 0;
        walk(self, &mut offset, index)
    }

    /// Balanced-parenthesis word: `L` for a leaf, `(a b c)` for a caret.
    pub fn to_word(&self) -> String {
        let mut s = String::new();
        fn walk(t: &TernaryTree, s: &mut String) {
            match t {
                TernaryTree::Leaf => s.push('L'),
                TernaryTree::Caret(c) => {
                    s.push('(');
                    for (i, ch) in c.iter().enumerate() {
                        if i > 0 {
                            s.push(' ');
                        }
                        walk(ch, s);
                    }
                    s.push(')');
                }
            }
        }
        walk(self, &mut s);
        s
    }
}

impl fmt::Debug for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

impl Serialize for TernaryTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TernaryTree::Leaf => s.serialize_str("L"),
            TernaryTree::Caret(c) => {
                let mut seq = s.serialize_seq(Some(3))?;
                for ch in c.iter() {
                    seq.serialize_element(ch)?;
                }
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for TernaryTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct TreeVisitor;

        impl<'de> Visitor<'de> for TreeVisitor {
            type Value = TernaryTree;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"L\" or an array of three trees")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<TernaryTree, E> {
                if v == "L" {
                    Ok(TernaryTree::Leaf)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<TernaryTree, A::Error> {
                let mut kids = Vec::with_capacity(3);
                while let Some(t) = seq.next_element::<TernaryTree>()? {
                    if kids.len() == 3 {
                        return Err(de::Error::invalid_length(4, &self));
                    }
                    kids.push(t);
                }
                let [a, b, c]: [TernaryTree; 3] =
                    kids.try_into().map_err(|v: Vec<_>| de::Error::invalid_length(v.len(), &self))?;
                Ok(TernaryTree::caret(a, b, c))
            }
        }

        d.deserialize_any(TreeVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addrs(v: &[&str]) -> Vec<Address> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn leaves_in_order() {
        assert_eq!(TernaryTree::Leaf.leaves(), addrs(&["e"]));
        assert_eq!(TernaryTree::single_caret().leaves(), addrs(&["0", "1", "2"]));
        let t = TernaryTree::from_internal(&["", "1"]).unwrap();
        assert_eq!(t.leaves(), addrs(&["0", "10", "11", "12", "2"]));
    }

    #[test]
    fn counts() {
        let t = TernaryTree::from_internal(&["", "1", "12", "0"]).unwrap();
        assert_eq!(t.internal_count(), 4);
        assert_eq!(t.leaf_count(), 2 * 4 + 1);
        assert_eq!(t.vertices().len(), 4 + 9);
    }

    #[test]
    fn graft_and_subtree() {
        let t = TernaryTree::from_internal(&["", "0"]).unwrap();
        let a: Address = "1".parse().unwrap();
        assert_eq!(t.graft(&a, TernaryTree::Leaf).unwrap(), t);
        assert_eq!(t.subtree_at(&Address::root()).unwrap(), t);
        let g = TernaryTree::single_caret().graft(&a, TernaryTree::single_caret()).unwrap();
        assert_eq!(g.leaves(), addrs(&["0", "10", "11", "12", "2"]));
        assert_eq!(g.subtree_at(&a).unwrap(), TernaryTree::single_caret());
        let s = TernaryTree::from_internal(&["", "2"]).unwrap();
        let h = t.graft(&a, s.clone()).unwrap();
        assert_eq!(h.subtree_at(&a).unwrap(), s);
        assert_eq!(h.leaf_count(), t.leaf_count() - 1 + s.leaf_count());
        assert!(t.graft(&"0".parse().unwrap(), TernaryTree::Leaf).is_err());
        assert!(t.subtree_at(&"22".parse().unwrap()).is_err());
    }

    #[test]
    fn leaf_blocks() {
        let t = TernaryTree::from_internal(&["", "1", "12"]).unwrap();
        // leaves: 0 10 11 120 121 122 12? no: 0,10,11,120,121,122,2
        assert_eq!(t.leaf_index(&"120".parse().unwrap()), Some(3));
        assert_eq!(t.vertex_with_leaf_block(3, 3), Some("12".parse().unwrap()));
        assert_eq!(t.vertex_with_leaf_block(1, 5), Some("1".parse().unwrap()));
        assert_eq!(t.vertex_with_leaf_block(0, 7), Some(Address::root()));
        assert_eq!(t.vertex_with_leaf_block(2, 3), None);
    }

    #[test]
    fn carets() {
        let t = TernaryTree::from_internal(&["", "0", "2"]).unwrap();
        assert_eq!(t.exposed_carets(), vec![0, 4]);
        let c = t.collapse_caret(4).unwrap();
        assert_eq!(c, TernaryTree::from_internal(&["", "0"]).unwrap());
        assert_eq!(c.expand_leaf(4).unwrap(), t);
        assert!(t.collapse_caret(1).is_none());
    }

    #[test]
    fn json_shape() {
        let t = TernaryTree::from_internal(&["", "1"]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"["L",["L","L","L"],"L"]"#);
        let back: TernaryTree = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<TernaryTree>(r#"["L","L"]"#).is_err());
        assert!(serde_json::from_str::<TernaryTree>(r#"["L","L","L","L"]"#).is_err());
        assert!(serde_json::from_str::<TernaryTree>(r#""X""#).is_err());
    }

    #[test]
    fn mirror_is_involution() {
        let t = TernaryTree::from_internal(&["", "0", "01"]).unwrap();
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(t.mirror(), TernaryTree::from_internal(&["", "2", "21"]).unwrap());
    }
}
