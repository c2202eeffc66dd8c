//! Jones' construction: from an element of F₃ to a pointed, oriented link
//! diagram.
//!
//! The domain tree is drawn above, the range tree flipped below, leaf `i` of
//! one glued to leaf `i` of the other and the two roots joined by a closure
//! arc on the left. Every internal vertex becomes a crossing whose two strands
//! join parent↔middle and left↔right.

use std::collections::BTreeSet;

use crate::address::Address;
use crate::diagram::{Crossing, Dart, LinkDiagram};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::tree::TernaryTree;

/// Which strand passes over at the crossings of each tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingConvention {
    /// Parent↔middle strand over at vertices of the domain tree.
    pub upper_pm_over: bool,
    /// Parent↔middle strand over at vertices of the range tree.
    pub lower_pm_over: bool,
}

/// The convention used throughout; pinned by calibration tests.
pub const CONVENTION: CrossingConvention = CrossingConvention { upper_pm_over: false, lower_pm_over: false };

/// Requested direction of the component through a domain leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationHint {
    pub leaf: Address,
    /// Traverse the leaf edge from the upper tree to the lower tree.
    pub downward: bool,
}

impl OrientationHint {
    pub fn down(leaf: Address) -> Self {
        OrientationHint { leaf, downward: true }
    }
}

/// A Jones diagram together with the leaf ↔ component correspondence.
#[derive(Clone, Debug)]
pub struct JonesLink {
    pub diagram: LinkDiagram,
    /// Domain-tree leaves in order.
    pub leaves: Vec<Address>,
    /// Component label of each domain leaf.
    pub leaf_components: Vec<usize>,
    /// Whether the component runs down (upper tree to lower) through each
    /// domain leaf.
    pub leaf_downward: Vec<bool>,
}

impl JonesLink {
    pub fn component_of_leaf(&self, leaf: &Address) -> Option<usize> {
        self.leaves.iter().position(|l| l == leaf).map(|i| self.leaf_components[i])
    }

    /// Leaves through which each component passes.
    pub fn component_leaves(&self) -> Vec<Vec<Address>> {
        let mut out = vec![Vec::new(); self.diagram.component_count()];
        for (l, &k) in self.leaves.iter().zip(&self.leaf_components) {
            out[k].push(l.clone());
        }
        out
    }

    /// One hint per component, at its leftmost leaf, reproducing the
    /// orientation of this diagram; re-address the leaves to carry the
    /// orientation into a larger element.
    pub fn orientation_hints(&self) -> Vec<OrientationHint> {
        let mut seen = vec![false; self.diagram.component_count()];
        let mut out = Vec::new();
        for ((leaf, &k), &down) in self.leaves.iter().zip(&self.leaf_components).zip(&self.leaf_downward) {
            if !std::mem::replace(&mut seen[k], true) {
                out.push(OrientationHint { leaf: leaf.clone(), downward: down });
            }
        }
        out
    }
}

/// Port of each role (parent, child 0, 1, 2) at a vertex.
fn role_ports(upper: bool, pm_over: bool) -> [u8; 4] {
    // counterclockwise role orders: upper [P, L, M, R], lower [P, R, M, L]
    let ccw: [usize; 4] = if upper { [0, 1, 2, 3] } else { [0, 3, 2, 1] };
    // under strand must sit on ports 0/2: start the cycle at P when P–M is
    // under, otherwise one step later
    let offset = if pm_over { 1 } else { 0 };
    let mut ports = [0u8; 4];
    for (pos, &role) in ccw.iter().enumerate() {
        ports[role] = ((pos + 4 - offset) % 4) as u8;
    }
    ports
}

struct Half {
    /// crossing index of each internal vertex, keyed by address
    index: Vec<(Address, usize)>,
    ports: [u8; 4],
    /// dart at the parent end of each leaf edge, in leaf order
    leaf_ends: Vec<Dart>,
    root: Option<usize>,
}

fn lay_out(t: &TernaryTree, base: usize, ports: [u8; 4], adj: &mut Vec<[Dart; 4]>) -> Half {
    let internal = t.internal_vertices();
    let index: Vec<(Address, usize)> = internal.iter().enumerate().map(|(i, a)| (a.clone(), base + i)).collect();
    let lookup = |a: &Address| index.iter().find(|(b, _)| b == a).map(|(_, i)| *i);
    let placeholder = Dart::new(0, 0);
    adj.resize(base + internal.len(), [placeholder; 4]);
    let mut leaf_ends = Vec::new();
    for (a, i) in &index {
        for child in 0..3u8 {
            let ca = a.child(child);
            let here = Dart::new(*i, ports[child as usize + 1]);
            if let Some(j) = lookup(&ca) {
                let there = Dart::new(j, ports[0]);
                adj[*i][here.port as usize] = there;
                adj[j][there.port as usize] = here;
            }
        }
    }
    // leaf ends in left-to-right order
    for leaf in t.leaves() {
        if let Some(parent) = leaf.parent() {
            let i = lookup(&parent).unwrap();
            let slot = *leaf.digits().last().unwrap();
            leaf_ends.push(Dart::new(i, ports[slot as usize + 1]));
        }
    }
    let root = lookup(&Address::root());
    Half { index, ports, leaf_ends, root }
}

/// The Jones diagram of `f` with the given convention and orientation hints.
pub fn jones_diagram_with(f: &Element, convention: CrossingConvention, hints: &[OrientationHint]) -> Result<JonesLink> {
    jones_diagram_of_pair(f.plus(), f.minus(), convention, hints)
}

/// As [`jones_diagram_with`] for a possibly unreduced pair.
pub fn jones_diagram_of_pair(
    plus: &TernaryTree,
    minus: &TernaryTree,
    convention: CrossingConvention,
    hints: &[OrientationHint],
) -> Result<JonesLink> {
    if plus.leaf_count() != minus.leaf_count() {
        return Err(Error::MalformedPair("leaf counts differ".into()));
    }
    let leaves = plus.leaves();
    if plus.is_leaf() {
        let diagram = LinkDiagram::unlink(1);
        return Ok(JonesLink { diagram, leaves, leaf_components: vec![0], leaf_downward: vec![true] });
    }
    let mut adj: Vec<[Dart; 4]> = Vec::new();
    let up = lay_out(plus, 0, role_ports(true, convention.upper_pm_over), &mut adj);
    let base = adj.len();
    let down = lay_out(minus, base, role_ports(false, convention.lower_pm_over), &mut adj);
    let _ = (&up.index, &down.index);
    for (a, b) in up.leaf_ends.iter().zip(&down.leaf_ends) {
        adj[a.crossing][a.port as usize] = *b;
        adj[b.crossing][b.port as usize] = *a;
    }
    let (ru, rd) = (up.root.unwrap(), down.root.unwrap());
    let (cu, cd) = (Dart::new(ru, up.ports[0]), Dart::new(rd, down.ports[0]));
    adj[cu.crossing][cu.port as usize] = cd;
    adj[cd.crossing][cd.port as usize] = cu;

    let n = adj.len();
    // trace strands in an arbitrary direction
    let step = |d: Dart| -> Dart {
        let a = adj[d.crossing][d.port as usize];
        a.opposite()
    };
    let mut strand_of = vec![[usize::MAX; 2]; n];
    let mut walks: Vec<Vec<Dart>> = Vec::new();
    for i in 0..n {
        for s in 0..2u8 {
            if strand_of[i][s as usize] != usize::MAX {
                continue;
            }
            let start = Dart::new(i, s + 2);
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                strand_of[cur.crossing][cur.strand()] = walks.len();
                walk.push(cur);
                cur = step(cur);
                if cur == start {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    let comp_of = |d: Dart| strand_of[d.crossing][d.strand()];
    let central = comp_of(cd);
    let leaf_walk: Vec<usize> = up.leaf_ends.iter().map(|&d| comp_of(d)).collect();

    // desired exit darts: closure leaves the lower root, then hints, then
    // the leftmost leaf of each remaining component downward
    let mut wanted: Vec<Option<Dart>> = vec![None; walks.len()];
    wanted[central] = Some(cd);
    for h in hints {
        let k = leaves.iter().position(|l| *l == h.leaf).ok_or_else(|| Error::NotALeaf(h.leaf.to_string()))?;
        let d = up.leaf_ends[k];
        let w = leaf_walk[k];
        if w == central {
            continue;
        }
        let exit = if h.downward { d } else { adj[d.crossing][d.port as usize] };
        match wanted[w] {
            None => wanted[w] = Some(exit),
            Some(prev) => {
                if walks[w].contains(&prev) != walks[w].contains(&exit) {
                    return Err(Error::Consistency(format!(
                        "conflicting orientation hints on the component through {}",
                        h.leaf
                    )));
                }
            }
        }
    }
    for (k, &w) in leaf_walk.iter().enumerate() {
        if wanted[w].is_none() {
            wanted[w] = Some(up.leaf_ends[k]);
        }
    }
    // labels: central first, then by leftmost leaf
    let mut label = vec![usize::MAX; walks.len()];
    label[central] = 0;
    let mut next = 1;
    for &w in &leaf_walk {
        if label[w] == usize::MAX {
            label[w] = next;
            next += 1;
        }
    }
    if label.contains(&usize::MAX) {
        return Err(Error::Consistency("a component misses every domain leaf".into()));
    }
    let keep: Vec<bool> = walks.iter().enumerate().map(|(w, walk)| walk.contains(&wanted[w].unwrap())).collect();
    let leaf_downward = up.leaf_ends.iter().zip(&leaf_walk).map(|(d, &w)| walks[w].contains(d) == keep[w]).collect();
    let mut crossings: Vec<Crossing> =
        adj.iter().map(|&a| Crossing { adj: a, comp: [0, 0], forward: [true, true] }).collect();
    for (w, walk) in walks.iter().enumerate() {
        for &d in walk {
            let exit = if keep[w] { d } else { adj[d.crossing][d.port as usize] };
            let c = &mut crossings[exit.crossing];
            c.comp[exit.strand()] = label[w];
            c.forward[exit.strand()] = exit.port >= 2;
        }
    }
    let diagram = LinkDiagram::from_parts(crossings, Vec::new(), walks.len(), 0)?;
    let leaf_components = leaf_walk.iter().map(|&w| label[w]).collect();
    Ok(JonesLink { diagram, leaves, leaf_components, leaf_downward })
}

/// The pointed, oriented Jones diagram L(f).
pub fn jones_diagram(f: &Element) -> JonesLink {
    jones_diagram_with(f, CONVENTION, &[]).expect("no hints to conflict")
}

/// L(f) with orientation hints for non-central components.
pub fn jones_diagram_hinted(f: &Element, hints: &[OrientationHint]) -> Result<JonesLink> {
    jones_diagram_with(f, CONVENTION, hints)
}

/// Partition of the domain leaves by component.
pub fn leaf_component_partition(f: &Element) -> Vec<BTreeSet<Address>> {
    jones_diagram(f).component_leaves().into_iter().map(|v| v.into_iter().collect()).collect()
}

/// The knot 𝒦(f): the marked component alone.
pub fn central_knot(f: &Element) -> LinkDiagram {
    let j = jones_diagram(f);
    j.diagram.sublink(&[j.diagram.marked()]).expect("marked component exists")
}

/// Moves the marking to the component through the rightmost domain leaf λ:
/// T₊' = (T₊, caret, leaf) and T₋' = (T₋ with a caret at its rightmost leaf,
/// leaf, leaf). Leaf β of T₊ becomes leaf 0β.
pub fn make_rightmost_central(f: &Element) -> Element {
    let mu = f.minus().leaves().pop().expect("a tree has leaves");
    let plus = TernaryTree::caret(f.plus().clone(), TernaryTree::single_caret(), TernaryTree::Leaf);
    let minus = TernaryTree::caret(
        f.minus().graft(&mu, TernaryTree::single_caret()).expect("rightmost leaf"),
        TernaryTree::Leaf,
        TernaryTree::Leaf,
    );
    Element::from_reduced(plus, minus).expect("the wrapped pair stays reduced")
}

/// One step of moving C_α to the right: carets at α and at its right
/// neighbour α′ above, and the tree (caret, leaf, leaf) at f(α′) below.
/// Returns the new element and the leaf α′2, which now lies on C_α.
pub fn move_component_step(f: &Element, alpha: &Address) -> Result<(Element, Address)> {
    let leaves = f.plus().leaves();
    let i = leaves
        .iter()
        .position(|l| l == alpha)
        .ok_or_else(|| Error::InvalidAddress(format!("{alpha} is not a leaf of the domain tree")))?;
    let next = leaves.get(i + 1).ok_or_else(|| Error::Domain(format!("{alpha} is already the rightmost leaf")))?;
    let image = f.apply_address(next)?;
    let caret = TernaryTree::single_caret;
    let plus = f.plus().graft(alpha, caret())?.graft(next, caret())?;
    let gadget = TernaryTree::caret(caret(), TernaryTree::Leaf, TernaryTree::Leaf);
    let minus = f.minus().graft(&image, gadget)?;
    Ok((Element::from_reduced(plus, minus)?, next.child(2)))
}

/// Iterates the step: returns f′ with L(f′) = L(f) and C_α through the
/// rightmost domain leaf.
pub fn move_component_to_rightmost(f: &Element, alpha: &Address) -> Result<Element> {
    if !f.plus().is_leaf_at(alpha) {
        return Err(Error::InvalidAddress(format!("{alpha} is not a leaf of the domain tree")));
    }
    let mut f = f.clone();
    let mut alpha = alpha.clone();
    while f.plus().leaves().last() != Some(&alpha) {
        let (g, a) = move_component_step(&f, &alpha)?;
        f = g;
        alpha = a;
    }
    Ok(f)
}

/// An element with the same link as `f` whose marked component is C_α.
pub fn retarget_central(f: &Element, alpha: &Address) -> Result<Element> {
    Ok(make_rightmost_central(&move_component_to_rightmost(f, alpha)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::{fingerprint, unoriented_fingerprint};
    use crate::group::random_nontrivial;
    use crate::invariants::{jones_polynomial, InvariantOptions};
    use crate::poly::LaurentPoly;
    use crate::thompson_f::BinaryPair;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn opts() -> InvariantOptions {
        InvariantOptions::default()
    }

    #[test]
    fn identity_is_trivial_knot() {
        let j = jones_diagram(&Element::identity());
        assert_eq!(j.diagram.crossing_count(), 0);
        assert_eq!(j.diagram.component_count(), 1);
    }

    #[test]
    fn include_x0_is_unknot() {
        let f = crate::thompson_f::include_f(&BinaryPair::x0());
        let v = jones_polynomial(&jones_diagram(&f).diagram, &opts()).unwrap();
        assert_eq!(v, LaurentPoly::one());
    }

    #[test]
    fn crossings_match_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let f = random_nontrivial(&mut rng, 5);
            let j = jones_diagram(&f);
            assert_eq!(j.diagram.crossing_count(), 2 * f.size());
            assert!(j.diagram.is_planar());
            // every component meets an upper leaf
            assert!(j.component_leaves().iter().all(|l| !l.is_empty()));
        }
    }

    #[test]
    fn rightmost_becomes_central() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let f = random_nontrivial(&mut rng, 4);
            let j = jones_diagram(&f);
            let lambda = f.plus().leaves().pop().unwrap();
            let c = j.component_of_leaf(&lambda).unwrap();
            let g = make_rightmost_central(&f);
            let expected = unoriented_fingerprint(&j.diagram.with_marked(c).unwrap(), &opts(), true);
            let got = unoriented_fingerprint(&jones_diagram(&g).diagram, &opts(), true);
            assert_eq!(got.unwrap(), expected.unwrap());
            let jg = jones_diagram(&g);
            assert_eq!(jg.component_of_leaf(&Address::repeat(0, 1).concat(&lambda)), Some(jg.diagram.marked()));
        }
    }

    #[test]
    fn move_leaf_keeps_link() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let f = random_nontrivial(&mut rng, 4);
            let leaves = f.plus().leaves();
            let alpha = &leaves[leaves.len() / 3];
            let before = unoriented_fingerprint(&jones_diagram(&f).diagram, &opts(), true).unwrap();
            let g = move_component_to_rightmost(&f, alpha).unwrap();
            let after = unoriented_fingerprint(&jones_diagram(&g).diagram, &opts(), true).unwrap();
            assert_eq!(before, after);
        }
        let f = Element::generator(1).unwrap();
        let last = f.plus().leaves().pop().unwrap();
        assert_eq!(move_component_to_rightmost(&f, &last).unwrap(), f);
        assert!(move_component_to_rightmost(&f, &"0000".parse().unwrap()).is_err());
    }

    #[test]
    fn retarget_every_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_nontrivial(&mut rng, 4);
            let j = jones_diagram(&f);
            for (c, leaves) in j.component_leaves().iter().enumerate() {
                let g = retarget_central(&f, &leaves[0]).unwrap();
                let expected = unoriented_fingerprint(&j.diagram.with_marked(c).unwrap(), &opts(), true).unwrap();
                let got = unoriented_fingerprint(&jones_diagram(&g).diagram, &opts(), true).unwrap();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn central_knot_of_connected_link() {
        let f = Element::generator(0).unwrap();
        let d = jones_diagram(&f).diagram;
        assert_eq!(d.component_count(), 1);
        assert_eq!(fingerprint(&central_knot(&f), &opts()).unwrap().jones, fingerprint(&d, &opts()).unwrap().jones);
    }

    #[test]
    fn orientation_hints_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let f = random_nontrivial(&mut rng, 5);
            let j = jones_diagram(&f);
            let hints = j.orientation_hints();
            assert_eq!(hints.len(), j.diagram.component_count());
            let again = jones_diagram_hinted(&f, &hints).unwrap();
            assert_eq!(again.diagram.crossings(), j.diagram.crossings());
            assert_eq!(again.leaf_downward, j.leaf_downward);
            // flipping a non-central component reverses it
            let off_centre = hints.iter().find(|h| j.component_of_leaf(&h.leaf) != Some(j.diagram.marked()));
            if let Some(h) = off_centre {
                let k = j.component_of_leaf(&h.leaf).unwrap();
                let flipped = OrientationHint { leaf: h.leaf.clone(), downward: !h.downward };
                let r = jones_diagram_hinted(&f, &[flipped]).unwrap();
                assert_eq!(r.diagram.linking_matrix(), j.diagram.reverse_component(k).linking_matrix());
            }
        }
    }
}
