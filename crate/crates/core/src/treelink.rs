//! Hopf-type elements Hⁿ, linking moves, and representatives of tree links.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::address::Address;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::links::{jones_diagram_hinted, JonesLink, OrientationHint};
use crate::monoid::{diamond_at, diamond_i};
use crate::tree::TernaryTree;

fn addr(s: &str) -> Address {
    s.parse().expect("static address")
}

fn repeat(prefix: &str, digit: u8, n: usize, suffix: &str) -> Address {
    addr(prefix).concat(&Address::repeat(digit, n)).concat(&addr(suffix))
}

/// The tree grafted at each step of the Hⁿ recursions: a caret with a caret
/// in the middle.
fn gadget() -> TernaryTree {
    TernaryTree::caret(TernaryTree::Leaf, TernaryTree::single_caret(), TernaryTree::Leaf)
}

/// Hⁿ for n ≠ 0; H¹ = H⁺ and H⁻¹ = H⁻ link their two components with
/// linking number ±1, and Hⁿ with linking number n.
pub fn hopf_element(n: i64) -> Result<Element> {
    if n == 0 {
        return Err(Error::Domain("H(0) is not defined".into()));
    }
    let tree = |v: &[&str]| TernaryTree::from_internal(v).expect("static tree");
    let caret = TernaryTree::single_caret;
    let k = n.unsigned_abs() as usize;
    let (mut plus, mut minus) = if n > 0 {
        (tree(&["", "1", "11"]), tree(&["", "0", "01"]))
    } else {
        (tree(&["", "1", "12"]), tree(&["", "2", "20"]))
    };
    for step in 2..=k {
        if n > 0 {
            plus = plus.graft(&repeat("11", 2, step - 2, "0"), caret())?;
            plus = plus.graft(&repeat("11", 2, step - 1, ""), caret())?;
            minus = minus.graft(&repeat("0", 2, step - 1, ""), gadget())?;
        } else {
            minus = minus.graft(&repeat("2", 0, step, ""), caret())?;
            minus = minus.graft(&repeat("2", 0, step - 1, "2"), caret())?;
            plus = plus.graft(&repeat("11", 0, step - 2, ""), gadget())?;
        }
    }
    Element::from_reduced(plus, minus)
}

/// The leaf of Hⁿ at which the first argument of a linking move attaches.
pub fn linking_address(n: i64) -> Address {
    if n > 0 {
        addr("12")
    } else {
        addr("10")
    }
}

/// l_n(f, g) = (Hⁿ ⋄₁₂ f) ⋄₀ g, or (H⁻ⁿ ⋄₁₀ f) ⋄₀ g for negative n.
pub fn linking_move(n: i64, f: &Element, g: &Element) -> Result<Element> {
    let h = hopf_element(n)?;
    let at = linking_address(n);
    if !h.plus().is_leaf_at(&at) {
        return Err(Error::Consistency(format!("{at} is not a leaf of H({n})")));
    }
    let x = diamond_at(&h, &at, f)?;
    diamond_i(&x, 0, g)
}

/// Orientation hints making the central components of f and g in l_n(f, g)
/// follow their own conventions.
pub fn linking_move_hints(n: i64, f: &Element, g: &Element) -> Vec<OrientationHint> {
    vec![
        OrientationHint::down(linking_address(n).concat(&f.central_leaf())),
        OrientationHint::down(addr("0").concat(&g.central_leaf())),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeVertex {
    pub name: String,
    pub element: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub a: String,
    pub b: String,
    pub label: i64,
}

/// A finite tree with a knot representative at each vertex and a target
/// linking number on each edge. Zero labels may be given or omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledTree {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<TreeEdge>,
}

impl LabelledTree {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// Checks names and that the edges form a forest; returns edges as
    /// index pairs with labels.
    pub fn validate(&self) -> Result<Vec<(usize, usize, i64)>> {
        if self.vertices.is_empty() {
            return Err(Error::Structure("no vertices".into()));
        }
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(v.name.as_str()) {
                return Err(Error::Structure(format!("duplicate vertex name {:?}", v.name)));
            }
        }
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut out = Vec::new();
        for e in &self.edges {
            let lookup = |s: &str| self.index_of(s).ok_or_else(|| Error::Structure(format!("unknown vertex {s:?}")));
            let (a, b) = (lookup(&e.a)?, lookup(&e.b)?);
            if a == b {
                return Err(Error::Structure(format!("self-loop at {:?}", e.a)));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::Structure(format!("edge {:?}–{:?} closes a cycle or repeats an edge", e.a, e.b)));
            }
            parent[ra] = rb;
            out.push((a, b, e.label));
        }
        Ok(out)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    name: String,
    element: serde_json::Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTree {
    vertices: Vec<RawVertex>,
    #[serde(default)]
    edges: Vec<TreeEdge>,
}

impl LabelledTree {
    /// Reads the JSON form; each vertex element is either an Element or an
    /// expression string.
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawTree = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        let vertices = raw
            .vertices
            .into_iter()
            .map(|v| {
                let element = match v.element {
                    serde_json::Value::String(s) => crate::expr::eval_str(&s)?.element,
                    other => serde_json::from_value(other).map_err(|e| Error::Json(e.to_string()))?,
                };
                Ok(TreeVertex { name: v.name, element })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabelledTree { vertices, edges: raw.edges })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn elements(&self) -> Vec<Element> {
        self.vertices.iter().map(|v| v.element.clone()).collect()
    }
}

/// Expression tree recording how a tree-link representative is assembled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum PlanNode {
    /// The element of vertex `index`.
    Vertex { index: usize },
    /// The identity, standing in for a vertex that was later extended.
    Trivial,
    /// ⊔(left, right).
    Sqcup { left: Box<PlanNode>, right: Box<PlanNode> },
    /// base ⋄_at l_n(first, second).
    Attach { base: Box<PlanNode>, at: Address, n: i64, first: Box<PlanNode>, second: Box<PlanNode> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildPlan {
    pub root: PlanNode,
    /// Attachment address α_i of every vertex's element.
    pub addresses: Vec<Address>,
    /// Order in which vertices were peeled off (last peeled first).
    pub peel_order: Vec<usize>,
}

impl BuildPlan {
    /// Evaluates the plan, substituting the identity for the vertices in
    /// `trivial`. The pair is assembled without intermediate reduction and
    /// reduced once at the end.
    pub fn evaluate(&self, elements: &[Element], trivial: &BTreeSet<usize>) -> Result<Element> {
        eval_node(&self.root, elements, trivial)
    }

    /// Orientation hints: every vertex knot follows its own convention.
    pub fn hints(&self, elements: &[Element]) -> Vec<OrientationHint> {
        self.addresses.iter().zip(elements).map(|(a, g)| OrientationHint::down(a.concat(&g.central_leaf()))).collect()
    }

    /// Domain leaf through which the knot of each vertex passes.
    pub fn vertex_leaves(&self, elements: &[Element]) -> Vec<Address> {
        self.addresses.iter().zip(elements).map(|(a, g)| a.concat(&g.central_leaf())).collect()
    }
}

/// A tree pair kept exactly as built, so that attachment addresses stay
/// valid when identities are substituted.
struct RawPair {
    plus: TernaryTree,
    minus: TernaryTree,
}

impl RawPair {
    fn of(f: &Element) -> Self {
        RawPair { plus: f.plus().clone(), minus: f.minus().clone() }
    }

    fn identity() -> Self {
        RawPair { plus: TernaryTree::Leaf, minus: TernaryTree::Leaf }
    }

    /// Grafts `x` at the domain leaf `at` and at the matching range leaf.
    fn graft(self, at: &Address, x: RawPair) -> Result<Self> {
        let k = self
            .plus
            .leaf_index(at)
            .ok_or_else(|| Error::Consistency(format!("attachment address {at} is not a leaf")))?;
        let image = self.minus.leaves().swap_remove(k);
        Ok(RawPair { plus: self.plus.graft(at, x.plus)?, minus: self.minus.graft(&image, x.minus)? })
    }

    fn reduce(self) -> Result<Element> {
        Element::reduce(self.plus, self.minus)
    }
}

fn eval_raw(node: &PlanNode, g: &[Element], trivial: &BTreeSet<usize>) -> Result<RawPair> {
    match node {
        PlanNode::Vertex { index } if trivial.contains(index) => Ok(RawPair::identity()),
        PlanNode::Vertex { index } => Ok(RawPair::of(&g[*index])),
        PlanNode::Trivial => Ok(RawPair::identity()),
        PlanNode::Sqcup { left, right } => {
            let (f, h) = (eval_raw(left, g, trivial)?, eval_raw(right, g, trivial)?);
            Ok(RawPair {
                plus: TernaryTree::caret(h.plus, f.plus, TernaryTree::Leaf),
                minus: TernaryTree::caret(h.minus, f.minus, TernaryTree::Leaf),
            })
        }
        PlanNode::Attach { base, at, n, first, second } => {
            let l = RawPair::of(&hopf_element(*n)?)
                .graft(&linking_address(*n), eval_raw(first, g, trivial)?)?
                .graft(&Address::root().child(0), eval_raw(second, g, trivial)?)?;
            eval_raw(base, g, trivial)?.graft(at, l)
        }
    }
}

fn eval_node(node: &PlanNode, g: &[Element], trivial: &BTreeSet<usize>) -> Result<Element> {
    eval_raw(node, g, trivial)?.reduce()
}

/// Result of building a tree link.
#[derive(Clone, Debug, Serialize)]
pub struct TreeLinkBuild {
    pub element: Element,
    pub plan: BuildPlan,
}

impl TreeLinkBuild {
    /// The oriented link, each vertex knot following its own convention.
    pub fn link(&self, elements: &[Element]) -> Result<JonesLink> {
        jones_diagram_hinted(&self.element, &self.plan.hints(elements))
    }

    /// Component carrying each vertex knot.
    pub fn vertex_components(&self, link: &JonesLink, elements: &[Element]) -> Result<Vec<usize>> {
        self.plan
            .vertex_leaves(elements)
            .iter()
            .map(|l| {
                link.component_of_leaf(l)
                    .ok_or_else(|| Error::Consistency(format!("vertex leaf {l} is not a domain leaf")))
            })
            .collect()
    }

    /// Linking numbers indexed by vertex.
    pub fn vertex_linking(&self, elements: &[Element]) -> Result<Vec<Vec<i64>>> {
        let link = self.link(elements)?;
        let comps = self.vertex_components(&link, elements)?;
        let m = link.diagram.linking_matrix();
        Ok(comps.iter().map(|&a| comps.iter().map(|&b| m[a][b]).collect()).collect())
    }
}

/// Target linking matrix of a labelled tree, indexed by vertex.
pub fn label_matrix(tree: &LabelledTree) -> Result<Vec<Vec<i64>>> {
    let n = tree.vertices.len();
    let mut m = vec![vec![0; n]; n];
    for (a, b, l) in tree.validate()? {
        m[a][b] = l;
        m[b][a] = l;
    }
    Ok(m)
}

/// Builds a representative of the tree link by peeling off the
/// highest-indexed leaf vertex and recursing.
pub fn build_tree_link(tree: &LabelledTree) -> Result<TreeLinkBuild> {
    let edges: Vec<(usize, usize, i64)> = tree.validate()?.into_iter().filter(|e| e.2 != 0).collect();
    let elements: Vec<Element> = tree.vertices.iter().map(|v| v.element.clone()).collect();
    let alive: BTreeSet<usize> = (0..elements.len()).collect();
    let (root, addresses, peel) = build(&alive, &edges, &elements)?;
    let plan = BuildPlan {
        root,
        addresses: addresses.into_iter().map(|a| a.expect("every vertex placed")).collect(),
        peel_order: peel,
    };
    let element = plan.evaluate(&elements, &BTreeSet::new())?;
    Ok(TreeLinkBuild { element, plan })
}

type Built = (PlanNode, Vec<Option<Address>>, Vec<usize>);

fn build(alive: &BTreeSet<usize>, edges: &[(usize, usize, i64)], g: &[Element]) -> Result<Built> {
    let live_edges: Vec<&(usize, usize, i64)> =
        edges.iter().filter(|(a, b, _)| alive.contains(a) && alive.contains(b)).collect();
    let degree = |v: usize| live_edges.iter().filter(|(a, b, _)| *a == v || *b == v).count();
    if alive.len() == 1 {
        let v = *alive.iter().next().unwrap();
        let mut addrs = vec![None; g.len()];
        addrs[v] = Some(Address::root());
        return Ok((PlanNode::Vertex { index: v }, addrs, vec![v]));
    }
    let m = *alive.iter().rev().find(|&&v| degree(v) <= 1).expect("forests have leaves");
    let rest: BTreeSet<usize> = alive.iter().copied().filter(|&v| v != m).collect();
    let (sub, mut addrs, mut peel) = build(&rest, edges, g)?;
    peel.push(m);
    let edge = live_edges.iter().find(|(a, b, _)| *a == m || *b == m);
    match edge {
        None => {
            if g[m].is_identity() {
                return Err(Error::DegenerateOperand(format!(
                    "vertex {m} has the identity element but must be joined by a disjoint union"
                )));
            }
            let f_prev = eval_node(&sub, g, &BTreeSet::new())?;
            if f_prev.is_identity() {
                return Err(Error::DegenerateOperand(
                    "partial tree link evaluates to the identity before a disjoint union".into(),
                ));
            }
            for a in addrs.iter_mut().flatten() {
                *a = addr("1").concat(a);
            }
            addrs[m] = Some(addr("0"));
            let node = PlanNode::Sqcup { left: Box::new(sub), right: Box::new(PlanNode::Vertex { index: m }) };
            Ok((node, addrs, peel))
        }
        Some(&&(a, b, n)) => {
            let i = if a == m { b } else { a };
            let at = addrs[i].clone().expect("placed");
            let base = substitute(&sub, i);
            addrs[i] = Some(at.concat(&linking_address(n)));
            addrs[m] = Some(at.child(0));
            let node = PlanNode::Attach {
                base: Box::new(base),
                at,
                n,
                first: Box::new(PlanNode::Vertex { index: i }),
                second: Box::new(PlanNode::Vertex { index: m }),
            };
            Ok((node, addrs, peel))
        }
    }
}

/// The plan with vertex `i` replaced by the identity.
fn substitute(node: &PlanNode, i: usize) -> PlanNode {
    match node {
        PlanNode::Vertex { index } if *index == i => PlanNode::Trivial,
        PlanNode::Vertex { .. } => node.clone(),
        PlanNode::Sqcup { left, right } => {
            PlanNode::Sqcup { left: Box::new(substitute(left, i)), right: Box::new(substitute(right, i)) }
        }
        PlanNode::Attach { base, at, n, first, second } => PlanNode::Attach {
            base: Box::new(substitute(base, i)),
            at: at.clone(),
            n: *n,
            first: Box::new(substitute(first, i)),
            second: Box::new(substitute(second, i)),
        },
        PlanNode::Trivial => PlanNode::Trivial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::diamond;

    fn y0() -> Element {
        Element::generator(0).unwrap()
    }

    fn lk_of(f: &Element, hints: &[OrientationHint], a: &Address, b: &Address) -> i64 {
        let j = jones_diagram_hinted(f, hints).unwrap();
        let (ca, cb) = (j.component_of_leaf(a).unwrap(), j.component_of_leaf(b).unwrap());
        assert_ne!(ca, cb);
        j.diagram.linking_matrix()[ca][cb]
    }

    #[test]
    fn hopf_elements_link_once() {
        for n in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            let h = hopf_element(n).unwrap();
            let j = jones_diagram_hinted(&h, &[OrientationHint::down(addr("0"))]).unwrap();
            assert_eq!(j.diagram.component_count(), 2, "H({n})");
        }
        assert!(hopf_element(0).is_err());
    }

    #[test]
    fn linking_move_linking_numbers() {
        for n in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            let f = linking_move(n, &y0(), &y0()).unwrap();
            let hints = linking_move_hints(n, &y0(), &y0());
            let j = jones_diagram_hinted(&f, &hints).unwrap();
            assert_eq!(j.diagram.component_count(), 2);
            assert_eq!(lk_of(&f, &hints, &hints[0].leaf, &hints[1].leaf), n, "l_{n}");
        }
    }

    #[test]
    fn path_example() {
        let v = |name: &str| TreeVertex { name: name.into(), element: y0() };
        let e = |a: &str, b: &str, label| TreeEdge { a: a.into(), b: b.into(), label };
        let t = LabelledTree {
            vertices: vec![v("v1"), v("v2"), v("v3")],
            edges: vec![e("v2", "v1", 1), e("v1", "v3", -1)],
        };
        let built = build_tree_link(&t).unwrap();
        let first = linking_move(1, &y0(), &y0()).unwrap();
        let base = diamond(&Element::identity(), &linking_move(1, &Element::identity(), &y0()).unwrap());
        assert!(matches!(&built.plan.root, PlanNode::Attach { at, n: -1, .. } if *at == addr("12")));
        assert_eq!(built.plan.addresses, vec![addr("1210"), addr("0"), addr("120")]);
        let expected = diamond_at(&base, &addr("12"), &linking_move(-1, &y0(), &y0()).unwrap()).unwrap();
        assert_eq!(built.element, expected);
        assert_ne!(built.element, first);
        let elements: Vec<Element> = t.vertices.iter().map(|v| v.element.clone()).collect();
        let hints = built.plan.hints(&elements);
        let leaves = built.plan.vertex_leaves(&elements);
        assert_eq!(lk_of(&built.element, &hints, &leaves[0], &leaves[1]), 1);
        assert_eq!(lk_of(&built.element, &hints, &leaves[0], &leaves[2]), -1);
        assert_eq!(lk_of(&built.element, &hints, &leaves[1], &leaves[2]), 0);
        assert_eq!(built.vertex_linking(&elements).unwrap(), label_matrix(&t).unwrap());
        assert_eq!(built.link(&elements).unwrap().diagram.component_count(), 3);
    }

    #[test]
    fn zero_labels_are_disjoint_unions() {
        let g = |i| Element::generator(i).unwrap();
        let v = |name: &str, i| TreeVertex { name: name.into(), element: g(i) };
        let with_edges = LabelledTree {
            vertices: vec![v("a", 0), v("b", 1), v("c", 0)],
            edges: vec![
                TreeEdge { a: "a".into(), b: "c".into(), label: 0 },
                TreeEdge { a: "c".into(), b: "b".into(), label: 0 },
            ],
        };
        let without = LabelledTree { edges: vec![], ..with_edges.clone() };
        let x = build_tree_link(&with_edges).unwrap().element;
        assert_eq!(x, build_tree_link(&without).unwrap().element);
        assert_eq!(x, crate::monoid::sqcup_n(&[g(0), g(1), g(0)]).unwrap());
    }

    #[test]
    fn random_trees_realise_labels() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let vertices = (0..n)
                .map(|i| TreeVertex {
                    name: format!("v{i}"),
                    element: Element::generator(rng.gen_range(0..2)).unwrap(),
                })
                .collect();
            let edges = (1..n)
                .map(|i| TreeEdge {
                    a: format!("v{}", rng.gen_range(0..i)),
                    b: format!("v{i}"),
                    label: rng.gen_range(-3..=3),
                })
                .collect();
            let t = LabelledTree { vertices, edges };
            let built = build_tree_link(&t).unwrap();
            let link = built.link(&t.elements()).unwrap();
            assert_eq!(link.diagram.component_count(), n);
            assert_eq!(built.vertex_linking(&t.elements()).unwrap(), label_matrix(&t).unwrap());
        }
    }

    #[test]
    fn json_input() {
        let src = r#"{"vertices": [{"name": "a", "element": "y0"},
                                   {"name": "b", "element": {"plus": "L", "minus": "L"}}],
                      "edges": [{"a": "a", "b": "b", "label": 2}]}"#;
        let t = LabelledTree::from_json(src).unwrap();
        assert_eq!(t.vertices[1].element, Element::identity());
        let built = build_tree_link(&t).unwrap();
        assert_eq!(built.vertex_linking(&t.elements()).unwrap(), label_matrix(&t).unwrap());
        assert!(LabelledTree::from_json(r#"{"vertices": [], "bogus": 1}"#).is_err());
        assert_eq!(LabelledTree::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn structure_errors() {
        let v = |name: &str| TreeVertex { name: name.into(), element: y0() };
        let e = |a: &str, b: &str| TreeEdge { a: a.into(), b: b.into(), label: 1 };
        let cyc =
            LabelledTree { vertices: vec![v("a"), v("b"), v("c")], edges: vec![e("a", "b"), e("b", "c"), e("c", "a")] };
        assert!(matches!(build_tree_link(&cyc), Err(Error::Structure(_))));
        let dup = LabelledTree { vertices: vec![v("a"), v("a")], edges: vec![] };
        assert!(matches!(build_tree_link(&dup), Err(Error::Structure(_))));
        let unknown = LabelledTree { vertices: vec![v("a")], edges: vec![e("a", "z")] };
        assert!(matches!(build_tree_link(&unknown), Err(Error::Structure(_))));
    }
}
