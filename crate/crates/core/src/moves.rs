//! Reidemeister moves that make a diagram bigger (or rearrange it), used
//! to check that invariants survive isotopy.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{Crossing, Dart, LinkDiagram};

/// An oriented edge, from the exit dart `from` to the entry dart `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Dart,
    pub to: Dart,
}

/// Every edge of the diagram, oriented along its component.
pub fn edges(d: &LinkDiagram) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, c) in d.crossings.iter().enumerate() {
        for p in 0..4u8 {
            if c.exits_at(p) {
                let from = Dart::new(i, p);
                out.push(Edge { from, to: d.adj(from) });
            }
        }
    }
    out
}

fn glue(cs: &mut [Crossing], a: Dart, b: Dart) {
    cs[a.crossing].adj[a.port as usize] = b;
    cs[b.crossing].adj[b.port as usize] = a;
}

/// `forward` bit for a strand passing from port `a` to port `b`, travelled
/// along its orientation when `along` holds.
fn forward_bit(a: u8, b: u8, along: bool) -> bool {
    let exit = if along { b } else { a };
    exit % 4 >= 2
}

/// Adds a kink on `edge`; `k` (0..4) picks the sign and which strand is over.
pub fn r1_on_edge(d: &LinkDiagram, edge: Edge, k: u8) -> LinkDiagram {
    let mut out = d.clone();
    let comp = d.crossings[edge.from.crossing].comp[edge.from.strand()];
    let x = out.crossings.len();
    let placeholder = Dart::new(0, 0);
    // path: from → (k+2) → across → k → kink → (k+1) → across → (k+3) → to
    let mut forward = [false; 2];
    forward[(k % 2) as usize] = forward_bit(k + 2, k, true);
    forward[((k + 1) % 2) as usize] = forward_bit(k + 1, k + 3, true);
    out.crossings.push(Crossing { adj: [placeholder; 4], comp: [comp; 2], forward });
    glue(&mut out.crossings, edge.from, Dart::new(x, k + 2));
    glue(&mut out.crossings, Dart::new(x, k), Dart::new(x, k + 1));
    glue(&mut out.crossings, Dart::new(x, k + 3), edge.to);
    out
}

/// Adds a kink to a crossingless circle, turning it into a figure eight.
pub fn r1_on_loop(d: &LinkDiagram, which: usize, k: u8) -> LinkDiagram {
    let mut out = d.clone();
    let comp = out.loops.remove(which);
    let x = out.crossings.len();
    let placeholder = Dart::new(0, 0);
    // path: (k+3) → across → (k+1) → kink → k → across → (k+2) → kink
    let mut forward = [false; 2];
    forward[((k + 1) % 2) as usize] = forward_bit(k + 3, k + 1, true);
    forward[(k % 2) as usize] = forward_bit(k, k + 2, true);
    out.crossings.push(Crossing { adj: [placeholder; 4], comp: [comp; 2], forward });
    glue(&mut out.crossings, Dart::new(x, k + 1), Dart::new(x, k));
    glue(&mut out.crossings, Dart::new(x, k + 2), Dart::new(x, k + 3));
    out
}

/// A place to push one edge over or under another across a shared face:
/// positions `i` and `j` of face `face` (as returned by `faces`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct R2Site {
    pub face: usize,
    pub i: usize,
    pub j: usize,
}

pub fn r2_sites(d: &LinkDiagram) -> Vec<R2Site> {
    let mut out = Vec::new();
    for (f, face) in d.faces().iter().enumerate() {
        for i in 0..face.len() {
            for j in 0..face.len() {
                if i == j {
                    continue;
                }
                let (b, dd) = (face[i], face[j]);
                // the two sides must be distinct edges
                if d.adj(b) == dd {
                    continue;
                }
                out.push(R2Site { face: f, i, j });
            }
        }
    }
    out
}

/// Pushes a finger of the first edge of `site` across the second; `over`
/// selects whether the finger passes over.
pub fn r2_at(d: &LinkDiagram, site: R2Site, over: bool) -> LinkDiagram {
    let faces = d.faces();
    let face = &faces[site.face];
    let (b, dd) = (face[site.i], face[site.j]);
    let (a, c) = (d.adj(b), d.adj(dd));
    let mut out = d.clone();
    let comp1 = d.crossings[b.crossing].comp[b.strand()];
    let comp2 = d.crossings[dd.crossing].comp[dd.strand()];
    // edge b→a travelled along its orientation?
    let along1 = d.crossings[b.crossing].exits_at(b.port);
    let along2 = d.crossings[dd.crossing].exits_at(dd.port);
    let r = if over { 0 } else { 1 };
    let (e, n, w, s) = (r, 1 + r, 2 + r, 3 + r);
    let (x1, x2) = (out.crossings.len(), out.crossings.len() + 1);
    let placeholder = Dart::new(0, 0);
    for (x, finger_in, finger_out, base_in, base_out) in [(x1, n, s, w, e), (x2, s, n, w, e)] {
        // finger strand b→…→a, base strand d→…→c
        let mut comp = [0; 2];
        let mut forward = [false; 2];
        comp[(finger_in % 2) as usize] = comp1;
        comp[(base_in % 2) as usize] = comp2;
        forward[(finger_in % 2) as usize] = forward_bit(finger_in, finger_out, along1);
        forward[(base_in % 2) as usize] = forward_bit(base_in, base_out, along2);
        debug_assert_eq!(x, out.crossings.len());
        out.crossings.push(Crossing { adj: [placeholder; 4], comp, forward });
    }
    let cs = &mut out.crossings;
    glue(cs, b, Dart::new(x2, s));
    glue(cs, Dart::new(x2, n), Dart::new(x1, n));
    glue(cs, Dart::new(x1, s), a);
    glue(cs, dd, Dart::new(x1, w));
    glue(cs, Dart::new(x1, e), Dart::new(x2, w));
    glue(cs, Dart::new(x2, e), c);
    out
}

/// A triangle on which a third Reidemeister move applies, with the frame
/// (port rotation per crossing and a global reflection) matching it to the
/// reference arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct R3Site {
    /// Crossings playing the roles XY, XZ, YZ; X lies lowest, Z highest.
    pub crossings: [usize; 3],
    pub rotation: [u8; 3],
    pub reflect: bool,
}

const XY: usize = 0;
const XZ: usize = 1;
const YZ: usize = 2;

/// Where each port of the reference arrangement leads: an external slot
/// `p0..p5` or a port of another crossing of the triangle.
#[derive(Clone, Copy)]
enum Slot {
    Ext(usize),
    Int(usize, u8),
}

use Slot::{Ext, Int};

/// Before the move: X meets Y then Z, Y meets X then Z, Z meets X then Y.
const BEFORE: [[Slot; 4]; 3] = [
    [Ext(0), Ext(1), Int(XZ, 0), Int(YZ, 0)],
    [Int(XY, 2), Ext(2), Ext(3), Int(YZ, 1)],
    [Int(XY, 3), Int(XZ, 3), Ext(4), Ext(5)],
];

/// After the move every strand meets the other two in the opposite order.
const AFTER: [[Slot; 4]; 3] = [
    [Int(XZ, 2), Int(YZ, 2), Ext(3), Ext(4)],
    [Ext(0), Int(YZ, 3), Int(XY, 0), Ext(5)],
    [Ext(1), Ext(2), Int(XY, 1), Int(XZ, 1)],
];

impl R3Site {
    fn port(&self, role: usize, t: u8) -> Dart {
        let t = if self.reflect { (4 - t) % 4 } else { t };
        Dart::new(self.crossings[role], t + self.rotation[role])
    }

    fn external(&self, d: &LinkDiagram) -> [Dart; 6] {
        let mut ext = [Dart::new(0, 0); 6];
        for (role, row) in BEFORE.iter().enumerate() {
            for (t, slot) in row.iter().enumerate() {
                if let Ext(k) = slot {
                    ext[*k] = d.adj(self.port(role, t as u8));
                }
            }
        }
        ext
    }

    fn matches(&self, d: &LinkDiagram) -> bool {
        for (role, row) in BEFORE.iter().enumerate() {
            for (t, slot) in row.iter().enumerate() {
                if let Int(other, u) = *slot {
                    if d.adj(self.port(role, t as u8)) != self.port(other, u) {
                        return false;
                    }
                }
            }
        }
        let c = &d.crossings;
        let (xy, xz, yz) = (&c[self.crossings[XY]], &c[self.crossings[XZ]], &c[self.crossings[YZ]]);
        // same strand labels where the strands meet
        let s = |role: usize, t: u8| self.port(role, t).strand();
        if xy.comp[s(XY, 0)] != xz.comp[s(XZ, 0)]
            || xy.comp[s(XY, 1)] != yz.comp[s(YZ, 0)]
            || xz.comp[s(XZ, 1)] != yz.comp[s(YZ, 1)]
        {
            return false;
        }
        self.external(d).iter().all(|e| !self.crossings.contains(&e.crossing))
    }
}

pub fn r3_sites(d: &LinkDiagram) -> Vec<R3Site> {
    let n = d.crossing_count();
    let mut out = Vec::new();
    for a in 0..n {
        for p in 0..4u8 {
            let b = d.adj(Dart::new(a, p)).crossing;
            for q in 0..4u8 {
                let c = d.adj(Dart::new(a, q)).crossing;
                if a == b || a == c || b == c {
                    continue;
                }
                for reflect in [false, true] {
                    for rot in 0..8u8 {
                        let site =
                            R3Site { crossings: [a, b, c], rotation: [2 * (rot & 1), rot & 2, (rot & 4) / 2], reflect };
                        if site.matches(d) && !out.contains(&site) {
                            out.push(site);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Slides the top strand of the triangle across the opposite crossing.
pub fn r3_at(d: &LinkDiagram, site: R3Site) -> LinkDiagram {
    let ext = site.external(d);
    let c = &d.crossings;
    let old = |role: usize| &c[site.crossings[role]];
    let comp_of = |role: usize, t: u8| old(role).comp[site.port(role, t).strand()];
    let exits = |role: usize, t: u8| old(role).exits_at(site.port(role, t).port);
    let (cx, cy, cz) = (comp_of(XY, 0), comp_of(XY, 1), comp_of(XZ, 1));
    // orientation of X (p0→p3), Y (p1→p4), Z (p2→p5)
    let (dx, dy, dz) = (exits(XY, 2), exits(XY, 3), exits(XZ, 3));
    let mut out = d.clone();
    // strand through ports (t, t+2) of each role after the move
    let layout: [[(usize, bool); 2]; 3] = [[(cx, dx), (cy, dy)], [(cx, dx), (cz, dz)], [(cy, dy), (cz, dz)]];
    for (role, strands) in layout.iter().enumerate() {
        let idx = site.crossings[role];
        let mut comp = [0; 2];
        let mut forward = [false; 2];
        for (t, &(k, along)) in strands.iter().enumerate() {
            let entry = site.port(role, t as u8);
            let exit = site.port(role, t as u8 + 2);
            comp[entry.strand()] = k;
            forward[entry.strand()] = forward_bit(entry.port, exit.port, along);
        }
        out.crossings[idx].comp = comp;
        out.crossings[idx].forward = forward;
    }
    for (role, row) in AFTER.iter().enumerate() {
        for (t, slot) in row.iter().enumerate() {
            let here = site.port(role, t as u8);
            match *slot {
                Ext(k) => glue(&mut out.crossings, here, ext[k]),
                Int(other, u) => glue(&mut out.crossings, here, site.port(other, u)),
            }
        }
    }
    out
}

/// Which move [`random_move`] performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

/// Applies one random move of the requested kind, if the diagram has a
/// place for it.
pub fn random_move<R: Rng + ?Sized>(d: &LinkDiagram, kind: MoveKind, rng: &mut R) -> Option<LinkDiagram> {
    match kind {
        MoveKind::R1 => {
            let es = edges(d);
            let k = rng.gen_range(0..4u8);
            if es.is_empty() {
                if d.loops.is_empty() {
                    return None;
                }
                let which = rng.gen_range(0..d.loops.len());
                return Some(r1_on_loop(d, which, k));
            }
            Some(r1_on_edge(d, *es.choose(rng)?, k))
        }
        MoveKind::R2 => {
            let sites = r2_sites(d);
            let site = *sites.choose(rng)?;
            Some(r2_at(d, site, rng.gen()))
        }
        MoveKind::R3 => {
            let sites = r3_sites(d);
            let site = *sites.choose(rng)?;
            Some(r3_at(d, site))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{jones_unsimplified, InvariantOptions};

    fn trefoil() -> LinkDiagram {
        LinkDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
    }

    fn check(before: &LinkDiagram, after: &LinkDiagram) {
        after.validate().unwrap();
        assert!(after.is_planar());
        let o = InvariantOptions::default();
        assert_eq!(jones_unsimplified(before, &o).unwrap(), jones_unsimplified(after, &o).unwrap());
        assert_eq!(before.linking_matrix(), after.linking_matrix());
    }

    #[test]
    fn kinks() {
        let t = trefoil();
        for e in edges(&t) {
            for k in 0..4 {
                check(&t, &r1_on_edge(&t, e, k));
            }
        }
        let u = LinkDiagram::unlink(2);
        for k in 0..4 {
            check(&u, &r1_on_loop(&u, 1, k));
        }
    }

    #[test]
    fn fingers() {
        let t = trefoil();
        let sites = r2_sites(&t);
        assert!(!sites.is_empty());
        for s in sites {
            for over in [false, true] {
                check(&t, &r2_at(&t, s, over));
            }
        }
    }

    #[test]
    fn triangles() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut found = 0;
        for _ in 0..40 {
            let f = crate::group::random_nontrivial(&mut rng, 4);
            let d = crate::links::jones_diagram(&f).diagram;
            for site in r3_sites(&d) {
                let after = r3_at(&d, site);
                check(&d, &after);
                assert_ne!(after, d);
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
