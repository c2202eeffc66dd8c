//! Oriented planar link diagrams stored as port graphs.
//!
//! Every crossing has four ports numbered 0..4 counterclockwise. Ports 0 and
//! 2 carry the under strand, ports 1 and 3 the over strand. Each port is
//! glued to exactly one other port (possibly of the same crossing).

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// A port of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub crossing: usize,
    pub port: u8,
}

impl Dart {
    pub fn new(crossing: usize, port: u8) -> Self {
        Dart { crossing, port: port % 4 }
    }

    /// The port across the crossing on the same strand.
    pub fn opposite(self) -> Self {
        Dart::new(self.crossing, self.port + 2)
    }

    /// The next port counterclockwise.
    pub fn ccw(self) -> Self {
        Dart::new(self.crossing, self.port + 1)
    }

    /// 0 for the under strand, 1 for the over strand.
    pub fn strand(self) -> usize {
        (self.port % 2) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Neighbour of each port.
    pub adj: [Dart; 4],
    /// Component label of the under (index 0) and over (index 1) strand.
    pub comp: [usize; 2],
    /// Whether the strand runs 0→2 (under) / 1→3 (over).
    pub forward: [bool; 2],
}

impl Crossing {
    /// +1 or −1 by the right-hand rule.
    pub fn sign(&self) -> i64 {
        if self.forward[0] != self.forward[1] {
            1
        } else {
            -1
        }
    }

    /// Whether the oriented strand through `port` leaves the crossing there.
    pub fn exits_at(&self, port: u8) -> bool {
        (port >= 2) == self.forward[(port % 2) as usize]
    }
}

/// An oriented link diagram with labelled components. Component 0 is not
/// special; `marked` names the distinguished one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkDiagram {
    pub(crate) crossings: Vec<Crossing>,
    /// Component labels of crossingless circles.
    pub(crate) loops: Vec<usize>,
    pub(crate) components: usize,
    pub(crate) marked: usize,
}

impl LinkDiagram {
    /// A diagram of `k` disjoint circles, the first one marked.
    pub fn unlink(k: usize) -> Self {
        assert!(k >= 1);
        LinkDiagram { crossings: Vec::new(), loops: (0..k).collect(), components: k, marked: 0 }
    }

    /// Assembles a diagram from raw parts, checking gluing and labelling
    /// consistency.
    pub fn from_parts(crossings: Vec<Crossing>, loops: Vec<usize>, components: usize, marked: usize) -> Result<Self> {
        let d = LinkDiagram { crossings, loops, components, marked };
        d.validate()?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn free_loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn adj(&self, d: Dart) -> Dart {
        self.crossings[d.crossing].adj[d.port as usize]
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Consistency(m));
        let n = self.crossings.len();
        for (i, c) in self.crossings.iter().enumerate() {
            for p in 0..4u8 {
                let d = c.adj[p as usize];
                if d.crossing >= n || d.port > 3 {
                    return bad(format!("port {i}.{p} glued outside the diagram"));
                }
                if self.adj(d) != Dart::new(i, p) {
                    return bad(format!("gluing at {i}.{p} is not symmetric"));
                }
                if d == Dart::new(i, p) {
                    return bad(format!("port {i}.{p} glued to itself"));
                }
                // strand continues with the same label and direction
                let s = (p % 2) as usize;
                let nc = &self.crossings[d.crossing];
                let ns = d.strand();
                if nc.comp[ns] != c.comp[s] {
                    return bad(format!("component label changes along edge at {i}.{p}"));
                }
                if c.exits_at(p) == nc.exits_at(d.port) {
                    return bad(format!("orientation clash along edge at {i}.{p}"));
                }
            }
            if c.comp.iter().any(|&k| k >= self.components) {
                return bad(format!("crossing {i} has an out-of-range component"));
            }
        }
        if self.loops.iter().any(|&k| k >= self.components) || self.marked >= self.components {
            return bad("component label out of range".into());
        }
        let mut seen: BTreeSet<usize> = self.loops.iter().copied().collect();
        if seen.len() != self.loops.len() {
            return bad("two free loops share a label".into());
        }
        for c in &self.crossings {
            seen.extend(c.comp);
        }
        if seen.len() != self.components {
            return bad("some component label is unused".into());
        }
        for (k, strands) in self.traverse_all().iter().enumerate() {
            let labels: HashSet<usize> = strands.iter().map(|d| self.crossings[d.crossing].comp[d.strand()]).collect();
            if labels.len() > 1 {
                return bad(format!("traced strand {k} carries several labels"));
            }
        }
        Ok(())
    }

    /// Follows each closed strand; returns, per strand, the exit darts in
    /// traversal order (along the orientation).
    pub(crate) fn traverse_all(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![[false; 2]; self.crossings.len()];
        let mut out = Vec::new();
        for i in 0..self.crossings.len() {
            for s in 0..2 {
                if !seen[i][s] {
                    out.push(self.traverse_from(i, s, &mut seen));
                }
            }
        }
        out
    }

    fn traverse_from(&self, i: usize, s: usize, seen: &mut [[bool; 2]]) -> Vec<Dart> {
        let c = &self.crossings[i];
        let exit = if c.forward[s] { s as u8 + 2 } else { s as u8 };
        let start = Dart::new(i, exit);
        let mut path = Vec::new();
        let mut cur = start;
        loop {
            seen[cur.crossing][cur.strand()] = true;
            path.push(cur);
            let arrive = self.adj(cur);
            cur = arrive.opposite();
            if cur == start {
                break;
            }
        }
        path
    }

    /// Exit darts of each component in traversal order, starting from the
    /// lowest-numbered crossing it touches. Empty for crossingless loops.
    pub fn component_paths(&self) -> Vec<Vec<Dart>> {
        let mut per: Vec<Vec<Dart>> = vec![Vec::new(); self.components];
        for path in self.traverse_all() {
            let d = path[0];
            let k = self.crossings[d.crossing].comp[d.strand()];
            // a component can only be one closed strand
            debug_assert!(per[k].is_empty());
            per[k] = path;
        }
        per
    }

    /// Writhe: sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// Pairwise linking numbers.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components;
        let mut m = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            let (a, b) = (c.comp[0], c.comp[1]);
            if a != b {
                m[a][b] += c.sign();
                m[b][a] += c.sign();
            }
        }
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                debug_assert!(*x % 2 == 0);
                *x /= 2;
            }
        }
        m
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> Self {
        let mut crossings = self.crossings.clone();
        for c in crossings.iter_mut() {
            let old = c.clone();
            for p in 0..4u8 {
                let d = old.adj[p as usize];
                c.adj[((p + 1) % 4) as usize] = Dart::new(d.crossing, d.port + 1);
            }
            c.comp = [old.comp[1], old.comp[0]];
            c.forward = [!old.forward[1], old.forward[0]];
        }
        LinkDiagram { crossings, ..self.clone() }
    }

    /// Reverses the orientation of component `k`.
    pub fn reverse_component(&self, k: usize) -> Self {
        let mut d = self.clone();
        for c in d.crossings.iter_mut() {
            for s in 0..2 {
                if c.comp[s] == k {
                    c.forward[s] = !c.forward[s];
                }
            }
        }
        d
    }

    /// The same diagram with component `k` marked.
    pub fn with_marked(&self, k: usize) -> Result<Self> {
        if k >= self.components {
            return Err(Error::Domain(format!("no component {k}")));
        }
        Ok(LinkDiagram { marked: k, ..self.clone() })
    }

    /// Renumbers components by `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut d = self.clone();
        for c in d.crossings.iter_mut() {
            c.comp = [perm[c.comp[0]], perm[c.comp[1]]];
        }
        for l in d.loops.iter_mut() {
            *l = perm[*l];
        }
        d.marked = perm[d.marked];
        d
    }

    /// Deletes the crossings in `remove`. Strands of components in `keep`
    /// are rerouted straight through the deleted crossings; other strands
    /// disappear. Component labels are not renumbered.
    pub(crate) fn excise(&self, remove: &BTreeSet<usize>, keep: &dyn Fn(usize) -> bool) -> Self {
        let n = self.crossings.len();
        let mut new_index = vec![usize::MAX; n];
        let mut next = 0;
        for (i, slot) in new_index.iter_mut().enumerate() {
            if !remove.contains(&i) {
                *slot = next;
                next += 1;
            }
        }
        let mut crossings: Vec<Crossing> = Vec::with_capacity(next);
        for (i, c) in self.crossings.iter().enumerate() {
            if remove.contains(&i) {
                continue;
            }
            let mut c = c.clone();
            for p in 0..4 {
                let mut d = c.adj[p];
                if remove.contains(&d.crossing) {
                    // walk through removed crossings along the strand
                    loop {
                        let across = d.opposite();
                        d = self.adj(across);
                        if !remove.contains(&d.crossing) {
                            break;
                        }
                    }
                }
                c.adj[p] = Dart::new(new_index[d.crossing], d.port);
            }
            crossings.push(c);
        }
        let mut loops = self.loops.clone();
        loops.retain(|&k| keep(k));
        // strands living only on removed crossings become free loops
        let mut seen = vec![[false; 2]; n];
        for &i in remove {
            for s in 0..2 {
                if seen[i][s] {
                    continue;
                }
                let path = self.traverse_from(i, s, &mut seen);
                let k = self.crossings[i].comp[s];
                if keep(k) && path.iter().all(|d| remove.contains(&d.crossing)) {
                    loops.push(k);
                }
            }
        }
        loops.sort_unstable();
        LinkDiagram { crossings, loops, components: self.components, marked: self.marked }
    }

    /// The sublink on the given components, relabelled in increasing order.
    /// The marked label follows its component if kept, else becomes the
    /// first kept one.
    pub fn sublink(&self, comps: &[usize]) -> Result<Self> {
        let keep: BTreeSet<usize> = comps.iter().copied().collect();
        if keep.is_empty() || keep.iter().any(|&k| k >= self.components) {
            return Err(Error::Domain("sublink needs valid, non-empty components".into()));
        }
        let remove: BTreeSet<usize> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| !keep.contains(&c.comp[0]) || !keep.contains(&c.comp[1]))
            .map(|(i, _)| i)
            .collect();
        let mut d = self.excise(&remove, &|k| keep.contains(&k));
        let mut perm = vec![0; self.components];
        for (new, &old) in keep.iter().enumerate() {
            perm[old] = new;
        }
        let marked = if keep.contains(&self.marked) { self.marked } else { *keep.first().unwrap() };
        d.marked = marked;
        d.components = keep.len();
        let d = d.relabel(&perm);
        Ok(d)
    }

    /// Faces as cyclic lists of exit darts; each face lies to the right.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for i in 0..n {
            for p in 0..4u8 {
                if seen[i][p as usize] {
                    continue;
                }
                let start = Dart::new(i, p);
                let mut face = Vec::new();
                let mut cur = start;
                loop {
                    seen[cur.crossing][cur.port as usize] = true;
                    face.push(cur);
                    cur = self.adj(cur).ccw();
                    if cur == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Euler-characteristic check of planarity, per connected piece.
    pub fn is_planar(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return true;
        }
        // union-find over crossings
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for (i, c) in self.crossings.iter().enumerate() {
            for d in c.adj {
                let (a, b) = (find(&mut parent, i), find(&mut parent, d.crossing));
                parent[a] = b;
            }
        }
        let pieces = (0..n).filter(|&i| find(&mut parent, i) == i).count();
        let faces = self.faces().len();
        // V − E + F = 2 per piece, with E = 2V
        faces as i64 - n as i64 == 2 * pieces as i64
    }

    /// PD code: arcs numbered 1..2n along each component (marked first);
    /// each crossing lists (incoming under, then counterclockwise).
    pub fn pd_code(&self) -> Vec<[usize; 4]> {
        let paths = self.component_paths();
        let mut order: Vec<usize> = (0..self.components).collect();
        order.sort_by_key(|&k| (k != self.marked, k));
        // arc label of each exit dart
        let mut label = vec![[0usize; 4]; self.crossings.len()];
        let mut next = 1;
        for &k in &order {
            let path = &paths[k];
            if path.is_empty() {
                continue;
            }
            for (j, &d) in path.iter().enumerate() {
                let arrive = self.adj(d);
                label[d.crossing][d.port as usize] = next;
                label[arrive.crossing][arrive.port as usize] = next;
                if j + 1 < path.len() {
                    next += 1;
                }
            }
            next += 1;
        }
        self.crossings
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let start = if c.forward[0] { 0 } else { 2 };
                let l = &label[i];
                [l[start], l[(start + 1) % 4], l[(start + 2) % 4], l[(start + 3) % 4]]
            })
            .collect()
    }

    /// Gauss code per component (marked first): crossing number (1-based),
    /// negative when passing under.
    pub fn gauss_codes(&self) -> Vec<Vec<i64>> {
        let paths = self.component_paths();
        let mut order: Vec<usize> = (0..self.components).collect();
        order.sort_by_key(|&k| (k != self.marked, k));
        order
            .iter()
            .map(|&k| {
                paths[k]
                    .iter()
                    .map(|d| {
                        let n = d.crossing as i64 + 1;
                        if d.strand() == 0 {
                            -n
                        } else {
                            n
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Builds a diagram from a PD code in the usual convention: each entry
    /// lists the incoming under arc first, then counterclockwise; arcs are
    /// numbered consecutively along each component.
    pub fn from_pd(code: &[[usize; 4]]) -> Result<Self> {
        use std::collections::HashMap;
        let n = code.len();
        if n == 0 {
            return Ok(LinkDiagram::unlink(1));
        }
        let mut ends: HashMap<usize, Vec<Dart>> = HashMap::new();
        for (i, x) in code.iter().enumerate() {
            for (p, &a) in x.iter().enumerate() {
                ends.entry(a).or_default().push(Dart::new(i, p as u8));
            }
        }
        let placeholder = Dart::new(0, 0);
        let mut crossings: Vec<Crossing> =
            (0..n).map(|_| Crossing { adj: [placeholder; 4], comp: [0, 0], forward: [true, true] }).collect();
        for (a, ds) in &ends {
            if ds.len() != 2 {
                return Err(Error::Consistency(format!("arc {a} does not have two ends")));
            }
            let (x, y) = (ds[0], ds[1]);
            crossings[x.crossing].adj[x.port as usize] = y;
            crossings[y.crossing].adj[y.port as usize] = x;
        }
        // over strand direction from consecutive arc numbers; otherwise the
        // larger label wraps around to the smaller one
        for (i, x) in code.iter().enumerate() {
            let (a, b) = (x[1], x[3]);
            let forward_over = if b == a + 1 {
                true
            } else if a == b + 1 {
                false
            } else {
                a > b
            };
            crossings[i].forward = [true, forward_over];
        }
        // label components by tracing
        let mut d = LinkDiagram { crossings, loops: Vec::new(), components: 0, marked: 0 };
        let strands = d.traverse_all();
        for (k, path) in strands.iter().enumerate() {
            for dart in path {
                let s = dart.strand();
                d.crossings[dart.crossing].comp[s] = k;
            }
        }
        d.components = strands.len();
        d.validate()?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Left-handed trefoil in the standard PD convention.
    pub(crate) fn trefoil() -> LinkDiagram {
        LinkDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
    }

    #[test]
    fn trefoil_basics() {
        let t = trefoil();
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.writhe(), -3);
        assert_eq!(t.mirror().writhe(), 3);
        assert!(t.is_planar());
        assert_eq!(t.faces().len(), 5);
        assert_eq!(t.pd_code(), vec![[6, 3, 1, 4], [2, 5, 3, 6], [4, 1, 5, 2]]);
        assert_eq!(t.gauss_codes(), vec![vec![-1, 3, -2, 1, -3, 2]]);
    }

    #[test]
    fn hopf_linking() {
        // two crossings between two components
        let h = LinkDiagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        assert_eq!(h.component_count(), 2);
        let lk = h.linking_matrix();
        assert_eq!(lk[0][1].abs(), 1);
        assert_eq!(h.reverse_component(1).linking_matrix()[0][1], -lk[0][1]);
        assert_eq!(h.mirror().linking_matrix()[0][1], -lk[0][1]);
    }

    #[test]
    fn sublink_of_hopf() {
        let h = LinkDiagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        let s = h.sublink(&[1]).unwrap();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.free_loops(), &[0]);
        assert_eq!(s.component_count(), 1);
    }
}
