//! Kauffman bracket, Jones polynomial, and a Reidemeister I/II simplifier.

use std::collections::{BTreeSet, HashMap};

use crate::diagram::{Dart, LinkDiagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Default bound on the number of crossings fed to the bracket.
pub const DEFAULT_MAX_CROSSINGS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantOptions {
    pub max_crossings: usize,
}

impl Default for InvariantOptions {
    fn default() -> Self {
        InvariantOptions { max_crossings: DEFAULT_MAX_CROSSINGS }
    }
}

/// δ = −A² − A⁻².
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

fn dart_id(d: Dart) -> u32 {
    (d.crossing * 4 + d.port as usize) as u32
}

/// Order in which to absorb crossings: greedily pick the crossing with the
/// most edges into the processed region, keeping the frontier small.
fn elimination_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let mut best: Option<(i32, usize)> = None;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let mut score = 0i32;
            for p in 0..4u8 {
                let nb = d.adj(Dart::new(i, p)).crossing;
                if nb != i && done[nb] {
                    score += 2;
                } else if nb != i {
                    score -= 1;
                }
            }
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, i));
            }
        }
        let (_, i) = best.unwrap();
        done[i] = true;
        order.push(i);
    }
    order
}

/// ⟨D⟩ normalised so that a single circle is 1, by a dynamic programme over
/// the planar matching on the boundary of the processed region.
pub fn kauffman_bracket(d: &LinkDiagram, opts: &InvariantOptions) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > opts.max_crossings {
        return Err(Error::TooManyCrossings { crossings: n, cap: opts.max_crossings });
    }
    let delta = loop_value();
    let loops = d.free_loops().len();
    if n == 0 {
        return Ok(delta.pow(loops as u32 - 1));
    }
    let edge = |x: Dart| dart_id(x).min(dart_id(d.adj(x)));
    let mut processed = vec![false; n];
    // state: sorted open-edge pairs
    let mut states: HashMap<Vec<(u32, u32)>, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one());
    for c in elimination_order(d) {
        processed[c] = true;
        let ports: Vec<u32> = (0..4u8).map(|p| edge(Dart::new(c, p))).collect();
        let mut next: HashMap<Vec<(u32, u32)>, LaurentPoly> = HashMap::new();
        for (state, poly) in &states {
            for (weight, arcs) in [(1i64, [(0usize, 1usize), (2, 3)]), (-1, [(0, 3), (1, 2)])] {
                let mut links: Vec<(u32, u32)> = arcs.iter().map(|&(p, q)| (ports[p], ports[q])).collect();
                let mut rest = Vec::with_capacity(state.len());
                for &(a, b) in state {
                    if ports.contains(&a) || ports.contains(&b) {
                        links.push((a, b));
                    } else {
                        rest.push((a, b));
                    }
                }
                let (pairs, cycles) = resolve(&links);
                rest.extend(pairs);
                rest.sort_unstable();
                let mut p = poly.shift(weight);
                for _ in 0..cycles {
                    p = &p * &delta;
                }
                let slot = next.entry(rest).or_default();
                *slot = &*slot + &p;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_default();
    debug_assert!(states.is_empty());
    let total = &total * &delta.pow(loops as u32);
    total.div_exact(&delta).ok_or_else(|| Error::Consistency("bracket not divisible by the loop value".into()))
}

/// Given a multigraph in which every vertex has degree 1 or 2, returns the
/// endpoint pairs of its paths and the number of its cycles.
fn resolve(links: &[(u32, u32)]) -> (Vec<(u32, u32)>, usize) {
    let mut nodes: Vec<u32> = links.iter().flat_map(|&(a, b)| [a, b]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let degree = |v: u32| links.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum::<usize>();
    let mut used = vec![false; links.len()];
    let mut pairs = Vec::new();
    let walk = |start: u32, used: &mut Vec<bool>| -> u32 {
        let mut v = start;
        loop {
            let Some(i) = (0..links.len()).find(|&i| !used[i] && (links[i].0 == v || links[i].1 == v)) else {
                return v;
            };
            used[i] = true;
            v = if links[i].0 == v { links[i].1 } else { links[i].0 };
        }
    };
    for &v in &nodes {
        if degree(v) == 1 && links.iter().enumerate().any(|(i, l)| !used[i] && (l.0 == v || l.1 == v)) {
            let w = walk(v, &mut used);
            pairs.push((v.min(w), v.max(w)));
        }
    }
    let mut cycles = 0;
    while let Some(i) = (0..links.len()).find(|&i| !used[i]) {
        walk(links[i].0, &mut used);
        cycles += 1;
    }
    (pairs, cycles)
}

/// Jones polynomial as a Laurent polynomial in t^{1/2}, via
/// V = (−A³)^{−w}·⟨D⟩ and A = t^{−1/4}. The diagram is simplified first;
/// the crossing cap applies to the simplified diagram.
pub fn jones_polynomial(d: &LinkDiagram, opts: &InvariantOptions) -> Result<LaurentPoly> {
    let s = simplify(d);
    jones_unsimplified(&s, opts)
}

/// Jones polynomial without the simplification pass.
pub fn jones_unsimplified(d: &LinkDiagram, opts: &InvariantOptions) -> Result<LaurentPoly> {
    let bracket = kauffman_bracket(d, opts)?;
    bracket_to_jones(&bracket, d.writhe())
}

/// Normalises a bracket by the writhe and substitutes A = t^{−1/4}.
pub fn bracket_to_jones(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly> {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let f = bracket.shift(-3 * writhe).scale(sign);
    let mut out = LaurentPoly::zero();
    for (e, c) in f.terms() {
        if e % 2 != 0 {
            return Err(Error::Consistency(format!("odd A-exponent {e} in a link bracket")));
        }
        out.add_term(-e / 2, c);
    }
    Ok(out)
}

/// Renders a polynomial in t^{1/2} with fractional exponents of t.
pub fn format_jones(v: &LaurentPoly) -> String {
    v.render("t", 2)
}

/// A crossing with two adjacent ports glued together (a kink).
fn find_r1(d: &LinkDiagram) -> Option<usize> {
    (0..d.crossing_count()).find(|&c| (0..4u8).any(|p| d.adj(Dart::new(c, p)) == Dart::new(c, p + 1)))
}

/// A bigon whose two edges are each over (or each under) at both ends.
fn find_r2(d: &LinkDiagram) -> Option<(usize, usize)> {
    for c1 in 0..d.crossing_count() {
        for i in 0..4u8 {
            let a = d.adj(Dart::new(c1, i));
            if a.crossing == c1 {
                continue;
            }
            let back = d.adj(Dart::new(a.crossing, a.port + 1));
            if back == Dart::new(c1, i + 3) && (i % 2) == (a.port % 2) {
                return Some((c1, a.crossing));
            }
        }
    }
    None
}

/// Removes Reidemeister I kinks and II bigons until none remain.
pub fn simplify(d: &LinkDiagram) -> LinkDiagram {
    let mut d = d.clone();
    loop {
        let remove: BTreeSet<usize> = if let Some(c) = find_r1(&d) {
            [c].into()
        } else if let Some((a, b)) = find_r2(&d) {
            [a, b].into()
        } else {
            return d;
        };
        d = d.excise(&remove, &|_| true);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
    }

    #[test]
    fn trefoil_jones() {
        let o = InvariantOptions::default();
        let lh = jones_polynomial(&trefoil(), &o).unwrap();
        assert_eq!(format_jones(&lh), "-t^-4 + t^-3 + t^-1");
        let rh = jones_polynomial(&trefoil().mirror(), &o).unwrap();
        assert_eq!(format_jones(&rh), "t + t^3 - t^4");
    }

    #[test]
    fn unlink_brackets() {
        let o = InvariantOptions::default();
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(1), &o).unwrap(), LaurentPoly::one());
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(3), &o).unwrap(), loop_value().pow(2));
    }

    #[test]
    fn hopf_jones() {
        let h = LinkDiagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        let o = InvariantOptions::default();
        let v = jones_polynomial(&h, &o).unwrap();
        let lk = h.linking_matrix()[0][1];
        let expected = if lk > 0 { "-t^1/2 - t^5/2" } else { "-t^-5/2 - t^-1/2" };
        assert_eq!(format_jones(&v), expected);
    }

    #[test]
    fn crossing_cap() {
        let o = InvariantOptions { max_crossings: 2 };
        assert!(matches!(kauffman_bracket(&trefoil(), &o), Err(Error::TooManyCrossings { crossings: 3, cap: 2 })));
    }

    #[test]
    fn trefoil_is_already_simple() {
        assert_eq!(simplify(&trefoil()), trefoil());
    }
}
