//! Computable proxies for (pointed) link type.

use itertools::Itertools;
use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::invariants::{jones_polynomial, kauffman_bracket, simplify, InvariantOptions};
use crate::poly::LaurentPoly;

/// Oriented, pointed fingerprint: component count, linking matrix, Jones
/// polynomial of the link and of the marked component, and the Jones
/// polynomial of every component (as a knot).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub components: usize,
    pub marked: usize,
    pub linking: Vec<Vec<i64>>,
    pub jones: LaurentPoly,
    pub marked_jones: LaurentPoly,
    pub component_jones: Vec<LaurentPoly>,
}

pub fn fingerprint(d: &LinkDiagram, opts: &InvariantOptions) -> Result<Fingerprint> {
    let d = simplify(d);
    let jones = jones_polynomial(&d, opts)?;
    let component_jones =
        (0..d.component_count()).map(|k| jones_polynomial(&d.sublink(&[k])?, opts)).collect::<Result<Vec<_>>>()?;
    Ok(Fingerprint {
        components: d.component_count(),
        marked: d.marked(),
        linking: d.linking_matrix(),
        marked_jones: component_jones[d.marked()].clone(),
        jones,
        component_jones,
    })
}

/// Orientation-free fingerprint, canonical under relabelling of components
/// (keeping the marked one first when `pointed`). Compares the bracket up to
/// a unit (−A³)ᵏ, per-component knot polynomials and the linking matrix up to
/// simultaneous permutation and sign changes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct UnorientedFingerprint {
    pub components: usize,
    pub bracket: LaurentPoly,
    pub component_jones: Vec<LaurentPoly>,
    pub linking: Vec<Vec<i64>>,
}

/// Largest component count for which the canonical form is searched
/// exhaustively.
const MAX_CANONICAL: usize = 7;

/// Divides out the unit (−A³)ᵏ so that the lowest exponent lies in 0..3.
fn normalise_bracket(b: &LaurentPoly) -> LaurentPoly {
    let Some(lo) = b.min_exp() else { return b.clone() };
    let k = lo.div_euclid(3);
    let out = b.shift(-3 * k);
    if k % 2 == 0 {
        out
    } else {
        out.scale(-1)
    }
}

pub fn unoriented_fingerprint(
    d: &LinkDiagram,
    opts: &InvariantOptions,
    pointed: bool,
) -> Result<UnorientedFingerprint> {
    let fp = fingerprint(d, opts)?;
    let s = simplify(d);
    let bracket = normalise_bracket(&kauffman_bracket(&s, opts)?);
    let n = fp.components;
    assert!(n <= MAX_CANONICAL, "too many components for canonical labelling");
    let mut best: Option<(Vec<LaurentPoly>, Vec<Vec<i64>>)> = None;
    for perm in (0..n).permutations(n) {
        // perm[new] = old
        if pointed && perm[0] != fp.marked {
            continue;
        }
        let polys: Vec<LaurentPoly> = perm.iter().map(|&o| fp.component_jones[o].clone()).collect();
        if let Some((bp, _)) = &best {
            if polys > *bp {
                continue;
            }
        }
        for signs in 0..(1u32 << n.saturating_sub(1)) {
            let sign = |i: usize| if i > 0 && signs >> (i - 1) & 1 == 1 { -1 } else { 1 };
            let m: Vec<Vec<i64>> =
                (0..n).map(|i| (0..n).map(|j| sign(i) * sign(j) * fp.linking[perm[i]][perm[j]]).collect()).collect();
            let cand = (polys.clone(), m);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let (component_jones, linking) = best.expect("at least one labelling");
    Ok(UnorientedFingerprint { components: n, bracket, component_jones, linking })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_normal_form() {
        let b = LaurentPoly::from_terms([(-7, 1), (-3, 2)]);
        let unit = LaurentPoly::monomial(-1, 3);
        assert_eq!(normalise_bracket(&b), normalise_bracket(&(&b * &unit)));
        assert_eq!(normalise_bracket(&b).min_exp(), Some(2));
    }

    #[test]
    fn hopf_orientations_agree() {
        let h = LinkDiagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        let o = InvariantOptions::default();
        let a = unoriented_fingerprint(&h, &o, false).unwrap();
        let b = unoriented_fingerprint(&h.reverse_component(1), &o, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(fingerprint(&h, &o).unwrap(), fingerprint(&h.reverse_component(1), &o).unwrap());
    }
}
