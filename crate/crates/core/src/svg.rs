//! SVG picture of the tree-pair diagram: the domain tree above, the range
//! tree flipped below, and the closure arc on the left. For looking at, not
//! for measuring.

use std::fmt::Write;

use crate::address::Address;
use crate::element::Element;
use crate::links::{jones_diagram, CONVENTION};
use crate::tree::TernaryTree;

const DX: f64 = 40.0;
const DY: f64 = 36.0;
const MARGIN: f64 = 40.0;
const GAP: f64 = 7.0;
const PALETTE: [&str; 6] = ["#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98", "#117a65"];

struct Node {
    x: f64,
    y: f64,
}

/// Positions of every vertex of `t`, leaves spaced evenly on `base_y`;
/// `dir` is −1 to grow upwards and +1 to grow downwards.
fn place(t: &TernaryTree, base_y: f64, dir: f64) -> Vec<(Address, Node)> {
    fn height(t: &TernaryTree) -> usize {
        match t {
            TernaryTree::Leaf => 0,
            TernaryTree::Caret(c) => 1 + c.iter().map(height).max().unwrap(),
        }
    }
    fn go(
        t: &TernaryTree,
        a: Address,
        next_leaf: &mut usize,
        base_y: f64,
        dir: f64,
        out: &mut Vec<(Address, Node)>,
    ) -> f64 {
        match t {
            TernaryTree::Leaf => {
                let x = MARGIN * 2.0 + *next_leaf as f64 * DX;
                *next_leaf += 1;
                out.push((a, Node { x, y: base_y }));
                x
            }
            TernaryTree::Caret(c) => {
                let xs: Vec<f64> =
                    (0..3u8).map(|i| go(&c[i as usize], a.child(i), next_leaf, base_y, dir, out)).collect();
                let x = xs[1];
                let y = base_y + dir * DY * height(t) as f64;
                out.push((a, Node { x, y }));
                x
            }
        }
    }
    let mut out = Vec::new();
    let mut n = 0;
    go(t, Address::root(), &mut n, base_y, dir, &mut out);
    out
}

/// A segment, shortened at either end where it dives under a crossing.
fn line(svg: &mut String, (x1, y1): (f64, f64), (x2, y2): (f64, f64), colour: &str, gaps: (bool, bool)) {
    let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(1e-9);
    let (ux, uy) = ((x2 - x1) / len * GAP, (y2 - y1) / len * GAP);
    let (sx, sy) = if gaps.0 { (x1 + ux, y1 + uy) } else { (x1, y1) };
    let (ex, ey) = if gaps.1 { (x2 - ux, y2 - uy) } else { (x2, y2) };
    let _ = writeln!(
        svg,
        r#"  <line x1="{sx:.1}" y1="{sy:.1}" x2="{ex:.1}" y2="{ey:.1}" stroke="{colour}" stroke-width="2"/>"#
    );
}

/// Renders `f` as an SVG document.
pub fn render_svg(f: &Element) -> String {
    let link = jones_diagram(f);
    let leaves = f.leaf_count();
    let (hp, hm) = (f.plus().depth(), f.minus().depth());
    let mid = MARGIN + DY * hp as f64 + DY;
    let upper = place(f.plus(), mid - DY / 2.0, -1.0);
    let lower = place(f.minus(), mid + DY / 2.0, 1.0);
    let width = MARGIN * 4.0 + DX * leaves as f64;
    let height = mid + DY * hm as f64 + DY + MARGIN * 2.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(svg, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##);
    let leaf_colour = |k: usize| PALETTE[link.leaf_components[k] % PALETTE.len()];
    for (pos, under) in [(&upper, !CONVENTION.upper_pm_over), (&lower, !CONVENTION.lower_pm_over)] {
        let at = |a: &Address| pos.iter().find(|(b, _)| b == a).map(|(_, n)| (n.x, n.y)).unwrap();
        for (a, n) in pos.iter() {
            if let Some(p) = a.parent() {
                let is_leaf = !pos.iter().any(|(b, _)| b.parent().as_ref() == Some(a));
                let colour = if is_leaf { leaf_colour(leaf_no_of(pos, a)) } else { "#555555" };
                // gaps where the parent–middle strand passes under
                let middle = *a.digits().last().unwrap() == 1;
                line(&mut svg, at(&p), (n.x, n.y), colour, (middle == under, !is_leaf && under));
            }
        }
    }
    // leaf gluing
    for k in 0..leaves {
        let x = MARGIN * 2.0 + k as f64 * DX;
        line(&mut svg, (x, mid - DY / 2.0), (x, mid + DY / 2.0), leaf_colour(k), (false, false));
    }
    // closure arc on the left
    let ru = upper.iter().find(|(a, _)| a.is_empty()).map(|(_, n)| (n.x, n.y)).unwrap();
    let rd = lower.iter().find(|(a, _)| a.is_empty()).map(|(_, n)| (n.x, n.y)).unwrap();
    let (top, bottom, left) = (ru.1 - DY / 2.0, rd.1 + DY / 2.0, MARGIN);
    let _ = writeln!(
        svg,
        r#"  <path d="M {:.1} {:.1} L {:.1} {top:.1} L {left:.1} {top:.1} L {left:.1} {bottom:.1} L {:.1} {bottom:.1} L {:.1} {:.1}" fill="none" stroke="{}" stroke-width="2"/>"#,
        ru.0, ru.1, ru.0, rd.0, rd.0, rd.1, PALETTE[0]
    );
    for (k, l) in link.leaves.iter().enumerate() {
        let x = MARGIN * 2.0 + k as f64 * DX;
        let _ = writeln!(
            svg,
            r#"  <text x="{:.1}" y="{:.1}" font-size="9" font-family="monospace" text-anchor="middle">{l}</text>"#,
            x + 10.0,
            mid + 3.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn leaf_no_of(pos: &[(Address, Node)], a: &Address) -> usize {
    let mut leaves: Vec<&Address> =
        pos.iter().map(|(b, _)| b).filter(|b| !pos.iter().any(|(c, _)| c.parent().as_ref() == Some(*b))).collect();
    leaves.sort_by(|x, y| x.digits().cmp(y.digits()));
    leaves.iter().position(|b| *b == a).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_generators() {
        for n in 0..3 {
            let s = render_svg(&Element::generator(n).unwrap());
            assert!(s.starts_with("<svg"));
            assert!(s.trim_end().ends_with("</svg>"));
            assert_eq!(s.matches("<path").count(), 1);
        }
        assert!(render_svg(&Element::identity()).contains("</svg>"));
    }
}
