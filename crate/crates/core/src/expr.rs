//! A small expression language for elements.
//!
//! ```text
//! expr := term (('*' | '<>' | '<0>' | '<1>' | '<2>') term)*
//! term := atom ('^-1')*
//! atom := 'y' INT | 'H(' INT ')' | 'link(' INT ',' expr ',' expr ')'
//!       | 'phi@' ADDR '(' expr ')' | 'diam@' ADDR '(' expr ',' expr ')'
//!       | 'U(' expr (',' expr)+ ')' | 'rot(' expr ')' | 'incl(' fword ')'
//!       | '1' | '(' expr ')'
//! ADDR := [012]+ | 'e'
//! ```
//!
//! Whitespace is allowed between tokens. `<>` is the central product ⋄.

use std::fmt;

use crate::address::Address;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::links::{jones_diagram, OrientationHint};
use crate::monoid::{diamond, diamond_at, diamond_i, phi, sqcup_n};
use crate::thompson_f::{include_f, BinaryPair};
use crate::treelink::{hopf_element, linking_address, linking_move};

/// Nesting limit for the parser.
pub const MAX_DEPTH: usize = 128;
/// Largest generator index, Hopf index or F-word exponent accepted by the
/// evaluator.
pub const MAX_INDEX: u64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    /// Group product.
    Mul,
    /// Central product ⋄.
    Diamond,
    /// ⋄ᵢ.
    DiamondI(u8),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Identity,
    Gen(u64),
    Hopf(i64),
    Link(i64, Box<Expr>, Box<Expr>),
    Phi(Address, Box<Expr>),
    DiamAt(Address, Box<Expr>, Box<Expr>),
    Union(Vec<Expr>),
    Rot(Box<Expr>),
    /// Image of a word in x₀, x₁ (pairs of generator and exponent).
    Incl(Vec<(u8, i64)>),
    Inverse(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn location(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = at - before.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
        (line, column)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(at);
        Error::Parse { line, column, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn unsigned(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        d.parse().map_err(|_| self.error_at(start, "integer out of range"))
    }

    fn signed(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        if !neg {
            self.eat("+");
        }
        let v = self.unsigned()?;
        let v = i64::try_from(v).map_err(|_| self.error_at(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn address(&mut self) -> Result<Address> {
        if self.src.get(self.pos) == Some(&b'e') {
            self.pos += 1;
            return Ok(Address::root());
        }
        let start = self.pos;
        while self.pos < self.src.len() && (b'0'..=b'2').contains(&self.src[self.pos]) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an address ([012]+ or e)"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().expect("digits"))
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat("*") {
                BinOp::Mul
            } else if self.eat("<>") {
                BinOp::Diamond
            } else if self.peek() == Some(b'<') {
                let at = self.pos;
                self.pos += 1;
                let i = match self.src.get(self.pos) {
                    Some(&c @ b'0'..=b'2') => c - b'0',
                    _ => return Err(self.error_at(at, "unknown operator; expected <>, <0>, <1> or <2>")),
                };
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'>') {
                    return Err(self.error_at(at, "unknown operator; expected <>, <0>, <1> or <2>"));
                }
                self.pos += 1;
                BinOp::DiamondI(i)
            } else {
                break;
            };
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while self.eat("^") {
            self.expect("-1")?;
            e = Expr::Inverse(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let word_end = rest.iter().position(|b| !b.is_ascii_alphabetic()).unwrap_or(rest.len());
        let word = std::str::from_utf8(&rest[..word_end]).unwrap();
        match word {
            "" => match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let e = self.expr()?;
                    self.expect(")")?;
                    Ok(e)
                }
                Some(b'1') => {
                    self.pos += 1;
                    if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(self.error_at(start, "unexpected integer"));
                    }
                    Ok(Expr::Identity)
                }
                Some(_) => Err(self.error("expected an expression")),
                None => Err(self.error("unexpected end of input")),
            },
            "y" => {
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected a generator index after 'y'"));
                }
                Ok(Expr::Gen(self.unsigned()?))
            }
            "H" => {
                self.pos += 1;
                self.expect("(")?;
                let n = self.signed()?;
                self.expect(")")?;
                Ok(Expr::Hopf(n))
            }
            "link" => {
                self.pos += 4;
                self.expect("(")?;
                let n = self.signed()?;
                self.expect(",")?;
                let f = self.expr()?;
                self.expect(",")?;
                let g = self.expr()?;
                self.expect(")")?;
                Ok(Expr::Link(n, Box::new(f), Box::new(g)))
            }
            "phi" | "diam" => {
                self.pos += word.len();
                if self.src.get(self.pos) != Some(&b'@') {
                    return Err(self.error(format!("expected '@' after '{word}'")));
                }
                self.pos += 1;
                let a = self.address()?;
                self.expect("(")?;
                let f = self.expr()?;
                let out = if word == "phi" {
                    Expr::Phi(a, Box::new(f))
                } else {
                    self.expect(",")?;
                    let g = self.expr()?;
                    Expr::DiamAt(a, Box::new(f), Box::new(g))
                };
                self.expect(")")?;
                Ok(out)
            }
            "U" => {
                self.pos += 1;
                self.expect("(")?;
                let mut items = vec![self.expr()?];
                while self.eat(",") {
                    items.push(self.expr()?);
                }
                if items.len() < 2 {
                    return Err(self.error("U needs at least two arguments"));
                }
                self.expect(")")?;
                Ok(Expr::Union(items))
            }
            "rot" => {
                self.pos += 3;
                self.expect("(")?;
                let f = self.expr()?;
                self.expect(")")?;
                Ok(Expr::Rot(Box::new(f)))
            }
            "incl" => {
                self.pos += 4;
                self.expect("(")?;
                let w = self.fword()?;
                self.expect(")")?;
                Ok(Expr::Incl(w))
            }
            _ => Err(self.error_at(start, format!("unknown name '{word}'"))),
        }
    }

    fn fword(&mut self) -> Result<Vec<(u8, i64)>> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            if !first && !self.eat("*") && !matches!(self.peek(), Some(b'x' | b'1')) {
                break;
            }
            first = false;
            if self.eat("1") {
                continue;
            }
            let g = if self.eat("x0") {
                0
            } else if self.eat("x1") {
                1
            } else {
                return Err(self.error("expected x0, x1 or 1"));
            };
            let e = if self.eat("^") { self.signed()? } else { 1 };
            if e != 0 {
                out.push((g, e));
            }
        }
        Ok(out)
    }
}

/// Parses an expression; errors carry line and column.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinOp::Mul => write!(f, "*"),
            BinOp::Diamond => write!(f, "<>"),
            BinOp::DiamondI(i) => write!(f, "<{i}>"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Identity => write!(f, "1"),
            Expr::Gen(n) => write!(f, "y{n}"),
            Expr::Hopf(n) => write!(f, "H({n})"),
            Expr::Link(n, a, b) => write!(f, "link({n},{a},{b})"),
            Expr::Phi(a, e) => write!(f, "phi@{a}({e})"),
            Expr::DiamAt(a, x, y) => write!(f, "diam@{a}({x},{y})"),
            Expr::Union(items) => {
                write!(f, "U(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Rot(e) => write!(f, "rot({e})"),
            Expr::Incl(w) => {
                write!(f, "incl(")?;
                if w.is_empty() {
                    write!(f, "1")?;
                }
                for (i, (g, e)) in w.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "x{g}")?;
                    if *e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
                write!(f, ")")
            }
            Expr::Inverse(e) => match **e {
                Expr::Binary(..) => write!(f, "({e})^-1"),
                _ => write!(f, "{e}^-1"),
            },
            Expr::Binary(op, a, b) => {
                write!(f, "{a}{op}")?;
                match **b {
                    Expr::Binary(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

/// An evaluated expression: the element and orientation hints that make
/// the knots of linked pieces follow their own conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub element: Element,
    pub hints: Vec<OrientationHint>,
}

fn check_index(n: u64, what: &str) -> Result<()> {
    if n > MAX_INDEX {
        return Err(Error::Domain(format!("{what} {n} exceeds the limit {MAX_INDEX}")));
    }
    Ok(())
}

fn shifted<'a>(prefix: &Address, hints: &'a [OrientationHint]) -> impl Iterator<Item = OrientationHint> + 'a {
    let prefix = prefix.clone();
    hints.iter().map(move |h| OrientationHint { leaf: prefix.concat(&h.leaf), downward: h.downward })
}

/// Keeps at most one hint per non-central component.
fn tidy(element: Element, hints: Vec<OrientationHint>) -> Value {
    if hints.is_empty() {
        return Value { element, hints };
    }
    let j = jones_diagram(&element);
    let mut seen = vec![false; j.diagram.component_count()];
    seen[j.diagram.marked()] = true;
    let hints = hints
        .into_iter()
        .filter(|h| match j.component_of_leaf(&h.leaf) {
            Some(k) if !seen[k] => {
                seen[k] = true;
                true
            }
            _ => false,
        })
        .collect();
    Value { element, hints }
}

/// Rewrites hints of `f` for grafting `g` at the leaf `at`.
fn graft_hints(f: &Value, at: &Address, g: &Value) -> Vec<OrientationHint> {
    let mut out: Vec<OrientationHint> = f
        .hints
        .iter()
        .map(|h| {
            if h.leaf == *at {
                OrientationHint { leaf: at.concat(&g.element.central_leaf()), downward: h.downward }
            } else {
                h.clone()
            }
        })
        .collect();
    out.extend(shifted(at, &g.hints));
    out
}

fn diamond_value(f: Value, at: &Address, g: Value, element: Element) -> Value {
    let hints = graft_hints(&f, at, &g);
    tidy(element, hints)
}

pub fn evaluate(e: &Expr) -> Result<Element> {
    Ok(evaluate_value(e)?.element)
}

pub fn evaluate_value(e: &Expr) -> Result<Value> {
    let plain = |element| Value { element, hints: Vec::new() };
    Ok(match e {
        Expr::Identity => plain(Element::identity()),
        Expr::Gen(n) => {
            check_index(*n, "generator index")?;
            plain(Element::generator(*n as i64)?)
        }
        Expr::Hopf(n) => {
            check_index(n.unsigned_abs(), "Hopf index")?;
            let h = hopf_element(*n)?;
            tidy(h, vec![OrientationHint::down(Address::root().child(0))])
        }
        Expr::Link(n, a, b) => {
            check_index(n.unsigned_abs(), "linking number")?;
            let (f, g) = (evaluate_value(a)?, evaluate_value(b)?);
            let element = linking_move(*n, &f.element, &g.element)?;
            let at = linking_address(*n);
            let zero = Address::root().child(0);
            let mut hints = vec![
                OrientationHint::down(at.concat(&f.element.central_leaf())),
                OrientationHint::down(zero.concat(&g.element.central_leaf())),
            ];
            hints.extend(shifted(&at, &f.hints));
            hints.extend(shifted(&zero, &g.hints));
            tidy(element, hints)
        }
        Expr::Phi(a, x) => {
            let f = evaluate_value(x)?;
            let element = phi(a, &f.element);
            let hints = shifted(a, &f.hints).collect();
            tidy(element, hints)
        }
        Expr::DiamAt(a, x, y) => {
            let (f, g) = (evaluate_value(x)?, evaluate_value(y)?);
            let element = diamond_at(&f.element, a, &g.element)?;
            diamond_value(f, a, g, element)
        }
        Expr::Union(items) => {
            let values = items.iter().map(evaluate_value).collect::<Result<Vec<_>>>()?;
            let elements: Vec<Element> = values.iter().map(|v| v.element.clone()).collect();
            let element = sqcup_n(&elements)?;
            // ⊔(…⊔(f₁, f₂)…, fₙ): fₖ sits at 1^{n−k}·0 (f₁ at 1^{n−1})
            let n = values.len();
            let mut hints = Vec::new();
            for (k, v) in values.iter().enumerate() {
                let at = if k == 0 { Address::repeat(1, n - 1) } else { Address::repeat(1, n - 1 - k).child(0) };
                hints.push(OrientationHint::down(at.concat(&v.element.central_leaf())));
                hints.extend(shifted(&at, &v.hints));
            }
            tidy(element, hints)
        }
        Expr::Rot(x) => plain(evaluate_value(x)?.element.rotate180()),
        Expr::Incl(w) => {
            let mut acc = BinaryPair::identity();
            for &(g, k) in w {
                check_index(k.unsigned_abs(), "exponent")?;
                let base = if g == 0 { BinaryPair::x0() } else { BinaryPair::x1() };
                let base = if k < 0 { base.invert() } else { base };
                for _ in 0..k.unsigned_abs() {
                    acc = acc.multiply(&base);
                }
            }
            plain(include_f(&acc))
        }
        Expr::Inverse(x) => plain(evaluate_value(x)?.element.invert()),
        Expr::Binary(op, x, y) => {
            let (f, g) = (evaluate_value(x)?, evaluate_value(y)?);
            match op {
                BinOp::Mul => plain(f.element.multiply(&g.element)),
                BinOp::Diamond => {
                    let at = f.element.central_leaf();
                    let element = diamond(&f.element, &g.element);
                    diamond_value(f, &at, g, element)
                }
                BinOp::DiamondI(i) => {
                    let at = f.element.extreme_leaf(*i);
                    let element = diamond_i(&f.element, *i, &g.element)?;
                    diamond_value(f, &at, g, element)
                }
            }
        }
    })
}

/// Parses and evaluates.
pub fn eval_str(src: &str) -> Result<Value> {
    evaluate_value(&parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::jones_diagram_hinted;

    #[test]
    fn identity_and_generators() {
        assert_eq!(parse("1").unwrap(), Expr::Identity);
        assert_eq!(evaluate(&parse("y2*y0").unwrap()), evaluate(&parse("y0*y4").unwrap()));
        assert_eq!(evaluate(&parse("y3 ^-1 * y3").unwrap()).unwrap(), Element::identity());
    }

    #[test]
    fn link_matches_move() {
        let y0 = Element::generator(0).unwrap();
        let v = eval_str("link(1,y0,y0)").unwrap();
        assert_eq!(v.element, linking_move(1, &y0, &y0).unwrap());
        for n in [-3, -1, 2] {
            let v = eval_str(&format!("link({n}, y0, y0)")).unwrap();
            let j = jones_diagram_hinted(&v.element, &v.hints).unwrap();
            assert_eq!(j.diagram.linking_matrix()[0][1], n);
        }
        let h = eval_str("H(-1)").unwrap();
        let j = jones_diagram_hinted(&h.element, &h.hints).unwrap();
        assert_eq!(j.diagram.linking_matrix()[0][1], -1);
    }

    #[test]
    fn nested_links_keep_signs() {
        // a chain: the middle knot linked +2 to one side and −1 to the other
        let v = eval_str("link(2, link(-1, y0, y0), y0)").unwrap();
        let j = jones_diagram_hinted(&v.element, &v.hints).unwrap();
        let m = j.diagram.linking_matrix();
        let mut entries: Vec<i64> = vec![m[0][1], m[0][2], m[1][2]];
        entries.sort();
        assert_eq!(entries, vec![-1, 0, 2]);
    }

    #[test]
    fn operators() {
        let a = evaluate(&parse("y0 <> y1").unwrap()).unwrap();
        let f = Element::generator(0).unwrap();
        let g = Element::generator(1).unwrap();
        assert_eq!(a, diamond(&f, &g));
        let b = evaluate(&parse("y0<2>y1").unwrap()).unwrap();
        assert_eq!(b, diamond_i(&f, 2, &g).unwrap());
        let c = evaluate(&parse("diam@00(y0, y1)").unwrap()).unwrap();
        assert_eq!(c, diamond_at(&f, &"00".parse().unwrap(), &g).unwrap());
        let u = evaluate(&parse("U(y0,y1,y0)").unwrap()).unwrap();
        assert_eq!(u, sqcup_n(&[f.clone(), g.clone(), f.clone()]).unwrap());
        let p = evaluate(&parse("phi@e(y1)").unwrap()).unwrap();
        assert_eq!(p, g);
        let i = evaluate(&parse("incl(x0)").unwrap()).unwrap();
        assert_eq!(i, f);
        let i1 = evaluate(&parse("incl(x1)").unwrap()).unwrap();
        assert_eq!(i1, Element::generator(2).unwrap());
        assert_eq!(evaluate(&parse("rot(rot(y1))").unwrap()).unwrap(), g);
    }

    #[test]
    fn round_trip() {
        for src in [
            "1",
            "y0*y1^-1<>y2",
            "(y0*y1)^-1^-1",
            "y0*(y1<0>y2)",
            "link(-2,H(3),phi@01(y0))",
            "diam@e(1,U(y0,y1))",
            "incl(x0^2*x1^-1)",
            "incl(1)",
            "rot(y4)<1>y0",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }

    #[test]
    fn errors_are_located() {
        let at = |s: &str| match parse(s) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(at("y0 * "), (1, 6));
        assert_eq!(at("y0\n  <3> y1"), (2, 3));
        assert_eq!(at("foo(y0)"), (1, 1));
        assert_eq!(at("y0 y1"), (1, 4));
        assert_eq!(at("U(y0)"), (1, 5));
        let deep = "(".repeat(500) + "y0" + &")".repeat(500);
        assert!(parse(&deep).is_err());
        assert!(matches!(evaluate(&parse("y100000").unwrap()), Err(Error::Domain(_))));
        assert!(matches!(evaluate(&parse("H(0)").unwrap()), Err(Error::Domain(_))));
    }
}
