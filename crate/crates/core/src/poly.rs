//! Exact Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Σ cₖ·xᵏ over a formal variable x; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i128, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i128)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> i128 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: i128) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c = c.checked_add(coeff).expect("coefficient overflow");
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by xᵏ.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, s: i128) -> Self {
        if s == 0 {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, c.checked_mul(s).expect("coefficient overflow"))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// x ↦ x^k for a non-zero integer k.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0);
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e * k, c)).collect() }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dlc) = (d.min_exp()?, d.coeff(d.min_exp()?));
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero();
        let span = d.max_exp()? - dlo;
        while let Some(lo) = rem.min_exp() {
            let c = rem.coeff(lo);
            if c % dlc != 0 || rem.max_exp()? - lo < span {
                return None;
            }
            let t = LaurentPoly::monomial(c / dlc, lo - dlo);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Renders with the given variable name; exponents are divided by
    /// `denom` and printed as reduced fractions.
    pub fn render(&self, var: &str, denom: i64) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", c.unsigned_abs()) } else { ("+", c as u128) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let g = gcd(e.unsigned_abs(), denom as u64) as i64;
            let (num, den) = if e == 0 { (0, 1) } else { (e / g, denom / g) };
            let power = match (num, den) {
                (0, _) => None,
                (1, 1) => Some(var.to_string()),
                (n, 1) => Some(format!("{var}^{n}")),
                (n, d) => Some(format!("{var}^{n}/{d}")),
            };
            match power {
                None => out.push_str(&mag.to_string()),
                Some(p) if mag == 1 => out.push_str(&p),
                Some(p) => out.push_str(&format!("{mag}{p}")),
            }
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", 1))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", 1))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.checked_neg().expect("coefficient overflow"));
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    // exponents add when terms multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
