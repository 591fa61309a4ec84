//! Gaussian rationals and bivariate polynomials over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::exponent_order::PolarCoefficient;

/// `re + i*im` with rational parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational64,
    pub im: Rational64,
}

impl Gaussian {
    pub fn new(re: Rational64, im: Rational64) -> Self {
        Self { re, im }
    }

    pub fn int(n: i64) -> Self {
        Self::new(Rational64::from_integer(n), Rational64::zero())
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.re * self.re + self.im * self.im;
        if n.is_zero() {
            return None;
        }
        Some(Self::new(self.re / n, -self.im / n))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc * *self)
    }

    /// Converts a polar coefficient whose argument is a multiple of `pi/2`.
    pub fn from_polar(c: &PolarCoefficient) -> Result<Self> {
        let m = c.modulus();
        let z = Rational64::zero();
        let a = c.argument().turns();
        if a == Rational64::zero() {
            Ok(Self::new(m, z))
        } else if a == Rational64::new(1, 2) {
            Ok(Self::new(z, m))
        } else if a == Rational64::one() {
            Ok(Self::new(-m, z))
        } else if a == Rational64::new(3, 2) {
            Ok(Self::new(z, -m))
        } else {
            Err(Error::UnsupportedTwist(format!(
                "coefficient {c} has an argument that is not a multiple of pi/2"
            )))
        }
    }

    /// Exact argument, when it is a multiple of `pi/4` with equal or vanishing parts;
    /// otherwise `None`.
    pub fn argument(&self) -> Option<Angle> {
        let z = Rational64::zero();
        let (re, im) = (self.re, self.im);
        let turns = match (re.cmp(&z), im.cmp(&z)) {
            (std::cmp::Ordering::Greater, std::cmp::Ordering::Equal) => Rational64::zero(),
            (std::cmp::Ordering::Equal, std::cmp::Ordering::Greater) => Rational64::new(1, 2),
            (std::cmp::Ordering::Less, std::cmp::Ordering::Equal) => Rational64::one(),
            (std::cmp::Ordering::Equal, std::cmp::Ordering::Less) => Rational64::new(3, 2),
            _ if re == im && re > z => Rational64::new(1, 4),
            _ if re == -im && im > z => Rational64::new(3, 4),
            _ if re == im && re < z => Rational64::new(5, 4),
            _ if re == -im && re > z => Rational64::new(7, 4),
            _ => return None,
        };
        Some(Angle::from_pi(turns))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "({} + {}i)", self.re, self.im),
        }
    }
}

/// Polynomial in `(u, v)`; keys are exponent pairs, zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Gaussian>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Gaussian) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(Gaussian::one())
    }

    pub fn monomial(c: Gaussian, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Self { terms }
    }

    pub fn u() -> Self {
        Self::monomial(Gaussian::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(Gaussian::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Gaussian)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: (u32, u32), c: Gaussian) {
        let e = self.terms.entry(key).or_insert_with(Gaussian::zero);
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: Gaussian) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, *x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Largest `(a, b)` with `u^a v^b` dividing every term.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (a, b)
    }

    /// Divides by `u^a v^b`; the caller guarantees exact divisibility.
    pub fn shift_down(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| ((k.0 - a, k.1 - b), *c)).collect(),
        }
    }

    /// Substitutes polynomials for `u` and `v`.
    pub fn compose(&self, u: &Poly2, v: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a, b), c) in &self.terms {
            out = &out + &(&u.pow(*a) * &v.pow(*b)).scale(*c);
        }
        out
    }

    /// Coefficients of `p(0, v)` indexed by the power of `v`.
    pub fn restrict_u0(&self) -> Vec<Gaussian> {
        let deg = self.terms.keys().filter(|k| k.0 == 0).map(|k| k.1).max();
        let Some(deg) = deg else { return Vec::new() };
        let mut out = vec![Gaussian::zero(); deg as usize + 1];
        for ((a, b), c) in &self.terms {
            if *a == 0 {
                out[*b as usize] = *c;
            }
        }
        out
    }

    pub fn eval_u0(&self, v0: Gaussian) -> Gaussian {
        self.restrict_u0()
            .iter()
            .rev()
            .fold(Gaussian::zero(), |acc, c| acc * v0 + *c)
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, o: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, *c);
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, o: &Poly2) -> Poly2 {
        self + &o.scale(-Gaussian::one())
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, o: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                out.add_term((a1 + a2, b1 + b2), *c1 * *c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let mut mono = String::new();
                for (var, e) in [("u", *a), ("v", *b)] {
                    match e {
                        0 => {}
                        1 => mono.push_str(var),
                        _ => mono.push_str(&format!("{var}^{e}")),
                    }
                }
                if mono.is_empty() {
                    c.to_string()
                } else if *c == Gaussian::one() {
                    mono
                } else if *c == -Gaussian::one() {
                    format!("-{mono}")
                } else {
                    format!("{c}·{mono}")
                }
            })
            .collect();
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            match (i, p.strip_prefix('-')) {
                (0, _) => out.push_str(p),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        write!(f, "{out}")
    }
}

/// Divides a univariate polynomial (ascending coefficients) by `(v - root)` as
/// many times as it divides exactly; returns the quotient and the multiplicity.
pub fn deflate(coeffs: &[Gaussian], root: Gaussian) -> (Vec<Gaussian>, usize) {
    let mut p = coeffs.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut mult = 0;
    while p.len() > 1 {
        // synthetic division
        let n = p.len() - 1;
        let mut q = vec![Gaussian::zero(); n];
        let mut carry = Gaussian::zero();
        for i in (0..=n).rev() {
            let c = p[i] + carry * root;
            if i == 0 {
                if !c.is_zero() {
                    return (p, mult);
                }
            } else {
                q[i - 1] = c;
            }
            carry = c;
        }
        p = q;
        mult += 1;
    }
    (p, mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let i = Gaussian::new(Rational64::zero(), Rational64::one());
        assert_eq!(i * i, Gaussian::int(-1));
        assert_eq!(i.inv().unwrap(), -i);
        assert!(Gaussian::zero().inv().is_none());
        assert_eq!(i.argument(), Some(Angle::pi_frac(1, 2)));
        assert_eq!(Gaussian::new(Rational64::one(), Rational64::one()).argument(), Some(Angle::pi_frac(1, 4)));
        assert_eq!(Gaussian::new(Rational64::one(), Rational64::from_integer(2)).argument(), None);
    }

    #[test]
    fn compose_and_content() {
        // (1 - v) with u -> uv, v -> v
        let p = &Poly2::one() - &Poly2::v();
        let q = p.compose(&(&Poly2::u() * &Poly2::v()), &Poly2::v());
        assert_eq!(q, p);
        let m = &Poly2::u().pow(2) * &Poly2::v();
        assert_eq!(m.monomial_content(), (2, 1));
        assert_eq!(m.shift_down(2, 1), Poly2::one());
    }

    #[test]
    fn deflation() {
        // (v - 1)^2 (v + 2) = v^3 - 3v + 2
        let c = [Gaussian::int(2), Gaussian::int(-3), Gaussian::int(0), Gaussian::int(1)];
        let (q, m) = deflate(&c, Gaussian::int(1));
        assert_eq!(m, 2);
        assert_eq!(q, vec![Gaussian::int(2), Gaussian::int(1)]);
        let (_, m) = deflate(&c, Gaussian::int(5));
        assert_eq!(m, 0);
    }
}
