//! Elements of the rational group algebra of the free group on `S`, `T`, `U`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::word::{Generator, GroupWord};
use crate::error::{Error, Result};

/// Finite sum `Σ c_w · w`. Zero coefficients are never stored, and terms are
/// kept in length-lexicographic word order, so structural equality is equality
/// in the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElement {
    terms: BTreeMap<GroupWord, BigRational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(GroupWord::identity())
    }

    pub fn word(w: GroupWord) -> Self {
        Self::term(BigRational::one(), w)
    }

    pub fn gen(g: Generator) -> Self {
        Self::word(GroupWord::gen(g))
    }

    pub fn integer(n: i64) -> Self {
        Self::term(BigRational::from_integer(BigInt::from(n)), GroupWord::identity())
    }

    pub fn term(c: BigRational, w: GroupWord) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, w: GroupWord, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// A single nonzero term `c · w`; such elements are invertible.
    pub fn as_unit(&self) -> Option<(&BigRational, &GroupWord)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(w, c)| (c, w))
        } else {
            None
        }
    }

    /// Inverse of a unit, `None` for anything else.
    pub fn unit_inverse(&self) -> Option<RingElement> {
        let (c, w) = self.as_unit()?;
        Some(Self::term(c.recip(), w.inverse()))
    }

    pub fn swap_generators(&self, a: Generator, b: Generator) -> RingElement {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.swap_generators(a, b), c.clone());
        }
        out
    }
}

impl From<GroupWord> for RingElement {
    fn from(w: GroupWord) -> Self {
        Self::word(w)
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, o: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, o: &RingElement) -> RingElement {
        self + &(-o)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, o: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.mul(w2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_identity() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}·{w}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RingElement {
    type Err = Error;

    /// Parses the output of `Display`, e.g. `1 - S·T^-1` or `-1/3·U·T`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut rest = s;
        let mut sign = BigRational::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        }
        loop {
            let next = [" + ", " - "]
                .iter()
                .filter_map(|sep| rest.find(sep).map(|i| (i, *sep)))
                .min_by_key(|(i, _)| *i);
            let (chunk, tail) = match next {
                Some((i, sep)) => (&rest[..i], Some((sep, &rest[i + 3..]))),
                None => (rest, None),
            };
            out.add_term_str(chunk.trim(), &sign)?;
            match tail {
                Some((sep, t)) => {
                    sign = if sep == " - " { -BigRational::one() } else { BigRational::one() };
                    rest = t;
                }
                None => break,
            }
        }
        Ok(out)
    }
}

impl RingElement {
    fn add_term_str(&mut self, chunk: &str, sign: &BigRational) -> Result<()> {
        if chunk.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let starts_numeric = chunk.chars().next().is_some_and(|c| c.is_ascii_digit());
        let (coef, word) = if starts_numeric {
            match chunk.split_once('·').or_else(|| chunk.split_once('*')) {
                Some((c, w)) => (c, w),
                None => (chunk, "1"),
            }
        } else {
            ("1", chunk)
        };
        let c = BigRational::from_str(coef.trim())
            .map_err(|e| Error::Parse(format!("coefficient {coef:?}: {e}")))?;
        let w: GroupWord = word.parse()?;
        self.add_term(w, c * sign);
        Ok(())
    }
}

/// Dense matrix of ring elements.
pub type RingMatrix = Vec<Vec<RingElement>>;

pub fn ring_matmul(a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(RingElement::zero(), |acc, k| &acc + &(&row[k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

pub fn ring_diag(entries: &[RingElement]) -> RingMatrix {
    (0..entries.len())
        .map(|i| {
            (0..entries.len())
                .map(|j| if i == j { entries[i].clone() } else { RingElement::zero() })
                .collect()
        })
        .collect()
}

pub fn render_matrix(m: &RingMatrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

pub fn parse_matrix(rows: &[Vec<String>]) -> Result<RingMatrix> {
    rows.iter()
        .map(|r| r.iter().map(|e| e.parse()).collect())
        .collect()
}
