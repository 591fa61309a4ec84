//! Reduced words in the free group on the monodromy generators `S`, `T`, `U`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S,
    T,
    U,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::S, Generator::T, Generator::U];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::S => "S",
            Generator::T => "T",
            Generator::U => "U",
        }
    }
}

/// One letter `g^(+1)` or `g^(-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    fn key(&self) -> (Generator, bool) {
        (self.gen, self.inverse)
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn gen(g: Generator) -> Self {
        Self(vec![Letter { gen: g, inverse: false }])
    }

    pub fn gen_inv(g: Generator) -> Self {
        Self(vec![Letter { gen: g, inverse: true }])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Self::identity();
        for l in letters {
            out.push(l);
        }
        out
    }

    fn push(&mut self, l: Letter) {
        if self.0.last().is_some_and(|last| *last == l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for l in &other.0 {
            out.push(*l);
        }
        out
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Replaces every occurrence of one generator by another.
    pub fn swap_generators(&self, a: Generator, b: Generator) -> GroupWord {
        GroupWord::from_letters(self.0.iter().map(|l| Letter {
            gen: if l.gen == a {
                b
            } else if l.gen == b {
                a
            } else {
                l.gen
            },
            inverse: l.inverse,
        }))
    }
}

// Length-lexicographic: shorter words first, then letterwise with S < T < U and
// a generator before its inverse.
impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().map(Letter::key).cmp(other.0.iter().map(Letter::key)))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", l.gen.name())
                } else {
                    l.gen.name().to_string()
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Parses `1`, `S`, `S·T^-1`, `S*T^-1`, `ST^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Self::identity());
        }
        let chars: Vec<char> = s.chars().filter(|c| !matches!(c, '·' | '*' | ' ')).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let gen = match chars[i] {
                'S' => Generator::S,
                'T' => Generator::T,
                'U' => Generator::U,
                c => return Err(Error::Parse(format!("unexpected {c:?} in word {s:?}"))),
            };
            i += 1;
            let mut inverse = false;
            if chars.get(i) == Some(&'^') {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'1') {
                    inverse = true;
                    i += 3;
                } else if chars.get(i + 1) == Some(&'1') {
                    i += 2;
                } else {
                    return Err(Error::Parse(format!("bad exponent in word {s:?}")));
                }
            }
            letters.push(Letter { gen, inverse });
        }
        Ok(Self::from_letters(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_inverse() {
        let s = GroupWord::gen(Generator::S);
        let t_inv = GroupWord::gen_inv(Generator::T);
        let w = s.mul(&t_inv);
        assert_eq!(w.to_string(), "S·T^-1");
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(w.inverse().to_string(), "T·S^-1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["1", "S", "S·T^-1", "U·T·S^-1"] {
            assert_eq!(s.parse::<GroupWord>().unwrap().to_string(), s);
        }
        assert_eq!("ST^-1".parse::<GroupWord>().unwrap().to_string(), "S·T^-1");
        assert_eq!("S·S^-1".parse::<GroupWord>().unwrap(), GroupWord::identity());
        assert!("X".parse::<GroupWord>().is_err());
    }

    #[test]
    fn length_lex_order() {
        let one = GroupWord::identity();
        let s = GroupWord::gen(Generator::S);
        let t = GroupWord::gen(Generator::T);
        let st = s.mul(&t);
        assert!(one < s && s < t && t < st);
        assert!(s < GroupWord::gen_inv(Generator::S));
    }
}
