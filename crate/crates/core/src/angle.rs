//! Exact angles, stored as rational multiples of pi reduced into `[0, 2pi)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An angle `value * pi` with `value` in `[0, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational64);

impl Angle {
    pub const ZERO: Angle = Angle(Rational64::new_raw(0, 1));

    /// The angle `turns * pi`, reduced mod `2pi`.
    pub fn from_pi(turns: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let mut r = turns % two;
        if r < Rational64::zero() {
            r += two;
        }
        Angle(r)
    }

    pub fn pi_frac(num: i64, den: i64) -> Self {
        Self::from_pi(Rational64::new(num, den))
    }

    pub fn pi() -> Self {
        Angle(Rational64::one())
    }

    /// Coefficient of pi in `[0, 2)`.
    pub fn turns(&self) -> Rational64 {
        self.0
    }

    /// `q * self`, reduced.
    pub fn scale(&self, q: i64) -> Self {
        Self::from_pi(self.0 * Rational64::from_integer(q))
    }

    /// True when the angle lies in the open interval `(pi/2, 3pi/2)`.
    pub fn in_left_half(&self) -> bool {
        self.0 > Rational64::new(1, 2) && self.0 < Rational64::new(3, 2)
    }

    /// True when the angle is `pi/2` or `3pi/2`.
    pub fn is_vertical(&self) -> bool {
        self.0 == Rational64::new(1, 2) || self.0 == Rational64::new(3, 2)
    }

    pub fn to_f64(&self) -> f64 {
        (*self.0.numer() as f64 / *self.0.denom() as f64) * std::f64::consts::PI
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::from_pi(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::from_pi(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::from_pi(-self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}·π", self.0)
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `a/b`, `a/b·π`, `a/b*pi`, `0`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_end_matches("·π")
            .trim_end_matches("*pi")
            .trim_end_matches("π")
            .trim_end_matches("pi")
            .trim();
        let t = if t.is_empty() { "1" } else { t };
        let r = Rational64::from_str(t).map_err(|e| Error::Parse(format!("angle {s:?}: {e}")))?;
        Ok(Angle::from_pi(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_into_range() {
        assert_eq!(Angle::pi_frac(5, 2), Angle::pi_frac(1, 2));
        assert_eq!(Angle::pi_frac(-1, 2), Angle::pi_frac(3, 2));
        assert_eq!(Angle::pi_frac(4, 1), Angle::ZERO);
    }

    #[test]
    fn parse_and_display() {
        let a: Angle = "3/2·π".parse().unwrap();
        assert_eq!(a, Angle::pi_frac(3, 2));
        assert_eq!(a.to_string(), "3/2·π");
        assert_eq!("-1/2".parse::<Angle>().unwrap(), a);
        assert_eq!("π".parse::<Angle>().unwrap(), Angle::pi());
        assert!("x".parse::<Angle>().is_err());
    }

    #[test]
    fn half_plane_tests() {
        assert!(Angle::pi().in_left_half());
        assert!(!Angle::pi_frac(1, 2).in_left_half());
        assert!(Angle::pi_frac(1, 2).is_vertical());
    }
}
