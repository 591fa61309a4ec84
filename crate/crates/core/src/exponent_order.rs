//! Exponential factors `mu0 * t^-q` and their comparison at a direction.
//!
//! Only the leading polar datum `(q, mu(0))` of a factor is kept. Two factors
//! compare through the leading term `c * t^-q` of their difference: at the
//! direction `theta`, `phi <= psi` holds when `e^(phi - psi)` has moderate
//! growth, i.e. when `arg(c) - q*theta` lies in `(pi/2, 3pi/2)` mod `2pi`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Nonzero complex number in polar form with rational modulus and an exact angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolarCoefficient {
    modulus: Rational64,
    argument: Angle,
}

impl PolarCoefficient {
    pub fn new(modulus: Rational64, argument: Angle) -> Result<Self> {
        if modulus <= Rational64::zero() {
            return Err(Error::Parse(format!("modulus must be positive, got {modulus}")));
        }
        Ok(Self { modulus, argument })
    }

    /// A positive real number.
    pub fn real(modulus: i64) -> Self {
        Self::new(Rational64::from_integer(modulus), Angle::ZERO).expect("positive modulus")
    }

    pub fn modulus(&self) -> Rational64 {
        self.modulus
    }

    pub fn argument(&self) -> Angle {
        self.argument
    }

    pub fn negate(&self) -> Self {
        Self {
            modulus: self.modulus,
            argument: self.argument + Angle::pi(),
        }
    }
}

impl fmt::Display for PolarCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.argument.turns();
        if a.is_zero() {
            write!(f, "{}", self.modulus)
        } else if a == Rational64::one() {
            write!(f, "-{}", self.modulus)
        } else if self.modulus.is_one() {
            write!(f, "e^(i·{})", self.argument)
        } else {
            write!(f, "{}·e^(i·{})", self.modulus, self.argument)
        }
    }
}

/// Polar part of an exponent: zero or `mu0 * t^-q` with `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentialFactor {
    Zero,
    Polar { q: u32, mu0: PolarCoefficient },
}

impl ExponentialFactor {
    pub fn polar(q: u32, mu0: PolarCoefficient) -> Result<Self> {
        if q == 0 {
            return Err(Error::Parse("pole order q must be at least 1".into()));
        }
        Ok(ExponentialFactor::Polar { q, mu0 })
    }

    /// `1/t`.
    pub fn inverse_t() -> Self {
        ExponentialFactor::Polar {
            q: 1,
            mu0: PolarCoefficient::real(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExponentialFactor::Zero)
    }

    pub fn pole_order(&self) -> u32 {
        match self {
            ExponentialFactor::Zero => 0,
            ExponentialFactor::Polar { q, .. } => *q,
        }
    }
}

impl fmt::Display for ExponentialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentialFactor::Zero => write!(f, "0"),
            ExponentialFactor::Polar { q, mu0 } => {
                let c = mu0.to_string();
                let c = if c.contains('·') { format!("({c})") } else { c };
                if *q == 1 {
                    write!(f, "{c}/t")
                } else {
                    write!(f, "{c}/t^{q}")
                }
            }
        }
    }
}

/// Outcome of comparing two factors at a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComparisonResult {
    LessEq,
    GreaterEq,
    Equal,
    Stokes,
}

/// Leading term `c * t^-q` of `phi - psi`, or `None` if the difference vanishes.
pub fn leading_difference(
    phi: &ExponentialFactor,
    psi: &ExponentialFactor,
) -> Result<Option<(u32, PolarCoefficient)>> {
    use ExponentialFactor::*;
    let lead = match (phi, psi) {
        (Zero, Zero) => None,
        (Polar { q, mu0 }, Zero) => Some((*q, *mu0)),
        (Zero, Polar { q, mu0 }) => Some((*q, mu0.negate())),
        (Polar { q: qa, mu0: a }, Polar { q: qb, mu0: b }) => match qa.cmp(qb) {
            Ordering::Greater => Some((*qa, *a)),
            Ordering::Less => Some((*qb, b.negate())),
            Ordering::Equal => subtract_same_order(a, b)
                .ok_or_else(|| Error::IrrationalDifference {
                    left: phi.to_string(),
                    right: psi.to_string(),
                })?
                .map(|c| (*qa, c)),
        },
    };
    Ok(lead)
}

// a - b in polar form. Exact only when the arguments agree or differ by pi;
// the outer None signals an argument outside the rational multiples of pi.
fn subtract_same_order(a: &PolarCoefficient, b: &PolarCoefficient) -> Option<Option<PolarCoefficient>> {
    if a.argument == b.argument {
        let d = a.modulus - b.modulus;
        if d.is_zero() {
            Some(None)
        } else if d.is_positive() {
            Some(Some(PolarCoefficient { modulus: d, argument: a.argument }))
        } else {
            Some(Some(PolarCoefficient {
                modulus: -d,
                argument: a.argument + Angle::pi(),
            }))
        }
    } else if a.argument == b.argument + Angle::pi() {
        Some(Some(PolarCoefficient {
            modulus: a.modulus + b.modulus,
            argument: a.argument,
        }))
    } else {
        None
    }
}

/// Compares `phi` and `psi` at the direction `theta`.
pub fn compare_at(
    phi: &ExponentialFactor,
    psi: &ExponentialFactor,
    theta: Angle,
) -> Result<ComparisonResult> {
    let Some((q, c)) = leading_difference(phi, psi)? else {
        return Ok(ComparisonResult::Equal);
    };
    let x = c.argument() - theta.scale(q as i64);
    Ok(if x.is_vertical() {
        ComparisonResult::Stokes
    } else if x.in_left_half() {
        ComparisonResult::LessEq
    } else {
        ComparisonResult::GreaterEq
    })
}

/// The `2q` Stokes directions of the pair, sorted ascending in `[0, 2pi)`.
pub fn stokes_directions(phi: &ExponentialFactor, psi: &ExponentialFactor) -> Result<Vec<Angle>> {
    let (q, c) = leading_difference(phi, psi)?.ok_or(Error::EqualFactors)?;
    let q = q as i64;
    // arg(c) - q*theta = 1/2 + k (in units of pi), k = 0 .. 2q-1
    let mut out: Vec<Angle> = (0..2 * q)
        .map(|k| {
            let turns = (c.argument().turns() - Rational64::new(1, 2) - Rational64::from_integer(k))
                / Rational64::from_integer(q);
            Angle::from_pi(turns)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Sorts `factors` increasingly for `<=_theta0`. Equal factors keep input order.
pub fn total_order(factors: &[ExponentialFactor], theta0: Angle) -> Result<Vec<ExponentialFactor>> {
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            if compare_at(a, b, theta0)? == ComparisonResult::Stokes {
                return Err(Error::StokesDirectionHit {
                    left: a.to_string(),
                    right: b.to_string(),
                    theta: theta0.to_string(),
                });
            }
        }
    }
    let mut out = factors.to_vec();
    out.sort_by(|a, b| match compare_at(a, b, theta0) {
        Ok(ComparisonResult::LessEq) => Ordering::Less,
        Ok(ComparisonResult::GreaterEq) => Ordering::Greater,
        _ => Ordering::Equal,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_inv() -> ExponentialFactor {
        ExponentialFactor::inverse_t()
    }

    #[test]
    fn compare_zero_and_inverse_t() {
        let z = ExponentialFactor::Zero;
        assert_eq!(compare_at(&z, &t_inv(), Angle::ZERO).unwrap(), ComparisonResult::LessEq);
        assert_eq!(compare_at(&t_inv(), &t_inv(), Angle::pi_frac(1, 3)).unwrap(), ComparisonResult::Equal);
        assert_eq!(compare_at(&z, &t_inv(), Angle::pi_frac(1, 2)).unwrap(), ComparisonResult::Stokes);
        assert_eq!(compare_at(&z, &t_inv(), Angle::pi()).unwrap(), ComparisonResult::GreaterEq);
    }

    #[test]
    fn directions_of_zero_and_inverse_t() {
        let d = stokes_directions(&ExponentialFactor::Zero, &t_inv()).unwrap();
        assert_eq!(d, vec![Angle::pi_frac(1, 2), Angle::pi_frac(3, 2)]);
        assert_eq!(stokes_directions(&t_inv(), &t_inv()), Err(Error::EqualFactors));
    }

    #[test]
    fn same_order_difference() {
        let a = ExponentialFactor::polar(2, PolarCoefficient::real(3)).unwrap();
        let b = ExponentialFactor::polar(2, PolarCoefficient::real(1)).unwrap();
        let (q, c) = leading_difference(&a, &b).unwrap().unwrap();
        assert_eq!((q, c), (2, PolarCoefficient::real(2)));
        let (_, c) = leading_difference(&b, &a).unwrap().unwrap();
        assert_eq!(c.argument(), Angle::pi());

        let i = ExponentialFactor::polar(1, PolarCoefficient::new(Rational64::one(), Angle::pi_frac(1, 2)).unwrap()).unwrap();
        assert!(matches!(
            leading_difference(&t_inv(), &i),
            Err(Error::IrrationalDifference { .. })
        ));
    }

    #[test]
    fn order_reverses_at_pi() {
        let f = [ExponentialFactor::Zero, t_inv()];
        assert_eq!(total_order(&f, Angle::ZERO).unwrap(), vec![ExponentialFactor::Zero, t_inv()]);
        assert_eq!(total_order(&f, Angle::pi()).unwrap(), vec![t_inv(), ExponentialFactor::Zero]);
        assert!(matches!(
            total_order(&f, Angle::pi_frac(1, 2)),
            Err(Error::StokesDirectionHit { .. })
        ));
    }

    #[test]
    fn ties_keep_input_order() {
        let a = t_inv();
        let f = [a, ExponentialFactor::Zero, a];
        let out = total_order(&f, Angle::ZERO).unwrap();
        assert_eq!(out, vec![ExponentialFactor::Zero, a, a]);
    }

    #[test]
    fn display() {
        assert_eq!(t_inv().to_string(), "1/t");
        let f = ExponentialFactor::polar(2, PolarCoefficient::real(3)).unwrap();
        assert_eq!(f.to_string(), "3/t^2");
    }
}
