//! Combinatorial model of the fibre over a direction: a disc whose punctures are
//! the intersection points `P_i`, `~P_j`, together with an open arc of its
//! boundary circle. The support `B_psi^theta` is recorded by the punctures it
//! contains and by that arc.

use serde::Serialize;

use crate::angle::Angle;
use crate::divisor_config::{le_at, validate, ComponentKind, DivisorConfig};
use crate::error::Result;
use crate::exponent_order::ExponentialFactor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Puncture {
    /// `P_<label>` for components at infinity, `~P_<label>` otherwise.
    pub label: String,
    pub component: usize,
    pub phi_dim: usize,
}

/// Open arc `(start, start + pi)` on the boundary circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
}

impl Arc {
    pub fn contains(&self, a: Angle) -> bool {
        let len = self.end - self.start;
        let off = a - self.start;
        off != Angle::ZERO && off < len
    }

    pub fn length(&self) -> Angle {
        self.end - self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSet {
    pub psi: ExponentialFactor,
    pub theta: Angle,
    pub punctures: Vec<Puncture>,
    pub arc: Arc,
}

/// The arc `(pi/2 - n theta, 3pi/2 - n theta)` of boundary points in `B`.
pub fn boundary_arc(n: u32, theta: Angle) -> Arc {
    let shift = theta.scale(n as i64);
    Arc {
        start: Angle::pi_frac(1, 2) - shift,
        end: Angle::pi_frac(3, 2) - shift,
    }
}

/// Moderate growth of `e^g` at a point with angular coordinates `(theta_u, theta_v)`
/// where `g = u^-m v^-n beta` and `beta(0, v)` has argument `beta0_arg`.
/// `None` for `beta0_arg` stands for a holomorphic `g`.
pub fn moderate_point(m: u32, n: u32, beta0_arg: Option<Angle>, theta_u: Angle, theta_v: Angle) -> bool {
    match beta0_arg {
        None => true,
        Some(arg) => (arg - theta_u.scale(m as i64) - theta_v.scale(n as i64)).in_left_half(),
    }
}

pub fn puncture_label(config: &DivisorConfig, component: usize) -> String {
    let c = &config.components[component];
    match c.kind {
        ComponentKind::AtInfinity => format!("P_{}", c.label),
        ComponentKind::Elsewhere => format!("~P_{}", c.label.trim_start_matches('~')),
    }
}

/// The support `B_psi^theta`: `P_i` lies in it iff `psi_i <=_theta psi`, and the
/// points `~P_j` lie in it iff `0 <=_theta psi`.
pub fn b_set(config: &DivisorConfig, psi: &ExponentialFactor, theta: Angle) -> Result<BSet> {
    validate(config)?;
    let regular_in = le_at(&ExponentialFactor::Zero, psi, theta)?;
    let mut punctures = Vec::new();
    for (i, c) in config.components.iter().enumerate() {
        let included = match c.kind {
            ComponentKind::AtInfinity => le_at(&c.factor, psi, theta)?,
            ComponentKind::Elsewhere => regular_in,
        };
        if included {
            punctures.push(Puncture {
                label: puncture_label(config, i),
                component: i,
                phi_dim: c.phi_dim,
            });
        }
    }
    Ok(BSet {
        psi: *psi,
        theta,
        punctures,
        arc: boundary_arc(config.max_pole_order().max(1), theta),
    })
}

/// Dimension of `H^1_c` of the extension by zero: the sum of the vanishing-cycle
/// dimensions at the punctures in the support.
pub fn h1c_dimension(bset: &BSet) -> usize {
    bset.punctures.iter().map(|p| p.phi_dim).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(b: &BSet) -> Vec<&str> {
        b.punctures.iter().map(|p| p.label.as_str()).collect()
    }

    #[test]
    fn arcs() {
        let a = boundary_arc(1, Angle::ZERO);
        assert_eq!((a.start, a.end), (Angle::pi_frac(1, 2), Angle::pi_frac(3, 2)));
        let a = boundary_arc(2, Angle::pi());
        assert_eq!((a.start, a.end), (Angle::pi_frac(1, 2), Angle::pi_frac(3, 2)));
        let a = boundary_arc(1, Angle::pi_frac(1, 2));
        assert_eq!((a.start, a.end), (Angle::ZERO, Angle::pi()));
        assert!(a.contains(Angle::pi_frac(1, 2)));
        assert!(!a.contains(Angle::ZERO));
        assert!(!a.contains(Angle::pi()));
        assert_eq!(a.length(), Angle::pi());
    }

    #[test]
    fn moderate_points() {
        assert!(moderate_point(3, 4, None, Angle::ZERO, Angle::ZERO));
        assert!(moderate_point(0, 1, Some(Angle::ZERO), Angle::ZERO, Angle::pi()));
        assert!(!moderate_point(1, 1, Some(Angle::ZERO), Angle::ZERO, Angle::ZERO));
    }

    #[test]
    fn worked_example_supports() {
        let cfg = DivisorConfig::worked_example(2);
        let t = ExponentialFactor::inverse_t();
        let b = b_set(&cfg, &ExponentialFactor::Zero, Angle::ZERO).unwrap();
        assert_eq!(labels(&b), vec!["~P_S1"]);
        assert_eq!(h1c_dimension(&b), 2);
        let b = b_set(&cfg, &t, Angle::ZERO).unwrap();
        assert_eq!(labels(&b), vec!["P_S1", "~P_S1"]);
        assert_eq!(h1c_dimension(&b), 4);
        let b = b_set(&cfg, &t, Angle::pi()).unwrap();
        assert_eq!(labels(&b), vec!["P_S1"]);
        assert!(b_set(&cfg, &t, Angle::pi_frac(1, 2)).is_err());
    }

    #[test]
    fn empty_support_has_zero_dimension() {
        let b = BSet {
            psi: ExponentialFactor::Zero,
            theta: Angle::ZERO,
            punctures: vec![],
            arc: boundary_arc(1, Angle::ZERO),
        };
        assert_eq!(h1c_dimension(&b), 0);
    }
}
