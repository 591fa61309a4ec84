//! Divisor configurations and the dimension formulas of the Stokes filtration.


use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::exponent_order::{compare_at, ComparisonResult, ExponentialFactor};

/// Where a singular component meets the boundary divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// `mu(t) y = t^q`, meeting `D` at `(0, inf)`; contributes the exponent `mu t^-q`.
    AtInfinity,
    /// `mu(t) x = t^q`, meeting `D` elsewhere; contributes to the regular part.
    Elsewhere,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorComponent {
    pub kind: ComponentKind,
    pub label: String,
    pub factor: ExponentialFactor,
    /// Dimension of the vanishing cycles at the component's intersection point.
    pub phi_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorConfig {
    pub rank: usize,
    pub components: Vec<DivisorComponent>,
}

impl DivisorConfig {
    pub fn new(rank: usize, components: Vec<DivisorComponent>) -> Self {
        Self { rank, components }
    }

    /// The two-component configuration `t*y*(t-y)*x = 0` of rank `r`: `S1: y = t`
    /// and `~S1: x = 0`, each with a full rank-`r` vanishing-cycle space.
    pub fn worked_example(rank: usize) -> Self {
        Self::new(
            rank,
            vec![
                DivisorComponent {
                    kind: ComponentKind::AtInfinity,
                    label: "S1".into(),
                    factor: ExponentialFactor::inverse_t(),
                    phi_dim: rank,
                },
                DivisorComponent {
                    kind: ComponentKind::Elsewhere,
                    label: "~S1".into(),
                    factor: ExponentialFactor::inverse_t(),
                    phi_dim: rank,
                },
            ],
        )
    }

    pub fn at_infinity(&self) -> impl Iterator<Item = &DivisorComponent> {
        self.components.iter().filter(|c| c.kind == ComponentKind::AtInfinity)
    }

    pub fn elsewhere(&self) -> impl Iterator<Item = &DivisorComponent> {
        self.components.iter().filter(|c| c.kind == ComponentKind::Elsewhere)
    }

    /// `n = max q_i` over the components at infinity (0 if there are none).
    pub fn max_pole_order(&self) -> u32 {
        self.at_infinity().map(|c| c.factor.pole_order()).max().unwrap_or(0)
    }

    /// Rank of the regular part: the sum of vanishing-cycle dimensions elsewhere.
    pub fn regular_rank(&self) -> usize {
        self.elsewhere().map(|c| c.phi_dim).sum()
    }

    /// `{0}` together with every exponent at infinity, in input order.
    pub fn exponents(&self) -> Vec<ExponentialFactor> {
        std::iter::once(ExponentialFactor::Zero)
            .chain(self.at_infinity().map(|c| c.factor))
            .collect()
    }
}

pub fn validate(config: &DivisorConfig) -> Result<()> {
    if config.rank == 0 {
        return Err(Error::InvalidComponent {
            index: 0,
            reason: "rank must be positive".into(),
        });
    }
    for (i, c) in config.components.iter().enumerate() {
        if c.factor.is_zero() {
            return Err(Error::InvalidComponent {
                index: i,
                reason: "component factor must be nonzero".into(),
            });
        }
    }
    let comps = &config.components;
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (a, b) = (&comps[i], &comps[j]);
            if a.kind != b.kind {
                continue;
            }
            match a.kind {
                ComponentKind::AtInfinity if a.factor == b.factor => {
                    return Err(Error::AssumptionViolation {
                        first: i,
                        second: j,
                        reason: "equal pole order and leading coefficient".into(),
                    })
                }
                ComponentKind::Elsewhere if a.label == b.label => {
                    return Err(Error::AssumptionViolation {
                        first: i,
                        second: j,
                        reason: format!("duplicate label {:?}", a.label),
                    })
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Exponents of the formal decomposition with the ranks of their regular parts.
pub fn formal_decomposition(config: &DivisorConfig) -> Result<Vec<(ExponentialFactor, usize)>> {
    validate(config)?;
    Ok(std::iter::once((ExponentialFactor::Zero, config.regular_rank()))
        .chain(config.at_infinity().map(|c| (c.factor, c.phi_dim)))
        .collect())
}

pub fn total_dim(config: &DivisorConfig) -> usize {
    config.components.iter().map(|c| c.phi_dim).sum()
}

/// `phi <=_theta psi`, with a Stokes direction reported as an error.
pub(crate) fn le_at(phi: &ExponentialFactor, psi: &ExponentialFactor, theta: Angle) -> Result<bool> {
    match compare_at(phi, psi, theta)? {
        ComparisonResult::LessEq | ComparisonResult::Equal => Ok(true),
        ComparisonResult::GreaterEq => Ok(false),
        ComparisonResult::Stokes => Err(Error::StokesDirectionHit {
            left: phi.to_string(),
            right: psi.to_string(),
            theta: theta.to_string(),
        }),
    }
}

/// Dimension of the stalk of the filtration step `L_{<= psi}` at `theta`.
pub fn stalk_dim(config: &DivisorConfig, psi: &ExponentialFactor, theta: Angle) -> Result<usize> {
    validate(config)?;
    let mut dim = 0;
    for c in config.at_infinity() {
        if le_at(&c.factor, psi, theta)? {
            dim += c.phi_dim;
        }
    }
    if le_at(&ExponentialFactor::Zero, psi, theta)? {
        dim += config.regular_rank();
    }
    Ok(dim)
}

/// Dimension of the graded piece at `psi` (independent of the direction).
pub fn graded_dim(config: &DivisorConfig, psi: &ExponentialFactor) -> usize {
    let at_inf: usize = config
        .at_infinity()
        .filter(|c| c.factor == *psi)
        .map(|c| c.phi_dim)
        .sum();
    if psi.is_zero() {
        at_inf + config.regular_rank()
    } else {
        at_inf
    }
}
