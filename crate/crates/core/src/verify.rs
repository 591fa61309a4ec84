//! Invariant suite behind `stokes verify`. Every check is deterministic given
//! the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::angle::Angle;
use crate::cech::ring::render_matrix;
use crate::cech::{h1, reduce_mod_image, basis_coordinates, BasisChange, MatrixRep, MonodromyRep, RatMatrix};
use crate::divisor_config::{formal_decomposition, stalk_dim, ComponentKind, DivisorComponent, DivisorConfig};
use crate::error::Result;
use crate::example_stokes::{build_bundle, compute_n_zero, stokes_data, validate_stokes_datum};
use crate::exponent_order::{compare_at, stokes_directions, total_order, ComparisonResult, ExponentialFactor, PolarCoefficient};
use crate::fiber::{b_set, h1c_dimension};
use crate::resolution::{resolve, TwistExpression};

/// Random representations per rank in the backend checks.
pub const DEFAULT_TRIALS: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, outcome: Result<std::result::Result<String, String>>) -> CheckResult {
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult { name: name.into(), passed, detail }
}

fn ensure(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> std::result::Result<String, String> {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

/// A direction that is not a multiple of `π/4`, drawn from a fine grid.
pub fn generic_angle<R: Rng>(rng: &mut R) -> Angle {
    loop {
        let k = rng.gen_range(0..960);
        if k % 120 != 0 {
            return Angle::pi_frac(k, 480);
        }
    }
}

pub fn stokes_directions_check() -> Result<std::result::Result<String, String>> {
    let d = stokes_directions(&ExponentialFactor::Zero, &ExponentialFactor::inverse_t())?;
    Ok(ensure(
        d == vec![Angle::pi_frac(1, 2), Angle::pi_frac(3, 2)],
        "{π/2, 3π/2}",
        format!("got {d:?}"),
    ))
}

pub fn order_reversal_check(seed: u64, trials: usize) -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exps = DivisorConfig::worked_example(1).exponents();
    for _ in 0..trials {
        let theta = generic_angle(&mut rng);
        let a = total_order(&exps, theta)?;
        let mut b = total_order(&exps, theta + Angle::pi())?;
        b.reverse();
        if a != b {
            return Ok(Err(format!("order at {theta} does not reverse")));
        }
    }
    Ok(Ok(format!("{trials} directions")))
}

pub fn decomposition_check() -> Result<std::result::Result<String, String>> {
    for r in 1..=3 {
        let d = formal_decomposition(&DivisorConfig::worked_example(r))?;
        if d != vec![(ExponentialFactor::Zero, r), (ExponentialFactor::inverse_t(), r)] {
            return Ok(Err(format!("rank {r}: {d:?}")));
        }
    }
    Ok(Ok("[(0, r), (1/t, r)] for r = 1..3".into()))
}

pub fn dimension_check() -> Result<std::result::Result<String, String>> {
    let mut count = 0;
    for r in 1..=3 {
        let cfg = DivisorConfig::worked_example(r);
        for k in 0..24 {
            // offsets of π/24 keep every grid point away from ±π/2
            let theta = Angle::pi_frac(2 * k + 1, 24);
            for psi in cfg.exponents() {
                let a = h1c_dimension(&b_set(&cfg, &psi, theta)?);
                let b = stalk_dim(&cfg, &psi, theta)?;
                if a != b {
                    return Ok(Err(format!("r={r} ψ={psi} ϑ={theta}: {a} vs {b}")));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(format!("{count} stalks")))
}

/// Configuration with one component at infinity of pole order `n`.
pub fn pole_order_config(n: u32) -> Result<DivisorConfig> {
    Ok(DivisorConfig::new(
        1,
        vec![DivisorComponent {
            kind: ComponentKind::AtInfinity,
            label: "S1".into(),
            factor: ExponentialFactor::polar(n, PolarCoefficient::real(1))?,
            phi_dim: 1,
        }],
    ))
}

pub fn resolution_check() -> Result<std::result::Result<String, String>> {
    for n in 1..=5 {
        let res = resolve(&TwistExpression { psi: ExponentialFactor::Zero }, &pole_order_config(n)?)?;
        if res.chart_forms.iter().any(|f| f.is_bad()) {
            return Ok(Err(format!("ψ=0, n={n}")));
        }
    }
    let cfg = DivisorConfig::worked_example(1);
    for psi in cfg.exponents() {
        resolve(&TwistExpression { psi }, &cfg)?;
    }
    Ok(Ok("ψ=0 for n = 1..5 and both exponents of the example".into()))
}

pub fn reproduction_check() -> Result<std::result::Result<String, String>> {
    let sd = stokes_data(&MonodromyRep::Symbolic)?;
    let n0 = compute_n_zero(&MonodromyRep::Symbolic)?;
    let render = |m: &BasisChange| match m {
        BasisChange::Symbolic(x) => render_matrix(x),
        BasisChange::Matrix(_) => vec![],
    };
    let s = |rows: [[&str; 2]; 2]| rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect::<Vec<Vec<String>>>();
    let ok = render(&sd.s) == s([["-1", "1 - S·T^-1"], ["0", "-S·T^-1"]])
        && render(&n0) == s([["-T·S^-1", "0"], ["1 - T·S^-1", "-1"]])
        && render(&sd.s_prime) == s([["-U·T·S^-1", "0"], ["U - U·T·S^-1", "-U"]]);
    Ok(ensure(ok, "N_π, N_0, S_0^1, S_1^0", "symbolic matrices differ"))
}

pub fn reduction_check() -> Result<std::result::Result<String, String>> {
    let g = build_bundle().at_pi;
    let pres = h1(&g.refined, &MonodromyRep::Symbolic)?;
    let coords: Vec<Vec<String>> = g
        .sources()?
        .iter()
        .map(|s| Ok(basis_coordinates(&pres, &reduce_mod_image(&pres, s)?).iter().map(|x| x.to_string()).collect()))
        .collect::<Result<_>>()?;
    Ok(ensure(
        coords == vec![vec!["-1".to_string(), "1 - S·T^-1".into()], vec!["0".into(), "-S·T^-1".into()]],
        "ã₁ = -a₂ + (1 - S·T^-1)a₄, ã₃ = -S·T^-1·a₄",
        format!("got {coords:?}"),
    ))
}

fn eval(m: &BasisChange, rep: &MatrixRep) -> RatMatrix {
    match m {
        BasisChange::Symbolic(x) => rep.eval_matrix(x),
        BasisChange::Matrix(x) => x.clone(),
    }
}

/// Backend agreement, Stokes-datum validity and `dim H¹ = 2r` on random reps.
pub fn backend_check(seed: u64, trials: usize) -> Result<std::result::Result<String, String>> {
    let sym = stokes_data(&MonodromyRep::Symbolic)?;
    let sym_n0 = compute_n_zero(&MonodromyRep::Symbolic)?;
    let refined = build_bundle().at_pi.refined;
    for rank in 1..=3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(rank as u64));
        for t in 0..trials {
            let m = MatrixRep::random(rank, &mut rng);
            let rep = MonodromyRep::Matrix(m.clone());
            let sd = stokes_data(&rep)?;
            let n0 = compute_n_zero(&rep)?;
            let agree = sd.s == BasisChange::Matrix(eval(&sym.s, &m))
                && sd.s_prime == BasisChange::Matrix(eval(&sym.s_prime, &m))
                && n0 == BasisChange::Matrix(eval(&sym_n0, &m));
            if !agree {
                return Ok(Err(format!("rank {rank}, trial {t}: backends disagree")));
            }
            validate_stokes_datum(&sd, &rep)?;
            if h1(&refined, &rep)?.dim != Some(2 * rank) {
                return Ok(Err(format!("rank {rank}, trial {t}: dim H¹ ≠ 2r")));
            }
        }
    }
    Ok(Ok(format!("{trials} representations at each rank 1..3")))
}

pub fn sign_flip_check() -> Result<std::result::Result<String, String>> {
    let g = build_bundle().at_pi;
    let flipped = crate::example_stokes::GluingData { refined: g.refined.with_flipped_signs(), ..g.clone() };
    Ok(ensure(
        g.change_of_basis(&MonodromyRep::Symbolic)? == flipped.change_of_basis(&MonodromyRep::Symbolic)?,
        "N_π unchanged",
        "N_π changed under a global sign flip",
    ))
}

pub fn comparison_sign_check(seed: u64, trials: usize) -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let theta = generic_angle(&mut rng);
        let phi = ExponentialFactor::inverse_t();
        let expect = if (-theta.to_f64()).cos() < 0.0 {
            ComparisonResult::LessEq
        } else {
            ComparisonResult::GreaterEq
        };
        if compare_at(&phi, &ExponentialFactor::Zero, theta)? != expect {
            return Ok(Err(format!("1/t vs 0 at {theta}")));
        }
    }
    Ok(Ok(format!("{trials} directions")))
}

pub fn run_all(seed: u64, trials: usize) -> Vec<CheckResult> {
    vec![
        check("stokes_directions", stokes_directions_check()),
        check("order_reversal", order_reversal_check(seed, 10)),
        check("comparison_sign", comparison_sign_check(seed, 50)),
        check("formal_decomposition", decomposition_check()),
        check("dimension_consistency", dimension_check()),
        check("resolution_totality", resolution_check()),
        check("matrix_reproduction", reproduction_check()),
        check("reduction_identities", reduction_check()),
        check("sign_flip_invariance", sign_flip_check()),
        check("backend_agreement", backend_check(seed, trials)),
    ]
}
