//! Stokes directions between exponential factors and the order they induce.
//!
//! ```bash
//! cargo run --example stokes_directions
//! ```

use stokes_core::exponent_order::{compare_at, stokes_directions, total_order, ExponentialFactor, PolarCoefficient};
use stokes_core::Angle;

fn main() -> stokes_core::Result<()> {
    let zero = ExponentialFactor::Zero;
    let inv_t = ExponentialFactor::inverse_t();
    let dirs = stokes_directions(&zero, &inv_t)?;
    println!("Stokes directions of (0, 1/t):");
    for d in &dirs {
        println!("  {d}");
    }

    let i_over_t2 = ExponentialFactor::polar(2, PolarCoefficient::new(1.into(), Angle::pi_frac(1, 2))?)?;
    println!("Stokes directions of (0, {i_over_t2}):");
    for d in stokes_directions(&zero, &i_over_t2)? {
        println!("  {d}");
    }

    for theta in [Angle::ZERO, Angle::pi_frac(1, 4), Angle::pi()] {
        let order = total_order(&[zero, inv_t], theta)?;
        let shown: Vec<String> = order.iter().map(|f| f.to_string()).collect();
        println!("at {theta}: {}   (1/t vs 0: {:?})", shown.join(" < "), compare_at(&inv_t, &zero, theta)?);
    }
    Ok(())
}
