//! Supports `B_psi^theta` in the fibre and the dimension of compactly supported
//! cohomology, compared with the stalk dimension of the filtration.
//!
//! ```bash
//! cargo run --example fiber_supports
//! ```

use stokes_core::divisor_config::{stalk_dim, DivisorConfig};
use stokes_core::fiber::{b_set, h1c_dimension};
use stokes_core::Angle;

fn main() -> stokes_core::Result<()> {
    let cfg = DivisorConfig::worked_example(2);
    for theta in [Angle::ZERO, Angle::pi_frac(1, 3), Angle::pi()] {
        for psi in cfg.exponents() {
            let b = b_set(&cfg, &psi, theta)?;
            let labels: Vec<&str> = b.punctures.iter().map(|p| p.label.as_str()).collect();
            println!(
                "theta {:<6} psi {:<4} punctures {:<16} arc ({}, {})  dim H1c {} = stalk {}",
                theta.to_string(),
                psi.to_string(),
                format!("{labels:?}"),
                b.arc.start,
                b.arc.end,
                h1c_dimension(&b),
                stalk_dim(&cfg, &psi, theta)?,
            );
        }
    }
    Ok(())
}
