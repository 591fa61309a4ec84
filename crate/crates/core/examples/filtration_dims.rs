//! Formal decomposition and stalk dimensions of the Stokes filtration for the
//! two-factor configuration `t·y·(t−y)·x = 0`.
//!
//! ```bash
//! cargo run --example filtration_dims -- 2
//! ```

use stokes_core::divisor_config::{formal_decomposition, graded_dim, stalk_dim, DivisorConfig};
use stokes_core::Angle;

fn main() -> stokes_core::Result<()> {
    let r: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let cfg = DivisorConfig::worked_example(r);

    println!("formal decomposition (rank {r}):");
    for (psi, rank) in formal_decomposition(&cfg)? {
        println!("  {psi:>4}  rank {rank}  graded {}", graded_dim(&cfg, &psi));
    }

    println!("\n{:>8} {:>6} {:>6}", "theta", "0", "1/t");
    for k in 0..12 {
        let theta = Angle::pi_frac(2 * k + 1, 12);
        let dims: Vec<usize> = cfg
            .exponents()
            .iter()
            .map(|psi| stalk_dim(&cfg, psi, theta))
            .collect::<Result<_, _>>()?;
        println!("{:>8} {:>6} {:>6}", theta.to_string(), dims[0], dims[1]);
    }
    Ok(())
}
