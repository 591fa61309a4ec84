//! The gluing matrices `N_π`, `N_0` and the Stokes data of the two-factor
//! example, symbolically and at a scalar representation.
//!
//! ```bash
//! cargo run --example stokes_matrices
//! ```

use num_rational::BigRational;
use stokes_core::cech::{MatrixRep, MonodromyRep};
use stokes_core::example_stokes::{stokes_data, total_monodromy, validate_stokes_datum};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn main() -> stokes_core::Result<()> {
    let sd = stokes_data(&MonodromyRep::Symbolic)?;
    println!("S_0^1 = N_π:\n{}", sd.s);
    println!("S_1^0 = diag(U, U)·N_0:\n{}", sd.s_prime);
    println!("S_1^0·S_0^1:\n{}", total_monodromy(&sd)?);

    let rep = MonodromyRep::Matrix(MatrixRep::scalars(int(2), int(3), int(5))?);
    let sd = stokes_data(&rep)?;
    validate_stokes_datum(&sd, &rep)?;
    println!("at S = 2, T = 3, U = 5:\nS_0^1 =\n{}S_1^0 =\n{}", sd.s, sd.s_prime);
    Ok(())
}
