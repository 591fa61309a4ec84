//! Reducing cochains of the refined covering modulo the image of `d0`, first
//! symbolically in the group algebra, then at a random rational representation.
//!
//! ```bash
//! cargo run --example cech_reduction
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stokes_core::cech::ring::render_matrix;
use stokes_core::cech::{basis_coordinates, d0_matrix, h1, reduce_mod_image, MatrixRep, MonodromyRep};
use stokes_core::example_stokes::build_bundle;

fn main() -> stokes_core::Result<()> {
    let g = build_bundle().at_pi;
    let b = &g.refined;

    println!("d0 (rows: one-cell copies, columns: {:?})", b.zero_cells);
    for (copy, row) in b.copies().iter().zip(render_matrix(&d0_matrix(b)?)) {
        println!("  {:<8} {row:?}", b.copy_label(*copy));
    }

    let pres = h1(b, &MonodromyRep::Symbolic)?;
    for (name, src) in ["ã1", "ã3"].iter().zip(g.sources()?) {
        let c = basis_coordinates(&pres, &reduce_mod_image(&pres, &src)?);
        println!("{name} = ({}) a2 + ({}) a4", c[0], c[1]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rep = MonodromyRep::Matrix(MatrixRep::random(2, &mut rng));
    let pres = h1(b, &rep)?;
    println!(
        "rank 2: dim C1 = {}, rank d0 = {}, dim H1 = {}",
        b.copy_count() * 2,
        pres.rank_d0.unwrap_or(0),
        pres.dim.unwrap_or(0)
    );
    Ok(())
}
