//! Stokes structures for direct images of exponentially twisted regular
//! singular connections on `Δ × P¹`.
//!
//! The crate covers the combinatorial side of the picture: comparison of
//! exponential factors and Stokes directions, dimensions of the Stokes
//! filtration, the blow-up charts making the twist good, the puncture model of
//! the fibres, a Čech engine for extension-by-zero local systems given by a
//! monodromy representation, and the explicit Stokes matrices of the
//! two-component example `t·y·(t−y)·x = 0`.

pub mod angle;
pub mod cech;
pub mod cli;
pub mod divisor_config;
pub mod error;
pub mod example_stokes;
pub mod exponent_order;
pub mod fiber;
pub mod resolution;
pub mod verify;

pub use angle::Angle;
pub use error::{Error, Result};
