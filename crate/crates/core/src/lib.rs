//! Numerical audits of Bloch-type spaces on the unit ball of C^n.
//!
//! The crate builds holomorphic functions on the disk and the ball (truncated
//! power series, outer and singular inner functions from boundary data,
//! products, slices) and measures them against modulus-based membership
//! criteria: gradient growth, oscillation of |f| on the small balls `B_z`,
//! logarithmic oscillation, the refined Schwarz–Pick inequality for zero-free
//! maps and the Poisson-integral criteria for outer/singular-inner functions.
//!
//! Every verdict is a measurement on a finite grid, never a proof.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
mod error;
pub mod functions;
pub mod geometry;
pub mod lowdisc;
pub mod quadrature;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use analysis::{CriteriaReport, SampleGrid, Trend};
pub use functions::{BoundaryData, HoloFunction};
pub use geometry::{Automorphism, BallPoint, SubBall};
pub use quadrature::CircleGrid;
pub use weights::Weight;
