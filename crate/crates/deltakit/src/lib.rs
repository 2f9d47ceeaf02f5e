//! Exact cochain algebra on finite delta-complexes.
//!
//! The crate computes integral, rational, and Q/Z cohomology of finite
//! delta-complexes and of finite action groupoids, manipulates (c, h, omega)
//! cochain triples and the differential characters they represent, and
//! classifies lattice U(1) gauge fields up to gauge equivalence by Chern
//! data, curvature, and holonomy. All arithmetic is exact: integers and
//! rationals of arbitrary precision, no floating point anywhere.

pub mod scalar;

pub mod chaincat;
pub mod classify;
pub mod cli;
pub mod complex;
pub mod dccomplex;
pub mod descent;
pub mod exactalg;
pub mod fixtures;
pub mod nerve;

pub use exactalg::{AbGroupPresentation, IntMatrix, RatMatrix, SNFDecomposition};

pub fn run_cli() -> i32 {
    cli::run()
}
