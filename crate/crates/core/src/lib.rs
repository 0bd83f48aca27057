//! Function-field lattices of Fermat curves, computed exactly.
//!
//! The crate constructs, for a degree-n Fermat curve and its 3n points with
//! one vanishing coordinate, the lattice of principal divisors supported on
//! those points, and computes its parameters (rank, squared volume, minimum
//! distance, kissing number, second minimum, well-roundedness, divisor class
//! group) with exact integer arithmetic.
//!
//! Two independent computational paths cover the spectrum-shaped results:
//!
//! * geometric enumeration over an LLL-reduced basis ([`enumerate`]), and
//! * a coset oracle that walks the mod-n residue span of the six standard
//!   generators and counts minimum-norm lifts per coset ([`coset`]).
//!
//! Agreement of the two paths, plus closed-form predictions
//! ([`fermat::predicted_parameters`]), is what the verification front end
//! checks.

pub mod cache;
pub mod coset;
pub mod enumerate;
pub mod error;
pub mod fermat;
pub mod lattice;
pub mod lll;
pub mod matrix;

pub use enumerate::{EnumConfig, Enumeration, MinimaReport, NormSpectrum};
pub use error::Error;
pub use lattice::{a_root_lattice, quotient_invariants, Lattice};
pub use matrix::{gram_det, hnf, rank, snf, BigMatrix, SmithForm};
