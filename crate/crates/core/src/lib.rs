//! Exact computations in the tame automorphism group of the affine quadric
//! `SL2 = {x1*x4 - x2*x3 = 1}`.
//!
//! * [`poly`]: sparse polynomials in `x1..x4` with the weighted degree.
//! * [`orth`]: the orthogonal group `O4` of the quadric.
//! * [`tame`]: automorphisms, words and the elementary-reduction engine.
//! * [`complex`]: finite explorations of the associated square complex.
//! * [`grouplab`]: linearization, resonance and example families.

pub mod complex;
pub mod error;
pub mod exec;
pub mod field;
pub mod fixtures;
pub mod grouplab;
pub mod io;
pub mod linalg;
pub mod orth;
pub mod poly;
pub mod sampling;
pub mod tame;

pub use error::{DomainError, ParseError};
pub use exec::ExecMode;
pub use field::{Field, Q, Qi};
pub use poly::{Exponent4, Poly, WeightVec};
