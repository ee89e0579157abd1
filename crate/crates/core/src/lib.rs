//! Exact construction and verification of generalized regular bent functions
//! over `Z_q` through their bent-rectangle representation.
//!
//! The crate is organized bottom-up:
//!
//! * [`qalg`]: residues, vectors, exact cyclotomic values and functions `V_n -> Z_q`;
//! * [`spectral`]: the Walsh–Hadamard transform and bentness predicates;
//! * [`rectangle`]: rectangles `□f`, the bent-rectangle test and transposition;
//! * [`affine_group`]: elementary transformations and their rectangle rules;
//! * [`constructions`]: Maiorana–McFarland, Rothaus, Dillon, biaffine and bilinear squares;
//! * [`partitions`]: partitions of `V_n` into affine planes and the bent rectangles they give.

pub mod affine_group;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod format;
pub mod partitions;
pub mod qalg;
pub mod rectangle;
pub mod spectral;

pub use error::{Error, Result};
pub use qalg::{CycloValue, Matrix, Modulus, QFunction, QVec};
pub use rectangle::Rectangle;
pub use spectral::{Spectrum, Mode};
