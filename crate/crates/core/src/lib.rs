//! Exact generalized inverses, weighted core inverses and instance-wise
//! checks of their characterizations and reverse-order laws.
//!
//! Everything is generic over [`scalar::Field`]: exact Gaussian rationals
//! ([`GaussRat`]), `Complex64` and `f64`.

pub mod equations;
pub mod error;
pub mod feasibility;
pub mod fixtures;
pub mod geninv;
pub mod inverses;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod rng;
pub mod sampler;
pub mod scalar;
pub mod suite;
pub mod theorems;
pub mod weighted;

pub use equations::{check_membership, EquationContext, EquationTag};
pub use error::{GeninvError, Result};
pub use geninv::{Existence, NonExistence};
pub use inverses::{compute_inverse, InverseKind, Weights};
pub use matrix::Matrix;
pub use scalar::{Field, GaussRat};
pub use theorems::{verify_theorem, TheoremId, TheoremInputs, Verdict, VerificationReport};
pub use weighted::{WeightPolicy, WeightedProblem};

pub use num_complex::Complex64;

/// Matrix over exact Gaussian rationals.
pub type ExactMatrix = Matrix<GaussRat>;
/// Matrix over double-precision complex numbers.
pub type FloatMatrix = Matrix<Complex64>;
/// Matrix over double-precision reals.
pub type RealMatrix = Matrix<f64>;
