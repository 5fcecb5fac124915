//! Single-mode Dirac field in a piecewise-constant, spatially homogeneous
//! vector potential.
//!
//! The crate composes time-slice transfer matrices into Bogoliubov
//! transformations of `(a, b†)`, lifts them to exact unitaries on the
//! four-state pair Fock space, and designs the fine-tuned pulse sequences
//! ("time traps") in which a pair exists only between two field pulses.
//!
//! Natural units throughout: `c = ħ = 1`.

pub mod error;
pub mod exec;
pub mod fockspace;
pub mod kinematics;
pub mod linalg;
pub mod su2param;
pub mod suites;
pub mod trace;
pub mod transfer;
pub mod trapdesign;

pub use error::{Error, Result};
pub use exec::Execution;
pub use fockspace::{FockOperator, FockVector, Probabilities};
pub use kinematics::{Momentum3, Spin};
pub use linalg::C64;
pub use su2param::Su2Params;
pub use transfer::{AmplitudePair, BogoliubovMatrix, PotentialSchedule, Slice};
pub use trapdesign::{Branch, TrapDesign, TrapReport};
