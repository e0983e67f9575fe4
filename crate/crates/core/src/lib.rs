//! Exact simulation and verification toolkit for sequential spin-component
//! measurements on spin-s particles.
//!
//! The crate builds spin operators and direction eigenstates for arbitrary
//! spin quantum numbers, samples sequential Stern-Gerlach measurement chains
//! with a seeded generator, and checks whether a joint assignment of
//! pre-existing values to the spin components along orthogonal axes can be
//! consistent with the operator identity S² = s(s+1)ħ².
//!
//! All operators are stored in the S_z eigenbasis with magnetic quantum
//! numbers ordered m = +s, s−1, …, −s. Half-integer spins are represented
//! exactly by storing twice the quantum number (`twice_s`, `twice_m`).
//! Internally ħ = 1; the [`Units`] tag on [`OperatorMatrix`] records whether
//! entries are in units of ħ or ħ².
//!
//! Numeric paths are generic over the [`Scalar`] floating-point type
//! (f32 or f64); probabilities at relative axis angle π/2 have an additional
//! exact rational route ([`ExactProb`]).

pub mod error;
pub mod exact;
pub mod measurement;
pub mod operator;
pub mod paradox;
pub mod rotation;
pub mod scalar;
pub mod spin;
pub mod state;
pub mod stats;

pub use error::{Error, Result};
pub use exact::{exact_pi_half_probability, ExactProb, MAX_EXACT_TWICE_S};
pub use measurement::{
    batch_seed, born_distribution, predictable_with_certainty, project, run_sequence,
    sample_outcome, sequence_rng, Condition, MeasurementRecord, SequenceRng, SequenceStats,
};
pub use operator::{casimir, commutator, matrix_apply, spin_operators, OperatorMatrix, Units};
pub use paradox::{
    enumerate_assignments, max_max_assignment_feasible, paradox_condition, paradox_scan,
    von_neumann_witness, Assignment, AssignmentMode, ParadoxReport, MAX_ENUMERATION_TWICE_S,
};
pub use rotation::{axis_eigenstate, expand, wigner_small_d, Axis, AxisLabel, Expansion};
pub use scalar::Scalar;
pub use spin::{half_integer_string, Spin};
pub use state::StateVector;
pub use stats::{chi_square_gof, GofResult};

pub use num_complex::Complex;

/// Default scalar type for the command-line tool and the acceptance suite.
pub type Real = f64;

/// Complex number over the default scalar.
pub type C64 = Complex<f64>;

pub type Operator = OperatorMatrix<f64>;
pub type State = StateVector<f64>;
pub type Axis64 = Axis<f64>;
pub type Expansion64 = Expansion<f64>;
pub type Stats64 = SequenceStats<f64>;

pub type Operator32 = OperatorMatrix<f32>;
pub type State32 = StateVector<f32>;
pub type Axis32 = Axis<f32>;
