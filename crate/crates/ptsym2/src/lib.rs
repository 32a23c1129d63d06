//! Operator algebra for parity and time-reversal symmetries on ℂ².
//!
//! Everything here lives in two complex dimensions, where parity operators
//! (linear involutions `P² = I`) and time-reversal operators (anti-linear
//! operators with `T² = ±I`) admit closed coefficient forms over the Pauli
//! basis `{σ₀..σ₃}` and its anti-linear companion `{τ₀..τ₃}`. The crate
//! covers:
//!
//! - [`algebra`]: exact arithmetic for linear and anti-linear operators,
//!   Pauli and τ basis construction and coefficient decomposition.
//! - [`symmetry`]: validated [`symmetry::Parity`] and
//!   [`symmetry::TimeReversal`] values, commutation checks at matrix and
//!   coefficient level, the constructive existence of a parity commuting
//!   with a given `T² = I` time reversal, and a brute-force commutant
//!   oracle used to cross-check every constructive result.
//! - [`geometry`]: the hyperboloid of parities commuting with a fixed time
//!   reversal and the ellipse of time reversals commuting with a fixed
//!   parity, with deterministic frames and seeded surface sampling.
//! - [`hamiltonian`]: the symmetry conditions, four-parameter families,
//!   and unbroken/broken/defective spectral classification of
//!   PT-symmetric 2×2 operators.
//! - [`json`] and [`cli`]: stable JSON/CSV wire formats and the `ptsym2`
//!   command-line front end.
//!
//! All types are immutable values and all operations are pure functions;
//! the crate is thread-safe without qualification.

pub mod algebra;
pub mod cli;
pub mod geometry;
pub mod hamiltonian;
pub mod json;
pub mod symmetry;
pub mod tol;

pub use algebra::{cx, pauli, tau, AntiOp2, LinOp2, PauliCoeffs, TauCoeffs, Vec2C, Vec3C, Vec3R, C64};
pub use symmetry::{Parity, Sign, TimeReversal};

