//! Default numerical tolerances, in one place.
//!
//! | Constant | Basis |
//! |----------|-------|
//! | [`ALGEBRA`] | exact identities on unit-scale inputs, f64 rounding only |
//! | [`CONSTRAINT`] | coefficient constraints validated at construction |
//! | [`ORACLE`] | residuals of the iterative nullspace/Newton oracle |
//! | [`DEDUP`] | distance under which two oracle solutions are the same |
//!
//! Operations that validate constraints take an explicit tolerance in
//! their `*_with_tol` form and use these defaults otherwise. The CLI
//! forwards `--tol` (or the `PTSYM2_TOL` environment variable) as the
//! constraint tolerance.

/// Absolute tolerance for algebraic identities on unit-scale inputs.
pub const ALGEBRA: f64 = 1e-12;

/// Default tolerance for validating coefficient constraints such as
/// `Σ aᵢ² = 1` or `‖c̃‖² − c₀² = ±1`.
pub const CONSTRAINT: f64 = 1e-9;

/// Residual floor for the brute-force commutant oracle. Looser than
/// [`CONSTRAINT`] because the involution intersection is iterative.
pub const ORACLE: f64 = 1e-8;

/// Two oracle solutions closer than this (max-norm on matrix entries)
/// are de-duplicated into one.
pub const DEDUP: f64 = 1e-6;
