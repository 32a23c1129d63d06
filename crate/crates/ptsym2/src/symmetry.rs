//! Validated parity and time-reversal operators and their commutation
//! theory.
//!
//! A parity operator is a linear involution: either `±I` (trivial) or
//! `P = Σ aᵢσᵢ` with `Σ aᵢ² = 1`. Splitting `a = f + ib` into real and
//! imaginary parts, the involution constraint becomes `f·b = 0`,
//! `‖f‖² − ‖b‖² = 1`. A time reversal is an anti-linear
//! `T = ε Σ cᵢτᵢ` with real `cᵢ`, unimodular `ε`, and
//! `‖c̃‖² − c₀² = +1` (`T² = I`) or `−1` (`T² = −I`).
//!
//! For nontrivial `P` and real-ε `T`, `PT = TP` is equivalent to the two
//! vector equations
//!
//! ```text
//! c₀f + b×c̃ = 0        f·c̃ = 0
//! ```
//!
//! [`construct_parity`] builds a commuting parity for every `T² = I`
//! (there is none for `T² = −I` beyond `±I`), [`shared_parities`] finds
//! the at-most-two parities commuting with two distinct time reversals,
//! and [`same_commutant`] decides commutant equality from coefficients
//! alone.
//!
//! Everything constructive here is cross-checkable against the
//! brute-force oracle [`commutant_basis`] /
//! [`involutions_in_commutant`], which treats commutation as a
//! real-linear system in the eight matrix coordinates and intersects its
//! nullspace with the involution constraint by damped Newton iteration.
//! The oracle shares no code path with the constructive operations.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{
    tau_decompose_with_tol, AlgebraError, AntiOp2, LinOp2, TauCoeffs, Vec3C, Vec3R, C64,
};
use crate::geometry::{frame_from_axis, AxisSlot};
use crate::tol;

/// A sign, `+1` or `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: f64) -> Option<Sign> {
        if v == 1.0 {
            Some(Sign::Plus)
        } else if v == -1.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// A coefficient constraint (`Σaᵢ² = 1`, `f·b = 0`, …) failed.
    #[error("coefficient constraint violated (residual {residual:e})")]
    ConstraintViolated { residual: f64 },
    #[error("phase factor is not unimodular (deviation {residual:e})")]
    NotUnimodular { residual: f64 },
    /// `‖c̃‖² − c₀²` is not `±1` within tolerance, so the coefficients
    /// describe no time reversal.
    #[error("quadratic form {form} is not ±1 within tolerance")]
    NotInvolutionLike { form: f64 },
    /// `T² = −I`: no parity commutes with `T` except `±I`.
    #[error("time reversal squares to -I; no nontrivial commuting parity exists")]
    NegativeSquare,
    #[error("operation requires a nontrivial parity")]
    TrivialParity,
    /// The two time reversals coincide up to phase.
    #[error("time reversals are equal up to phase")]
    NotDistinct,
    /// The operation is defined for real ε (±1) coefficients only.
    #[error("operation requires a time reversal with real ε")]
    NonRealPhase,
}

// ---------------------------------------------------------------------------
// Parity
// ---------------------------------------------------------------------------

/// A validated parity operator (`P² = I`).
#[derive(Debug, Clone, PartialEq)]
pub struct Parity {
    kind: ParityKind,
}

#[derive(Debug, Clone, PartialEq)]
enum ParityKind {
    Trivial { sign: Sign },
    Nontrivial { a: Vec3C, f: Vec3R, b: Vec3R },
}

impl Parity {
    /// The trivial parity `±I`.
    pub fn trivial(sign: Sign) -> Parity {
        Parity {
            kind: ParityKind::Trivial { sign },
        }
    }

    /// Nontrivial parity from the complex coefficient vector `a` with
    /// `Σ aᵢ² = 1`.
    pub fn from_a(a: Vec3C) -> Result<Parity, SymmetryError> {
        Parity::from_a_with_tol(a, tol::CONSTRAINT)
    }

    /// Both parts of the complex residual `Σaᵢ² − 1` must stay within
    /// `tolerance`, scaled by the squared size of `a` for large inputs.
    pub fn from_a_with_tol(a: Vec3C, tolerance: f64) -> Result<Parity, SymmetryError> {
        if !a.is_finite() {
            return Err(AlgebraError::NonFinite.into());
        }
        let r = a.dot(a) - C64::new(1.0, 0.0);
        let f = a.re();
        let b = a.im();
        let scale = (f.norm_sq() + b.norm_sq()).max(1.0);
        let residual = r.re.abs().max(r.im.abs());
        if residual > tolerance * scale {
            return Err(SymmetryError::ConstraintViolated { residual });
        }
        Ok(Parity {
            kind: ParityKind::Nontrivial { a, f, b },
        })
    }

    /// Nontrivial parity from the real split `a = f + ib`.
    pub fn from_fb(f: Vec3R, b: Vec3R) -> Result<Parity, SymmetryError> {
        Parity::from_fb_with_tol(f, b, tol::CONSTRAINT)
    }

    pub fn from_fb_with_tol(f: Vec3R, b: Vec3R, tolerance: f64) -> Result<Parity, SymmetryError> {
        Parity::from_a_with_tol(Vec3C::from_re_im(f, b), tolerance)
    }

    /// Classifies an involution matrix as a parity operator.
    pub fn from_matrix(x: LinOp2) -> Result<Parity, SymmetryError> {
        Parity::from_matrix_with_tol(x, tol::CONSTRAINT)
    }

    pub fn from_matrix_with_tol(x: LinOp2, tolerance: f64) -> Result<Parity, SymmetryError> {
        let x = x.validated()?;
        let h = crate::algebra::pauli_decompose(x);
        let a = h.vector();
        let scale = x.max_norm().max(1.0);
        let tilde_norm = a.re().norm().max(a.im().norm());
        if tilde_norm <= tolerance * scale {
            // scalar part only: ±I
            let dev_plus = (h.h0 - C64::new(1.0, 0.0)).norm();
            let dev_minus = (h.h0 + C64::new(1.0, 0.0)).norm();
            if dev_plus <= tolerance * scale {
                return Ok(Parity::trivial(Sign::Plus));
            }
            if dev_minus <= tolerance * scale {
                return Ok(Parity::trivial(Sign::Minus));
            }
            return Err(SymmetryError::ConstraintViolated {
                residual: dev_plus.min(dev_minus),
            });
        }
        if h.h0.norm() > tolerance * scale {
            return Err(SymmetryError::ConstraintViolated { residual: h.h0.norm() });
        }
        Parity::from_a_with_tol(a, tolerance)
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, ParityKind::Trivial { .. })
    }

    pub fn sign(&self) -> Option<Sign> {
        match self.kind {
            ParityKind::Trivial { sign } => Some(sign),
            ParityKind::Nontrivial { .. } => None,
        }
    }

    pub fn a(&self) -> Option<Vec3C> {
        match self.kind {
            ParityKind::Trivial { .. } => None,
            ParityKind::Nontrivial { a, .. } => Some(a),
        }
    }

    /// `(f, b) = (Re a, Im a)` for a nontrivial parity.
    pub fn fb(&self) -> Option<(Vec3R, Vec3R)> {
        match self.kind {
            ParityKind::Trivial { .. } => None,
            ParityKind::Nontrivial { f, b, .. } => Some((f, b)),
        }
    }

    /// The representation matrix: `sign·I`, or
    /// `[[a₃, a₁−ia₂], [a₁+ia₂, −a₃]]` in the nontrivial case.
    pub fn matrix(&self) -> LinOp2 {
        match self.kind {
            ParityKind::Trivial { sign } => LinOp2::identity().scale(C64::new(sign.value(), 0.0)),
            ParityKind::Nontrivial { a, .. } => LinOp2::from_pauli_vector(a),
        }
    }

    pub fn negated(&self) -> Parity {
        match self.kind {
            ParityKind::Trivial { sign } => Parity::trivial(match sign {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            }),
            ParityKind::Nontrivial { a, f, b } => Parity {
                kind: ParityKind::Nontrivial {
                    a: Vec3C::new(-a.x, -a.y, -a.z),
                    f: -f,
                    b: -b,
                },
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Time reversal
// ---------------------------------------------------------------------------

/// A validated time-reversal operator (`T² = ±I`).
///
/// Stored in the normalized τ-coefficient form of [`TauCoeffs`]: the first
/// nonzero `cᵢ` is positive and `ε` absorbs sign and phase. Accessors
/// return the normalized values; the operator itself is unchanged by
/// normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeReversal {
    coeffs: TauCoeffs,
    square: Sign,
}

impl TimeReversal {
    /// Builds a time reversal from phase `eps` and coefficients
    /// `(c₀, c₁, c₂, c₃)`.
    pub fn from_c(eps: C64, c: [f64; 4]) -> Result<TimeReversal, SymmetryError> {
        TimeReversal::from_c_with_tol(eps, c, tol::CONSTRAINT)
    }

    pub fn from_c_with_tol(
        eps: C64,
        c: [f64; 4],
        tolerance: f64,
    ) -> Result<TimeReversal, SymmetryError> {
        let coeffs = TauCoeffs::with_tol(eps, c, tolerance).map_err(|e| match e {
            AlgebraError::NotUnimodular { residual } => SymmetryError::NotUnimodular { residual },
            other => SymmetryError::Algebra(other),
        })?;
        TimeReversal::from_coeffs_with_tol(coeffs, tolerance)
    }

    /// Classifies an anti-linear operator as a time reversal.
    pub fn from_anti_op(op: AntiOp2) -> Result<TimeReversal, SymmetryError> {
        TimeReversal::from_anti_op_with_tol(op, tol::CONSTRAINT)
    }

    pub fn from_anti_op_with_tol(
        op: AntiOp2,
        tolerance: f64,
    ) -> Result<TimeReversal, SymmetryError> {
        let coeffs = tau_decompose_with_tol(op, tolerance)?;
        TimeReversal::from_coeffs_with_tol(coeffs, tolerance)
    }

    fn from_coeffs_with_tol(
        coeffs: TauCoeffs,
        tolerance: f64,
    ) -> Result<TimeReversal, SymmetryError> {
        let q = coeffs.quadratic_form();
        let c = coeffs.c();
        let scale = c.iter().fold(1.0f64, |m, x| m.max(x * x));
        let square = if (q - 1.0).abs() <= tolerance * scale {
            Sign::Plus
        } else if (q + 1.0).abs() <= tolerance * scale {
            Sign::Minus
        } else {
            return Err(SymmetryError::NotInvolutionLike { form: q });
        };
        Ok(TimeReversal { coeffs, square })
    }

    pub fn coeffs(&self) -> &TauCoeffs {
        &self.coeffs
    }

    pub fn eps(&self) -> C64 {
        self.coeffs.eps()
    }

    pub fn c0(&self) -> f64 {
        self.coeffs.c0()
    }

    pub fn c_tilde(&self) -> Vec3R {
        self.coeffs.c_tilde()
    }

    /// The sign of `T²`.
    pub fn square(&self) -> Sign {
        self.square
    }

    pub fn has_real_eps(&self, tolerance: f64) -> bool {
        self.coeffs.eps_is_real(tolerance)
    }

    pub fn anti_op(&self) -> AntiOp2 {
        self.coeffs.compose()
    }

    /// Matrix of the `v ↦ M·conj(v)` form.
    pub fn matrix(&self) -> LinOp2 {
        self.anti_op().mat
    }
}

// ---------------------------------------------------------------------------
// Commutation checks
// ---------------------------------------------------------------------------

/// Max-norm of `P∘T − T∘P` (as matrices: `P·M − M·conj(P)`).
pub fn commute_residual_matrix(p: &Parity, t: &TimeReversal) -> f64 {
    let pm = p.matrix();
    let m = t.matrix();
    pm.compose(m).dist_max(m.compose(pm.conj()))
}

pub fn commutes_matrix(p: &Parity, t: &TimeReversal) -> bool {
    commutes_matrix_with_tol(p, t, tol::CONSTRAINT)
}

pub fn commutes_matrix_with_tol(p: &Parity, t: &TimeReversal, tolerance: f64) -> bool {
    let scale = (p.matrix().max_norm() * t.matrix().max_norm()).max(1.0);
    commute_residual_matrix(p, t) <= tolerance * scale
}

/// Outcome of the coefficient-level commutation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecCommutation {
    pub commutes: bool,
    /// Set when the parity is trivial, so commutation holds vacuously.
    pub vacuous: bool,
    /// `‖c₀f + b×c̃‖`
    pub cross_residual: f64,
    /// `|f·c̃|`
    pub dot_residual: f64,
}

/// Checks `PT = TP` through the vector equations `c₀f + b×c̃ = 0` and
/// `f·c̃ = 0`, which are equivalent to the matrix-level check for
/// nontrivial `P` and real-ε `T`.
pub fn commutes_vec(p: &Parity, t: &TimeReversal) -> Result<VecCommutation, SymmetryError> {
    commutes_vec_with_tol(p, t, tol::CONSTRAINT)
}

pub fn commutes_vec_with_tol(
    p: &Parity,
    t: &TimeReversal,
    tolerance: f64,
) -> Result<VecCommutation, SymmetryError> {
    if !t.has_real_eps(tolerance) {
        return Err(SymmetryError::NonRealPhase);
    }
    let Some((f, b)) = p.fb() else {
        return Ok(VecCommutation {
            commutes: true,
            vacuous: true,
            cross_residual: 0.0,
            dot_residual: 0.0,
        });
    };
    let c0 = t.c0();
    let ct = t.c_tilde();
    let cross_residual = (f.scale(c0) + b.cross(ct)).norm();
    let dot_residual = f.dot(ct).abs();
    let scale = (c0.abs() * f.norm())
        .max(b.norm() * ct.norm())
        .max(f.norm() * ct.norm())
        .max(1.0);
    Ok(VecCommutation {
        commutes: cross_residual <= tolerance * scale && dot_residual <= tolerance * scale,
        vacuous: false,
        cross_residual,
        dot_residual,
    })
}

// ---------------------------------------------------------------------------
// Constructive existence (T² = I)
// ---------------------------------------------------------------------------

/// Builds a nontrivial parity commuting with `t`.
///
/// Requires `T² = I`; for `T² = −I` nothing commutes except `±I` and the
/// call fails with [`SymmetryError::NegativeSquare`]. With `c₀ = 0` the
/// parity is real: `b = 0` and `f` the deterministic unit vector
/// orthogonal to `c̃`. Otherwise `b ⊥ c̃` with `‖b‖ = |c₀|` and
/// `f = (c̃×b)/c₀`.
pub fn construct_parity(t: &TimeReversal) -> Result<Parity, SymmetryError> {
    construct_parity_with_tol(t, tol::CONSTRAINT)
}

pub fn construct_parity_with_tol(
    t: &TimeReversal,
    tolerance: f64,
) -> Result<Parity, SymmetryError> {
    if t.square() == Sign::Minus {
        return Err(SymmetryError::NegativeSquare);
    }
    let c0 = t.c0();
    let ct = t.c_tilde();
    // ‖c̃‖² = 1 + c₀² ≥ 1 for T² = I, so the frame always exists.
    let frame = frame_from_axis(ct, AxisSlot::X).expect("c tilde is nonzero when T squares to I");
    let perp = frame.u2;
    if c0.abs() <= tolerance {
        Parity::from_fb_with_tol(perp, Vec3R::zero(), tolerance)
    } else {
        let b = perp.scale(c0.abs());
        let f = ct.cross(b).scale(1.0 / c0);
        Parity::from_fb_with_tol(f, b, tolerance)
    }
}

// ---------------------------------------------------------------------------
// Brute-force commutant oracle
// ---------------------------------------------------------------------------

/// Rows of a real-linear map on 2×2 complex matrices, assembled by
/// applying it to the eight coordinate matrices.
fn linear_system_rows(map: impl Fn(LinOp2) -> LinOp2) -> Vec<[f64; 8]> {
    let mut cols = [[0.0f64; 8]; 8];
    for (k, col) in cols.iter_mut().enumerate() {
        let mut e = [0.0; 8];
        e[k] = 1.0;
        *col = map(LinOp2::from_real_vec8(e)).to_real_vec8();
    }
    (0..8)
        .map(|r| {
            let mut row = [0.0; 8];
            for (k, col) in cols.iter().enumerate() {
                row[k] = col[r];
            }
            row
        })
        .collect()
}

/// Nullspace basis by Gauss-Jordan elimination with partial pivoting.
#[allow(clippy::needless_range_loop)] // parallel row indexing
fn nullspace8(rows: &[[f64; 8]]) -> Vec<[f64; 8]> {
    let mut a: Vec<[f64; 8]> = rows.to_vec();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = 1e-10 * scale.max(1.0);
    let nrows = a.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..8 {
        if r == nrows {
            break;
        }
        let (imax, vmax) = (r..nrows)
            .map(|i| (i, a[i][c].abs()))
            .fold((r, 0.0), |(bi, bv), (i, v)| if v > bv { (i, v) } else { (bi, bv) });
        if vmax <= cut {
            continue;
        }
        a.swap(r, imax);
        let piv = a[r][c];
        for x in a[r].iter_mut() {
            *x /= piv;
        }
        for i in 0..nrows {
            if i != r && a[i][c] != 0.0 {
                let factor = a[i][c];
                for j in 0..8 {
                    a[i][j] -= factor * a[r][j];
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let mut basis = Vec::new();
    for fc in 0..8 {
        if pivots.iter().any(|&(_, pc)| pc == fc) {
            continue;
        }
        let mut x = [0.0f64; 8];
        x[fc] = 1.0;
        for &(pr, pc) in &pivots {
            x[pc] = -a[pr][fc];
        }
        basis.push(x);
    }
    basis
}

/// Basis of the real-linear space of matrices `X` with `X·T = T·X`, i.e.
/// `X·M = M·conj(X)` on the time reversal's matrix `M`. Independent of
/// every constructive operation in this module.
pub fn commutant_basis(t: &TimeReversal) -> Vec<LinOp2> {
    let m = t.matrix();
    let rows = linear_system_rows(|x| x.compose(m) - m.compose(x.conj()));
    nullspace8(&rows).into_iter().map(LinOp2::from_real_vec8).collect()
}

/// Basis of matrices commuting with both time reversals simultaneously.
pub fn joint_commutant_basis(t1: &TimeReversal, t2: &TimeReversal) -> Vec<LinOp2> {
    let m1 = t1.matrix();
    let m2 = t2.matrix();
    let mut rows = linear_system_rows(|x| x.compose(m1) - m1.compose(x.conj()));
    rows.extend(linear_system_rows(|x| x.compose(m2) - m2.compose(x.conj())));
    nullspace8(&rows).into_iter().map(LinOp2::from_real_vec8).collect()
}

/// Basis of matrices `M` of anti-linear operators commuting with a fixed
/// parity: `P·M = M·conj(P)`.
pub fn time_reversal_commutant_basis(p: &Parity) -> Vec<AntiOp2> {
    let pm = p.matrix();
    let rows = linear_system_rows(|m| pm.compose(m) - m.compose(pm.conj()));
    nullspace8(&rows)
        .into_iter()
        .map(|v| AntiOp2::new(LinOp2::from_real_vec8(v)))
        .collect()
}

fn combine(basis: &[LinOp2], t: &[f64]) -> LinOp2 {
    let mut x = LinOp2::zero();
    for (b, ti) in basis.iter().zip(t) {
        x = x + b.scale(C64::new(*ti, 0.0));
    }
    x
}

fn dot8(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting; `a` is square, `k ≤ 8`.
#[allow(clippy::needless_range_loop)] // parallel row indexing
fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let k = b.len();
    for c in 0..k {
        let (imax, vmax) = (c..k)
            .map(|i| (i, a[i][c].abs()))
            .fold((c, 0.0), |(bi, bv), (i, v)| if v > bv { (i, v) } else { (bi, bv) });
        if vmax == 0.0 {
            return None;
        }
        a.swap(c, imax);
        b.swap(c, imax);
        for i in (c + 1)..k {
            let factor = a[i][c] / a[c][c];
            if factor != 0.0 {
                for j in c..k {
                    a[i][j] -= factor * a[c][j];
                }
                b[i] -= factor * b[c];
            }
        }
    }
    let mut x = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = b[i];
        for j in (i + 1)..k {
            acc -= a[i][j] * x[j];
        }
        x[i] = acc / a[i][i];
    }
    Some(x)
}

/// Damped Gauss-Newton search for zeros of `residual` restricted to
/// `span(basis)`, from 16 deterministic starting points on the unit
/// sphere of span coefficients. Solutions closer than [`tol::DEDUP`] are
/// merged; only solutions with residual below [`tol::ORACLE`] are kept.
fn newton_in_span(
    basis: &[LinOp2],
    residual: &dyn Fn(LinOp2) -> LinOp2,
    jacobian: &dyn Fn(LinOp2, LinOp2) -> LinOp2,
) -> Vec<LinOp2> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7053_594d);
    let mut sols: Vec<LinOp2> = Vec::new();
    let mut started = 0;
    for _attempt in 0..64 {
        if started == 16 {
            break;
        }
        let mut t: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-3 {
            continue;
        }
        started += 1;
        for ti in &mut t {
            *ti /= n;
        }
        for _iter in 0..80 {
            let x = combine(basis, &t);
            let fvec = residual(x).to_real_vec8();
            let f_inf = fvec.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if f_inf <= 1e-14 {
                break;
            }
            let jcols: Vec<[f64; 8]> =
                basis.iter().map(|b| jacobian(*b, x).to_real_vec8()).collect();
            let mut jtj: Vec<Vec<f64>> = vec![vec![0.0; k]; k];
            let mut rhs = vec![0.0; k];
            for i in 0..k {
                for j in 0..k {
                    jtj[i][j] = dot8(&jcols[i], &jcols[j]);
                }
                rhs[i] = -dot8(&jcols[i], &fvec);
            }
            let diag_max = (0..k).fold(0.0f64, |m, i| m.max(jtj[i][i]));
            // damping regularizes rank-deficient steps on solution
            // manifolds but decays with the residual, so convergence
            // finishes at full Newton rate
            let damp = (1e-6 * diag_max.max(1.0)).min(f_inf);
            for (i, row) in jtj.iter_mut().enumerate() {
                row[i] += damp;
            }
            let Some(step) = solve_dense(&mut jtj, &mut rhs) else {
                break;
            };
            let step_norm = step.iter().map(|x| x * x).sum::<f64>().sqrt();
            for (ti, si) in t.iter_mut().zip(&step) {
                *ti += si;
            }
            if step_norm <= 1e-15 {
                break;
            }
        }
        let x = combine(basis, &t);
        // both residuals solved here are even in x, so solutions come in
        // ± pairs; record the mirror of every hit as well
        for sol in [x, -x] {
            if residual(sol).max_norm() <= tol::ORACLE
                && !sols.iter().any(|s| s.dist_max(sol) <= tol::DEDUP)
            {
                sols.push(sol);
            }
        }
    }
    sols
}

/// Involutions (`X² = I`) inside the span of a matrix basis.
///
/// Scalar involutions are `±I`, reported whenever the identity lies in
/// the span. Non-scalar involutions are exactly the elements with
/// `tr X = 0` and `det X = −1` (Cayley-Hamilton in dimension two), so
/// each of the 16 deterministic unit-sphere starts is first projected
/// onto the traceless slice of the span and rescaled onto `det = −1`
/// when the determinant there is negative — which lands it on the
/// solution set directly — before Newton refinement of the
/// `(tr, det + 1)` system. Accepted solutions must pass the
/// `‖X² − I‖ ≤` [`tol::ORACLE`] gate.
pub fn involutions_in_span(basis: &[LinOp2]) -> Vec<LinOp2> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let mut sols: Vec<LinOp2> = Vec::new();
    if span_distance(basis, LinOp2::identity()) <= tol::ORACLE {
        sols.push(LinOp2::identity());
        sols.push(-LinOp2::identity());
    }
    // orthonormal rows of the real-linear trace constraint on span
    // coordinates, for projecting starts onto the traceless slice
    let trace_rows: Vec<Vec<f64>> = {
        let re: Vec<f64> = basis.iter().map(|b| b.trace().re).collect();
        let im: Vec<f64> = basis.iter().map(|b| b.trace().im).collect();
        let mut rows = Vec::new();
        for cand in [re, im] {
            let mut v = cand;
            for row in &rows {
                let c: f64 = v.iter().zip(row as &Vec<f64>).map(|(a, b)| a * b).sum();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= c * ri;
                }
            }
            let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-12 {
                for vi in &mut v {
                    *vi /= n;
                }
                rows.push(v);
            }
        }
        rows
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x7053_594d);
    let mut started = 0;
    for _attempt in 0..64 {
        if started == 16 {
            break;
        }
        let mut t: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-3 {
            continue;
        }
        started += 1;
        for ti in &mut t {
            *ti /= n;
        }
        // project onto tr = 0
        for row in &trace_rows {
            let c: f64 = t.iter().zip(row).map(|(a, b)| a * b).sum();
            for (ti, ri) in t.iter_mut().zip(row) {
                *ti -= c * ri;
            }
        }
        if t.iter().map(|x| x * x).sum::<f64>().sqrt() < 1e-8 {
            continue;
        }
        // rescale onto det = -1 where the determinant allows it
        let d = combine(basis, &t).det();
        if d.re < -1e-12 && d.im.abs() <= 1e-9 * d.re.abs().max(1.0) {
            let alpha = 1.0 / (-d.re).sqrt();
            for ti in &mut t {
                *ti *= alpha;
            }
        }
        // Newton on G(t) = (tr X, det X + 1); dG[B] = (tr B, tr(adj(X)·B))
        for _iter in 0..60 {
            let x = combine(basis, &t);
            let tr = x.trace();
            let dp1 = x.det() + C64::new(1.0, 0.0);
            let g = [tr.re, tr.im, dp1.re, dp1.im];
            let g_inf = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if g_inf <= 1e-14 {
                break;
            }
            let adj = LinOp2::new(x.m22, -x.m12, -x.m21, x.m11);
            let jcols: Vec<[f64; 4]> = basis
                .iter()
                .map(|b| {
                    let tb = b.trace();
                    let db = adj.compose(*b).trace();
                    [tb.re, tb.im, db.re, db.im]
                })
                .collect();
            let mut jtj: Vec<Vec<f64>> = vec![vec![0.0; k]; k];
            let mut rhs = vec![0.0; k];
            for i in 0..k {
                for j in 0..k {
                    jtj[i][j] = jcols[i].iter().zip(&jcols[j]).map(|(a, b)| a * b).sum();
                }
                rhs[i] = -jcols[i].iter().zip(&g).map(|(a, b)| a * b).sum::<f64>();
            }
            let diag_max = (0..k).fold(0.0f64, |m, i| m.max(jtj[i][i]));
            let damp = (1e-6 * diag_max.max(1.0)).min(g_inf);
            for (i, row) in jtj.iter_mut().enumerate() {
                row[i] += damp;
            }
            let Some(step) = solve_dense(&mut jtj, &mut rhs) else {
                break;
            };
            let step_norm = step.iter().map(|x| x * x).sum::<f64>().sqrt();
            for (ti, si) in t.iter_mut().zip(&step) {
                *ti += si;
            }
            if step_norm <= 1e-15 {
                break;
            }
        }
        let x = combine(basis, &t);
        // the zero set is symmetric under negation; record the mirror too
        for sol in [x, -x] {
            if (sol.compose(sol) - LinOp2::identity()).max_norm() <= tol::ORACLE
                && !sols.iter().any(|s| s.dist_max(sol) <= tol::DEDUP)
            {
                sols.push(sol);
            }
        }
    }
    sols
}

/// Involutions in the commutant of `t`: the parity operators commuting
/// with it, found by brute force.
pub fn involutions_in_commutant(t: &TimeReversal) -> Vec<LinOp2> {
    involutions_in_span(&commutant_basis(t))
}

/// Anti-linear operators `S` with `S² = I` inside the span of a basis of
/// anti-linear operators (`M·conj(M) = I` on the stored matrices).
pub fn time_reversals_in_span(basis: &[AntiOp2]) -> Vec<AntiOp2> {
    let mats: Vec<LinOp2> = basis.iter().map(|s| s.mat).collect();
    newton_in_span(
        &mats,
        &|m| AntiOp2::new(m).square() - LinOp2::identity(),
        &|d, m| d.compose(m.conj()) + m.compose(d.conj()),
    )
    .into_iter()
    .map(AntiOp2::new)
    .collect()
}

/// Distance from `x` to the span of `basis` (max-norm over the eight real
/// coordinates), via Gram-Schmidt projection.
pub fn span_distance(basis: &[LinOp2], x: LinOp2) -> f64 {
    let q = orthonormalize(basis);
    let v = x.to_real_vec8();
    let mut residual = v;
    for qi in &q {
        let c = dot8(qi, &v);
        for j in 0..8 {
            residual[j] -= c * qi[j];
        }
    }
    residual.iter().fold(0.0f64, |m, r| m.max(r.abs()))
}

/// Orthogonal projector onto the span, as an 8×8 real matrix. Two
/// subspaces are equal exactly when their projectors coincide.
pub fn span_projector(basis: &[LinOp2]) -> [[f64; 8]; 8] {
    let q = orthonormalize(basis);
    let mut p = [[0.0f64; 8]; 8];
    for qi in &q {
        for r in 0..8 {
            for c in 0..8 {
                p[r][c] += qi[r] * qi[c];
            }
        }
    }
    p
}

fn orthonormalize(basis: &[LinOp2]) -> Vec<[f64; 8]> {
    let mut q: Vec<[f64; 8]> = Vec::new();
    for b in basis {
        let mut v = b.to_real_vec8();
        for qi in &q {
            let c = dot8(qi, &v);
            for j in 0..8 {
                v[j] -= c * qi[j];
            }
        }
        let n = dot8(&v, &v).sqrt();
        if n > 1e-12 {
            for x in &mut v {
                *x /= n;
            }
            q.push(v);
        }
    }
    q
}

// ---------------------------------------------------------------------------
// Shared parities and commutant equality
// ---------------------------------------------------------------------------

/// The nontrivial parities commuting with both `t1` and `t2`
/// simultaneously: a pair `{P, −P}` or nothing.
///
/// Requires `T² = I` and real ε on both sides, and `t1 ≠ ±t2` after phase
/// normalization ([`SymmetryError::NotDistinct`] otherwise). The case
/// split follows the four realizable configurations of
/// `(c₀⁽¹⁾ = 0, c₀⁽²⁾ = 0, c̃⁽¹⁾ ∥ c̃⁽²⁾)`; proportional `c̃` with
/// incompatible `c₀` admits no common parity and yields the empty list,
/// as does a scale equation without a real root.
pub fn shared_parities(t1: &TimeReversal, t2: &TimeReversal) -> Result<Vec<Parity>, SymmetryError> {
    shared_parities_with_tol(t1, t2, tol::CONSTRAINT)
}

pub fn shared_parities_with_tol(
    t1: &TimeReversal,
    t2: &TimeReversal,
    tolerance: f64,
) -> Result<Vec<Parity>, SymmetryError> {
    if t1.square() == Sign::Minus || t2.square() == Sign::Minus {
        return Err(SymmetryError::NegativeSquare);
    }
    if !t1.has_real_eps(tolerance) || !t2.has_real_eps(tolerance) {
        return Err(SymmetryError::NonRealPhase);
    }
    let (c0a, ca) = (t1.c0(), t1.c_tilde());
    let (c0b, cb) = (t2.c0(), t2.c_tilde());
    if (c0a - c0b).abs().max(ca.dist_max(cb)) <= tolerance {
        return Err(SymmetryError::NotDistinct);
    }
    let za = c0a.abs() <= tolerance;
    let zb = c0b.abs() <= tolerance;
    let parallel = ca.cross(cb).norm() <= tolerance * ca.norm() * cb.norm();
    match (za, zb) {
        (true, true) => {
            if parallel {
                // both c̃ unit and parallel: equal after normalization
                return Err(SymmetryError::NotDistinct);
            }
            // b = 0, f the unit normal to both c̃ vectors
            let f = ca.cross(cb).normalized(0.0).expect("independent directions");
            signed_pair(f, Vec3R::zero(), tolerance)
        }
        (false, true) => shared_case_mixed(c0a, ca, cb, tolerance),
        (true, false) => shared_case_mixed(c0b, cb, ca, tolerance),
        (false, false) => {
            if parallel {
                // valid distinct inputs with proportional c̃: the c₀ ratio is
                // incompatible, so no parity commutes with both.
                return Ok(Vec::new());
            }
            // b along c̃⁽¹⁾/c₀⁽¹⁾ − c̃⁽²⁾/c₀⁽²⁾, scale from ‖f‖² − ‖b‖² = 1
            let w = ca.scale(1.0 / c0a) - cb.scale(1.0 / c0b);
            let wn = w.normalized(0.0).expect("nonparallel directions give nonzero w");
            let f_dir = ca.cross(wn).scale(1.0 / c0a);
            let coeff = f_dir.norm_sq() - 1.0;
            if coeff <= 0.0 {
                return Ok(Vec::new());
            }
            let s = 1.0 / coeff.sqrt();
            signed_pair(f_dir.scale(s), wn.scale(s), tolerance)
        }
    }
}

/// Case `c₀⁽¹⁾ ≠ 0`, `c₀⁽²⁾ = 0`: `b = m·c̃⁽²⁾`,
/// `f = (m/c₀⁽¹⁾)(c̃⁽¹⁾×c̃⁽²⁾)`, with the scale fixed by
/// `m²(‖c̃⁽¹⁾×c̃⁽²⁾‖²/c₀⁽¹⁾² − ‖c̃⁽²⁾‖²) = 1`.
fn shared_case_mixed(
    c0a: f64,
    ca: Vec3R,
    cb: Vec3R,
    tolerance: f64,
) -> Result<Vec<Parity>, SymmetryError> {
    let cxc = ca.cross(cb);
    let coeff = cxc.norm_sq() / (c0a * c0a) - cb.norm_sq();
    if coeff <= 0.0 {
        return Ok(Vec::new());
    }
    let m = 1.0 / coeff.sqrt();
    signed_pair(cxc.scale(m / c0a), cb.scale(m), tolerance)
}

fn signed_pair(f: Vec3R, b: Vec3R, tolerance: f64) -> Result<Vec<Parity>, SymmetryError> {
    let p = Parity::from_fb_with_tol(f, b, tolerance)?;
    let n = p.negated();
    Ok(vec![p, n])
}

/// Whether `com(T₁) = com(T₂)`: the commutants coincide exactly when the
/// coefficient vectors agree up to a unimodular factor, which under the
/// stored normalization reduces to equality of the `c` vectors.
pub fn same_commutant(t1: &TimeReversal, t2: &TimeReversal) -> bool {
    same_commutant_with_tol(t1, t2, tol::CONSTRAINT)
}

pub fn same_commutant_with_tol(t1: &TimeReversal, t2: &TimeReversal, tolerance: f64) -> bool {
    let ca = t1.coeffs().c();
    let cb = t2.coeffs().c();
    ca.iter().zip(cb.iter()).all(|(x, y)| (x - y).abs() <= tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cx, pauli, tau};

    fn k_reversal() -> TimeReversal {
        TimeReversal::from_anti_op(AntiOp2::conjugation()).unwrap()
    }

    fn tau_reversal(i: usize) -> TimeReversal {
        TimeReversal::from_anti_op(tau(i)).unwrap()
    }

    fn t_from_ct(c0: f64, ct: Vec3R) -> TimeReversal {
        TimeReversal::from_c(cx(1.0, 0.0), [c0, ct.x, ct.y, ct.z]).unwrap()
    }

    #[test]
    fn parity_from_a_axis_examples() {
        let p = Parity::from_a(Vec3C::new(cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0))).unwrap();
        assert!(p.matrix().approx_eq(pauli(3), tol::ALGEBRA));

        let p = Parity::from_a(Vec3C::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0))).unwrap();
        assert!(p.matrix().approx_eq(pauli(1), tol::ALGEBRA));
    }

    #[test]
    fn parity_from_a_rotation_reflection_product() {
        // a = (sin α, 0, cos α): the matrix factors as rotation × reflection.
        let alpha = std::f64::consts::FRAC_PI_3;
        let p = Parity::from_a(Vec3C::new(
            cx(alpha.sin(), 0.0),
            cx(0.0, 0.0),
            cx(alpha.cos(), 0.0),
        ))
        .unwrap();
        let rotation = LinOp2::new(
            cx(alpha.cos(), 0.0),
            cx(-alpha.sin(), 0.0),
            cx(alpha.sin(), 0.0),
            cx(alpha.cos(), 0.0),
        );
        let reflection = LinOp2::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-1.0, 0.0));
        assert!(p.matrix().approx_eq(rotation.compose(reflection), tol::ALGEBRA));
    }

    #[test]
    fn parity_from_a_complex_coefficients() {
        // a = (i, 0, √2): i² + 2 = 1.
        let p = Parity::from_a(Vec3C::new(cx(0.0, 1.0), cx(0.0, 0.0), cx(2.0f64.sqrt(), 0.0)))
            .unwrap();
        let (f, b) = p.fb().unwrap();
        assert!(f.dist_max(Vec3R::new(0.0, 0.0, 2.0f64.sqrt())) <= tol::ALGEBRA);
        assert!(b.dist_max(Vec3R::new(1.0, 0.0, 0.0)) <= tol::ALGEBRA);
        let sq = p.matrix().compose(p.matrix());
        assert!(sq.approx_eq(LinOp2::identity(), tol::ALGEBRA));
    }

    #[test]
    fn parity_constraint_violation_reports_residual() {
        let bad = Parity::from_a(Vec3C::new(cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)));
        match bad {
            Err(SymmetryError::ConstraintViolated { residual }) => {
                assert!((residual - 1.0).abs() <= 1e-12);
            }
            other => panic!("expected ConstraintViolated, got {other:?}"),
        }
    }

    #[test]
    fn parity_from_fb_matches_from_a() {
        let f = Vec3R::new(0.0, 0.0, 2.0f64.sqrt());
        let b = Vec3R::new(1.0, 0.0, 0.0);
        let p1 = Parity::from_fb(f, b).unwrap();
        let p2 = Parity::from_a(Vec3C::from_re_im(f, b)).unwrap();
        assert_eq!(p1, p2);
        assert!(Parity::from_fb(f, f).is_err());
    }

    #[test]
    fn parity_from_matrix_classifies() {
        assert!(Parity::from_matrix(LinOp2::identity()).unwrap().is_trivial());
        let m = Parity::from_matrix(-LinOp2::identity()).unwrap();
        assert_eq!(m.sign(), Some(Sign::Minus));
        let p = Parity::from_matrix(pauli(1)).unwrap();
        assert!(!p.is_trivial());
        assert!(Parity::from_matrix(pauli(1).scale(cx(2.0, 0.0))).is_err());
    }

    #[test]
    fn time_reversal_tau0_squares_negative() {
        let t = tau_reversal(0);
        assert_eq!(t.square(), Sign::Minus);
        assert!(t.anti_op().square().approx_eq(-LinOp2::identity(), tol::ALGEBRA));
    }

    #[test]
    fn time_reversal_conjugation_squares_positive() {
        let t = TimeReversal::from_c(cx(0.0, -1.0), [0.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(t.square(), Sign::Plus);
        assert!(t.matrix().approx_eq(LinOp2::identity(), tol::ALGEBRA));
        assert_eq!(t, k_reversal());
    }

    #[test]
    fn time_reversal_normalizes_sign() {
        // (c₀, c₁, c₂, c₃) = (−1, 0, √2, 0) with ε = 1: square +1 (2−1).
        let raw_eps = cx(1.0, 0.0);
        let raw_c = [-1.0, 0.0, 2.0f64.sqrt(), 0.0];
        let t = TimeReversal::from_c(raw_eps, raw_c).unwrap();
        assert_eq!(t.square(), Sign::Plus);
        assert!(t.c0() > 0.0);
        // the normalized form is the same operator
        let mut raw = LinOp2::zero();
        for (i, ci) in raw_c.iter().enumerate() {
            raw = raw + tau(i).mat.scale(cx(*ci, 0.0));
        }
        assert!(t.matrix().approx_eq(raw.scale(raw_eps), tol::ALGEBRA));
    }

    #[test]
    fn time_reversal_rejections() {
        match TimeReversal::from_c(cx(2.0, 0.0), [1.0, 0.0, 0.0, 0.0]) {
            Err(SymmetryError::NotUnimodular { .. }) => {}
            other => panic!("expected NotUnimodular, got {other:?}"),
        }
        match TimeReversal::from_c(cx(1.0, 0.0), [0.0, 2.0, 0.0, 0.0]) {
            Err(SymmetryError::NotInvolutionLike { form }) => assert!((form - 4.0).abs() < 1e-12),
            other => panic!("expected NotInvolutionLike, got {other:?}"),
        }
    }

    #[test]
    fn commutes_matrix_examples() {
        let k = k_reversal();
        let sigma1 = Parity::from_matrix(pauli(1)).unwrap();
        let sigma3 = Parity::from_matrix(pauli(3)).unwrap();
        assert!(commutes_matrix(&sigma1, &k));
        assert!(commutes_matrix(&sigma3, &k));
        assert!(!commutes_matrix(&sigma3, &tau_reversal(0)));
    }

    #[test]
    fn commutes_vec_examples() {
        // f=(1,0,0), b=0, c̃=(0,0,1), c₀=0: both equations vanish.
        let p = Parity::from_fb(Vec3R::new(1.0, 0.0, 0.0), Vec3R::zero()).unwrap();
        let t = tau_reversal(3);
        assert!(commutes_vec(&p, &t).unwrap().commutes);

        // f=(0,0,√2), b=(1,0,0), c̃=(0,√2,0), c₀=−1: c₀f+b×c̃ = 0.
        let p = Parity::from_fb(Vec3R::new(0.0, 0.0, 2.0f64.sqrt()), Vec3R::new(1.0, 0.0, 0.0))
            .unwrap();
        let t = TimeReversal::from_c(cx(1.0, 0.0), [-1.0, 0.0, 2.0f64.sqrt(), 0.0]).unwrap();
        let check = commutes_vec(&p, &t).unwrap();
        assert!(check.commutes, "residuals {check:?}");
        assert!(commutes_matrix(&p, &t));

        // f=(0,0,1), b=0, c̃=(0,0,1): f·c̃ = 1.
        let p = Parity::from_fb(Vec3R::new(0.0, 0.0, 1.0), Vec3R::zero()).unwrap();
        assert!(!commutes_vec(&p, &t_from_ct(0.0, Vec3R::new(0.0, 0.0, 1.0))).unwrap().commutes);
    }

    #[test]
    fn commutes_vec_matches_matrix_check_on_random_pairs() {
        // both commuting pairs (built on the ellipse) and generic
        // non-commuting ones, for real-ε reversals
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let unit = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let v = Vec3R::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if let Some(u) = v.normalized(0.1) {
                return u;
            }
        };
        for k in 0..1000 {
            let b = unit(&mut rng).scale(rng.gen_range(0.0..1.5));
            let fdir = {
                let raw = unit(&mut rng);
                (raw - b.scale(raw.dot(b) / b.norm_sq().max(1e-12)))
                    .normalized(1e-3)
                    .unwrap_or(Vec3R::new(0.0, 0.0, 1.0))
            };
            let p = match Parity::from_fb(fdir.scale((1.0 + b.norm_sq()).sqrt()), b) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let t = if k % 2 == 0 {
                // commuting partner via the ellipse sweep
                crate::geometry::time_reversal_on_ellipse(&p, rng.gen_range(0.0..std::f64::consts::TAU))
                    .expect("nontrivial parity")
            } else {
                let c0: f64 = rng.gen_range(-2.0..2.0);
                let dir = unit(&mut rng);
                let n = (1.0 + c0 * c0).sqrt();
                TimeReversal::from_c(cx(1.0, 0.0), [c0, dir.x * n, dir.y * n, dir.z * n]).unwrap()
            };
            assert_eq!(
                commutes_vec(&p, &t).unwrap().commutes,
                commutes_matrix(&p, &t),
                "pair {k}"
            );
        }
    }

    #[test]
    fn commutes_vec_trivial_parity_is_vacuous() {
        let check = commutes_vec(&Parity::trivial(Sign::Minus), &tau_reversal(3)).unwrap();
        assert!(check.commutes && check.vacuous);
    }

    #[test]
    fn commutes_vec_rejects_complex_phase() {
        let p = Parity::from_matrix(pauli(1)).unwrap();
        // K has ε = −i under normalization.
        match commutes_vec(&p, &k_reversal()) {
            Err(SymmetryError::NonRealPhase) => {}
            other => panic!("expected NonRealPhase, got {other:?}"),
        }
    }

    #[test]
    fn commutes_vec_agrees_with_matrix_check() {
        let t = t_from_ct(1.0, Vec3R::new(2.0f64.sqrt(), 0.0, 0.0));
        let commuting = construct_parity(&t).unwrap();
        assert_eq!(
            commutes_vec(&commuting, &t).unwrap().commutes,
            commutes_matrix(&commuting, &t)
        );
        let other = Parity::from_fb(Vec3R::new(1.0, 0.0, 0.0), Vec3R::zero()).unwrap();
        assert_eq!(
            commutes_vec(&other, &t).unwrap().commutes,
            commutes_matrix(&other, &t)
        );
    }

    #[test]
    fn construct_parity_for_conjugation_gives_sigma1() {
        let p = construct_parity(&k_reversal()).unwrap();
        assert!(p.matrix().approx_eq(pauli(1), tol::ALGEBRA));
        assert!(commutes_matrix(&p, &k_reversal()));
    }

    #[test]
    fn construct_parity_nonzero_c0_example() {
        let t = t_from_ct(1.0, Vec3R::new(2.0f64.sqrt(), 0.0, 0.0));
        let p = construct_parity(&t).unwrap();
        let (f, b) = p.fb().unwrap();
        assert!(b.dist_max(Vec3R::new(0.0, 1.0, 0.0)) <= 1e-12);
        assert!(f.dist_max(Vec3R::new(0.0, 0.0, 2.0f64.sqrt())) <= 1e-12);
        assert!((f.norm_sq() - b.norm_sq() - 1.0).abs() <= 1e-12);
        assert!(commutes_matrix(&p, &t));
        assert!(commutes_vec(&p, &t).unwrap().commutes);
    }

    #[test]
    fn construct_parity_rejects_negative_square() {
        match construct_parity(&tau_reversal(0)) {
            Err(SymmetryError::NegativeSquare) => {}
            other => panic!("expected NegativeSquare, got {other:?}"),
        }
    }

    #[test]
    fn commutant_of_conjugation_is_real_matrices() {
        let basis = commutant_basis(&k_reversal());
        assert_eq!(basis.len(), 4);
        for op in &basis {
            let v = op.to_real_vec8();
            // imaginary coordinates vanish: X = conj(X)
            assert!(v[1].abs() + v[3].abs() + v[5].abs() + v[7].abs() <= 1e-12);
        }
    }

    #[test]
    fn commutant_of_tau0_has_only_trivial_involutions() {
        let t = tau_reversal(0);
        assert_eq!(commutant_basis(&t).len(), 4);
        let sols = involutions_in_commutant(&t);
        assert!(!sols.is_empty());
        for x in &sols {
            let near_plus = x.dist_max(LinOp2::identity());
            let near_minus = x.dist_max(-LinOp2::identity());
            assert!(near_plus.min(near_minus) <= tol::DEDUP, "nontrivial solution {x:?}");
        }
    }

    #[test]
    fn constructed_parity_lies_in_oracle_commutant() {
        for t in [
            k_reversal(),
            t_from_ct(0.0, Vec3R::new(0.0, 1.0, 0.0)),
            t_from_ct(1.0, Vec3R::new(2.0f64.sqrt(), 0.0, 0.0)),
            t_from_ct(
                -0.7,
                Vec3R::new(0.3, 1.1, 0.5).normalized(0.0).unwrap().scale(1.49f64.sqrt()),
            ),
        ] {
            let p = construct_parity(&t).unwrap();
            assert!(span_distance(&commutant_basis(&t), p.matrix()) <= tol::ORACLE);
        }
    }

    #[test]
    fn shared_parities_orthogonal_axes() {
        // c̃⁽¹⁾ = (0,1,0), c̃⁽²⁾ = (0,0,1), both c₀ = 0 → P = ±σ₁.
        let t1 = t_from_ct(0.0, Vec3R::new(0.0, 1.0, 0.0));
        let t2 = t_from_ct(0.0, Vec3R::new(0.0, 0.0, 1.0));
        let shared = shared_parities(&t1, &t2).unwrap();
        assert_eq!(shared.len(), 2);
        assert!(shared[0].matrix().dist_max(-shared[1].matrix()) <= 1e-12);
        let abs_dist = shared[0]
            .matrix()
            .dist_max(pauli(1))
            .min(shared[0].matrix().dist_max(-pauli(1)));
        assert!(abs_dist <= 1e-12);
        for p in &shared {
            assert!(commutes_matrix(p, &t1) && commutes_matrix(p, &t2));
        }
    }

    #[test]
    fn shared_parities_parallel_incompatible_is_empty() {
        // same c̃ = (√2,0,0) but opposite c₀: nothing commutes with both.
        let t1 = t_from_ct(1.0, Vec3R::new(2.0f64.sqrt(), 0.0, 0.0));
        let t2 = t_from_ct(-1.0, Vec3R::new(2.0f64.sqrt(), 0.0, 0.0));
        let shared = shared_parities(&t1, &t2).unwrap();
        assert!(shared.is_empty());
        // oracle agrees: no nontrivial involution in the joint commutant
        let sols = involutions_in_span(&joint_commutant_basis(&t1, &t2));
        for x in &sols {
            let trivially =
                x.dist_max(LinOp2::identity()).min(x.dist_max(-LinOp2::identity()));
            assert!(trivially <= tol::DEDUP);
        }
    }

    #[test]
    fn shared_parities_planted_solution_recovered() {
        // P with f=(0,0,√2), b=(1,0,0) commutes with both of these.
        let p = Parity::from_fb(Vec3R::new(0.0, 0.0, 2.0f64.sqrt()), Vec3R::new(1.0, 0.0, 0.0))
            .unwrap();
        let t1 = TimeReversal::from_c(cx(1.0, 0.0), [-1.0, 0.0, 2.0f64.sqrt(), 0.0]).unwrap();
        let t2 = t_from_ct(0.0, Vec3R::new(1.0, 0.0, 0.0));
        assert!(commutes_matrix(&p, &t1) && commutes_matrix(&p, &t2));
        let shared = shared_parities(&t1, &t2).unwrap();
        assert_eq!(shared.len(), 2);
        let d = shared
            .iter()
            .map(|q| q.matrix().dist_max(p.matrix()))
            .fold(f64::INFINITY, f64::min);
        assert!(d <= 1e-10);
    }

    #[test]
    fn shared_parities_rejects_equal_inputs() {
        let t1 = t_from_ct(0.0, Vec3R::new(0.0, 1.0, 0.0));
        let t2 = TimeReversal::from_c(cx(-1.0, 0.0), [0.0, 0.0, 1.0, 0.0]).unwrap();
        match shared_parities(&t1, &t2) {
            Err(SymmetryError::NotDistinct) => {}
            other => panic!("expected NotDistinct, got {other:?}"),
        }
    }

    #[test]
    fn same_commutant_examples() {
        let t = t_from_ct(0.0, Vec3R::new(0.0, 1.0, 0.0));
        assert!(same_commutant(&t, &t));
        let flipped = TimeReversal::from_c(cx(-1.0, 0.0), [0.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(same_commutant(&t, &flipped));
        assert!(!same_commutant(&k_reversal(), &tau_reversal(3)));
    }
}
