//! C ABI for the `ptsym2` operator library.
//!
//! Parities and time reversals cross the boundary as opaque handles
//! (`PtsymParity*`, `PtsymTimeReversal*`) owned by this library and
//! released with the matching `*_free` function. Matrices cross as flat
//! `double[8]` buffers in row-major interleaved layout
//! `[re11, im11, re12, im12, re21, im21, re22, im22]`; complex 3-vectors
//! as `double[6]`, coefficient vectors as `double[4]`.
//!
//! Every fallible call returns a [`PtsymStatus`]; out-parameters are
//! written only on [`PtsymStatus::Ok`]. Passing a tolerance `<= 0`
//! selects the library default. The generated header lands in
//! `include/ptsym2.h` at build time.

use std::ffi::{c_char, c_int};

use ptsym2::algebra::{cx, AlgebraError, LinOp2, Vec3C};
use ptsym2::geometry::{parity_to_point, sample_hyperboloid, GeometryError};
use ptsym2::hamiltonian::{
    bender_hamiltonian, classify_with_tol, discriminant_with_tol, family_from_symmetry,
    find_symmetry_with_tol, HamiltonianError, SpectralTag,
};
use ptsym2::symmetry::{
    commute_residual_matrix, commutes_matrix_with_tol, construct_parity_with_tol,
    same_commutant_with_tol, shared_parities_with_tol, Parity, Sign, SymmetryError, TimeReversal,
};
use ptsym2::tol;

/// Status code for every fallible call in this ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtsymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NonFinite = 3,
    ConstraintViolated = 4,
    NotUnimodular = 5,
    NotInvolutionLike = 6,
    NegativeSquare = 7,
    TrivialParity = 8,
    NotDistinct = 9,
    NonRealPhase = 10,
    ZeroOperator = 11,
    NotPhaseReal = 12,
    ZeroAxis = 13,
    NotCommuting = 14,
    OffSurface = 15,
    ConditionsViolated = 16,
    BrokenSymmetry = 17,
    DefectiveCase = 18,
    NotHermitian = 19,
}

/// Spectral classification tag returned by [`ptsym2_classify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtsymSpectralTag {
    UnbrokenDiagonalizable = 0,
    UnbrokenDefective = 1,
    Broken = 2,
}

/// Opaque validated parity operator.
pub struct PtsymParity(Parity);

/// Opaque validated time-reversal operator.
pub struct PtsymTimeReversal(TimeReversal);

fn effective_tol(tolerance: f64) -> f64 {
    if tolerance > 0.0 {
        tolerance
    } else {
        tol::CONSTRAINT
    }
}

fn status_of_algebra(e: &AlgebraError) -> PtsymStatus {
    match e {
        AlgebraError::NonFinite => PtsymStatus::NonFinite,
        AlgebraError::ZeroOperator => PtsymStatus::ZeroOperator,
        AlgebraError::NotPhaseReal { .. } => PtsymStatus::NotPhaseReal,
        AlgebraError::NotUnimodular { .. } => PtsymStatus::NotUnimodular,
    }
}

fn status_of_symmetry(e: &SymmetryError) -> PtsymStatus {
    match e {
        SymmetryError::Algebra(inner) => status_of_algebra(inner),
        SymmetryError::ConstraintViolated { .. } => PtsymStatus::ConstraintViolated,
        SymmetryError::NotUnimodular { .. } => PtsymStatus::NotUnimodular,
        SymmetryError::NotInvolutionLike { .. } => PtsymStatus::NotInvolutionLike,
        SymmetryError::NegativeSquare => PtsymStatus::NegativeSquare,
        SymmetryError::TrivialParity => PtsymStatus::TrivialParity,
        SymmetryError::NotDistinct => PtsymStatus::NotDistinct,
        SymmetryError::NonRealPhase => PtsymStatus::NonRealPhase,
    }
}

fn status_of_geometry(e: &GeometryError) -> PtsymStatus {
    match e {
        GeometryError::ZeroAxis => PtsymStatus::ZeroAxis,
        GeometryError::NotCommuting { .. } => PtsymStatus::NotCommuting,
        GeometryError::NegativeSquare => PtsymStatus::NegativeSquare,
        GeometryError::OffSurface { .. } => PtsymStatus::OffSurface,
        GeometryError::TrivialParity => PtsymStatus::TrivialParity,
        GeometryError::Symmetry(inner) => status_of_symmetry(inner),
    }
}

fn status_of_hamiltonian(e: &HamiltonianError) -> PtsymStatus {
    match e {
        HamiltonianError::ConditionsViolated { .. } => PtsymStatus::ConditionsViolated,
        HamiltonianError::NotHermitian { .. } => PtsymStatus::NotHermitian,
        HamiltonianError::BrokenSymmetry => PtsymStatus::BrokenSymmetry,
        HamiltonianError::DefectiveCase => PtsymStatus::DefectiveCase,
        HamiltonianError::NotCommuting { .. } => PtsymStatus::NotCommuting,
        HamiltonianError::NegativeSquare => PtsymStatus::NegativeSquare,
        HamiltonianError::Symmetry(inner) => status_of_symmetry(inner),
    }
}

/// Reads a row-major interleaved `double[8]` into a matrix.
///
/// # Safety
/// `mat` must point to 8 readable doubles.
unsafe fn read_mat8(mat: *const f64) -> LinOp2 {
    let mut buf = [0.0f64; 8];
    std::ptr::copy_nonoverlapping(mat, buf.as_mut_ptr(), 8);
    LinOp2::from_real_vec8(buf)
}

/// # Safety
/// `out` must point to 8 writable doubles.
unsafe fn write_mat8(out: *mut f64, m: LinOp2) {
    let buf = m.to_real_vec8();
    std::ptr::copy_nonoverlapping(buf.as_ptr(), out, 8);
}

/// Static description of a status code; never null.
#[no_mangle]
pub extern "C" fn ptsym2_status_message(status: PtsymStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        PtsymStatus::Ok => b"ok\0",
        PtsymStatus::NullPointer => b"null pointer argument\0",
        PtsymStatus::InvalidArgument => b"invalid argument\0",
        PtsymStatus::NonFinite => b"non-finite component in input\0",
        PtsymStatus::ConstraintViolated => b"coefficient constraint violated\0",
        PtsymStatus::NotUnimodular => b"phase factor is not unimodular\0",
        PtsymStatus::NotInvolutionLike => b"quadratic form is not +1 or -1\0",
        PtsymStatus::NegativeSquare => b"time reversal squares to -I\0",
        PtsymStatus::TrivialParity => b"operation requires a nontrivial parity\0",
        PtsymStatus::NotDistinct => b"time reversals are equal up to phase\0",
        PtsymStatus::NonRealPhase => b"operation requires a real phase factor\0",
        PtsymStatus::ZeroOperator => b"cannot decompose the zero operator\0",
        PtsymStatus::NotPhaseReal => b"coefficients are not phase times a real vector\0",
        PtsymStatus::ZeroAxis => b"cannot build a frame from a zero axis\0",
        PtsymStatus::NotCommuting => b"operators do not commute\0",
        PtsymStatus::OffSurface => b"point is off the hyperboloid\0",
        PtsymStatus::ConditionsViolated => b"operator violates the symmetry conditions\0",
        PtsymStatus::BrokenSymmetry => b"symmetry is broken\0",
        PtsymStatus::DefectiveCase => b"operator is defective\0",
        PtsymStatus::NotHermitian => b"operator is not Hermitian\0",
    };
    s.as_ptr() as *const c_char
}

/// Default constraint-validation tolerance.
#[no_mangle]
pub extern "C" fn ptsym2_default_tol() -> f64 {
    tol::CONSTRAINT
}

// ---------------------------------------------------------------------------
// Parity handles
// ---------------------------------------------------------------------------

/// Builds a nontrivial parity from the complex coefficient vector given
/// as `double[6]` `[re1, im1, re2, im2, re3, im3]`.
///
/// # Safety
/// `a` must point to 6 readable doubles and `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_parity_from_a(
    a: *const f64,
    tolerance: f64,
    out: *mut *mut PtsymParity,
) -> PtsymStatus {
    if a.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    let mut buf = [0.0f64; 6];
    std::ptr::copy_nonoverlapping(a, buf.as_mut_ptr(), 6);
    let vec = Vec3C::new(cx(buf[0], buf[1]), cx(buf[2], buf[3]), cx(buf[4], buf[5]));
    match Parity::from_a_with_tol(vec, effective_tol(tolerance)) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(PtsymParity(p)));
            PtsymStatus::Ok
        }
        Err(e) => status_of_symmetry(&e),
    }
}

/// Builds the trivial parity `sign·I`, `sign = ±1`.
///
/// # Safety
/// `out` must point to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_parity_trivial(
    sign: c_int,
    out: *mut *mut PtsymParity,
) -> PtsymStatus {
    if out.is_null() {
        return PtsymStatus::NullPointer;
    }
    let Some(sign) = Sign::from_value(sign as f64) else {
        return PtsymStatus::InvalidArgument;
    };
    *out = Box::into_raw(Box::new(PtsymParity(Parity::trivial(sign))));
    PtsymStatus::Ok
}

/// Classifies an involution matrix (`double[8]`) as a parity operator.
///
/// # Safety
/// `mat` must point to 8 readable doubles and `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_parity_from_matrix(
    mat: *const f64,
    tolerance: f64,
    out: *mut *mut PtsymParity,
) -> PtsymStatus {
    if mat.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    match Parity::from_matrix_with_tol(read_mat8(mat), effective_tol(tolerance)) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(PtsymParity(p)));
            PtsymStatus::Ok
        }
        Err(e) => status_of_symmetry(&e),
    }
}

/// Writes the parity's representation matrix into `out` (`double[8]`).
///
/// # Safety
/// `parity` must be a live handle; `out` must point to 8 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_parity_matrix(
    parity: *const PtsymParity,
    out: *mut f64,
) -> PtsymStatus {
    if parity.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    write_mat8(out, (*parity).0.matrix());
    PtsymStatus::Ok
}

/// # Safety
/// `parity` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_parity_is_trivial(
    parity: *const PtsymParity,
    out: *mut bool,
) -> PtsymStatus {
    if parity.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    *out = (*parity).0.is_trivial();
    PtsymStatus::Ok
}

/// Releases a parity handle; a null pointer is a no-op.
///
/// # Safety
/// `parity` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_parity_free(parity: *mut PtsymParity) {
    if !parity.is_null() {
        drop(Box::from_raw(parity));
    }
}

// ---------------------------------------------------------------------------
// Time-reversal handles
// ---------------------------------------------------------------------------

/// Builds a time reversal from phase `(eps_re, eps_im)` and coefficients
/// `c` (`double[4]`, order `c0..c3`).
///
/// # Safety
/// `c` must point to 4 readable doubles and `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_time_reversal_from_c(
    eps_re: f64,
    eps_im: f64,
    c: *const f64,
    tolerance: f64,
    out: *mut *mut PtsymTimeReversal,
) -> PtsymStatus {
    if c.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    let mut buf = [0.0f64; 4];
    std::ptr::copy_nonoverlapping(c, buf.as_mut_ptr(), 4);
    match TimeReversal::from_c_with_tol(cx(eps_re, eps_im), buf, effective_tol(tolerance)) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(PtsymTimeReversal(t)));
            PtsymStatus::Ok
        }
        Err(e) => status_of_symmetry(&e),
    }
}

/// Writes the matrix of the `v -> M conj(v)` form into `out` (`double[8]`).
///
/// # Safety
/// `t` must be a live handle; `out` must point to 8 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_time_reversal_matrix(
    t: *const PtsymTimeReversal,
    out: *mut f64,
) -> PtsymStatus {
    if t.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    write_mat8(out, (*t).0.matrix());
    PtsymStatus::Ok
}

/// The sign of `T²`: `+1` or `-1`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_time_reversal_square(
    t: *const PtsymTimeReversal,
    out: *mut c_int,
) -> PtsymStatus {
    if t.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    *out = (*t).0.square().value() as c_int;
    PtsymStatus::Ok
}

/// Normalized coefficients: `eps_out` receives `[re, im]`, `c_out`
/// receives `c0..c3`.
///
/// # Safety
/// `t` must be a live handle; `eps_out` must point to 2 and `c_out` to 4
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_time_reversal_coeffs(
    t: *const PtsymTimeReversal,
    eps_out: *mut f64,
    c_out: *mut f64,
) -> PtsymStatus {
    if t.is_null() || eps_out.is_null() || c_out.is_null() {
        return PtsymStatus::NullPointer;
    }
    let tr = &(*t).0;
    let eps = tr.eps();
    std::ptr::copy_nonoverlapping([eps.re, eps.im].as_ptr(), eps_out, 2);
    std::ptr::copy_nonoverlapping(tr.coeffs().c().as_ptr(), c_out, 4);
    PtsymStatus::Ok
}

/// Releases a time-reversal handle; a null pointer is a no-op.
///
/// # Safety
/// `t` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_time_reversal_free(t: *mut PtsymTimeReversal) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

// ---------------------------------------------------------------------------
// Commutation and construction
// ---------------------------------------------------------------------------

/// Builds a nontrivial parity commuting with `t` (requires `T² = I`).
///
/// # Safety
/// `t` must be a live handle; `out` must point to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_construct_parity(
    t: *const PtsymTimeReversal,
    tolerance: f64,
    out: *mut *mut PtsymParity,
) -> PtsymStatus {
    if t.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    match construct_parity_with_tol(&(*t).0, effective_tol(tolerance)) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(PtsymParity(p)));
            PtsymStatus::Ok
        }
        Err(e) => status_of_symmetry(&e),
    }
}

/// Max-norm commutation residual of `P∘T − T∘P`.
///
/// # Safety
/// `parity` and `t` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_commute_residual(
    parity: *const PtsymParity,
    t: *const PtsymTimeReversal,
    out: *mut f64,
) -> PtsymStatus {
    if parity.is_null() || t.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    *out = commute_residual_matrix(&(*parity).0, &(*t).0);
    PtsymStatus::Ok
}

/// Whether the parity and time reversal commute at `tolerance`.
///
/// # Safety
/// `parity` and `t` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_commutes(
    parity: *const PtsymParity,
    t: *const PtsymTimeReversal,
    tolerance: f64,
    out: *mut bool,
) -> PtsymStatus {
    if parity.is_null() || t.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    *out = commutes_matrix_with_tol(&(*parity).0, &(*t).0, effective_tol(tolerance));
    PtsymStatus::Ok
}

/// The nontrivial parities commuting with both time reversals. Writes 0
/// or 2 to `count`; on 2, `out_pos`/`out_neg` receive the pair.
///
/// # Safety
/// `t1`, `t2` must be live handles; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_shared_parities(
    t1: *const PtsymTimeReversal,
    t2: *const PtsymTimeReversal,
    tolerance: f64,
    out_pos: *mut *mut PtsymParity,
    out_neg: *mut *mut PtsymParity,
    count: *mut u64,
) -> PtsymStatus {
    if t1.is_null() || t2.is_null() || out_pos.is_null() || out_neg.is_null() || count.is_null() {
        return PtsymStatus::NullPointer;
    }
    match shared_parities_with_tol(&(*t1).0, &(*t2).0, effective_tol(tolerance)) {
        Ok(pair) => {
            *count = pair.len() as u64;
            if let [p, n] = pair.as_slice() {
                *out_pos = Box::into_raw(Box::new(PtsymParity(p.clone())));
                *out_neg = Box::into_raw(Box::new(PtsymParity(n.clone())));
            }
            PtsymStatus::Ok
        }
        Err(e) => status_of_symmetry(&e),
    }
}

/// Whether the two time reversals have the same commutant.
///
/// # Safety
/// `t1` and `t2` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_same_commutant(
    t1: *const PtsymTimeReversal,
    t2: *const PtsymTimeReversal,
    tolerance: f64,
    out: *mut bool,
) -> PtsymStatus {
    if t1.is_null() || t2.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    *out = same_commutant_with_tol(&(*t1).0, &(*t2).0, effective_tol(tolerance));
    PtsymStatus::Ok
}

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Samples `n` commuting parities from the hyperboloid of `t`
/// (requires `T² = I`). `rows` receives `n` records of 9 doubles:
/// frame coordinates `x', y', z'` followed by global `f1..f3, b1..b3`.
/// Deterministic in `seed`.
///
/// # Safety
/// `t` must be a live handle; `rows` must point to `9*n` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_sample_hyperboloid(
    t: *const PtsymTimeReversal,
    n: u64,
    seed: u64,
    rows: *mut f64,
) -> PtsymStatus {
    if t.is_null() || (rows.is_null() && n > 0) {
        return PtsymStatus::NullPointer;
    }
    let t = &(*t).0;
    let parities = match sample_hyperboloid(t, n as usize, seed) {
        Ok(p) => p,
        Err(e) => return status_of_geometry(&e),
    };
    for (i, p) in parities.iter().enumerate() {
        let point = match parity_to_point(p, t) {
            Ok(point) => point,
            Err(e) => return status_of_geometry(&e),
        };
        let (f, b) = p.fb().expect("samples are nontrivial");
        let record = [
            point.m.x, point.m.y, point.m.z, f.x, f.y, f.z, b.x, b.y, b.z,
        ];
        std::ptr::copy_nonoverlapping(record.as_ptr(), rows.add(9 * i), 9);
    }
    PtsymStatus::Ok
}

// ---------------------------------------------------------------------------
// Hamiltonians
// ---------------------------------------------------------------------------

/// Classifies a PT-symmetric matrix (`double[8]`). On success writes the
/// tag, both eigenvalues (`lambda_out`: `[re1, im1, re2, im2]`) and the
/// discriminant.
///
/// # Safety
/// `mat` must point to 8 readable doubles; `tag_out` must be writable,
/// `lambda_out` must point to 4 and `disc_out` to 1 writable double.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_classify(
    mat: *const f64,
    tolerance: f64,
    tag_out: *mut PtsymSpectralTag,
    lambda_out: *mut f64,
    disc_out: *mut f64,
) -> PtsymStatus {
    if mat.is_null() || tag_out.is_null() || lambda_out.is_null() || disc_out.is_null() {
        return PtsymStatus::NullPointer;
    }
    match classify_with_tol(read_mat8(mat), effective_tol(tolerance)) {
        Ok(class) => {
            *tag_out = match class.tag {
                SpectralTag::UnbrokenDiagonalizable => PtsymSpectralTag::UnbrokenDiagonalizable,
                SpectralTag::UnbrokenDefective => PtsymSpectralTag::UnbrokenDefective,
                SpectralTag::Broken => PtsymSpectralTag::Broken,
            };
            let lambdas = [
                class.lambda1.re,
                class.lambda1.im,
                class.lambda2.re,
                class.lambda2.im,
            ];
            std::ptr::copy_nonoverlapping(lambdas.as_ptr(), lambda_out, 4);
            *disc_out = class.discriminant;
            PtsymStatus::Ok
        }
        Err(e) => status_of_hamiltonian(&e),
    }
}

/// `(Re trace)² − 4 Re det` of a PT-symmetric matrix.
///
/// # Safety
/// `mat` must point to 8 readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_discriminant(
    mat: *const f64,
    tolerance: f64,
    out: *mut f64,
) -> PtsymStatus {
    if mat.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    match discriminant_with_tol(read_mat8(mat), effective_tol(tolerance)) {
        Ok(d) => {
            *out = d;
            PtsymStatus::Ok
        }
        Err(e) => status_of_hamiltonian(&e),
    }
}

/// Writes the matrix `[[r e^{iθ}, s], [s, r e^{-iθ}]]` into `out`.
///
/// # Safety
/// `out` must point to 8 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_bender(r: f64, theta: f64, s: f64, out: *mut f64) -> PtsymStatus {
    if out.is_null() {
        return PtsymStatus::NullPointer;
    }
    if !(r.is_finite() && theta.is_finite() && s.is_finite()) {
        return PtsymStatus::NonFinite;
    }
    write_mat8(out, bender_hamiltonian(r, theta, s).matrix());
    PtsymStatus::Ok
}

/// A canonical time reversal commuting with the matrix.
///
/// # Safety
/// `mat` must point to 8 readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_find_symmetry(
    mat: *const f64,
    tolerance: f64,
    out: *mut *mut PtsymTimeReversal,
) -> PtsymStatus {
    if mat.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    match find_symmetry_with_tol(read_mat8(mat), effective_tol(tolerance)) {
        Ok(t) => {
            *out = Box::into_raw(Box::new(PtsymTimeReversal(t)));
            PtsymStatus::Ok
        }
        Err(e) => status_of_hamiltonian(&e),
    }
}

/// The family member of `t` at the four parameters (`double[4]`);
/// writes its matrix into `out`.
///
/// # Safety
/// `t` must be a live handle; `params` must point to 4 readable and
/// `out` to 8 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ptsym2_family_from_symmetry(
    t: *const PtsymTimeReversal,
    params: *const f64,
    out: *mut f64,
) -> PtsymStatus {
    if t.is_null() || params.is_null() || out.is_null() {
        return PtsymStatus::NullPointer;
    }
    let mut buf = [0.0f64; 4];
    std::ptr::copy_nonoverlapping(params, buf.as_mut_ptr(), 4);
    if !buf.iter().all(|x| x.is_finite()) {
        return PtsymStatus::NonFinite;
    }
    write_mat8(out, family_from_symmetry(&(*t).0, buf).matrix());
    PtsymStatus::Ok
}
