//! PT-symmetric Hamiltonians on ℂ²: symmetry conditions, commuting
//! time-reversal witnesses, four-parameter families, and the spectral
//! trichotomy.
//!
//! Writing `H = h₀σ₀ + h̃·σ`, an operator commutes with some anti-linear
//! time reversal exactly when
//!
//! ```text
//! Im(h₀) = 0      Re(h̃)·Im(h̃) = 0
//! ```
//!
//! Under those conditions the characteristic polynomial has real
//! coefficients, so the spectrum is governed by one real number, the
//! discriminant `(Re tr H)² − 4 Re det H`:
//!
//! - positive: two real eigenvalues (unbroken, diagonalizable);
//! - zero with `H` non-scalar: one real eigenvalue with a generalized
//!   eigenvector, `(H − λ₀I)² = 0` (the exceptional point);
//! - negative: a complex-conjugate pair (broken).
//!
//! [`find_symmetry`] produces a canonical commuting time reversal,
//! [`family_from_symmetry`] enumerates the four-real-parameter family of
//! operators commuting with a given one, and
//! [`pt_invariant_eigenvectors`] rephases eigenvectors into fixed points
//! of the symmetry in the unbroken case.

use thiserror::Error;

use crate::algebra::{pauli_decompose, LinOp2, PauliCoeffs, Vec2C, Vec3R, C64};
use crate::geometry::{frame_from_axis, AxisSlot};
use crate::symmetry::{Sign, SymmetryError, TimeReversal};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HamiltonianError {
    /// `Im(h₀) = 0` or `Re(h̃)·Im(h̃) = 0` fails.
    #[error("operator violates the symmetry conditions (residual {residual:e})")]
    ConditionsViolated { residual: f64 },
    #[error("operator is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    /// Negative discriminant: complex eigenvalues, no fixed eigenbasis.
    #[error("symmetry is broken; eigenvectors cannot be made invariant")]
    BrokenSymmetry,
    /// Zero discriminant with a non-scalar operator.
    #[error("operator is defective at the exceptional point")]
    DefectiveCase,
    #[error("time reversal does not commute with the operator (residual {residual:e})")]
    NotCommuting { residual: f64 },
    #[error("time reversal squares to -I")]
    NegativeSquare,
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// A validated PT-symmetric operator with cached Pauli data.
#[derive(Debug, Clone, PartialEq)]
pub struct PTHamiltonian {
    mat: LinOp2,
    coeffs: PauliCoeffs,
    re_h: Vec3R,
    im_h: Vec3R,
}

impl PTHamiltonian {
    pub fn new(mat: LinOp2) -> Result<PTHamiltonian, HamiltonianError> {
        PTHamiltonian::with_tol(mat, tol::CONSTRAINT)
    }

    pub fn with_tol(mat: LinOp2, tolerance: f64) -> Result<PTHamiltonian, HamiltonianError> {
        let mat = mat
            .validated()
            .map_err(|e| HamiltonianError::Symmetry(e.into()))?;
        let residual = pt_conditions_residual(mat);
        if residual > tolerance * condition_scale(mat) {
            return Err(HamiltonianError::ConditionsViolated { residual });
        }
        let coeffs = pauli_decompose(mat);
        Ok(PTHamiltonian {
            mat,
            coeffs,
            re_h: coeffs.re_vector(),
            im_h: coeffs.im_vector(),
        })
    }

    pub fn matrix(&self) -> LinOp2 {
        self.mat
    }

    pub fn coeffs(&self) -> PauliCoeffs {
        self.coeffs
    }

    /// `Re(h₁, h₂, h₃)`
    pub fn re_h(&self) -> Vec3R {
        self.re_h
    }

    /// `Im(h₁, h₂, h₃)`
    pub fn im_h(&self) -> Vec3R {
        self.im_h
    }
}

fn condition_scale(h: LinOp2) -> f64 {
    let s = h.max_norm();
    (s * s).max(1.0)
}

/// Worst residual of the two symmetry conditions.
pub fn pt_conditions_residual(h: LinOp2) -> f64 {
    let hc = pauli_decompose(h);
    hc.h0.im.abs().max(hc.re_vector().dot(hc.im_vector()).abs())
}

/// Whether `Im(h₀) = 0` and `Re(h̃)·Im(h̃) = 0` hold to tolerance
/// (scaled quadratically with the entry size).
pub fn pt_conditions_check(h: LinOp2) -> bool {
    pt_conditions_check_with_tol(h, tol::CONSTRAINT)
}

pub fn pt_conditions_check_with_tol(h: LinOp2, tolerance: f64) -> bool {
    pt_conditions_residual(h) <= tolerance * condition_scale(h)
}

/// Residual of `H` commuting with the anti-linear operator of matrix `M`:
/// `‖H·M − M·conj(H)‖`.
pub fn symmetry_residual(h: LinOp2, t: &TimeReversal) -> f64 {
    let m = t.matrix();
    h.compose(m).dist_max(m.compose(h.conj()))
}

/// A canonical time reversal commuting with `h`.
///
/// Always the `c₀ = 0` representative: `c̃ = Im(h̃)/‖Im(h̃)‖` when the
/// imaginary part is nonzero (the cross-product equation then holds
/// because `c̃ ∥ Im(h̃)`, the dot equation by the symmetry conditions);
/// otherwise the deterministic unit vector orthogonal to `Re(h̃)`; for
/// scalar `h`, `c̃ = (0,0,1)`. The witness satisfies `T² = I`.
pub fn find_symmetry(h: LinOp2) -> Result<TimeReversal, HamiltonianError> {
    find_symmetry_with_tol(h, tol::CONSTRAINT)
}

pub fn find_symmetry_with_tol(h: LinOp2, tolerance: f64) -> Result<TimeReversal, HamiltonianError> {
    let ham = PTHamiltonian::with_tol(h, tolerance)?;
    let scale = h.max_norm().max(1.0);
    let ct = if let Some(dir) = ham.im_h().normalized(tolerance * scale) {
        dir
    } else if ham.re_h().norm() > tolerance * scale {
        frame_from_axis(ham.re_h(), AxisSlot::X)
            .expect("re_h checked nonzero")
            .u2
    } else {
        Vec3R::new(0.0, 0.0, 1.0)
    };
    let t = TimeReversal::from_c_with_tol(C64::new(1.0, 0.0), [0.0, ct.x, ct.y, ct.z], tolerance)?;
    debug_assert!(symmetry_residual(h, &t) <= 1e-9 * condition_scale(h));
    Ok(t)
}

/// The four-real-parameter family of operators commuting with a fixed
/// time reversal.
///
/// With `c₀ ≠ 0`: `params = (Im h₁, Im h₂, Im h₃, Re h₀)` and
/// `Re(h̃) = (c̃×Im(h̃))/c₀`. With `c₀ = 0`: `params = (t, p, q, Re h₀)`
/// where `Im(h̃) = t·c̃` and `Re(h̃) = p·u + q·v` over the deterministic
/// orthonormal pair `(u, v) ⊥ c̃`. Every parameter value is admissible
/// and the result commutes with `t` at matrix level.
pub fn family_from_symmetry(t: &TimeReversal, params: [f64; 4]) -> PTHamiltonian {
    let c0 = t.c0();
    let ct = t.c_tilde();
    let (re_h, im_h) = if c0.abs() <= tol::CONSTRAINT {
        let frame = frame_from_axis(ct, AxisSlot::X).expect("c tilde nonzero for a time reversal");
        let im_h = ct.scale(params[0]);
        let re_h = frame.u2.scale(params[1]) + frame.u3.scale(params[2]);
        (re_h, im_h)
    } else {
        let im_h = Vec3R::new(params[0], params[1], params[2]);
        (ct.cross(im_h).scale(1.0 / c0), im_h)
    };
    let h0 = C64::new(params[3], 0.0);
    let coeffs = PauliCoeffs::new(
        h0,
        C64::new(re_h.x, im_h.x),
        C64::new(re_h.y, im_h.y),
        C64::new(re_h.z, im_h.z),
    );
    PTHamiltonian::new(coeffs.compose()).expect("construction satisfies the symmetry conditions")
}

/// `(Re trace)² − 4·Re determinant` of a PT-symmetric operator.
pub fn discriminant(h: LinOp2) -> Result<f64, HamiltonianError> {
    discriminant_with_tol(h, tol::CONSTRAINT)
}

pub fn discriminant_with_tol(h: LinOp2, tolerance: f64) -> Result<f64, HamiltonianError> {
    let residual = pt_conditions_residual(h);
    if residual > tolerance * condition_scale(h) {
        return Err(HamiltonianError::ConditionsViolated { residual });
    }
    Ok(raw_discriminant(h))
}

fn raw_discriminant(h: LinOp2) -> f64 {
    let tr = h.trace().re;
    tr * tr - 4.0 * h.det().re
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralTag {
    UnbrokenDiagonalizable,
    UnbrokenDefective,
    Broken,
}

impl SpectralTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectralTag::UnbrokenDiagonalizable => "UnbrokenDiagonalizable",
            SpectralTag::UnbrokenDefective => "UnbrokenDefective",
            SpectralTag::Broken => "Broken",
        }
    }
}

/// Spectral classification of a PT-symmetric operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralClass {
    pub tag: SpectralTag,
    pub lambda1: C64,
    pub lambda2: C64,
    pub discriminant: f64,
}

/// Classifies by the sign of the discriminant.
///
/// The zero band is `|disc| ≤ tol·max(1, scale²)` with `scale` the
/// largest entry magnitude, which keeps the classification stable under
/// uniform scaling of `H`. Inside the band, a scalar `H` is still
/// diagonalizable; anything else is defective with
/// `λ₀ = Re(tr)/2` and `(H − λ₀I)² = 0`.
pub fn classify(h: LinOp2) -> Result<SpectralClass, HamiltonianError> {
    classify_with_tol(h, tol::CONSTRAINT)
}

pub fn classify_with_tol(h: LinOp2, tolerance: f64) -> Result<SpectralClass, HamiltonianError> {
    let disc = discriminant_with_tol(h, tolerance)?;
    let scale = h.max_norm();
    let tol_d = 1e-9 * (scale * scale).max(1.0);
    let tr_half = 0.5 * h.trace().re;
    if disc > tol_d {
        let root = disc.sqrt();
        Ok(SpectralClass {
            tag: SpectralTag::UnbrokenDiagonalizable,
            lambda1: C64::new(tr_half + 0.5 * root, 0.0),
            lambda2: C64::new(tr_half - 0.5 * root, 0.0),
            discriminant: disc,
        })
    } else if disc < -tol_d {
        let root = (-disc).sqrt();
        Ok(SpectralClass {
            tag: SpectralTag::Broken,
            lambda1: C64::new(tr_half, 0.5 * root),
            lambda2: C64::new(tr_half, -0.5 * root),
            discriminant: disc,
        })
    } else {
        let lambda0 = C64::new(tr_half, 0.0);
        let shifted = h - LinOp2::identity().scale(lambda0);
        let tag = if shifted.max_norm() <= 1e-9 * scale.max(1.0) {
            SpectralTag::UnbrokenDiagonalizable
        } else {
            SpectralTag::UnbrokenDefective
        };
        Ok(SpectralClass {
            tag,
            lambda1: lambda0,
            lambda2: lambda0,
            discriminant: disc,
        })
    }
}

/// Eigenvalues and (generalized) eigenvectors of an arbitrary 2×2
/// complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub values: (C64, C64),
    pub vectors: (Vec2C, Vec2C),
    /// When set, `vectors.1` is a generalized eigenvector:
    /// `(H − λ₀I)²ψ₂ = 0` and `(H − λ₀I)ψ₂ = ψ₁`.
    pub defective: bool,
}

/// Closed-form eigensystem from the quadratic
/// `λ² − tr(H)λ + det(H) = 0`.
///
/// Eigenvectors come from the nullspace rows of `H − λI`, taking the
/// larger-magnitude of the two column constructions. At a defective
/// point the second vector solves `(H − λ₀I)ψ₂ = ψ₁` instead.
pub fn eigen(h: LinOp2) -> EigenSystem {
    let tr = h.trace();
    let det = h.det();
    let delta = tr * tr - C64::new(4.0, 0.0) * det;
    let scale = h.max_norm();
    let tol_d = 1e-9 * (scale * scale).max(1.0);
    let lambda0 = tr * C64::new(0.5, 0.0);
    if delta.norm() <= tol_d {
        let shifted = h - LinOp2::identity().scale(lambda0);
        if shifted.max_norm() <= 1e-9 * scale.max(1.0) {
            // scalar matrix
            return EigenSystem {
                values: (lambda0, lambda0),
                vectors: (
                    Vec2C::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
                    Vec2C::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
                ),
                defective: false,
            };
        }
        // rank-one nilpotent shift: take the larger column of H − λ₀I
        let col1 = Vec2C::new(shifted.m11, shifted.m21);
        let col2 = Vec2C::new(shifted.m12, shifted.m22);
        let (psi2_seed, col) = if col1.norm() >= col2.norm() {
            (Vec2C::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)), col1)
        } else {
            (Vec2C::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)), col2)
        };
        let norm = col.norm();
        let inv = canonical_phase(col.scale(C64::new(1.0 / norm, 0.0))) / norm;
        return EigenSystem {
            values: (lambda0, lambda0),
            vectors: (col.scale(inv), psi2_seed.scale(inv)),
            defective: true,
        };
    }
    let root = delta.sqrt();
    let half = C64::new(0.5, 0.0);
    let l1 = (tr + root) * half;
    let l2 = (tr - root) * half;
    EigenSystem {
        values: (l1, l2),
        vectors: (eigenvector_for(h, l1, 0), eigenvector_for(h, l2, 1)),
        defective: false,
    }
}

fn eigenvector_for(h: LinOp2, lambda: C64, index: usize) -> Vec2C {
    let va = Vec2C::new(h.m12, lambda - h.m11);
    let vb = Vec2C::new(lambda - h.m22, h.m21);
    let (na, nb) = (va.norm(), vb.norm());
    let scale = h.max_norm().max(lambda.norm()).max(1.0);
    let v = if na.max(nb) <= 1e-14 * scale {
        // both constructions vanish only when H - λI is essentially zero;
        // fall back to the basis vector matching the eigenvalue position
        if index == 0 {
            Vec2C::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
        } else {
            Vec2C::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0))
        }
    } else if na >= nb {
        va
    } else {
        vb
    };
    let v = v.scale(C64::new(1.0 / v.norm(), 0.0));
    v.scale(canonical_phase(v))
}

/// Phase factor that makes the larger-magnitude component of a unit
/// vector real and positive; fixes the arbitrary eigenvector phase.
fn canonical_phase(v: Vec2C) -> C64 {
    let lead = if v.x1.norm() >= v.x2.norm() { v.x1 } else { v.x2 };
    lead.conj() / lead.norm()
}

/// Rephases the eigenvectors of an unbroken diagonalizable `h` into
/// fixed points of the commuting time reversal: `ψ′ = ψ + Tψ`, falling
/// back to `i(ψ − Tψ)` when the first combination degenerates. The two
/// outputs satisfy `Tψ′ = ψ′` and span ℂ².
pub fn pt_invariant_eigenvectors(
    h: LinOp2,
    t: &TimeReversal,
) -> Result<(Vec2C, Vec2C), HamiltonianError> {
    pt_invariant_eigenvectors_with_tol(h, t, tol::CONSTRAINT)
}

pub fn pt_invariant_eigenvectors_with_tol(
    h: LinOp2,
    t: &TimeReversal,
    tolerance: f64,
) -> Result<(Vec2C, Vec2C), HamiltonianError> {
    if t.square() == Sign::Minus {
        return Err(HamiltonianError::NegativeSquare);
    }
    let residual = symmetry_residual(h, t);
    if residual > tolerance * condition_scale(h) {
        return Err(HamiltonianError::NotCommuting { residual });
    }
    match classify_with_tol(h, tolerance)?.tag {
        SpectralTag::Broken => return Err(HamiltonianError::BrokenSymmetry),
        SpectralTag::UnbrokenDefective => return Err(HamiltonianError::DefectiveCase),
        SpectralTag::UnbrokenDiagonalizable => {}
    }
    let es = eigen(h);
    let anti = t.anti_op();
    let fixed_candidates = |v: Vec2C| {
        let tv = anti.apply(v);
        [v + tv, (v - tv).scale(C64::new(0.0, 1.0))]
    };
    // ‖v+Tv‖² + ‖i(v−Tv)‖² = 4 for unit v, so one candidate always survives.
    let psi1 = fixed_candidates(es.vectors.0)
        .into_iter()
        .find(|c| c.norm() > 1e-6)
        .expect("a fixed-point combination of a unit vector is nonzero");
    let psi1 = psi1.scale(C64::new(1.0 / psi1.norm(), 0.0));
    // For distinct eigenvalues independence is automatic; in the scalar
    // case at least one candidate leaves the line spanned by psi1.
    let psi2 = fixed_candidates(es.vectors.1)
        .into_iter()
        .filter(|c| c.norm() > 1e-6)
        .map(|c| c.scale(C64::new(1.0 / c.norm(), 0.0)))
        .find(|c| (psi1.x1 * c.x2 - psi1.x2 * c.x1).norm() > 1e-6)
        .expect("the fixed-point set spans the space when T squares to I");
    Ok((psi1, psi2))
}

/// `H = [[r·e^{iθ}, s], [s, r·e^{−iθ}]]`, the standard non-Hermitian
/// example; symmetric under parity `σ₁` with componentwise conjugation.
/// Unbroken exactly when `s² ≥ r²sin²θ`.
pub fn bender_hamiltonian(r: f64, theta: f64, s: f64) -> PTHamiltonian {
    let (sin, cos) = theta.sin_cos();
    let diag = C64::new(r * cos, r * sin);
    let off = C64::new(s, 0.0);
    let mat = LinOp2::new(diag, off, off, diag.conj());
    PTHamiltonian::new(mat).expect("h0 = r cos θ real and re_h ⊥ im_h by construction")
}

/// A Hermitian operator together with its symmetry witness and
/// classification; the class is never [`SpectralTag::Broken`] because
/// the discriminant equals `4‖h̃‖² ≥ 0`.
pub fn hermitian_is_unbroken(
    h: LinOp2,
) -> Result<(TimeReversal, SpectralClass), HamiltonianError> {
    hermitian_is_unbroken_with_tol(h, tol::CONSTRAINT)
}

pub fn hermitian_is_unbroken_with_tol(
    h: LinOp2,
    tolerance: f64,
) -> Result<(TimeReversal, SpectralClass), HamiltonianError> {
    let residual = h.dist_max(h.adjoint());
    if residual > tolerance * h.max_norm().max(1.0) {
        return Err(HamiltonianError::NotHermitian { residual });
    }
    let t = find_symmetry_with_tol(h, tolerance)?;
    let class = classify_with_tol(h, tolerance)?;
    Ok((t, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cx, pauli, tau, AntiOp2};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn defective_example() -> LinOp2 {
        // [[i, 1], [1, −i]]
        LinOp2::new(cx(0.0, 1.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, -1.0))
    }

    #[test]
    fn conditions_check_examples() {
        assert!(pt_conditions_check(defective_example()));
        let scalar_i = LinOp2::identity().scale(cx(0.0, 1.0));
        assert!(!pt_conditions_check(scalar_i));
        // Hermitian operators always pass
        let herm = LinOp2::new(cx(2.0, 0.0), cx(1.0, 1.0), cx(1.0, -1.0), cx(2.0, 0.0));
        assert!(pt_conditions_check(herm));
    }

    #[test]
    fn find_symmetry_defective_example() {
        let h = defective_example();
        let t = find_symmetry(h).unwrap();
        assert_eq!(t.square(), Sign::Plus);
        assert!(t.c0().abs() <= 1e-15);
        assert!(t.c_tilde().dist_max(Vec3R::new(0.0, 0.0, 1.0)) <= 1e-15);
        assert!(symmetry_residual(h, &t) <= 1e-12);
    }

    #[test]
    fn find_symmetry_hermitian_uses_orthogonal_direction() {
        let b = cx(1.0, 2.0);
        let h = LinOp2::new(cx(3.0, 0.0), b, b.conj(), cx(3.0, 0.0));
        let t = find_symmetry(h).unwrap();
        assert!(t.c0().abs() <= 1e-15);
        // re_h = (Re b, −Im b, 0)
        assert!(t.c_tilde().dot(Vec3R::new(b.re, -b.im, 0.0)).abs() <= 1e-12);
        assert!(symmetry_residual(h, &t) <= 1e-12);
    }

    #[test]
    fn find_symmetry_scalar_default() {
        let h = LinOp2::identity();
        let t = find_symmetry(h).unwrap();
        assert!(t.c_tilde().dist_max(Vec3R::new(0.0, 0.0, 1.0)) <= 1e-15);
        assert!(symmetry_residual(h, &t) <= 1e-15);
    }

    #[test]
    fn find_symmetry_rejects_asymmetric_input() {
        let scalar_i = LinOp2::identity().scale(cx(0.0, 1.0));
        assert!(matches!(
            find_symmetry(scalar_i),
            Err(HamiltonianError::ConditionsViolated { .. })
        ));
    }

    #[test]
    fn family_reproduces_defective_example() {
        // T = τ₃ (c̃ = (0,0,1), c₀ = 0), params (1,1,0,0) → σ₁ + iσ₃.
        let t = TimeReversal::from_anti_op(tau(3)).unwrap();
        let h = family_from_symmetry(&t, [1.0, 1.0, 0.0, 0.0]);
        assert!(h.matrix().approx_eq(defective_example(), 1e-15));
    }

    #[test]
    fn family_zero_params_gives_zero_matrix() {
        let t = TimeReversal::from_anti_op(tau(3)).unwrap();
        let h = family_from_symmetry(&t, [0.0, 0.0, 0.0, 0.0]);
        assert_eq!(h.matrix(), LinOp2::zero());
    }

    #[test]
    fn family_commutes_for_random_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..60 {
            let c0: f64 = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(-2.0..2.0) };
            let dir = Vec3R::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .normalized(1e-3);
            let Some(dir) = dir else { continue };
            let square: f64 = if c0.abs() > 1.0 && rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            let norm_sq = square + c0 * c0;
            if norm_sq <= 0.0 {
                continue;
            }
            let t = TimeReversal::from_c(
                cx(1.0, 0.0),
                [
                    c0,
                    dir.x * norm_sq.sqrt(),
                    dir.y * norm_sq.sqrt(),
                    dir.z * norm_sq.sqrt(),
                ],
            )
            .unwrap();
            let params = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let h = family_from_symmetry(&t, params);
            assert!(pt_conditions_check(h.matrix()));
            assert!(symmetry_residual(h.matrix(), &t) <= 1e-10);
        }
    }

    #[test]
    fn family_is_injective_in_parameters() {
        // distinct parameters give distinct matrices, with the distance
        // bounded below; the map params → coefficients is linear with
        // orthonormal-ish columns in both branches
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for trial in 0..200 {
            let c0: f64 = if trial % 2 == 0 { 0.0 } else { rng.gen_range(0.3..2.0) };
            let dir = Vec3R::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .normalized(0.1);
            let Some(dir) = dir else { continue };
            let n = (1.0 + c0 * c0).sqrt();
            let t = TimeReversal::from_c(cx(1.0, 0.0), [c0, dir.x * n, dir.y * n, dir.z * n])
                .unwrap();
            let a: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
            let mut b = a;
            // perturb one coordinate by at least 1e-6
            let idx = rng.gen_range(0..4);
            b[idx] += rng.gen_range(1e-6..1e-2);
            let ha = family_from_symmetry(&t, a).matrix();
            let hb = family_from_symmetry(&t, b).matrix();
            assert!(ha.dist_max(hb) >= 1e-9, "trial {trial}: {:e}", ha.dist_max(hb));
        }
    }

    #[test]
    fn discriminant_examples() {
        // 4(s² − r²sin²θ) at r=1, θ=π/6, s=1 is 3
        let h = bender_hamiltonian(1.0, std::f64::consts::FRAC_PI_6, 1.0);
        assert!((discriminant(h.matrix()).unwrap() - 3.0).abs() <= 1e-12);
        assert!(discriminant(defective_example()).unwrap().abs() <= 1e-15);
        assert!(discriminant(LinOp2::identity()).unwrap().abs() <= 1e-15);
    }

    #[test]
    fn classify_examples() {
        let unbroken = classify(bender_hamiltonian(1.0, std::f64::consts::FRAC_PI_6, 1.0).matrix())
            .unwrap();
        assert_eq!(unbroken.tag, SpectralTag::UnbrokenDiagonalizable);
        assert!((unbroken.lambda1.re - 3.0f64.sqrt()).abs() <= 1e-12);
        assert!(unbroken.lambda2.norm() <= 1e-12);

        let defective = classify(defective_example()).unwrap();
        assert_eq!(defective.tag, SpectralTag::UnbrokenDefective);
        assert!(defective.lambda1.norm() <= 1e-15);

        let broken = classify(bender_hamiltonian(1.0, std::f64::consts::FRAC_PI_2, 0.4).matrix())
            .unwrap();
        assert_eq!(broken.tag, SpectralTag::Broken);
        assert!((broken.discriminant - 4.0 * (0.16 - 1.0)).abs() <= 1e-12);
        assert!((broken.lambda1.im + broken.lambda2.im).abs() <= 1e-15);

        // scalar matrices sit in the zero band but stay diagonalizable
        let scalar = classify(LinOp2::identity().scale(cx(2.0, 0.0))).unwrap();
        assert_eq!(scalar.tag, SpectralTag::UnbrokenDiagonalizable);
    }

    #[test]
    fn classification_is_scale_stable() {
        let h = defective_example().scale(cx(1e6, 0.0));
        assert_eq!(classify(h).unwrap().tag, SpectralTag::UnbrokenDefective);
    }

    #[test]
    fn eigen_sigma3() {
        let es = eigen(pauli(3));
        assert!((es.values.0 - cx(1.0, 0.0)).norm() <= 1e-15);
        assert!((es.values.1 - cx(-1.0, 0.0)).norm() <= 1e-15);
        assert!(es.vectors.0.dist_max(Vec2C::new(cx(1.0, 0.0), cx(0.0, 0.0))) <= 1e-15);
        assert!(es.vectors.1.dist_max(Vec2C::new(cx(0.0, 0.0), cx(1.0, 0.0))) <= 1e-15);
        assert!(!es.defective);
    }

    #[test]
    fn eigen_bender_values() {
        let h = bender_hamiltonian(1.0, std::f64::consts::FRAC_PI_6, 1.0).matrix();
        let es = eigen(h);
        assert!((es.values.0 - cx(3.0f64.sqrt(), 0.0)).norm() <= 1e-12);
        assert!(es.values.1.norm() <= 1e-12);
        for (v, l) in [(es.vectors.0, es.values.0), (es.vectors.1, es.values.1)] {
            let hv = h.apply(v);
            assert!(hv.dist_max(v.scale(l)) <= 1e-12);
        }
    }

    #[test]
    fn eigen_defective_certificate() {
        let h = defective_example();
        let es = eigen(h);
        assert!(es.defective);
        let lambda0 = es.values.0;
        assert!(lambda0.norm() <= 1e-15);
        let (psi1, psi2) = es.vectors;
        // ψ₁ is a genuine eigenvector, proportional to (1, −i)
        assert!(h.apply(psi1).norm() <= 1e-12);
        let det = psi1.x1 * cx(0.0, -1.0) - psi1.x2 * cx(1.0, 0.0);
        assert!(det.norm() <= 1e-12);
        // (H − λ₀)ψ₂ = ψ₁ and (H − λ₀)²ψ₂ = 0
        assert!(h.apply(psi2).dist_max(psi1) <= 1e-12);
        assert!(h.compose(h).apply(psi2).norm() <= 1e-12);
    }

    #[test]
    fn invariant_eigenvectors_sigma1_conjugation() {
        let t = TimeReversal::from_anti_op(AntiOp2::conjugation()).unwrap();
        let (p1, p2) = pt_invariant_eigenvectors(pauli(1), &t).unwrap();
        for v in [p1, p2] {
            assert!(t.anti_op().apply(v).dist_max(v) <= 1e-12);
        }
        let det = p1.x1 * p2.x2 - p1.x2 * p2.x1;
        assert!(det.norm() > 1e-8);
    }

    #[test]
    fn invariant_eigenvectors_bender_natural_symmetry() {
        // PT for the σ₁/conjugation pair is the anti-op with matrix σ₁.
        let pt = TimeReversal::from_anti_op(AntiOp2::new(pauli(1))).unwrap();
        let h = bender_hamiltonian(1.0, std::f64::consts::FRAC_PI_6, 1.0).matrix();
        assert!(symmetry_residual(h, &pt) <= 1e-12);
        let (p1, p2) = pt_invariant_eigenvectors(h, &pt).unwrap();
        for (v, l) in [(p1, cx(3.0f64.sqrt(), 0.0)), (p2, cx(0.0, 0.0))] {
            assert!(pt.anti_op().apply(v).dist_max(v) <= 1e-10);
            assert!(h.apply(v).dist_max(v.scale(l)) <= 1e-10);
        }
    }

    #[test]
    fn invariant_eigenvectors_error_paths() {
        let pt = TimeReversal::from_anti_op(AntiOp2::new(pauli(1))).unwrap();
        let broken = bender_hamiltonian(1.0, std::f64::consts::FRAC_PI_2, 0.4).matrix();
        assert!(matches!(
            pt_invariant_eigenvectors(broken, &pt),
            Err(HamiltonianError::BrokenSymmetry)
        ));
        assert!(matches!(
            pt_invariant_eigenvectors(defective_example(), &pt),
            Err(HamiltonianError::DefectiveCase)
        ));
        let t0 = TimeReversal::from_anti_op(tau(0)).unwrap();
        assert!(matches!(
            pt_invariant_eigenvectors(pauli(1), &t0),
            Err(HamiltonianError::NegativeSquare)
        ));
        // σ₃ does not commute with conjugation∘σ₁
        assert!(matches!(
            pt_invariant_eigenvectors(pauli(3), &pt),
            Err(HamiltonianError::NotCommuting { .. })
        ));
    }

    #[test]
    fn invariant_eigenvectors_scalar_case_spans() {
        // scalar H: every vector is an eigenvector; the fallback keeps
        // the two outputs independent.
        let pt = TimeReversal::from_anti_op(AntiOp2::new(pauli(1))).unwrap();
        let h = LinOp2::identity().scale(cx(2.0, 0.0));
        let (p1, p2) = pt_invariant_eigenvectors(h, &pt).unwrap();
        let det = p1.x1 * p2.x2 - p1.x2 * p2.x1;
        assert!(det.norm() > 1e-8);
        for v in [p1, p2] {
            assert!(pt.anti_op().apply(v).dist_max(v) <= 1e-12);
        }
    }

    #[test]
    fn bender_hermitian_at_zero_angle() {
        let h = bender_hamiltonian(1.3, 0.0, 0.7);
        let class = classify(h.matrix()).unwrap();
        assert_eq!(class.tag, SpectralTag::UnbrokenDiagonalizable);
        assert!(h.matrix().dist_max(h.matrix().adjoint()) <= 1e-15);
    }

    #[test]
    fn hermitian_is_unbroken_examples() {
        // [[2, 1+i], [1−i, 2]]: discriminant 4|b|² = 8
        let h = LinOp2::new(cx(2.0, 0.0), cx(1.0, 1.0), cx(1.0, -1.0), cx(2.0, 0.0));
        let (t, class) = hermitian_is_unbroken(h).unwrap();
        assert!((class.discriminant - 8.0).abs() <= 1e-12);
        assert_eq!(class.tag, SpectralTag::UnbrokenDiagonalizable);
        assert!(symmetry_residual(h, &t) <= 1e-12);

        let (_, class) = hermitian_is_unbroken(pauli(3)).unwrap();
        assert!((class.discriminant - 4.0).abs() <= 1e-15);
        assert!((class.lambda1 - cx(1.0, 0.0)).norm() <= 1e-15);
        assert!((class.lambda2 - cx(-1.0, 0.0)).norm() <= 1e-15);

        assert!(matches!(
            hermitian_is_unbroken(defective_example()),
            Err(HamiltonianError::NotHermitian { .. })
        ));
    }

    #[test]
    fn random_hermitian_never_broken() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for _ in 0..100 {
            let coeffs = PauliCoeffs::new(
                cx(rng.gen_range(-2.0..2.0), 0.0),
                cx(rng.gen_range(-2.0..2.0), 0.0),
                cx(rng.gen_range(-2.0..2.0), 0.0),
                cx(rng.gen_range(-2.0..2.0), 0.0),
            );
            let (_, class) = hermitian_is_unbroken(coeffs.compose()).unwrap();
            assert_ne!(class.tag, SpectralTag::Broken);
        }
    }
}
