//! Linear and anti-linear operator arithmetic on ℂ².
//!
//! A linear operator is a plain 2×2 complex matrix. An anti-linear operator
//! `S` is stored as the matrix `M` of its "matrix times conjugation" form
//! `S(v) = M·conj(v)`, which makes anti-linearity a data-level fact and
//! turns every composition rule into ordinary matrix algebra:
//!
//! ```text
//! (linear L ∘ anti S)(v)  = (L·M_S) conj(v)          — anti-linear
//! (anti S ∘ linear L)(v)  = (M_S·conj(L)) conj(v)    — anti-linear
//! (anti S ∘ anti R)(v)    = (M_S·conj(M_R)) v        — linear
//! ```
//!
//! Composition is in action order throughout: `(A∘B)(v) = A(B(v))`.
//!
//! The Pauli operators `{σ₀, σ₁, σ₂, σ₃}` form a basis of the linear
//! operators and the anti-linear `{τ₀, τ₁, τ₂, τ₃}` with `τᵢ = τ₀∘σᵢ` a
//! basis of the anti-linear ones; [`pauli_decompose`] and
//! [`tau_decompose`] recover coefficients in either basis.

use num_complex::Complex64;
use thiserror::Error;

use crate::tol;

/// Complex scalar used everywhere in this crate.
pub type C64 = Complex64;

/// Shorthand complex constructor.
#[inline]
pub const fn cx(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

const ZERO: C64 = cx(0.0, 0.0);
const ONE: C64 = cx(1.0, 0.0);
const I: C64 = cx(0.0, 1.0);

/// Errors from basis decomposition and boundary validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    /// A NaN or infinite component reached an API boundary.
    #[error("non-finite component in input")]
    NonFinite,
    /// The zero operator has no τ-coefficient factorization.
    #[error("cannot decompose the zero operator")]
    ZeroOperator,
    /// The τ-basis coefficients do not share a common phase, so no
    /// `ε·(real vector)` factorization exists.
    #[error("tau coefficients are not phase times a real vector (residual {residual:e})")]
    NotPhaseReal { residual: f64 },
    /// A phase factor that must be unimodular was not.
    #[error("phase factor is not unimodular (|eps| deviates by {residual:e})")]
    NotUnimodular { residual: f64 },
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// A vector in ℂ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2C {
    pub x1: C64,
    pub x2: C64,
}

impl Vec2C {
    pub const fn new(x1: C64, x2: C64) -> Self {
        Vec2C { x1, x2 }
    }

    pub fn conj(self) -> Self {
        Vec2C::new(self.x1.conj(), self.x2.conj())
    }

    pub fn scale(self, s: C64) -> Self {
        Vec2C::new(s * self.x1, s * self.x2)
    }

    pub fn norm(self) -> f64 {
        (self.x1.norm_sqr() + self.x2.norm_sqr()).sqrt()
    }

    /// Max-norm distance to another vector.
    pub fn dist_max(self, other: Self) -> f64 {
        (self.x1 - other.x1).norm().max((self.x2 - other.x2).norm())
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }
}

impl std::ops::Add for Vec2C {
    type Output = Vec2C;
    fn add(self, rhs: Vec2C) -> Vec2C {
        Vec2C::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl std::ops::Sub for Vec2C {
    type Output = Vec2C;
    fn sub(self, rhs: Vec2C) -> Vec2C {
        Vec2C::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

/// A real 3-vector; houses the coefficient vectors `f̃`, `b̃`, `c̃`, `m̃`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3R {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3R {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3R { x, y, z }
    }

    pub const fn zero() -> Self {
        Vec3R::new(0.0, 0.0, 0.0)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Vec3R::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Vec3R::new(s * self.x, s * self.y, s * self.z)
    }

    /// Unit vector in the same direction, or `None` below `min_norm`.
    pub fn normalized(self, min_norm: f64) -> Option<Self> {
        let n = self.norm();
        if n > min_norm {
            Some(self.scale(1.0 / n))
        } else {
            None
        }
    }

    pub fn dist_max(self, other: Self) -> f64 {
        let d = self - other;
        d.x.abs().max(d.y.abs()).max(d.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3R::new(a[0], a[1], a[2])
    }
}

impl std::ops::Add for Vec3R {
    type Output = Vec3R;
    fn add(self, rhs: Vec3R) -> Vec3R {
        Vec3R::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for Vec3R {
    type Output = Vec3R;
    fn sub(self, rhs: Vec3R) -> Vec3R {
        Vec3R::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Neg for Vec3R {
    type Output = Vec3R;
    fn neg(self) -> Vec3R {
        self.scale(-1.0)
    }
}

/// A complex 3-vector; houses `ã`, `h̃` and the vectors of the product
/// identity `(σ·A)(σ·B) = (A·B)I + iσ·(A×B)`.
///
/// `dot` and `cross` are bilinear (no conjugation), matching that identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3C {
    pub x: C64,
    pub y: C64,
    pub z: C64,
}

impl Vec3C {
    pub const fn new(x: C64, y: C64, z: C64) -> Self {
        Vec3C { x, y, z }
    }

    pub fn from_re_im(re: Vec3R, im: Vec3R) -> Self {
        Vec3C::new(cx(re.x, im.x), cx(re.y, im.y), cx(re.z, im.z))
    }

    pub fn re(self) -> Vec3R {
        Vec3R::new(self.x.re, self.y.re, self.z.re)
    }

    pub fn im(self) -> Vec3R {
        Vec3R::new(self.x.im, self.y.im, self.z.im)
    }

    /// Bilinear dot product `Σ aᵢbᵢ` (no conjugation).
    pub fn dot(self, other: Self) -> C64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Vec3C::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

// ---------------------------------------------------------------------------
// Linear operators
// ---------------------------------------------------------------------------

/// A linear operator on ℂ², stored as its 2×2 matrix (row-major).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinOp2 {
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
}

impl LinOp2 {
    pub const fn new(m11: C64, m12: C64, m21: C64, m22: C64) -> Self {
        LinOp2 { m11, m12, m21, m22 }
    }

    pub const fn zero() -> Self {
        LinOp2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        LinOp2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        LinOp2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn rows(self) -> [[C64; 2]; 2] {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    pub fn is_finite(self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    /// Boundary validation: rejects NaN/Inf entries.
    pub fn validated(self) -> Result<Self, AlgebraError> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(AlgebraError::NonFinite)
        }
    }

    /// Ordinary matrix product; as operators, `self ∘ rhs`.
    pub fn compose(self, rhs: LinOp2) -> LinOp2 {
        LinOp2::new(
            self.m11 * rhs.m11 + self.m12 * rhs.m21,
            self.m11 * rhs.m12 + self.m12 * rhs.m22,
            self.m21 * rhs.m11 + self.m22 * rhs.m21,
            self.m21 * rhs.m12 + self.m22 * rhs.m22,
        )
    }

    /// `self ∘ rhs` with an anti-linear right factor; anti-linear.
    pub fn compose_la(self, rhs: AntiOp2) -> AntiOp2 {
        AntiOp2::new(self.compose(rhs.mat))
    }

    pub fn apply(self, v: Vec2C) -> Vec2C {
        Vec2C::new(
            self.m11 * v.x1 + self.m12 * v.x2,
            self.m21 * v.x1 + self.m22 * v.x2,
        )
    }

    pub fn scale(self, s: C64) -> LinOp2 {
        LinOp2::new(s * self.m11, s * self.m12, s * self.m21, s * self.m22)
    }

    /// Entrywise conjugate (no transpose).
    pub fn conj(self) -> LinOp2 {
        LinOp2::new(self.m11.conj(), self.m12.conj(), self.m21.conj(), self.m22.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(self) -> LinOp2 {
        LinOp2::new(self.m11.conj(), self.m21.conj(), self.m12.conj(), self.m22.conj())
    }

    pub fn trace(self) -> C64 {
        self.m11 + self.m22
    }

    pub fn det(self) -> C64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Largest entry magnitude.
    pub fn max_norm(self) -> f64 {
        self.m11
            .norm()
            .max(self.m12.norm())
            .max(self.m21.norm())
            .max(self.m22.norm())
    }

    pub fn dist_max(self, other: LinOp2) -> f64 {
        (self - other).max_norm()
    }

    pub fn approx_eq(self, other: LinOp2, tol: f64) -> bool {
        self.dist_max(other) <= tol
    }

    /// `σ·v = v.x σ₁ + v.y σ₂ + v.z σ₃` for a complex coefficient vector.
    pub fn from_pauli_vector(v: Vec3C) -> LinOp2 {
        LinOp2::new(v.z, v.x - I * v.y, v.x + I * v.y, -v.z)
    }

    /// The eight real coordinates `(Re m11, Im m11, Re m12, …)`, the
    /// representation in which commutation with an anti-linear operator is
    /// a real-linear constraint.
    pub fn to_real_vec8(self) -> [f64; 8] {
        [
            self.m11.re, self.m11.im, self.m12.re, self.m12.im,
            self.m21.re, self.m21.im, self.m22.re, self.m22.im,
        ]
    }

    pub fn from_real_vec8(v: [f64; 8]) -> Self {
        LinOp2::new(cx(v[0], v[1]), cx(v[2], v[3]), cx(v[4], v[5]), cx(v[6], v[7]))
    }
}

impl std::ops::Mul for LinOp2 {
    type Output = LinOp2;
    fn mul(self, rhs: LinOp2) -> LinOp2 {
        self.compose(rhs)
    }
}

impl std::ops::Add for LinOp2 {
    type Output = LinOp2;
    fn add(self, rhs: LinOp2) -> LinOp2 {
        LinOp2::new(
            self.m11 + rhs.m11,
            self.m12 + rhs.m12,
            self.m21 + rhs.m21,
            self.m22 + rhs.m22,
        )
    }
}

impl std::ops::Sub for LinOp2 {
    type Output = LinOp2;
    fn sub(self, rhs: LinOp2) -> LinOp2 {
        self + rhs.scale(cx(-1.0, 0.0))
    }
}

impl std::ops::Neg for LinOp2 {
    type Output = LinOp2;
    fn neg(self) -> LinOp2 {
        self.scale(cx(-1.0, 0.0))
    }
}

// ---------------------------------------------------------------------------
// Anti-linear operators
// ---------------------------------------------------------------------------

/// An anti-linear operator on ℂ², acting as `v ↦ mat·conj(v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntiOp2 {
    pub mat: LinOp2,
}

impl AntiOp2 {
    pub const fn new(mat: LinOp2) -> Self {
        AntiOp2 { mat }
    }

    /// The componentwise conjugation operator `K` (`mat = I`).
    pub const fn conjugation() -> Self {
        AntiOp2::new(LinOp2::identity())
    }

    pub fn apply(self, v: Vec2C) -> Vec2C {
        self.mat.apply(v.conj())
    }

    /// `self ∘ rhs`, the composition of two anti-linear operators; linear.
    pub fn compose_aa(self, rhs: AntiOp2) -> LinOp2 {
        self.mat.compose(rhs.mat.conj())
    }

    /// `self ∘ rhs` with a linear right factor; anti-linear.
    pub fn compose_al(self, rhs: LinOp2) -> AntiOp2 {
        AntiOp2::new(self.mat.compose(rhs.conj()))
    }

    /// `self ∘ self`; equals `±I` exactly when `self` is a time reversal.
    pub fn square(self) -> LinOp2 {
        self.compose_aa(self)
    }

    pub fn scale(self, s: C64) -> AntiOp2 {
        AntiOp2::new(self.mat.scale(s))
    }

    pub fn max_norm(self) -> f64 {
        self.mat.max_norm()
    }

    pub fn dist_max(self, other: AntiOp2) -> f64 {
        self.mat.dist_max(other.mat)
    }

    pub fn approx_eq(self, other: AntiOp2, tol: f64) -> bool {
        self.mat.approx_eq(other.mat, tol)
    }

    pub fn is_finite(self) -> bool {
        self.mat.is_finite()
    }

    pub fn validated(self) -> Result<Self, AlgebraError> {
        Ok(AntiOp2::new(self.mat.validated()?))
    }
}

impl std::ops::Add for AntiOp2 {
    type Output = AntiOp2;
    fn add(self, rhs: AntiOp2) -> AntiOp2 {
        AntiOp2::new(self.mat + rhs.mat)
    }
}

impl std::ops::Neg for AntiOp2 {
    type Output = AntiOp2;
    fn neg(self) -> AntiOp2 {
        self.scale(cx(-1.0, 0.0))
    }
}

// ---------------------------------------------------------------------------
// Pauli and tau bases
// ---------------------------------------------------------------------------

/// The Pauli operator `σᵢ`, `i ∈ 0..=3` (`σ₀ = I`).
///
/// Panics on an out-of-range index.
pub fn pauli(i: usize) -> LinOp2 {
    match i {
        0 => LinOp2::identity(),
        1 => LinOp2::new(ZERO, ONE, ONE, ZERO),
        2 => LinOp2::new(ZERO, -I, I, ZERO),
        3 => LinOp2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {i} out of range 0..=3"),
    }
}

/// The anti-linear basis operator `τᵢ`, `i ∈ 0..=3`.
///
/// `τ₀(x₁e₁ + x₂e₂) = −x̄₂e₁ + x̄₁e₂` and `τᵢ = τ₀∘σᵢ`, so
/// `τᵢ.mat = τ₀.mat·conj(σᵢ)`. Panics on an out-of-range index.
pub fn tau(i: usize) -> AntiOp2 {
    let tau0 = LinOp2::new(ZERO, -ONE, ONE, ZERO);
    match i {
        0 => AntiOp2::new(tau0),
        1..=3 => AntiOp2::new(tau0.compose(pauli(i).conj())),
        _ => panic!("tau index {i} out of range 0..=3"),
    }
}

/// Levi-Civita symbol on indices `1..=3`; zero on repeated indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (1, 3, 2) | (2, 1, 3) | (3, 2, 1) => -1,
        _ => 0,
    }
}

/// Coefficients of a linear operator over the Pauli basis:
/// `L = h₀σ₀ + h₁σ₁ + h₂σ₂ + h₃σ₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoeffs {
    pub h0: C64,
    pub h1: C64,
    pub h2: C64,
    pub h3: C64,
}

impl PauliCoeffs {
    pub const fn new(h0: C64, h1: C64, h2: C64, h3: C64) -> Self {
        PauliCoeffs { h0, h1, h2, h3 }
    }

    /// Rebuild the operator `Σ hᵢσᵢ`.
    pub fn compose(self) -> LinOp2 {
        LinOp2::new(
            self.h0 + self.h3,
            self.h1 - I * self.h2,
            self.h1 + I * self.h2,
            self.h0 - self.h3,
        )
    }

    /// The traceless part `(h₁, h₂, h₃)`.
    pub fn vector(self) -> Vec3C {
        Vec3C::new(self.h1, self.h2, self.h3)
    }

    pub fn re_vector(self) -> Vec3R {
        self.vector().re()
    }

    pub fn im_vector(self) -> Vec3R {
        self.vector().im()
    }

    pub fn as_array(self) -> [C64; 4] {
        [self.h0, self.h1, self.h2, self.h3]
    }
}

/// Pauli-basis coefficients `hᵢ = trace(σᵢ·L)/2`.
pub fn pauli_decompose(op: LinOp2) -> PauliCoeffs {
    let half = cx(0.5, 0.0);
    PauliCoeffs::new(
        half * (op.m11 + op.m22),
        half * (op.m12 + op.m21),
        half * I * (op.m12 - op.m21),
        half * (op.m11 - op.m22),
    )
}

/// Coefficients of an anti-linear operator over the τ basis:
/// `S = ε (c₀τ₀ + c₁τ₁ + c₂τ₂ + c₃τ₃)` with `cᵢ` real and `|ε| = 1`.
///
/// The factorization is made unique by requiring the first nonzero `cᵢ`
/// (index order 0,1,2,3) to be strictly positive; ε absorbs the phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauCoeffs {
    eps: C64,
    c: [f64; 4],
}

impl TauCoeffs {
    /// Builds coefficients, validating `|eps| = 1` to `tol` and applying
    /// the sign normalization. `eps` is rescaled to exact unit modulus.
    pub fn new(eps: C64, c: [f64; 4]) -> Result<Self, AlgebraError> {
        Self::with_tol(eps, c, tol::CONSTRAINT)
    }

    pub fn with_tol(eps: C64, c: [f64; 4], tolerance: f64) -> Result<Self, AlgebraError> {
        if !eps.is_finite() || !c.iter().all(|x| x.is_finite()) {
            return Err(AlgebraError::NonFinite);
        }
        let dev = (eps.norm() - 1.0).abs();
        if dev > tolerance {
            return Err(AlgebraError::NotUnimodular { residual: dev });
        }
        let mut eps = eps / eps.norm();
        let mut c = c;
        let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let zero_cut = 1e-12 * scale.max(1.0);
        if let Some(first) = c.iter().find(|x| x.abs() > zero_cut) {
            if *first < 0.0 {
                for x in &mut c {
                    *x = -*x;
                }
                eps = -eps;
            }
        }
        Ok(TauCoeffs { eps, c })
    }

    pub fn eps(&self) -> C64 {
        self.eps
    }

    pub fn c(&self) -> [f64; 4] {
        self.c
    }

    pub fn c0(&self) -> f64 {
        self.c[0]
    }

    /// `c̃ = (c₁, c₂, c₃)`.
    pub fn c_tilde(&self) -> Vec3R {
        Vec3R::new(self.c[1], self.c[2], self.c[3])
    }

    /// `c₁² + c₂² + c₃² − c₀²`; equals `±1` for a time reversal.
    pub fn quadratic_form(&self) -> f64 {
        self.c_tilde().norm_sq() - self.c0() * self.c0()
    }

    pub fn eps_is_real(&self, tolerance: f64) -> bool {
        self.eps.im.abs() <= tolerance
    }

    /// Rebuild the operator `ε Σ cᵢτᵢ`.
    pub fn compose(&self) -> AntiOp2 {
        let mut m = LinOp2::zero();
        for (i, ci) in self.c.iter().enumerate() {
            m = m + tau(i).mat.scale(cx(*ci, 0.0));
        }
        AntiOp2::new(m.scale(self.eps))
    }
}

/// τ-basis coefficients of a nonzero anti-linear operator.
///
/// Solves the four complex coefficients `dᵢ` with `S.mat = Σ dᵢτᵢ.mat`,
/// then factors `dᵢ = ε·cᵢ`. Every nonzero operator decomposes; the
/// factorization fails with [`AlgebraError::NotPhaseReal`] only if the
/// `dᵢ` do not share a common phase, which cannot happen for operators
/// built from a `TauCoeffs`.
pub fn tau_decompose(op: AntiOp2) -> Result<TauCoeffs, AlgebraError> {
    tau_decompose_with_tol(op, tol::CONSTRAINT)
}

pub fn tau_decompose_with_tol(op: AntiOp2, tolerance: f64) -> Result<TauCoeffs, AlgebraError> {
    let m = op.mat.validated()?;
    let half = cx(0.5, 0.0);
    // Inverting m = [[-d1 + i d2, -d0 + d3], [d0 + d3, d1 + i d2]].
    let d = [
        half * (m.m21 - m.m12),
        half * (m.m22 - m.m11),
        -half * I * (m.m11 + m.m22),
        half * (m.m12 + m.m21),
    ];
    let (k, dk_norm) = d
        .iter()
        .map(|z| z.norm())
        .enumerate()
        .fold((0, 0.0), |(bi, bv), (i, v)| if v > bv { (i, v) } else { (bi, bv) });
    if dk_norm == 0.0 {
        return Err(AlgebraError::ZeroOperator);
    }
    let eps = d[k] / dk_norm;
    let mut c = [0.0; 4];
    let mut im_residual = 0.0f64;
    for (i, di) in d.iter().enumerate() {
        let r = di / eps;
        c[i] = r.re;
        im_residual = im_residual.max(r.im.abs());
    }
    if im_residual > tolerance * dk_norm.max(1.0) {
        return Err(AlgebraError::NotPhaseReal { residual: im_residual });
    }
    TauCoeffs::with_tol(eps, c, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn approx(a: LinOp2, b: LinOp2) -> bool {
        a.approx_eq(b, tol::ALGEBRA)
    }

    #[test]
    fn pauli_matrices_match_the_standard_forms() {
        assert_eq!(pauli(0), LinOp2::identity());
        assert_eq!(pauli(1), LinOp2::new(ZERO, ONE, ONE, ZERO));
        assert_eq!(pauli(2), LinOp2::new(ZERO, cx(0.0, -1.0), I, ZERO));
        assert_eq!(pauli(3), LinOp2::new(ONE, ZERO, ZERO, cx(-1.0, 0.0)));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn pauli_index_out_of_range_panics() {
        let _ = pauli(4);
    }

    #[test]
    fn pauli_products() {
        // σ₂σ₃ = iσ₁, σ₁σ₂ = iσ₃, σ₁σ₁ = I
        assert!(approx(pauli(2) * pauli(3), pauli(1).scale(I)));
        assert!(approx(pauli(1) * pauli(2), pauli(3).scale(I)));
        assert!(approx(pauli(1) * pauli(1), LinOp2::identity()));
        assert!(approx(LinOp2::identity() * pauli(2), pauli(2)));
    }

    #[test]
    fn tau_matrices_match_the_derived_forms() {
        assert_eq!(tau(0).mat, LinOp2::new(ZERO, -ONE, ONE, ZERO));
        assert_eq!(tau(1).mat, LinOp2::new(-ONE, ZERO, ZERO, ONE));
        assert_eq!(tau(2).mat, LinOp2::new(I, ZERO, ZERO, I));
        assert_eq!(tau(3).mat, LinOp2::new(ZERO, ONE, ONE, ZERO));
    }

    #[test]
    fn tau2_action_conjugates_and_multiplies_by_i() {
        let v = Vec2C::new(cx(0.3, -0.7), cx(1.5, 0.2));
        let got = tau(2).apply(v);
        assert!((got.x1 - I * v.x1.conj()).norm() <= tol::ALGEBRA);
        assert!((got.x2 - I * v.x2.conj()).norm() <= tol::ALGEBRA);
    }

    #[test]
    fn tau0_squares_to_minus_identity() {
        assert!(approx(tau(0).square(), -LinOp2::identity()));
    }

    #[test]
    fn sigma2_after_tau0_is_minus_tau2() {
        assert!(pauli(2).compose_la(tau(0)).approx_eq(-tau(2), tol::ALGEBRA));
    }

    #[test]
    fn tau0_after_sigma2_is_tau2() {
        assert!(tau(0).compose_al(pauli(2)).approx_eq(tau(2), tol::ALGEBRA));
    }

    #[test]
    fn sigma3_after_tau3_is_minus_tau0() {
        assert!(pauli(3).compose_la(tau(3)).approx_eq(-tau(0), tol::ALGEBRA));
    }

    // τᵢτ₀ = σᵢ while τ₀τᵢ = −σᵢ in action order; the sign follows from
    // direct action, e.g. τ₀(τ₁(x)) = τ₀(−x̄₁, x̄₂) = (−x₂, −x₁) = −σ₁x.
    #[test]
    fn tau_tau0_composition_signs() {
        for i in 1..=3 {
            assert!(approx(tau(i).compose_aa(tau(0)), pauli(i)));
            assert!(approx(tau(0).compose_aa(tau(i)), -pauli(i)));
        }
    }

    #[test]
    fn tau1_tau2_is_i_sigma3() {
        assert!(approx(tau(1).compose_aa(tau(2)), pauli(3).scale(I)));
    }

    #[test]
    fn conjugation_squares_to_identity() {
        assert!(approx(AntiOp2::conjugation().square(), LinOp2::identity()));
    }

    #[test]
    fn identity_leaves_anti_ops_alone() {
        let s = tau(2);
        assert!(LinOp2::identity().compose_la(s).approx_eq(s, 0.0));
    }

    #[test]
    fn apply_examples() {
        let e1 = Vec2C::new(ONE, ZERO);
        let got = tau(0).apply(e1);
        assert!(got.dist_max(Vec2C::new(ZERO, ONE)) <= tol::ALGEBRA);

        let v = Vec2C::new(cx(0.0, 1.0), cx(2.0, 1.0));
        let k = AntiOp2::conjugation();
        assert!(k.apply(v).dist_max(Vec2C::new(cx(0.0, -1.0), cx(2.0, -1.0))) <= tol::ALGEBRA);

        assert!(LinOp2::identity().apply(v).dist_max(v) == 0.0);
    }

    #[test]
    fn pauli_decompose_sigma3() {
        let h = pauli_decompose(pauli(3));
        assert!((h.h0.norm() + h.h1.norm() + h.h2.norm()) <= tol::ALGEBRA);
        assert!((h.h3 - ONE).norm() <= tol::ALGEBRA);
    }

    #[test]
    fn pauli_decompose_matches_expansion() {
        // [[√2, i], [i, −√2]] = iσ₁ + √2σ₃, checked by rebuilding the sum.
        let r2 = 2.0f64.sqrt();
        let m = LinOp2::new(cx(r2, 0.0), I, I, cx(-r2, 0.0));
        let expected = pauli(1).scale(I) + pauli(3).scale(cx(r2, 0.0));
        assert!(approx(m, expected));
        let h = pauli_decompose(m);
        assert!((h.h0).norm() <= tol::ALGEBRA);
        assert!((h.h1 - I).norm() <= tol::ALGEBRA);
        assert!((h.h2).norm() <= tol::ALGEBRA);
        assert!((h.h3 - cx(r2, 0.0)).norm() <= tol::ALGEBRA);
    }

    #[test]
    fn tau_decompose_conjugation() {
        // I = −i·(i·I) = −i·τ₂.mat, so K = −i·τ₂ with c = (0,0,1,0).
        let tc = tau_decompose(AntiOp2::conjugation()).unwrap();
        assert!((tc.eps() - cx(0.0, -1.0)).norm() <= tol::ALGEBRA);
        assert_eq!(tc.c(), [0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn tau_decompose_basis_elements() {
        let tc = tau_decompose(tau(0)).unwrap();
        assert!((tc.eps() - ONE).norm() <= tol::ALGEBRA);
        assert_eq!(tc.c(), [1.0, 0.0, 0.0, 0.0]);

        let tc = tau_decompose(AntiOp2::new(LinOp2::new(ZERO, ONE, ONE, ZERO))).unwrap();
        assert!((tc.eps() - ONE).norm() <= tol::ALGEBRA);
        assert_eq!(tc.c(), [0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn tau_decompose_zero_operator_fails() {
        assert_eq!(
            tau_decompose(AntiOp2::new(LinOp2::zero())),
            Err(AlgebraError::ZeroOperator)
        );
    }

    #[test]
    fn tau_decompose_mixed_phase_fails() {
        // d = (1, i, 0, 0): coefficients with incompatible phases.
        let m = tau(0).mat + tau(1).mat.scale(I);
        match tau_decompose(AntiOp2::new(m)) {
            Err(AlgebraError::NotPhaseReal { .. }) => {}
            other => panic!("expected NotPhaseReal, got {other:?}"),
        }
    }

    #[test]
    fn tau_coeffs_sign_normalization() {
        let tc = TauCoeffs::new(ONE, [-1.0, 0.0, 2.0f64.sqrt(), 0.0]).unwrap();
        assert_eq!(tc.c(), [1.0, 0.0, -(2.0f64.sqrt()), 0.0]);
        assert!((tc.eps() + ONE).norm() <= tol::ALGEBRA);
        // The rebuilt operator is unchanged by normalization.
        let raw =
            tau(0).mat.scale(cx(-1.0, 0.0)) + tau(2).mat.scale(cx(2.0f64.sqrt(), 0.0));
        assert!(tc.compose().mat.approx_eq(raw, tol::ALGEBRA));
    }

    #[test]
    fn product_identity_spot_check() {
        // (σ·A)(σ·B) = (A·B)I + iσ·(A×B)
        let a = Vec3C::new(cx(0.3, -1.1), cx(0.9, 0.4), cx(-0.2, 0.8));
        let b = Vec3C::new(cx(-0.7, 0.1), cx(0.5, -0.5), cx(1.2, 0.3));
        let lhs = LinOp2::from_pauli_vector(a) * LinOp2::from_pauli_vector(b);
        let rhs = LinOp2::identity().scale(a.dot(b))
            + LinOp2::from_pauli_vector(a.cross(b)).scale(I);
        assert!(lhs.approx_eq(rhs, tol::ALGEBRA));
    }

    prop_compose! {
        fn arb_c64()(re in -2.0..2.0f64, im in -2.0..2.0f64) -> C64 {
            cx(re, im)
        }
    }

    prop_compose! {
        fn arb_op()(a in arb_c64(), b in arb_c64(), c in arb_c64(), d in arb_c64()) -> LinOp2 {
            LinOp2::new(a, b, c, d)
        }
    }

    proptest! {
        #[test]
        fn pauli_roundtrip(op in arb_op()) {
            let back = pauli_decompose(op).compose();
            prop_assert!(back.approx_eq(op, tol::ALGEBRA));
        }

        #[test]
        fn tau_roundtrip(op in arb_op()) {
            prop_assume!(op.max_norm() > 1e-6);
            let s = AntiOp2::new(op);
            let tc = tau_decompose(s);
            // A generic op has mixed phases; only phase-real ones roundtrip.
            if let Ok(tc) = tc {
                prop_assert!(tc.compose().approx_eq(s, tol::ALGEBRA));
            }
        }

        #[test]
        fn tau_roundtrip_phase_real(eps_angle in 0.0..std::f64::consts::TAU,
                                    c0 in -2.0..2.0f64, c1 in -2.0..2.0f64,
                                    c2 in -2.0..2.0f64, c3 in -2.0..2.0f64) {
            prop_assume!(c0.abs() + c1.abs() + c2.abs() + c3.abs() > 1e-3);
            let eps = C64::from_polar(1.0, eps_angle);
            let tc = TauCoeffs::new(eps, [c0, c1, c2, c3]).unwrap();
            let back = tau_decompose(tc.compose()).unwrap();
            prop_assert!((back.eps() - tc.eps()).norm() <= 1e-9);
            for i in 0..4 {
                prop_assert!((back.c()[i] - tc.c()[i]).abs() <= 1e-9);
            }
        }

        #[test]
        fn anti_linearity_contract(op in arb_op(), s in arb_c64(), t in arb_c64(),
                                   u1 in arb_c64(), u2 in arb_c64(),
                                   v1 in arb_c64(), v2 in arb_c64()) {
            let anti = AntiOp2::new(op);
            let u = Vec2C::new(u1, u2);
            let v = Vec2C::new(v1, v2);
            let lhs = anti.apply(u.scale(s) + v.scale(t));
            let rhs = anti.apply(u).scale(s.conj()) + anti.apply(v).scale(t.conj());
            prop_assert!(lhs.dist_max(rhs) <= 1e-9);
        }

        #[test]
        fn composition_matches_pointwise_action(a in arb_op(), b in arb_op(),
                                                v1 in arb_c64(), v2 in arb_c64()) {
            let v = Vec2C::new(v1, v2);
            let s = AntiOp2::new(a);
            let r = AntiOp2::new(b);
            // anti ∘ anti
            let lhs = s.compose_aa(r).apply(v);
            let rhs = s.apply(r.apply(v));
            prop_assert!(lhs.dist_max(rhs) <= 1e-9);
            // linear ∘ anti
            let lhs = a.compose_la(r).apply(v);
            let rhs = a.apply(r.apply(v));
            prop_assert!(lhs.dist_max(rhs) <= 1e-9);
            // anti ∘ linear
            let lhs = s.compose_al(b).apply(v);
            let rhs = s.apply(b.apply(v));
            prop_assert!(lhs.dist_max(rhs) <= 1e-9);
        }
    }
}
