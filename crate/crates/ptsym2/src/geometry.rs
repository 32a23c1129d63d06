//! Commutant geometry: the hyperboloid of parities for a fixed time
//! reversal and the ellipse of time reversals for a fixed parity.
//!
//! For `T² = I` with real ε, every nontrivial commuting parity is a point
//! `m̃ = f + b` on a hyperboloid. In the frame with `X′` along `c̃`,
//!
//! ```text
//! (y′² + z′²)/(1 + 2c₀²) − x′² = 1
//! ```
//!
//! which reduces to `y′² + z′² − x′² = 1` when `c₀ = 0`. The
//! correspondence is a bijection; [`parity_to_point`] and
//! [`point_to_parity`] implement the two directions and
//! [`sample_hyperboloid`] draws seeded deterministic samples from the
//! surface.
//!
//! Dually, the `c̃` vectors of time reversals commuting with a fixed
//! nontrivial parity fill an ellipse with semi-minor axis 1 and
//! semi-major axis `‖f‖`, lying in the plane orthogonal to `f`; see
//! [`ellipse_for_parity`] and [`time_reversal_on_ellipse`].
//!
//! The adapted coordinate frames are not unique, so all constructions
//! run through the deterministic [`frame_from_axis`]; CLI output is
//! reproducible because of it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Vec3R, C64};
use crate::symmetry::{commute_residual_matrix, Parity, Sign, SymmetryError, TimeReversal};
use crate::tol;

/// Default half-width of the `x′` sampling range on the hyperboloid.
pub const X_MAX_DEFAULT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("cannot build a frame from a zero axis")]
    ZeroAxis,
    #[error("parity and time reversal do not commute (residual {residual:e})")]
    NotCommuting { residual: f64 },
    #[error("time reversal squares to -I; the commutant has no geometry")]
    NegativeSquare,
    #[error("point is off the hyperboloid (residual {residual:e})")]
    OffSurface { residual: f64 },
    #[error("operation requires a nontrivial parity")]
    TrivialParity,
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Which slot of the frame the designated axis occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisSlot {
    X,
    Z,
}

/// A right-handed orthonormal frame (`u1×u2 = u3`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub u1: Vec3R,
    pub u2: Vec3R,
    pub u3: Vec3R,
}

impl Frame {
    /// Coordinates of a global vector in this frame.
    pub fn to_frame(&self, v: Vec3R) -> Vec3R {
        Vec3R::new(v.dot(self.u1), v.dot(self.u2), v.dot(self.u3))
    }

    /// Global vector from frame coordinates.
    pub fn to_global(&self, v: Vec3R) -> Vec3R {
        self.u1.scale(v.x) + self.u2.scale(v.y) + self.u3.scale(v.z)
    }

    /// Max deviation from orthonormality and right-handedness.
    pub fn residual(&self) -> f64 {
        let axes = [self.u1, self.u2, self.u3];
        let mut r: f64 = 0.0;
        for (i, u) in axes.iter().enumerate() {
            r = r.max((u.norm_sq() - 1.0).abs());
            for v in axes.iter().skip(i + 1) {
                r = r.max(u.dot(*v).abs());
            }
        }
        r.max(self.u1.cross(self.u2).dist_max(self.u3))
    }
}

/// Deterministic orthonormal frame with `axis` (normalized) in the
/// requested slot.
///
/// The first perpendicular comes from Gram-Schmidt against the canonical
/// basis vector `eₖ` minimizing `|û·eₖ|` (ties broken by smallest `k`)
/// and always occupies the `Y′` slot; the remaining slot is the
/// right-handed cross-product completion.
pub fn frame_from_axis(axis: Vec3R, slot: AxisSlot) -> Result<Frame, GeometryError> {
    let u = axis.normalized(1e-12).ok_or(GeometryError::ZeroAxis)?;
    let overlaps = [u.x.abs(), u.y.abs(), u.z.abs()];
    let k = overlaps
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let e = match k {
        0 => Vec3R::new(1.0, 0.0, 0.0),
        1 => Vec3R::new(0.0, 1.0, 0.0),
        _ => Vec3R::new(0.0, 0.0, 1.0),
    };
    let perp = (e - u.scale(e.dot(u)))
        .normalized(1e-12)
        .expect("canonical vector with minimal overlap is independent of the axis");
    Ok(match slot {
        AxisSlot::X => Frame {
            u1: u,
            u2: perp,
            u3: u.cross(perp),
        },
        AxisSlot::Z => Frame {
            u1: perp.cross(u),
            u2: perp,
            u3: u,
        },
    })
}

/// Frame with both `Z′` and `X′` prescribed (orthogonal directions);
/// `Y′ = Z′×X′`.
fn frame_from_zx(z_axis: Vec3R, x_axis: Vec3R) -> Result<Frame, GeometryError> {
    let u3 = z_axis.normalized(1e-12).ok_or(GeometryError::ZeroAxis)?;
    let u1 = x_axis.normalized(1e-12).ok_or(GeometryError::ZeroAxis)?;
    Ok(Frame {
        u1,
        u2: u3.cross(u1),
        u3,
    })
}

/// A point `m̃ = f + b` in the `T`-adapted frame coordinates
/// `(x′, y′, z′)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperboloidPoint {
    pub m: Vec3R,
}

/// Left-hand side minus one of the hyperboloid equation for the given
/// `c₀`: `(y′² + z′²)/(1 + 2c₀²) − x′² − 1`.
///
/// The `c₀ = 0` surface `y′² + z′² − x′² = 1` is the same formula.
pub fn hyperboloid_residual(m: Vec3R, c0: f64) -> f64 {
    (m.y * m.y + m.z * m.z) / (1.0 + 2.0 * c0 * c0) - m.x * m.x - 1.0
}

/// The `T`-adapted frame: `X′` along `c̃`.
fn adapted_frame(t: &TimeReversal) -> Frame {
    frame_from_axis(t.c_tilde(), AxisSlot::X).expect("c tilde is nonzero when T squares to I")
}

/// Maps a commuting nontrivial parity to its point `m̃ = f + b` in the
/// `T`-adapted frame.
pub fn parity_to_point(p: &Parity, t: &TimeReversal) -> Result<HyperboloidPoint, GeometryError> {
    parity_to_point_with_tol(p, t, tol::CONSTRAINT)
}

pub fn parity_to_point_with_tol(
    p: &Parity,
    t: &TimeReversal,
    tolerance: f64,
) -> Result<HyperboloidPoint, GeometryError> {
    if t.square() == Sign::Minus {
        return Err(GeometryError::NegativeSquare);
    }
    let Some((f, b)) = p.fb() else {
        return Err(GeometryError::TrivialParity);
    };
    let residual = commute_residual_matrix(p, t);
    let scale = (p.matrix().max_norm() * t.matrix().max_norm()).max(1.0);
    if residual > tolerance * scale {
        return Err(GeometryError::NotCommuting { residual });
    }
    let frame = adapted_frame(t);
    Ok(HyperboloidPoint {
        m: frame.to_frame(f + b),
    })
}

/// Reconstructs the commuting parity from a point on the hyperboloid.
///
/// With `c₀ = 0`: `b = (x′,0,0)`, `f = (0,y′,z′)` in the frame. With
/// `c₀ ≠ 0`: `b = (x′, (λz′+y′)/(1+λ²), (z′−λy′)/(1+λ²))` where
/// `λ = √(1+c₀²)/c₀` (taken literally for negative `c₀`), and
/// `f = (c̃×b)/c₀`. Inverse of [`parity_to_point`].
pub fn point_to_parity(m: &HyperboloidPoint, t: &TimeReversal) -> Result<Parity, GeometryError> {
    point_to_parity_with_tol(m, t, tol::CONSTRAINT)
}

pub fn point_to_parity_with_tol(
    m: &HyperboloidPoint,
    t: &TimeReversal,
    tolerance: f64,
) -> Result<Parity, GeometryError> {
    if t.square() == Sign::Minus {
        return Err(GeometryError::NegativeSquare);
    }
    let c0 = t.c0();
    let residual = hyperboloid_residual(m.m, c0);
    let scale = m.m.norm_sq().max(1.0);
    if residual.abs() > tolerance * scale {
        return Err(GeometryError::OffSurface { residual });
    }
    let frame = adapted_frame(t);
    let (f_frame, b_frame) = if c0.abs() <= tolerance {
        (Vec3R::new(0.0, m.m.y, m.m.z), Vec3R::new(m.m.x, 0.0, 0.0))
    } else {
        let lambda = (1.0 + c0 * c0).sqrt() / c0;
        let denom = 1.0 + lambda * lambda;
        let b = Vec3R::new(
            m.m.x,
            (lambda * m.m.z + m.m.y) / denom,
            (m.m.z - lambda * m.m.y) / denom,
        );
        // c̃ = (√(1+c₀²), 0, 0) in its own frame
        let ct_frame = Vec3R::new((1.0 + c0 * c0).sqrt(), 0.0, 0.0);
        (ct_frame.cross(b).scale(1.0 / c0), b)
    };
    let f = frame.to_global(f_frame);
    let b = frame.to_global(b_frame);
    Ok(Parity::from_fb_with_tol(f, b, tolerance)?)
}

/// Draws `n` parities commuting with `t` from deterministic
/// pseudo-random points of the hyperboloid: `x′` uniform in
/// `[−x_max, x_max]`, angle uniform, `(y′, z′)` on the circle of radius
/// `√((1+x′²)(1+2c₀²))`. The same seed yields the same sequence.
pub fn sample_hyperboloid(
    t: &TimeReversal,
    n: usize,
    seed: u64,
) -> Result<Vec<Parity>, GeometryError> {
    sample_hyperboloid_with_range(t, n, seed, X_MAX_DEFAULT)
}

pub fn sample_hyperboloid_with_range(
    t: &TimeReversal,
    n: usize,
    seed: u64,
    x_max: f64,
) -> Result<Vec<Parity>, GeometryError> {
    if t.square() == Sign::Minus {
        return Err(GeometryError::NegativeSquare);
    }
    let c0 = t.c0();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let x = rng.gen_range(-x_max..=x_max);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let rho = ((1.0 + x * x) * (1.0 + 2.0 * c0 * c0)).sqrt();
        let m = HyperboloidPoint {
            m: Vec3R::new(x, rho * theta.cos(), rho * theta.sin()),
        };
        out.push(point_to_parity(&m, t)?);
    }
    Ok(out)
}

/// The ellipse traced by `c̃` over all real-ε time reversals commuting
/// with a fixed nontrivial parity.
///
/// Lives in the `c₃′ = 0` plane of `frame` (`Z′` along `f̂`, `X′` along
/// `b̂` or the deterministic fallback when `b = 0`):
/// `(c₁′)² + (c₂′)²/semi_major² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipseSpec {
    pub frame: Frame,
    /// `‖f‖`, along `Y′`.
    pub semi_major: f64,
    /// Always 1, along `X′`.
    pub semi_minor: f64,
}

pub fn ellipse_for_parity(p: &Parity) -> Result<EllipseSpec, GeometryError> {
    let Some((f, b)) = p.fb() else {
        return Err(GeometryError::TrivialParity);
    };
    let frame = if b.norm() > 1e-12 * f.norm().max(1.0) {
        frame_from_zx(f, b)?
    } else {
        // b = 0: any direction orthogonal to f serves as X′
        frame_from_axis(f, AxisSlot::Z)?
    };
    Ok(EllipseSpec {
        frame,
        semi_major: f.norm(),
        semi_minor: 1.0,
    })
}

/// The time reversal at ellipse parameter `phi`:
/// `c₁′ = cos φ`, `c₂′ = ‖f‖ sin φ`, `c₃′ = 0`, and
/// `c₀ = −(‖b‖/‖f‖)·c₂′`. Always squares to `+I` and commutes with `p`;
/// `‖f‖ ≥ 1` so the ratio never divides by zero.
pub fn time_reversal_on_ellipse(p: &Parity, phi: f64) -> Result<TimeReversal, GeometryError> {
    time_reversal_on_ellipse_with_tol(p, phi, tol::CONSTRAINT)
}

pub fn time_reversal_on_ellipse_with_tol(
    p: &Parity,
    phi: f64,
    tolerance: f64,
) -> Result<TimeReversal, GeometryError> {
    let spec = ellipse_for_parity(p)?;
    let (_, b) = p.fb().expect("nontrivial checked by ellipse_for_parity");
    let z = spec.semi_major;
    let x = b.norm();
    let c1p = phi.cos();
    let c2p = z * phi.sin();
    let c0 = -(x / z) * c2p;
    let ct = spec.frame.to_global(Vec3R::new(c1p, c2p, 0.0));
    Ok(TimeReversal::from_c_with_tol(
        C64::new(1.0, 0.0),
        [c0, ct.x, ct.y, ct.z],
        tolerance,
    )?)
}
