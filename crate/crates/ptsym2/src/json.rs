//! JSON wire formats and number formatting shared by the CLI and any
//! external consumer.
//!
//! Encodings:
//!
//! - complex number: `[re, im]`
//! - linear operator: `[[z11, z12], [z21, z22]]` row-major
//! - anti-linear operator: `{"mat": <linear operator>}`
//! - parity: `{"kind":"trivial","sign":±1}` or
//!   `{"kind":"nontrivial","a":[<complex>×3]}`
//! - time reversal: `{"eps":<complex>,"c":[c0,c1,c2,c3],"square":±1}`
//! - Hamiltonian: `{"matrix": <linear operator>}`
//! - spectral class: `{"tag":<string>,"lambda":[<complex>,<complex>],"disc":<real>}`
//!
//! All numbers are emitted with 17 significant digits (`%.17g` style),
//! which round-trips doubles exactly; [`to_json_string`] applies that
//! format. Tolerances are never serialized.
//!
//! Parsing separates syntax errors from domain validation so callers can
//! report them differently; the `parse_*` functions take the validation
//! tolerance explicitly.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{cx, AntiOp2, LinOp2, PauliCoeffs, TauCoeffs, Vec2C, Vec3C, C64};
use crate::hamiltonian::{PTHamiltonian, SpectralClass, SpectralTag};
use crate::symmetry::{Parity, Sign, SymmetryError, TimeReversal};
use crate::tol;

#[derive(Debug, Error)]
pub enum WireError {
    /// Malformed JSON or a shape mismatch: a parse error, not a domain one.
    #[error("json syntax: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Domain(#[from] SymmetryError),
    /// The declared `square` field disagrees with the coefficients.
    #[error("declared square {declared} but coefficients give {computed}")]
    SquareMismatch { declared: i8, computed: i8 },
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i8),
}

// ---------------------------------------------------------------------------
// %.17g formatting
// ---------------------------------------------------------------------------

/// Formats a double with 17 significant digits in C `%.17g` style:
/// fixed notation for decimal exponents in `[-4, 17)`, scientific
/// otherwise, trailing zeros removed. Negative zero prints as `0` so
/// that algebraically-zero entries have one wire representation.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    const P: i32 = 17;
    let e_str = format!("{:.*e}", (P - 1) as usize, x);
    let e_pos = e_str.find('e').expect("exponential format contains e");
    let exp: i32 = e_str[e_pos + 1..].parse().expect("valid exponent");
    if (-4..P).contains(&exp) {
        let prec = (P - 1 - exp) as usize;
        strip_trailing_zeros(format!("{x:.prec$}"))
    } else {
        let mantissa = strip_trailing_zeros(e_str[..e_pos].to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", mantissa, sign, exp.abs())
    }
}

fn strip_trailing_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        writer.write_all(fmt_g17(value).as_bytes())
    }
}

/// Compact JSON with `%.17g` numbers.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, G17Formatter);
    value
        .serialize(&mut ser)
        .expect("serialization of finite in-memory values cannot fail");
    String::from_utf8(out).expect("serializer emits utf-8")
}

// ---------------------------------------------------------------------------
// Complex and operator encodings
// ---------------------------------------------------------------------------

fn c64_wire(z: C64) -> (f64, f64) {
    (z.re, z.im)
}

fn c64_from(pair: [f64; 2]) -> C64 {
    cx(pair[0], pair[1])
}

impl Serialize for LinOp2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            [c64_wire(self.m11), c64_wire(self.m12)],
            [c64_wire(self.m21), c64_wire(self.m22)],
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinOp2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = <[[[f64; 2]; 2]; 2]>::deserialize(d)?;
        LinOp2::new(
            c64_from(rows[0][0]),
            c64_from(rows[0][1]),
            c64_from(rows[1][0]),
            c64_from(rows[1][1]),
        )
        .validated()
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AntiOpWire {
    mat: LinOp2,
}

impl Serialize for AntiOp2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AntiOpWire { mat: self.mat }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AntiOp2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(AntiOp2::new(AntiOpWire::deserialize(d)?.mat))
    }
}

// ---------------------------------------------------------------------------
// Parity and time reversal
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ParityWire {
    Trivial { sign: i8 },
    Nontrivial { a: [[f64; 2]; 3] },
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match self.sign() {
            Some(sign) => ParityWire::Trivial {
                sign: sign.value() as i8,
            },
            None => {
                let a = self.a().expect("nontrivial parity has coefficients");
                ParityWire::Nontrivial {
                    a: [
                        [a.x.re, a.x.im],
                        [a.y.re, a.y.im],
                        [a.z.re, a.z.im],
                    ],
                }
            }
        };
        wire.serialize(s)
    }
}

/// Parses a parity, validating the coefficient constraint at `tolerance`.
pub fn parse_parity(s: &str, tolerance: f64) -> Result<Parity, WireError> {
    let wire: ParityWire = serde_json::from_str(s)?;
    match wire {
        ParityWire::Trivial { sign } => Sign::from_value(sign as f64)
            .map(Parity::trivial)
            .ok_or(WireError::BadSign(sign)),
        ParityWire::Nontrivial { a } => {
            let a = Vec3C::new(c64_from(a[0]), c64_from(a[1]), c64_from(a[2]));
            Ok(Parity::from_a_with_tol(a, tolerance)?)
        }
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = ParityWire::deserialize(d)?;
        let s = serde_json::to_string(&wire).map_err(D::Error::custom)?;
        parse_parity(&s, tol::CONSTRAINT).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TimeReversalWire {
    eps: [f64; 2],
    c: [f64; 4],
    square: i8,
}

impl Serialize for TimeReversal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let eps = self.eps();
        TimeReversalWire {
            eps: [eps.re, eps.im],
            c: self.coeffs().c(),
            square: self.square().value() as i8,
        }
        .serialize(s)
    }
}

/// Parses a time reversal, validating unimodularity, the quadratic form,
/// and agreement with the declared `square` at `tolerance`.
pub fn parse_time_reversal(s: &str, tolerance: f64) -> Result<TimeReversal, WireError> {
    let wire: TimeReversalWire = serde_json::from_str(s)?;
    if Sign::from_value(wire.square as f64).is_none() {
        return Err(WireError::BadSign(wire.square));
    }
    let t = TimeReversal::from_c_with_tol(c64_from(wire.eps), wire.c, tolerance)?;
    let computed = t.square().value() as i8;
    if computed != wire.square {
        return Err(WireError::SquareMismatch {
            declared: wire.square,
            computed,
        });
    }
    Ok(t)
}

impl<'de> Deserialize<'de> for TimeReversal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = TimeReversalWire::deserialize(d)?;
        let s = serde_json::to_string(&wire).map_err(D::Error::custom)?;
        parse_time_reversal(&s, tol::CONSTRAINT).map_err(D::Error::custom)
    }
}

/// Parses a linear operator matrix.
pub fn parse_linop(s: &str) -> Result<LinOp2, WireError> {
    Ok(serde_json::from_str(s)?)
}

/// Parses an anti-linear operator (`{"mat": ...}`).
pub fn parse_anti_op(s: &str) -> Result<AntiOp2, WireError> {
    Ok(serde_json::from_str(s)?)
}

// ---------------------------------------------------------------------------
// Coefficient and classification encodings
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PauliCoeffsWire {
    h: [[f64; 2]; 4],
}

impl Serialize for PauliCoeffs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let h = self.as_array();
        PauliCoeffsWire {
            h: [
                [h[0].re, h[0].im],
                [h[1].re, h[1].im],
                [h[2].re, h[2].im],
                [h[3].re, h[3].im],
            ],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliCoeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = PauliCoeffsWire::deserialize(d)?;
        Ok(PauliCoeffs::new(
            c64_from(wire.h[0]),
            c64_from(wire.h[1]),
            c64_from(wire.h[2]),
            c64_from(wire.h[3]),
        ))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TauCoeffsWire {
    eps: [f64; 2],
    c: [f64; 4],
}

impl Serialize for TauCoeffs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let eps = self.eps();
        TauCoeffsWire {
            eps: [eps.re, eps.im],
            c: self.c(),
        }
        .serialize(s)
    }
}

impl Serialize for PTHamiltonian {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            matrix: LinOp2,
        }
        Wire {
            matrix: self.matrix(),
        }
        .serialize(s)
    }
}

impl Serialize for SpectralTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_str().serialize(s)
    }
}

impl Serialize for SpectralClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            tag: SpectralTag,
            lambda: [[f64; 2]; 2],
            disc: f64,
        }
        Wire {
            tag: self.tag,
            lambda: [
                [self.lambda1.re, self.lambda1.im],
                [self.lambda2.re, self.lambda2.im],
            ],
            disc: self.discriminant,
        }
        .serialize(s)
    }
}

/// `[re, im]` pair for ad-hoc payloads.
pub fn complex_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// `[[re, im]; 2]` for a ℂ² vector.
pub fn vec2c_wire(v: Vec2C) -> [[f64; 2]; 2] {
    [[v.x1.re, v.x1.im], [v.x2.re, v.x2.im]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pauli, Vec3R};

    #[test]
    fn g17_formatting_table() {
        assert_eq!(fmt_g17(0.0), "0");
        assert_eq!(fmt_g17(-0.0), "0");
        assert_eq!(fmt_g17(1.0), "1");
        assert_eq!(fmt_g17(-3.0), "-3");
        assert_eq!(fmt_g17(0.5), "0.5");
        assert_eq!(fmt_g17(100000.0), "100000");
        assert_eq!(fmt_g17(2.0f64.sqrt()), "1.4142135623730951");
        assert_eq!(fmt_g17(1e-4), "0.0001");
        assert_eq!(fmt_g17(1.5e-5), "1.5e-05");
        assert_eq!(fmt_g17(1e17), "1e+17");
        assert_eq!(fmt_g17(roundtrip(1e-5)), "1.0000000000000001e-05");
        assert_eq!(fmt_g17(1234.5678), "1234.5678");
    }

    fn roundtrip(x: f64) -> f64 {
        x
    }

    #[test]
    fn g17_round_trips_doubles() {
        let mut x = 0.1f64;
        for _ in 0..50 {
            x = x * 1.7 + 0.013;
            let s = fmt_g17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let s = fmt_g17(-x);
            assert_eq!(s.parse::<f64>().unwrap(), -x, "{s}");
        }
    }

    #[test]
    fn linop_wire_shape() {
        let s = to_json_string(&pauli(2));
        assert_eq!(s, "[[[0,0],[0,-1]],[[0,1],[0,0]]]");
        let back = parse_linop(&s).unwrap();
        assert_eq!(back, pauli(2));
    }

    #[test]
    fn linop_rejects_nonfinite_and_bad_shape() {
        assert!(matches!(
            parse_linop("[[[1,0],[0,0]],[[0,0]]]"),
            Err(WireError::Syntax(_))
        ));
        assert!(parse_linop("[[[1e999,0],[0,0]],[[0,0],[1,0]]]").is_err());
    }

    #[test]
    fn parity_wire_round_trip() {
        let p = Parity::from_fb(
            Vec3R::new(0.0, 0.0, 2.0f64.sqrt()),
            Vec3R::new(1.0, 0.0, 0.0),
        )
        .unwrap();
        let s = to_json_string(&p);
        assert_eq!(
            s,
            "{\"kind\":\"nontrivial\",\"a\":[[0,1],[0,0],[1.4142135623730951,0]]}"
        );
        let back = parse_parity(&s, tol::CONSTRAINT).unwrap();
        assert_eq!(back, p);

        let trivial = to_json_string(&Parity::trivial(Sign::Minus));
        assert_eq!(trivial, "{\"kind\":\"trivial\",\"sign\":-1}");
        assert!(parse_parity(&trivial, tol::CONSTRAINT).unwrap().is_trivial());
    }

    #[test]
    fn parity_wire_rejects_invalid() {
        assert!(matches!(
            parse_parity("{\"kind\":\"trivial\",\"sign\":2}", tol::CONSTRAINT),
            Err(WireError::BadSign(2))
        ));
        assert!(matches!(
            parse_parity(
                "{\"kind\":\"nontrivial\",\"a\":[[1,0],[1,0],[0,0]]}",
                tol::CONSTRAINT
            ),
            Err(WireError::Domain(_))
        ));
        assert!(matches!(
            parse_parity("{\"kind\":\"diagonal\"}", tol::CONSTRAINT),
            Err(WireError::Syntax(_))
        ));
    }

    #[test]
    fn time_reversal_wire_round_trip() {
        let t = TimeReversal::from_c(cx(0.0, -1.0), [0.0, 0.0, 1.0, 0.0]).unwrap();
        let s = to_json_string(&t);
        assert_eq!(s, "{\"eps\":[0,-1],\"c\":[0,0,1,0],\"square\":1}");
        let back = parse_time_reversal(&s, tol::CONSTRAINT).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn time_reversal_wire_rejects_mismatch() {
        match parse_time_reversal(
            "{\"eps\":[1,0],\"c\":[0,0,1,0],\"square\":-1}",
            tol::CONSTRAINT,
        ) {
            Err(WireError::SquareMismatch { declared: -1, computed: 1 }) => {}
            other => panic!("expected SquareMismatch, got {other:?}"),
        }
        assert!(matches!(
            parse_time_reversal(
                "{\"eps\":[2,0],\"c\":[0,0,1,0],\"square\":1}",
                tol::CONSTRAINT
            ),
            Err(WireError::Domain(SymmetryError::NotUnimodular { .. }))
        ));
    }

    #[test]
    fn anti_op_wire() {
        let s = to_json_string(&crate::algebra::tau(0));
        assert_eq!(s, "{\"mat\":[[[0,0],[-1,0]],[[1,0],[0,0]]]}");
        let back = parse_anti_op(&s).unwrap();
        assert_eq!(back, crate::algebra::tau(0));
    }

    #[test]
    fn spectral_class_wire() {
        let class = crate::hamiltonian::classify(pauli(3)).unwrap();
        let s = to_json_string(&class);
        assert_eq!(
            s,
            "{\"tag\":\"UnbrokenDiagonalizable\",\"lambda\":[[1,0],[-1,0]],\"disc\":4}"
        );
    }

    #[test]
    fn serde_trait_round_trip_via_derive_path() {
        // the Deserialize impls delegate to the validating parsers
        let p: Parity =
            serde_json::from_str("{\"kind\":\"nontrivial\",\"a\":[[1,0],[0,0],[0,0]]}").unwrap();
        assert!(p.matrix().approx_eq(pauli(1), 1e-15));
        let bad: Result<Parity, _> =
            serde_json::from_str("{\"kind\":\"nontrivial\",\"a\":[[1,0],[1,0],[0,0]]}");
        assert!(bad.is_err());
    }
}
