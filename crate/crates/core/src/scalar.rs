//! Scalar fields: exact rationals, `f64` reals and `f64` complex pairs.
//!
//! Every matrix routine in the crate is generic over [`Scalar`]. Mixing kinds
//! is a type error; the dynamic layer in [`crate::io`] refuses mismatched
//! files instead of coercing.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub type Rational = num_rational::BigRational;
pub type Complex = num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarKind {
    Rational,
    Real64,
    Complex128,
}

/// The involution used for `x*` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum StarMode {
    #[default]
    Transpose,
    ConjugateTranspose,
}

impl StarMode {
    pub fn name(self) -> &'static str {
        match self {
            StarMode::Transpose => "transpose",
            StarMode::ConjugateTranspose => "conjugate",
        }
    }
}

/// A scalar kind together with its star involution.
///
/// Rational and real kinds only admit the plain transpose; complex kinds
/// default to the conjugate transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldKind {
    kind: ScalarKind,
    star: StarMode,
}

impl FieldKind {
    pub fn new(kind: ScalarKind, star: StarMode) -> Result<Self> {
        if kind != ScalarKind::Complex128 && star == StarMode::ConjugateTranspose {
            return Err(Error::InvalidStarMode(star.name()));
        }
        Ok(FieldKind { kind, star })
    }

    pub fn with_default_star(kind: ScalarKind) -> Self {
        let star = match kind {
            ScalarKind::Complex128 => StarMode::ConjugateTranspose,
            _ => StarMode::Transpose,
        };
        FieldKind { kind, star }
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn star(&self) -> StarMode {
        self.star
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    const KIND: ScalarKind;
    /// Exact kinds never round; comparisons against zero ignore tolerances.
    const EXACT: bool;

    fn conj(&self) -> Self;

    /// Absolute value, as an `f64` approximation for exact kinds.
    fn modulus(&self) -> f64;

    fn from_i64(v: i64) -> Self;

    /// Exact binary value for rationals.
    fn from_f64(x: f64) -> Self;

    fn to_complex(&self) -> Complex;

    /// Zero test: exact for rationals, `|x| <= tol` otherwise.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.modulus() <= tol
        }
    }

    /// Determinant of a square matrix; rationals override with Bareiss.
    fn determinant(m: &Matrix<Self>) -> Self {
        crate::linalg::pivoted_det(m)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.clone() / rhs.clone())
        }
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn modulus(&self) -> f64 {
        rational_to_f64(self).abs()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_else(Rational::zero)
    }

    fn to_complex(&self) -> Complex {
        Complex::new(rational_to_f64(self), 0.0)
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        crate::linalg::rational_det(m)
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Real64;
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        *self
    }

    fn modulus(&self) -> f64 {
        self.abs()
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_complex(&self) -> Complex {
        Complex::new(*self, 0.0)
    }
}

impl Scalar for Complex {
    const KIND: ScalarKind = ScalarKind::Complex128;
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }

    fn from_f64(x: f64) -> Self {
        Complex::new(x, 0.0)
    }

    fn to_complex(&self) -> Complex {
        *self
    }
}

/// Float kinds, used by the eigen-solver and square roots.
pub trait FloatScalar: Scalar + Copy {
    fn from_real(x: f64) -> Self;
    fn re(&self) -> f64;
    /// `self / |self|`, or one for zero.
    fn phase(&self) -> Self;
}

impl FloatScalar for f64 {
    fn from_real(x: f64) -> Self {
        x
    }

    fn re(&self) -> f64 {
        *self
    }

    fn phase(&self) -> Self {
        if *self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

impl FloatScalar for Complex {
    fn from_real(x: f64) -> Self {
        Complex::new(x, 0.0)
    }

    fn re(&self) -> f64 {
        self.re
    }

    fn phase(&self) -> Self {
        let r = self.norm();
        if r == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            self / r
        }
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(p), Some(d)) if p.is_finite() && d.is_finite() => p / d,
        // Huge numerator or denominator: shift both down before dividing.
        _ => {
            let bits = q.numer().bits().max(q.denom().bits()) as i64;
            let shift = (bits - 900).max(0) as usize;
            let p = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(0.0);
            if d == 0.0 {
                if q.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                p / d
            }
        }
    }
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `p/q` or `-p/q`. Rejects `q = 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let q: BigInt = q
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(p, q))
}

/// Square root of a rational when it is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let p = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&p * &p) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(p, d))
    } else {
        None
    }
}
