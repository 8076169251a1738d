//! Arbitrary-precision real and complex arithmetic.
//!
//! Every inexact value in the crate is a [`Real`] or [`Complex`] created through a
//! [`PrecisionContext`]. The context carries the requested precision plus a number
//! of guard bits; values are computed with `precision_bits + guard_bits` bits of
//! mantissa, and only `precision_bits` of them are reported as reliable.
//!
//! The floating-point backend is MPFR/MPC through `rug`. Rounding errors are not
//! tracked interval-style: the guard bits absorb accumulated rounding, and the
//! precision-doubling tests check empirically that they are enough.

use rug::float::Constant;
use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational, RationalPolynomial};

pub type Real = Float;
pub use rug::Complex;

/// Working precision for inexact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    precision_bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub const MIN_PRECISION_BITS: u32 = 64;
    pub const MIN_GUARD_BITS: u32 = 16;
    pub const DEFAULT_GUARD_BITS: u32 = 32;

    pub fn new(precision_bits: u32) -> Result<Self> {
        Self::with_guard_bits(precision_bits, Self::DEFAULT_GUARD_BITS)
    }

    pub fn with_guard_bits(precision_bits: u32, guard_bits: u32) -> Result<Self> {
        if precision_bits < Self::MIN_PRECISION_BITS {
            return Err(Error::InvalidArgument(format!(
                "precision must be at least {} bits, got {precision_bits}",
                Self::MIN_PRECISION_BITS
            )));
        }
        if guard_bits < Self::MIN_GUARD_BITS {
            return Err(Error::InvalidArgument(format!(
                "guard bits must be at least {}, got {guard_bits}",
                Self::MIN_GUARD_BITS
            )));
        }
        Ok(Self {
            precision_bits,
            guard_bits,
        })
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Mantissa size of every value created by this context.
    pub fn working_bits(&self) -> u32 {
        self.precision_bits + self.guard_bits
    }

    /// Number of decimal digits that may be printed: `floor(precision_bits * log10(2))`.
    pub fn reliable_digits(&self) -> usize {
        (f64::from(self.precision_bits) * std::f64::consts::LOG10_2).floor() as usize
    }

    /// `2^(guard_bits - precision_bits)`, the relative tolerance used by residual checks.
    pub fn tolerance(&self) -> Real {
        let exp = i32::try_from(self.guard_bits).unwrap() - i32::try_from(self.precision_bits).unwrap();
        Float::with_val(self.working_bits(), Float::i_exp(1, exp))
    }

    pub fn real<T>(&self, value: T) -> Real
    where
        Float: Assign<T>,
    {
        Float::with_val(self.working_bits(), value)
    }

    pub fn complex<T>(&self, value: T) -> Complex
    where
        Complex: Assign<T>,
    {
        Complex::with_val(self.working_bits(), value)
    }

    pub fn zero(&self) -> Real {
        self.real(0)
    }

    pub fn complex_zero(&self) -> Complex {
        self.complex(0)
    }

    pub fn pi(&self) -> Real {
        self.real(Constant::Pi)
    }

    /// `2^exp` as a real at working precision.
    pub fn pow2(&self, exp: i32) -> Real {
        self.real(Float::i_exp(1, exp))
    }

    pub fn to_real(&self, q: &Rational) -> Real {
        self.real(q)
    }

    pub fn to_complex(&self, z: &GaussianRational) -> Complex {
        self.complex((&z.re, &z.im))
    }

    /// Parses a decimal literal (or `p/q`) at working precision.
    pub fn parse_real(&self, text: &str) -> Result<Real> {
        let text = text.trim();
        if let Some(q) = crate::exact::parse_rational(text) {
            return Ok(self.to_real(&q));
        }
        let parsed = Float::parse(text).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
        Ok(self.real(parsed))
    }

    /// Horner evaluation of a rational polynomial at a real point.
    pub fn eval_poly(&self, p: &RationalPolynomial, x: &Real) -> Real {
        let mut acc = self.zero();
        for c in p.coefficients().iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Horner evaluation at a complex point.
    pub fn eval_poly_complex(&self, p: &RationalPolynomial, z: &Complex) -> Complex {
        let mut acc = self.complex_zero();
        for c in p.coefficients().iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            precision_bits: 256,
            guard_bits: Self::DEFAULT_GUARD_BITS,
        }
    }
}

/// `|z|` as a real with the precision of `z`.
pub fn abs(z: &Complex) -> Real {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// `(-1)^k` as a sign factor.
pub fn sign(k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Number of leading bits on which `a` and `b` agree, relative to `max(|a|, |b|, 1)`.
/// Returns `u32::MAX` when they are identical.
pub fn agreeing_bits(a: &Complex, b: &Complex) -> u32 {
    let prec = a.prec().0.max(b.prec().0);
    let diff = abs(&Complex::with_val(prec, a - b));
    if diff.is_zero() {
        return u32::MAX;
    }
    let mut scale = abs(a).max(&abs(b));
    if scale < 1 {
        scale = Float::with_val(prec, 1);
    }
    let rel = diff / scale;
    let log2 = rel.log2().to_f64();
    if log2 >= 0.0 {
        0
    } else {
        (-log2).floor() as u32
    }
}
