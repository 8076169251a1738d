//! Periodic coefficient functions `g: Z -> C`.
//!
//! A [`PeriodicFunction`] stores one period `g(0), ..., g(m-1)`. Values are either
//! exact Gaussian rationals (preferred: parity, mean and zero tests are then exact)
//! or arbitrary-precision complex numbers. `g(n)` for any integer `n` reads
//! `values[n mod m]` with a non-negative remainder, so `g(-n) = values[(m - n mod m) mod m]`.
//!
//! JSON form, as read by the CLI:
//!
//! ```json
//! {"period": 4, "values": [[0, 0], [1, 0], [0, 0], [-1, 0]]}
//! ```
//!
//! Each entry is `[re, im]`; components are integers or strings holding a decimal
//! literal (`"-0.125"`, `"1e-3"`) or a fraction (`"1/3"`). They are parsed exactly.

use rug::Float;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, GaussianRational, Rational};
use crate::numerics::{abs, Complex, PrecisionContext, Real};

#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Exact(Vec<GaussianRational>),
    Approx(Vec<Complex>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFunction {
    values: Values,
}

/// Parity of a periodic function over a full period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Identically zero: both even and odd.
    Zero,
    Even,
    Odd,
    Neither,
}

impl Parity {
    pub fn is_even(self) -> bool {
        matches!(self, Parity::Zero | Parity::Even)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Zero | Parity::Odd)
    }
}

/// Abscissa of convergence of `sum g(n) n^-s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbscissaClass {
    /// `M(g) != 0`: converges for `s > 1` only.
    DivergentAt1,
    /// `M(g) = 0`, `g` not identically zero: converges for `s > 0`.
    Conditional,
    /// `g` vanishes identically.
    ZeroFunction,
}

impl AbscissaClass {
    /// `sigma_g` as a float (`-inf` for the zero function).
    pub fn abscissa(self) -> f64 {
        match self {
            AbscissaClass::DivergentAt1 => 1.0,
            AbscissaClass::Conditional => 0.0,
            AbscissaClass::ZeroFunction => f64::NEG_INFINITY,
        }
    }
}

/// Even and odd parts of a periodic function, both of the original period.
#[derive(Debug, Clone, PartialEq)]
pub struct ParitySplit {
    pub even_part: PeriodicFunction,
    pub odd_part: PeriodicFunction,
}

impl PeriodicFunction {
    pub fn from_exact(values: Vec<GaussianRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("period must be at least 1".into()));
        }
        Ok(Self {
            values: Values::Exact(values),
        })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::from_exact(values.iter().map(|&v| GaussianRational::real(v)).collect())
    }

    pub fn from_rationals(values: Vec<Rational>) -> Result<Self> {
        Self::from_exact(values.into_iter().map(GaussianRational::real).collect())
    }

    pub fn from_complex(values: Vec<Complex>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("period must be at least 1".into()));
        }
        Ok(Self {
            values: Values::Approx(values),
        })
    }

    pub fn from_reals(values: Vec<Real>) -> Result<Self> {
        Self::from_complex(
            values
                .into_iter()
                .map(|v| {
                    let prec = v.prec();
                    Complex::with_val(prec, (v, 0))
                })
                .collect(),
        )
    }

    /// `g = 1` with period 1, the coefficients of the Riemann zeta function.
    pub fn one() -> Self {
        Self::from_integers(&[1]).unwrap()
    }

    /// The non-principal character modulo 4: `(0, 1, 0, -1)`.
    pub fn mod4_character() -> Self {
        Self::from_integers(&[0, 1, 0, -1]).unwrap()
    }

    pub fn period(&self) -> usize {
        match &self.values {
            Values::Exact(v) => v.len(),
            Values::Approx(v) => v.len(),
        }
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, Values::Exact(_))
    }

    pub fn exact_values(&self) -> Option<&[GaussianRational]> {
        match &self.values {
            Values::Exact(v) => Some(v),
            Values::Approx(_) => None,
        }
    }

    /// Index into the stored period for argument `n`.
    pub fn index(&self, n: i64) -> usize {
        n.rem_euclid(self.period() as i64) as usize
    }

    pub fn exact_value(&self, n: i64) -> Option<&GaussianRational> {
        let idx = self.index(n);
        self.exact_values().map(|v| &v[idx])
    }

    /// `g(n)` at working precision.
    pub fn value(&self, n: i64, ctx: &PrecisionContext) -> Complex {
        let idx = self.index(n);
        match &self.values {
            Values::Exact(v) => ctx.to_complex(&v[idx]),
            Values::Approx(v) => ctx.complex(&v[idx]),
        }
    }

    pub fn complex_values(&self, ctx: &PrecisionContext) -> Vec<Complex> {
        (0..self.period() as i64).map(|n| self.value(n, ctx)).collect()
    }

    /// `max |g(n)|` over a period, rounded up to an `f64`; used only in error bounds.
    pub fn max_abs(&self) -> f64 {
        let bound = match &self.values {
            Values::Exact(v) => v
                .iter()
                .map(|z| z.norm_sqr().to_f64().sqrt())
                .fold(0.0, f64::max),
            Values::Approx(v) => v.iter().map(|z| abs(z).to_f64()).fold(0.0, f64::max),
        };
        bound * (1.0 + 1e-12)
    }

    pub fn is_real_valued(&self, ctx: &PrecisionContext) -> bool {
        match &self.values {
            Values::Exact(v) => v.iter().all(GaussianRational::is_real),
            Values::Approx(v) => {
                let tol = ctx.tolerance();
                v.iter().all(|z| Float::with_val(53, z.imag().abs_ref()) <= tol)
            }
        }
    }

    pub fn is_zero(&self, ctx: &PrecisionContext) -> bool {
        match &self.values {
            Values::Exact(v) => v.iter().all(GaussianRational::is_zero),
            Values::Approx(v) => {
                let tol = ctx.tolerance();
                v.iter().all(|z| abs(z) <= tol)
            }
        }
    }

    pub fn parity(&self, ctx: &PrecisionContext) -> Parity {
        let m = self.period() as i64;
        let (even, odd) = match &self.values {
            Values::Exact(v) => {
                let at = |n: i64| &v[n.rem_euclid(m) as usize];
                let even = (0..m).all(|n| at(n) == at(-n));
                let odd = (0..m).all(|n| at(n).clone() == -at(-n).clone());
                (even, odd)
            }
            Values::Approx(v) => {
                let tol = ctx.tolerance();
                let at = |n: i64| &v[n.rem_euclid(m) as usize];
                let close = |a: &Complex, b: &Complex| {
                    let scale = abs(a).max(&abs(b)).max(&Float::with_val(53, 1));
                    abs(&Complex::with_val(ctx.working_bits(), a - b)) <= Float::with_val(53, &tol * &scale)
                };
                let even = (0..m).all(|n| close(at(n), at(-n)));
                let odd = (0..m).all(|n| close(at(n), &Complex::with_val(ctx.working_bits(), -at(-n))));
                (even, odd)
            }
        };
        match (even, odd) {
            (true, true) => Parity::Zero,
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (false, false) => Parity::Neither,
        }
    }

    /// Parses the JSON representation `{"period": m, "values": [[re, im], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let period = doc
            .get("period")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing or invalid \"period\"".into()))?;
        let values = doc
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing or invalid \"values\"".into()))?;
        if period == 0 || values.len() as u64 != period {
            return Err(Error::Parse(format!(
                "period is {period} but {} values were given",
                values.len()
            )));
        }
        let parsed = values
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let pair = entry
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse(format!("values[{i}] must be [re, im]")))?;
                Ok(GaussianRational::new(
                    parse_component(&pair[0], i)?,
                    parse_component(&pair[1], i)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_exact(parsed)
    }

    /// JSON representation; inexact values are written with `digits` significant digits.
    pub fn to_json(&self, digits: usize) -> Value {
        let values: Vec<Value> = match &self.values {
            Values::Exact(v) => v
                .iter()
                .map(|z| json!([rational_json(&z.re), rational_json(&z.im)]))
                .collect(),
            Values::Approx(v) => v
                .iter()
                .map(|z| {
                    json!([
                        z.real().to_string_radix(10, Some(digits)),
                        z.imag().to_string_radix(10, Some(digits))
                    ])
                })
                .collect(),
        };
        json!({ "period": self.period(), "values": values })
    }
}

fn rational_json(q: &Rational) -> Value {
    if *q.denom() == 1 {
        if let Some(i) = q.numer().to_i64() {
            return json!(i);
        }
    }
    json!(q.to_string())
}

fn parse_component(v: &Value, i: usize) -> Result<Rational> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(Rational::from(n.as_i64().unwrap())),
        Value::Number(n) if n.is_u64() => Ok(Rational::from(n.as_u64().unwrap())),
        Value::Number(n) => Err(Error::Parse(format!(
            "values[{i}]: non-integer number {n}; write it as a decimal string"
        ))),
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::Parse(format!("values[{i}]: cannot parse {s:?}"))),
        other => Err(Error::Parse(format!("values[{i}]: unexpected {other}"))),
    }
}

/// Mean value `M(g) = (1/m) sum_{n=0}^{m-1} g(n)`.
pub fn mean_value(g: &PeriodicFunction, ctx: &PrecisionContext) -> Complex {
    match mean_value_exact(g) {
        Some(exact) => ctx.to_complex(&exact),
        None => {
            let mut sum = ctx.complex_zero();
            for z in g.complex_values(ctx) {
                sum += z;
            }
            sum / g.period() as u32
        }
    }
}

pub fn mean_value_exact(g: &PeriodicFunction) -> Option<GaussianRational> {
    let values = g.exact_values()?;
    let sum = values.iter().cloned().fold(GaussianRational::zero(), |a, b| a + b);
    Some(sum.scale(&Rational::from((1, values.len() as u64))))
}

/// Whether `M(g) = 0`: exact for exact values, otherwise `|M(g)| < 2^(guard - precision)`.
pub fn has_zero_mean(g: &PeriodicFunction, ctx: &PrecisionContext) -> bool {
    match mean_value_exact(g) {
        Some(m) => m.is_zero(),
        None => abs(&mean_value(g, ctx)) < ctx.tolerance(),
    }
}

/// Splits `g` into `(g(n) + g(-n))/2` and `(g(n) - g(-n))/2`.
pub fn parity_split(g: &PeriodicFunction) -> ParitySplit {
    let m = g.period() as i64;
    let half = Rational::from((1, 2));
    match g.values() {
        Values::Exact(v) => {
            let at = |n: i64| v[n.rem_euclid(m) as usize].clone();
            let even = (0..m).map(|n| (at(n) + at(-n)).scale(&half)).collect();
            let odd = (0..m).map(|n| (at(n) - at(-n)).scale(&half)).collect();
            ParitySplit {
                even_part: PeriodicFunction::from_exact(even).unwrap(),
                odd_part: PeriodicFunction::from_exact(odd).unwrap(),
            }
        }
        Values::Approx(v) => {
            let at = |n: i64| &v[n.rem_euclid(m) as usize];
            let even = (0..m)
                .map(|n| {
                    let prec = at(n).prec();
                    Complex::with_val(prec, at(n) + at(-n)) / 2u32
                })
                .collect();
            let odd = (0..m)
                .map(|n| {
                    let prec = at(n).prec();
                    Complex::with_val(prec, at(n) - at(-n)) / 2u32
                })
                .collect();
            ParitySplit {
                even_part: PeriodicFunction::from_complex(even).unwrap(),
                odd_part: PeriodicFunction::from_complex(odd).unwrap(),
            }
        }
    }
}

/// `e^(2 pi i k / m)` for `k = 0..m`, each from its exact angle.
pub fn roots_of_unity(m: usize, ctx: &PrecisionContext) -> Vec<Complex> {
    let pi = ctx.pi();
    (0..m)
        .map(|k| {
            let angle = Float::with_val(ctx.working_bits(), &pi * (2 * k) as u64) / m as u64;
            let (s, c) = angle.sin_cos(ctx.zero());
            ctx.complex((c, s))
        })
        .collect()
}

/// Discrete Fourier coefficients `ghat(k) = (1/m) sum_j g(j) e^(-2 pi i j k / m)`.
pub fn dft(g: &PeriodicFunction, ctx: &PrecisionContext) -> Vec<Complex> {
    let m = g.period();
    let roots = roots_of_unity(m, ctx);
    let values = g.complex_values(ctx);
    (0..m)
        .map(|k| {
            let mut sum = ctx.complex_zero();
            for (j, value) in values.iter().enumerate() {
                if value.is_zero() {
                    continue;
                }
                let root = roots[(j * k) % m].clone().conj();
                sum += Complex::with_val(ctx.working_bits(), value * &root);
            }
            sum / m as u32
        })
        .collect()
}

/// Inverse of [`dft`]: `g(j) = sum_k ghat(k) e^(2 pi i j k / m)`.
pub fn inverse_dft(coefficients: &[Complex], ctx: &PrecisionContext) -> Vec<Complex> {
    let m = coefficients.len();
    let roots = roots_of_unity(m, ctx);
    (0..m)
        .map(|j| {
            let mut sum = ctx.complex_zero();
            for (k, c) in coefficients.iter().enumerate() {
                sum += Complex::with_val(ctx.working_bits(), c * &roots[(j * k) % m]);
            }
            sum
        })
        .collect()
}

pub fn abscissa_class(g: &PeriodicFunction, ctx: &PrecisionContext) -> AbscissaClass {
    if g.is_zero(ctx) {
        AbscissaClass::ZeroFunction
    } else if has_zero_mean(g, ctx) {
        AbscissaClass::Conditional
    } else {
        AbscissaClass::DivergentAt1
    }
}
