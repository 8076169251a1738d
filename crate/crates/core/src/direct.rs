//! Direct summation with explicit tail bounds.
//!
//! These routines are the ground truth the accelerated formulas are checked
//! against, so they use nothing but truncated partial sums and elementary bounds on
//! the remainder. Sums are accumulated per residue class modulo the period in
//! ascending order, with `ceil(log2 N) + 2` extra bits in each accumulator.
//!
//! When the coefficients have zero mean the truncation point is rounded up to a
//! whole number of periods, and the remainder is bounded by Abel summation: the
//! partial sums of `g` over any run starting at a period boundary are at most
//! `m * max|g|`, so `|sum_{n>N} g(n) h(n)| <= m * max|g| * h(N+1)` for decreasing `h`.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{abs, Complex, PrecisionContext, Real};
use crate::periodic::{abscissa_class, has_zero_mean, parity_split, AbscissaClass, PeriodicFunction};

const BOUND_BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Rigorous,
    Heuristic,
}

/// A truncated sum together with a bound on its distance from the full series.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: Complex,
    pub error_bound: Real,
    pub bound_kind: BoundKind,
    pub terms_used: u64,
}

impl Evaluation {
    fn exact_zero(ctx: &PrecisionContext) -> Self {
        Self {
            value: ctx.complex_zero(),
            error_bound: Float::new(BOUND_BITS),
            bound_kind: BoundKind::Rigorous,
            terms_used: 0,
        }
    }

    /// Whether `other` lies within `error_bound + slack` of this value.
    pub fn agrees_with(&self, other: &Complex, slack: &Real) -> bool {
        let prec = self.value.prec().0;
        let diff = abs(&Complex::with_val(prec, &self.value - other));
        diff <= Float::with_val(prec, &self.error_bound + slack)
    }
}

/// `n^(-s)`, using integer powers when `s` is an integer.
fn inv_power(n: u64, s: &Real, prec: u32) -> Float {
    let base = Float::with_val(prec, n);
    match integer_exponent(s) {
        Some(k) => base.pow(-k),
        None => base.pow(Float::with_val(prec, -s)),
    }
}

fn integer_exponent(s: &Real) -> Option<i32> {
    if s.is_integer() {
        s.to_i32_saturating().filter(|k| k.unsigned_abs() < (1 << 30))
    } else {
        None
    }
}

fn accumulator_bits(ctx: &PrecisionContext, n: u64) -> u32 {
    ctx.working_bits() + 64 - n.max(1).leading_zeros() + 2
}

fn bound(value: f64) -> Real {
    Float::with_val(BOUND_BITS, value)
}

/// Rounding allowance for `n` accumulated terms each at most `max_term` in size.
fn rounding_allowance(n: u64, max_term: f64, ctx: &PrecisionContext) -> Real {
    let mut r = bound(n as f64 * max_term.max(1.0));
    r <<= -(ctx.working_bits() as i32) + 2;
    r
}

/// Rounds `n` up to a multiple of `m`.
fn whole_periods(n: u64, m: u64) -> u64 {
    n.div_ceil(m) * m
}

/// Direct partial sum of `L(s, g) = sum_{n>=1} g(n) n^-s`.
///
/// For `s > 1` the tail is bounded by `max|g| (N+1/2)^(1-s) / (s-1)`, the midpoint
/// integral bound for a convex summand. For zero-mean `g`
/// the sum runs over whole periods and the Abel bound `m max|g| (N+1)^-s` is also
/// available; the smaller of the applicable bounds is reported.
pub fn l_direct(s: &Real, g: &PeriodicFunction, n_terms: u64, ctx: &PrecisionContext) -> Result<Evaluation> {
    if *s <= 0 {
        return Err(Error::InvalidArgument(format!("s must be positive, got {}", s.to_f64())));
    }
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be at least 1".into()));
    }
    let class = abscissa_class(g, ctx);
    if class == AbscissaClass::ZeroFunction {
        return Ok(Evaluation::exact_zero(ctx));
    }
    if class == AbscissaClass::DivergentAt1 && *s <= 1 {
        return Err(Error::DivergentSeries(format!(
            "L(s, g) diverges for s = {} <= 1 when M(g) != 0",
            s.to_f64()
        )));
    }
    let m = g.period() as u64;
    let zero_mean = class == AbscissaClass::Conditional;
    let n = if zero_mean { whole_periods(n_terms, m) } else { n_terms };

    let values = g.complex_values(ctx);
    let nonzero: Vec<bool> = values.iter().map(|v| !v.is_zero()).collect();
    let prec = accumulator_bits(ctx, n);
    let mut acc: Vec<Float> = (0..m).map(|_| Float::new(prec)).collect();
    for k in 1..=n {
        let r = (k % m) as usize;
        if nonzero[r] {
            acc[r] += inv_power(k, s, prec);
        }
    }
    let mut value = ctx.complex_zero();
    for (v, a) in values.iter().zip(&acc) {
        if !v.is_zero() {
            value += Complex::with_val(ctx.working_bits(), v * a);
        }
    }

    let max_g = g.max_abs();
    let s64 = s.to_f64();
    let mut tail = f64::INFINITY;
    if s64 > 1.0 {
        tail = max_g * (n as f64 + 0.5).powf(1.0 - s64) / (s64 - 1.0);
    }
    if zero_mean {
        tail = tail.min(m as f64 * max_g * ((n + 1) as f64).powf(-s64));
    }
    let error_bound = bound(tail) + rounding_allowance(n, max_g, ctx);
    Ok(Evaluation {
        value,
        error_bound,
        bound_kind: BoundKind::Rigorous,
        terms_used: n,
    })
}

/// [`l_direct`] for an integer argument.
pub fn l_direct_int(s: u32, g: &PeriodicFunction, n_terms: u64, ctx: &PrecisionContext) -> Result<Evaluation> {
    l_direct(&ctx.real(s), g, n_terms, ctx)
}

/// Direct partial sum of `T_f(s, y) = sum_{k>=1} k^-s f(k) / (k^2 + y^2)`.
pub fn t_direct(
    s: &Real,
    y: &Real,
    f: &PeriodicFunction,
    n_terms: u64,
    ctx: &PrecisionContext,
) -> Result<Evaluation> {
    let class = abscissa_class(f, ctx);
    if class == AbscissaClass::ZeroFunction {
        return Ok(Evaluation::exact_zero(ctx));
    }
    let s64 = s.to_f64();
    if s64 <= class.abscissa() - 2.0 {
        return Err(Error::InvalidArgument(format!(
            "T_f(s, y) requires s > sigma_f - 2 = {}, got s = {s64}",
            class.abscissa() - 2.0
        )));
    }
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be at least 1".into()));
    }
    let m = f.period() as u64;
    let zero_mean = class == AbscissaClass::Conditional;
    let y64 = y.to_f64().abs();
    let mut n = n_terms;
    if zero_mean {
        // h(k) = k^-s / (k^2 + y^2) is decreasing once k exceeds this point
        let monotone_from = if s64 >= 0.0 {
            0.0
        } else {
            y64 * (-s64 / (s64 + 2.0)).sqrt()
        };
        n = whole_periods(n.max(monotone_from.ceil() as u64), m);
    }

    let values = f.complex_values(ctx);
    let prec = accumulator_bits(ctx, n);
    let y2 = Float::with_val(prec, y.square_ref());
    let mut acc: Vec<Float> = (0..m).map(|_| Float::new(prec)).collect();
    for k in 1..=n {
        let r = (k % m) as usize;
        if values[r].is_zero() {
            continue;
        }
        let denom = Float::with_val(prec, &y2 + k * k);
        acc[r] += inv_power(k, s, prec) / denom;
    }
    let mut value = ctx.complex_zero();
    for (v, a) in values.iter().zip(&acc) {
        if !v.is_zero() {
            value += Complex::with_val(ctx.working_bits(), v * a);
        }
    }

    let max_f = f.max_abs();
    let mut tail = f64::INFINITY;
    if s64 > -1.0 {
        tail = max_f * (n as f64 + 0.5).powf(-s64 - 1.0) / (s64 + 1.0);
    }
    if zero_mean {
        let k = (n + 1) as f64;
        tail = tail.min(m as f64 * max_f * k.powf(-s64) / (k * k + y64 * y64));
    }
    let max_term = if s64 >= 0.0 { max_f } else { max_f * (n as f64).powf(-s64) };
    let error_bound = bound(tail) + rounding_allowance(n, max_term, ctx);
    Ok(Evaluation {
        value,
        error_bound,
        bound_kind: BoundKind::Rigorous,
        terms_used: n,
    })
}

/// Symmetric partial sum `sum_{0 < |k| <= N} g(k) / (y + i k)`, taken in pairs `(k, -k)`.
///
/// Each pair equals `(2 y g_even(k) - 2 i k g_odd(k)) / (y^2 + k^2)`. The even part's
/// tail is bounded by `2 y max|g_even| / N`; the odd part has zero mean, so its tail
/// gets the Abel bound with `h(k) = 2k / (y^2 + k^2)`, decreasing for `k >= y`.
pub fn pv_sum(g: &PeriodicFunction, y: &Real, n_pairs: u64, ctx: &PrecisionContext) -> Result<Evaluation> {
    if *y <= 0 {
        return Err(Error::InvalidArgument("pv_sum requires y > 0".into()));
    }
    if n_pairs == 0 {
        return Err(Error::InvalidArgument("n_pairs must be at least 1".into()));
    }
    if g.is_zero(ctx) {
        return Ok(Evaluation::exact_zero(ctx));
    }
    let m = g.period() as u64;
    let y64 = y.to_f64();
    let n = whole_periods(n_pairs.max(y64.ceil() as u64), m);
    let split = parity_split(g);
    let even = split.even_part.complex_values(ctx);
    let odd = split.odd_part.complex_values(ctx);

    let prec = accumulator_bits(ctx, n);
    let y2 = Float::with_val(prec, y.square_ref());
    let mut even_acc: Vec<Float> = (0..m).map(|_| Float::new(prec)).collect();
    let mut odd_acc: Vec<Float> = (0..m).map(|_| Float::new(prec)).collect();
    for k in 1..=n {
        let r = (k % m) as usize;
        let denom = Float::with_val(prec, &y2 + k * k);
        if !even[r].is_zero() {
            even_acc[r] += Float::with_val(prec, denom.recip_ref());
        }
        if !odd[r].is_zero() {
            odd_acc[r] += Float::with_val(prec, k) / &denom;
        }
    }
    let two_y = Float::with_val(ctx.working_bits(), y * 2u32);
    let mut value = ctx.complex_zero();
    for r in 0..m as usize {
        if !even[r].is_zero() {
            value += Complex::with_val(ctx.working_bits(), &even[r] * &even_acc[r]) * &two_y;
        }
        if !odd[r].is_zero() {
            let t = Complex::with_val(ctx.working_bits(), &odd[r] * &odd_acc[r]) * 2u32;
            value -= t.mul_i(false);
        }
    }

    let k = (n + 1) as f64;
    let max_even = split.even_part.max_abs();
    let max_odd = split.odd_part.max_abs();
    let mut even_tail = 2.0 * y64 * max_even / n as f64;
    if has_zero_mean(&split.even_part, ctx) {
        even_tail = even_tail.min(m as f64 * max_even * 2.0 * y64 / (y64 * y64 + k * k));
    }
    let odd_tail = m as f64 * max_odd * 2.0 * k / (y64 * y64 + k * k);
    let error_bound = bound(even_tail + odd_tail) + rounding_allowance(n, g.max_abs(), ctx);
    Ok(Evaluation {
        value,
        error_bound,
        bound_kind: BoundKind::Rigorous,
        terms_used: n,
    })
}
