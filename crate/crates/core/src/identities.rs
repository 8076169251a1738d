//! The lemmas and theorems as numerical residuals.
//!
//! Each operation evaluates both sides of an identity independently, with tail
//! bounds on whatever had to be truncated, and returns a [`Residual`]. A residual
//! passes when `|lhs - rhs| <= 2^(guard - precision) * scale + bound`.
//!
//! The chain mirrors the derivation of the acceleration theorems:
//!
//! * [`lemma1_residual`]: the `coth` partial-fraction identity turning the
//!   `e^(2 pi k/x) - 1` series into a double sum over `1/(k^2 + n^2 x^2)`.
//! * [`lemma2_residual`]: the recurrence for `T_f(s, y) = sum k^-s f(k) / (k^2 + y^2)`.
//! * [`lemma3_residual`]: the two combined, with the `zeta(2j)` sum.
//! * [`lemma4_residual`]: the principal-value sum `sum g(k) / (y + ik)` as a `coth` sum.
//! * [`lemma5_triple`], [`lemma6_triple`]: three closed forms each for `T_g(-1, y)`
//!   (odd `g`) and `T_g(0, y)` (even `g`).
//! * [`theorem_residual`]: the theorem displays themselves. They are the last two
//!   lemmas after `x = pi / alpha`, `beta = pi x`, so those are not separate
//!   operations here.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::Float;

use crate::accel::{even_display, odd_display, AccelParams, Form};
use crate::closedform::zeta_even;
use crate::direct::{l_direct, l_direct_int, pv_sum, t_direct, Evaluation};
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::numerics::{abs, sign, Complex, PrecisionContext, Real};
use crate::periodic::{abscissa_class, mean_value, parity_split, AbscissaClass, Parity, PeriodicFunction};

const BOUND_BITS: u32 = 64;

/// `lhs` versus `rhs` with the truncation allowance `bound`.
#[derive(Debug, Clone)]
pub struct Residual {
    pub lhs: Complex,
    pub rhs: Complex,
    /// `|lhs - rhs|`
    pub residual: Real,
    /// `max(|lhs|, |rhs|, 1)`
    pub scale: Real,
    /// Sum of the tail bounds of both sides.
    pub bound: Real,
}

impl Residual {
    pub fn new(lhs: Complex, rhs: Complex, bound: Real) -> Self {
        let prec = lhs.prec().0.max(rhs.prec().0);
        let residual = abs(&Complex::with_val(prec, &lhs - &rhs));
        let scale = abs(&lhs).max(&abs(&rhs)).max(&Float::with_val(prec, 1));
        Self {
            lhs,
            rhs,
            residual,
            scale,
            bound: Float::with_val(BOUND_BITS, bound),
        }
    }

    /// `|lhs - rhs| <= 2^(guard - precision) * scale + bound`.
    pub fn passes(&self, ctx: &PrecisionContext) -> bool {
        let allowed = Float::with_val(BOUND_BITS, ctx.tolerance() * &self.scale) + &self.bound;
        self.residual <= allowed
    }

    /// `residual / scale`
    pub fn relative(&self) -> f64 {
        Float::with_val(BOUND_BITS, &self.residual / &self.scale).to_f64()
    }

    /// `bound / scale`
    pub fn relative_bound(&self) -> f64 {
        Float::with_val(BOUND_BITS, &self.bound / &self.scale).to_f64()
    }
}

fn bound(x: f64) -> Real {
    Float::with_val(BOUND_BITS, x)
}

fn positive(x: &Real, name: &str) -> Result<()> {
    if !x.is_finite() || *x <= 0 {
        return Err(Error::InvalidArgument(format!("{name} must be positive")));
    }
    Ok(())
}

fn sigma(f: &PeriodicFunction, ctx: &PrecisionContext) -> f64 {
    abscissa_class(f, ctx).abscissa()
}

/// `sum_{k<=K} |f(k)| k^-s`, for bounds only.
fn abs_weighted_sum(f: &PeriodicFunction, s: f64, k_max: u64, ctx: &PrecisionContext) -> f64 {
    let m = f.period() as u64;
    let mags: Vec<f64> = f.complex_values(ctx).iter().map(|v| abs(v).to_f64()).collect();
    (1..=k_max).map(|k| mags[(k % m) as usize] * (k as f64).powf(-s)).sum::<f64>() * (1.0 + 1e-12)
}

/// `sum_{n=1}^{N} w(n) sum_{k=1}^{K} a_k / (k^2 + n^2 x^2)`.
fn double_sum(a: &[Complex], n_max: u64, x: &Real, weight: impl Fn(u64) -> Real, ctx: &PrecisionContext) -> Complex {
    let bits = ctx.working_bits() + 16;
    let x2 = Float::with_val(bits, x.square_ref());
    let mut total = Complex::new(bits);
    for n in 1..=n_max {
        let nx2 = Float::with_val(bits, &x2 * (n * n));
        let mut inner = Complex::new(bits);
        for (i, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            let k = (i + 1) as u64;
            let d = Float::with_val(bits, &nx2 + k * k).recip();
            inner += Complex::with_val(bits, ak * &d);
        }
        total += inner * weight(n);
    }
    ctx.complex(total)
}

/// `f(k) k^-s` for `k = 1..=K`.
fn weighted_values(f: &PeriodicFunction, s: &Real, k_max: u64, ctx: &PrecisionContext) -> Vec<Complex> {
    let values = f.complex_values(ctx);
    let m = f.period() as u64;
    let neg_s = Float::with_val(ctx.working_bits(), -s);
    (1..=k_max)
        .map(|k| {
            let v = &values[(k % m) as usize];
            if v.is_zero() {
                ctx.complex_zero()
            } else {
                let p = ctx.real(k).pow(&neg_s);
                Complex::with_val(ctx.working_bits(), v * p)
            }
        })
        .collect()
}

/// `sum_{k>=1} k^(-s-1) f(k) / (e^(2 pi k/x) - 1)` with its tail bound; shared by
/// Lemmas 1 and 3.
fn coth_series(f: &PeriodicFunction, s: &Real, x: &Real, ctx: &PrecisionContext) -> (Complex, f64) {
    let bits = ctx.working_bits();
    let rate = Float::with_val(bits, ctx.pi() * 2u32) / x;
    let rate64 = rate.to_f64();
    let k_max = ((f64::from(bits) + 16.0) * std::f64::consts::LN_2 / rate64).ceil().max(1.0) as u64;
    let values = f.complex_values(ctx);
    let m = f.period() as u64;
    let exponent = Float::with_val(bits, -(Float::with_val(bits, s + 1u32)));
    let mut sum = ctx.complex_zero();
    for k in 1..=k_max {
        let v = &values[(k % m) as usize];
        if v.is_zero() {
            continue;
        }
        let e = Float::with_val(bits, &rate * k).exp_m1();
        let p = ctx.real(k).pow(&exponent);
        sum += Complex::with_val(bits, v * p) / e;
    }
    let kk = (k_max + 1) as f64;
    let tail = f.max_abs() * kk.powf(-s.to_f64() - 1.0) * (-rate64 * kk).exp() / (-(-rate64).exp_m1()).powi(2);
    (sum, tail)
}

/// The partial-fraction identity `pi x F(s+1)/2 + pi x sum k^(-s-1) f(k) / (e^(2 pi k/x) - 1)`
/// against `x^2 F(s+2)/2 + x^2 sum_n sum_k k^-s f(k) / (k^2 + n^2 x^2)`.
///
/// The double sum is cut at `k, n <= n_terms`. Tail bounds need `s > 0` (beyond the
/// lemma's own `s > sigma_f - 1`).
pub fn lemma1_residual(
    f: &PeriodicFunction,
    s: &Real,
    x: &Real,
    n_terms: u64,
    ctx: &PrecisionContext,
) -> Result<Residual> {
    positive(x, "x")?;
    let class = abscissa_class(f, ctx);
    if class == AbscissaClass::ZeroFunction {
        return Ok(Residual::new(ctx.complex_zero(), ctx.complex_zero(), bound(0.0)));
    }
    let s64 = s.to_f64();
    if s64 <= class.abscissa() - 1.0 || s64 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "lemma 1 residual needs s > max(sigma_f - 1, 0), got {s64}"
        )));
    }
    let bits = ctx.working_bits();
    let pi = ctx.pi();
    let m = f.period() as u64;
    let zero_mean = class == AbscissaClass::Conditional;
    let k_max = if zero_mean { n_terms.div_ceil(m) * m } else { n_terms };
    let n_max = n_terms.max(1);

    let f1 = l_direct(&Float::with_val(bits, s + 1u32), f, k_max, ctx)?;
    let f2 = l_direct(&Float::with_val(bits, s + 2u32), f, k_max, ctx)?;
    let (coth, coth_tail) = coth_series(f, s, x, ctx);
    let pix = Float::with_val(bits, &pi * x);
    let lhs = (Complex::with_val(bits, &f1.value / 2u32) + coth) * &pix;

    let a = weighted_values(f, s, k_max, ctx);
    let dsum = double_sum(&a, n_max, x, |_| ctx.real(1), ctx);
    let x2 = Float::with_val(bits, x.square_ref());
    let rhs = (Complex::with_val(bits, &f2.value / 2u32) + dsum) * &x2;

    let x64 = x.to_f64();
    let max_f = f.max_abs();
    let kk = (k_max + 1) as f64;
    // k > K: c(k) = sum_n 1/(k^2 + n^2 x^2) <= pi/(2 k x), and k^-s c(k) decreases
    let k_tail = if zero_mean {
        m as f64 * max_f * kk.powf(-s64) * std::f64::consts::PI / (2.0 * kk * x64)
    } else {
        max_f * std::f64::consts::PI / (2.0 * x64) * (k_max as f64).powf(-s64) / s64
    };
    // n > N for k <= K: sum_{n>N} 1/(n^2 x^2) <= 1/(N x^2)
    let n_tail = abs_weighted_sum(f, s64, k_max, ctx) / (n_max as f64 * x64 * x64);
    let lhs_bound = std::f64::consts::PI * x64 * (f1.error_bound.to_f64() / 2.0 + coth_tail);
    let rhs_bound = x64 * x64 * (k_tail + n_tail + f2.error_bound.to_f64() / 2.0);
    Ok(Residual::new(lhs, rhs, bound(lhs_bound + rhs_bound)))
}

/// The recurrence `T_f(s, y) = (-1)^q y^-2q T_f(s - 2q, y) + sum_{j=1}^q (-1)^(j+1) y^-2j F(s - 2j + 2)`.
pub fn lemma2_residual(
    f: &PeriodicFunction,
    s: &Real,
    y: &Real,
    q: u32,
    n_terms: u64,
    ctx: &PrecisionContext,
) -> Result<Residual> {
    if y.is_zero() || !y.is_finite() {
        return Err(Error::InvalidArgument("lemma 2 needs y != 0".into()));
    }
    let s64 = s.to_f64();
    if s64 <= sigma(f, ctx) + 2.0 * f64::from(q) - 2.0 {
        return Err(Error::InvalidArgument(format!(
            "lemma 2 needs s > sigma_f + 2q - 2, got s = {s64}, q = {q}"
        )));
    }
    let bits = ctx.working_bits();
    let lhs_eval = t_direct(s, y, f, n_terms, ctx)?;
    if q == 0 {
        let b = lhs_eval.error_bound.clone();
        return Ok(Residual::new(lhs_eval.value.clone(), lhs_eval.value, b));
    }
    let shifted = Float::with_val(bits, s - 2 * q);
    let t = t_direct(&shifted, y, f, n_terms, ctx)?;
    let y_inv2 = Float::with_val(bits, y.square_ref()).recip();
    let factor = Float::with_val(bits, (&y_inv2).pow(q)) * sign(i64::from(q));
    let mut rhs = t.value * &factor;
    let mut total_bound = lhs_eval.error_bound.to_f64() + t.error_bound.to_f64() * factor.to_f64().abs();
    if abscissa_class(f, ctx) != AbscissaClass::ZeroFunction {
        for j in 1..=q {
            let arg = Float::with_val(bits, s - (2 * j - 2));
            let fj = l_direct(&arg, f, n_terms, ctx)?;
            let c = Float::with_val(bits, (&y_inv2).pow(j)) * sign(i64::from(j) + 1);
            total_bound += fj.error_bound.to_f64() * c.to_f64().abs();
            rhs += fj.value * c;
        }
    }
    Ok(Residual::new(lhs_eval.value, rhs, bound(total_bound)))
}

/// The combined identity `pi x F(s+1)/2 + pi x sum n^(-s-1) f(n) / (e^(2 pi n/x) - 1)` against
/// `sum_{j=0}^q (-1)^(j+1) x^(2-2j) zeta(2j) F(s-2j+2) + (-1)^q x^(2-2q) sum_n n^-2q T_f(s-2q, nx)`.
///
/// Needs `q >= 1` and, for the tail bounds, `s - 2q > 0`.
pub fn lemma3_residual(
    f: &PeriodicFunction,
    s: &Real,
    q: u32,
    x: &Real,
    n_terms: u64,
    ctx: &PrecisionContext,
) -> Result<Residual> {
    positive(x, "x")?;
    if q == 0 {
        return Err(Error::InvalidArgument("lemma 3 needs q >= 1".into()));
    }
    let class = abscissa_class(f, ctx);
    if class == AbscissaClass::ZeroFunction {
        return Ok(Residual::new(ctx.complex_zero(), ctx.complex_zero(), bound(0.0)));
    }
    let s64 = s.to_f64();
    let shift = s64 - 2.0 * f64::from(q);
    if shift <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "lemma 3 residual needs s - 2q > 0, got s = {s64}, q = {q}"
        )));
    }
    let bits = ctx.working_bits();
    let pi = ctx.pi();
    let m = f.period() as u64;
    let zero_mean = class == AbscissaClass::Conditional;
    let k_max = if zero_mean { n_terms.div_ceil(m) * m } else { n_terms };
    let n_max = n_terms.max(1);

    let f1 = l_direct(&Float::with_val(bits, s + 1u32), f, k_max, ctx)?;
    let (coth, coth_tail) = coth_series(f, s, x, ctx);
    let pix = Float::with_val(bits, &pi * x);
    let lhs = (Complex::with_val(bits, &f1.value / 2u32) + coth) * &pix;

    let x2 = Float::with_val(bits, x.square_ref());
    let mut rhs = ctx.complex_zero();
    let mut rhs_bound = 0.0;
    for j in 0..=q {
        let arg = Float::with_val(bits, s + 2u32) - 2 * j;
        let fj = l_direct(&arg, f, k_max, ctx)?;
        let c = Float::with_val(bits, (&x2).pow(1 - j as i32)) * zeta_even(j, ctx) * sign(i64::from(j) + 1);
        rhs_bound += fj.error_bound.to_f64() * c.to_f64().abs();
        rhs += fj.value * c;
    }
    let shifted = Float::with_val(bits, s - 2 * q);
    let a = weighted_values(f, &shifted, k_max, ctx);
    let dsum = double_sum(&a, n_max, x, |n| ctx.real(n).pow(-2 * q as i32), ctx);
    let outer = Float::with_val(bits, (&x2).pow(1 - q as i32)) * sign(i64::from(q));
    rhs += dsum * &outer;

    let max_f = f.max_abs();
    let kk = (k_max + 1) as f64;
    let x64 = x.to_f64();
    // k > K in each T_f(s - 2q, n x), weighted by sum n^-2q <= 2
    let k_tail = if zero_mean {
        m as f64 * max_f * kk.powf(-shift - 2.0)
    } else {
        max_f * (k_max as f64 + 0.5).powf(-shift - 1.0) / (shift + 1.0)
    };
    // n > N: |T_f(s', y)| <= max|f| pi / (2y)
    let n_tail = max_f * std::f64::consts::PI / (2.0 * x64) * (n_max as f64).powi(-2 * q as i32) / (2.0 * f64::from(q));
    rhs_bound += outer.to_f64().abs() * (2.0 * k_tail + n_tail);
    let lhs_bound = std::f64::consts::PI * x64 * (f1.error_bound.to_f64() / 2.0 + coth_tail);
    Ok(Residual::new(lhs, rhs, bound(lhs_bound + rhs_bound)))
}

/// `coth(pi (y + ik) / m)`
fn coth_at(y: &Real, k: usize, m: usize, ctx: &PrecisionContext) -> Complex {
    let pi = ctx.pi();
    let z = ctx.complex((y.clone(), ctx.real(k as u64))) * &pi / m as u32;
    z.tanh().recip()
}

/// The principal-value identity `P.V. sum_{k != 0} g(k) / (y + ik) = -g(0)/y + (pi/m) sum_k g(k) coth(pi (y + ik) / m)`.
pub fn lemma4_residual(g: &PeriodicFunction, y: &Real, n_pairs: u64, ctx: &PrecisionContext) -> Result<Residual> {
    positive(y, "y")?;
    let lhs = pv_sum(g, y, n_pairs, ctx)?;
    let m = g.period();
    let mut sum = ctx.complex_zero();
    for (k, v) in g.complex_values(ctx).iter().enumerate() {
        if !v.is_zero() {
            sum += Complex::with_val(ctx.working_bits(), v * coth_at(y, k, m, ctx));
        }
    }
    let rhs = sum * ctx.pi() / m as u32 - g.value(0, ctx) / y;
    Ok(Residual::new(lhs.value, rhs, lhs.error_bound))
}

/// Four evaluations of the same quantity: a truncated series and three closed forms.
#[derive(Debug, Clone)]
pub struct TripleCheck {
    pub direct: Evaluation,
    pub coth: Complex,
    pub omega: Complex,
    pub real: Complex,
    /// Direct series against the `coth` form, with the series tail bound.
    pub direct_vs_coth: Residual,
    /// `coth`/`omega`, `omega`/`real` and `coth`/`real`, with zero bound.
    pub closed_pairs: [Residual; 3],
}

impl TripleCheck {
    fn new(direct: Evaluation, coth: Complex, omega: Complex, real: Complex) -> Self {
        let direct_vs_coth = Residual::new(direct.value.clone(), coth.clone(), direct.error_bound.clone());
        let closed_pairs = [
            Residual::new(coth.clone(), omega.clone(), bound(0.0)),
            Residual::new(omega.clone(), real.clone(), bound(0.0)),
            Residual::new(coth.clone(), real.clone(), bound(0.0)),
        ];
        Self {
            direct,
            coth,
            omega,
            real,
            direct_vs_coth,
            closed_pairs,
        }
    }

    pub fn passes(&self, ctx: &PrecisionContext) -> bool {
        self.direct_vs_coth.passes(ctx) && self.closed_pairs.iter().all(|r| r.passes(ctx))
    }

    /// The residual with the largest `residual / scale`.
    pub fn worst(&self) -> &Residual {
        std::iter::once(&self.direct_vs_coth)
            .chain(&self.closed_pairs)
            .max_by(|a, b| a.relative().total_cmp(&b.relative()))
            .unwrap()
    }
}

/// `(2 pi y / m, sinh^2(pi y / m))`
fn height_terms(y: &Real, m: usize, ctx: &PrecisionContext) -> (Real, Real) {
    let bits = ctx.working_bits();
    let t = Float::with_val(bits, ctx.pi() * y) / m as u32;
    let sh2 = Float::with_val(bits, t.sinh_ref()).square();
    (t * 2u32, sh2)
}

/// `sin^2(pi k / m)`
fn half_angle_sin2(k: usize, m: usize, ctx: &PrecisionContext) -> Real {
    let t = Float::with_val(ctx.working_bits(), ctx.pi() * k as u64) / m as u64;
    t.sin().square()
}

/// `1 / (e^(2 pi y/m) w^k - 1)`
fn omega_term(y2: &Real, k: usize, roots: &[Complex], ctx: &PrecisionContext) -> Complex {
    let e = Float::with_val(ctx.working_bits(), y2.exp_ref());
    (Complex::with_val(ctx.working_bits(), &roots[k] * &e) - 1u32).recip()
}

/// `T_g(-1, y) = sum k g(k) / (k^2 + y^2)` for odd `g`, directly and in its
/// `coth`, root-of-unity and real forms.
pub fn lemma5_triple(g: &PeriodicFunction, y: &Real, n_terms: u64, ctx: &PrecisionContext) -> Result<TripleCheck> {
    positive(y, "y")?;
    if !g.parity(ctx).is_odd() {
        return Err(Error::ParityMismatch("lemma 5 needs an odd g".into()));
    }
    let bits = ctx.working_bits();
    let m = g.period();
    let pi = ctx.pi();
    let direct = t_direct(&ctx.real(-1), y, g, n_terms, ctx)?;
    let roots = crate::periodic::roots_of_unity(m, ctx);
    let (y2, sh2) = height_terms(y, m, ctx);
    let values = g.complex_values(ctx);

    let mut coth = ctx.complex_zero();
    let mut omega = ctx.complex_zero();
    let mut real = ctx.complex_zero();
    for k in 1..m {
        let v = &values[k];
        if v.is_zero() {
            continue;
        }
        coth += Complex::with_val(bits, v * coth_at(y, k, m, ctx));
        omega += Complex::with_val(bits, v * omega_term(&y2, k, &roots, ctx));
        // cosh(2 pi y/m) - cos(2 pi k/m) = 2 sinh^2(pi y/m) + 2 sin^2(pi k/m)
        let d = (Float::with_val(bits, &sh2 + half_angle_sin2(k, m, ctx))) * 2u32;
        let sin = Float::with_val(bits, roots[k].imag());
        real += Complex::with_val(bits, v * sin) / d;
    }
    let coth = coth.mul_i(false) * &pi / (2 * m) as u32;
    let omega = omega.mul_i(false) * &pi / m as u32;
    let real = real * &pi / (2 * m) as u32;
    Ok(TripleCheck::new(direct, coth, omega, real))
}

/// `T_g(0, y) = sum g(k) / (k^2 + y^2)` for even `g`, directly and in its
/// `coth`, root-of-unity and `A_k(y) = e^(2 pi y/m) - cos(2 pi k/m)` forms.
pub fn lemma6_triple(g: &PeriodicFunction, y: &Real, n_terms: u64, ctx: &PrecisionContext) -> Result<TripleCheck> {
    positive(y, "y")?;
    if !g.parity(ctx).is_even() {
        return Err(Error::ParityMismatch("lemma 6 needs an even g".into()));
    }
    let bits = ctx.working_bits();
    let m = g.period();
    let pi = ctx.pi();
    let direct = t_direct(&ctx.zero(), y, g, n_terms, ctx)?;
    let roots = crate::periodic::roots_of_unity(m, ctx);
    let (y2, sh2) = height_terms(y, m, ctx);
    let values = g.complex_values(ctx);
    let neg_y2 = Float::with_val(bits, -&y2);
    let exp_neg = Float::with_val(bits, neg_y2.exp_m1_ref());

    let mut coth = ctx.complex_zero();
    let mut omega = ctx.complex_zero();
    let mut real = ctx.complex_zero();
    for (k, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        coth += Complex::with_val(bits, v * coth_at(y, k, m, ctx));
        omega += Complex::with_val(bits, v * omega_term(&y2, k, &roots, ctx));
        let s2 = half_angle_sin2(k, m, ctx);
        // A_k(-y) = e^(-2 pi y/m) - cos(2 pi k/m) = expm1(-2 pi y/m) + 2 sin^2(pi k/m)
        let a_neg = Float::with_val(bits, &s2 * 2u32) + &exp_neg;
        // A_k(y) + A_k(-y) = 4 sinh^2(pi y/m) + 4 sin^2(pi k/m)
        let a_sum = Float::with_val(bits, &sh2 + &s2) * 4u32;
        real += Complex::with_val(bits, v * a_neg) / a_sum;
    }
    let y_inv = Float::with_val(bits, y.recip_ref());
    let g0_term = g.value(0, ctx) * Float::with_val(bits, y_inv.square_ref()) / 2u32;
    let mean_term = mean_value(g, ctx) * &pi * &y_inv / 2u32;
    let pi_ym = Float::with_val(bits, &pi * &y_inv) / m as u32;

    let coth = coth * &pi_ym / 2u32 - &g0_term;
    let omega = omega * &pi_ym + &mean_term - &g0_term;
    let real = mean_term - &g0_term - real * &pi_ym;
    Ok(TripleCheck::new(direct, coth, omega, real))
}

/// Which theorem display a residual used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Display {
    /// Odd `g`, unknown `L(2q, g)`.
    Odd,
    /// Even `g`, unknown `L(2q+1, g)`.
    Even,
}

/// The applicable theorem display, with the unknown `L` value (and `zeta(2q+1)`
/// where it appears) taken from direct summation with `oracle_terms` terms.
pub fn theorem_residual(
    g: &PeriodicFunction,
    q: u32,
    params: &AccelParams,
    form: Form,
    oracle_terms: u64,
    ctx: &PrecisionContext,
) -> Result<Residual> {
    let display = match g.parity(ctx) {
        Parity::Odd => Display::Odd,
        Parity::Even => Display::Even,
        Parity::Zero if q >= 1 => Display::Odd,
        Parity::Zero => Display::Even,
        Parity::Neither => {
            return Err(Error::ParityMismatch("the theorem displays need g even or odd".into()));
        }
    };
    let bits = ctx.working_bits();
    let (parts, l_eval, zeta_bound) = match display {
        Display::Odd => {
            let parts = odd_display(q, g, params, &[form], ctx)?;
            (parts, l_direct_int(2 * q, g, oracle_terms, ctx)?, 0.0)
        }
        Display::Even => {
            let class = abscissa_class(g, ctx);
            if q == 0 && class == AbscissaClass::DivergentAt1 {
                return Err(Error::InvalidArgument("q = 0 is only admissible when M(g) = 0".into()));
            }
            let zeta = if class == AbscissaClass::DivergentAt1 {
                Some(l_direct_int(2 * q + 1, &PeriodicFunction::one(), oracle_terms, ctx)?)
            } else {
                None
            };
            let parts = even_display(q, g, params, &[form], zeta.as_ref().map(|z| &z.value), ctx)?;
            let l = if class == AbscissaClass::ZeroFunction {
                l_direct_int(2 * q + 1, g, 1, ctx)?
            } else {
                l_direct_int(2 * q + 1, g, oracle_terms, ctx)?
            };
            // the zeta value enters the right side as (-beta)^-q M(g) zeta / 2
            let zb = zeta.map_or(0.0, |z| {
                let mean = abs(&mean_value(g, ctx)).to_f64();
                let beta_q = Float::with_val(bits, (&params.beta).pow(-(q as i32))).to_f64();
                z.error_bound.to_f64() * mean * beta_q / 2.0
            });
            (parts, l, zb)
        }
    };
    let lhs = parts.lhs(&l_eval.value);
    let rhs = parts.rhs[0].clone();
    let l_bound = l_eval.error_bound.to_f64() / 2.0 / parts.lift.to_f64();
    Ok(Residual::new(lhs, rhs, bound(l_bound + zeta_bound)))
}

/// One line of a verification suite.
#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub id: String,
    pub relative_residual: f64,
    pub relative_bound: f64,
    pub passed: bool,
}

impl CaseOutcome {
    fn from_residual(id: String, r: &Residual, ctx: &PrecisionContext) -> Self {
        Self {
            id,
            relative_residual: r.relative(),
            relative_bound: r.relative_bound(),
            passed: r.passes(ctx),
        }
    }

    fn from_triple(id: String, t: &TripleCheck, ctx: &PrecisionContext) -> Self {
        let worst = t.worst();
        Self {
            id,
            relative_residual: worst.relative(),
            relative_bound: t.direct_vs_coth.relative_bound(),
            passed: t.passes(ctx),
        }
    }

    fn failed(id: String, err: &Error) -> Self {
        Self {
            id: format!("{id} error={err}"),
            relative_residual: f64::NAN,
            relative_bound: f64::NAN,
            passed: false,
        }
    }
}

/// Random exact coefficients drawn from `{0, +-1, +-2, +-i}`.
pub fn random_function(rng: &mut impl Rng, m: usize) -> PeriodicFunction {
    let choices = [
        GaussianRational::zero(),
        GaussianRational::real(1),
        GaussianRational::real(-1),
        GaussianRational::real(2),
        GaussianRational::real(-2),
        GaussianRational::i(),
        -GaussianRational::i(),
    ];
    let values = (0..m).map(|_| choices.choose(rng).unwrap().clone()).collect();
    PeriodicFunction::from_exact(values).unwrap()
}

fn case_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

const HEIGHTS: [f64; 3] = [0.3, 1.0, 4.0];

fn describe(g: &PeriodicFunction) -> String {
    match g.exact_values() {
        Some(v) => v.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(","),
        None => format!("m={}", g.period()),
    }
}

/// Lemmas 1 through 6 on `trials` random cases each; six outcomes per trial.
pub fn lemma_suite(trials: u64, seed: u64, ctx: &PrecisionContext) -> Vec<CaseOutcome> {
    let mut out = Vec::with_capacity(6 * trials as usize);
    for trial in 0..trials {
        let mut rng = case_rng(seed, trial);
        let m = rng.gen_range(1..=8usize);
        let g = random_function(&mut rng, m);
        let split = parity_split(&g);
        let y = ctx.real(*HEIGHTS.choose(&mut rng).unwrap());
        let x = ctx.real(*[0.5, 1.0, 2.0].choose(&mut rng).unwrap());
        let q = rng.gen_range(0..=4u32);
        let sig = sigma(&g, ctx).max(0.0);
        let delta = *[0.5, 1.5, 3.0].choose(&mut rng).unwrap();
        let gs = format!("g=[{}]", describe(&g));

        let s1 = ctx.real(sig.max(0.0) + delta);
        let id = format!("lemma1 trial={trial} {gs} s={} x={}", s1.to_f64(), x.to_f64());
        out.push(outcome(id, lemma1_residual(&g, &s1, &x, 160, ctx), ctx));

        let s2 = ctx.real(sig + 2.0 * f64::from(q) - 2.0 + delta);
        let id = format!("lemma2 trial={trial} {gs} s={} y={} q={q}", s2.to_f64(), y.to_f64());
        out.push(outcome(id, lemma2_residual(&g, &s2, &y, q, 4000, ctx), ctx));

        let q3 = q.max(1);
        let s3 = ctx.real(2.0 * f64::from(q3) + delta);
        let id = format!("lemma3 trial={trial} {gs} s={} q={q3} x={}", s3.to_f64(), x.to_f64());
        out.push(outcome(id, lemma3_residual(&g, &s3, q3, &x, 120, ctx), ctx));

        let id = format!("lemma4 trial={trial} {gs} y={}", y.to_f64());
        out.push(outcome(id, lemma4_residual(&g, &y, 4000, ctx), ctx));

        let id = format!("lemma5 trial={trial} g=[{}] y={}", describe(&split.odd_part), y.to_f64());
        out.push(match lemma5_triple(&split.odd_part, &y, 4000, ctx) {
            Ok(t) => CaseOutcome::from_triple(id, &t, ctx),
            Err(e) => CaseOutcome::failed(id, &e),
        });

        let id = format!("lemma6 trial={trial} g=[{}] y={}", describe(&split.even_part), y.to_f64());
        out.push(match lemma6_triple(&split.even_part, &y, 4000, ctx) {
            Ok(t) => CaseOutcome::from_triple(id, &t, ctx),
            Err(e) => CaseOutcome::failed(id, &e),
        });
    }
    out
}

fn outcome(id: String, r: Result<Residual>, ctx: &PrecisionContext) -> CaseOutcome {
    match r {
        Ok(r) => CaseOutcome::from_residual(id, &r, ctx),
        Err(e) => CaseOutcome::failed(id, &e),
    }
}

/// Oracle length used by [`theorem_suite`].
pub const THEOREM_ORACLE_TERMS: u64 = 4000;

/// The four theorem displays (odd/even `g`, complex/real form) on `trials` random
/// cases each.
pub fn theorem_suite(trials: u64, seed: u64, ctx: &PrecisionContext) -> Vec<CaseOutcome> {
    let mut out = Vec::with_capacity(4 * trials as usize);
    for trial in 0..trials {
        let mut rng = case_rng(seed ^ 0x5448_454f_5245_4d53, trial);
        let m = rng.gen_range(1..=8usize);
        let g = random_function(&mut rng, m);
        let split = parity_split(&g);
        let q = rng.gen_range(0..=4u32);
        let alpha = match rng.gen_range(0..3) {
            0 => ctx.pi() / ctx.real(m).sqrt(),
            1 => ctx.pi(),
            _ => ctx.real(2.5),
        };
        let params = AccelParams::from_alpha(alpha, ctx).unwrap();
        let a64 = params.alpha.to_f64();
        for (display, part) in [("odd", &split.odd_part), ("even", &split.even_part)] {
            // q = 0 is admissible only for zero-mean even g
            let q = match display {
                "odd" => q.max(1),
                _ if q == 0 && abscissa_class(part, ctx) == AbscissaClass::DivergentAt1 => 1,
                _ => q,
            };
            for (form, name) in [(Form::Complex, "complex"), (Form::Real, "real")] {
                let id = format!(
                    "theorem-{display}-{name} trial={trial} g=[{}] q={q} alpha={a64:.6}",
                    describe(part)
                );
                let r = theorem_residual(part, q, &params, form, THEOREM_ORACLE_TERMS, ctx);
                out.push(outcome(id, r, ctx));
            }
        }
    }
    out
}
