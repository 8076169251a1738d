//! Series acceleration for `L(s, g)` at positive integers.
//!
//! For `s` whose parity differs from that of `g` there is no closed form, and the
//! acceleration theorems are solved for the unknown value instead. With `alpha *
//! beta = pi^2`, an odd `g` satisfies
//!
//! ```text
//! alpha^(1/2-q) { L(2q, g)/2 + sum n^-2q g(n) / (e^(2n alpha) - 1) } = R + J
//! ```
//!
//! where `J` is a finite combination of closed-form values and `R` is a series in
//! `e^(-2n beta/m)`, given either with roots of unity ([`Route::Complex`]) or in
//! paired real form ([`Route::Real`]). Even `g` is analogous at `2q+1`, with an extra
//! `M(g) zeta(2q+1)` term that is itself computed by [`ramanujan_zeta`].
//!
//! Every infinite series is truncated independently at the first `N` whose tail
//! bound `C (N+1)^-a e^(-c(N+1)) / (1 - e^-c)^2` drops below `2^-(working bits)`
//! divided by the number of series in the formula.

use rug::ops::Pow;
use rug::Float;

use crate::closedform::{l_closed_complex, zeta_even};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, bernoulli_polynomial, euler_number, factorial, Rational};
use crate::numerics::{abs, sign, Complex, PrecisionContext, Real};
use crate::periodic::{has_zero_mean, mean_value, parity_split, roots_of_unity, PeriodicFunction};

/// Free parameters of the acceleration formulas: `alpha * beta = pi^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AccelParams {
    pub alpha: Real,
    pub beta: Real,
    /// Terms per series; 0 picks the truncation automatically.
    pub n_terms: u64,
}

impl AccelParams {
    pub fn from_alpha(alpha: Real, ctx: &PrecisionContext) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0 {
            return Err(Error::InvalidArgument("alpha must be positive and finite".into()));
        }
        let alpha = ctx.real(alpha);
        let beta = Float::with_val(ctx.working_bits(), ctx.pi().square() / &alpha);
        Ok(Self { alpha, beta, n_terms: 0 })
    }

    /// `alpha = pi / x`, `beta = pi x`, the substitution relating the theorems to
    /// the lemmas.
    pub fn from_x(x: &Real, ctx: &PrecisionContext) -> Result<Self> {
        if !x.is_finite() || *x <= 0 {
            return Err(Error::InvalidArgument("x must be positive and finite".into()));
        }
        let pi = ctx.pi();
        Ok(Self {
            alpha: Float::with_val(ctx.working_bits(), &pi / x),
            beta: Float::with_val(ctx.working_bits(), &pi * x),
            n_terms: 0,
        })
    }

    /// `alpha = pi / sqrt(m)`, which balances the decay of the two sides.
    pub fn balanced(m: usize, ctx: &PrecisionContext) -> Self {
        let alpha = ctx.pi() / ctx.real(m).sqrt();
        Self::from_alpha(alpha, ctx).unwrap()
    }

    /// Default for [`ramanujan_zeta`]: `alpha = pi` for odd `q`, `pi/2` for even `q`
    /// (where `alpha = beta` makes the formula singular).
    pub fn ramanujan_default(q: u32, ctx: &PrecisionContext) -> Self {
        let alpha = if q % 2 == 1 { ctx.pi() } else { ctx.pi() / 2u32 };
        Self::from_alpha(alpha, ctx).unwrap()
    }

    pub fn with_terms(mut self, n_terms: u64) -> Self {
        self.n_terms = n_terms;
        self
    }

    /// Exchanges `alpha` and `beta`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            n_terms: self.n_terms,
        }
    }
}

/// Which form of the acceleration theorem to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Real form for real-valued `g`, root-of-unity form otherwise.
    #[default]
    Auto,
    Complex,
    Real,
    /// Both forms; the report carries their difference.
    Both,
}

/// Truncation record for one infinite series.
#[derive(Debug, Clone)]
pub struct SeriesTrace {
    pub label: String,
    pub terms: u64,
    /// `|t_(N+1)|`, the first term left out.
    pub first_discarded: Real,
}

#[derive(Debug, Clone)]
pub struct MethodReport {
    pub value: Complex,
    /// Total number of summands over all series.
    pub terms_used: u64,
    pub params: AccelParams,
    /// `|route1 - route2|` when both theorem forms were evaluated.
    pub residual_check: Option<Real>,
    pub series: Vec<SeriesTrace>,
}

impl MethodReport {
    fn absorb(&mut self, other: MethodReport) {
        self.terms_used += other.terms_used;
        self.series.extend(other.series);
        self.residual_check = match (self.residual_check.take(), other.residual_check) {
            (Some(a), Some(b)) => Some(a.max(&b)),
            (a, b) => a.or(b),
        };
    }
}

/// Term bound `scale * n^-power * e^(-rate n)`.
#[derive(Debug, Clone, Copy)]
struct TermBound {
    scale: f64,
    power: f64,
    rate: f64,
}

impl TermBound {
    /// Callers clamp a weight to at least 1 before applying a form's constant
    /// multiplier, so each raw series is itself truncated below the target.
    fn new(scale: f64, power: f64, rate: f64) -> Self {
        Self {
            scale: scale.max(1.0),
            power,
            rate,
        }
    }

    /// `ln` of the bound on `sum_{n >= first} |t_n|`.
    fn ln_tail(&self, first: u64) -> f64 {
        let n = first as f64;
        let denom = -(-self.rate).exp_m1();
        self.scale.ln() - self.power * n.ln() - self.rate * n - 2.0 * denom.ln()
    }
}

const MAX_TERMS: u64 = 50_000_000;

/// Truncation bookkeeping shared by the series of one formula.
struct Tracker<'c> {
    ctx: &'c PrecisionContext,
    n_override: u64,
    target_ln: f64,
    terms_used: u64,
    traces: Vec<SeriesTrace>,
}

impl<'c> Tracker<'c> {
    fn new(ctx: &'c PrecisionContext, n_override: u64, num_series: usize) -> Self {
        let target_ln = -f64::from(ctx.working_bits()) * std::f64::consts::LN_2 - (num_series.max(1) as f64).ln();
        Self {
            ctx,
            n_override,
            target_ln,
            terms_used: 0,
            traces: Vec::new(),
        }
    }

    fn truncation(&self, bound: TermBound) -> Result<u64> {
        if self.n_override > 0 {
            return Ok(self.n_override);
        }
        if !(bound.rate > 0.0) {
            return Err(Error::DegenerateParameters("series does not decay".into()));
        }
        // ln_tail is decreasing; bracket then bisect
        let mut hi = 1u64;
        while bound.ln_tail(hi + 1) >= self.target_ln {
            hi *= 2;
            if hi > MAX_TERMS {
                return Err(Error::DegenerateParameters(format!(
                    "series decays too slowly (rate {})",
                    bound.rate
                )));
            }
        }
        let mut lo = hi / 2;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if bound.ln_tail(mid + 1) < self.target_ln {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Sums `f(1) + ... + f(N)` and records `|f(N+1)|`.
    fn sum(&mut self, label: impl Into<String>, bound: TermBound, mut f: impl FnMut(u64) -> Complex) -> Result<Complex> {
        let n = self.truncation(bound)?;
        let mut acc = Complex::new(self.ctx.working_bits() + 16);
        for k in 1..=n {
            acc += f(k);
        }
        let next = abs(&f(n + 1));
        self.record(label, n, next);
        Ok(self.ctx.complex(acc))
    }

    fn record(&mut self, label: impl Into<String>, n: u64, first_discarded: Real) {
        self.terms_used += n;
        self.traces.push(SeriesTrace {
            label: label.into(),
            terms: n,
            first_discarded: Float::with_val(64, first_discarded),
        });
    }

    fn report(self, value: Complex, params: &AccelParams) -> MethodReport {
        MethodReport {
            value,
            terms_used: self.terms_used,
            params: params.clone(),
            residual_check: None,
            series: self.traces,
        }
    }
}

fn powi(x: &Real, k: i32) -> Real {
    Float::with_val(x.prec(), x.pow(k))
}

fn inv_power(n: u64, k: u32, ctx: &PrecisionContext) -> Real {
    ctx.real(n).pow(-(k as i32))
}

/// `B_n / n!`.
fn bernoulli_over_factorial(n: u32) -> Rational {
    bernoulli_number(n as usize) / Rational::from(factorial(n))
}

fn f64_of(x: &Real) -> f64 {
    x.to_f64()
}

fn check_q(q: u32, min: u32) -> Result<()> {
    if q < min {
        return Err(Error::InvalidArgument(format!("q must be at least {min}, got {q}")));
    }
    Ok(())
}

fn resolve_route(route: Route, g: &PeriodicFunction, ctx: &PrecisionContext) -> Route {
    match route {
        Route::Auto if g.is_real_valued(ctx) => Route::Real,
        Route::Auto => Route::Complex,
        other => other,
    }
}

/// `sum_n n^-a g(n) / (e^(2n alpha) - 1)`, the series on the left of both theorems.
fn lhs_series(
    tracker: &mut Tracker,
    a: u32,
    g: &PeriodicFunction,
    params: &AccelParams,
    scale: f64,
) -> Result<Complex> {
    let ctx = tracker.ctx;
    let values = g.complex_values(ctx);
    let m = g.period() as u64;
    let two_alpha = Float::with_val(ctx.working_bits(), &params.alpha * 2u32);
    let bound = TermBound::new(scale * g.max_abs(), f64::from(a), f64_of(&two_alpha));
    tracker.sum("lhs", bound, |n| {
        let v = &values[(n % m) as usize];
        if v.is_zero() {
            return ctx.complex_zero();
        }
        let e = Float::with_val(ctx.working_bits(), &two_alpha * n).exp_m1();
        Complex::with_val(ctx.working_bits(), v * inv_power(n, a, ctx)) / e
    })
}

/// Cancellation-free `cosh x - cos theta = 2 sinh^2(x/2) + 2 sin^2(theta/2)`.
fn cosh_minus_cos(x: &Real, half_theta_sin2: &Real) -> Real {
    let sh = Float::with_val(x.prec(), x / 2u32).sinh().square();
    (sh + half_theta_sin2) * 2u32
}

struct Angles {
    sin: Vec<Real>,
    /// `sin^2(theta_k / 2)`
    half_sin2: Vec<Real>,
    roots: Vec<Complex>,
}

fn angles(m: usize, ctx: &PrecisionContext) -> Angles {
    let roots = roots_of_unity(m, ctx);
    let pi = ctx.pi();
    let half_sin2 = (0..m)
        .map(|k| {
            let half = Float::with_val(ctx.working_bits(), &pi * k as u64) / m as u64;
            half.sin().square()
        })
        .collect();
    Angles {
        sin: roots.iter().map(|r| ctx.real(r.imag())).collect(),
        half_sin2,
        roots,
    }
}

/// `1 / (e^x w - 1)` for a root of unity `w`.
fn inv_exp_root_minus_one(x: &Real, k: usize, ang: &Angles, ctx: &PrecisionContext) -> Complex {
    if k == 0 {
        return ctx.complex(Float::with_val(ctx.working_bits(), x.exp_m1_ref()).recip());
    }
    let e = Float::with_val(ctx.working_bits(), x.exp_ref());
    let z = Complex::with_val(ctx.working_bits(), &ang.roots[k] * &e) - 1u32;
    z.recip()
}

/// Theorem-1 right-hand series for odd `g`, without the `(-1)^q beta^(1/2-q)` factor:
/// `(i/m) sum_{k=1}^{m-1} g(k) sum_n n^-2q / (e^(2n beta/m) w^k - 1)`.
fn odd_rhs_complex(tracker: &mut Tracker, q: u32, g: &PeriodicFunction, params: &AccelParams, scale: f64) -> Result<Complex> {
    let ctx = tracker.ctx;
    let m = g.period();
    let ang = angles(m, ctx);
    let step = Float::with_val(ctx.working_bits(), &params.beta * 2u32) / m as u64;
    let bound = TermBound::new(scale, f64::from(2 * q), f64_of(&step));
    let mut total = ctx.complex_zero();
    for k in 1..m {
        let gk = g.value(k as i64, ctx);
        if gk.is_zero() {
            continue;
        }
        let inner = tracker.sum(format!("rhs k={k}"), bound, |n| {
            let x = Float::with_val(ctx.working_bits(), &step * n);
            inv_exp_root_minus_one(&x, k, &ang, ctx) * inv_power(n, 2 * q, ctx)
        })?;
        total += inner * gk;
    }
    Ok(total.mul_i(false) / m as u32)
}

/// Theorem-2 right-hand series for odd `g`, without the `(-1)^q beta^(1/2-q)` factor:
/// `(1/2m) sum_k g(k) sin(theta_k) sum_n n^-2q / (cosh(2n beta/m) - cos theta_k)`.
fn odd_rhs_real(tracker: &mut Tracker, q: u32, g: &PeriodicFunction, params: &AccelParams, scale: f64) -> Result<Complex> {
    let ctx = tracker.ctx;
    let m = g.period();
    let ang = angles(m, ctx);
    let step = Float::with_val(ctx.working_bits(), &params.beta * 2u32) / m as u64;
    let bound = TermBound::new(2.0 * scale.max(1.0), f64::from(2 * q), f64_of(&step));
    let mut total = ctx.complex_zero();
    for k in 1..m {
        let gk = g.value(k as i64, ctx);
        if gk.is_zero() || ang.sin[k].is_zero() {
            continue;
        }
        let inner = tracker.sum(format!("rhs k={k}"), bound, |n| {
            let x = Float::with_val(ctx.working_bits(), &step * n);
            let d = cosh_minus_cos(&x, &ang.half_sin2[k]);
            ctx.complex(inv_power(n, 2 * q, ctx) / d)
        })?;
        total += inner * gk * &ang.sin[k];
    }
    Ok(total / (2 * m) as u32)
}

/// Theorem-1 right-hand series for even `g`, without the `(-beta)^-q` factor:
/// `(1/m) sum_{k=0}^{m-1} g(k) sum_n n^(-2q-1) / (e^(2n beta/m) w^k - 1)`.
fn even_rhs_complex(tracker: &mut Tracker, q: u32, g: &PeriodicFunction, params: &AccelParams, scale: f64) -> Result<Complex> {
    let ctx = tracker.ctx;
    let m = g.period();
    let ang = angles(m, ctx);
    let step = Float::with_val(ctx.working_bits(), &params.beta * 2u32) / m as u64;
    let bound = TermBound::new(scale, f64::from(2 * q + 1), f64_of(&step));
    let mut total = ctx.complex_zero();
    for k in 0..m {
        let gk = g.value(k as i64, ctx);
        if gk.is_zero() {
            continue;
        }
        let inner = tracker.sum(format!("rhs k={k}"), bound, |n| {
            let x = Float::with_val(ctx.working_bits(), &step * n);
            inv_exp_root_minus_one(&x, k, &ang, ctx) * inv_power(n, 2 * q + 1, ctx)
        })?;
        total += inner * gk;
    }
    Ok(total / m as u32)
}

/// Theorem-2 right-hand series for even `g`, without the `(-beta)^-q` factor:
/// `(1/2m) sum_k g(k) sum_n n^(-2q-1) (cos theta_k - e^-x) / (cosh x - cos theta_k)`.
fn even_rhs_real(tracker: &mut Tracker, q: u32, g: &PeriodicFunction, params: &AccelParams, scale: f64) -> Result<Complex> {
    let ctx = tracker.ctx;
    let m = g.period();
    let ang = angles(m, ctx);
    let step = Float::with_val(ctx.working_bits(), &params.beta * 2u32) / m as u64;
    let bound = TermBound::new(4.0 * scale.max(1.0), f64::from(2 * q + 1), f64_of(&step));
    let mut total = ctx.complex_zero();
    for k in 0..m {
        let gk = g.value(k as i64, ctx);
        if gk.is_zero() {
            continue;
        }
        let inner = tracker.sum(format!("rhs k={k}"), bound, |n| {
            let x = Float::with_val(ctx.working_bits(), &step * n);
            let d = cosh_minus_cos(&x, &ang.half_sin2[k]);
            // cos theta - e^-x = -2 sin^2(theta/2) - expm1(-x)
            let neg_x = Float::with_val(ctx.working_bits(), -&x);
            let num = -(Float::with_val(ctx.working_bits(), &ang.half_sin2[k] * 2u32) + neg_x.exp_m1());
            ctx.complex(num / d * inv_power(n, 2 * q + 1, ctx))
        })?;
        total += inner * gk;
    }
    Ok(total / (2 * m) as u32)
}

/// One of the two equivalent forms of the acceleration theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Roots of unity `w^k` in the denominators.
    Complex,
    /// Conjugate terms paired into `cosh` / `cos` expressions.
    Real,
}

fn forms_for(route: Route) -> Vec<Form> {
    match route {
        Route::Complex => vec![Form::Complex],
        Route::Real => vec![Form::Real],
        _ => vec![Form::Real, Form::Complex],
    }
}

/// The pieces of one theorem display, arranged as
/// `lift^-1 { L/2 + lhs_series } = rhs`.
#[derive(Debug, Clone)]
pub struct DisplayParts {
    /// `sum n^-a g(n) / (e^(2n alpha) - 1)`
    pub lhs_series: Complex,
    /// Right-hand side, one entry per requested form.
    pub rhs: Vec<Complex>,
    /// `alpha^(q-1/2)` for odd `g`, `alpha^q` for even `g`.
    pub lift: Real,
    pub terms_used: u64,
    pub series: Vec<SeriesTrace>,
}

impl DisplayParts {
    /// The `L` value that makes the display hold with the `i`-th right-hand side.
    pub fn solve(&self, i: usize) -> Complex {
        let prec = self.lhs_series.prec();
        let lifted = Complex::with_val(prec, &self.rhs[i] * &self.lift);
        (lifted - &self.lhs_series) * 2u32
    }

    /// Left-hand side for a given `L`.
    pub fn lhs(&self, l: &Complex) -> Complex {
        let prec = self.lhs_series.prec();
        let inner = Complex::with_val(prec, l / 2u32) + &self.lhs_series;
        inner / &self.lift
    }
}

/// Both sides of the odd-`g` display at `L(2q, g)`, minus the unknown itself.
pub fn odd_display(
    q: u32,
    g: &PeriodicFunction,
    params: &AccelParams,
    forms: &[Form],
    ctx: &PrecisionContext,
) -> Result<DisplayParts> {
    check_q(q, 1)?;
    if !g.parity(ctx).is_odd() {
        return Err(Error::ParityMismatch("the odd display needs an odd g".into()));
    }
    let m = g.period();
    let alpha = &params.alpha;
    let beta = &params.beta;
    let sqrt_alpha = Float::with_val(ctx.working_bits(), alpha.sqrt_ref());
    let sqrt_beta = Float::with_val(ctx.working_bits(), beta.sqrt_ref());
    // alpha^(q - 1/2) and (-1)^q beta^(1/2 - q)
    let alpha_lift = powi(alpha, q as i32) / &sqrt_alpha;
    let beta_factor = powi(beta, -(q as i32)) * &sqrt_beta * sign(i64::from(q));

    // J = sum_j (-1)^(j+1) alpha^(j-1/2-q) beta^-j zeta(2j) L(2q-2j+1, g)
    let mut j_sum = ctx.complex_zero();
    for j in 0..=q {
        let l = l_closed_complex(2 * q - 2 * j + 1, g, ctx)?;
        let coef = powi(alpha, j as i32 - q as i32) / &sqrt_alpha * powi(beta, -(j as i32)) * zeta_even(j, ctx)
            * sign(i64::from(j) + 1);
        j_sum += l * coef;
    }

    let num_series = 1 + (m - 1) * forms.len();
    let mut tracker = Tracker::new(ctx, params.n_terms, num_series);
    let s_alpha = lhs_series(&mut tracker, 2 * q, g, params, 2.0)?;
    let rhs_scale = 2.0 * f64_of(&alpha_lift) * f64_of(&beta_factor).abs() * g.max_abs();
    let mut rhs = Vec::with_capacity(forms.len());
    for form in forms {
        let r = match form {
            Form::Complex => odd_rhs_complex(&mut tracker, q, g, params, rhs_scale)?,
            Form::Real => odd_rhs_real(&mut tracker, q, g, params, rhs_scale)?,
        };
        rhs.push(r * &beta_factor + &j_sum);
    }
    Ok(DisplayParts {
        lhs_series: s_alpha,
        rhs,
        lift: alpha_lift,
        terms_used: tracker.terms_used,
        series: tracker.traces,
    })
}

/// Both sides of the even-`g` display at `L(2q+1, g)`, minus the unknown itself.
///
/// `zeta` supplies `zeta(2q+1)`; it is required unless `M(g) = 0`.
pub fn even_display(
    q: u32,
    g: &PeriodicFunction,
    params: &AccelParams,
    forms: &[Form],
    zeta: Option<&Complex>,
    ctx: &PrecisionContext,
) -> Result<DisplayParts> {
    if !g.parity(ctx).is_even() {
        return Err(Error::ParityMismatch("the even display needs an even g".into()));
    }
    let zero_mean = has_zero_mean(g, ctx);
    if q == 0 && !zero_mean {
        return Err(Error::InvalidArgument("q = 0 is only admissible when M(g) = 0".into()));
    }
    let m = g.period();
    let alpha = &params.alpha;
    let beta = &params.beta;
    let alpha_lift = powi(alpha, q as i32);
    // (-beta)^-q
    let beta_factor = powi(beta, -(q as i32)) * sign(i64::from(q));

    let mut j_sum = ctx.complex_zero();
    for j in 0..=q + 1 {
        let l = l_closed_complex(2 * q + 2 - 2 * j, g, ctx)?;
        let coef = powi(alpha, j as i32 - q as i32 - 1) * powi(beta, -(j as i32)) * zeta_even(j, ctx)
            * sign(i64::from(j) + 1);
        j_sum += l * coef;
    }

    let mut mean_term = ctx.complex_zero();
    if !zero_mean {
        let z = zeta.ok_or_else(|| Error::InvalidArgument("zeta(2q+1) is needed when M(g) != 0".into()))?;
        mean_term = mean_value(g, ctx) * z / 2u32;
    }

    let num_series = 1 + m * forms.len();
    let mut tracker = Tracker::new(ctx, params.n_terms, num_series);
    let s_alpha = lhs_series(&mut tracker, 2 * q + 1, g, params, 2.0)?;
    let rhs_scale = 2.0 * f64_of(&alpha_lift) * f64_of(&beta_factor).abs() * g.max_abs();
    let mut rhs = Vec::with_capacity(forms.len());
    for form in forms {
        let series = match form {
            Form::Complex => even_rhs_complex(&mut tracker, q, g, params, rhs_scale)?,
            Form::Real => even_rhs_real(&mut tracker, q, g, params, rhs_scale)?,
        };
        rhs.push((series + &mean_term) * &beta_factor + &j_sum);
    }
    Ok(DisplayParts {
        lhs_series: s_alpha,
        rhs,
        lift: alpha_lift,
        terms_used: tracker.terms_used,
        series: tracker.traces,
    })
}

fn report_from_parts(parts: DisplayParts, params: &AccelParams, ctx: &PrecisionContext) -> MethodReport {
    let value = parts.solve(0);
    let residual_check = (parts.rhs.len() > 1).then(|| {
        let other = parts.solve(1);
        abs(&Complex::with_val(ctx.working_bits(), &value - &other))
    });
    MethodReport {
        value,
        terms_used: parts.terms_used,
        params: params.clone(),
        residual_check,
        series: parts.series,
    }
}

/// `L(2q, g)` for odd `g` from the first display of the acceleration theorems.
pub fn solve_odd_g(
    q: u32,
    g: &PeriodicFunction,
    params: &AccelParams,
    route: Route,
    ctx: &PrecisionContext,
) -> Result<MethodReport> {
    let forms = forms_for(resolve_route(route, g, ctx));
    let parts = odd_display(q, g, params, &forms, ctx)?;
    Ok(report_from_parts(parts, params, ctx))
}

/// Picks parameters for the auxiliary `zeta(2q+1)` that differ from the caller's.
fn independent_zeta_params(q: u32, params: &AccelParams, ctx: &PrecisionContext) -> AccelParams {
    let pi = ctx.pi();
    let candidates: [u32; 3] = if q % 2 == 1 { [1, 2, 3] } else { [2, 3, 5] };
    let a = f64_of(&params.alpha);
    let b = f64_of(&params.beta);
    let far = |x: f64| (x - a).abs() > 0.01 * a && (x - b).abs() > 0.01 * b;
    let divisor = candidates
        .into_iter()
        .find(|&d| far(std::f64::consts::PI / f64::from(d)))
        .unwrap_or(candidates[0]);
    let alpha = Float::with_val(ctx.working_bits(), &pi / divisor);
    AccelParams::from_alpha(alpha, ctx).unwrap().with_terms(params.n_terms)
}

/// `L(2q+1, g)` for even `g` from the second display of the acceleration theorems.
///
/// When `M(g) != 0`, `zeta(2q+1)` is taken from [`ramanujan_zeta`] with parameters
/// independent of `params`.
pub fn solve_even_g(
    q: u32,
    g: &PeriodicFunction,
    params: &AccelParams,
    route: Route,
    ctx: &PrecisionContext,
) -> Result<MethodReport> {
    if !g.parity(ctx).is_even() {
        return Err(Error::ParityMismatch("solve_even_g needs an even g".into()));
    }
    let zeta = if q >= 1 && !has_zero_mean(g, ctx) {
        Some(ramanujan_zeta(q, &independent_zeta_params(q, params, ctx), ctx)?)
    } else {
        None
    };
    let forms = forms_for(resolve_route(route, g, ctx));
    let parts = even_display(q, g, params, &forms, zeta.as_ref().map(|z| &z.value), ctx)?;
    let mut report = report_from_parts(parts, params, ctx);
    if let Some(z) = zeta {
        report.terms_used += z.terms_used;
        report.series.extend(z.series);
    }
    Ok(report)
}

/// `zeta(2q+1)` from Ramanujan's reciprocity formula.
///
/// Solving for `zeta(2q+1)` divides by `c = (alpha^-q - (-beta)^-q) / 2`; when
/// `|c| <= 2^-guard alpha^-q` the solve would lose more than the guard bits and
/// [`Error::DegenerateParameters`] is returned instead. This happens exactly at
/// `alpha = beta = pi` for even `q`.
pub fn ramanujan_zeta(q: u32, params: &AccelParams, ctx: &PrecisionContext) -> Result<MethodReport> {
    check_q(q, 1)?;
    let alpha = &params.alpha;
    let beta = &params.beta;
    let a_pow = powi(alpha, -(q as i32));
    let b_pow = powi(beta, -(q as i32)) * sign(i64::from(q));
    let c = Float::with_val(ctx.working_bits(), &a_pow - &b_pow) / 2u32;
    let threshold = Float::with_val(ctx.working_bits(), &a_pow) * ctx.pow2(-(ctx.guard_bits() as i32));
    if Float::with_val(ctx.working_bits(), c.abs_ref()) <= threshold {
        return Err(Error::DegenerateParameters(format!(
            "alpha^-q - (-beta)^-q vanishes for q = {q} at these parameters"
        )));
    }

    // 2^(2q) sum_k (-1)^(k+1) B_2k/(2k)! B_(2q+2-2k)/(2q+2-2k)! alpha^(q+1-k) beta^k
    let mut poly = ctx.zero();
    for k in 0..=q + 1 {
        let coef = bernoulli_over_factorial(2 * k) * bernoulli_over_factorial(2 * q + 2 - 2 * k);
        if coef.is_zero() {
            continue;
        }
        let term = ctx.to_real(&coef) * powi(alpha, (q + 1 - k) as i32) * powi(beta, k as i32);
        poly += term * sign(i64::from(k) + 1);
    }
    poly <<= 2 * q;

    let mut tracker = Tracker::new(ctx, params.n_terms, 2);
    let inv_c = f64_of(&c).abs().recip();
    let series = |tracker: &mut Tracker, label: &str, x: &Real, scale: f64| {
        let two_x = Float::with_val(ctx.working_bits(), x * 2u32);
        let bound = TermBound::new(scale * inv_c, f64::from(2 * q + 1), f64_of(&two_x));
        tracker.sum(label, bound, |n| {
            let e = Float::with_val(ctx.working_bits(), &two_x * n).exp_m1();
            ctx.complex(inv_power(n, 2 * q + 1, ctx) / e)
        })
    };
    let a_series = series(&mut tracker, "alpha", alpha, f64_of(&a_pow))?;
    let b_series = series(&mut tracker, "beta", beta, f64_of(&b_pow).abs())?;
    let numer = b_series * &b_pow - a_series * &a_pow + &poly;
    let value = numer / &c;
    Ok(tracker.report(value, params))
}

/// `L(2q) = sum_{n>=0} (-1)^n (2n+1)^-2q` through the sech-series formula for the
/// character modulo 4.
pub fn l4_accel(q: u32, params: &AccelParams, ctx: &PrecisionContext) -> Result<MethodReport> {
    check_q(q, 1)?;
    let alpha = &params.alpha;
    let beta = &params.beta;
    let sqrt_alpha = Float::with_val(ctx.working_bits(), alpha.sqrt_ref());
    let sqrt_beta = Float::with_val(ctx.working_bits(), beta.sqrt_ref());
    let alpha_lift = powi(alpha, q as i32) / &sqrt_alpha;

    // 2^(2q-3) sum_k (-1)^k 2^-4k E_2k/(2k)! B_(2q-2k)/(2q-2k)! alpha^(q-k) beta^(k+1/2)
    let mut poly = ctx.zero();
    for k in 0..=q {
        let e = Rational::from(euler_number(2 * k as usize)) / Rational::from(factorial(2 * k));
        let coef = e * bernoulli_over_factorial(2 * q - 2 * k);
        if coef.is_zero() {
            continue;
        }
        let term = ctx.to_real(&coef) * powi(alpha, (q - k) as i32) * powi(beta, k as i32) * &sqrt_beta;
        poly += (term >> (4 * k)) * sign(i64::from(k));
    }
    poly <<= 2 * q as i32 - 3;

    let mut tracker = Tracker::new(ctx, params.n_terms, 2);
    let lift = f64_of(&alpha_lift);
    // sum_{n>=0} (-1)^n (2n+1)^-2q / (e^((4n+2) alpha) - 1), indexed from n = 1
    let four_alpha = Float::with_val(ctx.working_bits(), alpha * 4u32);
    let lhs_bound = TermBound::new(2.0, 0.0, f64_of(&four_alpha));
    let s = tracker.sum("lhs", lhs_bound, |n| {
        let odd = 2 * n - 1;
        let e = Float::with_val(ctx.working_bits(), alpha * (2 * odd)).exp_m1();
        ctx.complex(inv_power(odd, 2 * q, ctx) / e * sign(n as i64 - 1))
    })?;
    // (1/4)(-1)^q beta^(1/2-q) sum n^-2q / cosh(n beta / 2)
    let sech_factor = powi(beta, -(q as i32)) * &sqrt_beta * sign(i64::from(q)) / 4u32;
    let half_beta = Float::with_val(ctx.working_bits(), beta / 2u32);
    let sech_bound = TermBound::new(4.0 * (lift * f64_of(&sech_factor).abs()).max(1.0), f64::from(2 * q), f64_of(&half_beta));
    let h = tracker.sum("sech", sech_bound, |n| {
        let c = Float::with_val(ctx.working_bits(), &half_beta * n).cosh();
        ctx.complex(inv_power(n, 2 * q, ctx) / c)
    })?;
    let value = ((h * &sech_factor + &poly) * &alpha_lift - s) * 2u32;
    Ok(tracker.report(value, params))
}

/// Catalan's constant from Ramanujan's formula
/// `G = 5 pi^2/48 - 2 sum (-1)^n (2n+1)^-2 / (e^((2n+1) pi) - 1) - 1/4 sum n^-2 / cosh(pi n)`.
pub fn catalan(ctx: &PrecisionContext) -> Result<MethodReport> {
    let pi = ctx.pi();
    let params = AccelParams::from_alpha(Float::with_val(ctx.working_bits(), &pi / 2u32), ctx)?;
    let mut tracker = Tracker::new(ctx, 0, 2);
    let pi64 = f64_of(&pi);
    let s = tracker.sum("exp", TermBound::new(2.0, 2.0, 2.0 * pi64), |n| {
        let odd = 2 * n - 1;
        let e = Float::with_val(ctx.working_bits(), &pi * odd).exp_m1();
        ctx.complex(inv_power(odd, 2, ctx) / e * sign(n as i64 - 1))
    })?;
    let h = tracker.sum("sech", TermBound::new(2.0, 2.0, pi64), |n| {
        let c = Float::with_val(ctx.working_bits(), &pi * n).cosh();
        ctx.complex(inv_power(n, 2, ctx) / c)
    })?;
    let lead = Float::with_val(ctx.working_bits(), pi.square_ref()) * 5u32 / 48u32;
    let value = ctx.complex(lead) - s * 2u32 - h / 4u32;
    Ok(tracker.report(value, &params))
}

fn check_r(r: &Real) -> Result<()> {
    if !(*r > 0 && *r < 1) {
        return Err(Error::InvalidArgument(format!("r must lie in (0, 1), got {}", r.to_f64())));
    }
    Ok(())
}

/// `e^(-2n beta (1 -+ r))` halves over `1 - e^(-2n beta)`, i.e. `cosh` or `sinh(2n beta r)
/// / (e^(2n beta) - 1)` without overflow.
fn hyperbolic_ratio(n: u64, beta: &Real, r: &Real, plus: bool, ctx: &PrecisionContext) -> Real {
    let bits = ctx.working_bits();
    let x = Float::with_val(bits, beta * 2u32) * n;
    let one_minus_r = Float::with_val(bits, 1u32 - r);
    let one_plus_r = Float::with_val(bits, 1u32 + r);
    let a = (-Float::with_val(bits, &x * &one_minus_r)).exp();
    let b = (-Float::with_val(bits, &x * &one_plus_r)).exp();
    let denom = -Float::with_val(bits, -&x).exp_m1();
    let num = if plus { a + b } else { a - b };
    num / denom / 2u32
}

/// `sum_{n>=1} n^(-2q-1) cos(2 pi n r)`.
pub fn lerch_cos(q: u32, r: &Real, params: &AccelParams, ctx: &PrecisionContext) -> Result<MethodReport> {
    check_r(r)?;
    let bits = ctx.working_bits();
    let alpha = &params.alpha;
    let beta = &params.beta;
    let r = ctx.real(r);
    let alpha_lift = powi(alpha, q as i32);
    let beta_factor = powi(beta, -(q as i32)) * sign(i64::from(q));
    let lift = f64_of(&alpha_lift) * f64_of(&beta_factor).abs();
    let two_pi_r = Float::with_val(bits, ctx.pi() * 2u32) * &r;
    let two_beta = Float::with_val(bits, beta * 2u32);
    let r64 = f64_of(&r);

    // -2^(2q) sum_k (-1)^k B_2k(r)/(2k)! B_(2q+2-2k)/(2q+2-2k)! alpha^(q+1-k) beta^k
    let mut poly = ctx.zero();
    for k in 0..=q + 1 {
        let bk = ctx.eval_poly(&bernoulli_polynomial(2 * k as usize), &r) / ctx.real(factorial(2 * k));
        let b = ctx.to_real(&bernoulli_over_factorial(2 * q + 2 - 2 * k));
        let term = bk * b * powi(alpha, (q + 1 - k) as i32) * powi(beta, k as i32);
        poly += term * sign(i64::from(k));
    }
    poly <<= 2 * q;
    poly = -poly;

    let mut tracker = Tracker::new(ctx, params.n_terms, 3);
    let a = f64::from(2 * q + 1);
    let two_alpha = Float::with_val(bits, alpha * 2u32);
    let s = tracker.sum("lhs", TermBound::new(2.0, a, f64_of(&two_alpha)), |n| {
        let e = Float::with_val(bits, &two_alpha * n).exp_m1();
        let c = Float::with_val(bits, &two_pi_r * n).cos();
        ctx.complex(inv_power(n, 2 * q + 1, ctx) * c / e)
    })?;
    let p1 = tracker.sum("exp", TermBound::new(2.0 * lift.max(1.0), a, 2.0 * f64_of(beta) * r64), |n| {
        let e = Float::with_val(bits, -(Float::with_val(bits, &two_beta * n) * &r)).exp();
        ctx.complex(inv_power(n, 2 * q + 1, ctx) * e)
    })?;
    let p2 = tracker.sum("cosh", TermBound::new(4.0 * lift.max(1.0), a, 2.0 * f64_of(beta) * (1.0 - r64)), |n| {
        ctx.complex(inv_power(n, 2 * q + 1, ctx) * hyperbolic_ratio(n, beta, &r, true, ctx))
    })?;
    let p = (p1 / 2u32 + p2) * &beta_factor;
    let value = ((p + &poly) * &alpha_lift - s) * 2u32;
    Ok(tracker.report(value, params))
}

/// `sum_{n>=1} n^-2q sin(2 pi n r)`.
///
/// The sine companion of the cosine formula is easy to get wrong: with
/// `sinh(2 pi n r)` on the left, or `+ sinh(2n beta r)/(e^(2n beta) - 1)` on the
/// right, it fails numerically (at `r = 1/2` it gives about `-0.131` instead of 0).
/// The identity that holds, and that reduces to Catalan's formula at `r = 1/4`,
/// has `sin(2 pi n r)` on the left and a minus sign on the right:
///
/// ```text
/// alpha^(1/2-q) { S/2 + sum n^-2q sin(2 pi n r) / (e^(2n alpha) - 1) }
///   = (-1)^q beta^(1/2-q) { 1/2 sum n^-2q e^(-2n beta r) - sum n^-2q sinh(2n beta r) / (e^(2n beta) - 1) }
///     - 2^(2q-1) sum_k (-1)^k B_(2k+1)(r)/(2k+1)! B_(2q-2k)/(2q-2k)! alpha^(q-k) beta^(k+1/2)
/// ```
///
/// With `sin` on the left every series converges for all `alpha > 0`.
pub fn lerch_sin(q: u32, r: &Real, params: &AccelParams, ctx: &PrecisionContext) -> Result<MethodReport> {
    check_q(q, 1)?;
    check_r(r)?;
    let bits = ctx.working_bits();
    let alpha = &params.alpha;
    let beta = &params.beta;
    let r = ctx.real(r);
    let sqrt_alpha = Float::with_val(bits, alpha.sqrt_ref());
    let sqrt_beta = Float::with_val(bits, beta.sqrt_ref());
    let alpha_lift = powi(alpha, q as i32) / &sqrt_alpha;
    let beta_factor = powi(beta, -(q as i32)) * &sqrt_beta * sign(i64::from(q));
    let lift = f64_of(&alpha_lift) * f64_of(&beta_factor).abs();
    let two_pi_r = Float::with_val(bits, ctx.pi() * 2u32) * &r;
    let two_beta = Float::with_val(bits, beta * 2u32);
    let r64 = f64_of(&r);

    let mut poly = ctx.zero();
    for k in 0..=q {
        let bk = ctx.eval_poly(&bernoulli_polynomial(2 * k as usize + 1), &r) / ctx.real(factorial(2 * k + 1));
        let b = ctx.to_real(&bernoulli_over_factorial(2 * q - 2 * k));
        let term = bk * b * powi(alpha, (q - k) as i32) * powi(beta, k as i32) * &sqrt_beta;
        poly += term * sign(i64::from(k));
    }
    poly <<= 2 * q as i32 - 1;
    poly = -poly;

    let mut tracker = Tracker::new(ctx, params.n_terms, 3);
    let a = f64::from(2 * q);
    let two_alpha = Float::with_val(bits, alpha * 2u32);
    let s = tracker.sum("lhs", TermBound::new(2.0, a, f64_of(&two_alpha)), |n| {
        let e = Float::with_val(bits, &two_alpha * n).exp_m1();
        let sn = Float::with_val(bits, &two_pi_r * n).sin();
        ctx.complex(inv_power(n, 2 * q, ctx) * sn / e)
    })?;
    let p1 = tracker.sum("exp", TermBound::new(2.0 * lift.max(1.0), a, 2.0 * f64_of(beta) * r64), |n| {
        let e = Float::with_val(bits, -(Float::with_val(bits, &two_beta * n) * &r)).exp();
        ctx.complex(inv_power(n, 2 * q, ctx) * e)
    })?;
    let p2 = tracker.sum("sinh", TermBound::new(4.0 * lift.max(1.0), a, 2.0 * f64_of(beta) * (1.0 - r64)), |n| {
        ctx.complex(inv_power(n, 2 * q, ctx) * hyperbolic_ratio(n, beta, &r, false, ctx))
    })?;
    let p = (p1 / 2u32 - p2) * &beta_factor;
    let value = ((p + &poly) * &alpha_lift - s) * 2u32;
    Ok(tracker.report(value, params))
}

/// Options for [`evaluate`].
#[derive(Debug, Clone, Default)]
pub struct EvalConfig {
    /// Overrides the default `alpha = pi / sqrt(m)`.
    pub alpha: Option<Real>,
    /// Fixed truncation per series; 0 for automatic.
    pub n_terms: u64,
    pub route: Route,
}

/// `L(s, g)` for any periodic `g` and integer `s >= 1`.
///
/// `g` is split into even and odd parts. The part whose parity matches `s` has a
/// closed form; the other goes through the acceleration theorem.
pub fn evaluate(s: u32, g: &PeriodicFunction, config: &EvalConfig, ctx: &PrecisionContext) -> Result<MethodReport> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    if s == 1 && !has_zero_mean(g, ctx) {
        return Err(Error::DivergentSeries("L(1, g) diverges when M(g) != 0".into()));
    }
    let params = match &config.alpha {
        Some(a) => AccelParams::from_alpha(ctx.real(a), ctx)?,
        None => AccelParams::balanced(g.period(), ctx),
    }
    .with_terms(config.n_terms);
    let split = parity_split(g);
    let (matching, other) = if s % 2 == 0 {
        (&split.even_part, &split.odd_part)
    } else {
        (&split.odd_part, &split.even_part)
    };

    let mut report = MethodReport {
        value: ctx.complex_zero(),
        terms_used: 0,
        params: params.clone(),
        residual_check: None,
        series: Vec::new(),
    };
    if !matching.is_zero(ctx) {
        report.value += l_closed_complex(s, matching, ctx)?;
    }
    if !other.is_zero(ctx) {
        let part = if s % 2 == 0 {
            solve_odd_g(s / 2, other, &params, config.route, ctx)?
        } else {
            solve_even_g((s - 1) / 2, other, &params, config.route, ctx)?
        };
        report.value += &part.value;
        report.absorb(part);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::l4_closed_odd;
    use crate::direct::l_direct_int;
    use crate::numerics::agreeing_bits;

    const CATALAN: &str = "0.91596559417721901505460351493238411077414937428167213426649811962176301977625476947935651292611510624857442261919619957903589880332585905943159473748115840699533202877331946051903872747816408786590902";
    const ZETA3: &str = "1.2020569031595942853997381615114499907649862923404988817922715553418382057863130901864558736093352581461991577952607194184919959986732832137763968372079001614539417829493600667191915755222424942439615639096641032911590957809655146512799184051057152559880154371097811020398275325667876035223369849416618110570147157786394997375237852779370309560257018531827900030765471075630488433208697115737423807934450316076253177145354444118311781822497185263570918244899879620350833575617202260339378587032813126673";

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> bool {
        agreeing_bits(a, b) >= ctx.precision_bits() - ctx.guard_bits()
    }

    fn constant(text: &str, ctx: &PrecisionContext) -> Complex {
        ctx.complex(ctx.parse_real(text).unwrap())
    }

    #[test]
    fn ramanujan_zeta3_at_pi() {
        let ctx = ctx();
        let params = AccelParams::from_alpha(ctx.pi(), &ctx).unwrap();
        let report = ramanujan_zeta(1, &params, &ctx).unwrap();
        assert!(close(&report.value, &constant(ZETA3, &ctx), &ctx));
        // at alpha = beta = pi the formula reads 7 pi^3/180 - 2 sum n^-3/(e^(2 pi n) - 1)
        assert_eq!(report.series.len(), 2);
    }

    #[test]
    fn ramanujan_degenerate() {
        let ctx = ctx();
        let params = AccelParams::from_alpha(ctx.pi(), &ctx).unwrap();
        for q in [2, 4, 6] {
            assert!(matches!(ramanujan_zeta(q, &params, &ctx), Err(Error::DegenerateParameters(_))));
        }
        assert!(ramanujan_zeta(3, &params, &ctx).is_ok());
    }

    #[test]
    fn ramanujan_is_symmetric_in_alpha_beta() {
        let ctx = ctx();
        for (q, a) in [(1u32, 1.1), (2, 0.9), (3, 2.5)] {
            let p = AccelParams::from_alpha(ctx.real(a), &ctx).unwrap();
            let x = ramanujan_zeta(q, &p, &ctx).unwrap();
            let y = ramanujan_zeta(q, &p.swapped(), &ctx).unwrap();
            assert!(close(&x.value, &y.value, &ctx), "{q}");
        }
    }

    #[test]
    fn catalan_three_routes() {
        let ctx = ctx();
        let g = constant(CATALAN, &ctx);
        let a = catalan(&ctx).unwrap();
        let params = AccelParams::from_alpha(ctx.pi() / 2u32, &ctx).unwrap();
        let b = l4_accel(1, &params, &ctx).unwrap();
        let c = solve_odd_g(1, &PeriodicFunction::mod4_character(), &params, Route::Both, &ctx).unwrap();
        for v in [&a.value, &b.value, &c.value] {
            assert!(close(v, &g, &ctx));
        }
        assert!(c.residual_check.unwrap() < ctx.tolerance());
    }

    #[test]
    fn l4_second_value() {
        let ctx = PrecisionContext::new(128).unwrap();
        let params = AccelParams::from_alpha(ctx.pi() / 2u32, &ctx).unwrap();
        let l4 = l4_accel(2, &params, &ctx).unwrap();
        assert!(l4.value.real().to_string().starts_with("9.889445517411053"));
        let direct = l_direct_int(4, &PeriodicFunction::mod4_character(), 100_000, &ctx).unwrap();
        assert!(direct.agrees_with(&l4.value, &ctx.tolerance()));
    }

    #[test]
    fn even_g_zeta3() {
        let ctx = ctx();
        let params = AccelParams::from_alpha(ctx.pi(), &ctx).unwrap();
        for route in [Route::Complex, Route::Real, Route::Both] {
            let r = solve_even_g(1, &PeriodicFunction::one(), &params, route, &ctx).unwrap();
            assert!(close(&r.value, &constant(ZETA3, &ctx), &ctx), "{route:?}");
        }
    }

    #[test]
    fn zero_g_gives_zero() {
        let ctx = ctx();
        let zero = PeriodicFunction::from_integers(&[0, 0, 0]).unwrap();
        let params = AccelParams::balanced(3, &ctx);
        let a = solve_odd_g(1, &zero, &params, Route::Auto, &ctx).unwrap();
        let b = solve_even_g(1, &zero, &params, Route::Auto, &ctx).unwrap();
        assert!(abs(&a.value) < ctx.tolerance());
        assert!(abs(&b.value) < ctx.tolerance());
    }

    #[test]
    fn parity_and_domain_errors() {
        let ctx = ctx();
        let params = AccelParams::balanced(4, &ctx);
        let chi = PeriodicFunction::mod4_character();
        assert!(matches!(solve_even_g(1, &chi, &params, Route::Auto, &ctx), Err(Error::ParityMismatch(_))));
        assert!(matches!(
            solve_odd_g(1, &PeriodicFunction::one(), &params, Route::Auto, &ctx),
            Err(Error::ParityMismatch(_))
        ));
        assert!(matches!(solve_odd_g(0, &chi, &params, Route::Auto, &ctx), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            solve_even_g(0, &PeriodicFunction::one(), &params, Route::Auto, &ctx),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            evaluate(1, &PeriodicFunction::one(), &EvalConfig::default(), &ctx),
            Err(Error::DivergentSeries(_))
        ));
        assert!(AccelParams::from_alpha(ctx.real(-1), &ctx).is_err());
    }

    #[test]
    fn even_q0_zero_mean() {
        // g = (0, 1, 0, -1, 0, 1) style even, zero mean: cos(2 pi n/3) scaled by 2
        let ctx = PrecisionContext::new(128).unwrap();
        let g = PeriodicFunction::from_integers(&[2, -1, -1]).unwrap();
        let params = AccelParams::balanced(3, &ctx);
        let r = solve_even_g(0, &g, &params, Route::Both, &ctx).unwrap();
        // sum 2 cos(2 pi n/3)/n = -ln 3
        let want = -Float::with_val(ctx.working_bits(), 3u32).ln();
        assert!(close(&r.value, &ctx.complex(want), &ctx));
    }

    #[test]
    fn truncation_is_sound() {
        let ctx = ctx();
        let g = PeriodicFunction::from_integers(&[0, 1, 2, 0, -2, -1]).unwrap();
        let params = AccelParams::balanced(6, &ctx);
        let r = solve_odd_g(2, &g, &params, Route::Both, &ctx).unwrap();
        let n = r.series.len() as f64;
        let limit = 2f64.powi(-(ctx.working_bits() as i32)) / n;
        for t in &r.series {
            assert!(t.first_discarded.to_f64() < limit, "{}", t.label);
        }
    }

    #[test]
    fn evaluate_dispatch() {
        let ctx = PrecisionContext::new(128).unwrap();
        let cfg = EvalConfig::default();
        let z2 = evaluate(2, &PeriodicFunction::one(), &cfg, &ctx).unwrap();
        assert!(close(&z2.value, &ctx.complex(zeta_even(1, &ctx)), &ctx));
        let mixed = PeriodicFunction::from_integers(&[0, 1, 1, 0]).unwrap();
        let v = evaluate(3, &mixed, &cfg, &ctx).unwrap();
        let direct = l_direct_int(3, &mixed, 100_000, &ctx).unwrap();
        assert!(direct.agrees_with(&v.value, &ctx.tolerance()));
        let l3 = evaluate(3, &PeriodicFunction::mod4_character(), &cfg, &ctx).unwrap();
        assert!(close(&l3.value, &ctx.complex(l4_closed_odd(1, &ctx)), &ctx));
    }

    #[test]
    fn lerch_examples() {
        let ctx = ctx();
        let params = AccelParams::from_alpha(ctx.pi(), &ctx).unwrap();
        let half = ctx.real(0.5);
        let c = lerch_cos(0, &half, &params, &ctx).unwrap();
        let ln2 = -Float::with_val(ctx.working_bits(), 2u32).ln();
        assert!(close(&c.value, &ctx.complex(ln2), &ctx));
        let s = lerch_sin(2, &half, &params, &ctx).unwrap();
        assert!(abs(&s.value) < ctx.tolerance());
        let quarter = ctx.real(0.25);
        let g = lerch_sin(1, &quarter, &params, &ctx).unwrap();
        assert!(close(&g.value, &constant(CATALAN, &ctx), &ctx));
        // sum n^-3 cos(pi n / 2) = -(3/32) zeta(3)
        let c3 = lerch_cos(1, &quarter, &params, &ctx).unwrap();
        let want = constant(ZETA3, &ctx) * -3i32 / 32u32;
        assert!(close(&c3.value, &want, &ctx));
        assert!(matches!(lerch_cos(1, &ctx.real(1), &params, &ctx), Err(Error::InvalidArgument(_))));
    }
}
