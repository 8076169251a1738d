//! Exact rational arithmetic and the special number sequences behind every closed
//! form: Bernoulli numbers and polynomials, Euler numbers and generalized
//! Bernoulli numbers.
//!
//! Bernoulli and Euler numbers are memoized in process-wide caches. The caches only
//! grow; readers share a lock and growth is serialized, so concurrent callers always
//! see identical exact values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::RwLock;

use rug::ops::Pow;
use rug::{Complete, Integer};

use crate::numerics::{Complex, PrecisionContext};
use crate::periodic::PeriodicFunction;

pub use rug::Rational;

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
static EULER: RwLock<Vec<Integer>> = RwLock::new(Vec::new());

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::binomial_u(n, k).complete()
}

pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).complete()
}

/// `B_0, ..., B_{n_max}` with `B_1 = -1/2`.
///
/// Computed from `sum_{k=0}^{n} C(n+1, k) B_k = 0` and cached.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    {
        let cache = BERNOULLI.read().unwrap();
        if cache.len() > n_max {
            return cache[..=n_max].to_vec();
        }
    }
    let mut cache = BERNOULLI.write().unwrap();
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= n_max {
        let n = cache.len() as u32;
        if n >= 3 && n % 2 == 1 {
            cache.push(Rational::new());
            continue;
        }
        let mut sum = Rational::new();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                sum += Rational::from(binomial(n + 1, k as u32)) * b;
            }
        }
        cache.push(-sum / (n + 1));
    }
    cache[..=n_max].to_vec()
}

pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n).pop().unwrap()
}

/// `B_n(x) = sum_k C(n, k) B_k x^(n-k)`.
pub fn bernoulli_polynomial(n: usize) -> RationalPolynomial {
    let b = bernoulli_numbers(n);
    let coefficients = (0..=n)
        .map(|i| {
            // coefficient of x^i comes from k = n - i
            let k = n - i;
            Rational::from(binomial(n as u32, k as u32)) * &b[k]
        })
        .collect();
    RationalPolynomial::new(coefficients)
}

/// Euler numbers `E_0, ..., E_{n_max}` from `sech(t) = sum E_k t^k / k!`.
///
/// Even indices satisfy `sum_{k=0}^{n} C(2n, 2k) E_{2k} = 0` for `n >= 1`; odd ones vanish.
pub fn euler_numbers(n_max: usize) -> Vec<Integer> {
    {
        let cache = EULER.read().unwrap();
        if cache.len() > n_max {
            return cache[..=n_max].to_vec();
        }
    }
    let mut cache = EULER.write().unwrap();
    if cache.is_empty() {
        cache.push(Integer::from(1));
    }
    while cache.len() <= n_max {
        let idx = cache.len();
        if idx % 2 == 1 {
            cache.push(Integer::new());
            continue;
        }
        let n2 = idx as u32;
        let mut sum = Integer::new();
        for k in (0..idx).step_by(2) {
            sum += binomial(n2, k as u32) * &cache[k];
        }
        cache.push(-sum);
    }
    cache[..=n_max].to_vec()
}

pub fn euler_number(n: usize) -> Integer {
    euler_numbers(n).pop().unwrap()
}

/// Generalized Bernoulli number `B_{n,chi}` for exact (Gaussian-rational) `chi`,
/// via `B_{n,chi} = m^(n-1) sum_{k=1}^{m} chi(k) B_n(k/m)`.
///
/// Returns `None` when `chi` holds inexact values.
pub fn generalized_bernoulli_exact(n: usize, chi: &PeriodicFunction) -> Option<GaussianRational> {
    let values = chi.exact_values()?;
    let m = chi.period();
    let poly = bernoulli_polynomial(n);
    let mut sum = GaussianRational::zero();
    for k in 1..=m {
        let value = &values[k % m];
        if value.is_zero() {
            continue;
        }
        let point = Rational::from((k as u64, m as u64));
        sum = sum + value.scale(&poly.eval(&point));
    }
    let m_pow = if n == 0 {
        Rational::from((1, m as u64))
    } else {
        Rational::from(Integer::from(m).pow(n as u32 - 1))
    };
    Some(sum.scale(&m_pow))
}

/// Generalized Bernoulli number at working precision; exact values are used when available.
pub fn generalized_bernoulli(n: usize, chi: &PeriodicFunction, ctx: &PrecisionContext) -> Complex {
    if let Some(exact) = generalized_bernoulli_exact(n, chi) {
        return ctx.to_complex(&exact);
    }
    let m = chi.period();
    let poly = bernoulli_polynomial(n);
    let mut sum = ctx.complex_zero();
    for k in 1..=m {
        let point = Rational::from((k as u64, m as u64));
        let b = ctx.to_real(&poly.eval(&point));
        sum += chi.value(k as i64, ctx) * b;
    }
    let m_pow = ctx.real(m).pow(n as i32 - 1);
    sum * m_pow
}

/// Parses an integer, `p/q` or a decimal literal such as `-1.25e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if text.contains('/') {
        return Rational::from_str_radix(text, 10).ok();
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from(Integer::from_str_radix(&all_digits, 10).ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten_pow = Rational::from(Integer::from(10).pow(shift.unsigned_abs()));
    if shift >= 0 {
        value *= ten_pow;
    } else {
        value /= ten_pow;
    }
    if negative {
        value = -value;
    }
    Some(value)
}

/// Polynomial with exact rational coefficients; `coefficients()[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coefficients: Vec<Rational>,
}

impl RationalPolynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial has no coefficients.
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coefficients.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `p(a + b x)` as a polynomial in `x`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let mut result = RationalPolynomial::new(Vec::new());
        let linear = RationalPolynomial::new(vec![a.clone(), b.clone()]);
        for c in self.coefficients.iter().rev() {
            result = result.mul(&linear).add(&RationalPolynomial::new(vec![c.clone()]));
        }
        result
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        let coefficients = (0..len)
            .map(|i| {
                let a = self.coefficients.get(i).cloned().unwrap_or_default();
                let b = other.coefficients.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Self::new(coefficients)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut coefficients = vec![Rational::new(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                coefficients[i + j] += Rational::from(a * b);
            }
        }
        Self::new(coefficients)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coefficients.iter().map(|c| Rational::from(c * factor)).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let mag = Rational::from(c.abs_ref());
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        Self {
            re: re.into(),
            im: Rational::new(),
        }
    }

    pub fn i() -> Self {
        Self::new(Rational::new(), Rational::from(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(Rational::from(&self.re * factor), Rational::from(&self.im * factor))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        Self::new(re, im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}{:+}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    /// Akiyama–Tanigawa; yields the `B_1 = +1/2` convention.
    fn akiyama_tanigawa(n_max: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut a: Vec<Rational> = Vec::new();
        for m in 0..=n_max {
            a.push(r(1, m as i64 + 1));
            for j in (1..=m).rev() {
                let diff = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = diff * (j as u32);
            }
            out.push(a[0].clone());
        }
        out
    }

    /// Power-series coefficients of `sech(t)` by exact division of 1 by `cosh(t)`.
    fn sech_series(n_max: usize) -> Vec<Rational> {
        let cosh: Vec<Rational> = (0..=n_max)
            .map(|k| if k % 2 == 0 { Rational::from((1, factorial(k as u32))) } else { Rational::new() })
            .collect();
        let mut q = vec![Rational::new(); n_max + 1];
        for n in 0..=n_max {
            let mut acc = if n == 0 { Rational::from(1) } else { Rational::new() };
            for k in 1..=n {
                acc -= Rational::from(&cosh[k] * &q[n - k]);
            }
            q[n] = acc;
        }
        q
    }

    /// `n!` times the `t^n` coefficient of `sum_{k=1}^m chi(k) t e^{kt} / (e^{mt} - 1)`.
    fn generalized_bernoulli_series(n_max: usize, chi: &[GaussianRational]) -> Vec<GaussianRational> {
        let m = chi.len();
        // (e^{mt} - 1)/t = sum_j m^{j+1} t^j / (j+1)!
        let denom: Vec<Rational> = (0..=n_max)
            .map(|j| Rational::from((Integer::from(m).pow(j as u32 + 1), factorial(j as u32 + 1))))
            .collect();
        let mut numer = vec![GaussianRational::zero(); n_max + 1];
        for k in 1..=m {
            let value = &chi[k % m];
            for (j, slot) in numer.iter_mut().enumerate() {
                let coeff = Rational::from((Integer::from(k).pow(j as u32), factorial(j as u32)));
                *slot = slot.clone() + value.scale(&coeff);
            }
        }
        let mut q = vec![GaussianRational::zero(); n_max + 1];
        for n in 0..=n_max {
            let mut acc = numer[n].clone();
            for k in 1..=n {
                acc = acc - q[n - k].scale(&denom[k]);
            }
            q[n] = acc.scale(&Rational::from(denom[0].recip_ref()));
        }
        q.into_iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::from(factorial(n as u32))))
            .collect()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_numbers(0), vec![r(1, 1)]);
        assert_eq!(bernoulli_numbers(3), vec![r(1, 1), r(-1, 2), r(1, 6), r(0, 1)]);
        assert_eq!(bernoulli_number(12), r(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        let ours = bernoulli_numbers(40);
        let oracle = akiyama_tanigawa(40);
        for n in 0..=40 {
            if n == 1 {
                assert_eq!(ours[1], -oracle[1].clone());
            } else {
                assert_eq!(ours[n], oracle[n], "B_{n}");
            }
        }
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        let b = bernoulli_numbers(31);
        for n in 1..=30u32 {
            let mut sum = Rational::new();
            for k in 0..=n {
                sum += Rational::from(binomial(n + 1, k)) * &b[k as usize];
            }
            assert!(sum.is_zero(), "n = {n}");
        }
        for n in (3..=31).step_by(2) {
            assert!(b[n].is_zero());
        }
    }

    #[test]
    fn bernoulli_polynomial_examples() {
        assert_eq!(bernoulli_polynomial(0).coefficients(), &[r(1, 1)]);
        assert_eq!(bernoulli_polynomial(1).coefficients(), &[r(-1, 2), r(1, 1)]);
        assert_eq!(bernoulli_polynomial(2).coefficients(), &[r(1, 6), r(-1, 1), r(1, 1)]);
        assert_eq!(bernoulli_polynomial(2).to_string(), "x^2 - x + 1/6");
    }

    #[test]
    fn bernoulli_polynomial_at_zero_and_symmetry() {
        let b = bernoulli_numbers(30);
        for n in 0..=30 {
            let p = bernoulli_polynomial(n);
            assert_eq!(p.eval(&Rational::new()), b[n]);
            let reflected = p.compose_affine(&r(1, 1), &r(-1, 1));
            let expected = if n % 2 == 0 { p.clone() } else { p.scale(&r(-1, 1)) };
            assert_eq!(reflected, expected, "n = {n}");
        }
    }

    #[test]
    fn euler_examples_and_recurrence() {
        let e = euler_numbers(30);
        assert_eq!(e[0], 1);
        assert_eq!(e[1], 0);
        assert_eq!(e[2], -1);
        assert_eq!(e[4], 5);
        assert_eq!(e[6], -61);
        for k in (1..=30).step_by(2) {
            assert_eq!(e[k], 0);
        }
        for n in 1..=15u32 {
            let mut sum = Integer::new();
            for k in 0..=n {
                sum += binomial(2 * n, 2 * k) * &e[2 * k as usize];
            }
            assert_eq!(sum, 0, "n = {n}");
        }
    }

    #[test]
    fn euler_matches_series_division() {
        let oracle = sech_series(24);
        let e = euler_numbers(24);
        for k in 0..=24 {
            assert_eq!(Rational::from(&e[k]), Rational::from(&oracle[k] * factorial(k as u32)), "E_{k}");
        }
    }

    #[test]
    fn generalized_bernoulli_examples() {
        let one = PeriodicFunction::from_integers(&[1]).unwrap();
        assert_eq!(generalized_bernoulli_exact(1, &one).unwrap(), GaussianRational::real(r(1, 2)));
        let zero = PeriodicFunction::from_integers(&[0, 0, 0]).unwrap();
        for n in 0..6 {
            assert!(generalized_bernoulli_exact(n, &zero).unwrap().is_zero());
        }
        let chi4 = PeriodicFunction::from_integers(&[0, 1, 0, -1]).unwrap();
        assert!(generalized_bernoulli_exact(0, &chi4).unwrap().is_zero());
        // B_{1,chi} = -1/2 for the character mod 4
        assert_eq!(generalized_bernoulli_exact(1, &chi4).unwrap(), GaussianRational::real(r(-1, 2)));
    }

    #[test]
    fn generalized_bernoulli_inexact_route_matches_exact() {
        let ctx = PrecisionContext::default();
        let chi = PeriodicFunction::from_integers(&[2, -1, 0, 1, 1]).unwrap();
        let approx = PeriodicFunction::from_complex(chi.complex_values(&ctx)).unwrap();
        for n in 0..8 {
            let a = ctx.to_complex(&generalized_bernoulli_exact(n, &chi).unwrap());
            let b = generalized_bernoulli(n, &approx, &ctx);
            assert!(crate::numerics::agreeing_bits(&a, &b) >= 250, "n = {n}");
        }
    }

    fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
        prop_oneof![
            Just(GaussianRational::zero()),
            Just(GaussianRational::real(1)),
            Just(GaussianRational::real(-1)),
            Just(GaussianRational::i()),
            Just(-GaussianRational::i()),
        ]
    }

    proptest! {
        #[test]
        fn generalized_bernoulli_matches_generating_function(
            values in prop::collection::vec(small_gaussian(), 1..=6)
        ) {
            let chi = PeriodicFunction::from_exact(values.clone()).unwrap();
            let oracle = generalized_bernoulli_series(10, &values);
            for (n, expected) in oracle.iter().enumerate() {
                prop_assert_eq!(&generalized_bernoulli_exact(n, &chi).unwrap(), expected);
            }
        }
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3"), Some(r(3, 1)));
        assert_eq!(parse_rational("-2/6"), Some(r(-1, 3)));
        assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
        assert_eq!(parse_rational("-1.5e-2"), Some(r(-3, 200)));
        assert_eq!(parse_rational("12E2"), Some(r(1200, 1)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("1.2.3"), None);
    }

    #[test]
    fn concurrent_cache_growth_is_consistent() {
        let handles: Vec<_> = (0..4)
            .map(|i| std::thread::spawn(move || (bernoulli_numbers(60 + i * 10), euler_numbers(40 + i * 10))))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (b, e) in &results {
            assert_eq!(b[..61], bernoulli_numbers(60)[..]);
            assert_eq!(e[..41], euler_numbers(40)[..]);
        }
    }
}
