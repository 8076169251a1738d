//! Closed forms for `L(q, g)` when `q` and `g` have the same parity.
//!
//! ```text
//! L(q, g) = -1/2 (2 pi i)^q / q!  sum_{k=0}^{m-1} ghat(k) B_q(k/m)
//! ```
//!
//! with `ghat` the discrete Fourier coefficients of `g`. The Bernoulli values
//! `B_q(k/m)` are computed exactly over the rationals before conversion, which
//! sidesteps the cancellation in their alternating coefficients.

use rug::Float;

use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, bernoulli_polynomial, euler_number, factorial, Rational};
use crate::numerics::{sign, Complex, PrecisionContext, Real};
use crate::periodic::{dft, has_zero_mean, Parity, PeriodicFunction};

fn check_parity(q: u32, g: &PeriodicFunction, ctx: &PrecisionContext) -> Result<Parity> {
    let parity = g.parity(ctx);
    let ok = if q % 2 == 0 { parity.is_even() } else { parity.is_odd() };
    if !ok {
        return Err(Error::ParityMismatch(format!(
            "closed form for L({q}, g) needs g {} but g is {parity:?}",
            if q % 2 == 0 { "even" } else { "odd" }
        )));
    }
    if q == 1 && !has_zero_mean(g, ctx) {
        return Err(Error::DivergentSeries("L(1, g) diverges when M(g) != 0".into()));
    }
    Ok(parity)
}

/// `B_q(k/m)` for `k = 0..m`, exact.
fn bernoulli_at_fractions(q: u32, m: usize) -> Vec<Rational> {
    let poly = bernoulli_polynomial(q as usize);
    (0..m).map(|k| poly.eval(&Rational::from((k as u64, m as u64)))).collect()
}

/// `(2 pi)^n / n!` at working precision.
fn two_pi_power_over_factorial(n: u32, ctx: &PrecisionContext) -> Real {
    let two_pi = ctx.pi() * 2u32;
    let power = Float::with_val(ctx.working_bits(), rug::ops::Pow::pow(&two_pi, n));
    power / ctx.real(factorial(n))
}

/// `L(q, g)` through the Fourier coefficients of `g`.
///
/// `L(0, g) = -g(0)/2` for even `g`, taken as given rather than continued analytically.
pub fn l_closed_complex(q: u32, g: &PeriodicFunction, ctx: &PrecisionContext) -> Result<Complex> {
    if check_parity(q, g, ctx)? == Parity::Zero {
        return Ok(ctx.complex_zero());
    }
    if q == 0 {
        return Ok(g.value(0, ctx) / -2i32);
    }
    let m = g.period();
    let ghat = dft(g, ctx);
    let bern = bernoulli_at_fractions(q, m);
    let mut sum = ctx.complex_zero();
    for (c, b) in ghat.iter().zip(&bern) {
        if !b.is_zero() {
            sum += Complex::with_val(ctx.working_bits(), c * b);
        }
    }
    // (2 pi i)^q = (2 pi)^q i^q
    let mut value = sum * two_pi_power_over_factorial(q, ctx) / -2i32;
    for _ in 0..q % 4 {
        value = value.mul_i(false);
    }
    Ok(value)
}

/// `L(arg, g)` through the real cosine/sine form: `arg = 2q` for even `g`, `2q+1` for odd `g`.
pub fn l_closed_real(arg: u32, g: &PeriodicFunction, ctx: &PrecisionContext) -> Result<Complex> {
    if check_parity(arg, g, ctx)? == Parity::Zero {
        return Ok(ctx.complex_zero());
    }
    let m = g.period();
    let values = g.complex_values(ctx);
    let bern = bernoulli_at_fractions(arg, m);
    let pi = ctx.pi();
    let odd = arg % 2 == 1;
    let mut outer = ctx.complex_zero();
    for (k, b) in bern.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let mut inner = ctx.complex_zero();
        for (j, v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let angle = Float::with_val(ctx.working_bits(), &pi * (2 * ((j * k) % m)) as u64) / m as u64;
            let trig = if odd { angle.sin() } else { angle.cos() };
            inner += Complex::with_val(ctx.working_bits(), v * &trig);
        }
        outer += inner * b;
    }
    let q = arg / 2;
    let factor = two_pi_power_over_factorial(arg, ctx) * sign(i64::from(q) + 1) / (2 * m) as u64;
    Ok(outer * factor)
}

/// `zeta(2n) = -1/2 (2 pi i)^(2n) B_(2n) / (2n)!`, with `zeta(0) = -1/2`.
pub fn zeta_even(n: u32, ctx: &PrecisionContext) -> Real {
    let b = bernoulli_number(2 * n as usize);
    let value = two_pi_power_over_factorial(2 * n, ctx) * ctx.to_real(&b);
    value * sign(i64::from(n) + 1) / 2u32
}

/// `L(2n+1) = 1/2 (pi/2)^(2n+1) (-1)^n E_(2n) / (2n)!` for the character modulo 4.
pub fn l4_closed_odd(n: u32, ctx: &PrecisionContext) -> Real {
    let half_pi = ctx.pi() / 2u32;
    let power = Float::with_val(ctx.working_bits(), rug::ops::Pow::pow(&half_pi, 2 * n + 1));
    let e = ctx.real(euler_number(2 * n as usize));
    power * e / ctx.real(factorial(2 * n)) * sign(i64::from(n)) / 2u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direct::l_direct_int;
    use crate::numerics::agreeing_bits;
    use crate::periodic::parity_split;
    use proptest::prelude::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn close(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> bool {
        agreeing_bits(a, b) >= ctx.precision_bits() - ctx.guard_bits()
    }

    fn pi_power(k: u32, ctx: &PrecisionContext) -> Real {
        Float::with_val(ctx.working_bits(), rug::ops::Pow::pow(&ctx.pi(), k))
    }

    #[test]
    fn l0_is_minus_half_g0() {
        let ctx = ctx();
        let g = PeriodicFunction::from_integers(&[3, 1, 2, 2, 1]).unwrap();
        let v = l_closed_complex(0, &g, &ctx).unwrap();
        assert_eq!(v, ctx.complex(-1.5));
        let r = l_closed_real(0, &g, &ctx).unwrap();
        assert!(close(&r, &v, &ctx));
    }

    #[test]
    fn classical_values() {
        let ctx = ctx();
        let z2 = l_closed_complex(2, &PeriodicFunction::one(), &ctx).unwrap();
        assert!(close(&z2, &ctx.complex(pi_power(2, &ctx) / 6u32), &ctx));
        let chi = PeriodicFunction::mod4_character();
        let l1 = l_closed_complex(1, &chi, &ctx).unwrap();
        assert!(close(&l1, &ctx.complex(ctx.pi() / 4u32), &ctx));
        let l3 = l_closed_real(3, &chi, &ctx).unwrap();
        assert!(close(&l3, &ctx.complex(pi_power(3, &ctx) / 32u32), &ctx));
    }

    #[test]
    fn zeta_even_examples() {
        let ctx = ctx();
        assert_eq!(zeta_even(0, &ctx), -0.5);
        let expected = [(2u32, 6u32), (4, 90), (6, 945), (8, 9450), (10, 93555)];
        for (i, (k, d)) in expected.into_iter().enumerate() {
            let z = ctx.complex(zeta_even(i as u32 + 1, &ctx));
            assert!(close(&z, &ctx.complex(pi_power(k, &ctx) / d), &ctx), "{k}");
        }
        // zeta(12) = 691 pi^12 / 638512875
        let z12 = ctx.complex(zeta_even(6, &ctx));
        let want = pi_power(12, &ctx) * 691u32 / 638_512_875u32;
        assert!(close(&z12, &ctx.complex(want), &ctx));
    }

    #[test]
    fn l4_examples() {
        let ctx = ctx();
        let want = [
            ctx.pi() / 4u32,
            pi_power(3, &ctx) / 32u32,
            pi_power(5, &ctx) * 5u32 / 1536u32,
            pi_power(7, &ctx) * 61u32 / 184_320u32,
        ];
        let chi = PeriodicFunction::mod4_character();
        for (n, w) in want.iter().enumerate() {
            let v = ctx.complex(l4_closed_odd(n as u32, &ctx));
            assert!(close(&v, &ctx.complex(w), &ctx), "{n}");
            let c = l_closed_complex(2 * n as u32 + 1, &chi, &ctx).unwrap();
            assert!(close(&v, &c, &ctx), "{n}");
        }
    }

    #[test]
    fn errors() {
        let ctx = ctx();
        let chi = PeriodicFunction::mod4_character();
        assert!(matches!(l_closed_complex(2, &chi, &ctx), Err(Error::ParityMismatch(_))));
        assert!(matches!(l_closed_complex(0, &chi, &ctx), Err(Error::ParityMismatch(_))));
        let mixed = PeriodicFunction::from_integers(&[0, 1, 1, 0]).unwrap();
        assert!(matches!(l_closed_real(3, &mixed, &ctx), Err(Error::ParityMismatch(_))));
        let zero = PeriodicFunction::from_integers(&[0, 0]).unwrap();
        assert!(l_closed_complex(5, &zero, &ctx).unwrap().is_zero());
    }

    #[test]
    fn zeta_even_is_l_closed_of_one() {
        let ctx = ctx();
        for n in 1..=8 {
            let a = ctx.complex(zeta_even(n, &ctx));
            let b = l_closed_complex(2 * n, &PeriodicFunction::one(), &ctx).unwrap();
            assert!(close(&a, &b, &ctx));
        }
    }

    #[test]
    fn agrees_with_direct_oracle() {
        let ctx = PrecisionContext::new(128).unwrap();
        let g = PeriodicFunction::from_integers(&[0, 2, -1, 3, 1, -3, 1, -2]).unwrap();
        let split = parity_split(&g);
        for (s, part) in [(2u32, &split.even_part), (3, &split.odd_part), (4, &split.even_part)] {
            let closed = l_closed_complex(s, part, &ctx).unwrap();
            let direct = l_direct_int(s, part, 20_000, &ctx).unwrap();
            assert!(direct.agrees_with(&closed, &ctx.tolerance()), "{s}");
        }
    }

    fn parity_part(values: &[i64], odd: bool) -> PeriodicFunction {
        let split = parity_split(&PeriodicFunction::from_integers(values).unwrap());
        if odd {
            split.odd_part
        } else {
            split.even_part
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn routes_agree(values in prop::collection::vec(-3i64..=3, 1..=8), q in 0u32..=9) {
            let ctx = PrecisionContext::new(128).unwrap();
            let g = parity_part(&values, q % 2 == 1);
            let a = l_closed_complex(q, &g, &ctx).unwrap();
            let b = l_closed_real(q, &g, &ctx).unwrap();
            prop_assert!(close(&a, &b, &ctx));
            let im = Float::with_val(64, a.imag().abs_ref());
            prop_assert!(im <= ctx.tolerance());
        }
    }
}
