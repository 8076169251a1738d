//! Dirichlet series with periodic coefficients at positive integers, to arbitrary
//! precision.
//!
//! * [`closedform`]: `L(q, g)` when `q` and `g` share their parity.
//! * [`accel`]: the acceleration identities for the other parity, Ramanujan's
//!   formula for odd zeta values, Catalan's constant and related sums.
//! * [`direct`]: term-by-term summation with tail bounds, used as the oracle.
//! * [`identities`]: numerical residual checks of every identity the acceleration
//!   rests on.
//! * [`exact`], [`numerics`], [`periodic`]: Bernoulli and Euler numbers, precision
//!   contexts and coefficient sequences.
//!
//! ```
//! use dirichlet_accel::accel::{evaluate, EvalConfig};
//! use dirichlet_accel::numerics::PrecisionContext;
//! use dirichlet_accel::periodic::PeriodicFunction;
//!
//! let ctx = PrecisionContext::new(128).unwrap();
//! let catalan = evaluate(2, &PeriodicFunction::mod4_character(), &EvalConfig::default(), &ctx).unwrap();
//! assert!((catalan.value.real().to_f64() - 0.915_965_594_177_219).abs() < 1e-15);
//! ```

pub mod accel;
pub mod closedform;
pub mod direct;
pub mod error;
pub mod exact;
pub mod identities;
pub mod numerics;
pub mod periodic;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/precision.md")]
    mod precision {}
    #[doc = include_str!("../../../book/src/periodic.md")]
    mod periodic {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/direct.md")]
    mod direct {}
    #[doc = include_str!("../../../book/src/acceleration.md")]
    mod acceleration {}
    #[doc = include_str!("../../../book/src/constants.md")]
    mod constants {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
}
