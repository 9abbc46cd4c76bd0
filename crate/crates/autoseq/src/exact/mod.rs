//! Exact complex arithmetic for the finitely many values a sequence takes.
//!
//! [`Cyclo`] represents finite sums `Σ c_j · e(t_j)` with rational
//! coefficients and rational phases. Sums, products and scalar multiples stay
//! exact, and the zero test reduces modulo a cyclotomic polynomial, so
//! cancellations like `1 + e(1/3) + e(2/3) = 0` are decided symbolically.
//! [`hiprec`] supplies a 60-digit fixed-point embedding used when a numeric
//! magnitude is finally needed.

mod cyclo;
pub mod hiprec;

pub use cyclo::Cyclo;
pub use hiprec::{Fx, PrecComplex};
