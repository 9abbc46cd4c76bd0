//! Fixed-point arithmetic with 70 decimal digits, enough for the 50-digit
//! reporting contract of the mean computations with headroom for roundoff.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::value::Rational;

/// Number of decimal digits carried after the point.
pub const FX_DIGITS: u32 = 70;

fn fx_scale() -> &'static BigInt {
    static SCALE: OnceLock<BigInt> = OnceLock::new();
    SCALE.get_or_init(|| BigInt::from(10u32).pow(FX_DIGITS))
}

// π · 10^70, truncated (digits 71.. are 0628…, so truncation is exact here
// to the stored precision).
const PI_FIXED: &str =
    "31415926535897932384626433832795028841971693993751058209749445923078164";

/// Fixed-point real number: the wrapped integer divided by `10^70`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fx(pub BigInt);

impl Fx {
    pub fn zero() -> Self {
        Fx(BigInt::zero())
    }

    pub fn one() -> Self {
        Fx(fx_scale().clone())
    }

    pub fn from_int(n: i64) -> Self {
        Fx(BigInt::from(n) * fx_scale())
    }

    pub fn from_rational(q: &Rational) -> Self {
        Fx(q.numer() * fx_scale() / q.denom())
    }

    pub fn pi() -> Self {
        Fx(PI_FIXED.parse().expect("valid pi literal"))
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }

    pub fn neg(&self) -> Fx {
        Fx(-&self.0)
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        Fx(&self.0 * &o.0 / fx_scale())
    }

    pub fn div(&self, o: &Fx) -> Fx {
        assert!(!o.0.is_zero(), "division by zero");
        Fx(&self.0 * fx_scale() / &o.0)
    }

    pub fn mul_int(&self, k: i64) -> Fx {
        Fx(&self.0 * BigInt::from(k))
    }

    pub fn abs(&self) -> Fx {
        Fx(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Square root (argument must be non-negative).
    pub fn sqrt(&self) -> Fx {
        assert!(!self.0.is_negative(), "sqrt of negative value");
        Fx((&self.0 * fx_scale()).sqrt())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().map(|v| v / 1e70).unwrap_or(f64::NAN)
    }

    /// Decimal rendering with all 70 fractional digits.
    pub fn to_decimal_string(&self) -> String {
        let sign = if self.0.is_negative() { "-" } else { "" };
        let mag = self.0.abs();
        let int = &mag / fx_scale();
        let frac = &mag % fx_scale();
        format!("{sign}{int}.{frac:0>width$}", width = FX_DIGITS as usize)
    }

    /// `cos(2π t)` for rational `t`.
    pub fn cos_2pi(t: &Rational) -> Fx {
        trig_2pi(t).0
    }

    /// `sin(2π t)` for rational `t`.
    pub fn sin_2pi(t: &Rational) -> Fx {
        trig_2pi(t).1
    }
}

/// `(cos 2πt, sin 2πt)` via exact quadrant reduction and a Taylor tail on
/// `[0, π/2)`.
fn trig_2pi(t: &Rational) -> (Fx, Fx) {
    let t = crate::value::reduce_phase(t.clone());
    let four_t = &t * Rational::from_integer(BigInt::from(4));
    let quadrant = four_t.floor().to_integer().to_u8().expect("quadrant in 0..4");
    let r = four_t - Rational::from_integer(BigInt::from(quadrant));
    // θ = 2π · (r/4) = (π/2) · r ∈ [0, π/2)
    let theta = Fx::pi().mul(&Fx::from_rational(&(r / Rational::from_integer(BigInt::from(2)))));
    let (c, s) = taylor_cos_sin(&theta);
    match quadrant {
        0 => (c, s),
        1 => (s.neg(), c),
        2 => (c.neg(), s.neg()),
        3 => (s, c.neg()),
        _ => unreachable!(),
    }
}

fn taylor_cos_sin(theta: &Fx) -> (Fx, Fx) {
    let theta_sq = theta.mul(theta);
    let mut cos = Fx::zero();
    let mut sin = Fx::zero();
    // cos term: (-1)^k θ^{2k} / (2k)!, sin term: (-1)^k θ^{2k+1} / (2k+1)!
    let mut c_term = Fx::one();
    let mut s_term = theta.clone();
    let mut k: i64 = 0;
    while !c_term.0.is_zero() || !s_term.0.is_zero() {
        cos = cos.add(&c_term);
        sin = sin.add(&s_term);
        let c_next = c_term.mul(&theta_sq).neg();
        let s_next = s_term.mul(&theta_sq).neg();
        c_term = Fx(c_next.0 / BigInt::from((2 * k + 1) * (2 * k + 2)));
        s_term = Fx(s_next.0 / BigInt::from((2 * k + 2) * (2 * k + 3)));
        k += 1;
        assert!(k < 200, "Taylor series failed to terminate");
    }
    (cos, sin)
}

/// Complex number with [`Fx`] parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecComplex {
    pub re: Fx,
    pub im: Fx,
}

impl PrecComplex {
    pub fn zero() -> Self {
        PrecComplex { re: Fx::zero(), im: Fx::zero() }
    }

    pub fn add(&self, o: &PrecComplex) -> PrecComplex {
        PrecComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &PrecComplex) -> PrecComplex {
        PrecComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    /// `coeff · e(phase)` for rational coefficient and phase.
    pub fn from_polar_rational(coeff: &Rational, phase: &Rational) -> PrecComplex {
        let c = Fx::from_rational(coeff);
        PrecComplex { re: c.mul(&Fx::cos_2pi(phase)), im: c.mul(&Fx::sin_2pi(phase)) }
    }

    pub fn abs(&self) -> Fx {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
