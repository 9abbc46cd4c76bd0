//! Exact scalar values: zero, or a positive rational scale times a
//! rational-phase root of unity.
//!
//! Every value an automatic multiplicative sequence takes in this crate is of
//! the form `s · e(t)` with `s ∈ ℚ_{>0}`, `t ∈ ℚ ∩ [0, 1)` and
//! `e(t) = exp(2πi·t)`, or zero. The set is closed under multiplication
//! (scales multiply, phases add mod 1, zero absorbs) and equality is exact —
//! no floating point is involved anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero as _};

/// Reduced rational number used for scales and phases.
pub type Rational = BigRational;

/// An exact scalar: `Zero`, or `scale · e(phase)` with positive `scale` and
/// `phase ∈ [0, 1)`, both stored as reduced fractions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Zero,
    Unit { scale: Rational, phase: Rational },
}

impl Value {
    pub fn zero() -> Self {
        Value::Zero
    }

    pub fn one() -> Self {
        Value::Unit { scale: Rational::one(), phase: Rational::zero() }
    }

    /// `num/den`, as a real rational value. Negative values get phase `1/2`.
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let q = Rational::new(BigInt::from(num), BigInt::from(den));
        Self::from_rational(q)
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Value::Zero
        } else if q.is_negative() {
            Value::Unit { scale: -q, phase: Rational::new(BigInt::one(), BigInt::from(2)) }
        } else {
            Value::Unit { scale: q, phase: Rational::zero() }
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    /// `e(num/den)`, a root of unity; the phase is reduced mod 1.
    pub fn root_of_unity(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let t = Rational::new(BigInt::from(num), BigInt::from(den));
        Value::Unit { scale: Rational::one(), phase: reduce_phase(t) }
    }

    /// `scale · e(phase)` for arbitrary rational inputs; zero scale collapses
    /// to `Zero`, negative scale folds a half turn into the phase.
    pub fn from_polar(scale: Rational, phase: Rational) -> Self {
        if scale.is_zero() {
            return Value::Zero;
        }
        let (scale, phase) = if scale.is_negative() {
            (-scale, phase + Rational::new(BigInt::one(), BigInt::from(2)))
        } else {
            (scale, phase)
        };
        Value::Unit { scale, phase: reduce_phase(phase) }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Value::Unit { scale, phase } if scale.is_one() && phase.is_zero())
    }

    /// True for zero and for values of modulus one.
    pub fn is_root_of_unity_or_zero(&self) -> bool {
        match self {
            Value::Zero => true,
            Value::Unit { scale, .. } => scale.is_one(),
        }
    }

    /// The modulus `|v|` as an exact rational (zero for `Zero`).
    pub fn modulus(&self) -> Rational {
        match self {
            Value::Zero => Rational::zero(),
            Value::Unit { scale, .. } => scale.clone(),
        }
    }

    pub fn phase(&self) -> Option<&Rational> {
        match self {
            Value::Zero => None,
            Value::Unit { phase, .. } => Some(phase),
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Zero, _) | (_, Value::Zero) => Value::Zero,
            (Value::Unit { scale: s1, phase: t1 }, Value::Unit { scale: s2, phase: t2 }) => {
                Value::Unit { scale: s1 * s2, phase: reduce_phase(t1 + t2) }
            }
        }
    }

    pub fn neg(&self) -> Value {
        self.mul(&Value::integer(-1))
    }

    /// `v^k` for `k ≥ 0`, with `v^0 = 1` (also for `v = 0`).
    pub fn pow(&self, k: u32) -> Value {
        if k == 0 {
            return Value::one();
        }
        match self {
            Value::Zero => Value::Zero,
            Value::Unit { scale, phase } => {
                let e = BigInt::from(k);
                let scale = Rational::new(scale.numer().pow(k), scale.denom().pow(k));
                Value::Unit { scale, phase: reduce_phase(phase * Rational::from_integer(e)) }
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Value> {
        match self {
            Value::Zero => None,
            Value::Unit { scale, phase } => Some(Value::Unit {
                scale: scale.recip(),
                phase: reduce_phase(-phase),
            }),
        }
    }

    pub fn conj(&self) -> Value {
        match self {
            Value::Zero => Value::Zero,
            Value::Unit { scale, phase } => {
                Value::Unit { scale: scale.clone(), phase: reduce_phase(-phase) }
            }
        }
    }

    /// Approximate complex embedding, for display and CSV output only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        match self {
            Value::Zero => (0.0, 0.0),
            Value::Unit { scale, phase } => {
                let s = rational_to_f64(scale);
                let t = rational_to_f64(phase) * std::f64::consts::TAU;
                (s * t.cos(), s * t.sin())
            }
        }
    }

    pub fn product<'a>(values: impl IntoIterator<Item = &'a Value>) -> Value {
        let mut acc = Value::one();
        for v in values {
            if v.is_zero() {
                return Value::Zero;
            }
            acc = acc.mul(v);
        }
        acc
    }
}

/// Maps a rational onto `[0, 1)` by subtracting the floor.
pub fn reduce_phase(t: Rational) -> Rational {
    let f = t.floor();
    t - f
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    // Good enough for reporting: exact for all corpus-scale fractions.
    let n = q.numer();
    let d = q.denom();
    bigint_to_f64(n) / bigint_to_f64(d)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Zero => write!(f, "0"),
            Value::Unit { scale, phase } => {
                let half = Rational::new(BigInt::one(), BigInt::from(2));
                let quarter = Rational::new(BigInt::one(), BigInt::from(4));
                let three_quarters = Rational::new(BigInt::from(3), BigInt::from(4));
                if phase.is_zero() {
                    write!(f, "{}", fmt_rational(scale))
                } else if *phase == half {
                    write!(f, "-{}", fmt_rational(scale))
                } else if *phase == quarter && scale.is_one() {
                    write!(f, "i")
                } else if *phase == three_quarters && scale.is_one() {
                    write!(f, "-i")
                } else if scale.is_one() {
                    write!(f, "e({}/{})", phase.numer(), phase.denom())
                } else {
                    write!(f, "{}*e({}/{})", fmt_rational(scale), phase.numer(), phase.denom())
                }
            }
        }
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
