//! Finite rational combinations of roots of unity with an exact zero test.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::hiprec::PrecComplex;
use crate::value::{reduce_phase, Rational, Value};

/// `Σ coeff · e(phase)` over finitely many reduced phases in `[0, 1)`.
///
/// The map never stores zero coefficients. Two elements are equal as complex
/// numbers iff their difference [`is_zero`](Cyclo::is_zero); the term maps may
/// differ (e.g. `-1` and `e(1/2)` are the same number).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cyclo {
    terms: BTreeMap<Rational, Rational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo::default()
    }

    pub fn one() -> Self {
        Cyclo::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut c = Cyclo::zero();
        c.add_term(Rational::zero(), q);
        c
    }

    pub fn from_integer(n: i64) -> Self {
        Cyclo::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_value(v: &Value) -> Self {
        match v {
            Value::Zero => Cyclo::zero(),
            Value::Unit { scale, phase } => {
                let mut c = Cyclo::zero();
                c.add_term(phase.clone(), scale.clone());
                c
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, phase: Rational, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let phase = reduce_phase(phase);
        let entry = self.terms.entry(phase.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&phase);
        }
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        let mut out = Cyclo::zero();
        for (p1, c1) in &self.terms {
            for (p2, c2) in &other.terms {
                out.add_term(p1 + p2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Cyclo {
        let mut out = Cyclo::zero();
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * q);
        }
        out
    }

    pub fn mul_value(&self, v: &Value) -> Cyclo {
        self.mul(&Cyclo::from_value(v))
    }

    /// Exact zero test: the element is written as a polynomial in `ζ_L`
    /// (`L` = lcm of the phase denominators) and reduced modulo the `L`-th
    /// cyclotomic polynomial.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let level = self.level();
        let level_usize = match level.to_usize() {
            // Phase denominators beyond any sane character order; treat the
            // nonempty term map as nonzero rather than building a huge Φ_L.
            None => return false,
            Some(l) if l > 1 << 20 => return false,
            Some(l) => l,
        };
        if level_usize == 1 {
            // Single possible phase 0 and the map is normalized.
            return false;
        }
        let mut poly = vec![Rational::zero(); level_usize];
        for (phase, coeff) in &self.terms {
            let exp = (phase * Rational::from_integer(level.clone()))
                .to_integer()
                .to_usize()
                .expect("reduced phase below level");
            poly[exp] += coeff;
        }
        let modulus = cyclotomic_polynomial(level_usize as u64);
        poly_rem_is_zero(poly, &modulus)
    }

    pub fn equals(&self, other: &Cyclo) -> bool {
        self.sub(other).is_zero()
    }

    /// Least common multiple of the phase denominators.
    pub fn level(&self) -> BigInt {
        let mut l = BigInt::one();
        for p in self.terms.keys() {
            l = l.lcm(p.denom());
        }
        l
    }

    /// 60-digit fixed-point complex embedding.
    pub fn to_prec(&self) -> PrecComplex {
        let mut acc = PrecComplex::zero();
        for (phase, coeff) in &self.terms {
            acc = acc.add(&PrecComplex::from_polar_rational(coeff, phase));
        }
        acc
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        let p = self.to_prec();
        (p.re.to_f64(), p.im.to_f64())
    }
}

/// Coefficients of the `n`-th cyclotomic polynomial, low degree first.
///
/// Computed by dividing `x^n - 1` by the cyclotomic polynomials of the proper
/// divisors of `n`; all intermediate divisions are exact over the integers.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut acc: Vec<BigInt> = {
        // x^n - 1
        let mut v = vec![BigInt::zero(); n as usize + 1];
        v[0] = -BigInt::one();
        v[n as usize] = BigInt::one();
        v
    };
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            acc = poly_div_exact(&acc, &phi_d);
        }
    }
    acc
}

/// Exact division of integer polynomials (panics on nonzero remainder).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = dc * &c;
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Remainder test of a rational polynomial modulo a monic integer polynomial.
fn poly_rem_is_zero(mut poly: Vec<Rational>, modulus: &[BigInt]) -> bool {
    let dd = modulus.len() - 1;
    while poly.len() > dd {
        let lead = poly.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let at = poly.len() - dd;
        for (j, mc) in modulus.iter().take(dd).enumerate() {
            let t = Rational::from_integer(mc.clone()) * &lead;
            poly[at + j] -= t;
        }
    }
    poly.iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(n: i64, d: i64) -> Cyclo {
        Cyclo::from_value(&Value::root_of_unity(n, d))
    }

    #[test]
    fn cyclotomic_polys_match_known_tables() {
        let as_i64 = |v: Vec<BigInt>| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cube_roots_cancel() {
        let sum = root(0, 3).add(&root(1, 3)).add(&root(2, 3));
        assert!(sum.is_zero());
    }

    #[test]
    fn fifth_roots_cancel_but_partial_sum_does_not() {
        let mut sum = Cyclo::zero();
        for j in 0..5 {
            sum = sum.add(&root(j, 5));
        }
        assert!(sum.is_zero());
        assert!(!sum.sub(&root(2, 5)).is_zero());
    }

    #[test]
    fn minus_one_as_phase_half() {
        let diff = Cyclo::from_integer(-1).sub(&root(1, 2));
        assert!(diff.is_zero());
    }

    #[test]
    fn mixed_level_cancellation() {
        // e(1/6) · e(1/3) = e(1/2) = -1
        let prod = root(1, 6).mul(&root(1, 3));
        assert!(prod.equals(&Cyclo::from_integer(-1)));
    }

    #[test]
    fn numeric_embedding_matches() {
        let c = root(1, 3);
        let (re, im) = c.to_complex_f64();
        assert!((re + 0.5).abs() < 1e-12);
        assert!((im - 0.75f64.sqrt()).abs() < 1e-12);
    }
}
