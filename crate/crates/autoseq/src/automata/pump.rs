//! Pumping-lemma witnesses for automatic sequences.
//!
//! For `n` with enough digits to force a repeated state on the LSD-first run,
//! split the digit string as low block `z` (before the first repeat), cycle
//! block `y` (between the two visits) and remainder `x`. Repeating the cycle
//! `k` times gives
//!
//! ```text
//! f(x·λ^{ℓ1 + k·ℓ2} + y·λ^{ℓ1}·(λ^{k·ℓ2} − 1)/(λ^{ℓ2} − 1) + z) = f(n)
//! ```
//!
//! for every `k ≥ 0`, with `k = 1` recovering `n` itself.

use num_bigint::BigUint;
use num_traits::Zero;

use super::dfao::{AutomataError, Dfao};

/// Arithmetic form of a pumping decomposition: `n = x·λ^{ℓ1+ℓ2} + y·λ^{ℓ1} + z`
/// with `x < λ^{ℓ3}`, `y < λ^{ℓ2}`, `z < λ^{ℓ1}` and `ℓ2 ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpWitness {
    pub base: u32,
    pub x: BigUint,
    pub y: BigUint,
    pub z: BigUint,
    pub l1: u32,
    pub l2: u32,
    pub l3: u32,
}

impl PumpWitness {
    /// The pumped integer for cycle count `k ≥ 0`; `pumped(1) = n`.
    pub fn pumped(&self, k: u32) -> BigUint {
        let base = BigUint::from(self.base);
        let cycle = base.pow(self.l2);
        // geometric block Σ_{i<k} λ^{ℓ2·i}
        let mut geom = BigUint::zero();
        let mut power = BigUint::from(1u32);
        for _ in 0..k {
            geom += &power;
            power *= &cycle;
        }
        // power is now λ^{k·ℓ2}
        &self.x * base.pow(self.l1) * &power + &self.y * base.pow(self.l1) * geom + &self.z
    }

    fn invariants_hold(&self) -> bool {
        let base = BigUint::from(self.base);
        self.l2 >= 1
            && self.x < base.pow(self.l3)
            && self.y < base.pow(self.l2)
            && self.z < base.pow(self.l1)
    }
}

/// Digits of `n` in the automaton's base, least significant first.
fn digits(base: u32, n: &BigUint) -> Vec<u32> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let base = BigUint::from(base);
    let mut out = Vec::new();
    let mut m = n.clone();
    while !m.is_zero() {
        let (q, r) = m.div_rem(&base);
        out.push(r.to_u32().expect("digit fits u32"));
        m = q;
    }
    out
}

/// Finds the first repeated state on the run of `d` over the digits of `n`
/// and packages the corresponding split. Fails with `NoRepetition` when the
/// run is too short (guaranteed to succeed for `n ≥ λ^{|Q|}`).
pub fn pump_witness(d: &Dfao, n: &BigUint) -> Result<PumpWitness, AutomataError> {
    let ds = digits(d.base(), n);
    // states[i] = state after reading i digits
    let mut states = Vec::with_capacity(ds.len() + 1);
    let mut s = d.initial();
    states.push(s);
    for &digit in &ds {
        s = d.step(s, digit);
        states.push(s);
    }

    // first repeat: smallest j with states[j] already seen at some i < j
    let mut first_seen: Vec<Option<usize>> = vec![None; d.n_states()];
    let mut repeat: Option<(usize, usize)> = None;
    for (j, &st) in states.iter().enumerate() {
        match first_seen[st] {
            Some(i) => {
                repeat = Some((i, j));
                break;
            }
            None => first_seen[st] = Some(j),
        }
    }
    let Some((i, j)) = repeat else {
        return Err(AutomataError::NoRepetition);
    };

    let base = BigUint::from(d.base());
    let z = n % base.pow(i as u32);
    let y = (n / base.pow(i as u32)) % base.pow((j - i) as u32);
    let x = n / base.pow(j as u32);
    let witness = PumpWitness {
        base: d.base(),
        x,
        y,
        z,
        l1: i as u32,
        l2: (j - i) as u32,
        l3: (ds.len() - j) as u32,
    };
    debug_assert!(witness.invariants_hold());
    debug_assert_eq!(&witness.pumped(1), n);
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::dfao::tests::period_doubling_dfao;
    use crate::value::Value;

    #[test]
    fn constant_automaton_pumps_trivially() {
        let d = Dfao::constant(3, Value::rational(1, 2));
        let n = BigUint::from(3u32);
        let w = pump_witness(&d, &n).unwrap();
        assert_eq!(w.l2, 1);
        for k in 0..=8 {
            assert_eq!(d.eval_big(&w.pumped(k)), d.eval_big(&n));
        }
    }

    #[test]
    fn period_doubling_pumps_at_a_power_of_two() {
        let d = period_doubling_dfao();
        let n = BigUint::from(32u32); // a(32) = (-1)^5 = -1
        let w = pump_witness(&d, &n).unwrap();
        assert_eq!(d.eval_big(&n), Value::integer(-1));
        for k in 0..=8 {
            assert_eq!(d.eval_big(&w.pumped(k)), Value::integer(-1), "k = {k}");
        }
    }

    #[test]
    fn no_repetition_below_threshold() {
        let d = period_doubling_dfao();
        // single digit, no state revisited
        assert_eq!(
            pump_witness(&d, &BigUint::from(1u32)).unwrap_err(),
            AutomataError::NoRepetition
        );
        // n ≥ λ^{|Q|} always has one
        for n in 16u64..64 {
            assert!(pump_witness(&d, &BigUint::from(n)).is_ok(), "n = {n}");
        }
    }

    #[test]
    fn decomposition_reassembles_n() {
        let d = period_doubling_dfao();
        for n in [3u64, 12, 100, 1000, 65_535, 99_999] {
            let n = BigUint::from(n);
            let w = pump_witness(&d, &n).unwrap();
            assert_eq!(w.pumped(1), n);
            assert!(w.invariants_hold());
        }
    }
}
