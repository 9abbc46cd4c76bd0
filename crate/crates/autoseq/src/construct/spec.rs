//! The `(p, f1, f2)` specification and its sequence and automata.

use num_bigint::BigUint;
use num_traits::Zero as _;

use super::multspec::{MultSpec, SpecError};
use crate::arith::{is_prime, nu, nu_big, p_free_part, p_free_part_big};
use crate::automata::{kernel_dfao_certified, remove_p_powers, Dfao, DfaoState, KernelOptions};
use crate::seq::{EventuallyPeriodicSeq, SequenceOracle};
use crate::value::Value;

/// Data of the normal form `a(n) = f1(ν_p(n)) · f2(n / p^{ν_p(n)})`:
/// a prime `p`, an eventually periodic `f1` with `f1(0) = 1`, and a
/// multiplicative eventually periodic `f2` vanishing at all multiples of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremFormSpec {
    p: u64,
    f1: EventuallyPeriodicSeq,
    f2: MultSpec,
}

impl TheoremFormSpec {
    pub fn new(p: u64, f1: EventuallyPeriodicSeq, f2: MultSpec) -> Result<Self, SpecError> {
        if !is_prime(p) {
            return Err(SpecError::NotPrime(p));
        }
        if !f1.value(0).is_one() {
            return Err(SpecError::F1UnitMissing(f1.value(0).to_string()));
        }
        if !f2.vanishes_at_multiples_of(p) {
            // find a small witness for the error message
            let n = (1..=64)
                .map(|k| k * p)
                .find(|&n| !f2.value(n).is_zero())
                .unwrap_or(p);
            return Err(SpecError::NonzeroAtMultiple { p, n });
        }
        Ok(TheoremFormSpec { p, f1, f2 })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn f1(&self) -> &EventuallyPeriodicSeq {
        &self.f1
    }

    pub fn f2(&self) -> &MultSpec {
        &self.f2
    }

    /// The sequence `a(n) = f1(ν_p(n)) · f2(n / p^{ν_p(n)})`, with `a(0) = 0`.
    pub fn oracle(&self) -> TheoremFormOracle<'_> {
        TheoremFormOracle { spec: self }
    }

    /// Base-p DFAO for the factor `n ↦ f1(ν_p(n))`.
    pub fn f1_part_dfao(&self) -> Dfao {
        dfao_for_f1_part(self.p, &self.f1)
    }

    /// Base-p DFAO for the factor `n ↦ f2(n / p^{ν_p(n)})`.
    pub fn f2_part_dfao(&self) -> Dfao {
        dfao_for_f2_part(self.p, &self.f2)
    }

    /// Minimized base-p DFAO for the full sequence (the two factor automata
    /// combined by the pair product).
    pub fn dfao(&self) -> Dfao {
        let prod = crate::automata::product(&self.f1_part_dfao(), &self.f2_part_dfao())
            .expect("factor automata share the base");
        crate::automata::minimize(&prod)
    }
}

impl SequenceOracle for TheoremFormSpec {
    fn value_big(&self, n: &BigUint) -> Value {
        self.oracle().value_big(n)
    }

    fn value(&self, n: u64) -> Value {
        self.oracle().value(n)
    }

    fn support_bound(&self) -> Option<u64> {
        self.oracle().support_bound()
    }
}

/// Oracle view of a [`TheoremFormSpec`].
pub struct TheoremFormOracle<'a> {
    spec: &'a TheoremFormSpec,
}

impl SequenceOracle for TheoremFormOracle<'_> {
    fn value_big(&self, n: &BigUint) -> Value {
        if n.is_zero() {
            return Value::Zero;
        }
        let p = self.spec.p;
        let e = nu_big(p, n);
        let v1 = self.spec.f1.value(e as usize);
        if v1.is_zero() {
            return Value::Zero;
        }
        v1.mul(&self.spec.f2.value_big(&p_free_part_big(p, n)))
    }

    fn value(&self, n: u64) -> Value {
        if n == 0 {
            return Value::Zero;
        }
        let p = self.spec.p;
        let v1 = self.spec.f1.value(nu(p, n) as usize);
        if v1.is_zero() {
            return Value::Zero;
        }
        v1.mul(&self.spec.f2.value(p_free_part(p, n)))
    }

    fn support_bound(&self) -> Option<u64> {
        // finite only when f1 is eventually zero and f2 finitely supported
        match (&self.spec.f2, self.spec.f1.eventually_zero()) {
            (MultSpec::Finite(f), true) => {
                let max_exp = self.spec.f1.preperiod().len() as u32;
                self.spec.p.checked_pow(max_exp.saturating_sub(1)).map(|pk| pk * f.support_bound())
            }
            _ => None,
        }
    }
}

/// Automaton for `n ↦ f1(ν_p(n))`: a ring of zero-run states
/// counting the valuation (preperiod then cycle), falling into a value sink
/// at the first nonzero digit. `a1(0) = 0` by the multiplicative convention.
pub fn dfao_for_f1_part(p: u64, f1: &EventuallyPeriodicSeq) -> Dfao {
    assert!(is_prime(p), "base must be prime");
    let base = p as usize;
    let pre = f1.preperiod().len();
    let per = f1.period().len();
    let ring = pre + per;

    // sinks: one per distinct f1 value, discovered in valuation order
    let mut sink_values: Vec<Value> = Vec::new();
    let mut sink_of = vec![0usize; ring];
    for k in 0..ring {
        let v = f1.value(k).clone();
        let idx = match sink_values.iter().position(|s| *s == v) {
            Some(i) => i,
            None => {
                sink_values.push(v);
                sink_values.len() - 1
            }
        };
        sink_of[k] = ring + idx;
    }

    let mut states = Vec::with_capacity(ring + sink_values.len());
    for k in 0..ring {
        let next_zero = if k + 1 < ring { k + 1 } else { pre + (ring - pre) % per.max(1) };
        let mut delta = vec![sink_of[k]; base];
        delta[0] = next_zero;
        states.push(DfaoState { delta, output: Value::Zero });
    }
    for v in &sink_values {
        let idx = states.len();
        states.push(DfaoState { delta: vec![idx; base], output: v.clone() });
    }
    Dfao::new(p as u32, 0, states).expect("f1-part construction is well-formed")
}

/// Construction for `n ↦ f2(n / p^{ν_p(n)})` following the two kernel cases:
/// periodic `f2` tracks the residue of the p-free part directly (digit 0
/// self-loop on the initial state, weights `p^i mod d` for later digits);
/// finitely supported `f2` closes the kernel of the oracle, certified
/// against it.
pub fn dfao_for_f2_part(p: u64, f2: &MultSpec) -> Dfao {
    assert!(is_prime(p), "base must be prime");
    match f2 {
        MultSpec::Periodic(f) => {
            let d = f.period();
            let base = p as usize;
            // state 0: initial skip state; others: (residue r, weight w)
            let pack = |r: u64, w: u64| -> usize { 1 + (r * d + w) as usize };
            let n_states = 1 + (d * d) as usize;
            let mut states = Vec::with_capacity(n_states);
            {
                let mut delta = Vec::with_capacity(base);
                delta.push(0); // skip low-order zeros
                for x in 1..p {
                    delta.push(pack(x % d, p % d));
                }
                states.push(DfaoState { delta, output: f.value(0) });
            }
            for r in 0..d {
                for w in 0..d {
                    let delta = (0..p).map(|x| pack((r + x * w) % d, (w * p) % d)).collect();
                    states.push(DfaoState { delta, output: f.value(r) });
                }
            }
            Dfao::new(p as u32, 0, states).expect("residue tracker is well-formed")
        }
        MultSpec::Finite(_) => {
            let oracle = F2PartOracle { p, f2 };
            kernel_dfao_certified(
                &oracle,
                p as u32,
                &KernelOptions::default(),
                1 << 14,
                1 << 16,
            )
            .expect("finitely supported f2-part has a finite kernel")
        }
    }
}

/// Oracle for the factor `n ↦ f2(n / p^{ν_p(n)})`; at `n = 0` it takes the
/// value `f2(0)` (the residue-0 table entry for periodic `f2`, zero for
/// finitely supported `f2`), matching the automaton constructions.
pub(crate) struct F2PartOracle<'a> {
    pub p: u64,
    pub f2: &'a MultSpec,
}

impl SequenceOracle for F2PartOracle<'_> {
    fn value_big(&self, n: &BigUint) -> Value {
        if n.is_zero() {
            return match self.f2 {
                MultSpec::Periodic(f) => f.value(0),
                MultSpec::Finite(_) => Value::Zero,
            };
        }
        self.f2.value_big(&p_free_part_big(self.p, n))
    }

    fn value(&self, n: u64) -> Value {
        if n == 0 {
            return match self.f2 {
                MultSpec::Periodic(f) => f.value(0),
                MultSpec::Finite(_) => Value::Zero,
            };
        }
        self.f2.value(p_free_part(self.p, n))
    }
}

/// Route B of the periodic f2-part construction: the plain periodic
/// automaton for `n ↦ f2(n mod d)` with p-powers removed afterwards.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn f2_part_via_power_removal(p: u64, f: &super::multspec::PeriodicMult) -> Dfao {
    let d = f.period();
    let pack = |r: u64, w: u64| -> usize { (r * d + w) as usize };
    let mut states = Vec::with_capacity((d * d) as usize);
    for r in 0..d {
        for w in 0..d {
            let delta = (0..p).map(|x| pack((r + x * w) % d, (w * p) % d)).collect();
            states.push(DfaoState { delta, output: f.value(r) });
        }
    }
    let periodic = Dfao::new(p as u32, pack(0, 1 % d), states).expect("periodic automaton");
    remove_p_powers(&periodic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::characters_mod;
    use crate::automata::minimize;
    use crate::construct::multspec::{FiniteSupport, PeriodicMult};
    use std::collections::BTreeMap;

    fn pd_spec() -> TheoremFormSpec {
        crate::corpus::period_doubling()
    }

    fn pd_value(n: u64) -> Value {
        if n == 0 {
            Value::Zero
        } else if nu(2, n).is_multiple_of(2) {
            Value::one()
        } else {
            Value::integer(-1)
        }
    }

    #[test]
    fn period_doubling_form() {
        let spec = pd_spec();
        let a = spec.oracle();
        for n in 0..65_536u64 {
            assert_eq!(a.value(n), pd_value(n), "n = {n}");
        }
    }

    #[test]
    fn constant_one_form() {
        let f1 = EventuallyPeriodicSeq::constant(Value::one());
        let f2 = MultSpec::Periodic(PeriodicMult::from_character(&characters_mod(2).remove(0)));
        let spec = TheoremFormSpec::new(2, f1, f2).unwrap();
        let a = spec.oracle();
        for n in 1..1000u64 {
            assert_eq!(a.value(n), Value::one());
        }
    }

    #[test]
    fn sparse_even_exponent_indicator() {
        // f1 = indicator of even exponents, f2 supported on {1}:
        // value 1 at n = 2^m with m even, 0 otherwise
        let f1 = EventuallyPeriodicSeq::new(vec![], vec![Value::one(), Value::Zero]);
        let f2 = MultSpec::Finite(FiniteSupport::point_mass_at_one());
        let spec = TheoremFormSpec::new(2, f1, f2).unwrap();
        let a = spec.oracle();
        for n in 1..100_000u64 {
            let expect = if n.is_power_of_two() && nu(2, n).is_multiple_of(2) {
                Value::one()
            } else {
                Value::Zero
            };
            assert_eq!(a.value(n), expect, "n = {n}");
        }
    }

    #[test]
    fn spec_validation_errors() {
        let f2 = MultSpec::Periodic(PeriodicMult::from_character(&characters_mod(2).remove(0)));
        // f1(0) ≠ 1
        let f1 = EventuallyPeriodicSeq::constant(Value::integer(-1));
        assert!(matches!(
            TheoremFormSpec::new(2, f1, f2.clone()),
            Err(SpecError::F1UnitMissing(_))
        ));
        // p not prime
        let f1 = EventuallyPeriodicSeq::constant(Value::one());
        assert_eq!(TheoremFormSpec::new(4, f1.clone(), f2).unwrap_err(), SpecError::NotPrime(4));
        // f2 nonzero at a multiple of p
        let f2 = MultSpec::Periodic(PeriodicMult::from_character(&characters_mod(3).remove(0)));
        assert!(matches!(
            TheoremFormSpec::new(2, f1, f2),
            Err(SpecError::NonzeroAtMultiple { p: 2, .. })
        ));
    }

    #[test]
    fn f1_part_dfao_matches_valuation_oracle() {
        // f1 with preperiod and a phase-rich period
        let f1 = EventuallyPeriodicSeq::new(
            vec![Value::one(), Value::rational(5, 1)],
            vec![Value::integer(-1), Value::integer(-1), Value::one()],
        );
        for p in [2u64, 3, 5] {
            let d = dfao_for_f1_part(p, &f1);
            for n in 1..50_000u64 {
                assert_eq!(d.eval(n), *f1.value(nu(p, n) as usize), "p = {p}, n = {n}");
            }
            assert_eq!(d.eval(0), Value::Zero);
            // state bound from the construction: ring + value alphabet + 1
            let alphabet: std::collections::BTreeSet<_> =
                (0..8).map(|k| f1.value(k).clone()).collect();
            assert!(d.n_states() <= 5 + alphabet.len() + 1);
        }
    }

    #[test]
    fn f1_part_constant_is_constant_automaton_off_zero() {
        let f1 = EventuallyPeriodicSeq::constant(Value::one());
        let d = dfao_for_f1_part(3, &f1);
        for n in 1..1000 {
            assert_eq!(d.eval(n), Value::one());
        }
    }

    #[test]
    fn f1_part_indicator_of_coprime() {
        // preperiod [1], period [0]: indicator of p ∤ n
        let f1 = EventuallyPeriodicSeq::new(vec![Value::one()], vec![Value::Zero]);
        let d = dfao_for_f1_part(3, &f1);
        for n in 1..10_000u64 {
            let expect = if n % 3 == 0 { Value::Zero } else { Value::one() };
            assert_eq!(d.eval(n), expect);
        }
    }

    #[test]
    fn f2_part_periodic_routes_agree() {
        // direct skip-state construction equals p-power removal of the
        // periodic automaton, as minimized automata
        for (p, modulus) in [(2u64, 2u64), (2, 4), (3, 4), (2, 12), (3, 12), (5, 4), (3, 7)] {
            for chi in characters_mod(modulus) {
                let extended = if modulus % p == 0 {
                    chi.clone()
                } else {
                    crate::arith::induce(&chi, crate::arith::lcm(modulus, p)).unwrap()
                };
                let f = PeriodicMult::from_character(&extended);
                if !MultSpec::Periodic(f.clone()).vanishes_at_multiples_of(p) {
                    continue;
                }
                let direct = dfao_for_f2_part(p, &MultSpec::Periodic(f.clone()));
                let via_removal = f2_part_via_power_removal(p, &f);
                assert_eq!(
                    minimize(&direct),
                    minimize(&via_removal),
                    "p = {p}, modulus = {modulus}"
                );
            }
        }
    }

    #[test]
    fn f2_part_principal_mod_2_is_one_off_zero() {
        let f2 = MultSpec::Periodic(PeriodicMult::from_character(&characters_mod(2).remove(0)));
        let d = dfao_for_f2_part(2, &f2);
        for n in 1..100_000u64 {
            assert_eq!(d.eval(n), Value::one());
        }
    }

    #[test]
    fn f2_part_character_mod_4_matches_oracle() {
        let chi = characters_mod(4).remove(1);
        let f2 = MultSpec::Periodic(PeriodicMult::from_character(&chi));
        let d = dfao_for_f2_part(2, &f2);
        for n in 1..100_000u64 {
            assert_eq!(d.eval(n), chi.value(p_free_part(2, n)), "n = {n}");
        }
    }

    #[test]
    fn f2_part_finite_support_is_power_indicator() {
        let f2 = MultSpec::Finite(FiniteSupport::point_mass_at_one());
        let d = dfao_for_f2_part(2, &f2);
        for n in 1..100_000u64 {
            let expect = if n.is_power_of_two() { Value::one() } else { Value::Zero };
            assert_eq!(d.eval(n), expect, "n = {n}");
        }
    }

    #[test]
    fn f2_part_finite_support_two_primes() {
        let mut map = BTreeMap::new();
        map.insert((3u64, 1u32), Value::integer(-1));
        map.insert((5, 2), Value::root_of_unity(1, 4));
        let fin = FiniteSupport::new(map).unwrap();
        let f2 = MultSpec::Finite(fin.clone());
        let d = dfao_for_f2_part(2, &f2);
        for n in 1..60_000u64 {
            assert_eq!(d.eval(n), fin.value(p_free_part(2, n)), "n = {n}");
        }
    }

    #[test]
    fn full_dfao_matches_oracle() {
        let spec = pd_spec();
        let d = spec.dfao();
        let a = spec.oracle();
        for n in 0..100_000u64 {
            assert_eq!(d.eval(n), a.value(n), "n = {n}");
        }
        assert_eq!(d.n_states(), 4);
    }
}
