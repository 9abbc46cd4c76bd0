//! Deterministic finite automata with output.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::seq::SequenceOracle;
use crate::value::Value;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomataError {
    #[error("zero-stability violated at state {state}: output(δ(s,0)) ≠ output(s)")]
    ZeroInstability { state: usize },
    #[error("base must be at least 2, got {0}")]
    BadBase(u32),
    #[error("state {state} has {found} transitions, expected {expected}")]
    BadTransitionCount { state: usize, found: usize, expected: usize },
    #[error("transition target {target} out of range ({n_states} states)")]
    BadTarget { target: usize, n_states: usize },
    #[error("initial state {0} out of range")]
    BadInitial(usize),
    #[error("bases differ: {0} vs {1}")]
    BaseMismatch(u32, u32),
    #[error("no repeated state on the digit run; n must be at least base^n_states")]
    NoRepetition,
}

/// One state: a total transition row over digits `0..base` and an output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaoState {
    pub delta: Vec<usize>,
    pub output: Value,
}

/// DFAO over the digit alphabet `{0, …, base−1}`, least significant digit
/// first. Construction prunes unreachable states, renumbers the rest in
/// breadth-first order from the initial state (making structural equality
/// canonical), and checks zero-stability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    initial: usize,
    states: Vec<DfaoState>,
}

impl Dfao {
    pub fn new(base: u32, initial: usize, states: Vec<DfaoState>) -> Result<Self, AutomataError> {
        if base < 2 {
            return Err(AutomataError::BadBase(base));
        }
        let n = states.len();
        if initial >= n {
            return Err(AutomataError::BadInitial(initial));
        }
        for (i, s) in states.iter().enumerate() {
            if s.delta.len() != base as usize {
                return Err(AutomataError::BadTransitionCount {
                    state: i,
                    found: s.delta.len(),
                    expected: base as usize,
                });
            }
            for &t in &s.delta {
                if t >= n {
                    return Err(AutomataError::BadTarget { target: t, n_states: n });
                }
            }
        }

        // Reachability prune + canonical BFS renumbering.
        let mut order = Vec::with_capacity(n);
        let mut index = vec![usize::MAX; n];
        order.push(initial);
        index[initial] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for &t in &states[s].delta {
                if index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                }
            }
        }
        let renumbered: Vec<DfaoState> = order
            .iter()
            .map(|&old| DfaoState {
                delta: states[old].delta.iter().map(|&t| index[t]).collect(),
                output: states[old].output.clone(),
            })
            .collect();

        let dfao = Dfao { base, initial: 0, states: renumbered };
        dfao.check_zero_stability()?;
        Ok(dfao)
    }

    /// Single-state automaton computing a constant.
    pub fn constant(base: u32, value: Value) -> Self {
        Dfao::new(base, 0, vec![DfaoState { delta: vec![0; base as usize], output: value }])
            .expect("constant automaton is well-formed")
    }

    fn check_zero_stability(&self) -> Result<(), AutomataError> {
        for (i, s) in self.states.iter().enumerate() {
            if self.states[s.delta[0]].output != s.output {
                return Err(AutomataError::ZeroInstability { state: i });
            }
        }
        Ok(())
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[DfaoState] {
        &self.states
    }

    pub fn output(&self, state: usize) -> &Value {
        &self.states[state].output
    }

    pub fn step(&self, state: usize, digit: u32) -> usize {
        self.states[state].delta[digit as usize]
    }

    /// State reached from `state` by the base-λ digits of `n`, LSD first.
    pub fn run_from(&self, mut state: usize, mut n: u64) -> usize {
        let base = self.base as u64;
        while n > 0 {
            state = self.step(state, (n % base) as u32);
            n /= base;
        }
        state
    }

    /// Value of the sequence at `n`; `n = 0` reads the empty digit string.
    pub fn eval(&self, n: u64) -> Value {
        self.states[self.run_from(self.initial, n)].output.clone()
    }

    pub fn eval_big(&self, n: &BigUint) -> Value {
        if let Some(small) = n.to_u64() {
            return self.eval(small);
        }
        let base = BigUint::from(self.base);
        let mut state = self.initial;
        let mut m = n.clone();
        while !m.is_zero() {
            let (q, r) = num_integer::Integer::div_rem(&m, &base);
            state = self.step(state, r.to_u32().expect("digit fits u32"));
            m = q;
        }
        self.states[state].output.clone()
    }

    /// The finite set of output values, deduplicated, in state order.
    pub fn output_alphabet(&self) -> Vec<Value> {
        let mut seen = Vec::new();
        for s in &self.states {
            if !seen.contains(&s.output) {
                seen.push(s.output.clone());
            }
        }
        seen
    }
}

impl SequenceOracle for Dfao {
    fn value_big(&self, n: &BigUint) -> Value {
        self.eval_big(n)
    }

    fn value(&self, n: u64) -> Value {
        self.eval(n)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Hand-built automaton for `(-1)^{ν_2(n)}` with `a(0) = 0`: two
    /// zero-run states tracking the parity of trailing zeros, two sinks.
    pub(crate) fn period_doubling_dfao() -> Dfao {
        let z = Value::Zero;
        let one = Value::one();
        let minus = Value::integer(-1);
        Dfao::new(
            2,
            0,
            vec![
                DfaoState { delta: vec![1, 2], output: z.clone() }, // even zeros so far
                DfaoState { delta: vec![0, 3], output: z },         // odd zeros so far
                DfaoState { delta: vec![2, 2], output: one },       // ν even, fixed
                DfaoState { delta: vec![3, 3], output: minus },     // ν odd, fixed
            ],
        )
        .unwrap()
    }

    #[test]
    fn eval_reads_lsd_first() {
        let d = period_doubling_dfao();
        assert_eq!(d.eval(0), Value::Zero);
        assert_eq!(d.eval(1), Value::one());
        assert_eq!(d.eval(2), Value::integer(-1));
        assert_eq!(d.eval(12), Value::one()); // ν_2(12) = 2
        for n in 1u64..4096 {
            let expect = if crate::arith::nu(2, n).is_multiple_of(2) { Value::one() } else { Value::integer(-1) };
            assert_eq!(d.eval(n), expect, "n = {n}");
        }
    }

    #[test]
    fn eval_big_matches_eval() {
        let d = period_doubling_dfao();
        for n in 0u64..2000 {
            assert_eq!(d.eval(n), d.eval_big(&BigUint::from(n)));
        }
    }

    #[test]
    fn construction_prunes_and_canonicalizes() {
        // state 2 unreachable; states listed in a scrambled order
        let d = Dfao::new(
            2,
            1,
            vec![
                DfaoState { delta: vec![0, 0], output: Value::one() },
                DfaoState { delta: vec![1, 0], output: Value::one() },
                DfaoState { delta: vec![2, 2], output: Value::integer(7) },
            ],
        )
        .unwrap();
        assert_eq!(d.n_states(), 2);
        assert_eq!(d.initial(), 0);
    }

    #[test]
    fn zero_instability_is_rejected() {
        let err = Dfao::new(
            2,
            0,
            vec![
                DfaoState { delta: vec![1, 1], output: Value::one() },
                DfaoState { delta: vec![1, 1], output: Value::integer(-1) },
            ],
        )
        .unwrap_err();
        assert_eq!(err, AutomataError::ZeroInstability { state: 0 });
    }

    #[test]
    fn constant_automaton() {
        let d = Dfao::constant(3, Value::root_of_unity(1, 3));
        assert_eq!(d.n_states(), 1);
        for n in 0..100 {
            assert_eq!(d.eval(n), Value::root_of_unity(1, 3));
        }
    }
}
