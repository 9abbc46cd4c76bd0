//! Moore partition refinement.

use std::collections::HashMap;

use super::dfao::{Dfao, DfaoState};

/// Minimal DFAO computing the same function, states in canonical
/// breadth-first order (so two minimizations of eval-equal automata are
/// structurally equal).
pub fn minimize(d: &Dfao) -> Dfao {
    let n = d.n_states();
    let base = d.base() as usize;

    // initial partition: by output value
    let mut block = vec![0usize; n];
    {
        let mut ids: HashMap<&crate::value::Value, usize> = HashMap::new();
        for s in 0..n {
            let next = ids.len();
            block[s] = *ids.entry(d.output(s)).or_insert(next);
        }
    }

    // Refine on (block, successor blocks) until stable. Block ids are
    // first-occurrence ranks in state order, so the assignment is reproduced
    // exactly at the fixpoint and the loop terminates on equality.
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![0usize; n];
        for s in 0..n {
            let mut key = Vec::with_capacity(base + 1);
            key.push(block[s]);
            for digit in 0..base {
                key.push(block[d.step(s, digit as u32)]);
            }
            let fresh = ids.len();
            next[s] = *ids.entry(key).or_insert(fresh);
        }
        if next == block {
            break;
        }
        block = next;
    }

    // one representative state per block; Dfao::new renumbers canonically
    let n_blocks = block.iter().max().map(|m| m + 1).unwrap_or(0);
    let mut rep = vec![usize::MAX; n_blocks];
    for s in 0..n {
        if rep[block[s]] == usize::MAX {
            rep[block[s]] = s;
        }
    }
    let states: Vec<DfaoState> = rep
        .iter()
        .map(|&s| DfaoState {
            delta: (0..base).map(|digit| block[d.step(s, digit as u32)]).collect(),
            output: d.output(s).clone(),
        })
        .collect();
    Dfao::new(d.base(), block[d.initial()], states).expect("refinement preserves well-formedness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::Value;

    #[test]
    fn duplicate_constant_states_collapse() {
        let one = Value::one();
        let d = Dfao::new(
            2,
            0,
            vec![
                DfaoState { delta: vec![1, 2], output: one.clone() },
                DfaoState { delta: vec![0, 1], output: one.clone() },
                DfaoState { delta: vec![2, 0], output: one.clone() },
            ],
        )
        .unwrap();
        let m = minimize(&d);
        assert_eq!(m.n_states(), 1);
        assert_eq!(m.eval(99), one);
    }

    #[test]
    fn minimize_is_idempotent_and_eval_preserving() {
        let d = crate::automata::dfao::tests::period_doubling_dfao();
        let m = minimize(&d);
        assert_eq!(m.n_states(), 4);
        assert_eq!(minimize(&m), m);
        for n in 0..100_000u64 {
            assert_eq!(m.eval(n), d.eval(n));
        }
    }

    #[test]
    fn distinguishes_states_with_equal_outputs() {
        // states 0 and 1 share the output but behave differently on digit 1
        let d = crate::automata::dfao::tests::period_doubling_dfao();
        let m = minimize(&d);
        assert_eq!(m.eval(2), Value::integer(-1));
        assert_eq!(m.eval(4), Value::one());
    }
}
