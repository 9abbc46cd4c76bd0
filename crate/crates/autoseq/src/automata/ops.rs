//! Closure constructions: value maps, pair products, base changes,
//! arithmetic-progression restrictions and p-power removal.

use std::collections::HashMap;

use super::dfao::{AutomataError, Dfao, DfaoState};
use super::kernel::{kernel_dfao_certified, KernelError, KernelOptions};
use crate::value::Value;

/// Composes the output map with `map`; states and transitions are unchanged.
/// Zero-stability is re-checked by construction (it cannot break, since the
/// new outputs are a function of the old ones).
pub fn map_values(d: &Dfao, map: impl Fn(&Value) -> Value) -> Dfao {
    let states = d
        .states()
        .iter()
        .map(|s| DfaoState { delta: s.delta.clone(), output: map(&s.output) })
        .collect();
    Dfao::new(d.base(), d.initial(), states).expect("value map preserves well-formedness")
}

/// Pair construction on reachable state pairs with a combined output.
pub fn product_with(
    d1: &Dfao,
    d2: &Dfao,
    combine: impl Fn(&Value, &Value) -> Value,
) -> Result<Dfao, AutomataError> {
    if d1.base() != d2.base() {
        return Err(AutomataError::BaseMismatch(d1.base(), d2.base()));
    }
    let base = d1.base();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let start = (d1.initial(), d2.initial());
    index.insert(start, 0);
    order.push(start);
    let mut states: Vec<DfaoState> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (s1, s2) = order[head];
        head += 1;
        let mut delta = Vec::with_capacity(base as usize);
        for digit in 0..base {
            let next = (d1.step(s1, digit), d2.step(s2, digit));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = order.len();
                    index.insert(next, id);
                    order.push(next);
                    id
                }
            };
            delta.push(id);
        }
        states.push(DfaoState { delta, output: combine(d1.output(s1), d2.output(s2)) });
    }
    Dfao::new(base, 0, states)
}

/// The pointwise product sequence `n ↦ f(n)·g(n)`; at most `|Q1|·|Q2|` states.
pub fn product(d1: &Dfao, d2: &Dfao) -> Result<Dfao, AutomataError> {
    product_with(d1, d2, Value::mul)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasePowerDirection {
    Up,
    Down,
}

/// Regroups digits `k` at a time: the same sequence over base `λ^k`.
pub fn base_power_up(d: &Dfao, k: u32) -> Dfao {
    assert!(k >= 1, "exponent must be positive");
    let old_base = d.base() as u64;
    let new_base = old_base.pow(k);
    let new_base_u32 = u32::try_from(new_base).expect("grouped base fits u32");
    let states = d
        .states()
        .iter()
        .enumerate()
        .map(|(s, st)| {
            let delta = (0..new_base)
                .map(|digit| {
                    // expand the group LSD-first inside the block
                    let mut state = s;
                    let mut rest = digit;
                    for _ in 0..k {
                        state = d.step(state, (rest % old_base) as u32);
                        rest /= old_base;
                    }
                    state
                })
                .collect();
            DfaoState { delta, output: st.output.clone() }
        })
        .collect();
    Dfao::new(new_base_u32, d.initial(), states).expect("digit grouping preserves well-formedness")
}

/// Re-expresses `d` (whose base must be `μ^k` for the given `k`) in base `μ`,
/// by closing the μ-kernel of its eval sequence. The μ-kernel of a
/// μ^k-automatic sequence is finite, so a budget proportional to the state
/// count suffices; `BudgetExceeded` means the budget heuristic was too tight.
pub fn base_power_down(d: &Dfao, k: u32, opts: Option<KernelOptions>) -> Result<Dfao, KernelError> {
    assert!(k >= 1, "exponent must be positive");
    let mu = integer_kth_root(d.base(), k)
        .unwrap_or_else(|| panic!("base {} is not a perfect {k}-th power", d.base()));
    let opts = opts.unwrap_or(KernelOptions {
        horizon: 2048,
        max_states: (d.n_states() * (d.base() as usize) + 16).max(512),
    });
    kernel_dfao_certified(d, mu, &opts, 1u64 << 14, 1 << 16)
}

/// `direction = Up`: group digits of the current base `k` at a time.
/// `direction = Down`: split each digit into `k` digits of the `k`-th root.
pub fn base_power(
    d: &Dfao,
    k: u32,
    direction: BasePowerDirection,
) -> Result<Dfao, KernelError> {
    match direction {
        BasePowerDirection::Up => Ok(base_power_up(d, k)),
        BasePowerDirection::Down => base_power_down(d, k, None),
    }
}

fn integer_kth_root(n: u32, k: u32) -> Option<u32> {
    if k == 1 {
        return Some(n);
    }
    let mut m = 2u32;
    loop {
        let power = (m as u64).checked_pow(k)?;
        match power.cmp(&(n as u64)) {
            std::cmp::Ordering::Equal => return Some(m),
            std::cmp::Ordering::Greater => return None,
            std::cmp::Ordering::Less => m += 1,
        }
    }
}

/// The restriction `n ↦ f(a·n + b)` as a DFAO, via a carry-augmented product:
/// a state is `(carry, state of d)`; reading digit `x` of `n` emits digit
/// `(a·x + carry) mod λ` into `d` and keeps `(a·x + carry) div λ`. The output
/// of `(carry, q)` flushes the remaining carry digits into `d` from `q`.
pub fn restrict_progression(d: &Dfao, a: u64, b: u64) -> Dfao {
    assert!(a >= 1, "progression step must be positive");
    let base = d.base() as u64;
    let mut index: HashMap<(u64, usize), usize> = HashMap::new();
    let mut order: Vec<(u64, usize)> = Vec::new();
    let start = (b, d.initial());
    index.insert(start, 0);
    order.push(start);
    let mut states: Vec<DfaoState> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (carry, q) = order[head];
        head += 1;
        let mut delta = Vec::with_capacity(base as usize);
        for digit in 0..base {
            let total = a * digit + carry;
            let next = (total / base, d.step(q, (total % base) as u32));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = order.len();
                    index.insert(next, id);
                    order.push(next);
                    id
                }
            };
            delta.push(id);
        }
        // flush: value after feeding the digits of `carry` into d from q
        let output = d.output(d.run_from(q, carry)).clone();
        states.push(DfaoState { delta, output });
    }
    Dfao::new(d.base(), 0, states).expect("carry product preserves well-formedness")
}

/// The sequence `n ↦ f(n / p^{ν_p(n)})` for a prime-base automaton: a fresh
/// copy of the initial state whose 0-digit transition loops back to itself,
/// so low-order zero digits are skipped. The copy is needed because a run
/// may re-enter the original initial state mid-word, where a 0 digit must
/// keep its old meaning; the new automaton has at most one extra state,
/// matching the kernel growing by at most one class.
pub fn remove_p_powers(d: &Dfao) -> Dfao {
    assert!(crate::arith::is_prime(d.base() as u64), "base must be prime");
    let mut states: Vec<DfaoState> = d.states().to_vec();
    let fresh = states.len();
    let mut skip_state = states[d.initial()].clone();
    skip_state.delta[0] = fresh;
    states.push(skip_state);
    Dfao::new(d.base(), fresh, states).expect("skip state preserves well-formedness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::dfao::tests::period_doubling_dfao;
    use crate::automata::kernel::{kernel_closure, KernelOptions};
    use crate::automata::minimize;
    use crate::seq::SequenceOracle;

    fn pd_value(n: u64) -> Value {
        if n == 0 {
            Value::Zero
        } else if crate::arith::nu(2, n).is_multiple_of(2) {
            Value::one()
        } else {
            Value::integer(-1)
        }
    }

    #[test]
    fn map_values_identity_is_structural_noop() {
        let d = period_doubling_dfao();
        assert_eq!(map_values(&d, Value::clone), d);
    }

    #[test]
    fn squaring_the_period_doubling_outputs_gives_constant_one_off_zero() {
        let d = period_doubling_dfao();
        let sq = minimize(&map_values(&d, |v| v.mul(v)));
        // (±1)² = 1; the zero-run states keep output 0
        for n in 1..4096u64 {
            assert_eq!(sq.eval(n), Value::one());
        }
        assert!(sq.n_states() <= 2);
    }

    #[test]
    fn support_indicator_via_map() {
        let d = period_doubling_dfao();
        let ind = map_values(&d, |v| if v.is_zero() { Value::Zero } else { Value::one() });
        for n in 0..100_000u64 {
            let expect = if n == 0 { Value::Zero } else { Value::one() };
            assert_eq!(ind.eval(n), expect);
        }
    }

    #[test]
    fn product_with_constant_one_is_eval_equal() {
        let d = period_doubling_dfao();
        let one = Dfao::constant(2, Value::one());
        let p = product(&d, &one).unwrap();
        for n in 0..4096u64 {
            assert_eq!(p.eval(n), d.eval(n));
        }
        assert!(p.n_states() <= d.n_states());
    }

    #[test]
    fn product_of_pd_with_itself_is_one_off_zero() {
        let d = period_doubling_dfao();
        let p = product(&d, &d).unwrap();
        for n in 1..4096u64 {
            assert_eq!(p.eval(n), Value::one());
        }
        assert!(p.n_states() <= d.n_states() * d.n_states());
    }

    #[test]
    fn product_projection_minimizes_to_the_factor() {
        // project the pair automaton back onto the first coordinate
        let d = period_doubling_dfao();
        let paired = product_with(&d, &d, |u, _| u.clone()).unwrap();
        assert_eq!(minimize(&paired), minimize(&d));
    }

    #[test]
    fn base_power_round_trip() {
        let d = period_doubling_dfao();
        let up = base_power_up(&d, 2);
        assert_eq!(up.base(), 4);
        for n in 0..100_000u64 {
            assert_eq!(up.eval(n), d.eval(n), "lift differs at {n}");
        }
        // the 4-kernel is contained in the 2-kernel: {a, 1, -1} has 3 classes
        let table = kernel_closure(&up, 4, &KernelOptions::default()).unwrap();
        assert!(table.n_classes() <= 3 + 1, "got {}", table.n_classes());

        let down = base_power_down(&up, 2, None).unwrap();
        assert_eq!(down.base(), 2);
        for n in 0..100_000u64 {
            assert_eq!(down.eval(n), d.eval(n), "round trip differs at {n}");
        }
    }

    #[test]
    fn base_power_up_k1_is_structural_noop() {
        let d = period_doubling_dfao();
        assert_eq!(base_power_up(&d, 1), d);
    }

    #[test]
    fn restriction_examples() {
        let d = period_doubling_dfao();
        // a = 1, b = 0: unchanged
        let same = restrict_progression(&d, 1, 0);
        for n in 0..20_000u64 {
            assert_eq!(same.eval(n), d.eval(n));
        }
        // a(2n) = -a(n)
        let doubled = restrict_progression(&d, 2, 0);
        for n in 0..20_000u64 {
            assert_eq!(doubled.eval(n), d.eval(n).neg().clone(), "n = {n}");
        }
        // a(2n+1) = 1
        let odd = restrict_progression(&d, 2, 1);
        for n in 0..20_000u64 {
            assert_eq!(odd.eval(n), Value::one());
        }
    }

    #[test]
    fn restriction_matches_direct_computation() {
        let d = period_doubling_dfao();
        for (a, b) in [(3u64, 7u64), (5, 0), (4, 2), (1, 9), (7, 23)] {
            let r = restrict_progression(&d, a, b);
            for n in 0..5_000u64 {
                assert_eq!(r.eval(n), pd_value(a * n + b), "a={a} b={b} n={n}");
            }
        }
    }

    #[test]
    fn remove_p_powers_examples() {
        let d = period_doubling_dfao();
        let tilde = remove_p_powers(&d);
        // ν_2 of the odd part is 0, so the result is 1 for all n ≥ 1
        for n in 1..100_000u64 {
            assert_eq!(tilde.eval(n), Value::one());
        }
        // constants are unchanged
        let c = Dfao::constant(2, Value::rational(2, 7));
        let tc = remove_p_powers(&c);
        for n in 0..1000u64 {
            assert_eq!(tc.eval(n), c.eval(n));
        }
    }

    #[test]
    fn remove_p_powers_grows_kernel_by_at_most_one() {
        let d = period_doubling_dfao();
        let tilde = remove_p_powers(&d);
        let opts = KernelOptions::default();
        let before = kernel_closure(&d, 2, &opts).unwrap().n_classes();
        let after = kernel_closure(&tilde, 2, &opts).unwrap().n_classes();
        assert!(after <= before + 1, "{after} > {before} + 1");
    }

    #[test]
    fn pair_oracle_matches_pointwise_product() {
        let d = period_doubling_dfao();
        let doubled = restrict_progression(&d, 2, 0);
        let p = product(&d, &doubled).unwrap();
        for n in 0..5000u64 {
            assert_eq!(p.value(n), d.eval(n).mul(&doubled.eval(n)));
        }
    }
}
