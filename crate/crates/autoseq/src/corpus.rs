//! Named and seeded test corpora: theorem-form specifications across bases
//! 2, 3 and 5, dense and sparse, plus random zero-stable DFAOs.
//!
//! Everything here is deterministic: named instances are fixed, seeded
//! generators use a counter-based ChaCha stream.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{characters_mod, induce, lcm};
use crate::automata::{Dfao, DfaoState};
use crate::construct::{FiniteSupport, MultSpec, PeriodicMult, TheoremFormSpec};
use crate::seq::EventuallyPeriodicSeq;
use crate::value::Value;

/// What the constructing data says the classification must find.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedKind {
    /// Periodic `f2` with a nonzero periodic part: the classifier must fit a
    /// character at exactly this modulus.
    Dense { modulus: u64 },
    /// Finitely supported `f2`: the classifier must find a zero fit.
    Sparse,
}

#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: &'static str,
    pub spec: TheoremFormSpec,
    pub expect: ExpectedKind,
}

/// `a(n) = (-1)^{ν_2(n)}`, the period-doubling variant.
pub fn period_doubling() -> TheoremFormSpec {
    let f1 = EventuallyPeriodicSeq::new(vec![], vec![Value::one(), Value::integer(-1)]);
    let f2 = MultSpec::Periodic(PeriodicMult::from_character(&characters_mod(2).remove(0)));
    TheoremFormSpec::new(2, f1, f2).expect("valid")
}

/// `f1(0) = 1, f1(k) = -1 for k ≥ 1`, principal `f2`: mean exactly zero.
pub fn zero_mean_example() -> TheoremFormSpec {
    let f1 = EventuallyPeriodicSeq::new(vec![Value::one()], vec![Value::integer(-1)]);
    let f2 = MultSpec::Periodic(PeriodicMult::from_character(&characters_mod(2).remove(0)));
    TheoremFormSpec::new(2, f1, f2).expect("valid")
}

/// Indicator of `2^m` with `m` even: sparse, not almost periodic.
pub fn even_exponent_power_indicator() -> TheoremFormSpec {
    let f1 = EventuallyPeriodicSeq::new(vec![], vec![Value::one(), Value::Zero]);
    let f2 = MultSpec::Finite(FiniteSupport::point_mass_at_one());
    TheoremFormSpec::new(2, f1, f2).expect("valid")
}

/// Dense instance whose fitted modulus is 12 (`h = 3`, `λ = 4`): `f2` is the
/// primitive character mod 12, so no smaller modulus fits.
pub fn primitive_mod_12() -> TheoremFormSpec {
    let chi = characters_mod(12)
        .into_iter()
        .find(|c| {
            let (c4, c3) = crate::arith::crt_split(c, 4, 3).expect("coprime split");
            !c4.is_principal() && !c3.is_principal()
        })
        .expect("primitive character mod 12 exists");
    let f1 = EventuallyPeriodicSeq::new(vec![], vec![Value::one(), Value::integer(-1)]);
    TheoremFormSpec::new(2, f1, MultSpec::Periodic(PeriodicMult::from_character(&chi)))
        .expect("valid")
}

/// The fixed named corpus.
pub fn corpus() -> Vec<CorpusInstance> {
    let chi = |modulus: u64, index: usize| characters_mod(modulus).remove(index);
    let periodic =
        |c: &crate::arith::DirichletCharacter| MultSpec::Periodic(PeriodicMult::from_character(c));
    let ev = |pre: Vec<Value>, per: Vec<Value>| EventuallyPeriodicSeq::new(pre, per);
    let one = Value::one();
    let minus = Value::integer(-1);
    let i = Value::root_of_unity(1, 4);

    let mut out: Vec<CorpusInstance> = Vec::new();
    let mut push = |name: &'static str, spec: TheoremFormSpec, expect: ExpectedKind| {
        out.push(CorpusInstance { name, spec, expect });
    };

    push("period-doubling", period_doubling(), ExpectedKind::Dense { modulus: 2 });
    push(
        "all-one",
        TheoremFormSpec::new(2, ev(vec![], vec![one.clone()]), periodic(&chi(2, 0))).unwrap(),
        ExpectedKind::Dense { modulus: 1 },
    );
    push("zero-mean", zero_mean_example(), ExpectedKind::Dense { modulus: 2 });
    push(
        "quarter-phase",
        TheoremFormSpec::new(
            2,
            ev(vec![], vec![one.clone(), i.clone(), minus.clone(), Value::root_of_unity(3, 4)]),
            periodic(&chi(2, 0)),
        )
        .unwrap(),
        ExpectedKind::Dense { modulus: 2 },
    );
    push(
        "char4",
        TheoremFormSpec::new(2, ev(vec![], vec![one.clone(), minus.clone()]), periodic(&chi(4, 1)))
            .unwrap(),
        ExpectedKind::Dense { modulus: 4 },
    );
    push("primitive-12", primitive_mod_12(), ExpectedKind::Dense { modulus: 12 });
    push(
        "toeplitz-char4",
        TheoremFormSpec::new(2, ev(vec![], vec![one.clone()]), periodic(&chi(4, 1))).unwrap(),
        ExpectedKind::Dense { modulus: 4 },
    );
    push(
        "preperiod-char4",
        TheoremFormSpec::new(
            2,
            ev(vec![one.clone(), Value::rational(3, 2)], vec![minus.clone(), one.clone()]),
            periodic(&chi(4, 1)),
        )
        .unwrap(),
        ExpectedKind::Dense { modulus: 4 },
    );
    push(
        "base3-pd",
        TheoremFormSpec::new(3, ev(vec![], vec![one.clone(), minus.clone()]), periodic(&chi(3, 0)))
            .unwrap(),
        ExpectedKind::Dense { modulus: 3 },
    );
    push(
        "base3-h4",
        TheoremFormSpec::new(
            3,
            ev(vec![], vec![one.clone(), Value::root_of_unity(1, 3), Value::root_of_unity(2, 3)]),
            periodic(&induce(&chi(4, 1), 12).unwrap()),
        )
        .unwrap(),
        ExpectedKind::Dense { modulus: 12 },
    );
    push(
        "base5-pd",
        TheoremFormSpec::new(5, ev(vec![], vec![one.clone(), minus.clone()]), periodic(&chi(5, 0)))
            .unwrap(),
        ExpectedKind::Dense { modulus: 5 },
    );
    push("sparse-even-powers", even_exponent_power_indicator(), ExpectedKind::Sparse);
    push(
        "sparse-two-primes",
        TheoremFormSpec::new(
            2,
            ev(vec![], vec![one.clone()]),
            MultSpec::Finite(
                FiniteSupport::new(BTreeMap::from([((3, 1), minus.clone())])).unwrap(),
            ),
        )
        .unwrap(),
        ExpectedKind::Sparse,
    );
    push(
        "finite-support",
        TheoremFormSpec::new(
            3,
            ev(vec![one.clone()], vec![Value::Zero]),
            MultSpec::Finite(FiniteSupport::new(BTreeMap::from([((2, 2), i)])).unwrap()),
        )
        .unwrap(),
        ExpectedKind::Sparse,
    );
    push(
        "sparse-base5-phases",
        TheoremFormSpec::new(
            5,
            ev(vec![], vec![one, Value::root_of_unity(1, 4)]),
            MultSpec::Finite(
                FiniteSupport::new(BTreeMap::from([
                    ((2, 1), minus),
                    ((3, 2), Value::root_of_unity(1, 3)),
                ]))
                .unwrap(),
            ),
        )
        .unwrap(),
        ExpectedKind::Sparse,
    );
    out
}

const VALUE_PALETTE: [(i64, i64); 8] =
    [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (5, 6)];

fn random_unit(rng: &mut ChaCha8Rng) -> Value {
    let (num, den) = VALUE_PALETTE[rng.gen_range(0..VALUE_PALETTE.len())];
    Value::root_of_unity(num, den)
}

fn random_value(rng: &mut ChaCha8Rng) -> Value {
    if rng.gen_bool(0.2) {
        Value::Zero
    } else {
        random_unit(rng)
    }
}

/// Seeded random theorem-form specifications: `p ∈ {2, 3, 5}`, `f1` with
/// preperiod ≤ 3 and period ≤ 4, `f2` drawn from characters mod `d ≤ 12`
/// (zero-extended to vanish at multiples of `p`) and random finite supports
/// on at most 4 prime powers.
pub fn seeded_specs(seed: u64, count: usize) -> Vec<TheoremFormSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];

        let pre_len = rng.gen_range(0..=3usize);
        let per_len = rng.gen_range(1..=4usize);
        let mut pre: Vec<Value> = (0..pre_len).map(|_| random_value(&mut rng)).collect();
        let mut per: Vec<Value> = (0..per_len).map(|_| random_value(&mut rng)).collect();
        if let Some(first) = pre.first_mut() {
            *first = Value::one();
        } else {
            per[0] = Value::one();
        }
        let f1 = EventuallyPeriodicSeq::new(pre, per);

        let f2 = if rng.gen_bool(0.6) {
            let modulus = rng.gen_range(1..=12u64);
            let chars = characters_mod(modulus);
            let chi = &chars[rng.gen_range(0..chars.len())];
            let extended = if modulus % p == 0 {
                chi.clone()
            } else {
                induce(chi, lcm(modulus, p)).expect("divisor by construction")
            };
            MultSpec::Periodic(PeriodicMult::from_character(&extended))
        } else {
            let mut map = BTreeMap::new();
            let primes: Vec<u64> =
                [2u64, 3, 5, 7, 11, 13].into_iter().filter(|&q| q != p).collect();
            for _ in 0..rng.gen_range(0..=4usize) {
                let q = primes[rng.gen_range(0..primes.len())];
                let e = rng.gen_range(1..=3u32);
                map.insert((q, e), random_unit(&mut rng));
            }
            MultSpec::Finite(FiniteSupport::new(map).expect("valid support"))
        };

        out.push(TheoremFormSpec::new(p, f1, f2).expect("construction is valid"));
    }
    out
}

/// Random well-formed DFAO: random transitions, outputs chosen constant
/// along digit-0 chains so zero-stability holds, unreachable states pruned.
pub fn random_dfao(rng: &mut ChaCha8Rng, base: u32, n_states: usize) -> Dfao {
    assert!(base >= 2 && n_states >= 1);
    let delta: Vec<Vec<usize>> = (0..n_states)
        .map(|_| (0..base).map(|_| rng.gen_range(0..n_states)).collect())
        .collect();

    // union-find over s ~ δ(s, 0)
    fn root(parent: &mut [usize], mut s: usize) -> usize {
        while parent[s] != s {
            parent[s] = parent[parent[s]];
            s = parent[s];
        }
        s
    }
    let mut parent: Vec<usize> = (0..n_states).collect();
    for s in 0..n_states {
        let a = root(&mut parent, s);
        let b = root(&mut parent, delta[s][0]);
        if a != b {
            parent[a] = b;
        }
    }
    let palette = [Value::Zero, Value::one(), Value::integer(-1), Value::root_of_unity(1, 4)];
    let mut assigned: Vec<Option<Value>> = vec![None; n_states];
    let mut pick: Vec<Value> = Vec::new();
    for s in 0..n_states {
        let r = root(&mut parent, s);
        if assigned[r].is_none() {
            assigned[r] = Some(palette[rng.gen_range(0..palette.len())].clone());
        }
        pick.push(assigned[r].clone().expect("assigned above"));
    }
    let states: Vec<DfaoState> = delta
        .into_iter()
        .zip(pick)
        .map(|(delta, output)| DfaoState { delta, output })
        .collect();
    Dfao::new(base, rng.gen_range(0..n_states), states).expect("construction is zero-stable")
}

/// A deterministic batch of random DFAOs.
pub fn random_dfaos(seed: u64, count: usize, base: u32, n_states: usize) -> Vec<Dfao> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_dfao(&mut rng, base, n_states)).collect()
}
