//! Multiplicative `f2` data: periodic with a certified table, or finitely
//! supported on prime powers.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::arith::{factorize, gcd, is_prime, lcm};
use crate::value::Value;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("f2(1) must be 1, found {0}")]
    UnitMissing(String),
    #[error("multiplicativity fails at coprime pair ({m}, {n})")]
    NotMultiplicative { m: u64, n: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("finite support key {p}^{e} is invalid: {reason}")]
    BadSupportKey { p: u64, e: u32, reason: String },
    #[error("f1(0) must be 1, found {0}")]
    F1UnitMissing(String),
    #[error("f2 must vanish at multiples of {p}, but f2({n}) is nonzero")]
    NonzeroAtMultiple { p: u64, n: u64 },
    #[error("period table must be non-empty")]
    EmptyTable,
}

/// Periodic multiplicative function given by a full-period value table
/// indexed by `n mod d`; kept with the minimal period and certified
/// multiplicative on all coprime pairs with product at most `2d²` (periodic
/// multiplicativity is determined by residues, and that range covers every
/// residue pair at least twice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicMult {
    table: Vec<Value>,
}

impl PeriodicMult {
    pub fn new(table: Vec<Value>) -> Result<Self, SpecError> {
        if table.is_empty() {
            return Err(SpecError::EmptyTable);
        }
        let mut f = PeriodicMult { table };
        f.reduce_period();
        f.certify()?;
        Ok(f)
    }

    /// The character `χ` as a periodic multiplicative function.
    pub fn from_character(chi: &crate::arith::DirichletCharacter) -> Self {
        let table = (0..chi.modulus()).map(|r| chi.value(r)).collect();
        PeriodicMult::new(table).expect("characters are multiplicative")
    }

    fn reduce_period(&mut self) {
        let len = self.table.len();
        for d in 1..=len {
            if len.is_multiple_of(d) && (0..len).all(|i| self.table[i] == self.table[i % d]) {
                self.table.truncate(d);
                return;
            }
        }
    }

    fn certify(&self) -> Result<(), SpecError> {
        if !self.value(1).is_one() {
            return Err(SpecError::UnitMissing(self.value(1).to_string()));
        }
        let bound = 2 * (self.period() * self.period()).max(4);
        for m in 2..=bound {
            if m * m > bound {
                break;
            }
            for n in m..=bound / m {
                if gcd(m, n) == 1 && self.value(m * n) != self.value(m).mul(&self.value(n)) {
                    return Err(SpecError::NotMultiplicative { m, n });
                }
            }
        }
        Ok(())
    }

    pub fn period(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    pub fn value(&self, n: u64) -> Value {
        self.table[(n % self.period()) as usize].clone()
    }
}

/// Multiplicative function supported on finitely many integers: nonzero
/// exactly on products of the listed prime powers (one exponent per prime),
/// with `f(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSupport {
    prime_powers: BTreeMap<(u64, u32), Value>,
    support_bound: u64,
}

impl FiniteSupport {
    pub fn new(prime_powers: BTreeMap<(u64, u32), Value>) -> Result<Self, SpecError> {
        for (&(p, e), v) in &prime_powers {
            if !is_prime(p) {
                return Err(SpecError::BadSupportKey { p, e, reason: "not prime".into() });
            }
            if e == 0 {
                return Err(SpecError::BadSupportKey { p, e, reason: "exponent 0".into() });
            }
            if v.is_zero() {
                return Err(SpecError::BadSupportKey { p, e, reason: "zero value".into() });
            }
        }
        let support_bound = prime_powers
            .keys()
            .fold(BTreeMap::<u64, u64>::new(), |mut acc, &(p, e)| {
                let pe = p.pow(e);
                let slot = acc.entry(p).or_insert(1);
                *slot = (*slot).max(pe);
                acc
            })
            .values()
            .product::<u64>();
        Ok(FiniteSupport { prime_powers, support_bound })
    }

    /// The function that is 1 at `n = 1` and 0 everywhere else.
    pub fn point_mass_at_one() -> Self {
        FiniteSupport::new(BTreeMap::new()).expect("empty support is valid")
    }

    pub fn prime_powers(&self) -> &BTreeMap<(u64, u32), Value> {
        &self.prime_powers
    }

    pub fn value(&self, n: u64) -> Value {
        if n == 0 {
            return Value::Zero;
        }
        if n == 1 {
            return Value::one();
        }
        if n > self.support_bound {
            return Value::Zero;
        }
        let mut acc = Value::one();
        for (q, e) in factorize(n) {
            match self.prime_powers.get(&(q, e)) {
                Some(v) => acc = acc.mul(v),
                None => return Value::Zero,
            }
        }
        acc
    }

    /// All integers with a nonzero value, ascending (always contains 1).
    pub fn support(&self) -> Vec<u64> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &(p, e) in self.prime_powers.keys() {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
        let mut out = vec![1u64];
        for powers in by_prime.values() {
            let mut next = out.clone();
            for &pe in powers {
                next.extend(out.iter().map(|&n| n * pe));
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    pub fn support_bound(&self) -> u64 {
        self.support_bound
    }
}

/// The `f2` of a theorem-form specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultSpec {
    Periodic(PeriodicMult),
    Finite(FiniteSupport),
}

impl MultSpec {
    pub fn value(&self, n: u64) -> Value {
        match self {
            MultSpec::Periodic(f) => f.value(n),
            MultSpec::Finite(f) => f.value(n),
        }
    }

    pub fn value_big(&self, n: &BigUint) -> Value {
        match self {
            MultSpec::Periodic(f) => {
                let r = (n % BigUint::from(f.period())).to_u64().expect("residue fits");
                f.value(r)
            }
            MultSpec::Finite(f) => match n.to_u64() {
                Some(small) => f.value(small),
                None => Value::Zero,
            },
        }
    }

    /// True when `f2(n) = 0` for every multiple of `p`.
    pub fn vanishes_at_multiples_of(&self, p: u64) -> bool {
        match self {
            MultSpec::Periodic(f) => {
                let reach = lcm(f.period(), p);
                (1..=reach / p).all(|k| f.value(k * p).is_zero())
            }
            MultSpec::Finite(f) => f.prime_powers.keys().all(|&(q, _)| q != p),
        }
    }

    /// Declared support bound for finitely supported functions.
    pub fn support_bound(&self) -> Option<u64> {
        match self {
            MultSpec::Periodic(_) => None,
            MultSpec::Finite(f) => Some(f.support_bound),
        }
    }
}
