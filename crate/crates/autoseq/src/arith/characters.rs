//! Dirichlet characters with exact phase tables.
//!
//! A character mod `k` is stored as a phase per residue: `χ(n) = e(t)` with
//! `t ∈ ℚ ∩ [0, 1)` for `n` coprime to `k`, and `χ(n) = 0` otherwise.
//! Enumeration goes through the unit group structure: cyclic on odd prime
//! powers (smallest primitive root, so the indexing is stable across runs),
//! `⟨-1⟩ × ⟨3⟩` at `2^e` with `e ≥ 3`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use thiserror::Error;

use super::valuation::{euler_phi, factorize, gcd};
use crate::value::{Rational, Value};

/// Phase fraction in `[0, 1)` with small numerator and denominator.
pub type Phase64 = Ratio<u64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("{d} does not divide {k}")]
    NotDivisible { d: u64, k: u64 },
    #[error("{k1} and {k2} are not coprime")]
    NotCoprime { k1: u64, k2: u64 },
    #[error("expected modulus {expected}, found {found}")]
    ModulusMismatch { expected: u64, found: u64 },
    #[error("{p} does not divide the modulus {modulus}")]
    NotADivisor { p: u64, modulus: u64 },
    #[error("invalid character table: {0}")]
    InvalidTable(String),
}

/// Exact Dirichlet character of modulus `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    /// Phase per residue `0..k`; `None` exactly on residues not coprime to `k`.
    phases: Vec<Option<Phase64>>,
    /// Least common multiple of the phase denominators.
    order: u64,
}

impl DirichletCharacter {
    /// Builds a character from an explicit phase table, verifying the
    /// character axioms exhaustively (all residue pairs).
    pub fn from_phase_table(
        modulus: u64,
        phases: Vec<Option<Phase64>>,
    ) -> Result<Self, CharacterError> {
        let chi = Self::from_parts(modulus, phases)?;
        chi.verify_multiplicative_exhaustive()?;
        Ok(chi)
    }

    /// Structural validation only: the zero pattern, `χ(1) = 1` and reduced
    /// phases. Multiplicativity is the builder's responsibility.
    fn from_parts(modulus: u64, phases: Vec<Option<Phase64>>) -> Result<Self, CharacterError> {
        if modulus == 0 {
            return Err(CharacterError::InvalidTable("modulus must be positive".into()));
        }
        if phases.len() != modulus as usize {
            return Err(CharacterError::InvalidTable(format!(
                "table has {} entries for modulus {}",
                phases.len(),
                modulus
            )));
        }
        for (r, entry) in phases.iter().enumerate() {
            let coprime = gcd(r as u64, modulus) == 1;
            match entry {
                Some(t) => {
                    if !coprime {
                        return Err(CharacterError::InvalidTable(format!(
                            "nonzero value at residue {r} not coprime to {modulus}"
                        )));
                    }
                    if *t >= Ratio::from_integer(1) {
                        return Err(CharacterError::InvalidTable(format!(
                            "phase at residue {r} not reduced into [0, 1)"
                        )));
                    }
                }
                None => {
                    if coprime {
                        return Err(CharacterError::InvalidTable(format!(
                            "zero value at residue {r} coprime to {modulus}"
                        )));
                    }
                }
            }
        }
        let one = if modulus == 1 { 0 } else { 1 };
        if phases[one] != Some(Ratio::from_integer(0)) {
            return Err(CharacterError::InvalidTable("χ(1) must be 1".into()));
        }
        let order = phases
            .iter()
            .flatten()
            .fold(1u64, |acc, t| num_integer::lcm(acc, *t.denom()));
        Ok(DirichletCharacter { modulus, phases, order })
    }

    fn verify_multiplicative_exhaustive(&self) -> Result<(), CharacterError> {
        let k = self.modulus;
        for m in 0..k {
            for n in m..k {
                let lhs = self.phases[((m * n) % k) as usize];
                let rhs = match (self.phases[m as usize], self.phases[n as usize]) {
                    (Some(a), Some(b)) => Some(add_mod1(a, b)),
                    _ => None,
                };
                if lhs != rhs {
                    return Err(CharacterError::InvalidTable(format!(
                        "χ({m})·χ({n}) ≠ χ({m}·{n}) mod {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the character (lcm of phase denominators).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    pub fn phase(&self, n: u64) -> Option<Phase64> {
        self.phases[(n % self.modulus) as usize]
    }

    pub fn phases(&self) -> &[Option<Phase64>] {
        &self.phases
    }

    pub fn value(&self, n: u64) -> Value {
        match self.phase(n) {
            None => Value::Zero,
            Some(t) => phase_value(t),
        }
    }

    pub fn value_big(&self, n: &BigUint) -> Value {
        let r = n % BigUint::from(self.modulus);
        let r: u64 = r.try_into().expect("residue fits u64");
        self.value(r)
    }

    /// `χ(n)^e` as a [`Value`].
    pub fn value_pow(&self, n: u64, e: u64) -> Value {
        match self.phase(n) {
            None => {
                if e == 0 {
                    Value::one()
                } else {
                    Value::Zero
                }
            }
            Some(t) => phase_value(mul_mod1(t, e)),
        }
    }
}

fn phase_value(t: Phase64) -> Value {
    Value::from_polar(
        Rational::from_integer(1.into()),
        Rational::new((*t.numer()).into(), (*t.denom()).into()),
    )
}

/// Adds two phase fractions mod 1.
pub fn phase_add_mod1(a: Phase64, b: Phase64) -> Phase64 {
    add_mod1(a, b)
}

pub(crate) fn add_mod1(a: Phase64, b: Phase64) -> Phase64 {
    let c = a + b;
    if c >= Ratio::from_integer(1) {
        c - Ratio::from_integer(1)
    } else {
        c
    }
}

pub(crate) fn mul_mod1(a: Phase64, e: u64) -> Phase64 {
    Ratio::new((a.numer() * (e % a.denom())) % a.denom(), *a.denom())
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut base = (base % modulus) as u128;
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; requires gcd(a, m) = 1.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r == 1, "not invertible");
    old_s.rem_euclid(m as i128) as u64
}

/// One generating set of `(ℤ/p^e)^*`, with a discrete-log table.
struct UnitComponent {
    prime_power: u64,
    /// `(generator, order)` pairs; one entry for cyclic groups, two for
    /// `2^e` with `e ≥ 3`.
    generators: Vec<(u64, u64)>,
    /// residue mod `prime_power` → exponent vector over `generators`.
    dlog: HashMap<u64, Vec<u64>>,
}

fn multiplicative_order(g: u64, modulus: u64, group_order: u64) -> u64 {
    let mut order = group_order;
    for (q, _) in factorize(group_order) {
        while order.is_multiple_of(q) && pow_mod(g, order / q, modulus) == 1 {
            order /= q;
        }
    }
    order
}

fn smallest_primitive_root(pp: u64) -> u64 {
    let phi = euler_phi(pp);
    (2..pp)
        .find(|&g| gcd(g, pp) == 1 && multiplicative_order(g, pp, phi) == phi)
        .expect("cyclic unit group has a generator")
}

fn unit_component(p: u64, e: u32) -> UnitComponent {
    let pp = p.pow(e);
    let generators: Vec<(u64, u64)> = if p == 2 {
        match e {
            1 => Vec::new(),
            2 => vec![(3, 2)],
            _ => vec![(pp - 1, 2), (3, pp / 4)],
        }
    } else {
        vec![(smallest_primitive_root(pp), euler_phi(pp))]
    };
    let mut dlog = HashMap::new();
    let mut exps = vec![0u64; generators.len()];
    loop {
        let residue = generators
            .iter()
            .zip(&exps)
            .fold(1u64, |acc, (&(g, _), &t)| (acc as u128 * pow_mod(g, t, pp) as u128 % pp as u128) as u64);
        dlog.insert(residue, exps.clone());
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == generators.len() {
                debug_assert_eq!(dlog.len() as u64, euler_phi(pp));
                return UnitComponent { prime_power: pp, generators, dlog };
            }
            exps[i] += 1;
            if exps[i] < generators[i].1 {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// All `φ(k)` Dirichlet characters mod `k`, in a deterministic order with the
/// principal character first.
pub fn characters_mod(k: u64) -> Vec<DirichletCharacter> {
    assert!(k >= 1);
    let components: Vec<UnitComponent> =
        factorize(k).into_iter().map(|(p, e)| unit_component(p, e)).collect();
    // Flattened generator list; the first one is the least significant index
    // digit, so index 0 is the principal character.
    let orders: Vec<u64> = components.iter().flat_map(|c| c.generators.iter().map(|&(_, o)| o)).collect();
    let total: u64 = orders.iter().product();
    debug_assert_eq!(total, euler_phi(k));

    // Phases accumulate as numerators over the group exponent (one reduction
    // per table entry instead of one per generator).
    let exponent: u64 = orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o));
    let weights: Vec<u64> = orders.iter().map(|&o| exponent / o).collect();

    // exponent vectors per unit residue, flattened across components
    let units: Vec<(u64, Vec<u64>)> = (0..k)
        .filter(|&r| gcd(r, k) == 1)
        .map(|r| {
            let mut exps = Vec::with_capacity(orders.len());
            for comp in &components {
                exps.extend_from_slice(&comp.dlog[&(r % comp.prime_power)]);
            }
            (r, exps)
        })
        .collect();

    let mut out = Vec::with_capacity(total as usize);
    for index in 0..total {
        let mut digits = Vec::with_capacity(orders.len());
        let mut rest = index;
        for &o in &orders {
            digits.push(rest % o);
            rest /= o;
        }
        let mut phases: Vec<Option<Phase64>> = vec![None; k as usize];
        for (r, exps) in &units {
            let mut acc = 0u64;
            for ((&e, &j), (&o, &w)) in
                exps.iter().zip(&digits).zip(orders.iter().zip(&weights))
            {
                acc = (acc + (e * j) % o * w) % exponent;
            }
            phases[*r as usize] = Some(Ratio::new(acc, exponent));
        }
        out.push(DirichletCharacter::from_parts(k, phases).expect("structurally valid"));
    }
    out
}

/// The character mod `k` induced from `η` (requires `modulus(η) | k`):
/// equal to `η` on residues coprime to `k`, zero elsewhere.
pub fn induce(eta: &DirichletCharacter, k: u64) -> Result<DirichletCharacter, CharacterError> {
    let d = eta.modulus();
    if !k.is_multiple_of(d) {
        return Err(CharacterError::NotDivisible { d, k });
    }
    let phases = (0..k)
        .map(|r| if gcd(r, k) == 1 { eta.phase(r) } else { None })
        .collect();
    DirichletCharacter::from_parts(k, phases)
}

/// Decomposes `χ` mod `k1·k2` (coprime parts) into characters mod `k1` and
/// mod `k2` with `χ = χ_{k1}·χ_{k2}` pointwise.
pub fn crt_split(
    chi: &DirichletCharacter,
    k1: u64,
    k2: u64,
) -> Result<(DirichletCharacter, DirichletCharacter), CharacterError> {
    if gcd(k1, k2) != 1 {
        return Err(CharacterError::NotCoprime { k1, k2 });
    }
    let k = k1
        .checked_mul(k2)
        .ok_or(CharacterError::ModulusMismatch { expected: chi.modulus(), found: u64::MAX })?;
    if chi.modulus() != k {
        return Err(CharacterError::ModulusMismatch { expected: chi.modulus(), found: k });
    }
    let part = |ki: u64, kj: u64| -> Result<DirichletCharacter, CharacterError> {
        if ki == 1 {
            return DirichletCharacter::from_parts(1, vec![Some(Ratio::from_integer(0))]);
        }
        // lift ≡ r (mod ki), ≡ 1 (mod kj)
        let basis_i = if kj == 1 { 1 } else { (kj % k) * mod_inverse(kj % ki, ki) % k };
        let basis_j = if kj == 1 { 0 } else { (ki % k) * mod_inverse(ki % kj, kj) % k };
        let phases = (0..ki)
            .map(|r| {
                if gcd(r, ki) != 1 {
                    return None;
                }
                let lift = ((r as u128 * basis_i as u128 + basis_j as u128) % k as u128) as u64;
                chi.phase(lift)
            })
            .collect();
        DirichletCharacter::from_parts(ki, phases)
    };
    Ok((part(k1, k2)?, part(k2, k1)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters_mod_1_is_identically_one() {
        let chars = characters_mod(1);
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].value(0), Value::one());
        assert_eq!(chars[0].value(17), Value::one());
    }

    #[test]
    fn characters_mod_4() {
        let chars = characters_mod(4);
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_principal());
        assert_eq!(chars[0].value(3), Value::one());
        assert_eq!(chars[1].value(3), Value::integer(-1));
        assert_eq!(chars[1].value(2), Value::Zero);
    }

    #[test]
    fn characters_mod_12_all_have_order_dividing_two() {
        // (ℤ/12)^* ≅ C2 × C2
        let chars = characters_mod(12);
        assert_eq!(chars.len(), 4);
        for chi in &chars {
            assert!(chi.order() <= 2);
            chi.verify_multiplicative_exhaustive().unwrap();
        }
        // χ(n) = 0 exactly off the units
        for n in 0..12 {
            let coprime = gcd(n, 12) == 1;
            for chi in &chars {
                assert_eq!(chi.value(n).is_zero(), !coprime);
            }
        }
    }

    #[test]
    fn enumeration_count_matches_phi_and_is_multiplicative() {
        for k in 1..=40 {
            let chars = characters_mod(k);
            assert_eq!(chars.len() as u64, euler_phi(k), "count mod {k}");
            for chi in &chars {
                chi.verify_multiplicative_exhaustive().unwrap();
            }
            // distinct tables
            for i in 0..chars.len() {
                for j in i + 1..chars.len() {
                    assert_ne!(chars[i], chars[j], "duplicate characters mod {k}");
                }
            }
        }
    }

    #[test]
    fn two_power_moduli_use_two_generators() {
        for e in 3..=6 {
            let k = 1u64 << e;
            let chars = characters_mod(k);
            assert_eq!(chars.len() as u64, euler_phi(k));
            for chi in &chars {
                chi.verify_multiplicative_exhaustive().unwrap();
            }
        }
    }

    #[test]
    fn induce_principal() {
        let eta = characters_mod(2).remove(0);
        let chi = induce(&eta, 6).unwrap();
        assert!(chi.is_principal());
        assert_eq!(chi.value(5), Value::one());
        assert_eq!(chi.value(3), Value::Zero);
    }

    #[test]
    fn induce_to_same_modulus_is_identity() {
        for eta in characters_mod(12) {
            assert_eq!(induce(&eta, 12).unwrap(), eta);
        }
    }

    #[test]
    fn induce_nonprincipal_mod_3_to_12() {
        let eta = characters_mod(3).remove(1);
        let chi = induce(&eta, 12).unwrap();
        for n in 0..24u64 {
            if n % 2 == 0 || n % 3 == 0 {
                assert_eq!(chi.value(n), Value::Zero);
            } else {
                assert_eq!(chi.value(n), eta.value(n % 3));
            }
        }
    }

    #[test]
    fn induce_rejects_non_divisor() {
        let eta = characters_mod(4).remove(1);
        assert_eq!(induce(&eta, 6).unwrap_err(), CharacterError::NotDivisible { d: 4, k: 6 });
    }

    #[test]
    fn crt_split_principal_mod_12() {
        let chi = characters_mod(12).remove(0);
        let (a, b) = crt_split(&chi, 4, 3).unwrap();
        assert!(a.is_principal() && b.is_principal());
        assert_eq!(a.modulus(), 4);
        assert_eq!(b.modulus(), 3);
    }

    #[test]
    fn crt_split_product_identity_mod_12() {
        for chi in characters_mod(12) {
            let (a, b) = crt_split(&chi, 4, 3).unwrap();
            for n in 0..12 {
                assert_eq!(chi.value(n), a.value(n).mul(&b.value(n)), "χ index at n={n}");
            }
        }
    }

    #[test]
    fn crt_split_rejects_non_coprime() {
        let chi = characters_mod(12).remove(0);
        assert_eq!(crt_split(&chi, 6, 2).unwrap_err(), CharacterError::NotCoprime { k1: 6, k2: 2 });
    }

    #[test]
    fn from_phase_table_rejects_bad_tables() {
        // nonzero at a non-unit
        let bad = vec![None, Some(Ratio::from_integer(0)), Some(Ratio::from_integer(0)), None];
        assert!(DirichletCharacter::from_phase_table(4, bad).is_err());
        // non-multiplicative table: χ(3)·χ(3) must be χ(1)=1, so phase 1/3 at 3 is invalid
        let bad = vec![None, Some(Ratio::from_integer(0)), None, Some(Ratio::new(1, 3))];
        assert!(DirichletCharacter::from_phase_table(4, bad).is_err());
    }

    #[test]
    fn orthogonality_nonprincipal_characters_sum_to_zero_exactly() {
        use crate::exact::Cyclo;
        for k in 1..=30u64 {
            for chi in characters_mod(k) {
                let mut sum = Cyclo::zero();
                for n in 0..k {
                    sum = sum.add(&Cyclo::from_value(&chi.value(n)));
                }
                if chi.is_principal() {
                    assert!(
                        sum.equals(&Cyclo::from_integer(euler_phi(k) as i64)),
                        "principal sum mod {k}"
                    );
                } else {
                    assert!(sum.is_zero(), "non-principal character sum mod {k} must vanish");
                }
            }
        }
    }
}
