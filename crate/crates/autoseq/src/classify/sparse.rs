//! Support-structure analysis of sparse sequences.

use crate::arith::{factorize, prime_divisors};
use crate::scan;
use crate::seq::SequenceOracle;

/// Per-prime exponent profile of the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeProfile {
    pub prime: u64,
    /// Exponents `e ≤ log_p(n_max)` with `a(p^e) ≠ 0`.
    pub exponents: Vec<u32>,
    /// True when the profile is still active in the top quartile of the
    /// exponent range — the finite-scale proxy for "not finitely supported".
    pub active: bool,
}

/// Report of [`sparse_support_analysis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseReport {
    /// Support of the sequence intersected with `[1, n_max]`.
    pub support: Vec<u64>,
    /// Support elements with a prime factor outside the fitted modulus —
    /// must be empty for a correctly fitted sparse sequence.
    pub flagged: Vec<u64>,
    pub profiles: Vec<PrimeProfile>,
    /// Primes with an active exponent profile. An estimate: infinitude is
    /// not decidable from finite data.
    pub prime_estimate: Vec<u64>,
}

/// Scans the support up to `n_max` and profiles the prime-power structure,
/// relative to the fitted sparse modulus.
pub fn sparse_support_analysis(
    a: &dyn SequenceOracle,
    modulus: u64,
    n_max: u64,
) -> SparseReport {
    let support: Vec<u64> = scan::map_collect(1, n_max + 1, |n| n)
        .into_iter()
        .filter(|&n| !a.value(n).is_zero())
        .collect();

    let modulus_primes = prime_divisors(modulus);
    let flagged: Vec<u64> = support
        .iter()
        .copied()
        .filter(|&n| n > 1 && factorize(n).iter().any(|(p, _)| !modulus_primes.contains(p)))
        .collect();

    // profile every prime seen in the support or the modulus
    let mut primes = modulus_primes;
    for &n in &support {
        for (p, _) in factorize(n) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();

    let profiles: Vec<PrimeProfile> = primes
        .into_iter()
        .map(|prime| {
            let max_e = (n_max as f64).log(prime as f64).floor() as u32;
            let exponents: Vec<u32> = (1..=max_e)
                .filter(|&e| prime.checked_pow(e).is_some_and(|pe| !a.value(pe).is_zero()))
                .collect();
            // active: some nonzero exponent in the top quartile of the range
            let active = exponents.iter().any(|&e| 4 * e >= 3 * max_e) && max_e >= 4;
            PrimeProfile { prime, exponents, active }
        })
        .collect();

    let prime_estimate = profiles.iter().filter(|p| p.active).map(|p| p.prime).collect();
    SparseReport { support, flagged, profiles, prime_estimate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{FiniteSupport, MultSpec, TheoremFormSpec};
    use crate::seq::EventuallyPeriodicSeq;
    use crate::value::Value;
    use std::collections::BTreeMap;

    #[test]
    fn even_exponent_power_indicator() {
        let f1 = EventuallyPeriodicSeq::new(vec![], vec![Value::one(), Value::Zero]);
        let f2 = MultSpec::Finite(FiniteSupport::point_mass_at_one());
        let spec = TheoremFormSpec::new(2, f1, f2).unwrap();
        let a = spec.oracle();
        let report = sparse_support_analysis(&a, 2, 1_000_000);
        assert_eq!(report.support[..3], [1, 4, 16]);
        assert!(report.support.iter().all(|&n| n.is_power_of_two()));
        assert!(report.flagged.is_empty());
        assert_eq!(report.prime_estimate, vec![2]);
    }

    #[test]
    fn finitely_supported_sequence_has_no_active_primes() {
        let mut map = BTreeMap::new();
        map.insert((3u64, 1u32), Value::integer(-1));
        let f1 = EventuallyPeriodicSeq::new(vec![Value::one()], vec![Value::Zero]);
        let f2 = MultSpec::Finite(FiniteSupport::new(map).unwrap());
        let spec = TheoremFormSpec::new(2, f1, f2).unwrap();
        let a = spec.oracle();
        let report = sparse_support_analysis(&a, 6, 100_000);
        assert_eq!(report.support, vec![1, 3]);
        assert!(report.prime_estimate.is_empty());
        assert!(report.flagged.is_empty());
    }

    #[test]
    fn two_prime_support_with_one_active() {
        // f1 active at 2 forever, f2 supported on 3
        let mut map = BTreeMap::new();
        map.insert((3u64, 1u32), Value::integer(-1));
        let f1 = EventuallyPeriodicSeq::constant(Value::one());
        let f2 = MultSpec::Finite(FiniteSupport::new(map).unwrap());
        let spec = TheoremFormSpec::new(2, f1, f2).unwrap();
        let a = spec.oracle();
        let report = sparse_support_analysis(&a, 6, 1_000_000);
        assert!(report.support.iter().all(|&n| {
            let m = crate::arith::p_free_part(2, n);
            m == 1 || m == 3
        }));
        assert_eq!(report.prime_estimate, vec![2]);
        assert!(report.flagged.is_empty());
    }
}
