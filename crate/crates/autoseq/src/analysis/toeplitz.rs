//! Toeplitz-structure check and support density curves.

use crate::classify::CheckOutcome;
use crate::construct::{MultSpec, TheoremFormSpec};
use crate::scan;
use crate::seq::SequenceOracle;

/// Verifies the per-position periods of a dense theorem-form sequence:
/// `a(n + s·p·n·c) = a(n)` for all `1 ≤ n ≤ n_max` and `1 ≤ s ≤ s_max`,
/// where `c` is the period of `f2` (1 when `f2` is finitely supported, in
/// which case the sequence is not Toeplitz and the check is expected to
/// fail).
pub fn toeplitz_check(spec: &TheoremFormSpec, n_max: u64, s_max: u64) -> CheckOutcome {
    let a = spec.oracle();
    let p = spec.prime();
    let c = match spec.f2() {
        MultSpec::Periodic(f) => f.period(),
        MultSpec::Finite(_) => 1,
    };
    let result = scan::check_all(1, n_max + 1, |n| {
        let expected = a.value(n);
        (1..=s_max).all(|s| a.value(n + s * p * n * c) == expected)
    });
    match result {
        Ok(()) => CheckOutcome::Pass { checked_to: n_max },
        Err(n) => {
            let expected = a.value(n);
            let s = (1..=s_max)
                .find(|&s| a.value(n + s * p * n * c) != expected)
                .expect("witness s exists");
            CheckOutcome::Fail { witness: n, found: a.value(n + s * p * n * c), expected }
        }
    }
}

/// Support density per decade.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecadeDensity {
    /// Upper end `10^j` of the decade prefix.
    pub upper: u64,
    /// Support count in `[1, upper]`.
    pub count: u64,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub decades: Vec<DecadeDensity>,
    /// Decades where the density failed to strictly decrease — expected to
    /// stay empty for sparse sequences and to fire for dense ones.
    pub monotonicity_violations: Vec<u64>,
}

impl DensityReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("upper,count,density\n");
        for d in &self.decades {
            out.push_str(&format!("{},{},{}\n", d.upper, d.count, d.density));
        }
        out
    }
}

/// Counts `|support ∩ [1, 10^j]| / 10^j` for every decade up to `n_max`.
pub fn support_density(a: &dyn SequenceOracle, n_max: u64) -> DensityReport {
    let mut decades = Vec::new();
    let mut upper = 10u64;
    let mut count = 0u64;
    let mut lo = 1u64;
    while upper <= n_max {
        count += scan::map_reduce(
            lo,
            upper + 1,
            || 0u64,
            |n| u64::from(!a.value(n).is_zero()),
            |x, y| x + y,
        );
        decades.push(DecadeDensity { upper, count, density: count as f64 / upper as f64 });
        lo = upper + 1;
        upper = match upper.checked_mul(10) {
            Some(next) => next,
            None => break,
        };
    }
    let monotonicity_violations = decades
        .windows(2)
        .filter(|w| w[1].density >= w[0].density)
        .map(|w| w[1].upper)
        .collect();
    DensityReport { decades, monotonicity_violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn period_doubling_is_toeplitz() {
        assert!(toeplitz_check(&corpus::period_doubling(), 500, 200).passed());
    }

    #[test]
    fn dense_character_instance_is_toeplitz() {
        assert!(toeplitz_check(&corpus::primitive_mod_12(), 300, 100).passed());
    }

    #[test]
    fn sparse_indicator_is_not_toeplitz() {
        let spec = corpus::even_exponent_power_indicator();
        match toeplitz_check(&spec, 500, 200) {
            CheckOutcome::Fail { witness, .. } => {
                // position 1 already fails: a(1) = 1 but a(1 + 2s) = 0 for
                // 1 + 2s not a power of two
                assert_eq!(witness, 1);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn density_of_power_indicator_decays_per_decade() {
        let spec = corpus::even_exponent_power_indicator();
        let a = spec.oracle();
        let report = support_density(&a, 1_000_000);
        // exact counts: 4^k ≤ 10^j
        let expected: Vec<u64> = (1..=6).map(|j| 10u64.pow(j).ilog(4) as u64 + 1).collect();
        let got: Vec<u64> = report.decades.iter().map(|d| d.count).collect();
        assert_eq!(got, expected);
        assert!(report.monotonicity_violations.is_empty());
    }

    #[test]
    fn dense_instance_density_is_flat_and_flagged() {
        let spec = corpus::period_doubling();
        let a = spec.oracle();
        let report = support_density(&a, 100_000);
        for d in &report.decades {
            assert_eq!(d.count, d.upper); // support is everything
        }
        assert!(!report.monotonicity_violations.is_empty());
    }

    #[test]
    fn point_support_density() {
        use crate::seq::FnOracle;
        use crate::value::Value;
        let f = FnOracle::new(|n| {
            use num_traits::One;
            if n.is_one() {
                Value::one()
            } else {
                Value::Zero
            }
        });
        let report = support_density(&f, 10_000);
        let densities: Vec<u64> = report.decades.iter().map(|d| d.count).collect();
        assert_eq!(densities, vec![1, 1, 1, 1]);
    }
}
