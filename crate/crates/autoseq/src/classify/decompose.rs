//! Recovering the `(p, f1, f2)` data from a multiplicative p-automatic
//! sequence: `f1(k) = a(p^k)`, `f2 = a` off multiples of `p` (zero on them),
//! both canonicalized, with the reconstruction verified exactly.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::{factorize, is_prime};
use crate::construct::{
    f2_dichotomy, is_multiplicative, periodic_from_one, DichotomyError, F2Dichotomy,
    FiniteSupport, MultCertificate, MultSpec, SpecError, TheoremFormSpec,
};
use crate::scan;
use crate::seq::{
    detect_eventual_period, EventuallyPeriodicSeq, RestrictedOracle, SequenceOracle,
};
use crate::value::Value;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("a(1) must be 1 and a must not vanish identically (precondition)")]
    BadPrecondition,
    #[error("not multiplicative: a({m}·{n}) ≠ a({m})·a({n})")]
    NotMultiplicative { m: u64, n: u64 },
    #[error("no eventual period of k ↦ a(p^k) visible within {samples} samples")]
    PeriodUndetected { samples: u32 },
    #[error("f2 part has no detectable period or support bound within the horizon")]
    F2Undetected,
    #[error("reconstruction mismatch at n = {n}: wrong prime or not of theorem form")]
    ReconstructionMismatch { n: u64 },
    #[error("recovered data is inconsistent: {0}")]
    Inconsistent(String),
}

impl From<SpecError> for DecomposeError {
    fn from(e: SpecError) -> Self {
        DecomposeError::Inconsistent(e.to_string())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// Reconstruction is verified exactly on `[1, horizon]`.
    pub horizon: u64,
    /// Bound for the multiplicativity precheck.
    pub precheck_bound: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { horizon: 100_000, precheck_bound: 4096 }
    }
}

/// Recovered `(p, f1, f2)` data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub spec: TheoremFormSpec,
    /// False exactly when the input is eventually periodic on the horizon
    /// (then every prime admits a decomposition).
    pub unique: bool,
    /// The reconstruction was verified exactly on `[1, verified_to]`.
    pub verified_to: u64,
}

/// Number of samples `a(p^k)` to take: enough to cover the horizon plus
/// slack for period confirmation, while `p^k` still fits in `u64`.
fn f1_sample_count(p: u64, horizon: u64) -> u32 {
    let fits = ((u64::MAX as f64).log(p as f64).floor() as u32).saturating_sub(1);
    let wanted = (horizon as f64).log(p as f64).ceil() as u32 + 10;
    wanted.clamp(24.min(fits), fits)
}

pub fn decompose(
    a: &dyn SequenceOracle,
    p: u64,
    opts: &DecomposeOptions,
) -> Result<Decomposition, DecomposeError> {
    if !is_prime(p) {
        return Err(DecomposeError::NotPrime(p));
    }
    let horizon = opts.horizon.max(16);
    if !a.value(1).is_one() {
        return Err(DecomposeError::BadPrecondition);
    }
    match is_multiplicative(a, opts.precheck_bound.min(horizon)) {
        MultCertificate::Certified { .. } => {}
        MultCertificate::Counterexample { m, n, .. } => {
            return Err(DecomposeError::NotMultiplicative { m, n });
        }
    }

    // f1(k) = a(p^k); for a p-automatic sequence this subsequence is
    // eventually periodic (a finite kernel forces a(p^k n) = a(p^l n))
    let samples = f1_sample_count(p, horizon);
    let f1_window: Vec<Value> = (0..=samples).map(|k| a.value(p.pow(k))).collect();
    let Some(ep) = detect_eventual_period(&f1_window) else {
        return Err(DecomposeError::PeriodUndetected { samples });
    };
    let f1 = EventuallyPeriodicSeq::new(
        f1_window[..ep.preperiod].to_vec(),
        f1_window[ep.preperiod..ep.preperiod + ep.period].to_vec(),
    );

    // f2 = a off multiples of p, zero on them, canonicalized by the dichotomy.
    // A support element just below the horizon can leave too short a zero
    // tail to call; retry with doubled windows before giving up.
    let f2_oracle = RestrictedOracle { inner: a, avoid_prime: p };
    let mut dichotomy = f2_dichotomy(&f2_oracle, horizon);
    let mut window = horizon;
    for _ in 0..3 {
        if !matches!(dichotomy, Err(DichotomyError::Undetected { .. })) {
            break;
        }
        window *= 2;
        dichotomy = f2_dichotomy(&f2_oracle, window);
    }
    let f2 = match dichotomy {
        Ok(F2Dichotomy::Periodic(periodic)) => MultSpec::Periodic(periodic),
        Ok(F2Dichotomy::FinitelySupported { last_nonzero }) => {
            let bound = last_nonzero.unwrap_or(1);
            let mut prime_powers: BTreeMap<(u64, u32), Value> = BTreeMap::new();
            for n in 2..=bound {
                if n % p == 0 || a.value(n).is_zero() {
                    continue;
                }
                for (q, e) in factorize(n) {
                    let v = a.value(q.pow(e));
                    if v.is_zero() {
                        return Err(DecomposeError::Inconsistent(format!(
                            "a({n}) ≠ 0 but the factor a({q}^{e}) vanishes"
                        )));
                    }
                    prime_powers.insert((q, e), v);
                }
            }
            MultSpec::Finite(FiniteSupport::new(prime_powers)?)
        }
        Err(DichotomyError::Undetected { .. }) => return Err(DecomposeError::F2Undetected),
        Err(DichotomyError::NotMultiplicative(e)) => return Err(e.into()),
    };

    let spec = TheoremFormSpec::new(p, f1, f2).map_err(|e| match e {
        SpecError::NonzeroAtMultiple { p, n } => {
            // cannot happen: the f2 oracle vanishes on multiples by construction
            DecomposeError::Inconsistent(format!("f2({n}) nonzero at a multiple of {p}"))
        }
        other => other.into(),
    })?;

    // exact reconstruction on [1, horizon]
    let oracle = spec.oracle();
    if let Err(n) = scan::check_all(1, horizon + 1, |n| oracle.value(n) == a.value(n)) {
        return Err(DecomposeError::ReconstructionMismatch { n });
    }

    // Eventual periodicity decides uniqueness. For a multiplicative sequence
    // it means exact periodicity from n = 1 (certified on the window) or
    // finite support; the latter is read off the recovered data rather than
    // the window, since sparse unbounded supports look finite at any horizon.
    let window_periodic = periodic_from_one(a, horizon.min(1 << 15)).is_some();
    let finitely_supported =
        matches!(spec.f2(), MultSpec::Finite(_)) && spec.f1().eventually_zero();
    let unique = !(window_periodic || finitely_supported);
    Ok(Decomposition { spec, unique, verified_to: horizon })
}
