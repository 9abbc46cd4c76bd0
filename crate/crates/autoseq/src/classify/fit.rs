//! Sparse/dense classification by modulus-and-character fitting, and the
//! automatic base-prime finder.
//!
//! A multiplicative automatic sequence agrees, on integers coprime to a
//! fixed modulus, with either the zero function (sparse) or a Dirichlet
//! character (dense). The fitter searches moduli `M ≤ bound` in ascending
//! order (zero fit first, then characters in enumeration order) and verifies
//! the fit on every `n ≤ horizon` coprime to `M`; the search bound is a
//! resolution parameter, not a claim of non-existence.

use thiserror::Error;

use super::decompose::{decompose, DecomposeOptions};
use crate::arith::{characters_mod, gcd, nu, prime_divisors, DenseData};
use crate::construct::{is_multiplicative, MultCertificate};
use crate::scan;
use crate::seq::SequenceOracle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FitError {
    #[error("not multiplicative: counterexample at ({m}, {n})")]
    NotMultiplicative { m: u64, n: u64 },
    #[error("no zero or character fit with modulus at most {bound}; raise the bound")]
    NoFit { bound: u64 },
    #[error("declared base {base} is neither 1 nor a prime power, yet the sequence is not eventually periodic")]
    CompositeNonPeriodic { base: u64 },
    #[error("base-prime validation failed: {0}")]
    Validation(String),
}

#[derive(Clone, Copy, Debug)]
pub struct FitOptions {
    /// Largest modulus tried by the fitter.
    pub modulus_bound: u64,
    /// Fits are verified on `[1, horizon]`.
    pub horizon: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { modulus_bound: 256, horizon: 4096 }
    }
}

/// Sparse payload: the observed support and a per-prime activity estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseFit {
    /// Least modulus whose coprime residues carry only zeros.
    pub modulus: u64,
    /// Support of the sequence intersected with `[1, horizon]`.
    pub support: Vec<u64>,
    /// Estimated active primes (heuristic, see [`super::sparse`]).
    pub prime_estimate: Vec<u64>,
}

/// Verdict of the sparse/dense classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Sparse(SparseFit),
    Dense(DenseData),
}

impl Classification {
    pub fn is_dense(&self) -> bool {
        matches!(self, Classification::Dense(_))
    }
}

/// Splits a fitted modulus into `(h, λ)` with `λ` carrying exactly the
/// primes of the declared base.
fn split_modulus(modulus: u64, declared_base: u64) -> (u64, u64) {
    let mut lambda = 1u64;
    for p in prime_divisors(modulus) {
        if declared_base.is_multiple_of(p) {
            lambda *= p.pow(nu(p, modulus));
        }
    }
    (modulus / lambda, lambda)
}

pub fn classify_sparse_dense(
    a: &dyn SequenceOracle,
    declared_base: u64,
    opts: &FitOptions,
) -> Result<Classification, FitError> {
    match is_multiplicative(a, opts.horizon.min(4096)) {
        MultCertificate::Certified { .. } => {}
        MultCertificate::Counterexample { m, n, .. } => {
            return Err(FitError::NotMultiplicative { m, n });
        }
    }
    let horizon = opts.horizon;
    for modulus in 1..=opts.modulus_bound {
        // zero fit: a(n) = 0 for all 1 < n ≤ horizon coprime to the modulus
        let zero_fit = scan::check_all(2, horizon + 1, |n| {
            gcd(n, modulus) != 1 || a.value(n).is_zero()
        })
        .is_ok();
        if zero_fit {
            let support: Vec<u64> = (1..=horizon).filter(|&n| !a.value(n).is_zero()).collect();
            let report = super::sparse::sparse_support_analysis(a, modulus, horizon);
            return Ok(Classification::Sparse(SparseFit {
                modulus,
                support,
                prime_estimate: report.prime_estimate,
            }));
        }
        // character fits, in enumeration order
        for chi in characters_mod(modulus) {
            let fits = scan::check_all(1, horizon + 1, |n| {
                gcd(n, modulus) != 1 || a.value(n) == chi.value(n)
            })
            .is_ok();
            if fits {
                let (h, lambda) = split_modulus(modulus, declared_base);
                let dense = DenseData::new(h, lambda, chi)
                    .expect("coprime split of a fitted modulus");
                return Ok(Classification::Dense(dense));
            }
        }
    }
    Err(FitError::NoFit { bound: opts.modulus_bound })
}

/// Outcome of the base-prime search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasePrimeVerdict {
    /// Eventually periodic: every prime admits a (non-unique) decomposition.
    Periodic,
    /// The validated prime `p` with the declared base a power of it.
    Prime(u64),
}

/// Finds the prime `p` such that the sequence is p-automatic, given a base
/// `λ` it is declared automatic in: eventually periodic sequences get
/// [`BasePrimeVerdict::Periodic`]; otherwise `λ` must be a prime power and
/// its radical is validated by a full decomposition. Eventual periodicity is
/// read off a probe decomposition (eventually periodic sequences decompose
/// along every prime, so probing with 2 is sound for composite bases).
pub fn find_base_prime(
    a: &dyn SequenceOracle,
    declared_base: u64,
    horizon: u64,
) -> Result<BasePrimeVerdict, FitError> {
    match is_multiplicative(a, horizon.min(4096)) {
        MultCertificate::Certified { .. } => {}
        MultCertificate::Counterexample { m, n, .. } => {
            return Err(FitError::NotMultiplicative { m, n });
        }
    }
    let radical_prime = match prime_divisors(declared_base).as_slice() {
        [p] => Some(*p),
        _ => None,
    };
    let probe = radical_prime.unwrap_or(2);
    match decompose(a, probe, &DecomposeOptions { horizon, ..Default::default() }) {
        Ok(dec) if !dec.unique => Ok(BasePrimeVerdict::Periodic),
        Ok(_) => match radical_prime {
            Some(p) => Ok(BasePrimeVerdict::Prime(p)),
            None => Err(FitError::CompositeNonPeriodic { base: declared_base }),
        },
        Err(err) => match radical_prime {
            Some(_) => Err(FitError::Validation(err.to_string())),
            None => Err(FitError::CompositeNonPeriodic { base: declared_base }),
        },
    }
}
