//! Pointwise identities available in the dense case, and the completely
//! multiplicative normal form.

use thiserror::Error;

use crate::arith::{gcd, nu, p_free_part, prime_divisors, CharacterError, DenseData, DirichletCharacter};
use crate::construct::{is_completely_multiplicative, MultCertificate};
use crate::scan;
use crate::seq::SequenceOracle;
use crate::value::Value;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// Outcome of a pointwise identity scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass { checked_to: u64 },
    Fail { witness: u64, found: Value, expected: Value },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass { .. })
    }
}

/// Verifies the dense product form
///
/// ```text
/// a(n) = ∏_{p | hλ} χ_{p^{α(p)}}(n / p^{ν_p(n)}) · a(p^{ν_p(n)}) / χ(p̄)^{ν_p(n)}
/// ```
///
/// for all `1 ≤ n ≤ n_max`, in exact value arithmetic.
pub fn dense_product_form_check(
    a: &dyn SequenceOracle,
    dense: &DenseData,
    n_max: u64,
) -> CheckOutcome {
    // a(p^e) tables, one per prime of hλ
    let tables: Vec<(u64, Vec<Value>, &crate::arith::LocalFactor)> = dense
        .factors
        .iter()
        .map(|f| {
            let p = f.prime;
            let max_e = (n_max as f64).log(p as f64).floor() as u32 + 1;
            let table: Vec<Value> = (0..=max_e)
                .map(|e| match p.checked_pow(e) {
                    Some(pe) => a.value(pe),
                    None => Value::Zero,
                })
                .collect();
            (p, table, f)
        })
        .collect();

    let rhs = |n: u64| -> Value {
        let mut acc = Value::one();
        for (p, powers, f) in &tables {
            let e = nu(*p, n);
            let local = f.local.value(p_free_part(*p, n));
            let twist = f.chi_pbar.pow(e).inv().expect("χ(p̄) is a root of unity");
            acc = acc.mul(&local).mul(&powers[e as usize]).mul(&twist);
            if acc.is_zero() {
                return Value::Zero;
            }
        }
        acc
    };

    match scan::check_all(1, n_max + 1, |n| a.value(n) == rhs(n)) {
        Ok(()) => CheckOutcome::Pass { checked_to: n_max },
        Err(n) => CheckOutcome::Fail { witness: n, found: a.value(n), expected: rhs(n) },
    }
}

/// Result of the per-prime factor periodicity check.
///
/// The factor sequence of `q` is `n ↦ χ_{q^{α(q)}}(n/q^{ν_q(n)}) ·
/// a(q^{ν_q(n)}) / χ(q̄)^{ν_q(n)}`. For primes of `h` it is always periodic;
/// for the prime of a prime-power `λ` it is periodic exactly when the
/// stabilized ratio is eventually zero or the local character is principal —
/// otherwise the factor is the non-periodic heart of the sequence and
/// `Aperiodic` is the correct finding, not a failure of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorPeriodicity {
    Periodic { period: u64, stabilization: u32 },
    /// `k ↦ a(q^k)/χ(q̄)^k` never repeated 3 times in a row within the range.
    NoStabilization { examined: u32 },
    /// Stabilized, but no period up to `q^{γ+α}` confirms on the range.
    Aperiodic { witness: u64 },
}

/// Checks periodicity of the `q`-factor sequence on `[1, n_max]`, with the
/// period bounded by `q^{γ_q + α(q)}` (`γ_q` = stabilization threshold of
/// `k ↦ a(q^k)/χ(q̄)^k`, detected as 3 equal consecutive values).
pub fn periodic_factor_check(
    a: &dyn SequenceOracle,
    dense: &DenseData,
    q: u64,
    n_max: u64,
) -> Result<FactorPeriodicity, IdentityError> {
    let factor = dense
        .factor(q)
        .ok_or(CharacterError::NotADivisor { p: q, modulus: dense.modulus() })?;

    // stabilization of h(k) = a(q^k)·χ(q̄)^{-k}
    let max_k = (n_max as f64).log(q as f64).floor() as u32 + 4;
    let ratios: Vec<Value> = (0..=max_k)
        .map(|k| {
            let aq = match q.checked_pow(k) {
                Some(qk) => a.value(qk),
                None => Value::Zero,
            };
            aq.mul(&factor.chi_pbar.pow(k).inv().expect("root of unity"))
        })
        .collect();
    let gamma = (0..ratios.len().saturating_sub(2))
        .find(|&k| ratios[k] == ratios[k + 1] && ratios[k] == ratios[k + 2]);
    let Some(gamma) = gamma else {
        return Ok(FactorPeriodicity::NoStabilization { examined: max_k });
    };
    let gamma = gamma as u32;

    let g = |n: u64| -> Value {
        let e = nu(q, n);
        let aq = a.value(q.pow(e));
        factor
            .local
            .value(p_free_part(q, n))
            .mul(&aq)
            .mul(&factor.chi_pbar.pow(e).inv().expect("root of unity"))
    };

    // candidate periods q^j ≤ q^{γ + α}
    for j in 0..=(gamma + factor.alpha) {
        let Some(d) = q.checked_pow(j) else { break };
        if d > n_max {
            break;
        }
        if scan::check_all(1, n_max + 1 - d, |n| g(n + d) == g(n)).is_ok() {
            return Ok(FactorPeriodicity::Periodic { period: d, stabilization: gamma });
        }
    }
    let witness = q
        .checked_pow(gamma + factor.alpha)
        .filter(|&bound| bound < n_max)
        .and_then(|bound| scan::find_first(1, n_max + 1 - bound, |n| g(n + bound) != g(n)))
        .unwrap_or(1);
    Ok(FactorPeriodicity::Aperiodic { witness })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("not completely multiplicative: counterexample at ({m}, {n})")]
    NotCompletelyMultiplicative { m: u64, n: u64 },
    #[error("no character fit with modulus at most {bound}")]
    NoFit { bound: u64 },
    #[error("a(p) must be a root of unity or zero, found {0}")]
    BadEpsilon(String),
    #[error("normal form mismatch at n = {witness}")]
    FormMismatch { witness: u64 },
}

/// Normal form of a completely multiplicative automatic sequence: either
/// `a(n) = ε^{ν_p(n)} · χ(n/p^{ν_p(n)})` for a prime `p`, a root of unity or
/// zero `ε = a(p)` and a Dirichlet character `χ`, or the support is
/// contained in the powers of a single prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletelyMultiplicativeForm {
    PowerSupported { p: u64 },
    CharacterForm { p: u64, epsilon: Value, chi: DirichletCharacter },
}

pub fn completely_multiplicative_form(
    a: &dyn SequenceOracle,
    horizon: u64,
    modulus_bound: u64,
) -> Result<CompletelyMultiplicativeForm, FormError> {
    match is_completely_multiplicative(a, horizon.min(4096)) {
        MultCertificate::Certified { .. } => {}
        MultCertificate::Counterexample { m, n, .. } => {
            return Err(FormError::NotCompletelyMultiplicative { m, n });
        }
    }

    // support contained in the powers of one prime?
    let support: Vec<u64> = (2..=horizon).filter(|&n| !a.value(n).is_zero()).collect();
    if support.is_empty() {
        return Ok(CompletelyMultiplicativeForm::PowerSupported { p: 2 });
    }
    let leads = prime_divisors(support[0]);
    if let [p] = leads.as_slice() {
        if support.iter().all(|&n| p_free_part(*p, n) == 1) {
            return Ok(CompletelyMultiplicativeForm::PowerSupported { p: *p });
        }
    }

    // character fit on the coprime part, smallest modulus first
    for modulus in 1..=modulus_bound {
        for chi in crate::arith::characters_mod(modulus) {
            let fits = scan::check_all(1, horizon + 1, |n| {
                gcd(n, modulus) != 1 || a.value(n) == chi.value(n)
            })
            .is_ok();
            if !fits {
                continue;
            }
            // the special prime carries the nonzero a(p) among the primes of
            // the modulus; try each of them and keep the first reconstruction
            let mut candidates = prime_divisors(modulus);
            if candidates.is_empty() {
                candidates.push(2);
            }
            let mut last_witness = 1;
            for p in candidates {
                let epsilon = a.value(p);
                if !epsilon.is_root_of_unity_or_zero() {
                    return Err(FormError::BadEpsilon(epsilon.to_string()));
                }
                // reconstruction: a(n) = ε^{ν_p(n)} · χ(n/p^{ν_p(n)}), ε⁰ = 1
                match scan::check_all(1, horizon + 1, |n| {
                    let e = nu(p, n);
                    a.value(n) == epsilon.pow(e).mul(&chi.value(p_free_part(p, n)))
                }) {
                    Ok(()) => {
                        return Ok(CompletelyMultiplicativeForm::CharacterForm {
                            p,
                            epsilon,
                            chi,
                        })
                    }
                    Err(witness) => last_witness = witness,
                }
            }
            return Err(FormError::FormMismatch { witness: last_witness });
        }
    }
    Err(FormError::NoFit { bound: modulus_bound })
}
