//! The `(h, λ, χ)` data of the dense case and the residue `p̄`.
//!
//! For coprime `h` and `λ` and a character `χ` mod `hλ`, each prime
//! `p | hλ` gets a local character `χ_{p^{α(p)}}` (where `α(p) = ν_p(hλ)`)
//! and a twisting residue `p̄` with `p̄ ≡ 1 (mod p^{α(p)})` and
//! `p̄ ≡ p (mod hλ/p^{α(p)})`, so that `χ_{hλ/p^{α(p)}}(p) = χ(p̄)`.

use super::characters::{crt_split, CharacterError, DirichletCharacter};
use super::valuation::{factorize, gcd, nu};
use crate::value::Value;

/// Per-prime data carried by a dense classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub prime: u64,
    /// `α(p) = ν_p(hλ)`.
    pub alpha: u32,
    /// `χ_{p^{α(p)}}`.
    pub local: DirichletCharacter,
    /// `χ_{hλ/p^{α(p)}}` (the cofactor character).
    pub cofactor: DirichletCharacter,
    /// The residue `p̄` mod `hλ`.
    pub pbar: u64,
    /// `χ(p̄)` (a root of unity).
    pub chi_pbar: Value,
}

/// Dense-case classification data: coprime `h`, `λ` and a character mod `hλ`
/// together with its local decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseData {
    pub h: u64,
    pub lambda: u64,
    pub chi: DirichletCharacter,
    pub factors: Vec<LocalFactor>,
}

impl DenseData {
    pub fn new(h: u64, lambda: u64, chi: DirichletCharacter) -> Result<Self, CharacterError> {
        if gcd(h, lambda) != 1 {
            return Err(CharacterError::NotCoprime { k1: h, k2: lambda });
        }
        let hl = h * lambda;
        if chi.modulus() != hl {
            return Err(CharacterError::ModulusMismatch { expected: hl, found: chi.modulus() });
        }
        let mut factors = Vec::new();
        for (prime, alpha) in factorize(hl) {
            let pp = prime.pow(alpha);
            let (local, cofactor) = crt_split(&chi, pp, hl / pp)?;
            let pb = pbar(prime, hl)?;
            let chi_pbar = chi.value(pb);
            debug_assert!(!chi_pbar.is_zero(), "p̄ is coprime to hλ");
            factors.push(LocalFactor { prime, alpha, local, cofactor, pbar: pb, chi_pbar });
        }
        Ok(DenseData { h, lambda, chi, factors })
    }

    pub fn modulus(&self) -> u64 {
        self.h * self.lambda
    }

    /// Membership in `𝒞`, the set of integers coprime to `hλ`.
    pub fn is_coprime_class(&self, n: u64) -> bool {
        gcd(n, self.modulus()) == 1
    }

    pub fn factor(&self, prime: u64) -> Option<&LocalFactor> {
        self.factors.iter().find(|f| f.prime == prime)
    }

    /// Checks `χ = ∏_{p | hλ} χ_{p^{α(p)}}` pointwise over a full period.
    pub fn local_product_identity_holds(&self) -> bool {
        (0..self.modulus()).all(|n| {
            let lhs = self.chi.value(n);
            let rhs = Value::product(
                self.factors.iter().map(|f| f.local.value(n)).collect::<Vec<_>>().iter(),
            );
            lhs == rhs
        })
    }
}

/// The residue `p̄` mod `hλ`: `≡ 1 (mod p^{α(p)})` and `≡ p (mod hλ/p^{α(p)})`.
pub fn pbar(p: u64, modulus: u64) -> Result<u64, CharacterError> {
    if !modulus.is_multiple_of(p) {
        return Err(CharacterError::NotADivisor { p, modulus });
    }
    let alpha = nu(p, modulus);
    let pp = p.pow(alpha);
    let rest = modulus / pp;
    // Unique solution by CRT; the search space is tiny at desk scale.
    for r in 0..modulus {
        if r % pp == 1 % pp && r % rest == p % rest {
            return Ok(r);
        }
    }
    unreachable!("CRT system is solvable")
}
