//! Exact p-adic valuations and Dirichlet character algebra.

mod characters;
mod dense;
mod valuation;

pub use characters::{
    characters_mod, crt_split, induce, phase_add_mod1, CharacterError, DirichletCharacter,
    Phase64,
};
pub use dense::{pbar, DenseData, LocalFactor};
pub use valuation::{
    euler_phi, factorize, gcd, is_prime, lcm, nu, nu_big, p_free_part, p_free_part_big,
    prime_divisors, radical,
};
