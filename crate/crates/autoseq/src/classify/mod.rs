//! The inverse direction: recovering `(p, f1, f2)` from a sequence, deciding
//! sparse versus dense, fitting `(h, λ, χ)` and checking the product-form
//! identities.

mod decompose;
mod fit;
mod identities;
mod sparse;

pub use decompose::{decompose, DecomposeError, DecomposeOptions, Decomposition};
pub use fit::{classify_sparse_dense, find_base_prime, BasePrimeVerdict, Classification, FitError, FitOptions, SparseFit};
pub use identities::{
    completely_multiplicative_form, dense_product_form_check, periodic_factor_check,
    CheckOutcome, CompletelyMultiplicativeForm, FactorPeriodicity, FormError, IdentityError,
};
pub use sparse::{sparse_support_analysis, PrimeProfile, SparseReport};
