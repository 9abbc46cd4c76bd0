//! Building multiplicative automatic sequences from `(p, f1, f2)` data.

mod certify;
mod multspec;
mod spec;

pub use certify::{
    f2_dichotomy, is_completely_multiplicative, is_multiplicative, periodic_from_one,
    DichotomyError, F2Dichotomy, MultCertificate,
};
pub use multspec::{FiniteSupport, MultSpec, PeriodicMult, SpecError};
pub use spec::{dfao_for_f1_part, dfao_for_f2_part, TheoremFormOracle, TheoremFormSpec};
