//! Construction, verification and classification of multiplicative automatic
//! sequences.
//!
//! A complex-valued sequence is *automatic* when a finite automaton with
//! output (DFAO) computes `a(n)` from the base-λ digits of `n`, and
//! *multiplicative* when `a(mn) = a(m)·a(n)` for coprime `m, n`. Sequences
//! that are both admit an exact normal form
//!
//! ```text
//! a(n) = f1(ν_p(n)) · f2(n / p^{ν_p(n)})
//! ```
//!
//! for a prime `p`, an eventually periodic `f1` with `f1(0) = 1`, and a
//! multiplicative eventually periodic `f2` vanishing at multiples of `p`.
//! This crate builds such sequences from explicit `(p, f1, f2)` data, recovers
//! the data back from a sequence, and checks the identities that connect the
//! two directions (kernel finiteness, character decompositions, pumping,
//! means, Toeplitz structure) at desk scale with exact arithmetic throughout.
//!
//! Module map:
//!
//! * [`value`] — exact scalars: zero or positive-rational-scaled roots of unity
//! * [`exact`] — cyclotomic phase sums and high-precision complex embedding
//! * [`arith`] — p-adic valuations and Dirichlet character algebra
//! * [`seq`] — sequence oracles and eventual-period detection
//! * [`automata`] — DFAOs, λ-kernel closure, minimization, closure ops, pumping
//! * [`construct`] — `(p, f1, f2)` specifications and their automata
//! * [`classify`] — the inverse direction: decomposition, sparse/dense fitting
//! * [`analysis`] — means, densities, Toeplitz and word-complexity diagnostics
//! * [`doc`] — JSON document formats and DOT export
//! * [`corpus`] — named and seeded test corpora
//!
//! Range scans (certifications, eval comparisons, means) run data parallel via
//! rayon when the default `parallel` feature is enabled and fall back to
//! sequential loops otherwise; results are identical either way.
//!
//! ```
//! use autoseq::classify::{decompose, DecomposeOptions};
//! use autoseq::construct::is_multiplicative;
//! use autoseq::corpus::period_doubling;
//! use autoseq::seq::SequenceOracle;
//! use autoseq::value::Value;
//!
//! // a(n) = (-1)^{ν_2(n)}: multiplicative, 2-automatic, mean 1/3
//! let spec = period_doubling();
//! let a = spec.oracle();
//! assert_eq!(a.value(12), Value::one());
//! assert_eq!(a.value(8), Value::integer(-1));
//! assert!(is_multiplicative(&a, 4096).is_certified());
//!
//! // the minimized automaton and the recovered (p, f1, f2) data agree
//! let dfao = spec.dfao();
//! assert_eq!(dfao.n_states(), 4);
//! let opts = DecomposeOptions { horizon: 10_000, ..Default::default() };
//! let recovered = decompose(&a, 2, &opts).unwrap();
//! assert_eq!(recovered.spec, spec);
//! ```

pub use num_bigint;

pub mod analysis;
pub mod arith;
pub mod automata;
pub mod classify;
pub mod construct;
pub mod corpus;
pub mod doc;
pub mod exact;
pub mod scan;
pub mod seq;
pub mod value;

pub use automata::{kernel_closure, minimize, pump_witness, Dfao, KernelOptions, KernelTable};
pub use construct::{MultSpec, TheoremFormSpec};
pub use seq::{EventuallyPeriodicSeq, SequenceOracle};
pub use value::Value;

/// Configures the global worker pool used by parallel range scans.
///
/// Has no effect when the pool is already initialized or when the crate is
/// built without the `parallel` feature. Scan results do not depend on the
/// worker count.
pub fn configure_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
