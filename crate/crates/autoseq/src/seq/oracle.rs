//! Deterministic term sources `n ↦ Value`.

use num_bigint::BigUint;

use crate::value::Value;

/// A deterministic sequence of exact values indexed by `n ≥ 0`.
///
/// Implementors must be pure: the same `n` always yields the same value.
/// `value_big` is the authoritative entry point (kernel closures probe far
/// beyond `u64`); `value` is a fast path for range scans and defaults to a
/// conversion.
pub trait SequenceOracle: Sync {
    fn value_big(&self, n: &BigUint) -> Value;

    fn value(&self, n: u64) -> Value {
        self.value_big(&BigUint::from(n))
    }

    /// Largest index with a nonzero value, when the implementor knows one.
    fn support_bound(&self) -> Option<u64> {
        None
    }
}

impl<T: SequenceOracle + ?Sized> SequenceOracle for &T {
    fn value_big(&self, n: &BigUint) -> Value {
        (**self).value_big(n)
    }

    fn value(&self, n: u64) -> Value {
        (**self).value(n)
    }

    fn support_bound(&self) -> Option<u64> {
        (**self).support_bound()
    }
}

/// Oracle backed by closures, mainly for tests and ad-hoc sequences.
pub struct FnOracle {
    big: Box<dyn Fn(&BigUint) -> Value + Sync + Send>,
    small: Option<Box<dyn Fn(u64) -> Value + Sync + Send>>,
    bound: Option<u64>,
}

impl FnOracle {
    pub fn new(big: impl Fn(&BigUint) -> Value + Sync + Send + 'static) -> Self {
        FnOracle { big: Box::new(big), small: None, bound: None }
    }

    pub fn with_fast_path(mut self, small: impl Fn(u64) -> Value + Sync + Send + 'static) -> Self {
        self.small = Some(Box::new(small));
        self
    }

    pub fn with_support_bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }
}

impl SequenceOracle for FnOracle {
    fn value_big(&self, n: &BigUint) -> Value {
        (self.big)(n)
    }

    fn value(&self, n: u64) -> Value {
        match &self.small {
            Some(f) => f(n),
            None => (self.big)(&BigUint::from(n)),
        }
    }

    fn support_bound(&self) -> Option<u64> {
        self.bound
    }
}

/// `n ↦ inner(n)` except that multiples of `p` are sent to zero.
pub struct RestrictedOracle<'a> {
    pub inner: &'a dyn SequenceOracle,
    pub avoid_prime: u64,
}

impl SequenceOracle for RestrictedOracle<'_> {
    fn value_big(&self, n: &BigUint) -> Value {
        use num_traits::Zero;
        if (n % BigUint::from(self.avoid_prime)).is_zero() {
            Value::Zero
        } else {
            self.inner.value_big(n)
        }
    }

    fn value(&self, n: u64) -> Value {
        if n.is_multiple_of(self.avoid_prime) {
            Value::Zero
        } else {
            self.inner.value(n)
        }
    }

    fn support_bound(&self) -> Option<u64> {
        self.inner.support_bound()
    }
}

/// Mutation helper: one term replaced, everything else passed through.
pub struct CorruptedOracle<'a> {
    pub inner: &'a dyn SequenceOracle,
    pub at: u64,
    pub replacement: Value,
}

impl SequenceOracle for CorruptedOracle<'_> {
    fn value_big(&self, n: &BigUint) -> Value {
        if *n == BigUint::from(self.at) {
            self.replacement.clone()
        } else {
            self.inner.value_big(n)
        }
    }

    fn value(&self, n: u64) -> Value {
        if n == self.at {
            self.replacement.clone()
        } else {
            self.inner.value(n)
        }
    }
}
