//! Sequence oracles and eventual-period detection.

mod oracle;
mod periodic;

pub use oracle::{CorruptedOracle, FnOracle, RestrictedOracle, SequenceOracle};
pub use periodic::{
    detect_eventual_period, detect_eventual_period_of, eventually_periodic_from_window,
    EventualPeriod, EventuallyPeriodicSeq,
};
