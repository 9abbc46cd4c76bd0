//! Eventually periodic sequences and minimal-period detection.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::oracle::SequenceOracle;
use crate::value::Value;

/// `value(n) = preperiod[n]` for `n < |preperiod|`, then cyclic repetition of
/// `period`. Kept in canonical form: minimal period length first, then
/// minimal preperiod length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodicSeq {
    preperiod: Vec<Value>,
    period: Vec<Value>,
}

impl EventuallyPeriodicSeq {
    /// Builds and canonicalizes. `period` must be non-empty.
    pub fn new(preperiod: Vec<Value>, period: Vec<Value>) -> Self {
        assert!(!period.is_empty(), "period must be non-empty");
        let mut seq = EventuallyPeriodicSeq { preperiod, period };
        seq.canonicalize();
        seq
    }

    pub fn constant(v: Value) -> Self {
        EventuallyPeriodicSeq { preperiod: Vec::new(), period: vec![v] }
    }

    pub fn preperiod(&self) -> &[Value] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Value] {
        &self.period
    }

    pub fn value(&self, n: usize) -> &Value {
        if n < self.preperiod.len() {
            &self.preperiod[n]
        } else {
            &self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn is_constant(&self) -> bool {
        self.preperiod.is_empty() && self.period.len() == 1
    }

    /// True when all values from some point on are zero.
    pub fn eventually_zero(&self) -> bool {
        self.period.iter().all(Value::is_zero)
    }

    /// Largest index with a nonzero value for eventually-zero sequences.
    pub fn last_nonzero(&self) -> Option<usize> {
        if !self.eventually_zero() {
            return None;
        }
        self.preperiod.iter().rposition(|v| !v.is_zero())
    }

    fn canonicalize(&mut self) {
        // minimal cyclic period: the shortest divisor length that tiles
        let len = self.period.len();
        for d in 1..=len {
            if len.is_multiple_of(d) && (0..len).all(|i| self.period[i] == self.period[i % d]) {
                self.period.truncate(d);
                break;
            }
        }
        // absorb preperiod tail into the cycle
        while let Some(last) = self.preperiod.last() {
            if last == self.period.last().expect("non-empty") {
                self.preperiod.pop();
                let v = self.period.pop().expect("non-empty");
                self.period.insert(0, v);
            } else {
                break;
            }
        }
    }
}

impl SequenceOracle for EventuallyPeriodicSeq {
    fn value_big(&self, n: &BigUint) -> Value {
        let pre = self.preperiod.len();
        if let Some(small) = n.to_u64() {
            if (small as usize) < pre {
                return self.preperiod[small as usize].clone();
            }
        }
        let idx = ((n - BigUint::from(pre)) % BigUint::from(self.period.len()))
            .to_usize()
            .expect("index below period length");
        self.period[idx].clone()
    }

    fn value(&self, n: u64) -> Value {
        self.value(n as usize).clone()
    }
}

/// Detected eventual period of a finite window: the least `(period, start)`
/// with `w[n + period] = w[n]` for all `start ≤ n ≤ |w| - 1 - period`, with
/// the periodic tail covering at least two full periods.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EventualPeriod {
    pub preperiod: usize,
    pub period: usize,
}

/// Z-array: `z[i]` = length of the longest common prefix of `w` and `w[i..]`.
fn z_array(w: &[u32]) -> Vec<usize> {
    let n = w.len();
    let mut z = vec![0usize; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0usize, 0usize);
    for i in 1..n {
        let mut k = if i < r { z[i - l].min(r - i) } else { 0 };
        while i + k < n && w[k] == w[i + k] {
            k += 1;
        }
        z[i] = k;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

fn intern(values: &[Value]) -> Vec<u32> {
    let mut ids = std::collections::HashMap::new();
    values
        .iter()
        .map(|v| {
            let next = ids.len() as u32;
            *ids.entry(v.clone()).or_insert(next)
        })
        .collect()
}

/// Minimal eventual period of `values` (indices are window positions).
///
/// Runs in `O(|values|)` via a Z-array on the reversed window: the d-periodic
/// tail has length `z[d] + d` where `z[d]` is the longest self-match of the
/// reversed window at offset `d`. A period is accepted when its tail covers
/// at least two full periods and at least half the window; the second guard
/// suppresses accidental alignments of the last few values (a window ending
/// in `…, -1, -1` is not evidence of eventual constancy). Callers should
/// size the window to at least `2·preperiod + 4·period` of any sequence they
/// expect to detect.
pub fn detect_eventual_period(values: &[Value]) -> Option<EventualPeriod> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    let mut ids = intern(values);
    ids.reverse();
    let z = z_array(&ids);
    for d in 1..=(n / 2) {
        let tail = z[d] + d;
        if tail >= 2 * d && 2 * tail >= n {
            // positions j ≥ n - z[d] satisfy w[j] = w[j - d]
            let preperiod = n - tail;
            return Some(EventualPeriod { preperiod, period: d });
        }
    }
    None
}

/// Period detection over oracle values at `start..=end`, reported in absolute
/// indices.
pub fn detect_eventual_period_of(
    f: &dyn SequenceOracle,
    start: u64,
    end: u64,
) -> Option<EventualPeriod> {
    let window: Vec<Value> = crate::scan::map_collect(start, end + 1, |n| f.value(n));
    detect_eventual_period(&window).map(|ep| EventualPeriod {
        preperiod: ep.preperiod + start as usize,
        period: ep.period,
    })
}

/// Builds the canonical eventually periodic sequence from a detected period
/// over explicit window values (window starts at index 0).
pub fn eventually_periodic_from_window(values: &[Value], ep: EventualPeriod) -> EventuallyPeriodicSeq {
    let pre = values[..ep.preperiod].to_vec();
    let per = values[ep.preperiod..ep.preperiod + ep.period].to_vec();
    EventuallyPeriodicSeq::new(pre, per)
}
