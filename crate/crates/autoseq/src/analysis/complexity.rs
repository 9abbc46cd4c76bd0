//! Word complexity and recurrence-gap statistics of the value sequence.

use std::collections::HashMap;

use crate::scan;
use crate::seq::SequenceOracle;

/// Statistics for one factor length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthStats {
    pub len: usize,
    /// Number of distinct factors of this length in the prefix.
    pub distinct: usize,
    /// Largest recurrence gap over all factors of this length: consecutive
    /// occurrence distance, including the gap from the window start to the
    /// first occurrence and from the last occurrence to the window end, so a
    /// factor that stops appearing is charged its trailing silence.
    pub max_gap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityReport {
    /// Prefix `a(1), …, a(prefix_len)` was analyzed.
    pub prefix_len: u64,
    pub per_length: Vec<LengthStats>,
}

impl ComplexityReport {
    /// Bounded-gap check: every factor of length `len` recurs within `bound`.
    pub fn gaps_bounded(&self, len: usize, bound: u64) -> bool {
        self.per_length.iter().find(|s| s.len == len).is_some_and(|s| s.max_gap <= bound)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,distinct_factors,max_gap\n");
        for s in &self.per_length {
            out.push_str(&format!("{},{},{}\n", s.len, s.distinct, s.max_gap));
        }
        out
    }
}

/// Counts distinct factors of each length `1 ≤ ℓ ≤ max_len` in the prefix
/// `a(1..=prefix_len)`, with recurrence-gap statistics per factor.
pub fn word_complexity(
    a: &dyn SequenceOracle,
    max_len: usize,
    prefix_len: u64,
) -> ComplexityReport {
    assert!(max_len >= 1 && prefix_len as usize >= max_len);
    // intern values once; factors are id slices
    let values = scan::map_collect(1, prefix_len + 1, |n| a.value(n));
    let mut ids: HashMap<crate::value::Value, u32> = HashMap::new();
    let word: Vec<u32> = values
        .into_iter()
        .map(|v| {
            let next = ids.len() as u32;
            *ids.entry(v).or_insert(next)
        })
        .collect();

    let per_length = (1..=max_len)
        .map(|len| {
            // factor -> (first_start, last_start, max_consecutive_gap)
            let mut seen: HashMap<&[u32], (u64, u64, u64)> = HashMap::new();
            for (i, w) in word.windows(len).enumerate() {
                let start = i as u64 + 1;
                seen.entry(w)
                    .and_modify(|(_, last, max_gap)| {
                        *max_gap = (*max_gap).max(start - *last);
                        *last = start;
                    })
                    .or_insert((start, start, 0));
            }
            let last_window_start = prefix_len - len as u64 + 1;
            let max_gap = seen
                .values()
                .map(|&(first, last, gap)| gap.max(first).max(last_window_start + 1 - last))
                .max()
                .unwrap_or(0);
            LengthStats { len, distinct: seen.len(), max_gap }
        })
        .collect();

    ComplexityReport { prefix_len, per_length }
}
