//! Ordered unions of disjoint half-open intervals `[lo, hi)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// A sorted list of disjoint half-open intervals.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IntervalSet(Vec<Interval>);

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet(Vec::new())
    }

    /// Validates ordering, disjointness and `lo < hi` per part.
    pub fn new(parts: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &parts {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::domain(format!("bad interval [{lo}, {hi})")));
            }
        }
        for w in parts.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::domain(format!(
                    "intervals overlap or are unsorted: [{}, {}) then [{}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(IntervalSet(
            parts
                .into_iter()
                .map(|(lo, hi)| Interval { lo, hi })
                .collect(),
        ))
    }

    pub fn single(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    /// Builds the set from already-sorted cell bounds, merging adjacent cells
    /// that share an edge.
    pub fn from_sorted_cells(cells: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut parts: Vec<Interval> = Vec::new();
        for (lo, hi) in cells {
            match parts.last_mut() {
                Some(last) if last.hi == lo => last.hi = hi,
                _ => parts.push(Interval { lo, hi }),
            }
        }
        IntervalSet(parts)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.0.iter().any(|iv| iv.lo <= x && x < iv.hi)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[Interval] {
        &self.0
    }

    /// Sum of part lengths.
    pub fn total_length(&self) -> f64 {
        self.0.iter().map(|iv| iv.hi - iv.lo).sum()
    }

    /// Smallest `lo` and largest `hi`, if nonempty.
    pub fn span(&self) -> Option<(f64, f64)> {
        Some((self.0.first()?.lo, self.0.last()?.hi))
    }

    /// True when every part of `self` lies inside some part of `other`.
    pub fn subset_of(&self, other: &IntervalSet) -> bool {
        self.0
            .iter()
            .all(|iv| other.0.iter().any(|o| o.lo <= iv.lo && iv.hi <= o.hi))
    }
}

impl std::fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|iv| format!("[{}, {})", iv.lo, iv.hi))
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}
