use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Result, SearchError};

/// Signed step length to number of uses. Counts are positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StepMultiset(BTreeMap<i64, u32>);

impl StepMultiset {
    pub fn from_counts(counts: impl IntoIterator<Item = (i64, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (len, c) in counts {
            if c > 0 {
                *map.entry(len).or_insert(0) += c;
            }
        }
        Self(map)
    }

    pub fn from_steps(steps: &[i64]) -> Self {
        Self::from_counts(steps.iter().map(|&s| (s, 1)))
    }

    pub fn counts(&self) -> &BTreeMap<i64, u32> {
        &self.0
    }

    pub fn count(&self, len: i64) -> u32 {
        self.0.get(&len).copied().unwrap_or(0)
    }

    /// Number of steps, i.e. the cycle length.
    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    /// `Σ length · count`.
    pub fn weighted_sum(&self) -> i64 {
        self.0.iter().map(|(&l, &c)| l * c as i64).sum()
    }
}

/// Two edges of length `n-1`, `n/2 - 2` of length 7 and `n/2` of length 1,
/// going twice around `M = 3n - 8`.
pub fn even_multiset(n: u32) -> Result<StepMultiset> {
    if !n.is_multiple_of(2) || n < 12 {
        return Err(SearchError::Precondition(format!(
            "even multiset needs an even n >= 12, got {n}"
        )));
    }
    let ms = StepMultiset::from_counts([(n as i64 - 1, 2), (7, n / 2 - 2), (1, n / 2)]);
    assert_eq!(ms.weighted_sum(), 2 * (3 * n as i64 - 8));
    Ok(ms)
}

/// For `n = 4k`: eight edges of length `n-1`, `k-2` of length 13 and `3k-6`
/// of length 1, going four times around `M = 12k - 10`.
pub fn div4_multiset(k: u32) -> Result<StepMultiset> {
    if k < 3 {
        return Err(SearchError::Precondition(format!(
            "div4 multiset needs k >= 3, got {k}"
        )));
    }
    let n = 4 * k as i64;
    let ms = StepMultiset::from_counts([(n - 1, 8), (13, k - 2), (1, 3 * k - 6)]);
    assert_eq!(ms.weighted_sum(), 4 * (3 * n - 10));
    Ok(ms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_examples() {
        let ms = even_multiset(16).unwrap();
        assert_eq!(ms.counts(), &BTreeMap::from([(1, 8), (7, 6), (15, 2)]));
        assert_eq!(ms.weighted_sum(), 80);
        let ms = even_multiset(12).unwrap();
        assert_eq!(ms.counts(), &BTreeMap::from([(1, 6), (7, 4), (11, 2)]));
        assert_eq!(ms.weighted_sum(), 56);
        assert!(even_multiset(13).is_err());
        assert!(even_multiset(10).is_err());
    }

    #[test]
    fn div4_examples() {
        let ms = div4_multiset(5).unwrap();
        assert_eq!(ms.counts(), &BTreeMap::from([(1, 9), (13, 3), (19, 8)]));
        assert_eq!(ms.weighted_sum(), 200);
        assert_eq!(div4_multiset(22).unwrap().weighted_sum(), 1016);
        let ms = div4_multiset(4).unwrap();
        assert_eq!(ms.counts(), &BTreeMap::from([(1, 6), (13, 2), (15, 8)]));
        assert_eq!(ms.weighted_sum(), 152);
        assert!(div4_multiset(2).is_err());
    }

    #[test]
    fn totals_match_cycle_length() {
        for n in (12..200).step_by(2) {
            assert_eq!(even_multiset(n).unwrap().total(), n);
        }
        for k in 3..60 {
            assert_eq!(div4_multiset(k).unwrap().total(), 4 * k);
        }
    }
}
