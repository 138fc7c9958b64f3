use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::multiset::{div4_multiset, even_multiset, StepMultiset};
use super::{Result, SearchError};
use crate::gadget::{AmbientRing, ChordFamily, ColorSet, ConstraintStore, Edge, Walk};

/// Which derived constraints a witness is checked against.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilyId {
    /// `n-1` and 7 chords, width 2, ring `3n - 8`.
    EvenChain(u32),
    /// `n-1` and 13 chords, width 3, ring `3n - 10`.
    Div4Chain(u32),
    Custom,
}

impl FamilyId {
    pub fn n(&self) -> Option<u32> {
        match *self {
            FamilyId::EvenChain(n) | FamilyId::Div4Chain(n) => Some(n),
            FamilyId::Custom => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::EvenChain(n) => write!(f, "even-chain({n})"),
            FamilyId::Div4Chain(n) => write!(f, "div4-chain({n})"),
            FamilyId::Custom => f.write_str("custom"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "custom" {
            return Ok(FamilyId::Custom);
        }
        let parse = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|n| n.parse::<u32>().ok())
        };
        if let Some(n) = parse("even-chain(") {
            Ok(FamilyId::EvenChain(n))
        } else if let Some(n) = parse("div4-chain(") {
            Ok(FamilyId::Div4Chain(n))
        } else {
            Err(format!("unknown constraint family {s:?}"))
        }
    }
}

impl From<FamilyId> for String {
    fn from(id: FamilyId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for FamilyId {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

/// Closed-form allowed colors per chord length. Perimeter edges carry their
/// own color; lengths without a rule are unconstrained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintFamily {
    id: FamilyId,
    ring: AmbientRing,
    rules: Vec<ChordFamily>,
}

impl ConstraintFamily {
    pub fn even_chain(n: u32) -> Result<Self> {
        if !n.is_multiple_of(2) || n < 12 {
            return Err(SearchError::Precondition(format!(
                "even-chain family needs an even n >= 12, got {n}"
            )));
        }
        Ok(Self {
            id: FamilyId::EvenChain(n),
            ring: AmbientRing::new(3 * n - 8),
            rules: vec![
                ChordFamily {
                    length: n - 1,
                    offset: 0,
                    width: 2,
                },
                ChordFamily {
                    length: 7,
                    offset: 0,
                    width: 2,
                },
            ],
        })
    }

    pub fn div4_chain(n: u32) -> Result<Self> {
        if !n.is_multiple_of(4) || n < 16 {
            return Err(SearchError::Precondition(format!(
                "div4-chain family needs n divisible by 4 and n >= 16, got {n}"
            )));
        }
        Ok(Self {
            id: FamilyId::Div4Chain(n),
            ring: AmbientRing::new(3 * n - 10),
            rules: vec![
                ChordFamily {
                    length: n - 1,
                    offset: 0,
                    width: 3,
                },
                ChordFamily {
                    length: 13,
                    offset: 0,
                    width: 3,
                },
            ],
        })
    }

    pub fn from_id(id: &FamilyId) -> Result<Self> {
        match *id {
            FamilyId::EvenChain(n) => Self::even_chain(n),
            FamilyId::Div4Chain(n) => Self::div4_chain(n),
            FamilyId::Custom => Err(SearchError::Precondition(
                "a custom family carries its own rules".into(),
            )),
        }
    }

    pub fn custom(modulus: u32, rules: Vec<ChordFamily>) -> Self {
        Self {
            id: FamilyId::Custom,
            ring: AmbientRing::new(modulus),
            rules,
        }
    }

    pub fn id(&self) -> &FamilyId {
        &self.id
    }

    pub fn ring(&self) -> AmbientRing {
        self.ring
    }

    pub fn modulus(&self) -> u32 {
        self.ring.modulus()
    }

    pub fn rules(&self) -> &[ChordFamily] {
        &self.rules
    }

    pub fn allowed(&self, edge: Edge) -> ColorSet {
        if edge.is_perimeter() {
            return ColorSet::singleton(self.modulus(), edge.base as i64);
        }
        self.rules
            .iter()
            .find(|r| r.length == edge.len)
            .map(|r| r.colors(self.ring, edge.base as i64))
            .unwrap_or_else(|| self.ring.full())
    }

    /// Allowed colors of the edge `v -> v + len`.
    pub fn step_colors(&self, v: i64, len: i64) -> ColorSet {
        self.allowed(self.ring.edge(v, v + len))
    }

    /// A store holding this family's sets for the chords of `walk`.
    pub fn store_for(&self, walk: &Walk) -> ConstraintStore {
        let mut store = ConstraintStore::new(self.ring);
        for e in walk.edges().filter(|e| !e.is_perimeter()) {
            store
                .set(e, self.allowed(e))
                .expect("family sets are non-empty");
        }
        store
    }

    /// The step multiset a witness for this family must use.
    pub fn prescribed_multiset(&self) -> Option<StepMultiset> {
        match self.id {
            FamilyId::EvenChain(n) => even_multiset(n).ok(),
            FamilyId::Div4Chain(n) => div4_multiset(n / 4).ok(),
            FamilyId::Custom => None,
        }
    }

    /// Short steps first, then the chords in increasing length.
    pub fn default_ordering(&self) -> Vec<i64> {
        let mut lengths: Vec<i64> = std::iter::once(1)
            .chain(self.rules.iter().map(|r| r.length as i64))
            .collect();
        lengths.sort_unstable();
        lengths.dedup();
        lengths
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_round_trip() {
        for id in [
            FamilyId::EvenChain(12),
            FamilyId::Div4Chain(20),
            FamilyId::Custom,
        ] {
            assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
        assert!("div4-chain(x)".parse::<FamilyId>().is_err());
    }

    #[test]
    fn div4_sets() {
        let f = ConstraintFamily::div4_chain(20).unwrap();
        assert_eq!(f.modulus(), 50);
        assert_eq!(f.step_colors(3, 13), f.ring().span(3, 5));
        assert_eq!(f.step_colors(37, 19), f.ring().span(37, 39));
        assert_eq!(f.step_colors(4, 1), ColorSet::singleton(50, 4));
        assert!(f.step_colors(0, 5).is_full());
        assert_eq!(f.default_ordering(), vec![1, 13, 19]);
    }
}
