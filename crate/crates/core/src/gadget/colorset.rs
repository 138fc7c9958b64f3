use std::fmt;

use serde::{Deserialize, Serialize};

/// A cyclic arc `[start, start + width)` of residues modulo the set's modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub start: u32,
    pub width: u32,
}

/// A set of colors modulo `M`, kept as a normalized union of cyclic arcs.
///
/// Normal form: arcs are pairwise disjoint and never adjacent (adjacency
/// across `M - 1 -> 0` included), sorted by start, and every start is in
/// `0..M`. The full set is the single arc `[0, M)`. Two sets are equal iff
/// their normal forms are.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorSet {
    modulus: u32,
    arcs: Vec<Arc>,
}

impl ColorSet {
    pub fn empty(modulus: u32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self {
            modulus,
            arcs: Vec::new(),
        }
    }

    pub fn full(modulus: u32) -> Self {
        Self::arc(modulus, 0, modulus as i64)
    }

    pub fn singleton(modulus: u32, color: i64) -> Self {
        Self::arc(modulus, color, 1)
    }

    /// The arc of `width` colors starting at `start` (reduced mod `M`).
    pub fn arc(modulus: u32, start: i64, width: i64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        assert!(width >= 0, "arc width must be nonnegative");
        let width = width.min(modulus as i64) as u32;
        let start = start.rem_euclid(modulus as i64) as u32;
        Self::from_linear(modulus, split_arc(modulus, Arc { start, width }))
    }

    /// Inclusive cyclic range `lo, lo + 1, ..., hi` (mod `M`).
    pub fn span(modulus: u32, lo: i64, hi: i64) -> Self {
        let width = (hi - lo).rem_euclid(modulus as i64) + 1;
        Self::arc(modulus, lo, width)
    }

    pub fn from_colors(modulus: u32, colors: impl IntoIterator<Item = i64>) -> Self {
        let linear = colors
            .into_iter()
            .map(|c| Arc {
                start: c.rem_euclid(modulus as i64) as u32,
                width: 1,
            })
            .collect();
        Self::from_linear(modulus, linear)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.modulus
    }

    pub fn len(&self) -> u32 {
        self.arcs.iter().map(|a| a.width).sum()
    }

    pub fn contains(&self, color: i64) -> bool {
        let c = color.rem_euclid(self.modulus as i64) as u32;
        self.arcs.iter().any(|a| {
            let offset = (c + self.modulus - a.start) % self.modulus;
            offset < a.width
        })
    }

    /// Colors in ascending residue order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let mut colors: Vec<u32> = self
            .linear()
            .into_iter()
            .flat_map(|a| a.start..a.start + a.width)
            .collect();
        colors.sort_unstable();
        colors.into_iter()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_modulus(other);
        let mut linear = self.linear();
        linear.extend(other.linear());
        Self::from_linear(self.modulus, linear)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_modulus(other);
        let (a, b) = (self.linear(), other.linear());
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].start.max(b[j].start);
            let hi = (a[i].start + a[i].width).min(b[j].start + b[j].width);
            if lo < hi {
                out.push(Arc {
                    start: lo,
                    width: hi - lo,
                });
            }
            if a[i].start + a[i].width < b[j].start + b[j].width {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_linear(self.modulus, out)
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor = 0;
        for a in self.linear() {
            if a.start > cursor {
                out.push(Arc {
                    start: cursor,
                    width: a.start - cursor,
                });
            }
            cursor = a.start + a.width;
        }
        if cursor < self.modulus {
            out.push(Arc {
                start: cursor,
                width: self.modulus - cursor,
            });
        }
        Self::from_linear(self.modulus, out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Image under `c -> c + shift`.
    pub fn rotate(&self, shift: i64) -> Self {
        let linear = self
            .arcs
            .iter()
            .flat_map(|a| {
                let start = (a.start as i64 + shift).rem_euclid(self.modulus as i64) as u32;
                split_arc(
                    self.modulus,
                    Arc {
                        start,
                        width: a.width,
                    },
                )
            })
            .collect();
        Self::from_linear(self.modulus, linear)
    }

    /// Image under `c -> axis - c`.
    pub fn reflect(&self, axis: i64) -> Self {
        let linear = self
            .arcs
            .iter()
            .flat_map(|a| {
                let last = a.start as i64 + a.width as i64 - 1;
                let start = (axis - last).rem_euclid(self.modulus as i64) as u32;
                split_arc(
                    self.modulus,
                    Arc {
                        start,
                        width: a.width,
                    },
                )
            })
            .collect();
        Self::from_linear(self.modulus, linear)
    }

    fn check_modulus(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "color sets over different moduli"
        );
    }

    /// Non-wrapping pieces, sorted.
    fn linear(&self) -> Vec<Arc> {
        let mut out: Vec<Arc> = self
            .arcs
            .iter()
            .flat_map(|&a| split_arc(self.modulus, a))
            .collect();
        out.sort_unstable();
        out
    }

    fn from_linear(modulus: u32, mut pieces: Vec<Arc>) -> Self {
        pieces.retain(|a| a.width > 0);
        pieces.sort_unstable();
        let mut merged: Vec<Arc> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match merged.last_mut() {
                Some(last) if p.start <= last.start + last.width => {
                    let end = (last.start + last.width).max(p.start + p.width);
                    last.width = end - last.start;
                }
                _ => merged.push(p),
            }
        }
        if merged.len() > 1 {
            let first = merged[0];
            let last = merged[merged.len() - 1];
            if first.start == 0 && last.start + last.width == modulus {
                merged.remove(0);
                let n = merged.len();
                merged[n - 1].width += first.width;
            }
        }
        Self {
            modulus,
            arcs: merged,
        }
    }
}

fn split_arc(modulus: u32, a: Arc) -> Vec<Arc> {
    if a.width == 0 {
        return Vec::new();
    }
    if a.width >= modulus {
        return vec![Arc {
            start: 0,
            width: modulus,
        }];
    }
    let end = a.start + a.width;
    if end <= modulus {
        vec![a]
    } else {
        vec![
            Arc {
                start: a.start,
                width: modulus - a.start,
            },
            Arc {
                start: 0,
                width: end - modulus,
            },
        ]
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}} (mod {})", self.modulus);
        }
        let parts: Vec<String> = self
            .arcs
            .iter()
            .map(|a| {
                let last = (a.start + a.width - 1) % self.modulus;
                if a.width == 1 {
                    a.start.to_string()
                } else {
                    format!("{}..{}", a.start, last)
                }
            })
            .collect();
        write!(f, "{{{}}} (mod {})", parts.join(", "), self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mask(set: &ColorSet) -> Vec<bool> {
        let mut m = vec![false; set.modulus() as usize];
        for c in set.iter() {
            m[c as usize] = true;
        }
        m
    }

    fn mask_of_arcs(modulus: u32, arcs: &[(u32, u32)]) -> Vec<bool> {
        let mut m = vec![false; modulus as usize];
        for &(s, w) in arcs {
            for k in 0..w.min(modulus) {
                m[((s + k) % modulus) as usize] = true;
            }
        }
        m
    }

    fn set_of_arcs(modulus: u32, arcs: &[(u32, u32)]) -> ColorSet {
        arcs.iter().fold(ColorSet::empty(modulus), |acc, &(s, w)| {
            acc.union(&ColorSet::arc(modulus, s as i64, w as i64))
        })
    }

    fn normal_form_holds(set: &ColorSet) -> bool {
        let m = set.modulus();
        let arcs = set.arcs();
        let sorted = arcs.windows(2).all(|w| w[0].start < w[1].start);
        let sizes = arcs.iter().all(|a| a.width > 0 && a.start < m);
        // no two arcs touch or overlap, cyclically
        let separated = arcs.len() < 2
            || arcs.iter().enumerate().all(|(i, a)| {
                let next = arcs[(i + 1) % arcs.len()];
                let gap = (next.start + m - (a.start + a.width) % m) % m;
                gap > 0
            });
        sorted && sizes && separated
    }

    #[test]
    fn basic_shapes() {
        let m = 10;
        assert!(ColorSet::empty(m).is_empty());
        assert!(ColorSet::full(m).is_full());
        assert_eq!(
            ColorSet::full(m).arcs(),
            &[Arc {
                start: 0,
                width: 10
            }]
        );
        let wrap = ColorSet::span(m, 8, 1);
        assert_eq!(wrap.iter().collect::<Vec<_>>(), [0, 1, 8, 9]);
        assert_eq!(wrap.arcs(), &[Arc { start: 8, width: 4 }]);
        assert!(wrap.contains(-1));
        assert!(!wrap.contains(5));
        assert_eq!(format!("{wrap}"), "{8..1} (mod 10)");
    }

    #[test]
    fn adjacent_arcs_merge_across_zero() {
        let m = 12;
        let a = ColorSet::span(m, 9, 11).union(&ColorSet::span(m, 0, 2));
        assert_eq!(a, ColorSet::span(m, 9, 2));
        assert_eq!(a.arcs().len(), 1);
        let full = ColorSet::span(m, 0, 5).union(&ColorSet::span(m, 6, 11));
        assert!(full.is_full());
        assert_eq!(full, ColorSet::full(m));
    }

    #[test]
    fn reflect_and_rotate() {
        let m = 28;
        // c -> 1 - c swaps {0, 1}
        let pair = ColorSet::span(m, 0, 1);
        assert_eq!(pair.reflect(1), pair);
        assert_eq!(
            ColorSet::span(m, 0, 10).reflect(1),
            ColorSet::span(m, -9, 1)
        );
        assert_eq!(pair.rotate(27), ColorSet::from_colors(m, [27, 0]));
        assert_eq!(pair.rotate(28), pair);
    }

    proptest! {
        #[test]
        fn algebra_matches_bitmask_oracle(
            modulus in 1u32..200,
            a in proptest::collection::vec((0u32..400, 0u32..60), 0..6),
            b in proptest::collection::vec((0u32..400, 0u32..60), 0..6),
            shift in -500i64..500,
        ) {
            let a: Vec<(u32, u32)> = a.into_iter().map(|(s, w)| (s % modulus, w)).collect();
            let b: Vec<(u32, u32)> = b.into_iter().map(|(s, w)| (s % modulus, w)).collect();
            let (sa, sb) = (set_of_arcs(modulus, &a), set_of_arcs(modulus, &b));
            let (ma, mb) = (mask_of_arcs(modulus, &a), mask_of_arcs(modulus, &b));
            prop_assert_eq!(mask(&sa), ma.clone());
            prop_assert!(normal_form_holds(&sa));

            let union: Vec<bool> = ma.iter().zip(&mb).map(|(x, y)| *x || *y).collect();
            let inter: Vec<bool> = ma.iter().zip(&mb).map(|(x, y)| *x && *y).collect();
            let comp: Vec<bool> = ma.iter().map(|x| !x).collect();
            let u = sa.union(&sb);
            let i = sa.intersection(&sb);
            prop_assert_eq!(mask(&u), union);
            prop_assert_eq!(mask(&i), inter.clone());
            prop_assert_eq!(mask(&sa.complement()), comp);
            prop_assert!(normal_form_holds(&u) && normal_form_holds(&i));
            prop_assert_eq!(sa.is_disjoint(&sb), !inter.iter().any(|&x| x));
            prop_assert_eq!(sa.len() as usize, mask(&sa).iter().filter(|&&x| x).count());

            let rotated: Vec<bool> = (0..modulus as i64)
                .map(|c| ma[(c - shift).rem_euclid(modulus as i64) as usize])
                .collect();
            prop_assert_eq!(mask(&sa.rotate(shift)), rotated);
            let reflected: Vec<bool> = (0..modulus as i64)
                .map(|c| ma[(shift - c).rem_euclid(modulus as i64) as usize])
                .collect();
            prop_assert_eq!(mask(&sa.reflect(shift)), reflected);

            // normal form makes equality extensional
            let rebuilt = ColorSet::from_colors(modulus, sa.iter().map(i64::from));
            prop_assert_eq!(rebuilt, sa);
        }
    }
}
