use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::colorset::ColorSet;
use super::ring::{AmbientRing, Edge, Symmetry};
use super::walk::Walk;
use super::GadgetError;

/// Allowed colors for every edge of the ring. Perimeter edges are implicitly
/// the singleton of their own color; chords absent from the map may take any
/// color. Stored sets are never empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintStore {
    ring: AmbientRing,
    chords: BTreeMap<Edge, ColorSet>,
}

/// Outcome of intersecting a target's allowed set with what a non-rainbow
/// cycle forces on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refinement {
    Allowed(ColorSet),
    Contradiction,
}

impl Refinement {
    pub fn allowed(&self) -> Option<&ColorSet> {
        match self {
            Refinement::Allowed(set) => Some(set),
            Refinement::Contradiction => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deduction {
    pub target: Edge,
    /// Union of the allowed sets of every other edge of the cycle.
    pub bound: ColorSet,
    pub refinement: Refinement,
}

/// Every consistent coloring makes the walk rainbow: the allowed sets of its
/// edges are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContradictionCertificate {
    pub walk: Walk,
    pub edge_sets: Vec<(Edge, ColorSet)>,
}

/// Two edges of the walk whose allowed sets meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub first: usize,
    pub second: usize,
}

impl ConstraintStore {
    pub fn new(ring: AmbientRing) -> Self {
        Self {
            ring,
            chords: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> AmbientRing {
        self.ring
    }

    pub fn allowed(&self, edge: Edge) -> ColorSet {
        let m = self.ring.modulus();
        if edge.is_perimeter() {
            ColorSet::singleton(m, edge.base as i64)
        } else {
            self.chords
                .get(&edge)
                .cloned()
                .unwrap_or_else(|| ColorSet::full(m))
        }
    }

    pub fn constrained_chords(&self) -> impl Iterator<Item = (&Edge, &ColorSet)> {
        self.chords.iter()
    }

    /// Intersect `edge`'s allowed set with `set`. An empty result is a
    /// contradiction and leaves the store unchanged.
    pub fn restrict(&mut self, edge: Edge, set: &ColorSet) -> Result<ColorSet, GadgetError> {
        let refined = self.allowed(edge).intersection(set);
        if refined.is_empty() {
            return Err(GadgetError::Contradiction { edge });
        }
        if !edge.is_perimeter() && !refined.is_full() {
            self.chords.insert(edge, refined.clone());
        }
        Ok(refined)
    }

    /// Replace `edge`'s allowed set outright.
    pub fn set(&mut self, edge: Edge, set: ColorSet) -> Result<(), GadgetError> {
        if set.is_empty() {
            return Err(GadgetError::Contradiction { edge });
        }
        if edge.is_perimeter() {
            return Err(GadgetError::PerimeterEdge { edge });
        }
        if set.is_full() {
            self.chords.remove(&edge);
        } else {
            self.chords.insert(edge, set);
        }
        Ok(())
    }

    /// The relabeled store: `σ(store)` allows color `σ(c)` on `σ(e)` iff the
    /// original allows `c` on `e`.
    pub fn apply_symmetry(&self, sym: Symmetry) -> Self {
        let chords = self
            .chords
            .iter()
            .map(|(&e, set)| (sym.map_edge(self.ring, e), sym.map_colors(set)))
            .collect();
        Self {
            ring: self.ring,
            chords,
        }
    }

    pub fn apply(&self, rotation: i64, reflect: bool) -> Self {
        self.apply_symmetry(Symmetry { rotation, reflect })
    }

    /// Non-rainbow deduction for one edge: if every other edge of `walk` has
    /// pairwise disjoint allowed sets, a repeated color must involve the
    /// target, so its color lies in the union of the others.
    pub fn propagate(&self, walk: &Walk, target: usize) -> Result<Deduction, GadgetError> {
        let mut bound = ColorSet::empty(self.ring.modulus());
        let mut owners: Vec<(usize, ColorSet)> = Vec::new();
        for i in (0..walk.len()).filter(|&i| i != target) {
            let set = self.allowed(walk.edge(i));
            if !bound.is_disjoint(&set) {
                let j = owners
                    .iter()
                    .find(|(_, s)| !s.is_disjoint(&set))
                    .map(|(j, _)| *j)
                    .expect("overlap comes from an earlier edge");
                return Err(GadgetError::PreconditionViolated {
                    first: walk.edge(j),
                    second: walk.edge(i),
                });
            }
            bound = bound.union(&set);
            owners.push((i, set));
        }
        Ok(self.deduce(walk.edge(target), bound))
    }

    /// All alternatives a non-rainbow `walk` leaves open.
    ///
    /// Perimeter colors are pairwise distinct, so a repeated color involves at
    /// least one chord; for each chord `e`, the alternative is that `e`'s color
    /// lies in the union of the other edges' sets. Chords whose alternative
    /// is empty are dropped.
    pub fn disjunction(&self, walk: &Walk) -> Vec<Deduction> {
        let sets: Vec<ColorSet> = walk.edges().map(|e| self.allowed(e)).collect();
        (0..walk.len())
            .filter(|&i| !walk.edge(i).is_perimeter())
            .filter_map(|i| {
                let bound = sets
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(ColorSet::empty(self.ring.modulus()), |acc, (_, s)| {
                        acc.union(s)
                    });
                let d = self.deduce(walk.edge(i), bound);
                matches!(d.refinement, Refinement::Allowed(_)).then_some(d)
            })
            .collect()
    }

    /// A certificate when the allowed sets along `walk` are pairwise disjoint,
    /// otherwise the first intersecting pair.
    pub fn forced_rainbow(&self, walk: &Walk) -> Result<ContradictionCertificate, WitnessPair> {
        let edge_sets: Vec<(Edge, ColorSet)> = walk.edges().map(|e| (e, self.allowed(e))).collect();
        let mut seen = ColorSet::empty(self.ring.modulus());
        for (i, (_, set)) in edge_sets.iter().enumerate() {
            if !seen.is_disjoint(set) {
                let first = edge_sets[..i]
                    .iter()
                    .position(|(_, s)| !s.is_disjoint(set))
                    .expect("overlap comes from an earlier edge");
                return Err(WitnessPair { first, second: i });
            }
            seen = seen.union(set);
        }
        Ok(ContradictionCertificate {
            walk: walk.clone(),
            edge_sets,
        })
    }

    fn deduce(&self, target: Edge, bound: ColorSet) -> Deduction {
        let refined = self.allowed(target).intersection(&bound);
        let refinement = if refined.is_empty() {
            Refinement::Contradiction
        } else {
            Refinement::Allowed(refined)
        };
        Deduction {
            target,
            bound,
            refinement,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perimeter_cycle(ring: AmbientRing, start: i64, n: usize) -> Walk {
        let mut steps = vec![1; n - 1];
        steps.push(-(n as i64 - 1));
        Walk::from_steps(ring, start, &steps).unwrap()
    }

    #[test]
    fn allowed_defaults() {
        let ring = AmbientRing::new(40);
        let store = ConstraintStore::new(ring);
        assert_eq!(store.allowed(ring.edge(3, 4)), ColorSet::singleton(40, 3));
        assert!(store.allowed(ring.edge(0, 7)).is_full());
    }

    #[test]
    fn perimeter_cycle_bounds_its_closing_chord() {
        for n in [12i64, 16, 30] {
            let ring = AmbientRing::new(3 * n as u32 - 8);
            let store = ConstraintStore::new(ring);
            let walk = perimeter_cycle(ring, 0, n as usize);
            let d = store.propagate(&walk, n as usize - 1).unwrap();
            assert_eq!(d.target, ring.edge(0, n - 1));
            assert_eq!(d.refinement, Refinement::Allowed(ring.span(0, n - 2)));
        }
    }

    #[test]
    fn offset_chord_cycle_after_long_chords() {
        let n = 16i64;
        let ring = AmbientRing::new(3 * n as u32 - 8);
        let mut store = ConstraintStore::new(ring);
        for i in 0..ring.modulus() as i64 {
            store
                .set(ring.edge(i, i + n - 1), ring.span(i, i + 1))
                .unwrap();
        }
        let mut steps = vec![n - 5, n - 1];
        steps.extend(std::iter::repeat_n(1, n as usize - 2));
        let walk = Walk::from_steps(ring, 0, &steps).unwrap();
        let d = store.propagate(&walk, 0).unwrap();
        let expected = ring
            .span(n - 5, n - 4)
            .union(&ring.span(2 * n - 6, 3 * n - 9));
        assert_eq!(d.refinement, Refinement::Allowed(expected));
    }

    #[test]
    fn propagate_rejects_overlapping_others() {
        let ring = AmbientRing::new(20);
        let mut store = ConstraintStore::new(ring);
        store
            .set(ring.edge(0, 5), ColorSet::singleton(20, 7))
            .unwrap();
        store
            .set(ring.edge(5, 10), ColorSet::singleton(20, 7))
            .unwrap();
        let walk = Walk::from_steps(ring, 0, &[5, 5, -1, -9]).unwrap();
        assert_eq!(
            store.propagate(&walk, 3),
            Err(GadgetError::PreconditionViolated {
                first: ring.edge(0, 5),
                second: ring.edge(5, 10),
            })
        );
    }

    #[test]
    fn fresh_perimeter_cycle_is_not_forced() {
        let ring = AmbientRing::new(28);
        let store = ConstraintStore::new(ring);
        let walk = perimeter_cycle(ring, 0, 12);
        assert_eq!(
            store.forced_rainbow(&walk),
            Err(WitnessPair {
                first: 0,
                second: 11
            })
        );
    }

    #[test]
    fn restrict_refuses_empty() {
        let ring = AmbientRing::new(20);
        let mut store = ConstraintStore::new(ring);
        let e = ring.edge(0, 7);
        store.restrict(e, &ring.span(0, 1)).unwrap();
        assert_eq!(
            store.restrict(e, &ring.span(5, 6)),
            Err(GadgetError::Contradiction { edge: e })
        );
        assert_eq!(store.allowed(e), ring.span(0, 1));
    }

    #[test]
    fn symmetry_round_trips() {
        let ring = AmbientRing::new(40);
        let mut store = ConstraintStore::new(ring);
        store.set(ring.edge(0, 15), ring.span(0, 1)).unwrap();
        store.set(ring.edge(3, 10), ring.span(30, 33)).unwrap();
        assert_eq!(store.apply(40, false), store);
        assert_eq!(
            store.apply(13, false).apply(13, false),
            store.apply(26, false)
        );
        for sym in [Symmetry::rotation(11), Symmetry::reflection_through(1)] {
            assert_eq!(
                store.apply_symmetry(sym).apply_symmetry(sym.inverse()),
                store
            );
        }
    }
}
