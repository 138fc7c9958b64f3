//! Scripted chord-color derivations.
//!
//! Each script is a fixed sequence of [`ConstraintStore`] primitives over the
//! ambient ring, parameterized by `n`. Every intermediate bound is compared
//! against its closed form; a mismatch aborts with
//! [`GadgetError::ScriptStepFailed`].
//!
//! * Even case, `M = 3n - 8`: chords of length `n-1` get `{i, i+1}`, length
//!   `n-5` gets `{i+n-5, i+n-4}`, length 7 gets `{i, i+1}`.
//! * Doubly-even case, `M = 3n - 10`: length `n-1` gets `{i..i+2}`, length
//!   `n-7` gets `{i+n-7..i+n-5}`, length 13 gets `{i..i+2}`.

use serde::{Deserialize, Serialize};

use super::colorset::ColorSet;
use super::ring::{AmbientRing, Edge, Symmetry};
use super::store::{ConstraintStore, Refinement};
use super::walk::Walk;
use super::GadgetError;

type Result<T> = std::result::Result<T, GadgetError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainCase {
    Even,
    Div4,
}

/// How far a script runs. Stages are cumulative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainStage {
    LongChords,
    OffsetChords,
    ShortChords,
}

/// `γ(i, i+length) ∈ arc(i + offset, width)` for every `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordFamily {
    pub length: u32,
    pub offset: i64,
    pub width: u32,
}

impl ChordFamily {
    pub fn edge(&self, ring: AmbientRing, i: i64) -> Edge {
        ring.edge(i, i + self.length as i64)
    }

    pub fn colors(&self, ring: AmbientRing, i: i64) -> ColorSet {
        ring.arc(i + self.offset, self.width as i64)
    }
}

/// One checked intermediate result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStep {
    pub id: String,
    pub target: Edge,
    pub expected: ColorSet,
    pub got: ColorSet,
}

/// Two families landing on the same chord length. Their sets are disjoint,
/// so the store keeps the later family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCollision {
    pub length: u32,
    pub earlier: ChordFamily,
    pub later: ChordFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaChain {
    pub case: ChainCase,
    pub n: u32,
    pub ring: AmbientRing,
    pub stage: ChainStage,
    pub store: ConstraintStore,
    pub families: Vec<ChordFamily>,
    pub steps: Vec<ScriptStep>,
    pub collisions: Vec<FamilyCollision>,
    pub notes: Vec<String>,
}

impl LemmaChain {
    /// Families whose sets are present in the store (a collided family is
    /// shadowed by the later one).
    pub fn effective_families(&self) -> Vec<ChordFamily> {
        self.families
            .iter()
            .enumerate()
            .filter(|(k, f)| !self.families[k + 1..].iter().any(|g| g.length == f.length))
            .map(|(_, f)| *f)
            .collect()
    }
}

/// Full even-case derivation, `n` even and at least 12.
pub fn lemma_even_chain(n: u32) -> Result<LemmaChain> {
    even_chain(n, ChainStage::ShortChords)
}

/// Full doubly-even derivation, `n ≡ 0 (mod 4)` and at least 20.
pub fn lemma_div4_chain(n: u32) -> Result<LemmaChain> {
    div4_chain(n, ChainStage::ShortChords)
}

pub fn even_chain(n: u32, stage: ChainStage) -> Result<LemmaChain> {
    if !n.is_multiple_of(2) || n < 12 {
        return Err(GadgetError::ChainPrecondition(format!(
            "even chain needs an even n >= 12, got {n}"
        )));
    }
    let mut s = Script::new(ChainCase::Even, n, 3 * n - 8, stage);
    let n = n as i64;
    let long = ChordFamily {
        length: (n - 1) as u32,
        offset: 0,
        width: 2,
    };
    s.long_chords_even(long)?;
    if stage >= ChainStage::OffsetChords {
        let offset = ChordFamily {
            length: (n - 5) as u32,
            offset: n - 5,
            width: 2,
        };
        let ring = s.ring;
        let cycles = [
            (
                "A",
                steps(&[(n - 5, 1), (n - 1, 1), (1, n - 2)]),
                ring.span(n - 5, n - 4)
                    .union(&ring.span(2 * n - 6, 3 * n - 9)),
            ),
            (
                "B",
                steps(&[(n - 5, 1), (1, n - 2), (n - 1, 1)]),
                ring.span(n - 5, 2 * n - 6),
            ),
            (
                "C",
                steps(&[(n - 5, 1), (1, 1), (n - 1, 1), (1, n - 3)]),
                ring.span(n - 5, n - 3)
                    .union(&ring.span(2 * n - 5, 3 * n - 9)),
            ),
        ];
        s.family_stage("offset", offset, &cycles, None)?;
    }
    if stage >= ChainStage::ShortChords {
        let short = ChordFamily {
            length: 7,
            offset: 0,
            width: 2,
        };
        let ring = s.ring;
        let cycles = [
            (
                "A",
                steps(&[
                    (7, 1),
                    (n - 5, 1),
                    (-1, n - 7),
                    (n - 5, 2),
                    (-1, 2),
                    (n - 5, 1),
                ]),
                ring.span(0, 1)
                    .union(&ring.span(9, n + 5))
                    .union(&ring.span(2 * n - 3, 2 * n)),
            ),
            (
                "B",
                steps(&[(7, 1), (n - 5, 2), (-1, n - 10), (n - 5, 2), (-1, 5)]),
                ring.span(0, 6)
                    .union(&ring.span(n + 2, n + 3))
                    .union(&ring.span(n + 7, 2 * n - 2))
                    .union(&ring.span(2 * n + 2, 2 * n + 3)),
            ),
            (
                "C",
                steps(&[
                    (7, 1),
                    (-1, 2),
                    (n - 5, 3),
                    (-1, n - 10),
                    (n - 5, 1),
                    (-1, 3),
                ]),
                ring.span(0, 6)
                    .union(&ring.span(n, n + 1))
                    .union(&ring.span(2 * n - 5, 2 * n - 4))
                    .union(&ring.span(2 * n, 3 * n - 9)),
            ),
        ];
        let ab = ring
            .span(0, 1)
            .union(&ring.span(n + 2, n + 3))
            .union(&ring.span(2 * n - 3, 2 * n - 2));
        s.family_stage("short", short, &cycles, Some(ab))?;
    }
    s.finish()
}

pub fn div4_chain(n: u32, stage: ChainStage) -> Result<LemmaChain> {
    if !n.is_multiple_of(4) || n < 12 {
        return Err(GadgetError::ChainPrecondition(format!(
            "doubly-even chain needs n divisible by 4 and n >= 12, got {n}"
        )));
    }
    if stage >= ChainStage::ShortChords && n < 20 {
        return Err(GadgetError::ChainPrecondition(format!(
            "length-13 chords need n >= 20, got {n}"
        )));
    }
    let mut s = Script::new(ChainCase::Div4, n, 3 * n - 10, stage);
    let n = n as i64;
    let long = ChordFamily {
        length: (n - 1) as u32,
        offset: 0,
        width: 3,
    };
    s.long_chords_div4(long)?;
    if stage >= ChainStage::OffsetChords {
        let offset = ChordFamily {
            length: (n - 7) as u32,
            offset: n - 7,
            width: 3,
        };
        let ring = s.ring;
        let cycles = [
            (
                "A",
                steps(&[(n - 7, 1), (n - 1, 1), (1, n - 2)]),
                ring.span(n - 7, n - 5)
                    .union(&ring.span(2 * n - 8, 3 * n - 11)),
            ),
            (
                "B",
                steps(&[(n - 7, 1), (1, n - 2), (n - 1, 1)]),
                ring.span(n - 7, 2 * n - 7),
            ),
            (
                "C",
                steps(&[(n - 7, 1), (1, 2), (n - 1, 1), (1, n - 4)]),
                ring.span(n - 7, n - 3)
                    .union(&ring.span(2 * n - 6, 3 * n - 11)),
            ),
        ];
        s.family_stage("offset", offset, &cycles, None)?;
        s.notes.push(format!(
            "offset cycle B bounds chord (0, {}), the chord of length n-7; a bound on chord (0, 7) does not follow from it",
            n - 7
        ));
    }
    if stage >= ChainStage::ShortChords {
        let short = ChordFamily {
            length: 13,
            offset: 0,
            width: 3,
        };
        let ring = s.ring;
        let cycles = [
            (
                "A",
                steps(&[
                    (13, 1),
                    (n - 7, 1),
                    (-1, n - 10),
                    (n - 7, 2),
                    (-1, 5),
                    (n - 7, 1),
                ]),
                ring.span(0, 2)
                    .union(&ring.span(16, n + 11))
                    .union(&ring.span(2 * n - 3, 2 * n + 4)),
            ),
            (
                "B",
                steps(&[(13, 1), (n - 7, 2), (-1, n - 13), (n - 7, 2), (-1, 8)]),
                ring.span(0, 10)
                    .union(&ring.span(n + 6, n + 8))
                    .union(&ring.span(n + 12, 2 * n + 1))
                    .union(&ring.span(2 * n + 5, 2 * n + 7)),
            ),
            (
                "C",
                steps(&[
                    (13, 1),
                    (-1, 5),
                    (n - 7, 3),
                    (-1, n - 15),
                    (n - 7, 1),
                    (-1, 5),
                ]),
                ring.span(0, 12)
                    .union(&ring.span(n + 1, n + 3))
                    .union(&ring.span(2 * n - 6, 2 * n - 4))
                    .union(&ring.span(2 * n + 2, 3 * n - 11)),
            ),
        ];
        let ab = ring
            .span(0, 2)
            .union(&ring.span(n + 6, n + 8))
            .union(&ring.span(2 * n - 3, 2 * n + 1));
        s.family_stage("short", short, &cycles, Some(ab))?;
    }
    s.finish()
}

/// Expand `(length, count)` runs into a step list.
fn steps(runs: &[(i64, i64)]) -> Vec<i64> {
    runs.iter()
        .flat_map(|&(len, count)| std::iter::repeat_n(len, count.max(0) as usize))
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

struct Script {
    case: ChainCase,
    n: i64,
    ring: AmbientRing,
    stage: ChainStage,
    store: ConstraintStore,
    families: Vec<ChordFamily>,
    steps: Vec<ScriptStep>,
    collisions: Vec<FamilyCollision>,
    notes: Vec<String>,
}

impl Script {
    fn new(case: ChainCase, n: u32, modulus: u32, stage: ChainStage) -> Self {
        let ring = AmbientRing::new(modulus);
        Self {
            case,
            n: n as i64,
            ring,
            stage,
            store: ConstraintStore::new(ring),
            families: Vec::new(),
            steps: Vec::new(),
            collisions: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn m(&self) -> i64 {
        self.ring.modulus() as i64
    }

    fn walk(&self, start: i64, steps: &[i64]) -> Result<Walk> {
        Walk::from_steps(self.ring, start, steps)
    }

    fn check(&mut self, id: String, target: Edge, expected: ColorSet, got: ColorSet) -> Result<()> {
        let ok = expected == got;
        if !ok {
            return Err(GadgetError::ScriptStepFailed {
                step: id,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
        self.steps.push(ScriptStep {
            id,
            target,
            expected,
            got,
        });
        Ok(())
    }

    fn fail(step: &str, expected: &str, got: impl ToString) -> GadgetError {
        GadgetError::ScriptStepFailed {
            step: step.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }

    /// The perimeter path `base -> base+n-1` closed by its chord bounds the
    /// chord to the path's colors.
    fn perimeter(&mut self, store: &mut ConstraintStore, base: i64, id: &str) -> Result<()> {
        let n = self.n;
        let mut st = vec![1; n as usize - 1];
        st.push(-(n - 1));
        let walk = self.walk(base, &st)?;
        let d = store.propagate(&walk, n as usize - 1)?;
        let target = d.target;
        self.check(
            format!("{id}/perimeter/{}", self.ring.vertex(base)),
            target,
            self.ring.arc(base, n - 1),
            d.bound.clone(),
        )?;
        store.restrict(target, &d.bound)?;
        Ok(())
    }

    /// `walk` must leave exactly one alternative, on `target`, equal to
    /// `expected`; install it.
    fn forced(
        &mut self,
        store: &mut ConstraintStore,
        walk: &Walk,
        target: Edge,
        expected: ColorSet,
        id: String,
    ) -> Result<()> {
        let alts = store.disjunction(walk);
        let (got_target, got) = match alts.as_slice() {
            [d] => (d.target, d.refinement.allowed().cloned().unwrap()),
            _ => {
                return Err(Self::fail(
                    &id,
                    &format!("a single alternative on {target}"),
                    format!("{} alternatives", alts.len()),
                ))
            }
        };
        if got_target != target {
            return Err(Self::fail(&id, &target.to_string(), got_target));
        }
        self.check(id, target, expected, got.clone())?;
        store.restrict(target, &got)?;
        Ok(())
    }

    /// Walk the orbit of `start` under rotation by `step`: at each chord `j`
    /// already known, `cycle` rotated by `j` forces chord `j + step`.
    #[allow(clippy::too_many_arguments)]
    fn closure(
        &mut self,
        store: &mut ConstraintStore,
        cycle: &Walk,
        start: i64,
        step: i64,
        count: i64,
        family: ChordFamily,
        id: &str,
    ) -> Result<()> {
        let mut j = start;
        for _ in 0..count {
            let next = j + step;
            self.perimeter(store, next, id)?;
            self.forced(
                store,
                &cycle.rotate(j),
                family.edge(self.ring, next),
                family.colors(self.ring, next),
                format!("{id}/closure/{}", self.ring.vertex(next)),
            )?;
            j = next;
        }
        Ok(())
    }

    fn wlog(&self, walk: &Walk, sym: Symmetry, id: &str) -> Result<()> {
        let store = &self.store;
        if store.apply_symmetry(sym) != *store {
            return Err(Self::fail(
                id,
                "store invariant under the symmetry",
                "store moved",
            ));
        }
        if walk.map(sym).edge_set() != walk.edge_set() {
            return Err(Self::fail(
                id,
                "cycle invariant under the symmetry",
                "cycle moved",
            ));
        }
        let alts = store.disjunction(walk);
        let swapped = alts.len() == 2 && {
            let (a, b) = (&alts[0], &alts[1]);
            let image = |d: &super::store::Deduction| {
                (
                    sym.map_edge(self.ring, d.target),
                    d.refinement.allowed().map(|s| sym.map_colors(s)),
                )
            };
            image(a) == (b.target, b.refinement.allowed().cloned())
                && image(b) == (a.target, a.refinement.allowed().cloned())
        };
        if !swapped {
            return Err(Self::fail(
                id,
                "two alternatives exchanged by the symmetry",
                format!("{alts:?}"),
            ));
        }
        Ok(())
    }

    fn expect_alternatives(
        &mut self,
        walk: &Walk,
        expected: &[(Edge, ColorSet)],
        id: &str,
    ) -> Result<()> {
        let alts = self.store.disjunction(walk);
        if alts.len() != expected.len() {
            return Err(Self::fail(
                id,
                &format!("{} alternatives", expected.len()),
                alts.len(),
            ));
        }
        for (k, (d, (edge, set))) in alts.iter().zip(expected).enumerate() {
            if d.target != *edge {
                return Err(Self::fail(id, &edge.to_string(), d.target));
            }
            let got = match &d.refinement {
                Refinement::Allowed(s) => s.clone(),
                Refinement::Contradiction => ColorSet::empty(self.ring.modulus()),
            };
            self.check(format!("{id}/alternative/{k}"), *edge, set.clone(), got)?;
        }
        Ok(())
    }

    fn verify_family(&mut self, family: ChordFamily, id: &str) -> Result<()> {
        for i in 0..self.m() {
            let e = family.edge(self.ring, i);
            let got = self.store.allowed(e);
            let expected = family.colors(self.ring, i);
            if got != expected {
                return Err(GadgetError::ScriptStepFailed {
                    step: format!("{id}/closed-form/{i}"),
                    expected: expected.to_string(),
                    got: got.to_string(),
                });
            }
        }
        Ok(())
    }

    fn long_chords_even(&mut self, family: ChordFamily) -> Result<()> {
        let (n, ring) = (self.n, self.ring);
        let mut store = self.store.clone();
        self.perimeter(&mut store, 0, "long")?;
        self.perimeter(&mut store, 2 * n - 5, "long")?;
        self.store = store;

        let a = self.walk(0, &steps(&[(n - 1, 1), (1, n - 4), (n - 1, 1), (-1, 2)]))?;
        self.expect_alternatives(
            &a,
            &[
                (ring.edge(0, n - 1), ring.span(0, 1)),
                (ring.edge(2 * n - 5, 2), ring.span(0, 1)),
            ],
            "long/A",
        )?;
        self.wlog(&a, Symmetry::reflection_through(1), "long/wlog")?;
        self.store.restrict(ring.edge(0, n - 1), &ring.span(0, 1))?;

        let step = n - 3;
        if gcd(self.m(), step) != 1 {
            return Err(Self::fail("long/gcd", "1", gcd(self.m(), step)));
        }
        let mut store = self.store.clone();
        let b = a.rotate(step);
        self.closure(&mut store, &b, 0, step, self.m() - 1, family, "long")?;
        self.store = store;
        self.verify_family(family, "long")?;
        self.families.push(family);
        Ok(())
    }

    fn long_chords_div4(&mut self, family: ChordFamily) -> Result<()> {
        let (n, ring, m) = (self.n, self.ring, self.m());
        let mut store = self.store.clone();
        self.perimeter(&mut store, 0, "long")?;
        self.perimeter(&mut store, 2 * n - 6, "long")?;
        self.store = store;

        let a = self.walk(0, &steps(&[(n - 1, 1), (1, n - 5), (n - 1, 1), (-1, 3)]))?;
        self.expect_alternatives(
            &a,
            &[
                (ring.edge(0, n - 1), ring.span(0, 2)),
                (ring.edge(2 * n - 6, 3), ring.span(0, 2)),
            ],
            "long/A",
        )?;
        // v -> 3 - v exchanges the two chords and sends color c to 2 - c
        self.wlog(
            &a,
            Symmetry {
                rotation: 3,
                reflect: true,
            },
            "long/wlog",
        )?;
        self.store.restrict(ring.edge(0, n - 1), &ring.span(0, 2))?;

        let step = n - 4;
        if gcd(m, step) != 2 {
            return Err(Self::fail("long/gcd", "2", gcd(m, step)));
        }
        let b = a.rotate(step);
        let mut store = self.store.clone();
        self.closure(&mut store, &b, 0, step, m / 2 - 1, family, "long/even")?;

        // odd chords: either (1, n) takes {1,2,3} or (2n-5, 4) does
        self.perimeter(&mut store, 1, "long/odd")?;
        self.perimeter(&mut store, 2 * n - 5, "long/odd")?;
        self.store = store;
        let a1 = a.rotate(1);
        self.expect_alternatives(
            &a1,
            &[
                (ring.edge(1, n), ring.span(1, 3)),
                (ring.edge(2 * n - 5, 4), ring.span(1, 3)),
            ],
            "long/odd/A",
        )?;

        // branch (1, n) avoids {1,2,3}: every odd chord is pushed to
        // {i+n-4..i+n-2}, and cycle E becomes rainbow
        let mut hyp = self.store.clone();
        hyp.restrict(ring.edge(1, n), &ring.span(1, 3).complement())?;
        self.forced(
            &mut hyp,
            &a1,
            ring.edge(2 * n - 5, 4),
            ring.span(1, 3),
            "long/odd/branch/start".into(),
        )?;
        let mut j = 2 * n - 5;
        for _ in 0..m / 2 - 1 {
            let r = j - step;
            self.perimeter(&mut hyp, r, "long/odd/branch")?;
            self.forced(
                &mut hyp,
                &b.rotate(r),
                ring.edge(r, r + n - 1),
                ring.span(r + n - 4, r + n - 2),
                format!("long/odd/branch/closure/{}", ring.vertex(r)),
            )?;
            j = r;
        }
        let e = self.walk(
            0,
            &steps(&[
                (n - 1, 1),
                (1, 1),
                (n - 1, 1),
                (-1, n / 2 + 2),
                (n - 1, 1),
                (1, n / 2 - 6),
            ]),
        )?;
        let mut listed = vec![
            ring.span(0, 2),
            ring.span(n - 1, n - 1),
            ring.span(n, n + 2),
        ];
        listed.extend((0..n / 2 + 2).map(|t| ColorSet::singleton(m as u32, 2 * n - 2 - t)));
        listed.push(ring.span(5 * n / 2 - 7, 5 * n / 2 - 5));
        listed.extend((5 * n / 2 - 4..3 * n - 10).map(|c| ColorSet::singleton(m as u32, c)));
        match hyp.forced_rainbow(&e) {
            Ok(cert) => {
                let got: Vec<ColorSet> = cert.edge_sets.into_iter().map(|(_, s)| s).collect();
                if got != listed {
                    return Err(Self::fail(
                        "long/odd/E",
                        &format!("{listed:?}"),
                        format!("{got:?}"),
                    ));
                }
            }
            Err(pair) => {
                return Err(Self::fail(
                    "long/odd/E",
                    "forced rainbow",
                    format!("{pair:?}"),
                ));
            }
        }

        // branch refuted
        self.store.restrict(ring.edge(1, n), &ring.span(1, 3))?;
        let mut store = self.store.clone();
        self.closure(&mut store, &b, 1, step, m / 2 - 1, family, "long/odd")?;
        self.store = store;
        self.verify_family(family, "long")?;
        self.families.push(family);
        Ok(())
    }

    /// For every `i`, bound chord `(i, i+len)` by each cycle (rotated by `i`,
    /// target is the first edge), check the closed forms, intersect, then
    /// install the family. All bounds use the store as it stood on entry.
    fn family_stage(
        &mut self,
        id: &str,
        family: ChordFamily,
        cycles: &[(&str, Vec<i64>, ColorSet)],
        first_two: Option<ColorSet>,
    ) -> Result<()> {
        let snapshot = self.store.clone();
        let walks: Vec<Walk> = cycles
            .iter()
            .map(|(_, st, _)| self.walk(0, st))
            .collect::<Result<_>>()?;
        let mut installs = Vec::with_capacity(self.m() as usize);
        for i in 0..self.m() {
            let target = family.edge(self.ring, i);
            let mut bounds = Vec::with_capacity(cycles.len());
            for ((label, _, expected), walk) in cycles.iter().zip(&walks) {
                let d = snapshot.propagate(&walk.rotate(i), 0)?;
                self.check(
                    format!("{id}/{label}/{i}"),
                    target,
                    expected.rotate(i),
                    d.bound.clone(),
                )?;
                bounds.push(d.bound);
            }
            if let Some(ab) = &first_two {
                self.check(
                    format!("{id}/AB/{i}"),
                    target,
                    ab.rotate(i),
                    bounds[0].intersection(&bounds[1]),
                )?;
            }
            let all = bounds
                .iter()
                .skip(1)
                .fold(bounds[0].clone(), |acc, b| acc.intersection(b));
            self.check(
                format!("{id}/final/{i}"),
                target,
                family.colors(self.ring, i),
                all.clone(),
            )?;
            installs.push((target, all));
        }
        let earlier = self
            .families
            .iter()
            .copied()
            .find(|f| f.length == family.length);
        for (edge, set) in installs {
            if self.store.restrict(edge, &set).is_err() {
                if let Some(earlier) = earlier {
                    if !self.collisions.iter().any(|c| c.later == family) {
                        self.collisions.push(FamilyCollision {
                            length: family.length,
                            earlier,
                            later: family,
                        });
                    }
                    self.store.set(edge, set)?;
                } else {
                    return Err(GadgetError::Contradiction { edge });
                }
            }
        }
        if let Some(c) = self.collisions.iter().find(|c| c.later == family) {
            self.notes.push(format!(
                "chord length {} carries two families with disjoint sets (offset {} and offset {}); the store keeps the later one",
                c.length, c.earlier.offset, c.later.offset
            ));
        }
        self.families.push(family);
        self.verify_family(family, id)
    }

    fn finish(self) -> Result<LemmaChain> {
        Ok(LemmaChain {
            case: self.case,
            n: self.n as u32,
            ring: self.ring,
            stage: self.stage,
            store: self.store,
            families: self.families,
            steps: self.steps,
            collisions: self.collisions,
            notes: self.notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_families(chain: &LemmaChain) {
        for f in chain.effective_families() {
            for i in 0..chain.ring.modulus() as i64 {
                let set = chain.store.allowed(f.edge(chain.ring, i));
                assert_eq!(
                    set,
                    f.colors(chain.ring, i),
                    "n={} len={} i={i}",
                    chain.n,
                    f.length
                );
                assert_eq!(set.len(), f.width);
            }
        }
    }

    #[test]
    fn even_sixteen() {
        let chain = lemma_even_chain(16).unwrap();
        let ring = chain.ring;
        assert_eq!(ring.modulus(), 40);
        assert_eq!(chain.store.allowed(ring.edge(0, 15)), ring.span(0, 1));
        for i in 0..40 {
            assert_eq!(
                chain.store.allowed(ring.edge(i, i + 15)),
                ring.span(i, i + 1)
            );
            assert_eq!(
                chain.store.allowed(ring.edge(i, i + 11)),
                ring.span(i + 11, i + 12)
            );
            assert_eq!(
                chain.store.allowed(ring.edge(i, i + 7)),
                ring.span(i, i + 1)
            );
        }
        assert!(chain.collisions.is_empty());
        // nothing else is constrained
        assert_eq!(chain.store.constrained_chords().count(), 3 * 40);
    }

    #[test]
    fn even_range() {
        for n in (12..=60).step_by(2) {
            let chain = lemma_even_chain(n).unwrap();
            assert_eq!(chain.families.len(), 3);
            assert_families(&chain);
        }
    }

    #[test]
    fn even_twelve_collides() {
        let chain = lemma_even_chain(12).unwrap();
        assert_eq!(chain.collisions.len(), 1);
        assert_eq!(chain.collisions[0].length, 7);
        let ring = chain.ring;
        for i in 0..28 {
            assert_eq!(
                chain.store.allowed(ring.edge(i, i + 7)),
                ring.span(i, i + 1)
            );
        }
    }

    #[test]
    fn div4_range() {
        for n in (20..=100).step_by(4) {
            let chain = lemma_div4_chain(n).unwrap();
            assert_families(&chain);
            assert_eq!(chain.collisions.len(), usize::from(n == 20));
        }
    }

    #[test]
    fn div4_early_stages_small_n() {
        for n in [12, 16] {
            let chain = div4_chain(n, ChainStage::OffsetChords).unwrap();
            assert_eq!(chain.families.len(), 2);
            assert_families(&chain);
            assert!(matches!(
                div4_chain(n, ChainStage::ShortChords),
                Err(GadgetError::ChainPrecondition(_))
            ));
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            lemma_even_chain(10),
            Err(GadgetError::ChainPrecondition(_))
        ));
        assert!(matches!(
            lemma_even_chain(13),
            Err(GadgetError::ChainPrecondition(_))
        ));
        assert!(matches!(
            lemma_div4_chain(18),
            Err(GadgetError::ChainPrecondition(_))
        ));
        assert!(matches!(
            lemma_div4_chain(16),
            Err(GadgetError::ChainPrecondition(_))
        ));
    }

    #[test]
    fn offset_note_is_reported() {
        let chain = lemma_div4_chain(24).unwrap();
        assert!(chain.notes.iter().any(|s| s.contains("(0, 17)")));
    }
}
