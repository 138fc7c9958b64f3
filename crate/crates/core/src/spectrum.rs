//! The spectrum monoid `(spec(G), n∘m = n + m - 2)` and a rule engine that
//! derives members guaranteed by a single known member.
//!
//! Rules, in firing order:
//!
//! * compose: `a, b ⇒ a∘b`
//! * even triple: even `a >= 4 ⇒ 3a - 8`
//! * doubly even triple: `a ≡ 0 (mod 4)`, `a != 16 ⇒ 3a - 10`
//! * odd facts: odd `a = 2k + 1 >= 3 ⇒ 3a - 6`, `k(2k + 1)`, and every
//!   `m >= 2a² - 13a + 23`
//! * tabulated: `8 ⇒ 16`, `10 ⇒ 22`, `12 ⇒ 26` (imported computations,
//!   flagged external)

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::semigroup::gcd;

pub fn monoid_op(a: u64, b: u64) -> u64 {
    debug_assert!(a >= 2 && b >= 2);
    a + b - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Identity,
    Seed,
    Compose,
    EvenTriple,
    DoublyEvenTriple,
    OddTriple,
    OddTriangular,
    OddTail,
    Tabulated,
}

impl Rule {
    /// Whether the rule is an imported computational fact rather than a
    /// consequence of the monoid structure or the proved theorems.
    pub fn is_external(self) -> bool {
        matches!(self, Rule::Tabulated)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub member: u64,
    pub rule: Rule,
    pub premises: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFacts {
    pub seed_n: u64,
    pub limit: u64,
    pub derived: BTreeSet<u64>,
    pub trace: Vec<Derivation>,
}

/// Which rules the engine may fire. [`RuleSet::COMPOSE_ONLY`] restricts the closure to
/// the monoid operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet {
    pub theorems: bool,
    pub odd_facts: bool,
    pub tabulated: bool,
}

impl RuleSet {
    pub const ALL: RuleSet = RuleSet {
        theorems: true,
        odd_facts: true,
        tabulated: true,
    };
    pub const COMPOSE_ONLY: RuleSet = RuleSet {
        theorems: false,
        odd_facts: false,
        tabulated: false,
    };
}

const TABULATED: [(u64, u64); 3] = [(8, 16), (10, 22), (12, 26)];

/// Closure of `{2, n}` under all rules, truncated at `limit`.
pub fn implied_members(n: u64, limit: u64) -> SpecFacts {
    implied_members_with(n, limit, RuleSet::ALL)
}

pub fn implied_members_with(n: u64, limit: u64, rules: RuleSet) -> SpecFacts {
    assert!(n >= 2 && limit >= n, "need n >= 2 and limit >= n");
    Engine::new(n, limit, rules).run()
}

struct Engine {
    limit: u64,
    rules: RuleSet,
    derived: Vec<bool>,
    ruled: Vec<bool>,
    trace: Vec<Derivation>,
    seed: u64,
}

impl Engine {
    fn new(seed: u64, limit: u64, rules: RuleSet) -> Self {
        let len = limit as usize + 1;
        Self {
            limit,
            rules,
            derived: vec![false; len],
            ruled: vec![false; len],
            trace: Vec::new(),
            seed,
        }
    }

    fn add(&mut self, member: u64, rule: Rule, premises: Vec<u64>) -> bool {
        if member < 2 || member > self.limit || self.derived[member as usize] {
            return false;
        }
        self.derived[member as usize] = true;
        self.trace.push(Derivation {
            member,
            rule,
            premises,
        });
        true
    }

    /// Close under composition with `g`: ascending sweep, so chains
    /// `g∘g∘…∘b` are picked up within one pass (unbounded knapsack).
    fn compose_with(&mut self, g: u64) {
        let shift = g - 2;
        for x in (2 + shift)..=self.limit {
            let b = x - shift;
            if !self.derived[x as usize] && self.derived[b as usize] && b != 2 {
                self.add(x, Rule::Compose, vec![g, b]);
            }
        }
    }

    fn run(mut self) -> SpecFacts {
        self.add(2, Rule::Identity, vec![]);
        self.add(self.seed, Rule::Seed, vec![]);
        let mut pending = if self.seed > 2 {
            vec![self.seed]
        } else {
            vec![]
        };
        // Members of the odd-fact tail never need to act as generators:
        // composing anything with them stays inside the tail.
        loop {
            for g in pending.drain(..) {
                self.compose_with(g);
            }
            for a in 3..=self.limit {
                if !self.derived[a as usize] || self.ruled[a as usize] {
                    continue;
                }
                self.ruled[a as usize] = true;
                for (member, rule) in self.rule_outputs(a) {
                    if self.add(member, rule, vec![a]) {
                        pending.push(member);
                    }
                }
                if self.rules.odd_facts && a % 2 == 1 {
                    for m in odd_tail_start(a).max(2)..=self.limit {
                        self.add(m, Rule::OddTail, vec![a]);
                    }
                }
            }
            if pending.is_empty() {
                break;
            }
        }

        let derived = (0..=self.limit)
            .filter(|&x| self.derived[x as usize])
            .collect();
        SpecFacts {
            seed_n: self.seed,
            limit: self.limit,
            derived,
            trace: self.trace,
        }
    }

    fn rule_outputs(&self, a: u64) -> Vec<(u64, Rule)> {
        let mut out = Vec::new();
        if self.rules.theorems {
            if a.is_multiple_of(2) && a >= 4 {
                out.push((3 * a - 8, Rule::EvenTriple));
            }
            if a.is_multiple_of(4) && a != 16 {
                out.push((3 * a - 10, Rule::DoublyEvenTriple));
            }
        }
        if self.rules.odd_facts && a % 2 == 1 {
            let k = (a - 1) / 2;
            out.push((3 * a - 6, Rule::OddTriple));
            out.push((k * (2 * k + 1), Rule::OddTriangular));
        }
        if self.rules.tabulated {
            out.extend(
                TABULATED
                    .iter()
                    .filter(|&&(from, _)| from == a)
                    .map(|&(_, to)| (to, Rule::Tabulated)),
            );
        }
        out
    }
}

/// `2a² - 13a + 23`, clamped at zero.
fn odd_tail_start(a: u64) -> u64 {
    (2 * a * a + 23).saturating_sub(13 * a)
}

/// Re-derive the member set from a trace, checking that every step is an
/// instance of its rule applied to already-derived premises.
pub fn replay_trace(facts: &SpecFacts) -> Result<BTreeSet<u64>, String> {
    let mut seen = BTreeSet::new();
    for (i, d) in facts.trace.iter().enumerate() {
        if let Some(p) = d.premises.iter().find(|p| !seen.contains(*p)) {
            return Err(format!("step {i}: premise {p} not yet derived"));
        }
        let ok = match (d.rule, d.premises.as_slice()) {
            (Rule::Identity, []) => d.member == 2,
            (Rule::Seed, []) => d.member == facts.seed_n,
            (Rule::Compose, &[a, b]) => d.member == monoid_op(a, b),
            (Rule::EvenTriple, &[a]) => a % 2 == 0 && a >= 4 && d.member == 3 * a - 8,
            (Rule::DoublyEvenTriple, &[a]) => a % 4 == 0 && a != 16 && d.member == 3 * a - 10,
            (Rule::OddTriple, &[a]) => a % 2 == 1 && d.member == 3 * a - 6,
            (Rule::OddTriangular, &[a]) => {
                let k = (a - 1) / 2;
                a % 2 == 1 && d.member == k * (2 * k + 1)
            }
            (Rule::OddTail, &[a]) => a % 2 == 1 && d.member >= odd_tail_start(a),
            (Rule::Tabulated, &[a]) => TABULATED.contains(&(a, d.member)),
            _ => false,
        };
        if !ok {
            return Err(format!("step {i}: {d:?} is not a valid rule instance"));
        }
        if !seen.insert(d.member) {
            return Err(format!("step {i}: {} derived twice", d.member));
        }
    }
    Ok(seen)
}

/// `p(n)`: 1 for odd `n`, 2 for `n ≡ 0 (mod 4)`, 4 otherwise.
pub fn period_class(n: u64) -> u64 {
    match n % 4 {
        1 | 3 => 1,
        0 => 2,
        _ => 4,
    }
}

/// `(p(n), N)` where `spec(G)` is guaranteed to contain `{N + k p(n)}`.
pub fn main_theorem_bound(n: u64) -> (u64, u64) {
    assert!(n >= 3, "main theorem bound needs n >= 3");
    let n = n as i64;
    let (p, bound) = match n % 4 {
        1 | 3 => (1, 2 * n * n - 13 * n + 23),
        2 => {
            assert_eq!(9 * n * n % 4, 0);
            (4, 9 * n * n / 4 - 18 * n + 37)
        }
        _ => {
            assert_eq!(9 * n * n % 2, 0);
            (2, 9 * n * n / 2 - 39 * n + 86)
        }
    };
    (p, bound as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionCheck {
    pub holds: bool,
    pub counterexample: Option<u64>,
}

/// Does `implied_members(n, limit)` contain every `N + k p <= limit`?
pub fn verify_progression(n: u64, p: u64, start: u64, limit: u64) -> ProgressionCheck {
    assert!(limit >= start && p >= 1);
    let facts = implied_members(n, limit.max(n));
    let missing = (start..=limit)
        .step_by(p as usize)
        .find(|m| !facts.derived.contains(m));
    ProgressionCheck {
        holds: missing.is_none(),
        counterexample: missing,
    }
}

/// gcd of the pairwise differences of `members`.
pub fn difference_gcd(members: impl IntoIterator<Item = u64>) -> u64 {
    let mut it = members.into_iter();
    let Some(first) = it.next() else { return 0 };
    it.fold(0, |acc, m| gcd(acc, m.abs_diff(first)))
}
