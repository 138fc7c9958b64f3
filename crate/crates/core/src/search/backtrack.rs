//! Depth-first search for witness cycles.
//!
//! The walk starts at vertex 0 and only moves forward. A child is pruned when
//! it revisits a vertex, returns to 0 early, or has an allowed color already
//! claimed by an edge on the path. Children are tried in the given length
//! order, so the first solution is deterministic.

use serde::{Deserialize, Serialize};

use super::family::ConstraintFamily;
use super::multiset::StepMultiset;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Step lengths in the order children are tried. Lengths missing from
    /// the multiset are ignored.
    pub ordering: Vec<i64>,
    /// Ignore the budget and run to completion.
    pub exhaustive: bool,
    pub node_budget: u64,
}

impl SearchOptions {
    pub fn with_ordering(ordering: Vec<i64>) -> Self {
        Self {
            ordering,
            exhaustive: false,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "steps")]
pub enum SearchOutcome {
    Found(Vec<i64>),
    /// The whole tree was explored without a solution.
    None,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

struct Search<'a> {
    m: usize,
    lengths: Vec<i64>,
    counts: Vec<u32>,
    /// `colors[j][v]`: colors of the step of `lengths[j]` leaving `v`.
    colors: Vec<Vec<Vec<u32>>>,
    visited: Vec<bool>,
    used: Vec<bool>,
    path: Vec<i64>,
    nodes: u64,
    budget: Option<u64>,
    progress: Option<&'a mut dyn FnMut(u64)>,
}

enum Step {
    Found,
    Exhausted,
    Continue,
}

impl Search<'_> {
    fn dfs(&mut self, pos: usize, remaining: u32) -> Step {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Step::Exhausted;
        }
        if self.nodes.is_multiple_of(1 << 24) {
            if let Some(report) = self.progress.as_mut() {
                report(self.nodes);
            }
        }
        if remaining == 0 {
            return if pos == 0 {
                Step::Found
            } else {
                Step::Continue
            };
        }
        for j in 0..self.lengths.len() {
            if self.counts[j] == 0 {
                continue;
            }
            let next = (pos as i64 + self.lengths[j]).rem_euclid(self.m as i64) as usize;
            if (next == 0) != (remaining == 1) || (next != 0 && self.visited[next]) {
                continue;
            }
            let colors = &self.colors[j][pos];
            if colors.iter().any(|&c| self.used[c as usize]) {
                continue;
            }
            for &c in colors {
                self.used[c as usize] = true;
            }
            self.visited[next] = true;
            self.counts[j] -= 1;
            self.path.push(self.lengths[j]);
            let result = self.dfs(next, remaining - 1);
            if !matches!(result, Step::Continue) {
                return result;
            }
            self.path.pop();
            self.counts[j] += 1;
            self.visited[next] = false;
            for &c in &self.colors[j][pos] {
                self.used[c as usize] = false;
            }
        }
        Step::Continue
    }
}

/// Search for a cycle from vertex 0 using exactly the steps of `ms`, whose
/// edges have pairwise disjoint allowed colors under `family`.
pub fn backtrack_search(
    modulus: u32,
    ms: &StepMultiset,
    family: &ConstraintFamily,
    options: &SearchOptions,
) -> SearchReport {
    backtrack_search_with_progress(modulus, ms, family, options, None)
}

/// As [`backtrack_search`], calling `progress` with the node count every
/// 2^24 nodes.
pub fn backtrack_search_with_progress(
    modulus: u32,
    ms: &StepMultiset,
    family: &ConstraintFamily,
    options: &SearchOptions,
    progress: Option<&mut dyn FnMut(u64)>,
) -> SearchReport {
    let m = modulus as usize;
    let mut lengths: Vec<i64> = Vec::new();
    for &len in options.ordering.iter().chain(ms.counts().keys()) {
        if ms.count(len) > 0 && !lengths.contains(&len) {
            lengths.push(len);
        }
    }
    let counts = lengths.iter().map(|&l| ms.count(l)).collect();
    let ring_matches = family.modulus() == modulus;
    let colors = lengths
        .iter()
        .map(|&len| {
            (0..m as i64)
                .map(|v| {
                    if len.rem_euclid(m as i64) == 0 {
                        // a null step revisits its start and is never taken
                        Vec::new()
                    } else if ring_matches {
                        family.step_colors(v, len).iter().collect()
                    } else {
                        (0..modulus).collect()
                    }
                })
                .collect()
        })
        .collect();
    let mut visited = vec![false; m];
    visited[0] = true;
    let mut search = Search {
        m,
        lengths,
        counts,
        colors,
        visited,
        used: vec![false; m],
        path: Vec::with_capacity(ms.total() as usize),
        nodes: 0,
        budget: (!options.exhaustive).then_some(options.node_budget),
        progress,
    };
    let outcome = if ms.total() < 3 || ms.weighted_sum().rem_euclid(modulus as i64) != 0 {
        SearchOutcome::None
    } else {
        match search.dfs(0, ms.total()) {
            Step::Found => SearchOutcome::Found(search.path.clone()),
            Step::Exhausted => SearchOutcome::BudgetExhausted,
            Step::Continue => SearchOutcome::None,
        }
    };
    SearchReport {
        outcome,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{div4_multiset, even_multiset, verify_cycle};

    #[test]
    fn finds_twelve_cycle() {
        let family = ConstraintFamily::even_chain(12).unwrap();
        let ms = even_multiset(12).unwrap();
        let report = backtrack_search(
            28,
            &ms,
            &family,
            &SearchOptions::with_ordering(vec![1, 7, 11]),
        );
        let SearchOutcome::Found(steps) = report.outcome else {
            panic!("{report:?}")
        };
        assert!(verify_cycle(28, &steps, 12, &family).is_valid());
    }

    #[test]
    fn k_five() {
        let family = ConstraintFamily::div4_chain(20).unwrap();
        let ms = div4_multiset(5).unwrap();
        let report = backtrack_search(
            50,
            &ms,
            &family,
            &SearchOptions::with_ordering(vec![1, 13, 19]),
        );
        let SearchOutcome::Found(steps) = report.outcome else {
            panic!("{report:?}")
        };
        assert!(verify_cycle(50, &steps, 20, &family).is_valid());
    }

    #[test]
    fn budget_is_reported() {
        let family = ConstraintFamily::div4_chain(16).unwrap();
        let ms = div4_multiset(4).unwrap();
        let options = SearchOptions {
            ordering: vec![1, 13, 15],
            exhaustive: false,
            node_budget: 10,
        };
        let report = backtrack_search(38, &ms, &family, &options);
        assert_eq!(report.outcome, SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn sixteen_has_no_witness() {
        let family = ConstraintFamily::div4_chain(16).unwrap();
        let ms = div4_multiset(4).unwrap();
        let options = SearchOptions {
            ordering: vec![1, 13, 15],
            exhaustive: true,
            node_budget: 0,
        };
        assert_eq!(
            backtrack_search(38, &ms, &family, &options).outcome,
            SearchOutcome::None
        );
    }
}
