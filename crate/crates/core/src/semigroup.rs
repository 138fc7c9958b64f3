//! Finitely generated numerical semigroups and monoids.
//!
//! A [`NumericalSemigroup`] is the set of all finite sums of its generators.
//! When `includes_zero` is set the empty sum counts too, which is how the
//! shifted spectrum `spec(G) - 2` is modelled.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    /// No generators means the trivial monoid `{0}`, whose period is undefined.
    #[error("a semigroup needs at least one generator (the trivial monoid {{0}} has no period)")]
    UndefinedPeriod,
    #[error("generator {0} is not a positive integer")]
    NonPositiveGenerator(u64),
    #[error("step {step} is not a multiple of the period {period}; no such progression exists")]
    NoSuchProgression { step: u64, period: u64 },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SemigroupError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    includes_zero: bool,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64], includes_zero: bool) -> Result<Self> {
        if generators.is_empty() {
            return Err(SemigroupError::UndefinedPeriod);
        }
        if let Some(&g) = generators.iter().find(|&&g| g == 0) {
            return Err(SemigroupError::NonPositiveGenerator(g));
        }
        let mut generators = generators.to_vec();
        generators.sort_unstable();
        generators.dedup();
        Ok(Self {
            generators,
            includes_zero,
        })
    }

    /// The semigroup generated by `generators` (no empty sum).
    pub fn semigroup(generators: &[u64]) -> Result<Self> {
        Self::new(generators, false)
    }

    /// The monoid generated by `generators` (contains 0).
    pub fn monoid(generators: &[u64]) -> Result<Self> {
        Self::new(generators, true)
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn includes_zero(&self) -> bool {
        self.includes_zero
    }

    /// Smallest positive member.
    pub fn min_positive(&self) -> u64 {
        self.generators[0]
    }

    /// Membership table for `0..=bound`.
    pub fn membership(&self, bound: u64) -> Vec<bool> {
        let len = bound as usize + 1;
        // reach[x]: x is a sum of zero or more generators
        let mut reach = vec![false; len];
        reach[0] = true;
        for x in 1..len {
            reach[x] = self
                .generators
                .iter()
                .any(|&g| (g as usize) <= x && reach[x - g as usize]);
        }
        reach[0] = self.includes_zero;
        reach
    }

    pub fn contains(&self, x: u64) -> bool {
        self.membership(x)[x as usize]
    }

    /// All members `x <= bound`, ascending.
    pub fn members_up_to(&self, bound: u64) -> BTreeSet<u64> {
        self.membership(bound)
            .into_iter()
            .enumerate()
            .filter_map(|(x, m)| m.then_some(x as u64))
            .collect()
    }

    /// The period: gcd of all differences of members, which is the gcd of
    /// the generators (every generator `g` is the difference `2g - g`).
    pub fn period(&self) -> u64 {
        self.generators.iter().fold(0, |acc, &g| gcd(acc, g))
    }

    /// Least `N >= 1` such that `{N + k*step : k >= 0}` lies in the semigroup.
    ///
    /// Every multiple of the period `g` beyond `g * (a' - 1)(b' - 1)` is a
    /// member (Schur's bound on the reduced generators `a' <= b'`), so the
    /// answer is at most that. A progression is certified by checking
    /// `min_positive` consecutive terms: adding the smallest generator to a
    /// member stays inside, and the residues of `N + k*step` modulo it repeat
    /// within that many terms.
    pub fn progression_conductor(&self, step: u64) -> Result<u64> {
        let period = self.period();
        if step == 0 || !step.is_multiple_of(period) {
            return Err(SemigroupError::NoSuchProgression { step, period });
        }
        let a = self.min_positive();
        let reduced_min = a / period;
        let reduced_max = self.generators[self.generators.len() - 1] / period;
        let start_bound = period * ((reduced_min - 1) * (reduced_max - 1)).max(1);
        let window = start_bound + a * step;
        let member = self.membership(window);
        let in_progression = |start: u64| (0..a).all(|k| member[(start + k * step) as usize]);
        (1..=start_bound)
            .find(|&start| in_progression(start))
            .ok_or_else(|| {
                SemigroupError::InvalidArgument(format!(
                    "no progression start found below {start_bound}"
                ))
            })
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest integer that is not a nonnegative combination of coprime `n`, `m`.
pub fn frobenius_pair(n: u64, m: u64) -> Result<u64> {
    if n < 2 || m < 2 {
        return Err(SemigroupError::InvalidArgument(format!(
            "generators must be at least 2, got ({n}, {m})"
        )));
    }
    if gcd(n, m) != 1 {
        return Err(SemigroupError::NotCoprime(n, m));
    }
    let frobenius = n * m - n - m;
    debug_assert!(frobenius < (n - 1) * (m - 1));
    Ok(frobenius)
}

/// Progression guaranteed by a semigroup containing `p*n` and `p*m` with
/// `n`, `m` coprime: the period divides `p`, and some `N <= p(n-1)(m-1)`
/// starts a step-`p` progression.
///
/// Returns `(p, p(n-1)(m-1))` after confirming the bound against the actual
/// conductor of the semigroup generated by `{p*n, p*m}`.
pub fn scaled_progression(p: u64, n: u64, m: u64) -> Result<(u64, u64)> {
    if p == 0 {
        return Err(SemigroupError::InvalidArgument("p must be positive".into()));
    }
    frobenius_pair(n, m)?;
    let bound = p * (n - 1) * (m - 1);
    let scaled = NumericalSemigroup::semigroup(&[p * n, p * m])?;
    let actual = scaled.progression_conductor(p)?;
    if actual > bound {
        return Err(SemigroupError::InvalidArgument(format!(
            "conductor {actual} exceeds the guaranteed bound {bound}"
        )));
    }
    Ok((p, bound))
}

/// Start of the progression `{n^2 + k(m - n)}` contained in any semigroup
/// holding both `n` and `m`.
pub fn prop_progression_start(n: u64, m: u64) -> Result<u64> {
    if n == 0 || m <= n {
        return Err(SemigroupError::InvalidArgument(format!(
            "need m > n >= 1, got n = {n}, m = {m}"
        )));
    }
    Ok(n * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: is `x` a nonnegative combination of `gens` with at least
    /// one summand?
    fn representable(x: u64, gens: &[u64]) -> bool {
        fn go(x: u64, gens: &[u64]) -> bool {
            if x == 0 {
                return true;
            }
            match gens.split_first() {
                None => false,
                Some((&g, rest)) => (0..=x / g).any(|c| go(x - c * g, rest)),
            }
        }
        x > 0 && go(x, gens)
    }

    #[test]
    fn members_small_examples() {
        let a = NumericalSemigroup::semigroup(&[3, 5]).unwrap();
        assert_eq!(
            a.members_up_to(8).into_iter().collect::<Vec<_>>(),
            [3, 5, 6, 8]
        );
        let m = NumericalSemigroup::monoid(&[5, 3]).unwrap();
        assert_eq!(
            m.members_up_to(8).into_iter().collect::<Vec<_>>(),
            [0, 3, 5, 6, 8]
        );
        let ones = NumericalSemigroup::semigroup(&[1]).unwrap();
        assert_eq!(
            ones.members_up_to(4).into_iter().collect::<Vec<_>>(),
            [1, 2, 3, 4]
        );
    }

    #[test]
    fn members_of_the_sixteen_case_generators() {
        let a = NumericalSemigroup::monoid(&[14, 38, 108]).unwrap();
        let positive: Vec<u64> = a
            .members_up_to(110)
            .into_iter()
            .filter(|&x| x > 0)
            .collect();
        let brute: Vec<u64> = (1..=110)
            .filter(|&x| representable(x, &[14, 38, 108]))
            .collect();
        assert_eq!(positive, brute);
        assert_eq!(
            positive,
            [14, 28, 38, 42, 52, 56, 66, 70, 76, 80, 84, 90, 94, 98, 104, 108]
        );
    }

    #[test]
    fn period_examples() {
        assert_eq!(
            NumericalSemigroup::monoid(&[14, 38, 108]).unwrap().period(),
            2
        );
        assert_eq!(NumericalSemigroup::monoid(&[7]).unwrap().period(), 7);
        assert_eq!(NumericalSemigroup::semigroup(&[3, 5]).unwrap().period(), 1);
        assert_eq!(
            NumericalSemigroup::new(&[], true),
            Err(SemigroupError::UndefinedPeriod)
        );
        assert!(matches!(
            NumericalSemigroup::semigroup(&[0, 3]),
            Err(SemigroupError::NonPositiveGenerator(0))
        ));
    }

    #[test]
    fn period_matches_brute_force_differences() {
        for gens in [&[14u64, 38, 108][..], &[3, 5], &[6, 10, 15], &[4, 6], &[9]] {
            let a = NumericalSemigroup::semigroup(gens).unwrap();
            let members: Vec<u64> = a.members_up_to(400).into_iter().collect();
            let g = members
                .iter()
                .flat_map(|&x| members.iter().filter(move |&&y| y > x).map(move |&y| y - x))
                .fold(0, gcd);
            assert_eq!(a.period(), g, "{gens:?}");
        }
    }

    #[test]
    fn conductor_examples() {
        let a = NumericalSemigroup::monoid(&[14, 38, 108]).unwrap();
        assert_eq!(a.progression_conductor(2), Ok(216));
        let ones = NumericalSemigroup::semigroup(&[1]).unwrap();
        assert_eq!(ones.progression_conductor(1), Ok(1));
        let a = NumericalSemigroup::semigroup(&[3, 5]).unwrap();
        assert_eq!(a.progression_conductor(1), Ok(8));
        let a = NumericalSemigroup::monoid(&[7]).unwrap();
        assert_eq!(a.progression_conductor(7), Ok(7));
        assert_eq!(a.progression_conductor(14), Ok(7));
    }

    #[test]
    fn conductor_rejects_step_off_period() {
        let a = NumericalSemigroup::monoid(&[14, 38, 108]).unwrap();
        assert_eq!(
            a.progression_conductor(3),
            Err(SemigroupError::NoSuchProgression { step: 3, period: 2 })
        );
        assert!(a.progression_conductor(0).is_err());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_pair(3, 5), Ok(7));
        assert_eq!(frobenius_pair(2, 3), Ok(1));
        assert_eq!(frobenius_pair(7, 19), Ok(107));
        assert_eq!(frobenius_pair(4, 6), Err(SemigroupError::NotCoprime(4, 6)));
        assert!(frobenius_pair(1, 5).is_err());
    }

    #[test]
    fn frobenius_matches_brute_force_gap() {
        for (n, m) in [(3u64, 5u64), (2, 3), (7, 19), (5, 9), (11, 13)] {
            let largest_gap = (1..n * m)
                .rev()
                .find(|&x| !representable(x, &[n, m]))
                .unwrap();
            assert_eq!(frobenius_pair(n, m), Ok(largest_gap));
        }
    }

    #[test]
    fn scaled_progression_examples() {
        assert_eq!(scaled_progression(4, 9, 8), Ok((4, 224)));
        assert_eq!(scaled_progression(1, 3, 5), Ok((1, 8)));
        assert_eq!(scaled_progression(2, 7, 19), Ok((2, 216)));
        let pair = NumericalSemigroup::semigroup(&[14, 38]).unwrap();
        assert_eq!(pair.progression_conductor(2), Ok(216));
        assert_eq!(
            NumericalSemigroup::semigroup(&[3, 5])
                .unwrap()
                .progression_conductor(1),
            Ok(8)
        );
        assert_eq!(
            scaled_progression(2, 4, 6),
            Err(SemigroupError::NotCoprime(4, 6))
        );
    }

    #[test]
    fn progression_start_examples() {
        for (n, m) in [(3u64, 5u64), (1, 2), (4, 6)] {
            let start = prop_progression_start(n, m).unwrap();
            assert_eq!(start, n * n);
            let a = NumericalSemigroup::semigroup(&[n, m]).unwrap();
            let member = a.membership(start + 50 * (m - n));
            for k in 0..=50 {
                assert!(member[(start + k * (m - n)) as usize], "n={n} m={m} k={k}");
            }
        }
        assert!(prop_progression_start(5, 5).is_err());
    }
}
