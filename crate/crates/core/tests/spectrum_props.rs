use proptest::prelude::*;
use rainbow_core::semigroup::NumericalSemigroup;
use rainbow_core::spectrum::{
    difference_gcd, implied_members, implied_members_with, main_theorem_bound, period_class,
    replay_trace, verify_progression, RuleSet,
};

proptest! {
    #[test]
    fn composition_is_shifted_single_generator(n in 3u64..120, extra in 0u64..2000) {
        let limit = n + extra;
        let facts = implied_members_with(n, limit, RuleSet::COMPOSE_ONLY);
        let oracle = NumericalSemigroup::monoid(&[n - 2]).unwrap();
        let expected: Vec<u64> = oracle.members_up_to(limit - 2).into_iter().map(|x| x + 2).collect();
        prop_assert_eq!(facts.derived.into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn trace_replays(n in 3u64..80, extra in 0u64..3000) {
        let facts = implied_members(n, n + extra);
        prop_assert_eq!(replay_trace(&facts).unwrap(), facts.derived);
    }
}

#[test]
fn progressions_reach_the_bound() {
    for n in 3..=100 {
        let (p, bound) = main_theorem_bound(n);
        assert_eq!(p, period_class(n));
        let check = verify_progression(n, p, bound, 4 * bound);
        assert!(check.holds, "n={n}: {:?}", check.counterexample);
    }
}

#[test]
fn no_finer_period_than_promised() {
    for n in 3..=100 {
        let (p, bound) = main_theorem_bound(n);
        let facts = implied_members(n, (2 * bound).max(10 * n));
        let g = difference_gcd(facts.derived.iter().copied().filter(|&m| m != 2));
        assert_eq!(p % g, 0, "n={n}: gcd {g} does not divide {p}");
        if n % 2 == 0 {
            assert_eq!(g, p, "n={n}");
        }
    }
}
