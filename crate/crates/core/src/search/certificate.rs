use serde::{Deserialize, Serialize};

use super::family::{ConstraintFamily, FamilyId};
use super::multiset::StepMultiset;
use crate::gadget::{Walk, WitnessPair};

/// Audit of a candidate witness cycle. Valid iff every flag is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleCertificate {
    pub modulus: u32,
    pub n: u32,
    pub constraint_family: FamilyId,
    pub steps: Vec<i64>,
    /// Positions before each step, starting at 0.
    pub vertices: Vec<u32>,
    pub modulus_ok: bool,
    pub multiset_ok: bool,
    pub closed_ok: bool,
    pub distinct_ok: bool,
    pub forced_rainbow_ok: bool,
    pub witness: Option<WitnessPair>,
}

impl CycleCertificate {
    pub fn is_valid(&self) -> bool {
        self.modulus_ok
            && self.multiset_ok
            && self.closed_ok
            && self.distinct_ok
            && self.forced_rainbow_ok
    }
}

/// Check that `steps` from vertex 0 form an `n`-cycle on the ring of
/// `modulus` vertices, use exactly the family's step multiset, and have
/// pairwise disjoint allowed colors.
pub fn verify_cycle(
    modulus: u32,
    steps: &[i64],
    n: u32,
    family: &ConstraintFamily,
) -> CycleCertificate {
    let m = modulus.max(1) as i64;
    let vertices: Vec<u32> = steps
        .iter()
        .scan(0i64, |pos, &s| {
            let v = pos.rem_euclid(m) as u32;
            *pos += s;
            Some(v)
        })
        .collect();
    let closed_ok = steps.iter().sum::<i64>().rem_euclid(m) == 0;
    let mut sorted = vertices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let distinct_ok = sorted.len() == vertices.len();
    let modulus_ok = modulus == family.modulus();
    let multiset_ok = steps.len() == n as usize
        && family
            .prescribed_multiset()
            .is_none_or(|ms| ms == StepMultiset::from_steps(steps));

    let (forced_rainbow_ok, witness) = if modulus_ok && closed_ok && distinct_ok && steps.len() >= 3
    {
        let walk =
            Walk::from_steps(family.ring(), 0, steps).expect("closed walk with distinct vertices");
        match family.store_for(&walk).forced_rainbow(&walk) {
            Ok(_) => (true, None),
            Err(pair) => (false, Some(pair)),
        }
    } else {
        (false, None)
    };

    CycleCertificate {
        modulus,
        n,
        constraint_family: family.id().clone(),
        steps: steps.to_vec(),
        vertices,
        modulus_ok,
        multiset_ok,
        closed_ok,
        distinct_ok,
        forced_rainbow_ok,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWELVE: [i64; 12] = [11, 1, 1, 1, 1, 1, 7, 7, 7, 11, 7, 1];

    #[test]
    fn twelve_cycle_is_valid() {
        let family = ConstraintFamily::even_chain(12).unwrap();
        let cert = verify_cycle(28, &TWELVE, 12, &family);
        assert!(cert.is_valid(), "{cert:?}");
        assert_eq!(
            cert.vertices,
            vec![0, 11, 12, 13, 14, 15, 16, 23, 2, 9, 20, 27]
        );
    }

    #[test]
    fn failures_are_recorded() {
        let family = ConstraintFamily::even_chain(12).unwrap();
        let mut steps = TWELVE.to_vec();
        steps.swap(0, 6);
        let cert = verify_cycle(28, &steps, 12, &family);
        assert!(cert.multiset_ok && cert.closed_ok);
        let mut bad = TWELVE.to_vec();
        bad[1] = 2;
        let cert = verify_cycle(28, &bad, 12, &family);
        assert!(!cert.multiset_ok && !cert.closed_ok && !cert.is_valid());
        let cert = verify_cycle(30, &TWELVE, 12, &family);
        assert!(!cert.modulus_ok && !cert.forced_rainbow_ok);
    }

    #[test]
    fn overlap_gives_witness() {
        let rule = |offset| crate::gadget::ChordFamily {
            length: 7,
            offset,
            width: 2,
        };
        let steps = [7, 7, 1, 1, 1, 1, 1, 1];
        let family = ConstraintFamily::custom(20, vec![rule(0)]);
        assert!(verify_cycle(20, &steps, 8, &family).is_valid());
        // (7, 14) now allows {14, 15}, which meets perimeter edge (14, 15)
        let family = ConstraintFamily::custom(20, vec![rule(7)]);
        let cert = verify_cycle(20, &steps, 8, &family);
        assert!(cert.closed_ok && cert.distinct_ok && !cert.forced_rainbow_ok);
        assert_eq!(
            cert.witness,
            Some(WitnessPair {
                first: 1,
                second: 2
            })
        );
    }
}
