//! Deterministic witness constructions.
//!
//! Even case: two revolutions of `M = 3n - 8` using steps `n-1`, 7 and 1.
//! Doubly-even case: four revolutions of `M = 3n - 10` using `n-1`, 13 and 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::verify_cycle;
use super::family::ConstraintFamily;
use super::{Result, SearchError};
use crate::gadget::ChainCase;

/// The `k` in `5..=34` for which the doubly-even construction goes through.
pub const X_SET: [u32; 10] = [11, 20, 23, 24, 26, 27, 29, 30, 32, 33];

/// Inequality name to whether it holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InequalityReport(pub BTreeMap<String, bool>);

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.0.values().all(|&b| b)
    }

    pub fn failed(&self) -> Vec<String> {
        self.0
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(name, _)| name.clone())
            .collect()
    }

    fn insert(&mut self, name: &str, holds: bool) {
        self.0.insert(name.to_string(), holds);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub case: ChainCase,
    pub n: u32,
    pub k: Option<u32>,
    pub modulus: u32,
    pub d: Option<i64>,
    pub z: Option<i64>,
    pub y: Option<i64>,
    pub u: Option<i64>,
    pub r: Option<i64>,
    pub d1: Option<i64>,
    pub d2: Option<i64>,
    /// Even case: where the first run of sevens starts and ends. Doubly-even
    /// case: `x1, x2, x3` (the ends of the round-opening long edges) and `y`.
    pub round_positions: Vec<i64>,
    pub inequality_report: InequalityReport,
}

/// Parameters of the doubly-even construction for `n = 4k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Div4Parameters {
    pub k: u32,
    pub n: u32,
    pub modulus: u32,
    pub r: i64,
    pub d1: i64,
    pub d2: i64,
    pub report: InequalityReport,
}

/// `r = ⌈(4k-5)/13⌉`, `d1 = 2(n-1) + 13r - M`, `d2` the least with
/// `d1 + d2 ≡ 3 (mod 13)`, and the four feasibility inequalities.
pub fn check_inequalities_div4(k: u32) -> Result<Div4Parameters> {
    if k < 3 {
        return Err(SearchError::Precondition(format!(
            "k must be at least 3, got {k}"
        )));
    }
    let k_ = k as i64;
    let n = 4 * k_;
    let m = 3 * n - 10;
    let r = (4 * k_ - 5 + 12) / 13;
    let d1 = 2 * (n - 1) + 13 * r - m;
    let d2 = (3 - d1).rem_euclid(13);
    let s = d1 + d2;
    let mut report = InequalityReport::default();
    report.insert("x1", 3 * r <= k_ - 2);
    report.insert("x2", 13 + 3 * d2 <= 3 * k_ - 6);
    report.insert("x3", 13 + 3 * s <= 4 * k_ - 4);
    report.insert(
        "x4",
        (n - 1) + 13 * r + 2 * s + 3 <= 3 * s + 13 + 2 * (n - 1),
    );
    Ok(Div4Parameters {
        k,
        n: n as u32,
        modulus: m as u32,
        r,
        d1,
        d2,
        report,
    })
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(SearchError::ConstructionInvariant(what()))
    }
}

fn certify(family: &ConstraintFamily, steps: &[i64], n: u32) -> Result<()> {
    let cert = verify_cycle(family.modulus(), steps, n, family);
    invariant(cert.is_valid(), || {
        format!("emitted walk does not verify: {cert:?}")
    })
}

const EVEN_TWELVE: [i64; 12] = [11, 1, 1, 1, 1, 1, 7, 7, 7, 11, 7, 1];

/// Two-revolution witness for even `n ≥ 12`.
///
/// Edge `n-1`, then `d` ones so that sevens from there land on 5, the sevens,
/// the remaining `n/2 - d` ones up to `z`, edge `n-1` to `y`, and the
/// remaining sevens back to 0. The second long edge lands 2 past the start of
/// a first-revolution seven, which is what keeps the colors apart. `n = 12`
/// is too small for this and uses a fixed cycle.
pub fn construct_even(n: u32) -> Result<(ConstructionTrace, Vec<i64>)> {
    if !n.is_multiple_of(2) || n < 12 {
        return Err(SearchError::Precondition(format!(
            "even construction needs an even n >= 12, got {n}"
        )));
    }
    let family = ConstraintFamily::even_chain(n)?;
    let mut trace = ConstructionTrace {
        case: ChainCase::Even,
        n,
        k: None,
        modulus: 3 * n - 8,
        d: None,
        z: None,
        y: None,
        u: None,
        r: None,
        d1: None,
        d2: None,
        round_positions: Vec::new(),
        inequality_report: InequalityReport::default(),
    };
    if n == 12 {
        certify(&family, &EVEN_TWELVE, n)?;
        return Ok((trace, EVEN_TWELVE.to_vec()));
    }

    let n = n as i64;
    let m = 3 * n - 8;
    let d = (0..7)
        .find(|d| (m - (n - 1 + d)).rem_euclid(7) == 2)
        .expect("some residue works");
    let z = 5 + n / 2 - d;
    let y = z + n - 1;
    trace.d = Some(d);
    trace.z = Some(z);
    trace.y = Some(y);
    let report = &mut trace.inequality_report;
    report.insert("Ineq1", (0..=6).contains(&d) && 6 <= n / 2);
    report.insert("Ineq2", z <= n - 3);
    report.insert("Ineq3", z > d);
    if !report.all_hold() {
        return Err(SearchError::InequalityFailed(report.failed()));
    }

    let first = n - 1 + d;
    let sevens_first = (m + 5 - first) / 7;
    let sevens_total = n / 2 - 2;
    let sevens_second = sevens_total - sevens_first;
    invariant(sevens_second >= 0, || {
        format!("first run uses {sevens_first} sevens of {sevens_total}")
    })?;
    let u = (0..sevens_first)
        .map(|t| first + 7 * t)
        .find(|&u| u < y && y <= u + 7)
        .ok_or_else(|| SearchError::ConstructionInvariant(format!("no seven straddles y = {y}")))?;
    trace.u = Some(u);
    trace.round_positions = vec![first, m + 5];
    invariant(y - u == 2, || format!("y - u = {} instead of 2", y - u))?;
    invariant(y + 7 * sevens_second == m, || {
        "second run of sevens does not close".into()
    })?;

    let mut steps = vec![n - 1];
    steps.extend(std::iter::repeat_n(1, d as usize));
    steps.extend(std::iter::repeat_n(7, sevens_first as usize));
    steps.extend(std::iter::repeat_n(1, (n / 2 - d) as usize));
    steps.push(n - 1);
    steps.extend(std::iter::repeat_n(7, sevens_second as usize));
    certify(&family, &steps, n as u32)?;
    Ok((trace, steps))
}

/// Four-revolution witness for `n = 4k`.
///
/// Three rounds of `[n-1, 13×r, n-1, 1×d2]`, each ending `d1 + d2` further
/// along, then 13 ones, two long edges, and the remaining 13s and ones.
pub fn construct_div4(k: u32) -> Result<(ConstructionTrace, Vec<i64>)> {
    let p = check_inequalities_div4(k)?;
    let mut trace = ConstructionTrace {
        case: ChainCase::Div4,
        n: p.n,
        k: Some(k),
        modulus: p.modulus,
        d: None,
        z: None,
        y: None,
        u: None,
        r: Some(p.r),
        d1: Some(p.d1),
        d2: Some(p.d2),
        round_positions: Vec::new(),
        inequality_report: p.report.clone(),
    };
    if !p.report.all_hold() {
        return Err(SearchError::InequalityFailed(p.report.failed()));
    }
    let family = ConstraintFamily::div4_chain(p.n)?;
    let (n, m, r, d2) = (p.n as i64, p.modulus as i64, p.r, p.d2);
    let s = p.d1 + p.d2;
    invariant((3..16).contains(&p.d1), || {
        format!("d1 = {} outside 3..16", p.d1)
    })?;

    let mut steps = Vec::new();
    let mut pos = 0i64;
    let push = |steps: &mut Vec<i64>, pos: &mut i64, len: i64, count: i64| {
        steps.extend(std::iter::repeat_n(len, count as usize));
        *pos += len * count;
    };
    let mut farthest_thirteen = 0;
    for round in 1..=3 {
        push(&mut steps, &mut pos, n - 1, 1);
        if round > 1 {
            let x = pos.rem_euclid(m);
            trace.round_positions.push(x);
            invariant(x == n - 1 + (round - 1) * s, || {
                format!("x{} = {x}", round - 1)
            })?;
            invariant((x - (n - 1)).rem_euclid(13) == 3 * (round - 1), || {
                format!("x{} - (n-1) is not {} mod 13", round - 1, 3 * (round - 1))
            })?;
        }
        push(&mut steps, &mut pos, 13, r);
        farthest_thirteen = pos - (round - 1) * m;
        push(&mut steps, &mut pos, n - 1, 1);
        push(&mut steps, &mut pos, 1, d2);
        invariant(pos == round * (m + s), || {
            format!("round {round} ends at {pos}")
        })?;
    }
    push(&mut steps, &mut pos, 1, 13);
    push(&mut steps, &mut pos, n - 1, 1);
    let x3 = pos.rem_euclid(m);
    trace.round_positions.push(x3);
    invariant((x3 - (n - 1)).rem_euclid(13) == 9, || {
        "x3 - (n-1) is not 9 mod 13".into()
    })?;
    push(&mut steps, &mut pos, n - 1, 1);
    // measured from the start of the fourth revolution
    let y = pos - 3 * m;
    trace.round_positions.push(y);
    trace.y = Some(y);
    invariant(y == 3 * s + 13 + 2 * (n - 1), || format!("y = {y}"))?;
    invariant(farthest_thirteen + 3 <= y, || {
        format!("last 13-edge ends at {farthest_thirteen}, too close to y = {y}")
    })?;
    let rest_thirteen = k as i64 - 2 - 3 * r;
    let rest_ones = 3 * k as i64 - 6 - 13 - 3 * d2;
    push(&mut steps, &mut pos, 13, rest_thirteen);
    push(&mut steps, &mut pos, 1, rest_ones);
    invariant(pos == 4 * m, || format!("walk ends at {pos}, not 4M"))?;
    certify(&family, &steps, p.n)?;
    Ok((trace, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_set() {
        let holds: Vec<u32> = (5..=34)
            .filter(|&k| check_inequalities_div4(k).unwrap().report.all_hold())
            .collect();
        assert_eq!(holds, X_SET);
    }

    #[test]
    fn k_eleven_parameters() {
        let p = check_inequalities_div4(11).unwrap();
        assert_eq!((p.r, p.d1, p.d2), (3, 3, 0));
        assert!(p.report.all_hold());
    }

    #[test]
    fn even_sixteen() {
        let (trace, steps) = construct_even(16).unwrap();
        assert_eq!(
            (trace.d, trace.z, trace.y, trace.u),
            (Some(2), Some(11), Some(26), Some(24))
        );
        let mut v = 0;
        let vertices: Vec<i64> = steps
            .iter()
            .map(|s| {
                let here = v;
                v = (v + s) % 40;
                here
            })
            .collect();
        assert_eq!(
            vertices,
            [0, 15, 16, 17, 24, 31, 38, 5, 6, 7, 8, 9, 10, 11, 26, 33]
        );
    }

    #[test]
    fn even_fourteen_uses_five_ones() {
        let (trace, _) = construct_even(14).unwrap();
        assert_eq!(trace.d, Some(5));
        assert!(trace.inequality_report.all_hold());
    }

    #[test]
    fn even_twelve_is_fixed() {
        assert_eq!(construct_even(12).unwrap().1, EVEN_TWELVE);
        assert!(construct_even(10).is_err());
    }

    #[test]
    fn div4_examples() {
        for k in [20, 35] {
            let (trace, steps) = construct_div4(k).unwrap();
            assert_eq!(steps.len() as u32, 4 * k);
            assert_eq!(trace.modulus, 12 * k - 10);
        }
        match construct_div4(12) {
            Err(SearchError::InequalityFailed(failed)) => {
                assert!(failed.contains(&"x1".to_string()))
            }
            other => panic!("{other:?}"),
        }
    }
}
