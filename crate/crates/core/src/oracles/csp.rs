//! Weighted CSP evaluation and exhaustive search over all 2^n assignments.

use super::{check_cap, indicator_cmp, Caps, MaxResult, OracleError, SolveResult};
use crate::instances::{CspFormula, Validate};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CspMode {
    Exact,
    Max,
}

/// Φ(x): total weight of the applications satisfied by `x`.
pub fn eval_csp(phi: &CspFormula, x: &[bool]) -> BigInt {
    phi.applications.iter().filter(|a| phi.satisfied(a, x)).map(|a| &a.weight).sum()
}

trait Val: Clone + Ord + std::ops::AddAssign + std::ops::SubAssign {
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
}

impl Val for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("fast path only taken when every weight fits")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
}

impl Val for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
}

/// Exact: smallest x with Φ(x) = t. Max: smallest optimal x, reported when the
/// optimum reaches t. Both modes also report the optimum. Variables set to 1
/// form the witness.
pub fn solve_csp(phi: &CspFormula, mode: CspMode, caps: &Caps) -> Result<MaxResult<BigInt>, OracleError> {
    phi.validate()?;
    check_cap("variable count", phi.n as u64, (caps.csp_vars as u64).min(40))?;
    let total: BigInt = phi.applications.iter().map(|a| a.weight.abs()).sum::<BigInt>() + phi.target.abs();
    if total.bits() < 120 {
        gray_walk::<i128>(phi, mode)
    } else {
        gray_walk::<BigInt>(phi, mode)
    }
}

fn to_set(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|v| mask >> v & 1 == 1).collect()
}

// Assignments are visited in Gray-code order; each step flips one variable and
// re-evaluates only the applications touching it.
fn gray_walk<V: Val>(phi: &CspFormula, mode: CspMode) -> Result<MaxResult<BigInt>, OracleError> {
    let n = phi.n;
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ai, a) in phi.applications.iter().enumerate() {
        let mut vars = a.indices.clone();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            touching[v].push(ai);
        }
    }
    let weights: Vec<V> = phi.applications.iter().map(|a| V::from_big(&a.weight)).collect();
    let tables: Vec<&[bool]> = phi.applications.iter().map(|a| phi.language[a.constraint].truth_table.as_slice()).collect();
    let row = |ai: usize, x: u64| -> bool {
        let idx = phi.applications[ai].indices.iter().enumerate().fold(0usize, |acc, (j, &v)| acc | ((x >> v & 1) as usize) << j);
        tables[ai][idx]
    };
    let target = V::from_big(&phi.target);
    let mut sat: Vec<bool> = (0..phi.applications.len()).map(|ai| row(ai, 0)).collect();
    let mut value = V::zero();
    for (ai, &s) in sat.iter().enumerate() {
        if s {
            value += weights[ai].clone();
        }
    }
    let key = |x: u64| if n == 0 { 0 } else { x.reverse_bits() >> (64 - n) };
    let mut top: Option<(V, u64)> = None;
    let mut hit: Option<u64> = None;
    let mut x = 0u64;
    let count = 1u64 << n;
    for i in 0..count {
        if i > 0 {
            let flip = i.trailing_zeros() as usize;
            x ^= 1 << flip;
            for &ai in &touching[flip] {
                let now = row(ai, x);
                if now != sat[ai] {
                    if now {
                        value += weights[ai].clone();
                    } else {
                        value -= weights[ai].clone();
                    }
                    sat[ai] = now;
                }
            }
        }
        if value == target && hit.is_none_or(|h| key(x) < key(h)) {
            hit = Some(x);
        }
        let better = match &top {
            None => true,
            Some((bv, bx)) => value > *bv || (value == *bv && key(x) < key(*bx)),
        };
        if better {
            top = Some((value.clone(), x));
        }
    }
    let (top_value, top_x) = top.expect("at least one assignment");
    let max = top_value.to_big();
    let result = match mode {
        CspMode::Exact => match hit {
            Some(h) => SolveResult::yes(to_set(h, n), count),
            None => SolveResult::no(count),
        },
        CspMode::Max if max >= phi.target => SolveResult::yes(to_set(top_x, n), count),
        CspMode::Max => SolveResult::no(count),
    };
    Ok(MaxResult { result, max })
}

/// Brute-force reference: plain loop over assignments in witness order.
pub fn solve_csp_plain(phi: &CspFormula) -> Option<Vec<usize>> {
    let n = phi.n;
    let mut found: Option<Vec<usize>> = None;
    for mask in 0u64..1 << n {
        let x: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if eval_csp(phi, &x) == phi.target {
            let set = to_set(mask, n);
            if found.as_ref().is_none_or(|f| indicator_cmp(&set, f).is_lt()) {
                found = Some(set);
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{CspApplication, CspConstraint};
    use proptest::prelude::*;

    fn and_formula(apps: &[(Vec<usize>, i64)], n: usize, t: i64) -> CspFormula {
        CspFormula {
            n,
            language: vec![CspConstraint::and(2)],
            applications: apps
                .iter()
                .map(|(v, w)| CspApplication { constraint: 0, indices: v.clone(), weight: (*w).into() })
                .collect(),
            target: t.into(),
        }
    }

    #[test]
    fn eval_examples() {
        let phi = and_formula(&[(vec![0, 1], 5)], 2, 5);
        assert_eq!(eval_csp(&phi, &[true, true]), 5.into());
        assert_eq!(eval_csp(&phi, &[true, false]), 0.into());
        let r = solve_csp(&phi, CspMode::Exact, &Caps::default()).unwrap();
        assert_eq!(r.result.witness, Some(vec![0, 1]));
    }

    #[test]
    fn mixed_signs() {
        // weights 3 on (0,1) and -2 on (1,2): values {0, 3, -2, 1}; t=1 needs x=(1,1,1)
        let phi = and_formula(&[(vec![0, 1], 3), (vec![1, 2], -2)], 3, 1);
        let r = solve_csp(&phi, CspMode::Exact, &Caps::default()).unwrap();
        assert_eq!(r.result.witness, Some(vec![0, 1, 2]));
        let m = solve_csp(&phi, CspMode::Max, &Caps::default()).unwrap();
        assert_eq!(m.max, 3.into());
    }

    #[test]
    fn empty_formula() {
        let phi = CspFormula { n: 0, language: vec![], applications: vec![], target: 0.into() };
        assert_eq!(solve_csp(&phi, CspMode::Exact, &Caps::default()).unwrap().result.witness, Some(vec![]));
    }

    fn arb_formula() -> impl Strategy<Value = CspFormula> {
        (1usize..=6, proptest::collection::vec(any::<bool>(), 8), 0usize..8).prop_flat_map(|(n, table, napps)| {
            let lang = vec![CspConstraint { arity: 3, truth_table: table }, CspConstraint::and(2), CspConstraint::not()];
            (
                proptest::collection::vec((0usize..3, proptest::collection::vec(0..n, 3), -4i64..5), napps),
                -6i64..8,
            )
                .prop_map(move |(apps, t)| CspFormula {
                    n,
                    language: lang.clone(),
                    applications: apps
                        .into_iter()
                        .map(|(f, v, w)| {
                            let k = [3, 2, 1][f];
                            CspApplication { constraint: f, indices: v[..k].to_vec(), weight: w.into() }
                        })
                        .collect(),
                    target: t.into(),
                })
        })
    }

    proptest! {
        #[test]
        fn gray_walk_matches_plain(phi in arb_formula()) {
            let r = solve_csp(&phi, CspMode::Exact, &Caps::default()).unwrap();
            prop_assert_eq!(r.result.witness, solve_csp_plain(&phi));
            let big = gray_walk::<BigInt>(&phi, CspMode::Max).unwrap();
            let small = gray_walk::<i128>(&phi, CspMode::Max).unwrap();
            prop_assert_eq!(big, small);
        }
    }
}
