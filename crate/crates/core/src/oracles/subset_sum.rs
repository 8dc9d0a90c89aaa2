//! Subset sum by enumeration, with a bitset DP when the target is small.

use super::{check_cap, Caps, OracleError, SolveResult};
use crate::instances::{SubsetSumInstance, Validate};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// DP when the table fits, otherwise enumeration.
pub fn solve_subset_sum(inst: &SubsetSumInstance, caps: &Caps) -> Result<SolveResult, OracleError> {
    inst.validate()?;
    match dp_cells(inst) {
        Some(cells) if cells <= caps.dp_cells => subset_sum_dp(inst, caps),
        _ => subset_sum_enumerate(inst, caps),
    }
}

fn dp_cells(inst: &SubsetSumInstance) -> Option<u64> {
    let t = inst.target.to_u64()?;
    (inst.items.len() as u64 + 1).checked_mul(t.checked_add(1)?)
}

/// Include/exclude walk over items in order, excluding first, so the first
/// hit is the smallest witness. Branches overshooting the target or unable
/// to reach it with the remaining items are cut.
pub fn subset_sum_enumerate(inst: &SubsetSumInstance, caps: &Caps) -> Result<SolveResult, OracleError> {
    inst.validate()?;
    check_cap("item count", inst.items.len() as u64, caps.subset_sum_items as u64)?;
    let n = inst.items.len();
    let mut suffix = vec![BigUint::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] + &inst.items[i];
    }
    struct Walk<'a> {
        items: &'a [BigUint],
        suffix: &'a [BigUint],
        target: &'a BigUint,
        chosen: Vec<usize>,
        states: u64,
    }
    impl Walk<'_> {
        fn run(&mut self, i: usize, sum: &BigUint) -> bool {
            if i == self.items.len() {
                self.states += 1;
                return sum == self.target;
            }
            if sum + &self.suffix[i] < *self.target {
                self.states += 1;
                return false;
            }
            if self.run(i + 1, sum) {
                return true;
            }
            let next = sum + &self.items[i];
            if next <= *self.target {
                self.chosen.push(i);
                if self.run(i + 1, &next) {
                    return true;
                }
                self.chosen.pop();
            }
            false
        }
    }
    let mut walk = Walk { items: &inst.items, suffix: &suffix, target: &inst.target, chosen: Vec::new(), states: 0 };
    Ok(if walk.run(0, &BigUint::zero()) {
        SolveResult::yes(walk.chosen, walk.states)
    } else {
        SolveResult::no(walk.states)
    })
}

/// Suffix-reachability DP: `reach[i]` holds the sums formed from items i..n.
/// The witness is rebuilt greedily, skipping an item whenever the rest can
/// still reach the remainder, which gives the smallest witness.
pub fn subset_sum_dp(inst: &SubsetSumInstance, caps: &Caps) -> Result<SolveResult, OracleError> {
    inst.validate()?;
    let cells = dp_cells(inst).unwrap_or(u64::MAX);
    check_cap("subset-sum DP table", cells, caps.dp_cells)?;
    let t = inst.target.to_usize().expect("checked by the cell cap");
    let n = inst.items.len();
    let words = t / 64 + 1;
    let mut reach = vec![vec![0u64; words]; n + 1];
    reach[n][0] = 1;
    for i in (0..n).rev() {
        let mut row = reach[i + 1].clone();
        if let Some(x) = inst.items[i].to_usize().filter(|&x| x <= t) {
            shift_or(&mut row, &reach[i + 1], x, t);
        }
        reach[i] = row;
    }
    let has = |row: &[u64], s: usize| row[s / 64] >> (s % 64) & 1 == 1;
    if !has(&reach[0], t) {
        return Ok(SolveResult::no(cells));
    }
    let mut rem = t;
    let mut chosen = Vec::new();
    for i in 0..n {
        if has(&reach[i + 1], rem) {
            continue;
        }
        chosen.push(i);
        rem -= inst.items[i].to_usize().expect("item on a feasible path is ≤ t");
    }
    Ok(SolveResult::yes(chosen, cells))
}

/// dst |= src << by, truncated to bits 0..=limit.
fn shift_or(dst: &mut [u64], src: &[u64], by: usize, limit: usize) {
    let (ws, bs) = (by / 64, by % 64);
    for j in (ws..dst.len()).rev() {
        let lo = src[j - ws] << bs;
        let hi = if bs > 0 && j > ws { src[j - ws - 1] >> (64 - bs) } else { 0 };
        dst[j] |= lo | hi;
    }
    let extra = 63 - limit % 64;
    if let Some(last) = dst.last_mut() {
        *last &= u64::MAX >> extra;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(items: &[u64], t: u64) -> SubsetSumInstance {
        SubsetSumInstance { items: items.iter().map(|&x| x.into()).collect(), target: t.into() }
    }

    fn brute(items: &[u64], t: u64) -> Option<Vec<usize>> {
        let n = items.len();
        (0u64..1 << n)
            .map(|m| (0..n).filter(|i| m >> (n - 1 - i) & 1 == 1).collect::<Vec<_>>())
            .find(|s| s.iter().map(|&i| items[i]).sum::<u64>() == t)
    }

    #[test]
    fn examples() {
        let c = Caps::default();
        assert_eq!(solve_subset_sum(&inst(&[4, 3], 4), &c).unwrap().witness, Some(vec![0]));
        assert_eq!(solve_subset_sum(&inst(&[], 0), &c).unwrap().witness, Some(vec![]));
        assert!(!solve_subset_sum(&inst(&[2, 2], 3), &c).unwrap().is_yes());
        assert!(!subset_sum_enumerate(&inst(&[2, 2], 3), &c).unwrap().is_yes());
    }

    #[test]
    fn big_target_uses_enumeration() {
        let x = BigUint::from(10u8).pow(30);
        let i = SubsetSumInstance { items: vec![x.clone(), x.clone() * 2u8], target: x * 3u8 };
        assert_eq!(solve_subset_sum(&i, &Caps::default()).unwrap().witness, Some(vec![0, 1]));
    }

    proptest! {
        #[test]
        fn dp_and_enumeration_agree(items in proptest::collection::vec(1u64..200, 0..10), t in 0u64..600) {
            let i = inst(&items, t);
            let c = Caps::default();
            let a = subset_sum_dp(&i, &c).unwrap();
            let b = subset_sum_enumerate(&i, &c).unwrap();
            prop_assert_eq!(&a.witness, &b.witness);
            prop_assert_eq!(a.witness, brute(&items, t));
        }
    }
}
