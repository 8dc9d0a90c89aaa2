//! Exact red-blue dominating set to subset sum.
//!
//! Red r_i becomes the base-(n_R + 1) number with top digit 1 and digit j equal
//! to its adjacency with blue j. The target has top digit d and ones below.
//! At most n_R numbers are added, so no digit ever carries: a subset hits the
//! target iff it has d reds and covers every blue exactly once.

use super::CompositionError;
use crate::instances::{DominationMode, RbdsInstance, SubsetSumInstance, Validate};
use num_bigint::BigUint;

pub fn erbds_to_subset_sum(inst: &RbdsInstance) -> Result<SubsetSumInstance, CompositionError> {
    inst.validate().map_err(|violation| CompositionError::Invalid { index: 0, violation })?;
    if inst.mode != DominationMode::Exact {
        return Err(CompositionError::Unsupported {
            index: 0,
            reason: "at-most mode; pad with isolated reds first for the size condition".into(),
        });
    }
    let base = BigUint::from(inst.reds + 1);
    let powers: Vec<BigUint> = (0..=inst.blues as u32).map(|j| base.pow(j)).collect();
    let top = &powers[inst.blues];
    let items = inst
        .adjacency
        .iter()
        .map(|row| {
            row.iter().zip(&powers).filter(|(&a, _)| a).fold(top.clone(), |acc, (_, p)| acc + p)
        })
        .collect();
    let ones: BigUint = powers[..inst.blues].iter().sum();
    let target = top * inst.budget + ones;
    Ok(SubsetSumInstance { items, target })
}

/// Adds `budget` isolated reds, so "a dominating set of size ≤ d" becomes
/// "a dominating set of size exactly d". Mode and budget are kept.
pub fn pad_isolated_reds(inst: &RbdsInstance) -> Result<RbdsInstance, CompositionError> {
    inst.validate().map_err(|violation| CompositionError::Invalid { index: 0, violation })?;
    if inst.mode != DominationMode::AtMost {
        return Err(CompositionError::Unsupported { index: 0, reason: "padding applies to at-most mode".into() });
    }
    let mut out = inst.clone();
    out.reds += inst.budget;
    out.adjacency.extend(std::iter::repeat_n(vec![false; inst.blues], inst.budget));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{solve_rbds, solve_subset_sum, Caps};

    #[test]
    fn small_example() {
        let mut i = RbdsInstance::empty(2, 1, 1, DominationMode::Exact);
        i.adjacency[0][0] = true;
        let ss = erbds_to_subset_sum(&i).unwrap();
        assert_eq!(ss.items, vec![BigUint::from(4u32), BigUint::from(3u32)]);
        assert_eq!(ss.target, BigUint::from(4u32));
        let caps = Caps::default();
        assert_eq!(solve_subset_sum(&ss, &caps).unwrap().witness, Some(vec![0]));
        assert_eq!(solve_rbds(&i, &caps).unwrap().witness, Some(vec![0]));
        let empty = RbdsInstance::empty(2, 1, 1, DominationMode::Exact);
        assert!(!solve_subset_sum(&erbds_to_subset_sum(&empty).unwrap(), &caps).unwrap().is_yes());
        assert!(!solve_rbds(&empty, &caps).unwrap().is_yes());
    }

    #[test]
    fn mode_checks() {
        let i = RbdsInstance::empty(2, 1, 2, DominationMode::AtMost);
        assert!(erbds_to_subset_sum(&i).is_err());
        let p = pad_isolated_reds(&i).unwrap();
        assert_eq!((p.reds, p.budget), (4, 2));
        assert!(p.adjacency[2..].iter().all(|row| row.iter().all(|&b| !b)));
        assert_eq!(&p.adjacency[..2], &i.adjacency[..]);
    }
}
