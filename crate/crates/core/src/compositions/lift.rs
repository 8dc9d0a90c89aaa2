//! Lifting z^(d−2) weighted graphs to one d-uniform hypergraph whose
//! hypercliques of weight t correspond to t-weight cliques in some input.
//!
//! New vertex groups Y_1..Y_{d−2} (z vertices each) pick the input: a d-set
//! is a hyperedge iff it takes at most one vertex from each Y_ℓ; it weighs 0
//! unless it hits every Y_ℓ, in which case it carries the selected input's
//! weight on its two graph vertices, or t + 1 when those are not adjacent.

use super::{exact_root, CompositionError};
use crate::instances::{for_each_subset, Validate, WeightedHypergraph};
use num_bigint::BigUint;
use num_traits::Zero;

/// |V(G*)| = n + z(d − 2).
pub fn lift_layout_size(n: usize, z: usize, d: usize) -> usize {
    n + z * (d - 2)
}

pub fn hyperclique_lift(inputs: &[WeightedHypergraph], d: usize) -> Result<WeightedHypergraph, CompositionError> {
    let first = inputs.first().ok_or(CompositionError::Empty)?;
    if d < 3 {
        return Err(CompositionError::Unsupported { index: 0, reason: format!("output arity must be ≥ 3, got {d}") });
    }
    let power = (d - 2) as u32;
    let z = exact_root(inputs.len(), power).ok_or(CompositionError::NotPerfectPower { count: inputs.len(), power })?;
    let (n, t) = (first.n, first.target.clone());
    for (index, h) in inputs.iter().enumerate() {
        h.validate().map_err(|violation| CompositionError::Invalid { index, violation })?;
        if h.arity != 2 {
            return Err(CompositionError::Unsupported { index, reason: "inputs must be graphs (arity 2)".into() });
        }
        if h.n != n || h.target != t {
            return Err(CompositionError::ShapeMismatch {
                index,
                found: format!("(n={}, t={})", h.n, h.target),
                expected: format!("(n={n}, t={t})"),
            });
        }
    }
    if t.is_zero() {
        return Err(CompositionError::Unsupported { index: 0, reason: "target must be positive".into() });
    }
    let groups = d - 2;
    let total = lift_layout_size(n, z, d);
    let non_edge = &t + 1u32;
    let mut out = WeightedHypergraph::new(d, total, t.clone());
    let all: Vec<usize> = (0..total).collect();
    let mut picks = vec![None::<usize>; groups];
    for_each_subset(&all, d, |set| {
        picks.iter_mut().for_each(|p| *p = None);
        let mut graph_part = Vec::with_capacity(2);
        for &v in set {
            if v < n {
                graph_part.push(v);
                continue;
            }
            let (group, j) = ((v - n) / z, (v - n) % z);
            if picks[group].is_some() {
                return;
            }
            picks[group] = Some(j);
        }
        let weight = if picks.iter().any(|p| p.is_none()) {
            BigUint::zero()
        } else {
            let index = picks.iter().fold(0usize, |acc, p| acc * z + p.expect("all set"));
            inputs[index].weight(&graph_part).cloned().unwrap_or_else(|| non_edge.clone())
        };
        out.edges.insert(set.to_vec(), weight);
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{solve_eewhc_exact, Caps};

    fn k3(w: [u32; 3], t: u32) -> WeightedHypergraph {
        let mut h = WeightedHypergraph::new(2, 3, t.into());
        h.insert_edge(vec![0, 1], w[0].into());
        h.insert_edge(vec![0, 2], w[1].into());
        h.insert_edge(vec![1, 2], w[2].into());
        h
    }

    #[test]
    fn lift_examples() {
        let caps = Caps::default();
        let no = k3([1, 2, 3], 4);
        let yes = k3([1, 1, 2], 4);
        let lifted = hyperclique_lift(&[no.clone(), yes], 3).unwrap();
        assert_eq!(lifted.n, lift_layout_size(3, 2, 3));
        assert!(lifted.validate().is_ok());
        assert!(solve_eewhc_exact(&lifted, &caps).unwrap().is_yes());
        let lifted = hyperclique_lift(&[no.clone(), no], 3).unwrap();
        assert!(!solve_eewhc_exact(&lifted, &caps).unwrap().is_yes());
        let zero = k3([0, 0, 0], 1);
        let lifted = hyperclique_lift(&[zero.clone(), zero], 3).unwrap();
        assert!(!solve_eewhc_exact(&lifted, &caps).unwrap().is_yes());
    }

    #[test]
    fn lift_rejects() {
        let h = k3([1, 2, 3], 0);
        assert!(hyperclique_lift(&[h.clone(), h.clone()], 3).is_err());
        let h = k3([1, 2, 3], 1);
        assert!(hyperclique_lift(&[h.clone(), h.clone(), h.clone()], 4).is_err());
        assert!(hyperclique_lift(std::slice::from_ref(&h), 2).is_err());
        assert!(hyperclique_lift(&vec![h.clone(); 4], 4).is_ok());
    }
}
