//! Weightings that show the compression range and the equivalence notion are tight.

use crate::instances::NodeWeightedBipartiteGraph;
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

/// Star on `n` vertices: center 0 with weight `n`, leaves `1..n` with weight 1.
pub fn star_witness(n: usize) -> NodeWeightedBipartiteGraph {
    assert!(n >= 2, "a star needs at least two vertices");
    let mut weights = vec![BigUint::from(1u32); n];
    weights[0] = n.into();
    NodeWeightedBipartiteGraph {
        left: vec![0],
        right: (1..n).collect(),
        edges: (1..n).map(|leaf| (0, leaf)).collect(),
        weights,
    }
}

/// Matching `v_i - v'_i` for `i = 1..=n+1`. `v_i` has id `i − 1`, `v'_i` has
/// id `n + i`. Weights are `w[i] + c` on `v_i`, `t + c` on `v_{n+1}` and `c`
/// on every primed vertex, where `c = |min(min w, t)| + 1`.
pub fn threshold_gadget(wvec: &[BigInt], t: &BigInt) -> NodeWeightedBipartiteGraph {
    let n = wvec.len();
    let low = wvec.iter().chain([t]).min().expect("t is always present");
    let c: BigInt = low.abs() + 1;
    let positive = |x: BigInt| x.to_biguint().expect("shifted weights are positive");
    let mut weights: Vec<BigUint> = wvec.iter().map(|w| positive(w + &c)).collect();
    weights.push(positive(t + &c));
    weights.extend((0..=n).map(|_| positive(c.clone())));
    NodeWeightedBipartiteGraph {
        left: (0..=n).collect(),
        right: (n + 1..2 * n + 2).collect(),
        edges: (0..=n).map(|i| (i, n + 1 + i)).collect(),
        weights,
    }
}

/// The two minimal covers compared for input `x`: `S1` takes `v_i` when
/// `x[i]` holds and `v'_i` otherwise, plus `v'_{n+1}`; `S2` takes every `v'_i`
/// for `i ≤ n` plus `v_{n+1}`.
pub fn threshold_covers(x: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let n = x.len();
    let mut s1: Vec<usize> = x.iter().enumerate().map(|(i, &b)| if b { i } else { n + 1 + i }).collect();
    s1.push(2 * n + 1);
    s1.sort_unstable();
    let mut s2: Vec<usize> = (n + 1..2 * n + 1).collect();
    s2.push(n);
    s2.sort_unstable();
    (s1, s2)
}

/// `Σ w[i]·x[i] ≥ t`.
pub fn threshold_value(wvec: &[BigInt], t: &BigInt, x: &[bool]) -> bool {
    let sum: BigInt = wvec.iter().zip(x).filter(|(_, &b)| b).map(|(w, _)| w).sum();
    &sum >= t
}
