//! Weight compression for node-weighted bipartite vertex cover.
//!
//! A maximum b-matching `z` (edge values with `z(E_v) ≤ w(v)`) is computed
//! once by max flow. Edges with `z(e) > 1` then hand `z(e) − 1` back to both
//! endpoints, after which any weight above `|V|` is clamped to `|V|`. Both
//! steps keep the family of minimum-weight covers intact.

mod flow;
mod gadgets;

pub use gadgets::{star_witness, threshold_covers, threshold_gadget, threshold_value};

use crate::instances::{BMatchingCert, NodeWeightedBipartiteGraph, Validate, Violation};
use crate::oracles::vertex_cover::{enumerate_minimal_vertex_covers, min_weight_vertex_covers};
use crate::oracles::{Caps, OracleError};
use flow::Network;
use num_bigint::BigUint;
use num_traits::One;
use std::cmp::Ordering;

/// Maximum b-matching with the vertex weights as capacities. Values are
/// aligned with `g.edges`.
pub fn max_b_matching(g: &NodeWeightedBipartiteGraph) -> Result<BMatchingCert, Violation> {
    g.validate()?;
    let n = g.vertex_count();
    let (source, sink) = (n, n + 1);
    let mut net = Network::new(n + 2);
    for &u in &g.left {
        net.add_arc(source, u, g.weights[u].clone());
    }
    for &v in &g.right {
        net.add_arc(v, sink, g.weights[v].clone());
    }
    let middle: Vec<usize> = g
        .edges
        .iter()
        .map(|&(u, v)| net.add_arc(u, v, (&g.weights[u]).min(&g.weights[v]).clone()))
        .collect();
    let value = net.max_flow(source, sink);
    let values = middle.iter().map(|&a| net.flow(a).clone()).collect();
    Ok(BMatchingCert { values, value })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule1Step {
    pub edge: (usize, usize),
    /// `z(e) − 1` at the time of application, taken off both endpoints.
    pub delta: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule2Step {
    pub vertex: usize,
    /// Weight before clamping to `|V|`.
    pub old: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionTrace {
    pub initial_value: BigUint,
    /// The b-matching the rules were applied against, before any update.
    pub matching: BMatchingCert,
    pub rule1: Vec<Rule1Step>,
    pub rule2: Vec<Rule2Step>,
    pub final_weights: Vec<BigUint>,
}

/// Compressed weights in `[1, |V|]` with the same minimum-weight covers.
pub fn compress_vc_weights(g: &NodeWeightedBipartiteGraph) -> Result<(Vec<BigUint>, CompressionTrace), Violation> {
    let matching = max_b_matching(g)?;
    let n = BigUint::from(g.vertex_count());
    let mut w = g.weights.clone();
    let mut z = matching.values.clone();
    let index_of = |e: (usize, usize)| g.edges.iter().position(|&f| f == e).expect("edge from the graph");
    let order: Vec<usize> = g.sorted_edges().into_iter().map(index_of).collect();

    let mut rule1 = Vec::new();
    while let Some(&i) = order.iter().find(|&&i| z[i] > BigUint::one()) {
        let (x, y) = g.edges[i];
        let delta = &z[i] - 1u32;
        w[x] -= &delta;
        w[y] -= &delta;
        z[i] = BigUint::one();
        rule1.push(Rule1Step { edge: (x, y), delta });
    }

    let mut rule2 = Vec::new();
    for (v, wv) in w.iter_mut().enumerate() {
        if *wv > n {
            rule2.push(Rule2Step { vertex: v, old: std::mem::replace(wv, n.clone()) });
        }
    }

    let trace = CompressionTrace {
        initial_value: matching.value.clone(),
        matching,
        rule1,
        rule2,
        final_weights: w.clone(),
    };
    Ok((w, trace))
}

/// Re-applies a trace to the original weights.
pub fn replay(g: &NodeWeightedBipartiteGraph, trace: &CompressionTrace) -> Vec<BigUint> {
    let n = BigUint::from(g.vertex_count());
    let mut w = g.weights.clone();
    for step in &trace.rule1 {
        w[step.edge.0] -= &step.delta;
        w[step.edge.1] -= &step.delta;
    }
    for step in &trace.rule2 {
        w[step.vertex] = n.clone();
    }
    w
}

/// `None` if `𝒞(G, w) = 𝒞(G, w2)`; otherwise the first cover (by size, then
/// lexicographically) that is minimum under exactly one of the weightings.
pub fn verify_min_cover_preservation(
    g: &NodeWeightedBipartiteGraph,
    w2: &[BigUint],
    caps: &Caps,
) -> Result<Option<Vec<usize>>, OracleError> {
    let before = min_weight_vertex_covers(g, caps)?.covers;
    let after = min_weight_vertex_covers(&g.with_weights(w2.to_vec()), caps)?.covers;
    let mut diff: Vec<Vec<usize>> = before
        .iter()
        .filter(|c| !after.contains(c))
        .chain(after.iter().filter(|c| !before.contains(c)))
        .cloned()
        .collect();
    diff.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(diff.into_iter().next())
}

/// Two covers, in the order they were compared.
pub type CoverPair = (Vec<usize>, Vec<usize>);

/// `None` if `w(S1) ≤ w(S2) ⇔ w2(S1) ≤ w2(S2)` for every pair of
/// inclusion-minimal covers; otherwise the first pair that disagrees.
pub fn vertex_cover_equivalent(
    g: &NodeWeightedBipartiteGraph,
    w2: &[BigUint],
    caps: &Caps,
) -> Result<Option<CoverPair>, OracleError> {
    let covers = enumerate_minimal_vertex_covers(g, caps)?;
    let other = g.with_weights(w2.to_vec());
    other.validate()?;
    let a: Vec<BigUint> = covers.iter().map(|c| g.set_weight(c)).collect();
    let b: Vec<BigUint> = covers.iter().map(|c| other.set_weight(c)).collect();
    for i in 0..covers.len() {
        for j in 0..covers.len() {
            if (a[i] <= a[j]) != (b[i] <= b[j]) {
                return Ok(Some((covers[i].clone(), covers[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Sum of `z` over the edges at `v`.
pub fn load(g: &NodeWeightedBipartiteGraph, z: &BMatchingCert, v: usize) -> BigUint {
    g.edges
        .iter()
        .zip(&z.values)
        .filter(|(&(a, b), _)| a == v || b == v)
        .map(|(_, x)| x)
        .sum()
}

/// Compares the minimum cover weight with the b-matching value.
pub fn konig_gap(g: &NodeWeightedBipartiteGraph, caps: &Caps) -> Result<Ordering, OracleError> {
    let cover = min_weight_vertex_covers(g, caps)?.min_weight;
    let value = max_b_matching(g)?.value;
    Ok(cover.cmp(&value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(left: &[usize], right: &[usize], edges: &[(usize, usize)], w: &[u64]) -> NodeWeightedBipartiteGraph {
        NodeWeightedBipartiteGraph {
            left: left.to_vec(),
            right: right.to_vec(),
            edges: edges.to_vec(),
            weights: w.iter().map(|&x| x.into()).collect(),
        }
    }

    fn big(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn matching_examples() {
        let z = max_b_matching(&graph(&[0], &[1], &[(0, 1)], &[3, 5])).unwrap();
        assert_eq!((z.values, z.value), (big(&[3]), 3u32.into()));
        for n in 2..8 {
            let g = star_witness(n);
            let z = max_b_matching(&g).unwrap();
            assert_eq!(z.value, (n - 1).into());
            z.check(&g).unwrap();
        }
        let z = max_b_matching(&graph(&[0], &[1], &[], &[4, 4])).unwrap();
        assert_eq!(z.value, 0u32.into());
    }

    #[test]
    fn compress_single_edge() {
        let g = graph(&[0], &[1], &[(0, 1)], &[5, 3]);
        let (w, trace) = compress_vc_weights(&g).unwrap();
        assert_eq!(trace.rule1, vec![Rule1Step { edge: (0, 1), delta: 2u32.into() }]);
        assert_eq!(trace.rule2, vec![Rule2Step { vertex: 0, old: 3u32.into() }]);
        assert_eq!(w, big(&[2, 1]));
        assert_eq!(verify_min_cover_preservation(&g, &w, &Caps::default()).unwrap(), None);
        assert_eq!(min_weight_vertex_covers(&g.with_weights(w), &Caps::default()).unwrap().covers, vec![vec![1]]);
    }

    #[test]
    fn compress_heavy_star_center() {
        let g = graph(&[0], &[1, 2, 3], &[(0, 1), (0, 2), (0, 3)], &[1_000_000_000, 1, 1, 1]);
        let (w, trace) = compress_vc_weights(&g).unwrap();
        assert!(trace.rule1.is_empty());
        assert_eq!(trace.rule2, vec![Rule2Step { vertex: 0, old: 1_000_000_000u64.into() }]);
        assert_eq!(w, big(&[4, 1, 1, 1]));
        assert_eq!(verify_min_cover_preservation(&g, &w, &Caps::default()).unwrap(), None);
    }

    #[test]
    fn compress_is_identity_when_nothing_fires() {
        let g = graph(&[0, 2], &[1, 3], &[(0, 1), (2, 1), (2, 3)], &[1, 2, 2, 1]);
        let (w, trace) = compress_vc_weights(&g).unwrap();
        assert!(trace.rule1.is_empty() && trace.rule2.is_empty());
        assert_eq!(w, g.weights);
    }

    #[test]
    fn star_reaches_vertex_count() {
        for n in 2..=10 {
            let (w, _) = compress_vc_weights(&star_witness(n)).unwrap();
            assert_eq!(w.iter().max().unwrap(), &BigUint::from(n));
        }
    }

    #[test]
    fn preservation_examples() {
        let g = graph(&[0], &[1], &[(0, 1)], &[5, 3]);
        let caps = Caps::default();
        assert_eq!(verify_min_cover_preservation(&g, &big(&[1, 2]), &caps).unwrap(), Some(vec![0]));
        assert_eq!(verify_min_cover_preservation(&g, &g.weights, &caps).unwrap(), None);
    }

    #[test]
    fn equivalence_examples() {
        let caps = Caps::default();
        let g = graph(&[0], &[1], &[(0, 1)], &[1, 2]);
        assert_eq!(vertex_cover_equivalent(&g, &big(&[2, 1]), &caps).unwrap(), Some((vec![0], vec![1])));
        let g = graph(&[0, 2], &[1, 3], &[(0, 1), (2, 1), (2, 3)], &[3, 1, 4, 1]);
        let doubled: Vec<BigUint> = g.weights.iter().map(|w| w * 2u32).collect();
        assert_eq!(vertex_cover_equivalent(&g, &doubled, &caps).unwrap(), None);
    }

    #[test]
    fn distinct_threshold_functions_separate() {
        // two functions on three inputs: x0 ≥ 1 versus x0 + x1 ≥ 1
        let f = (vec![1.into(), 0.into(), 0.into()], 1.into());
        let g = (vec![1.into(), 1.into(), 0.into()], 1.into());
        let gf = threshold_gadget(&f.0, &f.1);
        let gg = threshold_gadget(&g.0, &g.1);
        let caps = Caps::default();
        assert!(vertex_cover_equivalent(&gf, &gg.weights, &caps).unwrap().is_some());
    }

    /// Random bipartite graph: sides split at `split`, each cross pair kept
    /// with its mask bit.
    fn arb_graph(max_n: usize, max_w: u64) -> impl Strategy<Value = NodeWeightedBipartiteGraph> {
        (2..=max_n)
            .prop_flat_map(move |n| (Just(n), 1..n, any::<u64>(), prop::collection::vec(1..=max_w, n)))
            .prop_map(|(n, split, mask, w)| {
                let left: Vec<usize> = (0..split).collect();
                let right: Vec<usize> = (split..n).collect();
                let mut edges = Vec::new();
                for &u in &left {
                    for &v in &right {
                        if (mask >> ((edges.len() + u * 3 + v) % 64)) & 1 == 1 {
                            edges.push((u, v));
                        }
                    }
                }
                graph(&left, &right, &edges, &w)
            })
    }

    fn brute_b_matching(g: &NodeWeightedBipartiteGraph, bound: u64) -> u64 {
        let m = g.edges.len();
        let mut best = 0;
        let mut z = vec![0u64; m];
        loop {
            let feasible = (0..g.vertex_count()).all(|v| {
                let s: u64 = g.edges.iter().zip(&z).filter(|(&(a, b), _)| a == v || b == v).map(|(_, x)| x).sum();
                BigUint::from(s) <= g.weights[v]
            });
            if feasible {
                best = best.max(z.iter().sum());
            }
            let Some(i) = (0..m).find(|&i| z[i] < bound) else { break };
            z[i] += 1;
            z[..i].iter_mut().for_each(|x| *x = 0);
        }
        best
    }

    proptest! {
        #[test]
        fn matching_matches_exhaustive_search(g in arb_graph(5, 6).prop_filter("≤ 4 edges", |g| g.edges.len() <= 4)) {
            let z = max_b_matching(&g).unwrap();
            z.check(&g).unwrap();
            prop_assert_eq!(z.value, BigUint::from(brute_b_matching(&g, 6)));
        }

        #[test]
        fn konig_and_matched_edge_facts(g in arb_graph(8, 12)) {
            let caps = Caps::default();
            let z = max_b_matching(&g).unwrap();
            let cal = min_weight_vertex_covers(&g, &caps).unwrap();
            prop_assert_eq!(&cal.min_weight, &z.value);
            for (&(u, v), zv) in g.edges.iter().zip(&z.values) {
                if *zv > BigUint::ZERO {
                    for c in &cal.covers {
                        prop_assert!(c.contains(&u) != c.contains(&v));
                    }
                }
            }
            for v in 0..g.vertex_count() {
                if g.weights[v] > load(&g, &z, v) {
                    prop_assert!(cal.covers.iter().all(|c| !c.contains(&v)));
                }
            }
        }

        #[test]
        fn compression_preserves_covers(g in arb_graph(8, 1_000_000_000_000_000_000)) {
            let (w, trace) = compress_vc_weights(&g).unwrap();
            let n = BigUint::from(g.vertex_count());
            prop_assert!(w.iter().all(|x| *x >= BigUint::one() && *x <= n));
            prop_assert_eq!(verify_min_cover_preservation(&g, &w, &Caps::default()).unwrap(), None);
            prop_assert_eq!(replay(&g, &trace), w.clone());
            prop_assert!(trace.rule1.iter().all(|s| s.delta > BigUint::ZERO));
            prop_assert!(trace.rule2.iter().all(|s| s.old > n));
        }

        #[test]
        fn scaling_keeps_equivalence(g in arb_graph(7, 50), k in 1u32..5) {
            let scaled: Vec<BigUint> = g.weights.iter().map(|w| w * k).collect();
            prop_assert_eq!(vertex_cover_equivalent(&g, &scaled, &Caps::default()).unwrap(), None);
        }
    }
}
