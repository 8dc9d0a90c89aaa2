use num_bigint::BigUint;
use proptest::prelude::*;
use wkern::codec::{self, Instance};
use wkern::interval_reduction::{interval_to_exact, realize_slack};
use wkern::oracles::{solve_eewhc_exact, subset_sum_enumerate};
use wkern::prime_hash::{kernelize_eewhc_exact, kernelize_subset_sum, Epsilon, KernelConfig};
use wkern::{Caps, NodeWeightedBipartiteGraph, SubsetSumInstance, WeightedHypergraph};

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Weight of every hyperclique of `h` (including the empty one), by brute force.
fn clique_weights(h: &WeightedHypergraph) -> Vec<BigUint> {
    (0u32..1 << h.n)
        .filter_map(|m| {
            let set: Vec<usize> = (0..h.n).filter(|i| m >> i & 1 == 1).collect();
            let mut total = BigUint::ZERO;
            for t in combinations(set.len(), h.arity) {
                let tuple: Vec<usize> = t.iter().map(|&i| set[i]).collect();
                total += h.edges.get(&tuple)?;
            }
            Some(total)
        })
        .collect()
}

fn hypergraph(max_n: usize, max_w: u128) -> impl Strategy<Value = WeightedHypergraph> {
    (2usize..=3, 0usize..=max_n).prop_flat_map(move |(d, n)| {
        let tuples = combinations(n, d);
        let slots = tuples.len();
        (proptest::collection::vec(proptest::option::weighted(0.7, 0..=max_w), slots), 0..=max_w * 4).prop_map(move |(ws, t)| {
            let mut h = WeightedHypergraph::new(d, n, big(t));
            for (tuple, w) in tuples.iter().zip(ws) {
                if let Some(w) = w {
                    h.insert_edge(tuple.clone(), big(w));
                }
            }
            h
        })
    })
}

fn bipartite() -> impl Strategy<Value = NodeWeightedBipartiteGraph> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(a, b)| {
        let pairs: Vec<(usize, usize)> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        let count = pairs.len();
        (proptest::collection::vec(any::<bool>(), count), proptest::collection::vec(1u128..=u128::MAX, a + b)).prop_map(move |(keep, w)| {
            NodeWeightedBipartiteGraph {
                left: (0..a).collect(),
                right: (a..a + b).collect(),
                edges: pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e).collect(),
                weights: w.into_iter().map(big).collect(),
            }
        })
    })
}

fn round_trips(x: Instance) -> Result<(), TestCaseError> {
    let pretty = codec::serialize(&x);
    prop_assert_eq!(&codec::parse_str(&pretty).unwrap(), &x);
    let compact = codec::serialize_compact(&x);
    prop_assert!(!compact.contains('\n'));
    prop_assert_eq!(&codec::parse_str(&compact).unwrap(), &x);
    prop_assert_eq!(codec::serialize(&codec::parse_str(&pretty).unwrap()), pretty);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hypergraph_round_trip(h in hypergraph(6, u128::MAX / 8)) {
        round_trips(Instance::Hypergraph(h))?;
    }

    #[test]
    fn subset_sum_round_trip(items in proptest::collection::vec(1u128..=u128::MAX, 0..10), t in any::<u128>()) {
        let items = items.into_iter().map(big).collect();
        round_trips(Instance::SubsetSum(SubsetSumInstance { items, target: big(t) }))?;
    }

    #[test]
    fn bipartite_round_trip(g in bipartite()) {
        round_trips(Instance::Bipartite(g))?;
    }

    #[test]
    fn subset_sum_kernel_keeps_yes_instances(
        items in proptest::collection::vec(1u128..1 << 40, 1..8),
        pick in any::<u8>(),
        seed in any::<u64>(),
    ) {
        let target: u128 = items.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, x)| x).sum();
        let inst = SubsetSumInstance { items: items.iter().map(|&x| big(x)).collect(), target: big(target) };
        let k = kernelize_subset_sum(&inst, Epsilon::new(1, 10).unwrap(), seed, &KernelConfig::default()).unwrap();
        let p = &k.cert.p;
        let mut seen: Vec<usize> = k.kept.iter().chain(&k.cert.dropped).copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..items.len()).collect::<Vec<_>>());
        for (pos, &i) in k.kept.iter().enumerate() {
            prop_assert_eq!(&k.instance.items[pos], &(&inst.items[i] % p));
        }
        let answer = subset_sum_enumerate(&k.instance, &Caps::default()).unwrap().answer;
        prop_assert!(answer.is_yes());
    }

    #[test]
    fn hyperclique_kernel_keeps_yes_instances(h in hypergraph(4, 1 << 50), pick in any::<usize>(), seed in any::<u64>()) {
        let weights = clique_weights(&h);
        let mut h = h;
        h.target = weights[pick % weights.len()].clone();
        let k = kernelize_eewhc_exact(&h, Epsilon::new(1, 10).unwrap(), seed, &KernelConfig::default()).unwrap();
        prop_assert_eq!(k.instance.n, k.layout.total());
        for (tuple, w) in &h.edges {
            prop_assert_eq!(&k.instance.edges[tuple], &(w % &k.cert.p));
        }
        prop_assert!(solve_eewhc_exact(&k.instance, &Caps::default()).unwrap().answer.is_yes());
    }

    #[test]
    fn slack_covers_each_block(h in hypergraph(4, 40), lo in 0u128..100, len in 0u128..100) {
        let weights = clique_weights(&h);
        let family = interval_to_exact(&big(lo), &big(lo + len)).unwrap();
        for q in &family.queries {
            let expanded = realize_slack(&h, q);
            let direct = weights.iter().any(|w| (&q.lo..=&q.hi).contains(&w));
            let answer = solve_eewhc_exact(&expanded, &Caps::default()).unwrap().answer;
            prop_assert_eq!(answer.is_yes(), direct, "block [{}, {}]", q.lo, q.hi);
        }
    }
}
