//! Deterministic instance corpora for the acceptance checks.
//!
//! The random corpora are also checked in under `fixtures/` as one compact
//! JSON instance per line; [`load_fixture`] reads those and a test keeps them
//! equal to the generators.

use crate::codec::{self, Instance};
use crate::instances::{DominationMode, RbdsInstance, WeightedHypergraph};
use crate::oracles::{solve_eewhc_exact, Caps};
use crate::rng::{derive_seed, seeded, KernelRng};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

pub const CORPUS_SEED: u64 = 0x5eed_c0de;

pub type Generator = fn() -> Vec<Instance>;

/// (file name, generator) for every checked-in corpus.
pub const FIXTURES: [(&str, Generator); 5] = [
    ("eewc_yes.jsonl", || wrap(exact_clique_corpus(true, 200))),
    ("eewc_no.jsonl", || wrap(exact_clique_corpus(false, 200))),
    ("rbds_pool.jsonl", || rbds_pools().into_iter().flat_map(|(_, p)| p).map(Instance::from).collect()),
    ("lift_pool.jsonl", || wrap(lift_pool())),
    ("max_corpus.jsonl", || wrap(max_clique_corpus(120))),
];

fn wrap(v: Vec<WeightedHypergraph>) -> Vec<Instance> {
    v.into_iter().map(Instance::from).collect()
}

pub fn fixture_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "eewc_yes.jsonl" => include_str!("../../fixtures/eewc_yes.jsonl"),
        "eewc_no.jsonl" => include_str!("../../fixtures/eewc_no.jsonl"),
        "rbds_pool.jsonl" => include_str!("../../fixtures/rbds_pool.jsonl"),
        "lift_pool.jsonl" => include_str!("../../fixtures/lift_pool.jsonl"),
        "max_corpus.jsonl" => include_str!("../../fixtures/max_corpus.jsonl"),
        _ => return None,
    })
}

pub fn render_fixture(instances: &[Instance]) -> String {
    instances.iter().map(|x| codec::serialize_compact(x) + "\n").collect()
}

pub fn load_fixture(name: &str) -> Vec<Instance> {
    let text = fixture_text(name).unwrap_or_else(|| panic!("unknown fixture {name}"));
    text.lines()
        .enumerate()
        .map(|(i, line)| codec::parse_str(line).unwrap_or_else(|e| panic!("{name}:{}: {e}", i + 1)))
        .collect()
}

pub fn load_hypergraphs(name: &str) -> Vec<WeightedHypergraph> {
    load_fixture(name)
        .into_iter()
        .map(|x| match x {
            Instance::Hypergraph(h) => h,
            other => panic!("{name}: expected eewhc, found {}", other.kind()),
        })
        .collect()
}

pub fn load_rbds(name: &str) -> Vec<RbdsInstance> {
    load_fixture(name)
        .into_iter()
        .map(|x| match x {
            Instance::Rbds(r) => r,
            other => panic!("{name}: expected rbds, found {}", other.kind()),
        })
        .collect()
}

fn random_weight(rng: &mut KernelRng, max: u64) -> BigUint {
    rng.random_range(0..=max).into()
}

/// Graph on `n` vertices keeping each pair with probability `density`.
pub fn random_graph(rng: &mut KernelRng, n: usize, max_w: u64, density: f64) -> WeightedHypergraph {
    let mut h = WeightedHypergraph::new(2, n, BigUint::default());
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                let w = random_weight(rng, max_w);
                h.insert_edge(vec![u, v], w);
            }
        }
    }
    h
}

/// A random clique grown greedily from a shuffled vertex order.
pub fn random_clique(rng: &mut KernelRng, h: &WeightedHypergraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.n).collect();
    order.shuffle(rng);
    let want = rng.random_range(1..=h.n.max(1));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.len() == want {
            break;
        }
        if clique.iter().all(|&u| h.weight(&[u.min(v), u.max(v)]).is_some()) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

fn weight_scale(rng: &mut KernelRng) -> u64 {
    match rng.random_range(0..4) {
        0 | 1 => 1_000_000_000_000_000_000,
        2 => 1_000_000,
        _ => 20,
    }
}

/// Exact-weight clique instances with 2 ≤ n ≤ 6. Yes-instances take the
/// weight of a planted clique as target; no-instances move it by a small or
/// large offset and are kept only if the oracle rejects them.
pub fn exact_clique_corpus(yes: bool, count: usize) -> Vec<WeightedHypergraph> {
    let caps = Caps::default();
    let mut rng = seeded(derive_seed(CORPUS_SEED, if yes { 1 } else { 2 }));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=6);
        let max_w = weight_scale(&mut rng);
        let density = rng.random_range(0.4..1.0);
        let mut h = random_graph(&mut rng, n, max_w, density);
        let clique = random_clique(&mut rng, &h);
        let w = h.clique_weight(&clique).expect("grown as a clique");
        h.target = if yes {
            w
        } else if rng.random_bool(0.5) {
            w + rng.random_range(1u64..=3)
        } else {
            w + random_weight(&mut rng, max_w)
        };
        let answer = solve_eewhc_exact(&h, &caps).expect("small instance").is_yes();
        if answer == yes {
            out.push(h);
        }
    }
    out
}

/// Budget-1 at-most instances for every shape (reds, blues) ∈ {1, 2}², with
/// at least one yes and one no per shape.
pub fn rbds_pools() -> Vec<((usize, usize), Vec<RbdsInstance>)> {
    let make = |rows: &[&str]| RbdsInstance {
        reds: rows.len(),
        blues: rows[0].len(),
        adjacency: rows.iter().map(|r| r.bytes().map(|b| b == b'1').collect()).collect(),
        budget: 1,
        mode: DominationMode::AtMost,
    };
    vec![
        ((1, 1), vec![make(&["1"]), make(&["0"])]),
        ((1, 2), vec![make(&["11"]), make(&["10"]), make(&["00"])]),
        ((2, 1), vec![make(&["1", "0"]), make(&["0", "0"]), make(&["0", "1"])]),
        ((2, 2), vec![make(&["11", "00"]), make(&["10", "01"]), make(&["00", "00"])]),
    ]
}

/// Twenty graphs on four vertices with target 6, ten yes and ten no, shared
/// so any pair can be lifted.
pub fn lift_pool() -> Vec<WeightedHypergraph> {
    let caps = Caps::default();
    let mut rng = seeded(derive_seed(CORPUS_SEED, 3));
    let (mut yes, mut no) = (Vec::new(), Vec::new());
    while yes.len() < 10 || no.len() < 10 {
        let mut h = random_graph(&mut rng, 4, 4, 0.7);
        h.target = 6u32.into();
        let bucket = if solve_eewhc_exact(&h, &caps).expect("small instance").is_yes() { &mut yes } else { &mut no };
        if bucket.len() < 10 {
            bucket.push(h);
        }
    }
    yes.into_iter().zip(no).flat_map(|(a, b)| [a, b]).collect()
}

/// Max-weight instances with n ≤ 5 and weights ≤ 6, targets near the optimum.
pub fn max_clique_corpus(count: usize) -> Vec<WeightedHypergraph> {
    let mut rng = seeded(derive_seed(CORPUS_SEED, 4));
    (0..count)
        .map(|i| {
            let n = rng.random_range(2..=5);
            let density = rng.random_range(0.4..1.0);
            let mut h = random_graph(&mut rng, n, 6, density);
            let best = crate::oracles::solve_eewhc_max(&h, &Caps::default()).expect("small instance").max;
            let best = best.to_string().parse::<i64>().expect("small");
            let t = match i % 10 {
                0 => 0,
                1 => rng.random_range(0..=(n * n * 6) as i64 + 2),
                _ => (best + rng.random_range(-2..=2)).max(1),
            };
            h.target = (t as u64).into();
            h
        })
        .collect()
}

/// Four reds, five blues, budget 2; reds 1 and 3 are the only exact cover.
pub fn planted_erbds() -> RbdsInstance {
    let rows = ["11000", "11100", "00110", "00011"];
    RbdsInstance {
        reds: 4,
        blues: 5,
        adjacency: rows.iter().map(|r| r.bytes().map(|b| b == b'1').collect()).collect(),
        budget: 2,
        mode: DominationMode::Exact,
    }
}
