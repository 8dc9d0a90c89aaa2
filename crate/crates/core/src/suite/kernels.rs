//! Checks on the randomized kernels and the Turing kernel.

use super::corpus::load_hypergraphs;
use super::{sample, Outcome, SuiteConfig};
use crate::codec::{serialize_compact, Instance};
use crate::compositions::hyperclique_to_csp;
use crate::exec::Exec;
use crate::instances::WeightedHypergraph;
use crate::interval_reduction::{turing_kernel_max_hyperclique, TuringKernel};
use crate::oracles::csp::{solve_csp, CspMode};
use crate::oracles::{solve_eewhc_exact, solve_eewhc_max};
use crate::prime_hash::{kernelize_csp_and, kernelize_eewhc_exact, KernelConfig};
use crate::rng::{derive_seed, seeded};
use num_bigint::BigUint;
use rand::Rng;
use std::collections::HashMap;

/// Declared bound on serialized kernel bits per n'^3 for d = 2.
pub const BITS_PER_CUBE: f64 = 32.0;

fn jobs(instances: usize, seeds: usize) -> Vec<(usize, u64)> {
    (0..instances).flat_map(|i| (0..seeds as u64).map(move |s| (i, s))).collect()
}

fn corpus(name: &str, take: usize, max_n: usize) -> Vec<WeightedHypergraph> {
    load_hypergraphs(name).into_iter().filter(|h| h.n <= max_n).take(take).collect()
}

/// Kernel answers of `(instance, seed)` pairs; errors are kept as strings.
fn kernel_answers(cfg: &SuiteConfig, corpus: &[WeightedHypergraph], seeds: usize) -> Vec<((usize, u64), Result<bool, String>)> {
    let kcfg = KernelConfig::default();
    let work = jobs(corpus.len(), seeds);
    let answers = cfg.exec.map(&work, |&(i, seed)| {
        let k = kernelize_eewhc_exact(&corpus[i], cfg.epsilon, seed, &kcfg).map_err(|e| e.to_string())?;
        solve_eewhc_exact(&k.instance, &cfg.caps).map(|r| r.is_yes()).map_err(|e| e.to_string())
    });
    work.into_iter().zip(answers).collect()
}

pub(super) fn completeness(cfg: &SuiteConfig) -> Outcome {
    let yes = corpus("eewc_yes.jsonl", cfg.scale.pick(40, 200), 6);
    let seeds = cfg.scale.pick(10, 50);
    let results = kernel_answers(cfg, &yes, seeds);
    let lost: Vec<_> = results.iter().filter(|(_, r)| r != &Ok(true)).map(|(k, r)| (*k, r.clone())).collect();
    Outcome::new(
        lost.is_empty(),
        format!("{} yes-instances × {seeds} seeds, {} kernels not yes{}", yes.len(), lost.len(), tail(&lost)),
    )
}

fn tail<T: std::fmt::Debug>(xs: &[T]) -> String {
    if xs.is_empty() {
        String::new()
    } else {
        format!(" [{}]", sample(xs))
    }
}

pub(super) fn soundness(cfg: &SuiteConfig) -> Outcome {
    let no = corpus("eewc_no.jsonl", cfg.scale.pick(40, 200), 6);
    let seeds = cfg.scale.pick(20, 200);
    let results = kernel_answers(cfg, &no, seeds);
    let errors: Vec<_> = results.iter().filter_map(|(k, r)| r.as_ref().err().map(|e| (*k, e.clone()))).collect();
    let false_yes = results.iter().filter(|(_, r)| r == &Ok(true)).count();
    let rate = false_yes as f64 / results.len() as f64;
    let eps = cfg.epsilon.as_f64();
    Outcome::new(
        errors.is_empty() && rate <= eps,
        format!(
            "{} no-instances × {seeds} seeds, false-yes rate {rate:.5} ({false_yes}/{}) vs ε = {}{}",
            no.len(),
            results.len(),
            cfg.epsilon,
            tail(&errors)
        ),
    )
}

/// Sieve of Eratosthenes up to `u`: primality table and prime count.
struct Sieve {
    composite: Vec<bool>,
    count: u64,
}

impl Sieve {
    fn new(u: usize) -> Self {
        let mut composite = vec![false; u + 1];
        composite[0] = true;
        if u >= 1 {
            composite[1] = true;
        }
        let mut i = 2;
        while i * i <= u {
            if !composite[i] {
                (i * i..=u).step_by(i).for_each(|j| composite[j] = true);
            }
            i += 1;
        }
        let count = composite.iter().filter(|c| !**c).count() as u64;
        Sieve { composite, count }
    }
}

/// M and U recomputed from scratch: M = 2^n (n + 1 + ⌈log₂ N⌉) ⌈1/ε⌉ and
/// U = max(64, ⌈2M(ln M + ln ln M)⌉).
fn pool_bounds(n: usize, magnitude: &BigUint, cfg: &SuiteConfig) -> (u128, u128) {
    let n = n.max(1) as u32;
    let big_n = magnitude.max(&BigUint::from(2u32)).clone();
    let log_n = (big_n - 1u32).bits() as u128;
    let inv = (cfg.epsilon.den() as u128).div_ceil(cfg.epsilon.num() as u128);
    let m = (1u128 << n) * (n as u128 + 1 + log_n) * inv;
    let mf = m as f64;
    let u = if m < 3 { 64 } else { ((2.0 * mf * (mf.ln() + mf.ln().ln())).ceil() as u128).max(64) };
    (m, u)
}

pub(super) fn size(cfg: &SuiteConfig) -> Outcome {
    let take = cfg.scale.pick(40, 200);
    let mut all = corpus("eewc_yes.jsonl", take, 6);
    all.extend(corpus("eewc_no.jsonl", take, 6));
    let seeds = cfg.scale.pick(2, 5);
    let kcfg = KernelConfig::default();
    let work = jobs(all.len(), seeds);
    let checked = cfg.exec.map(&work, |&(i, seed)| -> Result<(f64, u128, u128, BigUint), String> {
        let h = &all[i];
        let k = kernelize_eewhc_exact(h, cfg.epsilon, seed, &kcfg).map_err(|e| e.to_string())?;
        let n2 = k.instance.n;
        let cap = BigUint::from(n2 * n2) * &k.cert.p;
        if let Some((e, w)) = k.instance.edges.iter().find(|(_, w)| **w > cap) {
            return Err(format!("edge {e:?} weighs {w} > n'^2·p = {cap}"));
        }
        if k.instance.target > cap {
            return Err(format!("target {} > n'^2·p", k.instance.target));
        }
        let bits = 8 * serialize_compact(&Instance::Hypergraph(k.instance.clone())).len();
        let ratio = bits as f64 / (n2 as f64).powi(3);
        let (m, u) = pool_bounds(h.n, &h.magnitude(), cfg);
        Ok((ratio, m, u, k.cert.p))
    });
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut sieves: HashMap<u128, Sieve> = HashMap::new();
    for ((i, seed), r) in work.iter().zip(checked) {
        match r {
            Err(e) => failures.push(format!("#{i}/seed {seed}: {e}")),
            Ok((ratio, m, u, p)) => {
                worst = worst.max(ratio);
                if ratio > BITS_PER_CUBE {
                    failures.push(format!("#{i}/seed {seed}: {ratio:.2} bits per n'^3"));
                }
                let sieve = sieves.entry(u).or_insert_with(|| Sieve::new(u as usize));
                let p_small: Option<usize> = p.to_string().parse().ok();
                let in_pool = p_small.is_some_and(|p| p <= u as usize && !sieve.composite[p]);
                if !in_pool {
                    failures.push(format!("#{i}/seed {seed}: p = {p} is not a prime in [2, {u}]"));
                }
                if (sieve.count as u128) < m {
                    failures.push(format!("#{i}: only {} primes up to {u}, need M = {m}", sieve.count));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} kernels (d = 2): measured C = {worst:.2} bits per n'^3 (declared bound {BITS_PER_CUBE}), {} pools re-sieved, {} violations{}",
            work.len(),
            sieves.len(),
            failures.len(),
            tail(&failures)
        ),
    )
}

fn clique_to_csp_exhaustive(cfg: &SuiteConfig) -> Result<usize, String> {
    let max_n = cfg.scale.pick(4, 5);
    let mut cases = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<[usize; 2]> = (0..n).flat_map(|u| (u + 1..n).map(move |v| [u, v])).collect();
        for mask in 0u64..1 << pairs.len() {
            cases.push((n, pairs.clone(), mask));
        }
    }
    let bad = cfg.exec.map(&cases, |(n, pairs, mask)| {
        let mut rng = seeded(derive_seed(*mask, *n as u64));
        let mut h = WeightedHypergraph::new(2, *n, BigUint::default());
        for (b, e) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                h.insert_edge(e.to_vec(), rng.random_range(0u32..=3).into());
            }
        }
        let total: u32 = h.edges.values().map(|w| w.to_string().parse::<u32>().unwrap_or(0)).sum();
        let mut mismatches = Vec::new();
        for t in [0, rng.random_range(0..=total + 1), total, total + 1] {
            h.target = t.into();
            let Ok(phi) = hyperclique_to_csp(&h) else {
                mismatches.push(format!("n={n} mask={mask}: translation rejected"));
                continue;
            };
            let a = solve_eewhc_exact(&h, &cfg.caps).map(|r| r.is_yes());
            let b = solve_csp(&phi, CspMode::Exact, &cfg.caps).map(|r| r.result.is_yes());
            if a.is_err() || a != b {
                mismatches.push(format!("n={n} mask={mask} t={t}: clique {a:?} vs csp {b:?}"));
            }
        }
        mismatches
    });
    let bad: Vec<String> = bad.into_iter().flatten().collect();
    if bad.is_empty() {
        Ok(cases.len() * 4)
    } else {
        Err(format!("{} mismatches [{}]", bad.len(), sample(&bad)))
    }
}

fn csp_kernel_answers(cfg: &SuiteConfig, corpus: &[WeightedHypergraph], seeds: usize) -> Vec<Result<bool, String>> {
    let kcfg = KernelConfig::default();
    let work = jobs(corpus.len(), seeds);
    cfg.exec.map(&work, |&(i, seed)| {
        let phi = hyperclique_to_csp(&corpus[i]).map_err(|e| e.to_string())?;
        let k = kernelize_csp_and(&phi, cfg.epsilon, seed, &kcfg).map_err(|e| e.to_string())?;
        solve_csp(&k.formula, CspMode::Exact, &cfg.caps).map(|r| r.result.is_yes()).map_err(|e| e.to_string())
    })
}

pub(super) fn csp(cfg: &SuiteConfig) -> Outcome {
    let translation = clique_to_csp_exhaustive(cfg);
    let yes = corpus("eewc_yes.jsonl", cfg.scale.pick(20, 200), 5);
    let no = corpus("eewc_no.jsonl", cfg.scale.pick(20, 200), 5);
    let (yes_seeds, no_seeds) = (cfg.scale.pick(5, 50), cfg.scale.pick(10, 200));
    let complete = csp_kernel_answers(cfg, &yes, yes_seeds);
    let lost = complete.iter().filter(|r| **r != Ok(true)).count();
    let sound = csp_kernel_answers(cfg, &no, no_seeds);
    let errors = sound.iter().filter(|r| r.is_err()).count();
    let false_yes = sound.iter().filter(|r| **r == Ok(true)).count();
    let rate = false_yes as f64 / sound.len().max(1) as f64;
    let passed = translation.is_ok() && lost == 0 && errors == 0 && rate <= cfg.epsilon.as_f64();
    let translation = match translation {
        Ok(n) => format!("translation agrees on {n} exhaustive cases"),
        Err(e) => format!("translation: {e}"),
    };
    Outcome::new(
        passed,
        format!(
            "{translation}; CSP kernel: {lost} of {} yes runs lost ({} instances × {yes_seeds} seeds), false-yes rate {rate:.5} over {} no runs ({errors} errors)",
            complete.len(),
            yes.len(),
            sound.len()
        ),
    )
}

/// (oracle answer, family answer, (K, size bound) when a family was built)
type TuringRun = (bool, bool, Option<(usize, u64)>);

pub(super) fn turing(cfg: &SuiteConfig) -> Outcome {
    let corpus = load_hypergraphs("max_corpus.jsonl");
    let corpus = &corpus[..cfg.scale.pick(30, corpus.len())];
    let seeds = cfg.scale.pick(1, 3);
    let kcfg = KernelConfig::default();
    let work = jobs(corpus.len(), seeds);
    let results = cfg.exec.map(&work, |&(i, seed)| -> Result<TuringRun, String> {
        let h = &corpus[i];
        let truth = solve_eewhc_max(h, &cfg.caps).map_err(|e| e.to_string())?.max >= h.target;
        let tk = turing_kernel_max_hyperclique(h, cfg.epsilon, seed, &kcfg).map_err(|e| e.to_string())?;
        let sizes = match &tk {
            TuringKernel::Family { family, .. } => Some((family.k(), family.size_bound())),
            TuringKernel::Decided { .. } => None,
        };
        let answer = tk
            .decide(Exec::Sequential, |g| solve_eewhc_exact(g, &cfg.caps).map(|r| r.is_yes()))
            .map_err(|e| e.to_string())?;
        Ok((truth, answer.is_yes(), sizes))
    });
    let mut failures = Vec::new();
    let (mut false_neg, mut false_pos, mut families, mut max_k) = (0, 0, 0, 0);
    for ((i, seed), r) in work.iter().zip(results) {
        match r {
            Err(e) => failures.push(format!("#{i}/seed {seed}: {e}")),
            Ok((truth, answer, sizes)) => {
                if let Some((k, bound)) = sizes {
                    families += 1;
                    max_k = max_k.max(k);
                    if k as u64 > bound {
                        failures.push(format!("#{i}: K = {k} above {bound}"));
                    }
                }
                if truth && !answer {
                    false_neg += 1;
                    failures.push(format!("#{i}/seed {seed}: yes-instance lost"));
                } else if !truth && answer {
                    false_pos += 1;
                    failures.push(format!("#{i}/seed {seed}: no-instance answered yes"));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{} instances × {seeds} seeds ({families} query families, largest K = {max_k}): {false_neg} false negatives, {false_pos} false positives{}",
            corpus.len(),
            tail(&failures)
        ),
    )
}
