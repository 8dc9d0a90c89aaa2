//! Checks on the lower-bound reductions.

use super::corpus::{load_hypergraphs, load_rbds, planted_erbds};
use super::{sample, Outcome, SuiteConfig};
use crate::compositions::{
    characteristic_polynomial, erbds_to_subset_sum, hyperclique_lift, language_degree, lift_layout_size,
    rbds_cross_compose_with, ComposedInstance, Padding,
};
use crate::instances::{CspConstraint, DominationMode, RbdsInstance};
use crate::oracles::hyperclique::all_hypercliques;
use crate::oracles::{solve_eewhc_exact, solve_rbds, solve_subset_sum};
use crate::rng::{derive_seed, seeded};
use num_bigint::BigInt;
use rand::Rng;

const Z: usize = 2;
const TUPLE: usize = 8;

/// Every 8-tuple over each shape's pool, as (shape, input indices).
fn tuples() -> Vec<(Vec<RbdsInstance>, Vec<usize>)> {
    let all = load_rbds("rbds_pool.jsonl");
    let mut pools: Vec<Vec<RbdsInstance>> = Vec::new();
    for r in all {
        match pools.last_mut() {
            Some(p) if (p[0].reds, p[0].blues) == (r.reds, r.blues) => p.push(r),
            _ => pools.push(vec![r]),
        }
    }
    let mut out = Vec::new();
    for pool in pools {
        let count = pool.len().pow(TUPLE as u32);
        for code in 0..count {
            let picks: Vec<usize> = (0..TUPLE).map(|pos| code / pool.len().pow(pos as u32) % pool.len()).collect();
            out.push((pool.clone(), picks));
        }
    }
    out
}

fn compose(pool: &[RbdsInstance], picks: &[usize], padding: Padding) -> Result<ComposedInstance, String> {
    let inputs: Vec<RbdsInstance> = picks.iter().map(|&i| pool[i].clone()).collect();
    rbds_cross_compose_with(&inputs, padding).map_err(|e| e.to_string())
}

/// (OR mismatches, size-formula violations, compositions) under one padding.
fn or_sweep(cfg: &SuiteConfig, padding: Padding) -> (Vec<String>, Vec<String>, usize, usize) {
    let work = tuples();
    let results = cfg.exec.map(&work, |(pool, picks)| -> Result<(bool, bool, usize, usize), String> {
        let c = compose(pool, picks, padding)?;
        let or = picks.iter().map(|&i| solve_rbds(&pool[i], &cfg.caps).map(|r| r.is_yes())).collect::<Result<Vec<_>, _>>();
        let or = or.map_err(|e| e.to_string())?.into_iter().any(|b| b);
        let composed = solve_eewhc_exact(&c.instance, &cfg.caps).map_err(|e| e.to_string())?.is_yes();
        let (m, n, d) = (pool[0].reds, pool[0].blues, pool[0].budget);
        let formula = Z + Z * m + Z + (n * Z + 1) * (d - 1);
        Ok((or, composed, c.instance.n, formula))
    });
    let (mut wrong, mut size, mut vertices) = (Vec::new(), Vec::new(), 0);
    for ((pool, picks), r) in work.iter().zip(results) {
        let shape = (pool[0].reds, pool[0].blues);
        match r {
            Err(e) => wrong.push(format!("{shape:?} {picks:?}: {e}")),
            Ok((or, composed, got, formula)) => {
                vertices = vertices.max(got);
                if or != composed {
                    wrong.push(format!("{shape:?} {picks:?}: OR {or}, composed {composed}"));
                }
                if got != formula {
                    size.push(format!("{shape:?}: |V| = {got}, formula {formula}"));
                }
            }
        }
    }
    (wrong, size, work.len(), vertices)
}

pub(super) fn or_equivalence(cfg: &SuiteConfig) -> Outcome {
    let (wrong, size, total, _) = or_sweep(cfg, Padding::Standard);
    let (wide_wrong, _, _, wide_v) = or_sweep(cfg, Padding::Widened);
    let lost = wrong.iter().filter(|w| w.ends_with("OR true, composed false")).count();
    let mut detail = format!(
        "{total} compositions of 8 inputs (z = 2, d = 1, shapes {{1,2}}²): {} answer mismatches ({lost} yes-tuples composed to no), {} size-formula violations",
        wrong.len(),
        size.len()
    );
    if !wrong.is_empty() {
        detail += &format!(" [{}]", sample(&wrong));
    }
    if !size.is_empty() {
        detail += &format!(" [{}]", sample(&size));
    }
    detail += &format!(
        "; with widened padding (one extra pad per block digit, up to {wide_v} vertices): {} mismatches",
        wide_wrong.len()
    );
    Outcome::new(wrong.is_empty() && size.is_empty(), detail)
}

pub(super) fn no_carry(cfg: &SuiteConfig) -> Outcome {
    let work = tuples();
    let results = cfg.exec.map(&work, |(pool, picks)| -> Result<(usize, Vec<String>), String> {
        let c = compose(pool, picks, Padding::Standard)?;
        let base = c.layout.base();
        let cliques = all_hypercliques(&c.instance);
        let bad = cliques
            .iter()
            .filter_map(|(clique, _)| {
                let sums = c.position_sums(clique);
                sums.iter().any(|&s| s >= base).then(|| format!("{picks:?} clique {clique:?} sums {sums:?} base {base}"))
            })
            .collect();
        Ok((cliques.len(), bad))
    });
    let mut bad = Vec::new();
    let mut cliques = 0;
    for r in results {
        match r {
            Ok((n, b)) => {
                cliques += n;
                bad.extend(b);
            }
            Err(e) => bad.push(e),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{cliques} cliques over {} compositions, {} digit sums ≥ m + d + 2{}", work.len(), bad.len(), fmt_tail(&bad)),
    )
}

fn fmt_tail(xs: &[String]) -> String {
    if xs.is_empty() {
        String::new()
    } else {
        format!(" [{}]", sample(xs))
    }
}

pub(super) fn lift(cfg: &SuiteConfig) -> Outcome {
    let pool = load_hypergraphs("lift_pool.jsonl");
    let pairs: Vec<(usize, usize)> = (0..pool.len()).flat_map(|a| (0..pool.len()).map(move |b| (a, b))).collect();
    let answers: Vec<bool> = pool.iter().map(|h| solve_eewhc_exact(h, &cfg.caps).is_ok_and(|r| r.is_yes())).collect();
    let bad: Vec<String> = cfg
        .exec
        .map(&pairs, |&(a, b)| -> Option<String> {
            let lifted = match hyperclique_lift(&[pool[a].clone(), pool[b].clone()], 3) {
                Ok(l) => l,
                Err(e) => return Some(format!("({a}, {b}): {e}")),
            };
            if lifted.n != lift_layout_size(pool[a].n, Z, 3) {
                return Some(format!("({a}, {b}): {} vertices", lifted.n));
            }
            let got = solve_eewhc_exact(&lifted, &cfg.caps).map(|r| r.is_yes());
            let want = answers[a] || answers[b];
            (got != Ok(want)).then(|| format!("({a}, {b}): lifted {got:?}, OR {want}"))
        })
        .into_iter()
        .flatten()
        .collect();
    let yes = answers.iter().filter(|a| **a).count();
    Outcome::new(
        bad.is_empty(),
        format!("{} ordered pairs from a pool of {} ({yes} yes), {} mismatches{}", pairs.len(), pool.len(), bad.len(), fmt_tail(&bad)),
    )
}

pub(super) fn erbds(cfg: &SuiteConfig) -> Outcome {
    let mut cases = Vec::new();
    for reds in 1..=3usize {
        for blues in 1..=3usize {
            for mask in 0u32..1 << (reds * blues) {
                for budget in 1..=reds {
                    cases.push((reds, blues, mask, budget));
                }
            }
        }
    }
    let mut bad: Vec<String> = cfg
        .exec
        .map(&cases, |&(reds, blues, mask, budget)| -> Option<String> {
            let inst = RbdsInstance {
                reds,
                blues,
                adjacency: (0..reds).map(|x| (0..blues).map(|q| mask >> (x * blues + q) & 1 == 1).collect()).collect(),
                budget,
                mode: DominationMode::Exact,
            };
            let ss = match erbds_to_subset_sum(&inst) {
                Ok(s) => s,
                Err(e) => return Some(format!("{reds}×{blues} mask {mask} d {budget}: {e}")),
            };
            let a = solve_rbds(&inst, &cfg.caps).map(|r| r.is_yes());
            let b = solve_subset_sum(&ss, &cfg.caps).map(|r| r.is_yes());
            (a.is_err() || a != b).then(|| format!("{reds}×{blues} mask {mask} d {budget}: erbds {a:?}, subset sum {b:?}"))
        })
        .into_iter()
        .flatten()
        .collect();

    let planted = planted_erbds();
    let planted_note = match erbds_to_subset_sum(&planted) {
        Err(e) => {
            bad.push(format!("planted: {e}"));
            String::new()
        }
        Ok(ss) => {
            let pair = &ss.items[1] + &ss.items[3];
            let witness = solve_subset_sum(&ss, &cfg.caps).ok().and_then(|r| r.witness);
            if pair != ss.target {
                bad.push(format!("planted: N_2 + N_4 = {pair}, target {}", ss.target));
            }
            if witness.as_deref() != Some(&[1, 3][..]) {
                bad.push(format!("planted: subset-sum witness {witness:?}"));
            }
            if !planted.is_solution(&[1, 3]) {
                bad.push("planted: {r2, r4} is not an exact dominating set".into());
            }
            format!("; planted 4×5 example: target {} = N_2 + N_4 = {} + {}", ss.target, ss.items[1], ss.items[3])
        }
    };
    Outcome::new(
        bad.is_empty(),
        format!("{} exact instances with n_R, n_B ≤ 3, {} mismatches{}{planted_note}", cases.len(), bad.len(), fmt_tail(&bad)),
    )
}

pub(super) fn polynomials(cfg: &SuiteConfig) -> Outcome {
    let count = cfg.scale.pick(200, 1000);
    let mut rng = seeded(derive_seed(super::corpus::CORPUS_SEED, 9));
    let constraints: Vec<CspConstraint> = (0..count)
        .map(|_| {
            let k = rng.random_range(1..=6usize);
            let table: Vec<bool> = (0..1 << k).map(|_| rng.random_bool(0.5)).collect();
            CspConstraint::from_fn(k, |args| {
                let row = args.iter().enumerate().fold(0usize, |acc, (j, &b)| acc | (b as usize) << j);
                table[row]
            })
        })
        .collect();
    let mut bad: Vec<String> = cfg
        .exec
        .map(&constraints, |f| -> Option<String> {
            let p = match characteristic_polynomial(f) {
                Ok(p) => p,
                Err(e) => return Some(e.to_string()),
            };
            (0..1u64 << f.arity).find_map(|x| {
                let value: BigInt = p.coeffs.iter().filter(|(m, _)| *m & x == **m).map(|(_, c)| c).sum();
                let want = BigInt::from(f.eval_row(x as usize) as u8);
                (value != want).then(|| format!("arity {} row {x}: P = {value}, f = {want}", f.arity))
            })
        })
        .into_iter()
        .flatten()
        .collect();
    for d in 1..=6 {
        let and = CspConstraint::and(d);
        let degree = language_degree(std::slice::from_ref(&and));
        let poly_degree = characteristic_polynomial(&and).map(|p| p.degree());
        if degree != Ok(d) || poly_degree != Ok(d) {
            bad.push(format!("AND_{d}: language degree {degree:?}, polynomial degree {poly_degree:?}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{count} random constraints (arity ≤ 6) on every point, AND_1..AND_6 degrees; {} failures{}", bad.len(), fmt_tail(&bad)),
    )
}

