//! Randomized kernels by hashing weights modulo a random prime.
//!
//! A prime p is drawn from a pool of at least M primes, where
//! M = 2^n · (n + 1 + ⌈log₂ N⌉) · ⌈1/ε⌉. For a fixed no-instance at most a
//! ε fraction of the pool maps a wrong subset sum onto the target, so the
//! reduced instance is a false yes with probability at most ε. Reducing mod p
//! loses the multiple of p that an actual solution carries, and slack
//! gadgets put it back: extra vertices (or items) whose contributions cover
//! every multiple i·p the original part could need. Yes-instances therefore
//! always stay yes.

use crate::instances::*;
use crate::primes::{ceil_log2, is_probable_prime, uniform_inclusive};
use crate::rng::seeded;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use thiserror::Error;

pub const PRIMALITY_ROUNDS: u32 = 64;

/// Error budget ε as a rational num/den with 0 < ε < 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self, PrimeHashError> {
        if num == 0 || num >= den {
            return Err(PrimeHashError::BadEpsilon(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Epsilon { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// ⌈1/ε⌉.
    pub fn inverse_ceil(&self) -> u64 {
        self.den.div_ceil(self.num)
    }

    /// ε / k, for splitting a budget over k queries.
    pub fn divided_by(&self, k: u64) -> Result<Self, PrimeHashError> {
        let den = self.den.checked_mul(k.max(1)).ok_or_else(|| PrimeHashError::BadEpsilon(format!("{self}/{k}")))?;
        Epsilon::new(self.num, den)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Epsilon {
    type Err = PrimeHashError;

    /// Accepts `p/q` or a plain decimal such as `0.1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PrimeHashError::BadEpsilon(s.to_owned());
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return Epsilon::new(p, q);
        }
        let (int, frac) = s.split_once('.').ok_or_else(bad)?;
        if !int.trim_start_matches('0').is_empty() || frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Epsilon::new(frac.parse().map_err(|_| bad())?, 10u64.pow(frac.len() as u32))
    }
}

impl Serialize for Epsilon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn ser_dec<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrimeHashError {
    #[error("invalid instance: {0}")]
    Invalid(#[from] Violation),
    #[error("epsilon must be a rational strictly between 0 and 1, got {0}")]
    BadEpsilon(String),
    #[error("n = {n} is above the kernel cap {cap}: the prime pool 2^n·… would be impractically large")]
    TooLarge { n: usize, cap: usize },
    #[error("arity {0} is below 2; degree-1 instances go through the subset-sum kernel")]
    Arity(usize),
    #[error("unsupported constraint language: {0}")]
    Language(String),
}

/// Limits for the kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelConfig {
    pub n_cap: usize,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig { n_cap: 24 }
    }
}

/// Everything needed to re-derive and audit the sampled modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulusCert {
    #[serde(serialize_with = "ser_dec")]
    pub p: BigUint,
    /// M: lower bound on the number of primes in the sampling pool.
    #[serde(serialize_with = "ser_dec")]
    pub pool_size: BigUint,
    /// U: the pool is every prime in [2, U].
    #[serde(serialize_with = "ser_dec")]
    pub upper_bound: BigUint,
    pub epsilon: Epsilon,
    pub seed: u64,
    pub n: usize,
    pub log_n: u64,
    /// Candidates drawn before the prime was found.
    pub draws: u64,
    /// Indices of subset-sum items that vanished mod p.
    pub dropped: Vec<usize>,
}

/// M = 2^n · (n + 1 + log_n) · ⌈1/ε⌉.
pub fn pool_size(n: usize, log_n: u64, eps: Epsilon) -> BigUint {
    (BigUint::one() << n) * BigUint::from(n as u64 + 1 + log_n) * BigUint::from(eps.inverse_ceil())
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit prefix");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// U = max(64, ⌈2M(ln M + ln ln M)⌉), at least the M-th prime for M ≥ 6.
pub fn pool_upper_bound(m: &BigUint) -> BigUint {
    let floor = BigUint::from(64u32);
    if m < &BigUint::from(3u32) {
        return floor;
    }
    let u = if m.bits() <= 52 {
        let mf = m.to_f64().expect("small");
        BigUint::from((2.0 * mf * (mf.ln() + mf.ln().ln())).ceil() as u64)
    } else {
        let lm = ln_big(m);
        let factor = 2.0 * (lm + lm.ln());
        let scaled = BigUint::from((factor * 4294967296.0).ceil() as u128);
        (m * scaled + BigUint::from(u32::MAX)) >> 32u32
    };
    u.max(floor)
}

/// Draws uniform integers from [2, U] until one passes 64 Miller–Rabin rounds.
pub fn sample_modulus(n: usize, big_n: &BigUint, eps: Epsilon, seed: u64, cfg: &KernelConfig) -> Result<ModulusCert, PrimeHashError> {
    if n > cfg.n_cap {
        return Err(PrimeHashError::TooLarge { n, cap: cfg.n_cap });
    }
    let n = n.max(1);
    let log_n = ceil_log2(&big_n.max(&BigUint::from(2u32)).clone());
    let pool = pool_size(n, log_n, eps);
    let upper = pool_upper_bound(&pool);
    let mut rng = seeded(seed);
    let two = BigUint::from(2u32);
    let mut draws = 0u64;
    let p = loop {
        draws += 1;
        let x = uniform_inclusive(&mut rng, &two, &upper);
        if is_probable_prime(&x, PRIMALITY_ROUNDS, &mut rng) {
            break x;
        }
    };
    Ok(ModulusCert { p, pool_size: pool, upper_bound: upper, epsilon: eps, seed, n, log_n, draws, dropped: Vec::new() })
}

/// Where the gadget vertices (or variables) of a kernel live.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetLayout {
    pub original: Range<usize>,
    /// U_Z: d − 1 vertices shared by every weighted gadget edge.
    pub apex: Range<usize>,
    /// U_0..U_{d−1}: n vertices each; U_Z ∪ {v} weighs n^j·p for v ∈ U_j.
    pub digit_blocks: Vec<Range<usize>>,
}

impl GadgetLayout {
    fn new(n: usize, d: usize) -> Self {
        let apex = n..n + d - 1;
        let digit_blocks = (0..d).map(|j| n + d - 1 + j * n..n + d - 1 + (j + 1) * n).collect();
        GadgetLayout { original: 0..n, apex, digit_blocks }
    }

    pub fn total(&self) -> usize {
        self.digit_blocks.last().map_or(self.apex.end, |b| b.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercliqueKernel {
    pub instance: WeightedHypergraph,
    pub cert: ModulusCert,
    pub layout: GadgetLayout,
}

/// Exact-weight hyperclique kernel.
///
/// Output vertices: the n originals, U_Z, then U_0..U_{d−1}. Original edges
/// keep their tuples with weight w mod p; U_Z ∪ {v} for v ∈ U_j weighs n^j·p;
/// every other d-set with a new vertex is a zero-weight hyperedge. Target:
/// (t mod p) + n^d·p.
pub fn kernelize_eewhc_exact(h: &WeightedHypergraph, eps: Epsilon, seed: u64, cfg: &KernelConfig) -> Result<HypercliqueKernel, PrimeHashError> {
    if h.arity < 2 {
        return Err(PrimeHashError::Arity(h.arity));
    }
    h.validate()?;
    let cert = sample_modulus(h.n, &h.magnitude(), eps, seed, cfg)?;
    let p = &cert.p;
    let (n, d) = (h.n, h.arity);
    let layout = GadgetLayout::new(n, d);
    let total = layout.total();
    let mut out = WeightedHypergraph::new(d, total, &h.target % p + BigUint::from(n).pow(d as u32) * p);
    for (tuple, w) in &h.edges {
        out.edges.insert(tuple.clone(), w % p);
    }
    let apex: Vec<usize> = layout.apex.clone().collect();
    let mut block_weight = HashMap::new();
    for (j, block) in layout.digit_blocks.iter().enumerate() {
        let w = BigUint::from(n).pow(j as u32) * p;
        for v in block.clone() {
            block_weight.insert(v, w.clone());
        }
    }
    let all: Vec<usize> = (0..total).collect();
    for_each_subset(&all, d, |set| {
        if set[d - 1] < n {
            return;
        }
        let is_gadget = set[..d - 1] == apex[..] && block_weight.contains_key(&set[d - 1]);
        let w = if is_gadget { block_weight[&set[d - 1]].clone() } else { BigUint::zero() };
        out.edges.insert(set.to_vec(), w);
    });
    Ok(HypercliqueKernel { instance: out, cert, layout })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumKernel {
    pub instance: SubsetSumInstance,
    pub cert: ModulusCert,
    /// Positions of the slack items p·2^0, …, p·2^L in the output.
    pub slack: Range<usize>,
    /// Output position → input index for the kept items.
    pub kept: Vec<usize>,
}

/// Subset-sum kernel: items mod p (zeros dropped and recorded), slack items
/// p·2^0..p·2^L with L = ⌈log₂ n⌉, target (t mod p) + p·(2^(L+1) − 1).
pub fn kernelize_subset_sum(inst: &SubsetSumInstance, eps: Epsilon, seed: u64, cfg: &KernelConfig) -> Result<SubsetSumKernel, PrimeHashError> {
    inst.validate()?;
    let n = inst.items.len();
    let magnitude = inst.items.iter().max().cloned().unwrap_or_default().max(inst.target.clone()).max(BigUint::one());
    let mut cert = sample_modulus(n, &magnitude, eps, seed, cfg)?;
    let p = cert.p.clone();
    let mut items = Vec::new();
    let mut kept = Vec::new();
    for (i, x) in inst.items.iter().enumerate() {
        let r = x % &p;
        if r.is_zero() {
            cert.dropped.push(i);
        } else {
            items.push(r);
            kept.push(i);
        }
    }
    let levels = ceil_log2(&BigUint::from(n.max(1))) as usize;
    let start = items.len();
    for j in 0..=levels {
        items.push(&p << j);
    }
    let slack = start..items.len();
    let target = &inst.target % &p + &p * ((BigUint::one() << (levels + 1)) - 1u32);
    Ok(SubsetSumKernel { instance: SubsetSumInstance { items, target }, cert, slack, kept })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspKernel {
    pub formula: CspFormula,
    pub cert: ModulusCert,
    pub layout: GadgetLayout,
}

fn euclid_mod(x: &BigInt, p: &BigUint) -> BigUint {
    let pi = BigInt::from_biguint(Sign::Plus, p.clone());
    x.mod_floor(&pi).to_biguint().expect("mod_floor by a positive modulus is non-negative")
}

/// Merges applications with identical index tuples, summing weights. The
/// first occurrence fixes the position.
pub fn merge_duplicate_applications(phi: &CspFormula) -> CspFormula {
    let mut order: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut sums: HashMap<(usize, Vec<usize>), BigInt> = HashMap::new();
    for a in &phi.applications {
        let key = (a.constraint, a.indices.clone());
        match sums.get_mut(&key) {
            Some(w) => *w += &a.weight,
            None => {
                order.push(key.clone());
                sums.insert(key, a.weight.clone());
            }
        }
    }
    let applications = order
        .into_iter()
        .map(|key| {
            let weight = sums[&key].clone();
            CspApplication { constraint: key.0, indices: key.1, weight }
        })
        .collect();
    CspFormula { applications, ..phi.clone() }
}

/// CSP kernel for the language {AND_d}, d ≥ 2: same gadget as the hyperclique
/// kernel with variables in place of vertices.
pub fn kernelize_csp_and(phi: &CspFormula, eps: Epsilon, seed: u64, cfg: &KernelConfig) -> Result<CspKernel, PrimeHashError> {
    phi.validate()?;
    let d = match phi.language.as_slice() {
        [f] if f.is_and() && f.arity >= 2 => f.arity,
        _ => {
            return Err(PrimeHashError::Language(
                "only the single-constraint language {AND_d} with d ≥ 2 is supported; gadget toggling for other constraints is unresolved".into(),
            ))
        }
    };
    let merged = merge_duplicate_applications(phi);
    let magnitude = merged
        .applications
        .iter()
        .map(|a| a.weight.abs())
        .chain(std::iter::once(phi.target.abs()))
        .max()
        .and_then(|m| m.to_biguint())
        .unwrap_or_default()
        .max(BigUint::one());
    let cert = sample_modulus(phi.n, &magnitude, eps, seed, cfg)?;
    let p = &cert.p;
    let n = phi.n;
    let layout = GadgetLayout::new(n, d);
    let mut applications: Vec<CspApplication> = merged
        .applications
        .iter()
        .map(|a| CspApplication { constraint: 0, indices: a.indices.clone(), weight: BigInt::from(euclid_mod(&a.weight, p)) })
        .collect();
    let apex: Vec<usize> = layout.apex.clone().collect();
    for (j, block) in layout.digit_blocks.iter().enumerate() {
        let w = BigInt::from(BigUint::from(n).pow(j as u32) * p);
        for v in block.clone() {
            let mut indices = apex.clone();
            indices.push(v);
            applications.push(CspApplication { constraint: 0, indices, weight: w.clone() });
        }
    }
    let target = BigInt::from(euclid_mod(&phi.target, p) + BigUint::from(n).pow(d as u32) * p);
    let formula = CspFormula { n: layout.total(), language: vec![CspConstraint::and(d)], applications, target };
    Ok(CspKernel { formula, cert, layout })
}
