//! From "weight in [l, u]" to a few exact-weight queries, and the Turing
//! kernel for max-weight hyperclique built on it.
//!
//! [l, u] is cut greedily into aligned dyadic blocks [a, a + 2^j − 1]. A
//! weight x lies in such a block iff x + s = a + 2^j − 1 for some
//! s ∈ [0, 2^j − 1], and s ranges over exactly the subset sums of the slack
//! values 1, 2, …, 2^(j−1). So each block becomes one exact query over the
//! universe extended by j slack items.

use crate::exec::Exec;
use crate::instances::{for_each_subset, Validate, WeightedHypergraph};
use crate::oracles::Answer;
use crate::prime_hash::{kernelize_eewhc_exact, Epsilon, HypercliqueKernel, KernelConfig, PrimeHashError};
use crate::rng::derive_seed;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactQuery {
    /// The block [lo, hi] this query answers for.
    pub lo: BigUint,
    pub hi: BigUint,
    pub slack: Vec<BigUint>,
    pub target: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactQueryFamily {
    pub lo: BigUint,
    pub hi: BigUint,
    pub queries: Vec<ExactQuery>,
}

impl ExactQueryFamily {
    pub fn k(&self) -> usize {
        self.queries.len()
    }

    /// 2⌈log₂(u − l + 1)⌉ + 1.
    pub fn size_bound(&self) -> u64 {
        2 * crate::primes::ceil_log2(&(&self.hi - &self.lo + 1u32)) + 1
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("empty interval: lower end {lo} exceeds upper end {hi}")]
    Empty { lo: BigUint, hi: BigUint },
    #[error(transparent)]
    Kernel(#[from] PrimeHashError),
}

fn trailing_zeros(a: &BigUint) -> Option<u64> {
    a.trailing_zeros()
}

/// Dyadic cover of [l, u], one exact query per block.
pub fn interval_to_exact(l: &BigUint, u: &BigUint) -> Result<ExactQueryFamily, IntervalError> {
    if l > u {
        return Err(IntervalError::Empty { lo: l.clone(), hi: u.clone() });
    }
    let mut queries = Vec::new();
    let mut a = l.clone();
    while &a <= u {
        // largest block that is aligned at a and still fits under u
        let room = u - &a + 1u32;
        let fit = room.bits() - 1;
        let j = trailing_zeros(&a).map_or(fit, |tz| tz.min(fit));
        let size = BigUint::one() << j;
        let hi = &a + &size - 1u32;
        queries.push(ExactQuery {
            lo: a.clone(),
            hi: hi.clone(),
            slack: (0..j).map(|i| BigUint::one() << i).collect(),
            target: hi.clone(),
        });
        a = hi + 1u32;
    }
    Ok(ExactQueryFamily { lo: l.clone(), hi: u.clone(), queries })
}

/// The family's answer for a plain universe of item weights: is some query
/// met by a subset of items plus slack?
pub fn family_accepts(items: &[BigUint], family: &ExactQueryFamily) -> bool {
    family.queries.iter().any(|q| {
        let mut all: Vec<BigUint> = items.to_vec();
        all.extend(q.slack.iter().cloned());
        subset_sum_exists(&all, &q.target)
    })
}

fn subset_sum_exists(items: &[BigUint], target: &BigUint) -> bool {
    let mut sums = std::collections::BTreeSet::from([BigUint::zero()]);
    for x in items {
        let more: Vec<BigUint> = sums.iter().map(|s| s + x).filter(|s| s <= target).collect();
        sums.extend(more);
    }
    sums.contains(target)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMember {
    pub query: ExactQuery,
    /// H with the query's slack realized as gadget vertices, before hashing.
    pub expanded: WeightedHypergraph,
    pub kernel: HypercliqueKernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TuringKernel {
    /// Settled without queries: t = 0 (the empty clique) or t above n^d·max w.
    Decided { answer: Answer, reason: &'static str },
    Family { family: ExactQueryFamily, epsilon_per_query: Epsilon, members: Vec<TuringMember> },
}

impl TuringKernel {
    pub fn instances(&self) -> Vec<&WeightedHypergraph> {
        match self {
            TuringKernel::Decided { .. } => Vec::new(),
            TuringKernel::Family { members, .. } => members.iter().map(|m| &m.kernel.instance).collect(),
        }
    }

    /// OR of the oracle over the members (or the settled answer).
    pub fn decide<E, F>(&self, exec: Exec, oracle: F) -> Result<Answer, E>
    where
        E: Send,
        F: Fn(&WeightedHypergraph) -> Result<bool, E> + Sync + Send,
    {
        match self {
            TuringKernel::Decided { answer, .. } => Ok(*answer),
            TuringKernel::Family { members, .. } => {
                let instances: Vec<&WeightedHypergraph> = members.iter().map(|m| &m.kernel.instance).collect();
                decide_with_oracle(&instances, exec, |h| oracle(h))
            }
        }
    }
}

/// H plus slack gadget: U_Z' (d − 1 vertices) and one vertex per slack value
/// s, with U_Z' ∪ {v_s} weighing s and every other new d-set weighing 0.
pub fn realize_slack(h: &WeightedHypergraph, query: &ExactQuery) -> WeightedHypergraph {
    let mut out = h.clone();
    out.target = query.target.clone();
    if query.slack.is_empty() {
        return out;
    }
    let d = h.arity;
    let apex_end = h.n + d - 1;
    out.n = apex_end + query.slack.len();
    let apex: Vec<usize> = (h.n..apex_end).collect();
    let all: Vec<usize> = (0..out.n).collect();
    for_each_subset(&all, d, |set| {
        if set[d - 1] < h.n {
            return;
        }
        let last = set[d - 1];
        let w = if last >= apex_end && set[..d - 1] == apex[..] { query.slack[last - apex_end].clone() } else { BigUint::zero() };
        out.edges.insert(set.to_vec(), w);
    });
    out
}

/// Turing kernel for max-weight hyperclique: one hashed exact instance per
/// dyadic block of [t, n^d·max w], each with error budget ε/K.
pub fn turing_kernel_max_hyperclique(h: &WeightedHypergraph, eps: Epsilon, seed: u64, cfg: &KernelConfig) -> Result<TuringKernel, IntervalError> {
    if h.arity < 2 {
        return Err(PrimeHashError::Arity(h.arity).into());
    }
    h.validate().map_err(PrimeHashError::from)?;
    if h.target.is_zero() {
        return Ok(TuringKernel::Decided { answer: Answer::Yes, reason: "target 0 is met by the empty clique" });
    }
    let lo = h.target.clone();
    let hi = BigUint::from(h.n).pow(h.arity as u32) * h.max_weight();
    if lo > hi {
        return Ok(TuringKernel::Decided { answer: Answer::No, reason: "target exceeds n^d times the largest weight" });
    }
    let family = interval_to_exact(&lo, &hi)?;
    let per_query = eps.divided_by(family.k() as u64)?;
    let members = family
        .queries
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let expanded = realize_slack(h, q);
            let kernel = kernelize_eewhc_exact(&expanded, per_query, derive_seed(seed, i as u64), cfg)?;
            Ok(TuringMember { query: q.clone(), expanded, kernel })
        })
        .collect::<Result<Vec<_>, PrimeHashError>>()?;
    Ok(TuringKernel::Family { family, epsilon_per_query: per_query, members })
}

/// OR of `oracle` over the family; an empty family is a no. The first oracle
/// error wins.
pub fn decide_with_oracle<E, F>(family: &[&WeightedHypergraph], exec: Exec, oracle: F) -> Result<Answer, E>
where
    E: Send,
    F: Fn(&WeightedHypergraph) -> Result<bool, E> + Sync + Send,
{
    let answers = exec.map(family, |h| oracle(h));
    let mut yes = false;
    for a in answers {
        yes |= a?;
    }
    Ok(Answer::from(yes))
}
