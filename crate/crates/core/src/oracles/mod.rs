//! Exhaustive solvers used as ground truth.
//!
//! Every solver enumerates its whole search space (up to symmetry and
//! independent parts, see [`hyperclique`]), returns the lexicographically
//! smallest witness and refuses instances above the configured caps instead
//! of truncating. Witness order: a set is read as its indicator vector with
//! element 0 as the most significant position, so among solutions the one
//! that avoids the smallest ids wins (∅ beats everything).

pub mod csp;
pub mod hyperclique;
pub mod rbds;
pub mod subset_sum;
pub mod vertex_cover;

pub use csp::{eval_csp, solve_csp, CspMode};
pub use hyperclique::{solve_eewhc_exact, solve_eewhc_exact_plain, solve_eewhc_max};
pub use rbds::solve_rbds;
pub use subset_sum::{solve_subset_sum, subset_sum_dp, subset_sum_enumerate};
pub use vertex_cover::{enumerate_minimal_vertex_covers, min_weight_vertex_covers, MinCovers};

use crate::instances::Violation;
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub answer: Answer,
    /// Sorted vertex / item / true-variable ids; present iff the answer is yes.
    pub witness: Option<Vec<usize>>,
    pub states_explored: u64,
}

impl SolveResult {
    pub fn yes(witness: Vec<usize>, states_explored: u64) -> Self {
        SolveResult { answer: Answer::Yes, witness: Some(witness), states_explored }
    }

    pub fn no(states_explored: u64) -> Self {
        SolveResult { answer: Answer::No, witness: None, states_explored }
    }

    pub fn is_yes(&self) -> bool {
        self.answer.is_yes()
    }
}

/// Result of a max-variant solve plus the optimum itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxResult<T> {
    pub result: SolveResult,
    pub max: T,
}

/// Enumeration limits. All of them are configuration; exceeding one is a
/// refusal, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// log2 of the largest hyperclique search space the solver accepts, after
    /// splitting into independent components and collapsing twin vertices.
    /// For an instance without any structure this is the vertex count.
    pub hyperclique_bits: u32,
    pub subset_sum_items: usize,
    /// Largest (items + 1) * (target + 1) table for the subset-sum DP.
    pub dp_cells: u64,
    pub reds: usize,
    pub csp_vars: usize,
    pub cover_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            hyperclique_bits: 24,
            subset_sum_items: 30,
            dp_cells: 1 << 28,
            reds: 24,
            csp_vars: 24,
            cover_vertices: 20,
        }
    }
}

impl Caps {
    /// One number for every enumeration cap (the CLI's `--cap`).
    pub fn uniform(cap: usize) -> Self {
        Caps {
            hyperclique_bits: cap as u32,
            subset_sum_items: cap,
            reds: cap,
            csp_vars: cap,
            cover_vertices: cap,
            ..Caps::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is {size}, above the enumeration cap {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },
    #[error("invalid instance: {0}")]
    Invalid(#[from] Violation),
    #[error("unsupported instance: {0}")]
    Unsupported(String),
}

pub(crate) fn check_cap(what: &'static str, size: u64, cap: u64) -> Result<(), OracleError> {
    if size > cap {
        Err(OracleError::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// Compares two sorted id sets by indicator vector, id 0 most significant.
pub fn indicator_cmp(a: &[usize], b: &[usize]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            // the set holding the smaller id has a 1 where the other has a 0
            return y.cmp(x);
        }
    }
    a.len().cmp(&b.len())
}

pub(crate) fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator(set: &[usize], n: usize) -> Vec<u8> {
        (0..n).map(|v| set.contains(&v) as u8).collect()
    }

    #[test]
    fn indicator_order_matches_vectors() {
        let sets: Vec<Vec<usize>> = (0u32..32)
            .map(|m| (0..5).filter(|v| m >> v & 1 == 1).collect())
            .collect();
        for a in &sets {
            for b in &sets {
                assert_eq!(indicator_cmp(a, b), indicator(a, 5).cmp(&indicator(b, 5)), "{a:?} {b:?}");
            }
        }
    }
}
