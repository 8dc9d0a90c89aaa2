//! Acceptance checks over fixed corpora, shared by the `acceptance` test
//! target and `wkern verify-suite`.

pub mod corpus;
mod kernels;
mod reductions;
mod vc;

use crate::exec::Exec;
use crate::oracles::Caps;
use crate::prime_hash::Epsilon;
use serde::Serialize;
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Corpus prefixes and fewer seeds; seconds.
    Small,
    /// The full acceptance sizes.
    #[default]
    Full,
}

impl Scale {
    /// `full` at full scale, `small` otherwise.
    pub fn pick(self, small: usize, full: usize) -> usize {
        match self {
            Scale::Small => small,
            Scale::Full => full,
        }
    }
}

impl std::str::FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            _ => Err(format!("unknown scale \"{s}\" (expected small or full)")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub scale: Scale,
    pub exec: Exec,
    pub caps: Caps,
    pub epsilon: Epsilon,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            scale: Scale::Full,
            exec: Exec::default(),
            caps: Caps::default(),
            epsilon: Epsilon::new(1, 10).expect("0 < 1/10 < 1"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {}: {} ({:.1}s)", self.id, self.name, self.detail, self.elapsed.as_secs_f64())
    }
}

/// Result of one check before timing is attached.
pub(crate) struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub(crate) fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "kernel completeness"),
    (2, "kernel soundness rate"),
    (3, "kernel size"),
    (4, "cross-composition OR-equivalence"),
    (5, "composition digit sums stay below the base"),
    (6, "hyperclique lift OR-equivalence"),
    (7, "exact red-blue domination to subset sum"),
    (8, "clique to AND-CSP translation and CSP kernel"),
    (9, "characteristic polynomials"),
    (10, "Turing kernel for max-weight hyperclique"),
    (11, "vertex-cover weight compression"),
    (12, "weighted König equality"),
    (13, "tightness witnesses"),
];

pub fn criterion_name(id: u8) -> Option<&'static str> {
    CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n)
}

fn dispatch(id: u8, cfg: &SuiteConfig) -> Outcome {
    match id {
        1 => kernels::completeness(cfg),
        2 => kernels::soundness(cfg),
        3 => kernels::size(cfg),
        4 => reductions::or_equivalence(cfg),
        5 => reductions::no_carry(cfg),
        6 => reductions::lift(cfg),
        7 => reductions::erbds(cfg),
        8 => kernels::csp(cfg),
        9 => reductions::polynomials(cfg),
        10 => kernels::turing(cfg),
        11 => vc::compression(cfg),
        12 => vc::konig(cfg),
        13 => vc::tightness(cfg),
        _ => Outcome::new(false, format!("no criterion {id}")),
    }
}

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> CriterionReport {
    let start = Instant::now();
    let out = dispatch(id, cfg);
    CriterionReport {
        id,
        name: criterion_name(id).unwrap_or("unknown"),
        passed: out.passed,
        detail: out.detail,
        elapsed: start.elapsed(),
    }
}

/// Runs every criterion in order, calling `each` as reports come in.
pub fn run_all(cfg: &SuiteConfig, mut each: impl FnMut(&CriterionReport)) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|&(id, _)| {
            let r = run_criterion(id, cfg);
            each(&r);
            r
        })
        .collect()
}

/// First few items of a failure list, for report details.
pub(crate) fn sample<T: fmt::Debug>(xs: &[T]) -> String {
    let shown: Vec<String> = xs.iter().take(3).map(|x| format!("{x:?}")).collect();
    if xs.len() > 3 {
        format!("{}, …", shown.join(", "))
    } else {
        shown.join(", ")
    }
}
