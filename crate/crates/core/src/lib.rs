//! Weighted kernelization toolkit.
//!
//! Randomized prime-hashing kernels for exact-weight hyperclique, subset sum
//! and AND-CSP, an interval-to-exact reduction with a Turing kernel for the
//! max-weight hyperclique problem, lower-bound reductions as executable
//! instance transformers, and weight compression for node-weighted bipartite
//! vertex cover. Every construction can be checked against the exhaustive
//! solvers in [`oracles`].

pub mod codec;
pub mod compositions;
pub mod exec;
pub mod instances;
pub mod interval_reduction;
pub mod oracles;
pub mod prime_hash;
pub mod primes;
pub mod rng;
pub mod suite;
pub mod vc_compress;

pub use exec::Exec;
pub use instances::{
    BMatchingCert, CspApplication, CspConstraint, CspFormula, DominationMode, MultilinearPolynomial,
    NodeWeightedBipartiteGraph, RbdsInstance, SubsetSumInstance, Validate, Violation,
    WeightedHypergraph,
};
pub use oracles::{Answer, Caps, SolveResult};
