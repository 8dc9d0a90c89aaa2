//! Instance types for every problem handled by the crate.
//!
//! Vertices are dense 0-based ids. Hyperedges are keyed by strictly
//! increasing tuples, and a missing tuple means "not a hyperedge" (no implicit
//! completion). Instances are plain data; [`Validate`] checks invariants and
//! reports the first violation.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// First violated invariant of an instance, with a location path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl Violation {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Violation { location: location.into(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for Violation {}

pub trait Validate {
    fn validate(&self) -> Result<(), Violation>;
}

fn tuple_label(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

/// d-uniform hypergraph with non-negative big weights and an exact target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedHypergraph {
    pub arity: usize,
    pub n: usize,
    pub edges: BTreeMap<Vec<usize>, BigUint>,
    pub target: BigUint,
}

impl WeightedHypergraph {
    pub fn new(arity: usize, n: usize, target: BigUint) -> Self {
        WeightedHypergraph { arity, n, edges: BTreeMap::new(), target }
    }

    /// Inserts (or overwrites) a hyperedge. The tuple is sorted first.
    pub fn insert_edge(&mut self, mut tuple: Vec<usize>, weight: BigUint) {
        tuple.sort_unstable();
        self.edges.insert(tuple, weight);
    }

    /// Weight of a sorted tuple, or `None` when it is not a hyperedge.
    pub fn weight(&self, tuple: &[usize]) -> Option<&BigUint> {
        self.edges.get(tuple)
    }

    pub fn max_weight(&self) -> BigUint {
        self.edges.values().max().cloned().unwrap_or_default()
    }

    /// Largest number the instance mentions, floored at 1.
    pub fn magnitude(&self) -> BigUint {
        let m = self.max_weight().max(self.target.clone());
        if m.is_zero() {
            BigUint::one()
        } else {
            m
        }
    }

    /// Whether every `arity`-subset of `set` is a hyperedge.
    pub fn is_hyperclique(&self, set: &[usize]) -> bool {
        self.clique_weight(set).is_some()
    }

    /// Total weight of the `arity`-subsets of `set` when it is a hyperclique.
    /// `set` must be sorted and duplicate-free.
    pub fn clique_weight(&self, set: &[usize]) -> Option<BigUint> {
        let mut total = BigUint::zero();
        let mut ok = true;
        for_each_subset(set, self.arity, |sub| {
            if !ok {
                return;
            }
            match self.edges.get(sub) {
                Some(w) => total += w,
                None => ok = false,
            }
        });
        ok.then_some(total)
    }
}

/// Calls `f` with every `k`-subset of `items` (in lexicographic order of
/// positions). `items` order is preserved inside each subset.
pub fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], k: usize, mut f: F) {
    fn rec<F: FnMut(&[usize])>(items: &[usize], k: usize, start: usize, buf: &mut Vec<usize>, f: &mut F) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let need = k - buf.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            buf.push(items[i]);
            rec(items, k, i + 1, buf, f);
            buf.pop();
        }
    }
    if k > items.len() {
        return;
    }
    let mut buf = Vec::with_capacity(k);
    rec(items, k, 0, &mut buf, &mut f);
}

impl Validate for WeightedHypergraph {
    fn validate(&self) -> Result<(), Violation> {
        if self.arity < 2 {
            return Err(Violation::new("d", "arity must be ≥ 2"));
        }
        for tuple in self.edges.keys() {
            let loc = format!("edges[{}]", tuple_label(tuple));
            if tuple.len() != self.arity {
                return Err(Violation::new(loc, format!("tuple has {} entries, expected {}", tuple.len(), self.arity)));
            }
            if tuple.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Violation::new(loc, "tuple not increasing"));
            }
            if tuple.iter().any(|&v| v >= self.n) {
                return Err(Violation::new(loc, format!("vertex id out of range (n = {})", self.n)));
            }
        }
        Ok(())
    }
}

/// Multiset of positive integers with a target sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    pub items: Vec<BigUint>,
    pub target: BigUint,
}

impl Validate for SubsetSumInstance {
    fn validate(&self) -> Result<(), Violation> {
        for (i, x) in self.items.iter().enumerate() {
            if x.is_zero() {
                return Err(Violation::new(format!("items[{i}]"), "item must be ≥ 1"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DominationMode {
    /// At most `budget` reds, every blue has at least one chosen neighbour.
    AtMost,
    /// Exactly `budget` reds, every blue has exactly one chosen neighbour.
    Exact,
}

/// Red-blue dominating set instance. `adjacency[x][q]` is red `x` against blue `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdsInstance {
    pub reds: usize,
    pub blues: usize,
    pub adjacency: Vec<Vec<bool>>,
    pub budget: usize,
    pub mode: DominationMode,
}

impl RbdsInstance {
    pub fn empty(reds: usize, blues: usize, budget: usize, mode: DominationMode) -> Self {
        RbdsInstance { reds, blues, adjacency: vec![vec![false; blues]; reds], budget, mode }
    }

    pub fn adjacent(&self, red: usize, blue: usize) -> bool {
        self.adjacency[red][blue]
    }

    /// Checks a red set against the mode's domination rule and budget.
    pub fn is_solution(&self, reds: &[usize]) -> bool {
        let size_ok = match self.mode {
            DominationMode::AtMost => reds.len() <= self.budget,
            DominationMode::Exact => reds.len() == self.budget,
        };
        size_ok
            && (0..self.blues).all(|q| {
                let hits = reds.iter().filter(|&&x| self.adjacency[x][q]).count();
                match self.mode {
                    DominationMode::AtMost => hits >= 1,
                    DominationMode::Exact => hits == 1,
                }
            })
    }
}

impl Validate for RbdsInstance {
    fn validate(&self) -> Result<(), Violation> {
        if self.adjacency.len() != self.reds {
            return Err(Violation::new("adj", format!("expected {} rows, found {}", self.reds, self.adjacency.len())));
        }
        for (x, row) in self.adjacency.iter().enumerate() {
            if row.len() != self.blues {
                return Err(Violation::new(format!("adj[{x}]"), format!("expected {} columns, found {}", self.blues, row.len())));
            }
        }
        if self.budget < 1 || self.budget > self.reds {
            return Err(Violation::new("d", format!("budget must lie in [1, {}]", self.reds)));
        }
        Ok(())
    }
}

/// Boolean constraint given by its truth table. Row `i` is the value on the
/// assignment whose argument `j` equals bit `j` of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CspConstraint {
    pub arity: usize,
    pub truth_table: Vec<bool>,
}

impl CspConstraint {
    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Self {
        let truth_table = (0..1usize << arity)
            .map(|row| {
                let args: Vec<bool> = (0..arity).map(|j| row >> j & 1 == 1).collect();
                f(&args)
            })
            .collect();
        CspConstraint { arity, truth_table }
    }

    pub fn and(arity: usize) -> Self {
        Self::from_fn(arity, |x| x.iter().all(|&b| b))
    }

    pub fn or(arity: usize) -> Self {
        Self::from_fn(arity, |x| x.iter().any(|&b| b))
    }

    pub fn not() -> Self {
        Self::from_fn(1, |x| !x[0])
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        Self::from_fn(arity, |_| value)
    }

    pub fn is_and(&self) -> bool {
        *self == Self::and(self.arity)
    }

    pub fn eval_row(&self, row: usize) -> bool {
        self.truth_table[row]
    }

    pub fn eval(&self, args: &[bool]) -> bool {
        let row = args.iter().enumerate().fold(0usize, |acc, (j, &b)| acc | (b as usize) << j);
        self.truth_table[row]
    }
}

impl Validate for CspConstraint {
    fn validate(&self) -> Result<(), Violation> {
        if self.arity < 1 {
            return Err(Violation::new("arity", "arity must be ≥ 1"));
        }
        if self.arity >= usize::BITS as usize || self.truth_table.len() != 1usize << self.arity {
            return Err(Violation::new("table", format!("truth table must have 2^{} rows", self.arity)));
        }
        Ok(())
    }
}

/// ⟨f, (i_1..i_k), w⟩: `constraint` indexes the formula's language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspApplication {
    pub constraint: usize,
    pub indices: Vec<usize>,
    pub weight: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspFormula {
    pub n: usize,
    pub language: Vec<CspConstraint>,
    pub applications: Vec<CspApplication>,
    pub target: BigInt,
}

impl CspFormula {
    /// Whether application `a` is satisfied by `x`.
    pub fn satisfied(&self, a: &CspApplication, x: &[bool]) -> bool {
        let f = &self.language[a.constraint];
        let row = a.indices.iter().enumerate().fold(0usize, |acc, (j, &v)| acc | (x[v] as usize) << j);
        f.eval_row(row)
    }
}

impl Validate for CspFormula {
    fn validate(&self) -> Result<(), Violation> {
        for (i, f) in self.language.iter().enumerate() {
            f.validate().map_err(|v| Violation::new(format!("language[{i}].{}", v.location), v.message))?;
        }
        for (i, a) in self.applications.iter().enumerate() {
            let loc = format!("applications[{i}]");
            let Some(f) = self.language.get(a.constraint) else {
                return Err(Violation::new(loc, format!("constraint {} not in language", a.constraint)));
            };
            if a.indices.len() != f.arity {
                return Err(Violation::new(loc, format!("expected {} indices, found {}", f.arity, a.indices.len())));
            }
            if let Some(v) = a.indices.iter().find(|&&v| v >= self.n) {
                return Err(Violation::new(loc, format!("variable {v} out of range (n = {})", self.n)));
            }
        }
        Ok(())
    }
}

/// Bipartite graph with positive node weights. Vertex ids are `0..weights.len()`
/// and every id belongs to exactly one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeWeightedBipartiteGraph {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<BigUint>,
}

impl NodeWeightedBipartiteGraph {
    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    /// Same graph, different weights.
    pub fn with_weights(&self, weights: Vec<BigUint>) -> Self {
        NodeWeightedBipartiteGraph { weights, ..self.clone() }
    }

    /// Edges in sorted order; the canonical order used by the compressor.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn is_vertex_cover(&self, set: &[usize]) -> bool {
        let inside: BTreeSet<usize> = set.iter().copied().collect();
        self.edges.iter().all(|(u, v)| inside.contains(u) || inside.contains(v))
    }

    pub fn set_weight(&self, set: &[usize]) -> BigUint {
        set.iter().map(|&v| &self.weights[v]).sum()
    }
}

impl Validate for NodeWeightedBipartiteGraph {
    fn validate(&self) -> Result<(), Violation> {
        let n = self.vertex_count();
        let mut side = vec![None; n];
        for (name, part, tag) in [("left", &self.left, 0u8), ("right", &self.right, 1u8)] {
            for &v in part.iter() {
                if v >= n {
                    return Err(Violation::new(name, format!("vertex {v} has no weight (n = {n})")));
                }
                if side[v].is_some() {
                    return Err(Violation::new(name, format!("vertex {v} listed twice")));
                }
                side[v] = Some(tag);
            }
        }
        if let Some(v) = side.iter().position(|s| s.is_none()) {
            return Err(Violation::new("left/right", format!("vertex {v} on neither side")));
        }
        let mut seen = BTreeSet::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let loc = format!("edges[{i}]");
            if u >= n || v >= n {
                return Err(Violation::new(loc, "endpoint out of range"));
            }
            if side[u] != Some(0) || side[v] != Some(1) {
                return Err(Violation::new(loc, "edge must go from left to right"));
            }
            if !seen.insert((u, v)) {
                return Err(Violation::new(loc, "duplicate edge"));
            }
        }
        if let Some(v) = self.weights.iter().position(|w| w.is_zero()) {
            return Err(Violation::new(format!("w[{v}]"), "weight must be ≥ 1"));
        }
        Ok(())
    }
}

/// Edge values `z` aligned with `graph.edges`, and their total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMatchingCert {
    pub values: Vec<BigUint>,
    pub value: BigUint,
}

impl BMatchingCert {
    /// Feasibility against the graph's weights as capacities.
    pub fn check(&self, g: &NodeWeightedBipartiteGraph) -> Result<(), Violation> {
        if self.values.len() != g.edges.len() {
            return Err(Violation::new("z", "one value per edge expected"));
        }
        let mut load = vec![BigUint::zero(); g.vertex_count()];
        for (&(u, v), z) in g.edges.iter().zip(&self.values) {
            load[u] += z;
            load[v] += z;
        }
        if let Some(v) = (0..load.len()).find(|&v| load[v] > g.weights[v]) {
            return Err(Violation::new(format!("z(E_{v})"), "exceeds vertex weight"));
        }
        let total: BigUint = self.values.iter().sum();
        if total != self.value {
            return Err(Violation::new("value", "does not equal the sum of z"));
        }
        Ok(())
    }
}

/// Multilinear polynomial over {0,1}^arity. Monomials are bitmasks of
/// variables; only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultilinearPolynomial {
    pub arity: usize,
    pub coeffs: BTreeMap<u64, BigInt>,
}

impl MultilinearPolynomial {
    pub fn eval(&self, args: &[bool]) -> BigInt {
        let x = args.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | (b as u64) << j);
        self.eval_mask(x)
    }

    pub fn eval_mask(&self, x: u64) -> BigInt {
        self.coeffs.iter().filter(|(&m, _)| m & x == m).map(|(_, c)| c).sum()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn coefficient(&self, monomial: u64) -> BigInt {
        self.coeffs.get(&monomial).cloned().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> WeightedHypergraph {
        let mut h = WeightedHypergraph::new(2, 3, 6u32.into());
        h.insert_edge(vec![0, 1], 1u32.into());
        h.insert_edge(vec![0, 2], 2u32.into());
        h.insert_edge(vec![1, 2], 3u32.into());
        h
    }

    #[test]
    fn hypergraph_validation() {
        assert_eq!(k3().validate(), Ok(()));
        let mut h = k3();
        h.edges.insert(vec![1, 0], 1u32.into());
        let err = h.validate().unwrap_err();
        assert_eq!(err.message, "tuple not increasing");
        assert_eq!(err.location, "edges[(1,0)]");
        let mut h = k3();
        h.edges.insert(vec![0, 3], 1u32.into());
        assert!(h.validate().is_err());
        assert!(WeightedHypergraph::new(1, 0, BigUint::zero()).validate().is_err());
        assert_eq!(WeightedHypergraph::new(2, 0, BigUint::zero()).validate(), Ok(()));
    }

    #[test]
    fn subset_sum_validation() {
        let bad = SubsetSumInstance { items: vec![BigUint::zero()], target: BigUint::zero() };
        assert_eq!(bad.validate().unwrap_err().message, "item must be ≥ 1");
    }

    #[test]
    fn clique_weight_of_k3() {
        let h = k3();
        assert_eq!(h.clique_weight(&[0, 1, 2]), Some(6u32.into()));
        assert_eq!(h.clique_weight(&[]), Some(BigUint::zero()));
        let mut g = k3();
        g.edges.remove(&vec![1, 2]);
        assert_eq!(g.clique_weight(&[0, 1, 2]), None);
    }

    #[test]
    fn rbds_budget_range() {
        let i = RbdsInstance::empty(2, 1, 0, DominationMode::AtMost);
        assert!(i.validate().is_err());
        let i = RbdsInstance::empty(2, 1, 3, DominationMode::AtMost);
        assert!(i.validate().is_err());
        assert!(RbdsInstance::empty(2, 1, 2, DominationMode::Exact).validate().is_ok());
    }

    #[test]
    fn constraint_tables() {
        let and2 = CspConstraint::and(2);
        assert_eq!(and2.truth_table, vec![false, false, false, true]);
        assert!(and2.is_and());
        assert_eq!(CspConstraint::not().truth_table, vec![true, false]);
        let bad = CspConstraint { arity: 2, truth_table: vec![true; 3] };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn bipartite_validation() {
        let g = NodeWeightedBipartiteGraph {
            left: vec![0],
            right: vec![1],
            edges: vec![(0, 1)],
            weights: vec![5u32.into(), 3u32.into()],
        };
        assert!(g.validate().is_ok());
        let mut bad = g.clone();
        bad.edges.push((1, 0));
        assert!(bad.validate().is_err());
        let mut bad = g.clone();
        bad.weights[1] = BigUint::zero();
        assert!(bad.validate().is_err());
        let mut bad = g;
        bad.right.clear();
        assert!(bad.validate().is_err());
    }
}
