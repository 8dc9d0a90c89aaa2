//! Exhaustive exact- and max-weight hyperclique search.
//!
//! The search space is every vertex subset, but two exact reductions keep it
//! small on the instances the kernels produce:
//!
//! * Components. Call u, v interacting when some d-set containing both is a
//!   non-edge or has nonzero weight. Across components every d-set is a
//!   zero-weight hyperedge, so cliques are free products of per-component
//!   cliques and weights add up.
//! * Twins. u and v are twins when swapping them preserves every hyperedge
//!   and weight (checked directly on the edge table). Swaps are
//!   automorphisms, so only sets that take a suffix of each twin class (the
//!   highest ids) need to be visited. That suffix representative is also the
//!   lexicographically smallest member of its orbit.
//!
//! Within a component the walk is a depth-first include/exclude tree over
//! ascending ids, excluding first, so leaves appear in witness order.
//! [`solve_eewhc_exact_plain`] is the unstructured mask enumeration kept for
//! cross-checking.

use super::{check_cap, indicator_cmp, merge_sorted, Caps, MaxResult, OracleError, SolveResult};
use crate::instances::{for_each_subset, Validate, WeightedHypergraph};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::hash::Hash;

/// Running weight total: u128 when the instance's total weight allows it.
trait Acc: Clone + Ord + Hash + std::fmt::Debug {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn from_big(b: &BigUint) -> Self;
    fn to_big(&self) -> BigUint;
}

impl Acc for u128 {
    fn zero() -> Self {
        0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn from_big(b: &BigUint) -> Self {
        b.to_u128().expect("fast path only taken when every weight fits")
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Acc for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn from_big(b: &BigUint) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

const EDGE_TABLE_CAP: u64 = 1 << 26;

fn binomials(n: usize, k: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; k + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=k.min(i) {
            c[i][j] = c[i - 1][j - 1].saturating_add(if j < i { c[i - 1][j] } else { 0 });
        }
    }
    c
}

/// Dense table of all d-subsets, indexed by combinatorial-number-system rank.
struct EdgeTable<W> {
    arity: usize,
    binom: Vec<Vec<u64>>,
    entries: Vec<Option<W>>,
}

impl<W: Acc> EdgeTable<W> {
    fn build(h: &WeightedHypergraph) -> Result<Self, OracleError> {
        let binom = binomials(h.n, h.arity);
        let size = binom[h.n][h.arity];
        check_cap("number of d-subsets", size, EDGE_TABLE_CAP)?;
        let mut table = EdgeTable { arity: h.arity, binom, entries: vec![None; size as usize] };
        for (tuple, w) in &h.edges {
            let r = table.rank(tuple);
            table.entries[r] = Some(W::from_big(w));
        }
        Ok(table)
    }

    fn rank(&self, sorted: &[usize]) -> usize {
        sorted.iter().enumerate().map(|(i, &v)| self.binom[v][i + 1] as usize).sum()
    }

    fn get(&self, sorted: &[usize]) -> &Option<W> {
        &self.entries[self.rank(sorted)]
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Sorted union of `rest` and `x`, where `x` is not in `rest`.
fn with_vertex(rest: &[usize], x: usize, buf: &mut Vec<usize>) {
    buf.clear();
    let pos = rest.partition_point(|&y| y < x);
    buf.extend_from_slice(&rest[..pos]);
    buf.push(x);
    buf.extend_from_slice(&rest[pos..]);
}

fn twins<W: Acc>(table: &EdgeTable<W>, n: usize, u: usize, v: usize) -> bool {
    let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
    let mut same = true;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for_each_subset(&others, table.arity - 1, |rest| {
        if !same {
            return;
        }
        with_vertex(rest, u, &mut a);
        with_vertex(rest, v, &mut b);
        same = table.get(&a) == table.get(&b);
    });
    same
}

/// One component: its vertices ascending, and for each position the position
/// of the previous member of its twin class.
struct Component {
    verts: Vec<usize>,
    class_pred: Vec<Option<usize>>,
    /// log2 of the reduced search-space bound, Π over classes of (|class| + 1).
    log2_bound: f64,
}

fn decompose<W: Acc>(h: &WeightedHypergraph, table: &EdgeTable<W>) -> Vec<Component> {
    let n = h.n;
    let mut uf = UnionFind::new(n);
    let all: Vec<usize> = (0..n).collect();
    for_each_subset(&all, h.arity, |set| {
        let interacting = match table.get(set) {
            None => true,
            Some(w) => *w != W::zero(),
        };
        if interacting {
            for &x in &set[1..] {
                uf.union(set[0], x);
            }
        }
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(v);
    }
    groups
        .into_iter()
        .map(|verts| {
            // classes: (representative, last position seen, size)
            let mut classes: Vec<(usize, usize, usize)> = Vec::new();
            let mut class_pred = vec![None; verts.len()];
            for (pos, &v) in verts.iter().enumerate() {
                match classes.iter_mut().find(|(rep, _, _)| twins(table, n, *rep, v)) {
                    Some(class) => {
                        class_pred[pos] = Some(class.1);
                        class.1 = pos;
                        class.2 += 1;
                    }
                    None => classes.push((v, pos, 1)),
                }
            }
            let log2_bound = classes.iter().map(|c| ((c.2 + 1) as f64).log2()).sum();
            Component { verts, class_pred, log2_bound }
        })
        .collect()
}

enum Goal<W> {
    /// Keep the first clique for every sum ≤ limit.
    Collect(W),
    /// Stop at the first clique of exactly this weight.
    Hit(W),
    /// Track the heaviest clique.
    Max,
}

struct Walk<'a, W> {
    table: &'a EdgeTable<W>,
    comp: &'a Component,
    goal: Goal<W>,
    chosen: Vec<usize>,
    included: Vec<bool>,
    states: u64,
    sums: HashMap<W, Vec<usize>>,
    best: Option<(W, Vec<usize>)>,
    done: bool,
}

impl<'a, W: Acc> Walk<'a, W> {
    fn new(table: &'a EdgeTable<W>, comp: &'a Component, goal: Goal<W>) -> Self {
        Walk {
            table,
            comp,
            goal,
            chosen: Vec::new(),
            included: vec![false; comp.verts.len()],
            states: 0,
            sums: HashMap::new(),
            best: None,
            done: false,
        }
    }

    fn limit(&self) -> Option<&W> {
        match &self.goal {
            Goal::Collect(l) | Goal::Hit(l) => Some(l),
            Goal::Max => None,
        }
    }

    /// Weight added by putting `v` next to `chosen`, or `None` if some
    /// d-set would be a non-edge.
    fn gain(&self, v: usize) -> Option<W> {
        let k = self.table.arity - 1;
        if self.chosen.len() < k {
            return Some(W::zero());
        }
        let base = self.table.binom[v][k + 1] as usize;
        let mut total = W::zero();
        if !self.gain_rec(0, 0, base, &mut total) {
            return None;
        }
        Some(total)
    }

    // Chosen vertices are all below v, so every (d-1)-subset R of them
    // followed by v is already sorted; its rank is rank(R) + C(v, d).
    fn gain_rec(&self, start: usize, depth: usize, rank: usize, total: &mut W) -> bool {
        let k = self.table.arity - 1;
        if depth == k {
            return match &self.table.entries[rank] {
                Some(w) => {
                    *total = total.add(w);
                    true
                }
                None => false,
            };
        }
        for i in start..=self.chosen.len() - (k - depth) {
            let r = rank + self.table.binom[self.chosen[i]][depth + 1] as usize;
            if !self.gain_rec(i + 1, depth + 1, r, total) {
                return false;
            }
        }
        true
    }

    fn leaf(&mut self, sum: &W) {
        self.states += 1;
        match &self.goal {
            Goal::Collect(_) => {
                if !self.sums.contains_key(sum) {
                    self.sums.insert(sum.clone(), self.chosen.clone());
                }
            }
            Goal::Hit(t) => {
                if sum == t {
                    self.best = Some((sum.clone(), self.chosen.clone()));
                    self.done = true;
                }
            }
            Goal::Max => {
                if self.best.as_ref().is_none_or(|(b, _)| sum > b) {
                    self.best = Some((sum.clone(), self.chosen.clone()));
                }
            }
        }
    }

    fn run(&mut self, pos: usize, sum: W) {
        if self.done {
            return;
        }
        if pos == self.comp.verts.len() {
            self.leaf(&sum);
            return;
        }
        let pred_in = self.comp.class_pred[pos].is_some_and(|p| self.included[p]);
        if !pred_in {
            self.run(pos + 1, sum.clone());
        }
        let v = self.comp.verts[pos];
        if let Some(g) = self.gain(v) {
            let next = sum.add(&g);
            if self.limit().is_some_and(|l| &next > l) {
                return;
            }
            self.chosen.push(v);
            self.included[pos] = true;
            self.run(pos + 1, next);
            self.included[pos] = false;
            self.chosen.pop();
        }
    }
}

struct Prepared<W> {
    table: EdgeTable<W>,
    comps: Vec<Component>,
}

fn prepare<W: Acc>(h: &WeightedHypergraph, caps: &Caps) -> Result<Prepared<W>, OracleError> {
    h.validate()?;
    let table = EdgeTable::<W>::build(h)?;
    let comps = decompose(h, &table);
    let bound: f64 = comps.iter().map(|c| c.log2_bound.exp2()).sum::<f64>().log2();
    let bits = if comps.is_empty() { 0 } else { bound.ceil() as u64 };
    check_cap("log2 of the reduced hyperclique search space", bits, caps.hyperclique_bits as u64)?;
    Ok(Prepared { table, comps })
}

fn fits_u128(h: &WeightedHypergraph) -> bool {
    let total: BigUint = h.edges.values().sum();
    total.bits() < 127 && h.target.bits() < 127
}

fn exact_with<W: Acc>(h: &WeightedHypergraph, caps: &Caps) -> Result<SolveResult, OracleError> {
    let prep = prepare::<W>(h, caps)?;
    let t = W::from_big(&h.target);
    if prep.comps.is_empty() {
        return Ok(if t == W::zero() { SolveResult::yes(vec![], 1) } else { SolveResult::no(1) });
    }
    if prep.comps.len() == 1 {
        let mut walk = Walk::new(&prep.table, &prep.comps[0], Goal::Hit(t));
        walk.run(0, W::zero());
        return Ok(match walk.best {
            Some((_, set)) => SolveResult::yes(set, walk.states),
            None => SolveResult::no(walk.states),
        });
    }
    let mut states = 0u64;
    let mut acc: HashMap<W, Vec<usize>> = HashMap::from([(W::zero(), Vec::new())]);
    let last = prep.comps.len() - 1;
    for (ci, comp) in prep.comps.iter().enumerate() {
        let mut walk = Walk::new(&prep.table, comp, Goal::Collect(t.clone()));
        walk.run(0, W::zero());
        states += walk.states;
        if ci == last {
            let mut best: Option<Vec<usize>> = None;
            for (a, set_a) in &acc {
                if *a > t {
                    continue;
                }
                let need = subtract(&t, a);
                if let Some(set_b) = walk.sums.get(&need) {
                    let cand = merge_sorted(set_a, set_b);
                    if best.as_ref().is_none_or(|b| indicator_cmp(&cand, b).is_lt()) {
                        best = Some(cand);
                    }
                }
            }
            return Ok(match best {
                Some(set) => SolveResult::yes(set, states),
                None => SolveResult::no(states),
            });
        }
        let mut next: HashMap<W, Vec<usize>> = HashMap::new();
        for (a, set_a) in &acc {
            for (b, set_b) in &walk.sums {
                let s = a.add(b);
                if s > t {
                    continue;
                }
                let cand = merge_sorted(set_a, set_b);
                match next.get_mut(&s) {
                    Some(cur) if indicator_cmp(&cand, cur).is_lt() => *cur = cand,
                    Some(_) => {}
                    None => {
                        next.insert(s, cand);
                    }
                }
            }
        }
        acc = next;
    }
    unreachable!("loop returns at the last component")
}

fn subtract<W: Acc>(t: &W, a: &W) -> W {
    W::from_big(&(t.to_big() - a.to_big()))
}

fn max_with<W: Acc>(h: &WeightedHypergraph, caps: &Caps) -> Result<MaxResult<BigUint>, OracleError> {
    let prep = prepare::<W>(h, caps)?;
    let mut states = 0u64;
    let mut total = W::zero();
    let mut witness = Vec::new();
    for comp in &prep.comps {
        let mut walk = Walk::new(&prep.table, comp, Goal::Max);
        walk.run(0, W::zero());
        states += walk.states;
        let (m, set) = walk.best.expect("the empty set is always a clique");
        total = total.add(&m);
        witness = merge_sorted(&witness, &set);
    }
    let states = states.max(1);
    let max = total.to_big();
    let result = if max >= h.target { SolveResult::yes(witness, states) } else { SolveResult::no(states) };
    Ok(MaxResult { result, max })
}

/// Exact-weight hyperclique: is there a vertex set whose d-subsets are all
/// hyperedges with total weight exactly the target?
pub fn solve_eewhc_exact(h: &WeightedHypergraph, caps: &Caps) -> Result<SolveResult, OracleError> {
    if fits_u128(h) {
        exact_with::<u128>(h, caps)
    } else {
        exact_with::<BigUint>(h, caps)
    }
}

/// Max-weight hyperclique: answer is yes iff the heaviest hyperclique reaches
/// the target. The witness is the smallest heaviest clique.
pub fn solve_eewhc_max(h: &WeightedHypergraph, caps: &Caps) -> Result<MaxResult<BigUint>, OracleError> {
    if fits_u128(h) {
        max_with::<u128>(h, caps)
    } else {
        max_with::<BigUint>(h, caps)
    }
}

/// Plain enumeration of all 2^n vertex sets in witness order.
pub fn solve_eewhc_exact_plain(h: &WeightedHypergraph, caps: &Caps) -> Result<SolveResult, OracleError> {
    h.validate()?;
    check_cap("vertex count", h.n as u64, caps.hyperclique_bits as u64)?;
    let n = h.n;
    for (i, mask) in (0u64..1 << n).enumerate() {
        let set: Vec<usize> = (0..n).filter(|v| mask >> (n - 1 - v) & 1 == 1).collect();
        if h.clique_weight(&set).is_some_and(|w| w == h.target) {
            return Ok(SolveResult::yes(set, i as u64 + 1));
        }
    }
    Ok(SolveResult::no(1 << n))
}

/// Every (clique, weight) pair of a small hypergraph, in witness order.
pub fn all_hypercliques(h: &WeightedHypergraph) -> Vec<(Vec<usize>, BigUint)> {
    let n = h.n;
    (0u64..1 << n)
        .filter_map(|mask| {
            let set: Vec<usize> = (0..n).filter(|v| mask >> (n - 1 - v) & 1 == 1).collect();
            h.clique_weight(&set).map(|w| (set, w))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3(t: u32) -> WeightedHypergraph {
        let mut h = WeightedHypergraph::new(2, 3, t.into());
        h.insert_edge(vec![0, 1], 1u32.into());
        h.insert_edge(vec![0, 2], 2u32.into());
        h.insert_edge(vec![1, 2], 3u32.into());
        h
    }

    fn achievable_by_hand(h: &WeightedHypergraph) -> Vec<BigUint> {
        let mut w: Vec<BigUint> = all_hypercliques(h).into_iter().map(|(_, w)| w).collect();
        w.sort();
        w.dedup();
        w
    }

    #[test]
    fn k3_examples() {
        let caps = Caps::default();
        let r = solve_eewhc_exact(&k3(6), &caps).unwrap();
        assert_eq!(r.witness, Some(vec![0, 1, 2]));
        let r = solve_eewhc_exact(&k3(0), &caps).unwrap();
        assert_eq!(r.witness, Some(vec![]));
        assert!(!solve_eewhc_exact(&k3(4), &caps).unwrap().is_yes());
        let got: Vec<u32> = achievable_by_hand(&k3(0)).iter().map(|w| w.to_u32().unwrap()).collect();
        assert_eq!(got, vec![0, 1, 2, 3, 6]);
        let m = solve_eewhc_max(&k3(4), &caps).unwrap();
        assert!(m.result.is_yes());
        assert_eq!(m.max, 6u32.into());
        assert!(!solve_eewhc_max(&k3(7), &caps).unwrap().result.is_yes());
        assert!(solve_eewhc_max(&k3(0), &caps).unwrap().result.is_yes());
    }

    #[test]
    fn singles_and_pairs_prefer_late_ids() {
        // every edge weight 1, target 1: the smallest witness is {n-2, n-1}
        let mut h = WeightedHypergraph::new(2, 4, 1u32.into());
        for a in 0..4 {
            for b in a + 1..4 {
                h.insert_edge(vec![a, b], 1u32.into());
            }
        }
        let r = solve_eewhc_exact(&h, &Caps::default()).unwrap();
        assert_eq!(r.witness, Some(vec![2, 3]));
        assert_eq!(r, SolveResult { states_explored: r.states_explored, ..solve_eewhc_exact_plain(&h, &Caps::default()).unwrap() });
    }

    #[test]
    fn cap_is_a_refusal() {
        let mut h = WeightedHypergraph::new(2, 30, 1u32.into());
        for a in 0..30 {
            for b in a + 1..30 {
                h.insert_edge(vec![a, b], BigUint::from((a * 31 + b) as u32));
            }
        }
        assert!(matches!(solve_eewhc_exact(&h, &Caps::default()), Err(OracleError::CapExceeded { .. })));
        assert!(matches!(solve_eewhc_exact_plain(&h, &Caps::default()), Err(OracleError::CapExceeded { .. })));
    }

    #[test]
    fn twin_heavy_instance_stays_cheap() {
        // 40 vertices, complete, zero weights except a star from 0 with weight 1
        let mut h = WeightedHypergraph::new(2, 40, 39u32.into());
        for a in 0..40 {
            for b in a + 1..40 {
                h.insert_edge(vec![a, b], BigUint::from((a == 0) as u32));
            }
        }
        let r = solve_eewhc_exact(&h, &Caps::default()).unwrap();
        assert_eq!(r.witness, Some((0..40).collect()));
        assert!(r.states_explored < 200);
    }

    fn arb_hypergraph() -> impl Strategy<Value = WeightedHypergraph> {
        (2usize..=3, 0usize..=7).prop_flat_map(|(d, n)| {
            let tuples: Vec<Vec<usize>> = {
                let mut out = Vec::new();
                for_each_subset(&(0..n).collect::<Vec<_>>(), d, |s| out.push(s.to_vec()));
                out
            };
            let k = tuples.len();
            (
                proptest::collection::vec(prop_oneof![Just(None), (0u32..4).prop_map(Some)], k),
                0u32..20,
            )
                .prop_map(move |(ws, t)| {
                    let mut h = WeightedHypergraph::new(d, n, t.into());
                    for (tuple, w) in tuples.iter().zip(ws) {
                        if let Some(w) = w {
                            h.insert_edge(tuple.clone(), w.into());
                        }
                    }
                    h
                })
        })
    }

    proptest! {
        #[test]
        fn structured_matches_plain(h in arb_hypergraph()) {
            let caps = Caps::default();
            let a = solve_eewhc_exact(&h, &caps).unwrap();
            let b = solve_eewhc_exact_plain(&h, &caps).unwrap();
            prop_assert_eq!(a.answer, b.answer);
            prop_assert_eq!(&a.witness, &b.witness);
            if let Some(w) = &a.witness {
                prop_assert_eq!(h.clique_weight(w), Some(h.target.clone()));
            }
        }

        #[test]
        fn max_matches_enumeration(h in arb_hypergraph()) {
            let all = all_hypercliques(&h);
            let best = all.iter().map(|(_, w)| w.clone()).max().unwrap();
            let first_best = all.iter().find(|(_, w)| *w == best).unwrap().0.clone();
            let m = solve_eewhc_max(&h, &Caps::default()).unwrap();
            prop_assert_eq!(&m.max, &best);
            prop_assert_eq!(m.result.is_yes(), best >= h.target);
            if m.result.is_yes() {
                prop_assert_eq!(m.result.witness.unwrap(), first_best);
            }
        }

        #[test]
        fn big_weights_take_the_bignum_path(h in arb_hypergraph(), shift in 120u32..200) {
            let scale = BigUint::from(1u8) << shift;
            let mut big = h.clone();
            for w in big.edges.values_mut() {
                *w *= &scale;
            }
            big.target *= &scale;
            let a = solve_eewhc_exact(&big, &Caps::default()).unwrap();
            let b = solve_eewhc_exact(&h, &Caps::default()).unwrap();
            prop_assert_eq!(a.witness, b.witness);
        }
    }
}
