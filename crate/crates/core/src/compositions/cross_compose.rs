//! OR-composition of z³ red-blue dominating set instances into one
//! exact-weight clique instance on O(z(m + nd)) vertices.
//!
//! Edge weights are digit vectors of length nz + 1 in base m + d + 2: the most
//! significant digit counts chosen reds, and block k (digits k·n .. k·n + n − 1)
//! tracks domination of the n blues of input (i, j, k). Choosing b_i, a subset
//! of R_j and s_k selects input (i, j, k); the b–s edge fills every other
//! block, and padding vertices top each digit up to the target.

use super::{exact_root, CompositionError};
use crate::instances::{DominationMode, RbdsInstance, Validate, WeightedHypergraph};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::ops::Range;

/// Digits, index 0 least significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub digits: Vec<u32>,
    pub base: u32,
}

impl WeightVector {
    pub fn zero(len: usize, base: u32) -> Self {
        WeightVector { digits: vec![0; len], base }
    }

    pub fn unit(len: usize, base: u32, pos: usize) -> Self {
        let mut w = Self::zero(len, base);
        w.digits[pos] = 1;
        w
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn to_biguint(&self) -> BigUint {
        self.digits.iter().rev().fold(BigUint::zero(), |acc, &d| acc * self.base + d)
    }
}

/// How many padding vertices each digit gets, and the matching target digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Padding {
    /// d − 1 padding vertices per digit, target d everywhere.
    #[default]
    Standard,
    /// d padding vertices per block digit and target d + 1 there, so a digit
    /// of a non-selected input may reach 1 + d. The top digit keeps d − 1
    /// padding vertices and target d.
    Widened,
}

/// Vertex ids: b-block, R-blocks, s-block, then padding blocks per digit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionLayout {
    pub z: usize,
    pub reds: usize,
    pub blues: usize,
    pub budget: usize,
    pub padding: Padding,
    pub b: Range<usize>,
    pub r: Vec<Range<usize>>,
    pub s: Range<usize>,
    pub p: Vec<Range<usize>>,
}

impl CompositionLayout {
    pub fn new(z: usize, reds: usize, blues: usize, budget: usize, padding: Padding) -> Self {
        let b = 0..z;
        let r: Vec<Range<usize>> = (0..z).map(|j| z + j * reds..z + (j + 1) * reds).collect();
        let s = z + z * reds..2 * z + z * reds;
        let digits = blues * z + 1;
        let mut p = Vec::with_capacity(digits);
        let mut next = s.end;
        for v in 0..digits {
            let size = match padding {
                Padding::Widened if v + 1 < digits => budget,
                _ => budget - 1,
            };
            p.push(next..next + size);
            next += size;
        }
        CompositionLayout { z, reds, blues, budget, padding, b, r, s, p }
    }

    pub fn vertex_count(&self) -> usize {
        self.p.last().map_or(self.s.end, |r| r.end)
    }

    pub fn digits(&self) -> usize {
        self.blues * self.z + 1
    }

    pub fn base(&self) -> u32 {
        (self.reds + self.budget + 2) as u32
    }

    pub fn target_vector(&self) -> WeightVector {
        let top = self.digits() - 1;
        let digits = (0..self.digits())
            .map(|v| match self.padding {
                Padding::Widened if v < top => self.budget as u32 + 1,
                _ => self.budget as u32,
            })
            .collect();
        WeightVector { digits, base: self.base() }
    }

    /// Input index of (i, j, k).
    pub fn input_index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.z + j) * self.z + k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedInstance {
    pub instance: WeightedHypergraph,
    pub layout: CompositionLayout,
    /// Digit vector of every edge, keyed like `instance.edges`.
    pub vectors: BTreeMap<(usize, usize), WeightVector>,
    pub target: WeightVector,
}

impl ComposedInstance {
    /// Per-digit sums of the edge vectors inside `clique`.
    pub fn position_sums(&self, clique: &[usize]) -> Vec<u32> {
        let mut sums = vec![0u32; self.layout.digits()];
        for (a, &u) in clique.iter().enumerate() {
            for &v in &clique[a + 1..] {
                let key = (u.min(v), u.max(v));
                if let Some(w) = self.vectors.get(&key) {
                    for (s, d) in sums.iter_mut().zip(&w.digits) {
                        *s += d;
                    }
                }
            }
        }
        sums
    }
}

/// Pads `inputs` to the next perfect `power`-th power by repeating the first.
pub fn pad_to_power<T: Clone>(inputs: &[T], power: u32) -> Vec<T> {
    let mut out = inputs.to_vec();
    if let Some(first) = inputs.first() {
        let mut k = 1usize;
        while k.pow(power) < inputs.len() {
            k += 1;
        }
        out.resize(k.pow(power), first.clone());
    }
    out
}

/// The composition with the standard padding.
pub fn rbds_cross_compose(inputs: &[RbdsInstance]) -> Result<ComposedInstance, CompositionError> {
    rbds_cross_compose_with(inputs, Padding::Standard)
}

pub fn rbds_cross_compose_with(inputs: &[RbdsInstance], padding: Padding) -> Result<ComposedInstance, CompositionError> {
    let first = inputs.first().ok_or(CompositionError::Empty)?;
    let z = exact_root(inputs.len(), 3).ok_or(CompositionError::NotPerfectPower { count: inputs.len(), power: 3 })?;
    let (m, n, d) = (first.reds, first.blues, first.budget);
    for (index, x) in inputs.iter().enumerate() {
        x.validate().map_err(|violation| CompositionError::Invalid { index, violation })?;
        if x.mode != DominationMode::AtMost {
            return Err(CompositionError::Unsupported { index, reason: "exact-mode instances cannot be composed".into() });
        }
        if (x.reds, x.blues, x.budget) != (m, n, d) {
            return Err(CompositionError::ShapeMismatch {
                index,
                found: format!("(m={}, n={}, d={})", x.reds, x.blues, x.budget),
                expected: format!("(m={m}, n={n}, d={d})"),
            });
        }
    }
    let layout = CompositionLayout::new(z, m, n, d, padding);
    let (len, base) = (layout.digits(), layout.base());
    let top = len - 1;
    let mut vectors: BTreeMap<(usize, usize), WeightVector> = BTreeMap::new();
    let mut put = |u: usize, v: usize, w: WeightVector| {
        vectors.insert((u.min(v), u.max(v)), w);
    };
    let zero = WeightVector::zero(len, base);
    for j in 0..z {
        let rj: Vec<usize> = layout.r[j].clone().collect();
        for (a, &u) in rj.iter().enumerate() {
            for &v in &rj[a + 1..] {
                put(u, v, zero.clone());
            }
        }
        for k in 0..z {
            for &r in &rj {
                put(layout.s.start + k, r, zero.clone());
            }
        }
    }
    for i in 0..z {
        let b = layout.b.start + i;
        for j in 0..z {
            for x in 0..m {
                let mut w = WeightVector::unit(len, base, top);
                for k in 0..z {
                    let inst = &inputs[layout.input_index(i, j, k)];
                    for q in 0..n {
                        w.digits[k * n + q] = inst.adjacent(x, q) as u32;
                    }
                }
                put(b, layout.r[j].start + x, w);
            }
        }
        for k in 0..z {
            let mut w = zero.clone();
            for kk in (0..z).filter(|&kk| kk != k) {
                for q in 0..n {
                    w.digits[kk * n + q] = 1;
                }
            }
            put(b, layout.s.start + k, w);
        }
    }
    let total = layout.vertex_count();
    let is_b = |u: usize| layout.b.contains(&u);
    for (v, block) in layout.p.iter().enumerate() {
        for p in block.clone() {
            for u in 0..total {
                if u == p {
                    continue;
                }
                if is_b(u) {
                    put(u, p, WeightVector::unit(len, base, v));
                } else {
                    put(u, p, zero.clone());
                }
            }
        }
    }
    let target = layout.target_vector();
    let mut instance = WeightedHypergraph::new(2, total, target.to_biguint());
    for (&(u, v), w) in &vectors {
        instance.edges.insert(vec![u, v], w.to_biguint());
    }
    Ok(ComposedInstance { instance, layout, vectors, target })
}
