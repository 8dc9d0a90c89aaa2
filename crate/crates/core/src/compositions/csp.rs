//! Hyperclique to AND-CSP, and characteristic polynomials.

use crate::instances::*;
use num_bigint::{BigInt, BigUint};
use std::collections::BTreeMap;

/// One ⟨AND_d, S, ·⟩ application per d-subset S of the vertices, in
/// lexicographic order. Hyperedges keep their weight. Non-edges weigh
/// max(W, t) + 1 with W the total edge weight, which no solution can afford:
/// every weight is non-negative, so any assignment covering a non-edge
/// overshoots the target.
pub fn hyperclique_to_csp(h: &WeightedHypergraph) -> Result<CspFormula, Violation> {
    h.validate()?;
    let total: BigUint = h.edges.values().sum();
    let blocker = BigInt::from(total.max(h.target.clone()) + 1u32);
    let mut applications = Vec::new();
    let all: Vec<usize> = (0..h.n).collect();
    for_each_subset(&all, h.arity, |set| {
        let weight = h.weight(set).map_or_else(|| blocker.clone(), |w| BigInt::from(w.clone()));
        applications.push(CspApplication { constraint: 0, indices: set.to_vec(), weight });
    });
    Ok(CspFormula { n: h.n, language: vec![CspConstraint::and(h.arity)], applications, target: BigInt::from(h.target.clone()) })
}

/// Unique multilinear polynomial agreeing with `f` on {0,1}^k, via Möbius
/// inversion over the subset lattice: c_S = Σ_{T⊆S} (−1)^{|S∖T|} f(1_T).
pub fn characteristic_polynomial(f: &CspConstraint) -> Result<MultilinearPolynomial, Violation> {
    f.validate()?;
    if f.arity > 24 {
        return Err(Violation::new("arity", "characteristic polynomial limited to arity ≤ 24"));
    }
    let mut c: Vec<i64> = f.truth_table.iter().map(|&b| b as i64).collect();
    for bit in 0..f.arity {
        for mask in 0..c.len() {
            if mask >> bit & 1 == 1 {
                c[mask] -= c[mask ^ 1 << bit];
            }
        }
    }
    let coeffs: BTreeMap<u64, BigInt> = c
        .into_iter()
        .enumerate()
        .filter(|&(_, x)| x != 0)
        .map(|(m, x)| (m as u64, BigInt::from(x)))
        .collect();
    Ok(MultilinearPolynomial { arity: f.arity, coeffs })
}

/// Largest characteristic-polynomial degree in the language; the zero
/// polynomial (and the empty language) has degree 0.
pub fn language_degree(language: &[CspConstraint]) -> Result<usize, Violation> {
    language.iter().map(|f| characteristic_polynomial(f).map(|p| p.degree())).try_fold(0, |acc, d| d.map(|d| acc.max(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::eval_csp;

    #[test]
    fn and_or_not_constant() {
        let p = characteristic_polynomial(&CspConstraint::and(2)).unwrap();
        assert_eq!(p.coeffs, BTreeMap::from([(0b11, BigInt::from(1))]));
        assert_eq!(p.degree(), 2);
        let p = characteristic_polynomial(&CspConstraint::or(2)).unwrap();
        assert_eq!(p.coeffs, BTreeMap::from([(0b01, 1.into()), (0b10, 1.into()), (0b11, BigInt::from(-1))]));
        let p = characteristic_polynomial(&CspConstraint::constant(3, true)).unwrap();
        assert_eq!((p.coeffs.clone(), p.degree()), (BTreeMap::from([(0, 1.into())]), 0));
        let p = characteristic_polynomial(&CspConstraint::not()).unwrap();
        assert_eq!(p.coeffs, BTreeMap::from([(0, 1.into()), (1, BigInt::from(-1))]));
        assert_eq!(characteristic_polynomial(&CspConstraint::constant(2, false)).unwrap().degree(), 0);
        for d in 1..=6 {
            assert_eq!(language_degree(&[CspConstraint::and(d)]).unwrap(), d);
        }
        assert_eq!(language_degree(&[]).unwrap(), 0);
    }

    #[test]
    fn k3_plus_isolated_vertex() {
        let mut h = WeightedHypergraph::new(2, 4, 6u32.into());
        h.insert_edge(vec![0, 1], 1u32.into());
        h.insert_edge(vec![0, 2], 2u32.into());
        h.insert_edge(vec![1, 2], 3u32.into());
        let phi = hyperclique_to_csp(&h).unwrap();
        let weights: Vec<(Vec<usize>, i64)> =
            phi.applications.iter().map(|a| (a.indices.clone(), i64::try_from(&a.weight).unwrap())).collect();
        assert_eq!(
            weights,
            vec![(vec![0, 1], 1), (vec![0, 2], 2), (vec![0, 3], 7), (vec![1, 2], 3), (vec![1, 3], 7), (vec![2, 3], 7)]
        );
        assert_eq!(eval_csp(&phi, &[true, true, true, false]), 6.into());
    }
}
