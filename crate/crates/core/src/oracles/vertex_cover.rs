//! Inclusion-minimal and minimum-weight vertex covers by subset enumeration.

use super::{check_cap, Caps, OracleError};
use crate::instances::{NodeWeightedBipartiteGraph, Validate};
use num_bigint::BigUint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCovers {
    /// Canonical order: by size, then lexicographically.
    pub covers: Vec<Vec<usize>>,
    pub min_weight: BigUint,
}

/// All inclusion-minimal vertex covers, ordered by size then lexicographically.
/// A cover is minimal iff each of its vertices has a neighbour outside it.
pub fn enumerate_minimal_vertex_covers(g: &NodeWeightedBipartiteGraph, caps: &Caps) -> Result<Vec<Vec<usize>>, OracleError> {
    g.validate()?;
    let n = g.vertex_count();
    check_cap("vertex count", n as u64, (caps.cover_vertices as u64).min(30))?;
    let mut nbr = vec![0u32; n];
    for &(u, v) in &g.edges {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|v| {
                if s >> v & 1 == 1 {
                    nbr[v] & !s != 0
                } else {
                    nbr[v] & !s == 0
                }
            })
        })
        .map(|s| (0..n).filter(|v| s >> v & 1 == 1).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// 𝒞(G, w): every minimum-weight cover, with the minimum. Weights are
/// positive, so minimum-weight covers are inclusion-minimal.
pub fn min_weight_vertex_covers(g: &NodeWeightedBipartiteGraph, caps: &Caps) -> Result<MinCovers, OracleError> {
    let minimal = enumerate_minimal_vertex_covers(g, caps)?;
    let weighted: Vec<(BigUint, Vec<usize>)> = minimal.into_iter().map(|c| (g.set_weight(&c), c)).collect();
    let min_weight = weighted.iter().map(|(w, _)| w.clone()).min().expect("the full vertex set contains a minimal cover");
    let covers = weighted.into_iter().filter(|(w, _)| *w == min_weight).map(|(_, c)| c).collect();
    Ok(MinCovers { covers, min_weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(left: &[usize], right: &[usize], edges: &[(usize, usize)], w: &[u64]) -> NodeWeightedBipartiteGraph {
        NodeWeightedBipartiteGraph {
            left: left.to_vec(),
            right: right.to_vec(),
            edges: edges.to_vec(),
            weights: w.iter().map(|&x| x.into()).collect(),
        }
    }

    #[test]
    fn minimal_cover_examples() {
        let c = Caps::default();
        let edge = graph(&[0], &[1], &[(0, 1)], &[1, 1]);
        assert_eq!(enumerate_minimal_vertex_covers(&edge, &c).unwrap(), vec![vec![0], vec![1]]);
        // u=0, v=1, x=2 with v on the right
        let p3 = graph(&[0, 2], &[1], &[(0, 1), (2, 1)], &[1, 1, 1]);
        assert_eq!(enumerate_minimal_vertex_covers(&p3, &c).unwrap(), vec![vec![1], vec![0, 2]]);
        let empty = graph(&[0], &[1], &[], &[1, 1]);
        assert_eq!(enumerate_minimal_vertex_covers(&empty, &c).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn min_weight_examples() {
        let c = Caps::default();
        let r = min_weight_vertex_covers(&graph(&[0], &[1], &[(0, 1)], &[5, 3]), &c).unwrap();
        assert_eq!((r.covers, r.min_weight), (vec![vec![1]], 3u32.into()));
        let r = min_weight_vertex_covers(&graph(&[0], &[1], &[(0, 1)], &[2, 2]), &c).unwrap();
        assert_eq!(r.covers, vec![vec![0], vec![1]]);
        let r = min_weight_vertex_covers(&graph(&[0], &[1], &[], &[2, 2]), &c).unwrap();
        assert_eq!((r.covers, r.min_weight), (vec![vec![]], 0u32.into()));
    }

    #[test]
    fn filter_matches_definition() {
        // minimal = cover with no cover among its proper subsets
        let g = graph(&[0, 1, 2], &[3, 4], &[(0, 3), (1, 3), (1, 4), (2, 4)], &[1; 5]);
        let n = 5;
        let covers: Vec<u32> = (0u32..1 << n)
            .filter(|&s| g.edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
            .collect();
        let mut minimal: Vec<Vec<usize>> = covers
            .iter()
            .filter(|&&s| !covers.iter().any(|&t| t != s && t & s == t))
            .map(|&s| (0..n).filter(|v| s >> v & 1 == 1).collect())
            .collect();
        minimal.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(enumerate_minimal_vertex_covers(&g, &Caps::default()).unwrap(), minimal);
    }
}
