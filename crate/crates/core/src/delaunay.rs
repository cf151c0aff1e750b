//! Edge functionals on the homology lattice and Delaunay decompositions.
//!
//! The Delaunay decomposition of a graph is cut out by the hyperplanes
//! `e* = n`, `n` integral, so two graphs have isomorphic decompositions when a
//! lattice isomorphism carries one family of functionals, up to sign, onto
//! the other.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{inverse, mat_mul, rat, to_integer_matrix, to_rational_matrix, Rational};
use crate::c1::three_connectivization;
use crate::cyclic::three_edge_class_equal;
use crate::error::{Error, Result};
use crate::graph::{homology_basis, CycleBasis, EdgeId, MultiGraph};
use crate::lattice::{is_unimodular, IntMatrix, RouteReport};

/// `e*(b_i) = b_i(e)` for each edge, as coordinates in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFunctionals {
    pub vectors: BTreeMap<EdgeId, Vec<i64>>,
}

pub fn edge_functionals(g: &MultiGraph, basis: &CycleBasis) -> Result<EdgeFunctionals> {
    basis.validate(g)?;
    let vectors = g
        .edge_ids()
        .into_iter()
        .map(|e| (e, basis.chains.iter().map(|c| c.coefficient(e)).collect()))
        .collect();
    Ok(EdgeFunctionals { vectors })
}

/// Sign-normalised vector: first nonzero entry positive.
fn normalise(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|&y| -y).collect(),
        _ => v.to_vec(),
    }
}

/// Distinct nonzero functionals up to sign, in the canonical basis, sorted.
pub fn functional_lines(g: &MultiGraph) -> Vec<Vec<i64>> {
    let f = edge_functionals(g, &homology_basis(g)).expect("canonical basis is valid");
    f.vectors
        .values()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| normalise(v))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Witness of matching functional arrangements: `t` maps coordinates of
/// `H_1(G)` to coordinates of `H_1(H)` and `pairs[i] = (j, s)` means
/// `line_i(G) = s * line_j(H) * t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalMatch {
    pub transform: IntMatrix,
    pub pairs: Vec<(usize, i64)>,
}

/// Prepared functional data of one graph.
#[derive(Clone, Debug)]
pub struct FunctionalArrangement {
    dim: usize,
    lines: Vec<Vec<i64>>,
}

impl FunctionalArrangement {
    pub fn new(g: &MultiGraph) -> Self {
        FunctionalArrangement {
            dim: crate::graph::betti_number(g),
            lines: functional_lines(g),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lines(&self) -> &[Vec<i64>] {
        &self.lines
    }

    /// Searches for a unimodular `T` and a signed bijection of lines with
    /// `f = s f' T`.
    pub fn find_match(&self, other: &FunctionalArrangement) -> Option<FunctionalMatch> {
        if self.dim != other.dim || self.lines.len() != other.lines.len() {
            return None;
        }
        let g = self.dim;
        if g == 0 {
            return Some(FunctionalMatch {
                transform: Vec::new(),
                pairs: Vec::new(),
            });
        }
        let basis = independent_rows(&self.lines, g);
        let targets: BTreeMap<&Vec<i64>, usize> =
            other.lines.iter().enumerate().map(|(j, l)| (l, j)).collect();
        let mut chosen: Vec<(usize, i64)> = Vec::with_capacity(g);
        self.assign(other, &basis, &targets, &mut chosen)
    }

    fn assign(
        &self,
        other: &FunctionalArrangement,
        basis: &[usize],
        targets: &BTreeMap<&Vec<i64>, usize>,
        chosen: &mut Vec<(usize, i64)>,
    ) -> Option<FunctionalMatch> {
        if chosen.len() == basis.len() {
            return self.complete(other, basis, targets, chosen);
        }
        for j in 0..other.lines.len() {
            if chosen.iter().any(|&(k, _)| k == j) {
                continue;
            }
            for s in [1, -1] {
                chosen.push((j, s));
                if let Some(m) = self.assign(other, basis, targets, chosen) {
                    return Some(m);
                }
                chosen.pop();
            }
        }
        None
    }

    fn complete(
        &self,
        other: &FunctionalArrangement,
        basis: &[usize],
        targets: &BTreeMap<&Vec<i64>, usize>,
        chosen: &[(usize, i64)],
    ) -> Option<FunctionalMatch> {
        // F_B = M' T  with  M' = rows s_i f'_{j_i}
        let m: Vec<Vec<i64>> = chosen
            .iter()
            .map(|&(j, s)| other.lines[j].iter().map(|&x| s * x).collect())
            .collect();
        let fb: Vec<Vec<i64>> = basis.iter().map(|&i| self.lines[i].clone()).collect();
        let m_inv = inverse(&to_rational_matrix(&m))?;
        let t = mat_mul(&m_inv, &to_rational_matrix(&fb));
        let t_int = to_integer_matrix(&t)?;
        if !is_unimodular(&t_int) {
            return None;
        }
        let t_inv = inverse(&t)?;
        let mut pairs = Vec::with_capacity(self.lines.len());
        let mut used = vec![false; other.lines.len()];
        for line in &self.lines {
            let image: Vec<Rational> = (0..self.dim)
                .map(|c| (0..self.dim).map(|k| rat(line[k] as i128) * t_inv[k][c]).sum())
                .collect();
            let image: Vec<i64> = image
                .iter()
                .map(|x| x.is_integer().then(|| *x.numer() as i64))
                .collect::<Option<_>>()?;
            let norm = normalise(&image);
            let &j = targets.get(&norm)?;
            if used[j] {
                return None;
            }
            used[j] = true;
            pairs.push((j, if norm == image { 1 } else { -1 }));
        }
        Some(FunctionalMatch {
            transform: t_int,
            pairs,
        })
    }
}

/// Greedy choice of `g` linearly independent rows.
fn independent_rows(rows: &[Vec<i64>], g: usize) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<i64>> = picked.iter().map(|&k| rows[k].clone()).collect();
        trial.push(rows[i].clone());
        if crate::arith::rank_int(&trial) == trial.len() {
            picked.push(i);
            if picked.len() == g {
                break;
            }
        }
    }
    picked
}

/// Direct comparison of the functional arrangements of two graphs.
pub fn delaunay_functional_match(g: &MultiGraph, h: &MultiGraph) -> Option<FunctionalMatch> {
    FunctionalArrangement::new(g).find_match(&FunctionalArrangement::new(h))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelaunayVerdict {
    pub isomorphic: bool,
    pub routes: RouteReport,
    pub witness: Option<FunctionalMatch>,
}

/// Delaunay decompositions: cyclic equivalence of the 3-edge
/// connectivizations versus matching of their functional arrangements.
pub fn delaunay_isomorphic(g: &MultiGraph, h: &MultiGraph) -> Result<DelaunayVerdict> {
    let theorem = three_edge_class_equal(g, h)?;
    let witness = delaunay_functional_match(
        &three_connectivization(g).graph,
        &three_connectivization(h).graph,
    );
    let direct = witness.is_some();
    if direct != theorem {
        return Err(Error::RouteDisagreement(format!(
            "functional matching {direct}, 3-edge class {theorem}"
        )));
    }
    Ok(DelaunayVerdict {
        isomorphic: direct,
        routes: RouteReport { direct, theorem },
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::IntChain;

    #[test]
    fn theta_functionals() {
        let basis = CycleBasis::new(vec![
            IntChain::from_terms([(1, 1), (2, -1)]),
            IntChain::from_terms([(2, 1), (3, -1)]),
        ]);
        let f = edge_functionals(&families::theta(), &basis).unwrap();
        assert_eq!(f.vectors[&1], vec![1, 0]);
        assert_eq!(f.vectors[&2], vec![-1, 1]);
        assert_eq!(f.vectors[&3], vec![0, -1]);
    }

    #[test]
    fn bridges_have_zero_functional() {
        let d = families::dumbbell();
        let f = edge_functionals(&d, &homology_basis(&d)).unwrap();
        assert!(f.vectors[&2].iter().all(|&x| x == 0));
        assert_eq!(functional_lines(&d).len(), 2);
    }

    #[test]
    fn named_delaunay_comparisons() {
        assert!(delaunay_isomorphic(&families::cycle(4), &families::cycle(5)).unwrap().isomorphic);
        assert!(!delaunay_isomorphic(&families::theta(), &families::bouquet(2)).unwrap().isomorphic);
        let k4 = families::complete(4);
        let m = delaunay_functional_match(&k4, &three_connectivization(&k4).graph).unwrap();
        assert!(is_unimodular(&m.transform));
    }
}
