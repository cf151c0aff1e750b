//! Gram lattices of metric graphs and exact isometry testing.

use num_traits::{One, Signed, Zero};

use crate::arith::{determinant, rat, Rational};
use crate::cyclic::{metric_three_edge_class_equal, two_edge_class_equal};
use crate::error::{Error, Result};
use crate::graph::{homology_basis, CycleBasis, MultiGraph};
use crate::tropical::MetricGraph;

pub type IntMatrix = Vec<Vec<i64>>;

/// Positive definite symmetric rational matrix, read as the Gram matrix of a
/// lattice in a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: Vec<Vec<Rational>>,
    det: Rational,
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        for k in 1..=n {
            let minor: Vec<Vec<Rational>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if determinant(&minor) <= Rational::zero() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        let det = determinant(&gram);
        Ok(GramLattice { gram, det })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(crate::arith::to_rational_matrix(rows))
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.gram[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn determinant(&self) -> Rational {
        self.det
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(|x| x.is_integer())
    }

    pub fn norm(&self, x: &[i64]) -> Rational {
        self.inner(x, x)
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    s += self.gram[i][j] * rat((x[i] * y[j]) as i128);
                }
            }
        }
        s
    }

    /// Gram matrix in the basis given by the columns of `u`: `u^T G u`.
    pub fn transform(&self, u: &IntMatrix) -> Result<GramLattice> {
        let n = self.dim();
        let cols: Vec<Vec<i64>> = (0..n).map(|c| u.iter().map(|r| r[c]).collect()).collect();
        let gram = cols
            .iter()
            .map(|x| cols.iter().map(|y| self.inner(x, y)).collect())
            .collect();
        GramLattice::new(gram)
    }
}

/// `gram[i][j] = sum_e b_i(e) b_j(e) l(e)`.
pub fn gram_matrix(mg: &MetricGraph, basis: &CycleBasis) -> Result<GramLattice> {
    basis.validate(mg.graph())?;
    let gram = basis
        .chains
        .iter()
        .map(|bi| {
            basis
                .chains
                .iter()
                .map(|bj| bi.pairing(bj, |e| mg.length(e)))
                .collect()
        })
        .collect();
    GramLattice::new(gram)
}

/// Unit-length Gram matrix in the canonical homology basis.
pub fn unit_gram(g: &MultiGraph) -> GramLattice {
    gram_matrix(&MetricGraph::unit(g.clone()), &homology_basis(g)).expect("canonical basis is valid")
}

/// Gram matrix of a metric graph in the canonical homology basis.
pub fn canonical_gram(mg: &MetricGraph) -> GramLattice {
    gram_matrix(mg, &homology_basis(mg.graph())).expect("canonical basis is valid")
}

/// Decomposition `q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2` with `d_i` on
/// the diagonal and `m_ij` above it.
fn square_completion(g: &GramLattice) -> Vec<Vec<Rational>> {
    let n = g.dim();
    let mut q = g.gram.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = q[k][i] * q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

/// Every nonzero `x` with `q(x) <= bound`, paired with `q(x)`.
pub fn short_vectors(g: &GramLattice, bound: Rational) -> Vec<(Vec<i64>, Rational)> {
    let n = g.dim();
    let mut out = Vec::new();
    if n == 0 || bound < Rational::zero() {
        return out;
    }
    let q = square_completion(g);
    let mut x = vec![0i64; n];
    enumerate_level(&q, n - 1, bound, bound, &mut x, &mut out);
    out.retain(|(v, _)| v.iter().any(|&c| c != 0));
    out
}

fn enumerate_level(
    q: &[Vec<Rational>],
    i: usize,
    remaining: Rational,
    bound: Rational,
    x: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, Rational)>,
) {
    let n = q.len();
    let shift: Rational = (i + 1..n).map(|j| q[i][j] * rat(x[j] as i128)).sum();
    let r = remaining / q[i][i];
    let (c, s) = (to_f64(&shift), to_f64(&r).max(0.0).sqrt());
    let lo = (-c - s).floor() as i64 - 1;
    let hi = (-c + s).ceil() as i64 + 1;
    for xi in lo..=hi {
        let t = rat(xi as i128) + shift;
        let used = q[i][i] * t * t;
        if used > remaining {
            continue;
        }
        x[i] = xi;
        let left = remaining - used;
        if i == 0 {
            out.push((x.clone(), bound - left));
        } else {
            enumerate_level(q, i - 1, left, bound, x, out);
        }
    }
    x[i] = 0;
}

fn to_f64(x: &Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Searches for an integral `U` with `U^T B U = A`; such a `U` is
/// automatically unimodular because `det A = det B`. Columns of `U` are the
/// images of the basis of `A` written in the basis of `B`.
pub fn lattice_isometry_exists(a: &GramLattice, b: &GramLattice) -> Result<Option<IntMatrix>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(format!("{n} vs {}", b.dim())));
    }
    if a.det != b.det {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let max_norm = (0..n).map(|i| a.gram[i][i]).max().unwrap();
    let vectors = short_vectors(b, max_norm);
    let mut candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..vectors.len())
                .filter(|&k| vectors[k].1 == a.gram[i][i])
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    // B v for every candidate, so inner products are dot products
    let bv: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|(v, _)| {
            (0..n)
                .map(|r| (0..n).map(|c| b.gram[r][c] * rat(v[c] as i128)).sum())
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| candidates[i].len());
    for c in candidates.iter_mut() {
        c.sort_unstable();
    }
    let mut chosen = vec![usize::MAX; n];
    if !isometry_search(a, &vectors, &bv, &candidates, &order, 0, &mut chosen) {
        return Ok(None);
    }
    let u: IntMatrix = (0..n)
        .map(|r| (0..n).map(|c| vectors[chosen[c]].0[r]).collect())
        .collect();
    debug_assert_eq!(b.transform(&u).ok().as_ref(), Some(a));
    Ok(Some(u))
}

fn isometry_search(
    a: &GramLattice,
    vectors: &[(Vec<i64>, Rational)],
    bv: &[Vec<Rational>],
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    'next: for &k in &candidates[i] {
        for &j in &order[..depth] {
            let w = &vectors[chosen[j]].0;
            let ip: Rational = (0..w.len()).map(|r| bv[k][r] * rat(w[r] as i128)).sum();
            if ip != a.gram[i][j] {
                continue 'next;
            }
        }
        chosen[i] = k;
        if isometry_search(a, vectors, bv, candidates, order, depth + 1, chosen) {
            return true;
        }
        chosen[i] = usize::MAX;
    }
    false
}

/// Outcome of a decision computed along two independent routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteReport {
    pub direct: bool,
    pub theorem: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbaneseVerdict {
    pub isomorphic: bool,
    pub routes: RouteReport,
    pub witness: Option<IntMatrix>,
}

fn direct_isometry(a: &GramLattice, b: &GramLattice) -> Result<Option<IntMatrix>> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    lattice_isometry_exists(a, b)
}

fn verdict(witness: Option<IntMatrix>, theorem: bool) -> Result<AlbaneseVerdict> {
    let direct = witness.is_some();
    if direct != theorem {
        return Err(Error::RouteDisagreement(format!(
            "lattice isometry {direct}, cyclic equivalence {theorem}"
        )));
    }
    Ok(AlbaneseVerdict {
        isomorphic: direct,
        routes: RouteReport { direct, theorem },
        witness,
    })
}

/// Albanese lattices of two graphs (unit lengths): lattice isometry versus
/// cyclic equivalence of the 2-edge connectivizations.
pub fn albanese_isomorphic(g: &MultiGraph, h: &MultiGraph) -> Result<AlbaneseVerdict> {
    let witness = direct_isometry(&unit_gram(g), &unit_gram(h))?;
    verdict(witness, two_edge_class_equal(g, h)?)
}

/// Metric version: lattice isometry versus length-preserving cyclic
/// equivalence of the metric 3-edge connectivizations.
pub fn albanese_isomorphic_metric(g: &MetricGraph, h: &MetricGraph) -> Result<AlbaneseVerdict> {
    let witness = direct_isometry(&canonical_gram(g), &canonical_gram(h))?;
    verdict(witness, metric_three_edge_class_equal(g, h)?)
}

/// Unimodularity check for an integer matrix.
pub fn is_unimodular(u: &IntMatrix) -> bool {
    let d = determinant(&crate::arith::to_rational_matrix(u));
    d.abs() == Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::IntChain;

    fn theta_basis() -> CycleBasis {
        CycleBasis::new(vec![
            IntChain::from_terms([(1, 1), (2, -1)]),
            IntChain::from_terms([(2, 1), (3, -1)]),
        ])
    }

    #[test]
    fn theta_gram_matrices() {
        let unit = MetricGraph::unit(families::theta());
        let g = gram_matrix(&unit, &theta_basis()).unwrap();
        assert_eq!(g, GramLattice::from_integers(&[vec![2, -1], vec![-1, 2]]).unwrap());
        let lengths = [(1, rat(1)), (2, rat(2)), (3, rat(3))].into_iter().collect();
        let m = MetricGraph::new(families::theta(), lengths).unwrap();
        let g = gram_matrix(&m, &theta_basis()).unwrap();
        assert_eq!(g, GramLattice::from_integers(&[vec![3, -2], vec![-2, 5]]).unwrap());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            GramLattice::from_integers(&[vec![1, 2], vec![2, 1]]),
            Err(Error::NotPositiveDefinite)
        );
        assert_eq!(
            GramLattice::from_integers(&[vec![2, 1], vec![0, 2]]),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn hexagonal_lattice_isometry() {
        let a = GramLattice::from_integers(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let b = GramLattice::from_integers(&[vec![2, 1], vec![1, 2]]).unwrap();
        let u = lattice_isometry_exists(&a, &b).unwrap().unwrap();
        assert!(is_unimodular(&u));
        assert_eq!(b.transform(&u).unwrap(), a);
    }

    #[test]
    fn rank_one_lattices() {
        let a = GramLattice::from_integers(&[vec![4]]).unwrap();
        let b = GramLattice::from_integers(&[vec![5]]).unwrap();
        assert_eq!(lattice_isometry_exists(&a, &b).unwrap(), None);
    }

    #[test]
    fn equal_determinant_is_not_enough() {
        let a = GramLattice::from_integers(&[vec![1, 0], vec![0, 3]]).unwrap();
        let b = GramLattice::from_integers(&[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(lattice_isometry_exists(&a, &b).unwrap(), None);
    }

    #[test]
    fn short_vectors_of_hexagonal_lattice() {
        let a = GramLattice::from_integers(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(short_vectors(&a, rat(2)).len(), 6);
        assert_eq!(short_vectors(&a, rat(1)).len(), 0);
    }

    #[test]
    fn albanese_of_cycles() {
        let v = albanese_isomorphic(&families::cycle(4), &families::cycle(5)).unwrap();
        assert!(!v.isomorphic);
        let v = albanese_isomorphic(&families::dumbbell(), &families::bouquet(2)).unwrap();
        assert!(v.isomorphic);
    }
}
