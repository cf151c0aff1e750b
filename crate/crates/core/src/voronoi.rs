//! Voronoi polyhedron of a lattice: relevant vectors, the face poset under
//! reverse inclusion, and its quotient by lattice translations.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::arith::{rank, rat, solve_unique, Rational};
use crate::error::{Error, Result};
use crate::graph::{betti_number, MultiGraph};
use crate::lattice::{short_vectors, unit_gram, GramLattice};
use crate::poset::{poset_isomorphic, RankedPoset};
use crate::posets::orientation_posets;

/// Largest lattice dimension handled by the face enumeration.
pub const MAX_VORONOI_DIM: usize = 4;

/// Largest genus accepted by [`check_voronoi_conjecture`].
pub const MAX_CONJECTURE_GENUS: usize = 3;

type Point = Vec<Rational>;

fn require_dim(l: &GramLattice) -> Result<()> {
    if l.dim() > MAX_VORONOI_DIM {
        return Err(Error::BoundExceeded {
            what: "Voronoi dimension",
            size: l.dim(),
            bound: MAX_VORONOI_DIM,
        });
    }
    Ok(())
}

/// Vectors `v` such that `±v` are the only minimal vectors of `v + 2L`.
pub fn voronoi_relevant_vectors(l: &GramLattice) -> Result<Vec<Vec<i64>>> {
    require_dim(l)?;
    let n = l.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    // every coset has a 0/1 representative, bounding its minimum
    let bound = (1u32..1 << n)
        .map(|m| l.norm(&(0..n).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>()))
        .max()
        .unwrap();
    let mut cosets: BTreeMap<Vec<i64>, (Rational, Vec<Vec<i64>>)> = BTreeMap::new();
    for (v, q) in short_vectors(l, bound) {
        let key: Vec<i64> = v.iter().map(|x| x.rem_euclid(2)).collect();
        if key.iter().all(|&x| x == 0) {
            continue;
        }
        let entry = cosets.entry(key).or_insert((q, Vec::new()));
        if q < entry.0 {
            *entry = (q, Vec::new());
        }
        if q == entry.0 {
            entry.1.push(v);
        }
    }
    let mut out: Vec<Vec<i64>> = cosets
        .into_values()
        .filter(|(_, minima)| minima.len() == 2)
        .flat_map(|(_, minima)| minima)
        .collect();
    out.sort();
    Ok(out)
}

/// Faces of the Voronoi polyhedron ordered by reverse inclusion, so the
/// interior is the minimum and vertices are maximal. Ranks are codimensions.
#[derive(Clone, Debug)]
pub struct VoronoiFaceLattice {
    pub faces: RankedPoset,
    pub relevant_vectors: Vec<Vec<i64>>,
    /// Dimension of each face.
    pub dims: Vec<usize>,
    /// Indices into `relevant_vectors` of the facets containing each face.
    pub supports: Vec<Vec<usize>>,
    vertices: Vec<Point>,
    face_vertices: Vec<Vec<usize>>,
}

impl VoronoiFaceLattice {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of faces of each dimension, from vertices upward.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().unwrap_or(0);
        let mut f = vec![0; top + 1];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    /// `sum_d (-1)^d f_d` including the polyhedron itself; 1 for a polytope.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Vertex points of face `i`, sorted.
    pub fn face_points(&self, i: usize) -> Vec<Point> {
        self.face_vertices[i].iter().map(|&v| self.vertices[v].clone()).collect()
    }
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        choose(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Face poset of `Vor(L)` and its quotient by translations in `L`.
pub fn voronoi_face_poset(l: &GramLattice) -> Result<(VoronoiFaceLattice, RankedPoset)> {
    let relevant = voronoi_relevant_vectors(l)?;
    let n = l.dim();
    // facet i: <x, B lambda_i> <= q(lambda_i) / 2, with x in basis coordinates
    let normals: Vec<Point> = relevant
        .iter()
        .map(|v| {
            (0..n)
                .map(|r| (0..n).map(|c| l.entry(r, c) * rat(v[c] as i128)).sum())
                .collect()
        })
        .collect();
    let offsets: Vec<Rational> = relevant.iter().map(|v| l.norm(v) / rat(2)).collect();
    let value = |i: usize, x: &Point| -> Rational { normals[i].iter().zip(x).map(|(a, b)| a * b).sum() };

    let mut vertex_set: BTreeSet<Point> = BTreeSet::new();
    if n == 0 {
        vertex_set.insert(Vec::new());
    } else {
        choose(relevant.len(), n, 0, &mut Vec::new(), &mut |idx| {
            let a: Vec<Point> = idx.iter().map(|&i| normals[i].clone()).collect();
            let b: Point = idx.iter().map(|&i| offsets[i]).collect();
            if let Some(x) = solve_unique(&a, &b) {
                if (0..relevant.len()).all(|i| value(i, &x) <= offsets[i]) {
                    vertex_set.insert(x);
                }
            }
        });
    }
    let vertices: Vec<Point> = vertex_set.into_iter().collect();
    let nv = vertices.len();
    let tight: Vec<Vec<usize>> = (0..relevant.len())
        .map(|i| (0..nv).filter(|&v| value(i, &vertices[v]) == offsets[i]).collect())
        .collect();

    // faces are intersections of facets, plus the whole polyhedron
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert((0..nv).collect());
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for t in &tight {
        if faces.insert(t.clone()) {
            frontier.push(t.clone());
        }
    }
    while let Some(f) = frontier.pop() {
        for t in &tight {
            let meet: Vec<usize> = f.iter().copied().filter(|v| t.contains(v)).collect();
            if !meet.is_empty() && faces.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let face_vertices: Vec<Vec<usize>> = faces.into_iter().collect();
    let dims: Vec<usize> = face_vertices
        .iter()
        .map(|f| {
            let base = &vertices[f[0]];
            let diffs: Vec<Point> = f[1..]
                .iter()
                .map(|&v| vertices[v].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            if diffs.is_empty() {
                0
            } else {
                rank(&diffs)
            }
        })
        .collect();
    let supports: Vec<Vec<usize>> = face_vertices
        .iter()
        .map(|f| {
            (0..relevant.len())
                .filter(|&i| f.iter().all(|v| tight[i].contains(v)))
                .collect()
        })
        .collect();
    let m = face_vertices.len();
    let sets: Vec<FixedBitSet> = face_vertices
        .iter()
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(nv);
            f.iter().for_each(|&v| s.insert(v));
            s
        })
        .collect();
    let codim: Vec<usize> = dims.iter().map(|&d| n - d).collect();
    let labels = (0..m)
        .map(|i| {
            let s: Vec<String> = supports[i].iter().map(|k| k.to_string()).collect();
            format!("dim {}:[{}]", dims[i], s.join(","))
        })
        .collect();
    let faces = RankedPoset::from_relation(labels, |i, j| sets[j].is_subset(&sets[i]), Some(codim.clone()))?;

    let lattice = VoronoiFaceLattice {
        faces,
        relevant_vectors: relevant,
        dims,
        supports,
        vertices,
        face_vertices,
    };
    let quotient = translation_quotient(&lattice, &codim)?;
    Ok((lattice, quotient))
}

fn is_translate(a: &[Point], b: &[Point]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let shift: Point = b[0].iter().zip(&a[0]).map(|(x, y)| x - y).collect();
    if !shift.iter().all(|s| s.is_integer()) {
        return false;
    }
    a.iter()
        .zip(b)
        .all(|(p, q)| p.iter().zip(&shift).map(|(x, s)| x + s).eq(q.iter().copied()))
}

fn translation_quotient(v: &VoronoiFaceLattice, codim: &[usize]) -> Result<RankedPoset> {
    let m = v.dims.len();
    // sorted point lists; translation preserves the lexicographic order
    let points: Vec<Vec<Point>> = (0..m).map(|i| v.face_points(i)).collect();
    let mut class = vec![usize::MAX; m];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..m {
        if let Some(c) = reps
            .iter()
            .position(|&r| v.dims[r] == v.dims[i] && is_translate(&points[r], &points[i]))
        {
            class[i] = c;
        } else {
            class[i] = reps.len();
            reps.push(i);
        }
    }
    let k = reps.len();
    let mut up = vec![FixedBitSet::with_capacity(k); k];
    for a in 0..m {
        for b in 0..m {
            if v.faces.leq(a, b) {
                up[class[a]].insert(class[b]);
            }
        }
    }
    let labels = reps
        .iter()
        .enumerate()
        .map(|(c, &r)| format!("class {c} dim {}", v.dims[r]))
        .collect();
    RankedPoset::from_up_sets(labels, up, Some(reps.iter().map(|&r| codim[r]).collect()))
}

/// Outcome of comparing `OP` with `Faces(Vor)` and `OP-bar` with the
/// quotient faces, using unit edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub genus: usize,
    pub op_count: usize,
    pub face_count: usize,
    pub opbar_count: usize,
    pub quotient_count: usize,
    pub faces_isomorphic: bool,
    pub quotient_isomorphic: bool,
    /// Elements of `OP` of rank one (oriented circuits).
    pub oriented_circuits: usize,
    /// Codimension-one faces.
    pub facets: usize,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.faces_isomorphic && self.quotient_isomorphic
    }
}

pub fn check_voronoi_conjecture(g: &MultiGraph) -> Result<ConjectureReport> {
    let genus = betti_number(g);
    if genus > MAX_CONJECTURE_GENUS {
        return Err(Error::BoundExceeded {
            what: "genus for the Voronoi comparison",
            size: genus,
            bound: MAX_CONJECTURE_GENUS,
        });
    }
    let posets = orientation_posets(g)?;
    let (vor, quotient) = voronoi_face_poset(&unit_gram(g))?;
    let op_rank = posets.op.rank().expect("OP is ranked");
    Ok(ConjectureReport {
        genus,
        op_count: posets.op.len(),
        face_count: vor.faces.len(),
        opbar_count: posets.opbar.len(),
        quotient_count: quotient.len(),
        faces_isomorphic: poset_isomorphic(&posets.op, &vor.faces)?.is_some(),
        quotient_isomorphic: poset_isomorphic(&posets.opbar, &quotient)?.is_some(),
        oriented_circuits: op_rank.iter().filter(|&&r| r == 1).count(),
        facets: vor.dims.iter().filter(|&&d| d + 1 == genus).count(),
    })
}

/// Whether each face lies on exactly the facets recorded as its support.
pub fn supports_are_consistent(l: &GramLattice, v: &VoronoiFaceLattice) -> bool {
    let n = l.dim();
    v.face_vertices.iter().zip(&v.supports).all(|(f, s)| {
        v.relevant_vectors.iter().enumerate().all(|(i, lam)| {
            let half = l.norm(lam) / rat(2);
            let on = f.iter().all(|&p| {
                let x = &v.vertices[p];
                let val: Rational = (0..n)
                    .map(|r| (0..n).map(|c| x[r] * l.entry(r, c) * rat(lam[c] as i128)).sum::<Rational>())
                    .sum();
                val == half
            });
            on == s.contains(&i)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn gram(rows: &[Vec<i64>]) -> GramLattice {
        GramLattice::from_integers(rows).unwrap()
    }

    #[test]
    fn relevant_vectors_of_small_lattices() {
        assert_eq!(voronoi_relevant_vectors(&gram(&[vec![1]])).unwrap(), vec![vec![-1], vec![1]]);
        assert_eq!(voronoi_relevant_vectors(&gram(&[vec![3]])).unwrap(), vec![vec![-1], vec![1]]);
        let hex = voronoi_relevant_vectors(&gram(&[vec![2, -1], vec![-1, 2]])).unwrap();
        let expected = vec![vec![-1, -1], vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0], vec![1, 1]];
        assert_eq!(hex, expected);
        // the square lattice has only 4
        assert_eq!(voronoi_relevant_vectors(&gram(&[vec![1, 0], vec![0, 1]])).unwrap().len(), 4);
        // 2e1 is short here but lies in 2L
        let skew = gram(&[vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 2]]);
        assert_eq!(voronoi_relevant_vectors(&skew).unwrap().len(), 8);
    }

    #[test]
    fn face_counts() {
        for (rows, faces, quotient) in [
            (vec![vec![1]], 3, 2),
            (vec![vec![3]], 3, 2),
            (vec![vec![2, -1], vec![-1, 2]], 13, 6),
        ] {
            let l = gram(&rows);
            let (v, q) = voronoi_face_poset(&l).unwrap();
            assert_eq!((v.faces.len(), q.len()), (faces, quotient));
            assert_eq!(v.euler_characteristic(), 1);
            assert!(supports_are_consistent(&l, &v));
            assert_eq!(v.faces.minimal_elements().len(), 1);
        }
    }

    #[test]
    fn hexagon_f_vector() {
        let (v, _) = voronoi_face_poset(&unit_gram(&families::theta())).unwrap();
        assert_eq!(v.f_vector(), vec![6, 6, 1]);
    }

    #[test]
    fn cube_and_truncated_octahedron() {
        let (cube, q) = voronoi_face_poset(&gram(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])).unwrap();
        assert_eq!(cube.f_vector(), vec![8, 12, 6, 1]);
        assert_eq!(q.len(), 8);
        let (k4, _) = voronoi_face_poset(&unit_gram(&families::complete(4))).unwrap();
        assert_eq!(k4.f_vector(), vec![24, 36, 14, 1]);
    }

    #[test]
    fn trivial_lattice_is_a_point() {
        let (v, q) = voronoi_face_poset(&gram(&[])).unwrap();
        assert_eq!((v.faces.len(), q.len()), (1, 1));
    }

    #[test]
    fn conjecture_on_named_graphs() {
        for (g, counts) in [
            (families::cycle(1), (3, 2)),
            (families::theta(), (13, 6)),
            (families::cycle(3), (3, 2)),
        ] {
            let r = check_voronoi_conjecture(&g).unwrap();
            assert_eq!((r.op_count, r.opbar_count), counts);
            assert_eq!((r.face_count, r.quotient_count), counts);
            assert!(r.holds());
            assert_eq!(r.facets, r.oriented_circuits);
        }
    }
}
