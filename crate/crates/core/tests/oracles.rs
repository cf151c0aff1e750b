//! Brute-force oracles, written independently of the library algorithms.

use std::collections::{BTreeMap, BTreeSet};

use torelli::c1::c1_sets;
use torelli::cyclic::are_cyclically_equivalent;
use torelli::enumerate::enumerate_multigraphs;
use torelli::families;
use torelli::graph::{
    circuits, is_three_edge_connected, separating_edges, separating_pairs, EdgeId, EdgeSet, MultiGraph,
};
use torelli::iso::graph_isomorphic;
use torelli::lattice::{unit_gram, GramLattice};
use torelli::posets::orientation_posets;
use torelli::tropical::circuits_meeting_in;
use torelli::voronoi::voronoi_relevant_vectors;

type Pairs = Vec<(usize, usize)>;

fn pairs(g: &MultiGraph) -> Pairs {
    g.edges().iter().map(|e| (e.tail, e.head)).collect()
}

fn ids(g: &MultiGraph) -> Vec<EdgeId> {
    g.edges().iter().map(|e| e.id).collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// Components of the graph on all `n` vertices using the edges in `keep`.
fn component_count(n: usize, edges: &Pairs, keep: impl Fn(usize) -> bool) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut count = n;
    for (p, &(a, b)) in edges.iter().enumerate() {
        if keep(p) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
    }
    count
}

/// Edge masks whose subgraph is connected with every touched vertex of degree two.
fn brute_circuits(g: &MultiGraph) -> Vec<u64> {
    let e = pairs(g);
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 1u64..1 << e.len() {
        let mut deg = vec![0usize; n];
        for (p, &(a, b)) in e.iter().enumerate() {
            if mask >> p & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let touched = deg.iter().filter(|&&d| d > 0).count();
        let comps = component_count(n, &e, |p| mask >> p & 1 == 1);
        if comps == n - touched + 1 {
            out.push(mask);
        }
    }
    out
}

fn mask_to_set(g: &MultiGraph, mask: u64) -> EdgeSet {
    ids(g).into_iter().enumerate().filter(|(p, _)| mask >> p & 1 == 1).map(|(_, id)| id).collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn canonical(n: usize, edges: &Pairs) -> Pairs {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Pairs> = None;
    loop {
        let mut img: Pairs = edges
            .iter()
            .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        img.sort();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
        if !next_permutation(&mut perm) {
            return best.unwrap();
        }
    }
}

/// Canonical forms of all graphs with exactly `k` edges and no isolated
/// vertices, optionally connected, by listing every multiset of vertex pairs.
fn brute_classes(k: usize, connected: bool) -> BTreeSet<(usize, Pairs)> {
    let n = 2 * k;
    let all: Pairs = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; k];
    loop {
        let edges: Pairs = choice.iter().map(|&i| all[i]).collect();
        let mut used: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        used.sort();
        used.dedup();
        let m = used.len();
        // vertices must be exactly 0..m, so each class is reached from a
        // relabelling with no gaps
        if used.iter().enumerate().all(|(i, &v)| i == v)
            && (!connected || component_count(m, &edges, |_| true) == 1)
        {
            out.insert((m, canonical(m, &edges)));
        }
        // next non-decreasing sequence
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if choice[i] + 1 < all.len() {
                choice[i] += 1;
                for j in i + 1..k {
                    choice[j] = choice[i];
                }
                break;
            }
        }
    }
}

fn corpus(max_edges: usize) -> Vec<MultiGraph> {
    enumerate_multigraphs(max_edges, true).unwrap()
}

#[test]
fn enumeration_matches_brute_force() {
    let graphs = corpus(5);
    for k in 1..=5 {
        let expected = brute_classes(k, true).len();
        let found = graphs.iter().filter(|g| g.edge_count() == k).count();
        assert_eq!(found, expected, "connected graphs with {k} edges");
    }
    let all = enumerate_multigraphs(4, false).unwrap();
    let expected: usize = (1..=4).map(|k| brute_classes(k, false).len()).sum();
    assert_eq!(all.len(), expected);
    // pairwise distinct under the oracle's canonical form
    let forms: BTreeSet<_> = all.iter().map(|g| canonical(g.vertex_count(), &pairs(g))).collect();
    assert_eq!(forms.len(), all.len());
}

#[test]
fn enumeration_counts_frozen() {
    // the first five agree with the brute-force oracle above
    let graphs = corpus(6);
    let counts: Vec<usize> = (1..=6).map(|k| graphs.iter().filter(|g| g.edge_count() == k).count()).collect();
    assert_eq!(counts, vec![2, 4, 11, 30, 95, 328]);
    assert_eq!(graphs.len(), 470);
}

#[test]
fn isomorphism_matches_brute_force() {
    let graphs = corpus(4);
    for (i, g) in graphs.iter().enumerate() {
        for h in &graphs[i..] {
            let brute = g.vertex_count() == h.vertex_count()
                && g.edge_count() == h.edge_count()
                && canonical(g.vertex_count(), &pairs(g)) == canonical(h.vertex_count(), &pairs(h));
            assert_eq!(graph_isomorphic(g, h), brute, "{g:?} vs {h:?}");
        }
    }
}

#[test]
fn circuits_match_definition() {
    for g in corpus(5) {
        let brute: BTreeSet<EdgeSet> = brute_circuits(&g).into_iter().map(|m| mask_to_set(&g, m)).collect();
        let found: BTreeSet<EdgeSet> = circuits(&g, 63).unwrap().into_iter().collect();
        assert_eq!(found, brute, "{g:?}");
    }
}

#[test]
fn bridges_pairs_and_three_edge_connectivity() {
    for g in corpus(6) {
        let e = pairs(&g);
        let n = g.vertex_count();
        let base = component_count(n, &e, |_| true);
        let id = ids(&g);
        let bridges: EdgeSet = (0..e.len())
            .filter(|&p| component_count(n, &e, |q| q != p) > base)
            .map(|p| id[p])
            .collect();
        assert_eq!(separating_edges(&g), bridges);

        let mut sep_pairs = BTreeSet::new();
        for p in 0..e.len() {
            for q in p + 1..e.len() {
                if !bridges.contains(&id[p])
                    && !bridges.contains(&id[q])
                    && component_count(n, &e, |r| r != p && r != q) > base
                {
                    sep_pairs.insert((id[p].min(id[q]), id[p].max(id[q])));
                }
            }
        }
        assert_eq!(separating_pairs(&g), sep_pairs, "{g:?}");

        let three = base == 1 && bridges.is_empty() && sep_pairs.is_empty();
        assert_eq!(is_three_edge_connected(&g), three, "{g:?}");
    }
}

#[test]
fn c1_sets_are_circuit_classes() {
    for g in corpus(6) {
        let circ = brute_circuits(&g);
        let mut classes: BTreeMap<Vec<u64>, EdgeSet> = BTreeMap::new();
        for (p, e) in g.edges().iter().enumerate() {
            let through: Vec<u64> = circ.iter().copied().filter(|c| c >> p & 1 == 1).collect();
            // edges on no circuit are exactly the bridges
            if !through.is_empty() {
                classes.entry(through).or_default().insert(e.id);
            }
        }
        let brute: BTreeSet<EdgeSet> = classes.into_values().collect();
        let found: BTreeSet<EdgeSet> = c1_sets(&g).sets.into_iter().collect();
        assert_eq!(found, brute, "{g:?}");
    }
}

#[test]
fn cyclic_equivalence_matches_brute_force() {
    let graphs = corpus(4);
    for (i, g) in graphs.iter().enumerate() {
        let cg: BTreeSet<EdgeSet> = brute_circuits(g).into_iter().map(|m| mask_to_set(g, m)).collect();
        for h in &graphs[i..] {
            if g.edge_count() != h.edge_count() {
                continue;
            }
            let ch: BTreeSet<EdgeSet> = brute_circuits(h).into_iter().map(|m| mask_to_set(h, m)).collect();
            let (gi, hi) = (ids(g), ids(h));
            let mut perm: Vec<usize> = (0..gi.len()).collect();
            let mut brute = false;
            loop {
                let image: BTreeSet<EdgeSet> = cg
                    .iter()
                    .map(|c| c.iter().map(|id| hi[perm[gi.iter().position(|x| x == id).unwrap()]]).collect())
                    .collect();
                if image == ch {
                    brute = true;
                    break;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            let found = are_cyclically_equivalent(g, h).unwrap().is_some();
            assert_eq!(found, brute, "{g:?} vs {h:?}");
        }
    }
}

/// Every undirected component strongly connected, checked by reachability.
fn strongly_connected(n: usize, arcs: &[(usize, usize)], undirected: &Pairs) -> bool {
    let reach = |s: usize| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(a, b) in arcs {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    };
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in undirected {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).all(|u| {
        let r = reach(u);
        (0..n).all(|v| find(&mut parent.clone(), u) != find(&mut parent.clone(), v) || r[v])
    })
}

#[test]
fn sp_and_op_sizes_match_brute_force() {
    for g in corpus(5) {
        let e = pairs(&g);
        let n = g.vertex_count();
        let (mut sp, mut op) = (0usize, 0usize);
        for s in 0u64..1 << e.len() {
            let rest: Vec<usize> = (0..e.len()).filter(|p| s >> p & 1 == 0).collect();
            let base = component_count(n, &e, |p| s >> p & 1 == 0);
            let bridgeless = rest
                .iter()
                .all(|&p| component_count(n, &e, |q| s >> q & 1 == 0 && q != p) == base);
            if !bridgeless {
                continue;
            }
            sp += 1;
            let undirected: Pairs = rest.iter().map(|&p| e[p]).collect();
            for flip in 0u64..1 << rest.len() {
                let arcs: Vec<(usize, usize)> = rest
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| if flip >> i & 1 == 1 { (e[p].1, e[p].0) } else { e[p] })
                    .collect();
                if strongly_connected(n, &arcs, &undirected) {
                    op += 1;
                }
            }
        }
        let posets = orientation_posets(&g).unwrap();
        assert_eq!(posets.sp.len(), sp, "SP of {g:?}");
        assert_eq!(posets.op.len(), op, "OP of {g:?}");
    }
}

#[test]
fn hamiltonian_cycle_of_k4_has_no_single_edge_meeting() {
    let k4 = families::complete(4);
    let id_of = |a: usize, b: usize| {
        k4.edges()
            .iter()
            .find(|e| (e.tail, e.head) == (a, b) || (e.tail, e.head) == (b, a))
            .unwrap()
            .id
    };
    let delta: EdgeSet = [id_of(0, 1), id_of(1, 2), id_of(2, 3), id_of(0, 3)].into();
    let circ: Vec<EdgeSet> = brute_circuits(&k4).into_iter().map(|m| mask_to_set(&k4, m)).collect();
    assert_eq!(circ.len(), 7);
    for &e in &delta {
        let single: EdgeSet = [e].into();
        assert!(circ.iter().all(|c| c.intersection(&delta).copied().collect::<EdgeSet>() != single));
        // two circuits meeting exactly in e still exist
        let (c1, c2) = circuits_meeting_in(&k4, e).unwrap();
        assert!(circ.contains(&c1) && circ.contains(&c2));
        assert_eq!(c1.intersection(&c2).copied().collect::<EdgeSet>(), single);
    }
}

fn to_f64(l: &GramLattice) -> Vec<Vec<f64>> {
    l.rows()
        .iter()
        .map(|r| r.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect())
        .collect()
}

fn inverse_diagonal(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        let d = a[c][c];
        a[c].iter_mut().for_each(|x| *x /= d);
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let pivot = a[c].clone();
                a[r].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    (0..n).map(|i| a[i][n + i]).collect()
}

/// Relevant vectors as the unique-up-to-sign minima of the nonzero classes
/// of `L / 2L`, searching a box that provably contains every minimum.
fn brute_relevant(l: &GramLattice) -> Vec<Vec<i64>> {
    let n = l.dim();
    let g = to_f64(l);
    let norm = |x: &[i64]| -> f64 {
        (0..n).map(|i| (0..n).map(|j| g[i][j] * (x[i] * x[j]) as f64).sum::<f64>()).sum()
    };
    let bound = (0u32..1 << n)
        .map(|m| norm(&(0..n).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>()))
        .fold(0.0, f64::max);
    // q(x) <= B forces x_i^2 <= B (G^-1)_ii
    let radius: Vec<i64> = inverse_diagonal(&g).iter().map(|d| (bound * d).sqrt().floor() as i64 + 1).collect();
    let mut best: BTreeMap<Vec<i64>, (i128, Vec<Vec<i64>>)> = BTreeMap::new();
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let parity: Vec<i64> = x.iter().map(|v| v.rem_euclid(2)).collect();
        if parity.iter().any(|&p| p != 0) {
            let q = l.norm(&x);
            // compare exactly, scaled to a common integer
            let key = (q * torelli::arith::rat(1_000_000)).to_integer();
            let entry = best.entry(parity).or_insert((key, Vec::new()));
            if key < entry.0 {
                *entry = (key, Vec::new());
            }
            if key == entry.0 {
                entry.1.push(x.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                let mut out: Vec<Vec<i64>> =
                    best.into_values().filter(|(_, m)| m.len() == 2).flat_map(|(_, m)| m).collect();
                out.sort();
                return out;
            }
            if x[i] < radius[i] {
                x[i] += 1;
                break;
            }
            x[i] = -radius[i];
            i += 1;
        }
    }
}

#[test]
fn relevant_vectors_match_brute_force() {
    let mut checked = 0;
    for g in corpus(6) {
        let l = unit_gram(&g);
        if l.dim() == 0 || l.dim() > 3 {
            continue;
        }
        assert_eq!(voronoi_relevant_vectors(&l).unwrap(), brute_relevant(&l), "{g:?}");
        checked += 1;
    }
    assert!(checked > 300);
    let skew = GramLattice::from_integers(&[vec![3, 1, 1], vec![1, 4, -2], vec![1, -2, 5]]).unwrap();
    assert_eq!(voronoi_relevant_vectors(&skew).unwrap(), brute_relevant(&skew));
}
