//! Small named graphs. Edge ids start at 1.

use crate::graph::MultiGraph;

/// Cycle of length `n >= 1`; `cycle(1)` is a single loop.
pub fn cycle(n: usize) -> MultiGraph {
    assert!(n >= 1);
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::from_pairs(n, &pairs).unwrap()
}

/// Two vertices joined by `k` parallel edges, all oriented `0 -> 1`.
pub fn banana(k: usize) -> MultiGraph {
    MultiGraph::from_pairs(2, &vec![(0, 1); k]).unwrap()
}

pub fn theta() -> MultiGraph {
    banana(3)
}

/// One vertex with `k` loops.
pub fn bouquet(k: usize) -> MultiGraph {
    MultiGraph::from_pairs(1, &vec![(0, 0); k]).unwrap()
}

/// Two loops joined by a bridge: edges `1` (loop at 0), `2` (bridge), `3`
/// (loop at 1).
pub fn dumbbell() -> MultiGraph {
    MultiGraph::from_pairs(2, &[(0, 0), (0, 1), (1, 1)]).unwrap()
}

pub fn complete(n: usize) -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    MultiGraph::from_pairs(n, &pairs).unwrap()
}

pub fn path(n_edges: usize) -> MultiGraph {
    let pairs: Vec<(usize, usize)> = (0..n_edges).map(|i| (i, i + 1)).collect();
    MultiGraph::from_pairs(n_edges + 1, &pairs).unwrap()
}

/// Complete bipartite graph `K_{3,3}`.
pub fn k33() -> MultiGraph {
    let mut pairs = Vec::new();
    for i in 0..3 {
        for j in 3..6 {
            pairs.push((i, j));
        }
    }
    MultiGraph::from_pairs(6, &pairs).unwrap()
}

/// Triangular prism: two triangles joined by a perfect matching.
pub fn prism() -> MultiGraph {
    MultiGraph::from_pairs(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap()
}
