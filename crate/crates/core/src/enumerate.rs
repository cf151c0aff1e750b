//! Exhaustive enumeration of small multigraphs up to isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::iso::{graph_isomorphic, invariant_key};

/// Largest edge count accepted by [`enumerate_multigraphs`].
pub const MAX_ENUMERATION_EDGES: usize = 7;

/// Isomorphism-class filter bucketed by [`invariant_key`].
#[derive(Default)]
struct Classes {
    buckets: HashMap<(usize, usize, Vec<u64>), Vec<usize>>,
    graphs: Vec<MultiGraph>,
}

impl Classes {
    fn insert(&mut self, g: MultiGraph) -> bool {
        let bucket = self.buckets.entry(invariant_key(&g)).or_default();
        if bucket.iter().any(|&i| graph_isomorphic(&self.graphs[i], &g)) {
            return false;
        }
        bucket.push(self.graphs.len());
        self.graphs.push(g);
        true
    }
}

fn pairs_of(g: &MultiGraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.tail, e.head)).collect()
}

/// Connected graphs with exactly `k` edges, one per isomorphism class.
/// Each arises from one with `k - 1` edges by adding a loop, an edge, or a
/// pendant edge, since every connected graph has an edge whose removal
/// leaves it connected up to an isolated endpoint.
fn connected_by_size(max_edges: usize) -> Vec<Vec<MultiGraph>> {
    let mut levels = vec![vec![MultiGraph::empty(1)]];
    for _ in 1..=max_edges {
        let mut classes = Classes::default();
        for g in levels.last().unwrap() {
            let n = g.vertex_count();
            let base = pairs_of(g);
            let mut candidates: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
            for u in 0..n {
                for v in u..n {
                    candidates.push((n, [base.clone(), vec![(u, v)]].concat()));
                }
                candidates.push((n + 1, [base.clone(), vec![(u, n)]].concat()));
            }
            for (vertices, pairs) in candidates {
                classes.insert(MultiGraph::from_pairs(vertices, &pairs).expect("valid endpoints"));
            }
        }
        levels.push(classes.graphs);
    }
    levels
}

/// One representative per isomorphism class of graphs with between one and
/// `max_edges` edges and no isolated vertices; `max_edges = 0` gives the
/// single point. Edges are numbered `1..` with `tail <= head`.
pub fn enumerate_multigraphs(max_edges: usize, connected_only: bool) -> Result<Vec<MultiGraph>> {
    if max_edges > MAX_ENUMERATION_EDGES {
        return Err(Error::BoundExceeded {
            what: "graph enumeration",
            size: max_edges,
            bound: MAX_ENUMERATION_EDGES,
        });
    }
    if max_edges == 0 {
        return Ok(vec![MultiGraph::empty(1)]);
    }
    let levels = connected_by_size(max_edges);
    if connected_only {
        return Ok(levels.into_iter().skip(1).flatten().collect());
    }
    // multisets of connected components, each with at least one edge
    let parts: Vec<(usize, &MultiGraph)> = levels
        .iter()
        .enumerate()
        .skip(1)
        .flat_map(|(k, gs)| gs.iter().map(move |g| (k, g)))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    combine(&parts, 0, max_edges, &mut chosen, &mut out);
    Ok(out)
}

fn combine<'a>(
    parts: &[(usize, &'a MultiGraph)],
    start: usize,
    budget: usize,
    chosen: &mut Vec<&'a MultiGraph>,
    out: &mut Vec<MultiGraph>,
) {
    for i in start..parts.len() {
        let (k, g) = parts[i];
        if k > budget {
            continue;
        }
        chosen.push(g);
        out.push(disjoint_union(chosen));
        combine(parts, i, budget - k, chosen, out);
        chosen.pop();
    }
}

fn disjoint_union(parts: &[&MultiGraph]) -> MultiGraph {
    let mut pairs = Vec::new();
    let mut offset = 0;
    for g in parts {
        pairs.extend(pairs_of(g).into_iter().map(|(a, b)| (a + offset, b + offset)));
        offset += g.vertex_count();
    }
    MultiGraph::from_pairs(offset, &pairs).expect("valid endpoints")
}
