//! Multigraph isomorphism by vertex backtracking with colour-refinement
//! pruning.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::arith::Rational;
use crate::graph::{EdgeId, MultiGraph};
use crate::tropical::MetricGraph;

/// Sorted edge labels between each pair of vertices; loops on the diagonal.
struct Table<L> {
    n: usize,
    adj: Vec<Vec<Vec<L>>>,
    colour: Vec<u64>,
}

fn hash_of(x: &impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

impl<L: Ord + Clone + Hash> Table<L> {
    fn new(g: &MultiGraph, label: impl Fn(EdgeId) -> L) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![vec![Vec::new(); n]; n];
        for e in g.edges() {
            adj[e.tail][e.head].push(label(e.id));
            if !e.is_loop() {
                adj[e.head][e.tail].push(label(e.id));
            }
        }
        adj.iter_mut().flatten().for_each(|cell| cell.sort());
        let mut colour: Vec<u64> = (0..n).map(|v| hash_of(&(&adj[v][v], g.valence(v)))).collect();
        let mut classes = distinct(&colour);
        loop {
            let next: Vec<u64> = (0..n)
                .map(|v| {
                    let mut around: Vec<(u64, &Vec<L>)> = (0..n)
                        .filter(|&w| w != v && !adj[v][w].is_empty())
                        .map(|w| (colour[w], &adj[v][w]))
                        .collect();
                    around.sort();
                    hash_of(&(colour[v], around))
                })
                .collect();
            let count = distinct(&next);
            colour = next;
            if count == classes {
                break;
            }
            classes = count;
        }
        Table { n, adj, colour }
    }

    fn key(&self) -> Vec<u64> {
        let mut k = self.colour.clone();
        k.sort_unstable();
        k
    }
}

fn distinct(v: &[u64]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

fn search<L: Ord + Clone + Hash>(a: &Table<L>, b: &Table<L>) -> Option<Vec<usize>> {
    if a.n != b.n || a.key() != b.key() {
        return None;
    }
    // rarest colours first, then neighbours of placed vertices
    let mut order: Vec<usize> = Vec::with_capacity(a.n);
    let freq = |c: u64| a.colour.iter().filter(|&&x| x == c).count();
    let mut placed = vec![false; a.n];
    while order.len() < a.n {
        let next = (0..a.n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let linked = order.iter().any(|&w| !a.adj[v][w].is_empty());
                (!linked, freq(a.colour[v]), v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    extend(a, b, &order, 0, &mut map, &mut used).then_some(map)
}

fn extend<L: Ord + Clone + Hash>(
    a: &Table<L>,
    b: &Table<L>,
    order: &[usize],
    i: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == order.len() {
        return true;
    }
    let u = order[i];
    for v in 0..b.n {
        if used[v] || a.colour[u] != b.colour[v] || a.adj[u][u] != b.adj[v][v] {
            continue;
        }
        if order[..i].iter().any(|&w| a.adj[u][w] != b.adj[v][map[w]]) {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend(a, b, order, i + 1, map, used) {
            return true;
        }
        used[v] = false;
        map[u] = usize::MAX;
    }
    false
}

/// Vertex bijection `map[v]` carrying `g` onto `h` with edge multiplicities.
pub fn graph_isomorphism(g: &MultiGraph, h: &MultiGraph) -> Option<Vec<usize>> {
    if g.edge_count() != h.edge_count() {
        return None;
    }
    search(&Table::new(g, |_| ()), &Table::new(h, |_| ()))
}

pub fn graph_isomorphic(g: &MultiGraph, h: &MultiGraph) -> bool {
    graph_isomorphism(g, h).is_some()
}

/// Isomorphism of metric graphs: edges between corresponding vertices must
/// carry the same multiset of lengths.
pub fn metric_graph_isomorphism(g: &MetricGraph, h: &MetricGraph) -> Option<Vec<usize>> {
    if g.graph().edge_count() != h.graph().edge_count() {
        return None;
    }
    let a: Table<Rational> = Table::new(g.graph(), |e| g.length(e));
    let b: Table<Rational> = Table::new(h.graph(), |e| h.length(e));
    search(&a, &b)
}

/// Isomorphism invariant: equal keys are necessary for isomorphism.
pub fn invariant_key(g: &MultiGraph) -> (usize, usize, Vec<u64>) {
    (g.vertex_count(), g.edge_count(), Table::new(g, |_| ()).key())
}
