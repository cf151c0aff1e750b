use std::collections::{BTreeSet, VecDeque};

use super::{EdgeId, EdgeSet, MultiGraph};

/// Bridge positions among edges with `alive[p]`, sorted by edge id.
pub(crate) fn bridge_positions(g: &MultiGraph, alive: impl Fn(usize) -> bool) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let inc = g.incidence();
    let n = g.vertex_count();
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut bridges = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter it, next incidence index)
        let mut stack = vec![(root, NONE, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, entered_by, i) = *top;
            if i < inc[v].len() {
                top.2 += 1;
                let (p, w) = inc[v][i];
                if !alive(p) || p == entered_by || w == v {
                    continue;
                }
                if disc[w] == NONE {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, p, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        bridges.push(entered_by);
                    }
                }
            }
        }
    }
    bridges.sort_by_key(|&p| g.edges()[p].id);
    bridges
}

/// Edges whose removal increases the number of connected components.
pub fn separating_edges(g: &MultiGraph) -> EdgeSet {
    bridge_positions(g, |_| true)
        .into_iter()
        .map(|p| g.edges()[p].id)
        .collect()
}

/// Unordered pairs `(e, f)`, `e < f`, of non-separating edges whose joint
/// removal increases the number of connected components.
pub fn separating_pairs(g: &MultiGraph) -> BTreeSet<(EdgeId, EdgeId)> {
    let bridges: BTreeSet<usize> = bridge_positions(g, |_| true).into_iter().collect();
    let mut pairs = BTreeSet::new();
    for e in 0..g.edge_count() {
        if bridges.contains(&e) {
            continue;
        }
        for f in bridge_positions(g, |p| p != e) {
            if !bridges.contains(&f) {
                let (a, b) = (g.edges()[e].id, g.edges()[f].id);
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    pairs
}

/// Connected, no separating edge and no separating pair. A single vertex
/// carrying loops qualifies; so does a single point.
pub fn is_three_edge_connected(g: &MultiGraph) -> bool {
    g.is_connected() && separating_edges(g).is_empty() && separating_pairs(g).is_empty()
}

struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn arc(&mut self, u: usize, v: usize, c: u32) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    /// Max flow, stopping early once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.head[a];
                    if !seen[v] && self.cap[a] > 0 {
                        seen[v] = true;
                        via[v] = a;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

fn edge_connectivity(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    (1..n)
        .map(|t| {
            let mut net = FlowNet::new(n);
            for e in g.edges().iter().filter(|e| !e.is_loop()) {
                net.arc(e.tail, e.head, 1);
                net.arc(e.head, e.tail, 1);
            }
            net.max_flow(0, t, usize::MAX)
        })
        .min()
        .unwrap_or(0)
}

fn vertex_connectivity(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    let mut adjacent = vec![vec![false; n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        adjacent[e.tail][e.head] = true;
        adjacent[e.head][e.tail] = true;
    }
    let big = n as u32 + 1;
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if adjacent[s][t] {
                continue;
            }
            // vertex v split into 2v (in) and 2v+1 (out)
            let mut net = FlowNet::new(2 * n);
            for v in 0..n {
                net.arc(2 * v, 2 * v + 1, if v == s || v == t { big } else { 1 });
            }
            for e in g.edges().iter().filter(|e| !e.is_loop()) {
                net.arc(2 * e.tail + 1, 2 * e.head, big);
                net.arc(2 * e.head + 1, 2 * e.tail, big);
            }
            best = best.min(net.max_flow(2 * s + 1, 2 * t, best));
        }
    }
    best
}

/// `(edge connectivity, vertex connectivity)`. Both are 0 for disconnected
/// graphs and for graphs with fewer than two vertices. A graph is
/// `k`-connected only if it has at least `k + 1` vertices.
pub fn connectivity(g: &MultiGraph) -> (usize, usize) {
    if g.vertex_count() < 2 || !g.is_connected() {
        return (0, 0);
    }
    (edge_connectivity(g), vertex_connectivity(g))
}

/// Loopless, connected, and no set of at most two vertices whose removal
/// leaves two or more components. Graphs on two or three vertices pass
/// whenever they are loopless and connected, so the theta graph is
/// 3-connected while the vertex connectivity of [`connectivity`] is 1.
pub fn is_three_connected(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if !g.is_connected() || g.edges().iter().any(|e| e.is_loop()) {
        return false;
    }
    let splits = |removed: &[usize]| {
        if n - removed.len() < 2 {
            return false;
        }
        let (count, _) = g.components_where(|p| {
            let e = g.edges()[p];
            !removed.contains(&e.tail) && !removed.contains(&e.head)
        });
        // removed vertices become singleton components
        count - removed.len() >= 2
    };
    (0..n).all(|a| !splits(&[a]) && (a + 1..n).all(|b| !splits(&[a, b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn ids(v: &[EdgeId]) -> EdgeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn bridges_of_named_graphs() {
        assert_eq!(separating_edges(&families::dumbbell()), ids(&[2]));
        assert!(separating_edges(&families::theta()).is_empty());
        assert_eq!(separating_edges(&families::path(3)), ids(&[1, 2, 3]));
        // parallel edges are never bridges
        assert!(separating_edges(&families::banana(2)).is_empty());
    }

    #[test]
    fn separating_pairs_of_c4_are_all_pairs() {
        let pairs = separating_pairs(&families::cycle(4));
        assert_eq!(pairs.len(), 6);
        assert!(separating_pairs(&families::theta()).is_empty());
        assert!(separating_pairs(&families::complete(4)).is_empty());
    }

    #[test]
    fn connectivity_of_named_graphs() {
        assert_eq!(connectivity(&families::theta()), (3, 1));
        assert_eq!(connectivity(&families::complete(4)), (3, 3));
        assert_eq!(connectivity(&families::dumbbell()), (1, 1));
        assert_eq!(connectivity(&families::cycle(5)), (2, 2));
        assert_eq!(connectivity(&families::bouquet(3)), (0, 0));
        assert_eq!(connectivity(&families::k33()), (3, 3));
    }

    #[test]
    fn three_edge_connectivity() {
        assert!(is_three_edge_connected(&families::complete(4)));
        assert!(is_three_edge_connected(&families::bouquet(2)));
        assert!(is_three_edge_connected(&families::cycle(1)));
        assert!(!is_three_edge_connected(&families::cycle(3)));
        assert!(!is_three_edge_connected(&families::dumbbell()));
    }
}
