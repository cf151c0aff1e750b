//! Finite multigraphs with loops, parallel edges and a fixed reference
//! orientation on every edge.

mod connectivity;
mod homology;
mod orientation;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub use connectivity::{connectivity, is_three_connected, is_three_edge_connected, separating_edges, separating_pairs};
pub use homology::{betti_number, circuits, homology_basis, CycleBasis, IntChain};
pub use orientation::{
    cyclically_oriented_circuits, every_edge_on_cyclic_circuit, has_cyclic_circuit_basis,
    has_directed_paths, is_totally_cyclic, is_totally_cyclic_by_cuts,
    totally_cyclic_orientations, Direction, Orientation,
};

pub(crate) use connectivity::bridge_positions;
pub(crate) use homology::{circuit_chain, circuit_masks};
pub(crate) use orientation::tc_orientation_masks;

pub type EdgeId = u32;
pub type EdgeSet = BTreeSet<EdgeId>;

/// Default cap on the number of edges for exhaustive subset enumerations.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    index: BTreeMap<EdgeId, usize>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let mut index = BTreeMap::new();
        for (pos, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        edge: e.id,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if index.insert(e.id, pos).is_some() {
                return Err(Error::DuplicateEdgeId(e.id));
            }
        }
        Ok(MultiGraph {
            vertex_count,
            edges,
            index,
        })
    }

    /// Edges `(tail, head)` numbered `1, 2, ...` in the given order.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            vertex_count,
            pairs.iter().enumerate().map(|(i, &(tail, head))| Edge {
                id: i as EdgeId + 1,
                tail,
                head,
            }),
        )
    }

    pub fn empty(vertex_count: usize) -> Self {
        MultiGraph {
            vertex_count,
            edges: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.index.get(&id).map(|&p| &self.edges[p])
    }

    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.index.keys().copied().collect()
    }

    /// Edge positions sorted by edge id.
    pub(crate) fn positions_by_id(&self) -> Vec<usize> {
        self.index.values().copied().collect()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.index.keys().next_back().copied()
    }

    pub(crate) fn check_edges<'a>(&self, ids: impl IntoIterator<Item = &'a EdgeId>) -> Result<()> {
        for id in ids {
            if !self.index.contains_key(id) {
                return Err(Error::UnknownEdge(*id));
            }
        }
        Ok(())
    }

    /// Valence with loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.tail == v) as usize + (e.head == v) as usize)
            .sum()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.is_loop() && e.tail == v).count()
    }

    /// For each vertex, `(edge position, other endpoint)` for every incident
    /// edge, sorted by edge id. Loops appear once.
    pub(crate) fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for p in self.positions_by_id() {
            let e = self.edges[p];
            inc[e.tail].push((p, e.head));
            if !e.is_loop() {
                inc[e.head].push((p, e.tail));
            }
        }
        inc
    }

    /// Component label of every vertex, restricted to edges with `alive[p]`.
    pub(crate) fn components_where(&self, alive: impl Fn(usize) -> bool) -> (usize, Vec<usize>) {
        let mut dsu = Dsu::new(self.vertex_count);
        for (p, e) in self.edges.iter().enumerate() {
            if alive(p) {
                dsu.union(e.tail, e.head);
            }
        }
        dsu.labels()
    }

    pub fn component_count(&self) -> usize {
        self.components_where(|_| true).0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (count, label) = self.components_where(|_| true);
        let mut out = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// `G \ S`: remove the edges of `S`, keep every vertex.
    pub fn delete(&self, s: &EdgeSet) -> Result<MultiGraph> {
        self.check_edges(s)?;
        Ok(self.filter_edges(|e| !s.contains(&e.id)))
    }

    pub(crate) fn filter_edges(&self, keep: impl Fn(&Edge) -> bool) -> MultiGraph {
        let edges: Vec<Edge> = self.edges.iter().copied().filter(|e| keep(e)).collect();
        let index = edges.iter().enumerate().map(|(p, e)| (e.id, p)).collect();
        MultiGraph {
            vertex_count: self.vertex_count,
            edges,
            index,
        }
    }

    /// `G(S)`: contract every edge outside `S`. Returns the contracted graph
    /// and the vertex map `V(G) -> V(G(S))`. Vertices of the result are
    /// numbered in order of their smallest preimage.
    pub fn contract_complement(&self, s: &EdgeSet) -> Result<(MultiGraph, Vec<usize>)> {
        self.check_edges(s)?;
        let (count, label) = self.components_where(|p| !s.contains(&self.edges[p].id));
        let edges = self
            .edges
            .iter()
            .filter(|e| s.contains(&e.id))
            .map(|e| Edge {
                id: e.id,
                tail: label[e.tail],
                head: label[e.head],
            });
        Ok((MultiGraph::new(count, edges)?, label))
    }

    /// Contracts exactly the edges of `t`.
    pub fn contract_edges(&self, t: &EdgeSet) -> Result<(MultiGraph, Vec<usize>)> {
        self.check_edges(t)?;
        let keep: EdgeSet = self.edge_ids().difference(t).copied().collect();
        self.contract_complement(&keep)
    }

    /// Underlying subgraph spanned by a set of edges: same vertex set.
    pub fn restrict(&self, s: &EdgeSet) -> Result<MultiGraph> {
        self.check_edges(s)?;
        Ok(self.filter_edges(|e| s.contains(&e.id)))
    }

    /// Drops vertices with no incident edge, renumbering the rest in order.
    pub fn without_isolated_vertices(&self) -> MultiGraph {
        let mut used = vec![false; self.vertex_count];
        for e in &self.edges {
            used[e.tail] = true;
            used[e.head] = true;
        }
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if used[v] {
                map[v] = next;
                next += 1;
            }
        }
        let edges = self.edges.iter().map(|e| Edge {
            id: e.id,
            tail: map[e.tail],
            head: map[e.head],
        });
        MultiGraph::new(next, edges).expect("renumbering preserves validity")
    }

    /// Same graph with the listed edges' reference orientations reversed.
    pub fn with_reversed(&self, flip: &EdgeSet) -> MultiGraph {
        let edges = self.edges.iter().map(|e| {
            if flip.contains(&e.id) {
                Edge {
                    id: e.id,
                    tail: e.head,
                    head: e.tail,
                }
            } else {
                *e
            }
        });
        MultiGraph::new(self.vertex_count, edges).expect("reversal preserves validity")
    }

    /// Same graph with edge ids renamed through `f` (must be injective).
    pub fn relabel_edges(&self, f: impl Fn(EdgeId) -> EdgeId) -> Result<MultiGraph> {
        MultiGraph::new(
            self.vertex_count,
            self.edges.iter().map(|e| Edge {
                id: f(e.id),
                tail: e.tail,
                head: e.head,
            }),
        )
    }

    pub(crate) fn set_of_mask(&self, mask: u64) -> EdgeSet {
        (0..self.edges.len())
            .filter(|p| mask >> p & 1 == 1)
            .map(|p| self.edges[p].id)
            .collect()
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.edges.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }

    pub(crate) fn require_bound(&self, what: &'static str, bound: usize) -> Result<()> {
        let size = self.edges.len();
        if size > bound || size > 63 {
            return Err(Error::BoundExceeded {
                what,
                size,
                bound: bound.min(63),
            });
        }
        Ok(())
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller index as root so labels are stable.
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    /// Dense labels numbered by smallest member.
    pub(crate) fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut root_label = vec![usize::MAX; n];
        let mut count = 0;
        for v in 0..n {
            let r = self.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            label[v] = root_label[r];
        }
        (count, label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn construction_errors() {
        let dup = MultiGraph::new(
            2,
            [
                Edge { id: 1, tail: 0, head: 1 },
                Edge { id: 1, tail: 1, head: 0 },
            ],
        );
        assert_eq!(dup, Err(Error::DuplicateEdgeId(1)));
        let oob = MultiGraph::from_pairs(2, &[(0, 2)]);
        assert!(matches!(oob, Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn contraction_of_cycle_edges() {
        let c4 = families::cycle(4);
        let keep: EdgeSet = [1].into_iter().collect();
        let (g, map) = c4.contract_complement(&keep).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.edges()[0].is_loop());
        assert_eq!(map, vec![0; 4]);
    }

    #[test]
    fn contract_empty_set_collapses_components() {
        let d = families::dumbbell();
        let (g, _) = d.contract_complement(&EdgeSet::new()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn unknown_edges_are_rejected() {
        let c3 = families::cycle(3);
        let s: EdgeSet = [9].into_iter().collect();
        assert_eq!(c3.delete(&s), Err(Error::UnknownEdge(9)));
        assert_eq!(c3.contract_complement(&s).unwrap_err(), Error::UnknownEdge(9));
    }

    #[test]
    fn valence_counts_loops_twice() {
        let d = families::dumbbell();
        assert_eq!(d.valence(0), 3);
        assert_eq!(families::bouquet(2).valence(0), 4);
    }
}
