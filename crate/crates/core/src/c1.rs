//! C1-sets and the 2- and 3-edge connectivizations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bridge_positions, separating_edges, EdgeId, EdgeSet, MultiGraph};
use crate::tropical::MetricGraph;

/// Partition of the non-separating edges into C1-sets, ordered by smallest
/// member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Decomposition {
    pub sets: Vec<EdgeSet>,
}

impl C1Decomposition {
    pub fn set_containing(&self, e: EdgeId) -> Option<&EdgeSet> {
        self.sets.iter().find(|s| s.contains(&e))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn all_singletons(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }
}

/// `S_e` is `e` together with the separating edges of `G~ \ e`, where `G~` is
/// `G` with its own separating edges removed.
pub fn c1_sets(g: &MultiGraph) -> C1Decomposition {
    let bridges: Vec<usize> = bridge_positions(g, |_| true);
    let is_bridge = |p: usize| bridges.contains(&p);
    let mut assigned = vec![false; g.edge_count()];
    let mut sets = Vec::new();
    for p in g.positions_by_id() {
        if is_bridge(p) || assigned[p] {
            continue;
        }
        let mut s = EdgeSet::new();
        s.insert(g.edges()[p].id);
        assigned[p] = true;
        for q in bridge_positions(g, |q| q != p && !is_bridge(q)) {
            assigned[q] = true;
            s.insert(g.edges()[q].id);
        }
        sets.push(s);
    }
    C1Decomposition { sets }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectivization {
    pub graph: MultiGraph,
    /// Surviving edge id to the edge of the input it comes from.
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
    /// Vertex of the input to vertex of the result.
    pub vertex_map: Vec<usize>,
    /// C1-set of the input to its surviving edge (3-edge connectivization).
    pub psi: Option<BTreeMap<EdgeSet, EdgeId>>,
}

/// Contracts every separating edge.
pub fn two_connectivization(g: &MultiGraph) -> Connectivization {
    let (graph, vertex_map) = g
        .contract_edges(&separating_edges(g))
        .expect("separating edges belong to the graph");
    let edge_map = graph.edge_ids().into_iter().map(|e| (e, e)).collect();
    Connectivization {
        graph,
        edge_map,
        vertex_map,
        psi: None,
    }
}

/// 3-edge connectivization: from the 2-edge connectivization, repeatedly
/// contract the lowest-id edge lying in a separating pair.
pub fn three_connectivization(g: &MultiGraph) -> Connectivization {
    three_connectivization_by(g, |candidates| candidates[0]).expect("canonical choice is valid")
}

/// As [`three_connectivization`], with `choose` picking which candidate to
/// contract at each step. Candidates are the edges lying in a separating
/// pair, in increasing id order.
pub fn three_connectivization_by(
    g: &MultiGraph,
    mut choose: impl FnMut(&[EdgeId]) -> EdgeId,
) -> Result<Connectivization> {
    let two = two_connectivization(g);
    let mut current = two.graph;
    let mut vertex_map = two.vertex_map;
    loop {
        let candidates: Vec<EdgeId> = c1_sets(&current)
            .sets
            .into_iter()
            .filter(|s| s.len() >= 2)
            .flatten()
            .collect::<EdgeSet>()
            .into_iter()
            .collect();
        if candidates.is_empty() {
            break;
        }
        let e = choose(&candidates);
        if !candidates.contains(&e) {
            return Err(Error::Internal(format!(
                "edge {e} is not in a separating pair"
            )));
        }
        let (next, map) = current.contract_edges(&[e].into_iter().collect())?;
        for v in vertex_map.iter_mut() {
            *v = map[*v];
        }
        current = next;
    }
    let mut psi = BTreeMap::new();
    for s in c1_sets(g).sets {
        let survivors: Vec<EdgeId> = s
            .iter()
            .copied()
            .filter(|e| current.edge(*e).is_some())
            .collect();
        if survivors.len() != 1 {
            return Err(Error::Internal(format!(
                "C1-set {s:?} has {} surviving edges",
                survivors.len()
            )));
        }
        psi.insert(s, survivors[0]);
    }
    let edge_map = current.edge_ids().into_iter().map(|e| (e, e)).collect();
    Ok(Connectivization {
        graph: current,
        edge_map,
        vertex_map,
        psi: Some(psi),
    })
}

/// Metric 3-edge connectivization: the surviving edge of each C1-set gets
/// the total length of the set.
pub fn three_connectivization_metric(mg: &MetricGraph) -> (MetricGraph, Connectivization) {
    let conn = three_connectivization(mg.graph());
    let psi = conn.psi.as_ref().expect("3-edge connectivization records psi");
    let lengths = psi
        .iter()
        .map(|(s, &e)| (e, s.iter().map(|&f| mg.length(f)).sum()))
        .collect();
    let metric = MetricGraph::new(conn.graph.clone(), lengths).expect("lengths cover the edges");
    (metric, conn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::families;
    use crate::graph::betti_number;

    fn set(v: &[EdgeId]) -> EdgeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn c1_sets_of_named_graphs() {
        assert_eq!(c1_sets(&families::cycle(3)).sets, vec![set(&[1, 2, 3])]);
        assert_eq!(
            c1_sets(&families::theta()).sets,
            vec![set(&[1]), set(&[2]), set(&[3])]
        );
        assert_eq!(c1_sets(&families::dumbbell()).sets, vec![set(&[1]), set(&[3])]);
        assert!(c1_sets(&families::path(3)).is_empty());
    }

    #[test]
    fn cycle_collapses_to_loop() {
        let c = three_connectivization(&families::cycle(4));
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_ids(), set(&[4]));
        assert_eq!(c.psi.unwrap()[&set(&[1, 2, 3, 4])], 4);
    }

    #[test]
    fn two_connectivization_of_dumbbell_is_bouquet() {
        let c = two_connectivization(&families::dumbbell());
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_ids(), set(&[1, 3]));
        assert!(c.graph.edges().iter().all(|e| e.is_loop()));
    }

    #[test]
    fn metric_lengths_add_up() {
        let c4 = families::cycle(4);
        let lengths = (1..=4).map(|e| (e, rat(e as i128))).collect();
        let mg = MetricGraph::new(c4, lengths).unwrap();
        let (m3, _) = three_connectivization_metric(&mg);
        assert_eq!(m3.graph().edge_count(), 1);
        assert_eq!(m3.lengths().values().copied().collect::<Vec<_>>(), vec![rat(10)]);
    }

    #[test]
    fn betti_number_is_preserved() {
        for g in [families::dumbbell(), families::cycle(5), families::complete(4)] {
            let b = betti_number(&g);
            assert_eq!(betti_number(&two_connectivization(&g).graph), b);
            assert_eq!(betti_number(&three_connectivization(&g).graph), b);
        }
    }

    #[test]
    fn rejects_invalid_choice() {
        let r = three_connectivization_by(&families::cycle(3), |_| 99);
        assert!(matches!(r, Err(Error::Internal(_))));
    }
}
