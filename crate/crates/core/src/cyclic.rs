//! Cyclic equivalence: edge bijections carrying circuits onto circuits.

use std::collections::{BTreeMap, HashSet};

use crate::c1::{c1_sets, three_connectivization, three_connectivization_metric, two_connectivization};
use crate::error::Result;
use crate::graph::{circuit_masks, separating_edges, EdgeId, MultiGraph, DEFAULT_ENUMERATION_BOUND};
use crate::tropical::MetricGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicBijection {
    pub mapping: BTreeMap<EdgeId, EdgeId>,
}

/// Per-edge data preserved by every cyclic bijection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct EdgeSignature {
    separating: bool,
    c1_size: usize,
    /// Sorted lengths of the circuits through the edge.
    circuit_lengths: Vec<u32>,
}

/// Precomputed circuit data of one graph, reusable across many comparisons.
#[derive(Clone, Debug)]
pub struct CycleProfile {
    ids: Vec<EdgeId>,
    circuits: Vec<u64>,
    circuit_set: HashSet<u64>,
    signatures: Vec<EdgeSignature>,
    key: Vec<EdgeSignature>,
}

impl CycleProfile {
    pub fn new(g: &MultiGraph) -> Result<Self> {
        Self::with_bound(g, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(g: &MultiGraph, bound: usize) -> Result<Self> {
        g.require_bound("circuit enumeration", bound)?;
        let circuits = circuit_masks(g);
        let bridges = separating_edges(g);
        let c1 = c1_sets(g);
        let signatures: Vec<EdgeSignature> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(p, e)| {
                let mut circuit_lengths: Vec<u32> = circuits
                    .iter()
                    .filter(|&&c| c >> p & 1 == 1)
                    .map(|c| c.count_ones())
                    .collect();
                circuit_lengths.sort_unstable();
                EdgeSignature {
                    separating: bridges.contains(&e.id),
                    c1_size: c1.set_containing(e.id).map_or(0, |s| s.len()),
                    circuit_lengths,
                }
            })
            .collect();
        let mut key = signatures.clone();
        key.sort();
        Ok(CycleProfile {
            ids: g.edges().iter().map(|e| e.id).collect(),
            circuit_set: circuits.iter().copied().collect(),
            circuits,
            signatures,
            key,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.ids.len()
    }

    pub fn circuit_count(&self) -> usize {
        self.circuits.len()
    }

    /// Cheap necessary condition for cyclic equivalence.
    pub fn may_match(&self, other: &CycleProfile) -> bool {
        self.key == other.key && self.circuits.len() == other.circuits.len()
    }

    /// Searches for a cyclic bijection whose edge pairs all satisfy
    /// `compatible(edge of self, edge of other)`.
    pub fn find_bijection(
        &self,
        other: &CycleProfile,
        compatible: impl Fn(EdgeId, EdgeId) -> bool,
    ) -> Option<CyclicBijection> {
        if !self.may_match(other) {
            return None;
        }
        let m = self.ids.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&p| {
            let s = &self.signatures[p];
            (s.separating, std::cmp::Reverse(s.circuit_lengths.len()), p)
        });
        let mut rank = vec![0; m];
        for (i, &p) in order.iter().enumerate() {
            rank[p] = i;
        }
        // circuits to verify once the edge at order index i is placed
        let mut due: Vec<Vec<u64>> = vec![Vec::new(); m];
        for &c in &self.circuits {
            let last = (0..m).filter(|&p| c >> p & 1 == 1).map(|p| rank[p]).max().unwrap();
            due[last].push(c);
        }
        let mut map = vec![usize::MAX; m];
        let mut search = Search {
            a: self,
            b: other,
            order: &order,
            due: &due,
            compatible: &compatible,
        };
        if search.extend(0, 0, &mut map) {
            Some(CyclicBijection {
                mapping: (0..m).map(|p| (self.ids[p], other.ids[map[p]])).collect(),
            })
        } else {
            None
        }
    }

    /// Checks that `bij` carries the circuit set of `self` onto that of
    /// `other`.
    pub fn is_cyclic_bijection(&self, other: &CycleProfile, bij: &CyclicBijection) -> bool {
        if bij.mapping.len() != self.ids.len() || self.circuits.len() != other.circuits.len() {
            return false;
        }
        let pos_b: BTreeMap<EdgeId, usize> =
            other.ids.iter().enumerate().map(|(p, &e)| (e, p)).collect();
        let mut map = Vec::with_capacity(self.ids.len());
        for e in &self.ids {
            match bij.mapping.get(e).and_then(|f| pos_b.get(f)) {
                Some(&q) => map.push(q),
                None => return false,
            }
        }
        let image: HashSet<usize> = map.iter().copied().collect();
        image.len() == map.len()
            && self
                .circuits
                .iter()
                .all(|&c| other.circuit_set.contains(&image_mask(c, &map)))
    }
}

fn image_mask(c: u64, map: &[usize]) -> u64 {
    (0..map.len())
        .filter(|p| c >> p & 1 == 1)
        .fold(0u64, |acc, p| acc | 1 << map[p])
}

struct Search<'a, F> {
    a: &'a CycleProfile,
    b: &'a CycleProfile,
    order: &'a [usize],
    due: &'a [Vec<u64>],
    compatible: &'a F,
}

impl<F: Fn(EdgeId, EdgeId) -> bool> Search<'_, F> {
    fn extend(&mut self, i: usize, used: u64, map: &mut Vec<usize>) -> bool {
        if i == self.order.len() {
            return true;
        }
        let p = self.order[i];
        for q in 0..self.b.ids.len() {
            if used >> q & 1 == 1
                || self.a.signatures[p] != self.b.signatures[q]
                || !(self.compatible)(self.a.ids[p], self.b.ids[q])
            {
                continue;
            }
            map[p] = q;
            let ok = self.due[i]
                .iter()
                .all(|&c| self.b.circuit_set.contains(&image_mask(c, map)));
            if ok && self.extend(i + 1, used | 1 << q, map) {
                return true;
            }
            map[p] = usize::MAX;
        }
        false
    }
}

pub fn are_cyclically_equivalent(g: &MultiGraph, h: &MultiGraph) -> Result<Option<CyclicBijection>> {
    let (a, b) = (CycleProfile::new(g)?, CycleProfile::new(h)?);
    Ok(a.find_bijection(&b, |_, _| true))
}

/// Cyclic bijection preserving edge lengths.
pub fn metric_cyclic_bijection(g: &MetricGraph, h: &MetricGraph) -> Result<Option<CyclicBijection>> {
    let (a, b) = (CycleProfile::new(g.graph())?, CycleProfile::new(h.graph())?);
    Ok(a.find_bijection(&b, |e, f| g.length(e) == h.length(f)))
}

/// `G^3` and `H^3` are cyclically equivalent.
pub fn three_edge_class_equal(g: &MultiGraph, h: &MultiGraph) -> Result<bool> {
    Ok(are_cyclically_equivalent(&three_connectivization(g).graph, &three_connectivization(h).graph)?.is_some())
}

/// `G^2` and `H^2` are cyclically equivalent.
pub fn two_edge_class_equal(g: &MultiGraph, h: &MultiGraph) -> Result<bool> {
    Ok(are_cyclically_equivalent(&two_connectivization(g).graph, &two_connectivization(h).graph)?.is_some())
}

/// `(G^3, l^3)` and `(H^3, l^3)` are related by a length-preserving cyclic
/// bijection.
pub fn metric_three_edge_class_equal(g: &MetricGraph, h: &MetricGraph) -> Result<bool> {
    let (g3, _) = three_connectivization_metric(g);
    let (h3, _) = three_connectivization_metric(h);
    Ok(metric_cyclic_bijection(&g3, &h3)?.is_some())
}
