use std::collections::{BTreeMap, VecDeque};

use super::homology::{circuit_chain, forest_pivots};
use super::{betti_number, circuit_masks, EdgeId, EdgeSet, MultiGraph};
use crate::arith::{determinant, rat, to_rational_matrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reversed,
}

/// Direction of each edge relative to its reference orientation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    pub directions: BTreeMap<EdgeId, Direction>,
}

impl Orientation {
    pub fn new(directions: BTreeMap<EdgeId, Direction>) -> Self {
        Orientation { directions }
    }

    /// Orientation on the edges of `mask` reversing those in `reversed`.
    pub(crate) fn from_masks(g: &MultiGraph, mask: u64, reversed: u64) -> Self {
        let directions = (0..g.edge_count())
            .filter(|p| mask >> p & 1 == 1)
            .map(|p| {
                let d = if reversed >> p & 1 == 1 {
                    Direction::Reversed
                } else {
                    Direction::Forward
                };
                (g.edges()[p].id, d)
            })
            .collect();
        Orientation { directions }
    }

    pub fn get(&self, e: EdgeId) -> Option<Direction> {
        self.directions.get(&e).copied()
    }

    pub fn restrict(&self, keep: &EdgeSet) -> Orientation {
        Orientation {
            directions: self
                .directions
                .iter()
                .filter(|(e, _)| keep.contains(e))
                .map(|(&e, &d)| (e, d))
                .collect(),
        }
    }

    /// Checks the orientation covers exactly the edges of `g`; returns the
    /// mask of reversed edge positions.
    pub(crate) fn reversed_mask(&self, g: &MultiGraph) -> Result<u64> {
        g.check_edges(self.directions.keys())?;
        let mut mask = 0u64;
        for (p, e) in g.edges().iter().enumerate() {
            match self.directions.get(&e.id) {
                None => return Err(Error::PartialOrientation(e.id)),
                Some(Direction::Reversed) => mask |= 1 << p,
                Some(Direction::Forward) => {}
            }
        }
        Ok(mask)
    }

    /// `(source, target)` of each edge under this orientation.
    fn ends(g: &MultiGraph, reversed: u64, p: usize) -> (usize, usize) {
        let e = g.edges()[p];
        if reversed >> p & 1 == 1 {
            (e.head, e.tail)
        } else {
            (e.tail, e.head)
        }
    }
}

fn reach(adj: &[Vec<usize>], from: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Strong connectivity of every component of the subgraph on `alive`,
/// oriented by `reversed`.
pub(crate) fn is_strongly_connected_mask(g: &MultiGraph, alive: u64, reversed: u64) -> bool {
    let n = g.vertex_count();
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for p in 0..g.edge_count() {
        if alive >> p & 1 == 1 {
            let (s, t) = Orientation::ends(g, reversed, p);
            fwd[s].push(t);
            bwd[t].push(s);
        }
    }
    let (_, label) = g.components_where(|p| alive >> p & 1 == 1);
    let mut done = vec![false; n];
    for v in 0..n {
        if done[label[v]] {
            continue;
        }
        done[label[v]] = true;
        let (f, b) = (reach(&fwd, v), reach(&bwd, v));
        if (0..n).any(|w| label[w] == label[v] && !(f[w] && b[w])) {
            return false;
        }
    }
    true
}

/// Totally cyclic orientations of the subgraph on `alive`, as reversed-edge
/// masks in lexicographic order of edge id (forward before reversed).
pub(crate) fn tc_orientation_masks(g: &MultiGraph, alive: u64) -> Vec<u64> {
    if !super::bridge_positions(g, |p| alive >> p & 1 == 1).is_empty() {
        return Vec::new();
    }
    let positions: Vec<usize> = g
        .positions_by_id()
        .into_iter()
        .filter(|&p| alive >> p & 1 == 1)
        .collect();
    let k = positions.len();
    (0..1u64 << k)
        .map(|x| {
            (0..k)
                .filter(|i| x >> (k - 1 - i) & 1 == 1)
                .fold(0u64, |m, i| m | 1 << positions[i])
        })
        .filter(|&rev| is_strongly_connected_mask(g, alive, rev))
        .collect()
}

/// Every connected component is strongly connected.
pub fn is_totally_cyclic(g: &MultiGraph, o: &Orientation) -> Result<bool> {
    let rev = o.reversed_mask(g)?;
    Ok(is_strongly_connected_mask(g, g.full_mask(), rev))
}

pub fn totally_cyclic_orientations(g: &MultiGraph, bound: usize) -> Result<Vec<Orientation>> {
    g.require_bound("orientation enumeration", bound)?;
    let all = g.full_mask();
    Ok(tc_orientation_masks(g, all)
        .into_iter()
        .map(|rev| Orientation::from_masks(g, all, rev))
        .collect())
}

fn circuit_is_cyclic(g: &MultiGraph, circuit: u64, reversed: u64) -> bool {
    let mut out = vec![0u32; g.vertex_count()];
    let mut touched = vec![false; g.vertex_count()];
    for p in 0..g.edge_count() {
        if circuit >> p & 1 == 1 {
            let (s, t) = Orientation::ends(g, reversed, p);
            out[s] += 1;
            touched[s] = true;
            touched[t] = true;
        }
    }
    (0..g.vertex_count()).all(|v| !touched[v] || out[v] == 1)
}

/// Circuits along which the orientation runs consistently in one direction.
pub fn cyclically_oriented_circuits(
    g: &MultiGraph,
    o: &Orientation,
    bound: usize,
) -> Result<Vec<EdgeSet>> {
    g.require_bound("circuit enumeration", bound)?;
    let rev = o.reversed_mask(g)?;
    Ok(circuit_masks(g)
        .into_iter()
        .filter(|&c| circuit_is_cyclic(g, c, rev))
        .map(|c| g.set_of_mask(c))
        .collect())
}

/// Cut form: no proper non-empty vertex subset `W` of a component has all
/// crossing edges pointing the same way.
pub fn is_totally_cyclic_by_cuts(g: &MultiGraph, o: &Orientation) -> Result<bool> {
    let rev = o.reversed_mask(g)?;
    for comp in g.components() {
        let k = comp.len();
        if k > 20 {
            return Err(Error::BoundExceeded {
                what: "vertex subset enumeration",
                size: k,
                bound: 20,
            });
        }
        let mut index = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in comp.iter().enumerate() {
            index[v] = i;
        }
        for w in 1..(1u32 << k) - 1 {
            let inside = |v: usize| index[v] != usize::MAX && w >> index[v] & 1 == 1;
            let (mut outward, mut inward) = (false, false);
            for p in 0..g.edge_count() {
                let (s, t) = Orientation::ends(g, rev, p);
                if index[s] == usize::MAX {
                    continue;
                }
                match (inside(s), inside(t)) {
                    (true, false) => outward = true,
                    (false, true) => inward = true,
                    _ => {}
                }
            }
            if outward != inward {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For every ordered pair of distinct vertices in one component there is a
/// directed path between them.
pub fn has_directed_paths(g: &MultiGraph, o: &Orientation) -> Result<bool> {
    let rev = o.reversed_mask(g)?;
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for p in 0..g.edge_count() {
        let (s, t) = Orientation::ends(g, rev, p);
        adj[s].push(t);
    }
    let (_, label) = g.components_where(|_| true);
    Ok((0..n).all(|w| {
        let r = reach(&adj, w);
        (0..n).all(|v| label[v] != label[w] || r[v])
    }))
}

/// Some set of cyclically oriented circuits is a `Z`-basis of `H_1`.
pub fn has_cyclic_circuit_basis(g: &MultiGraph, o: &Orientation, bound: usize) -> Result<bool> {
    let cyclic = cyclically_oriented_circuits(g, o, bound)?;
    let b1 = betti_number(g);
    let pivots = forest_pivots(g);
    let coords: Vec<Vec<i64>> = cyclic
        .iter()
        .map(|c| {
            let chain = circuit_chain(g, c);
            pivots.iter().map(|&e| chain.coefficient(e)).collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(b1);
    Ok(basis_subset_exists(&coords, b1, 0, &mut chosen))
}

fn basis_subset_exists(rows: &[Vec<i64>], b1: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == b1 {
        let m: Vec<Vec<i64>> = chosen.iter().map(|&i| rows[i].clone()).collect();
        let d = determinant(&to_rational_matrix(&m));
        return d == rat(1) || d == rat(-1);
    }
    for i in start..rows.len() {
        if rows.len() - i < b1 - chosen.len() {
            break;
        }
        chosen.push(i);
        if basis_subset_exists(rows, b1, i + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Every edge lies on some cyclically oriented circuit.
pub fn every_edge_on_cyclic_circuit(g: &MultiGraph, o: &Orientation, bound: usize) -> Result<bool> {
    let covered: EdgeSet = cyclically_oriented_circuits(g, o, bound)?
        .into_iter()
        .flatten()
        .collect();
    Ok(covered == g.edge_ids())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn counts_of_totally_cyclic_orientations() {
        assert_eq!(totally_cyclic_orientations(&families::theta(), 16).unwrap().len(), 6);
        assert_eq!(totally_cyclic_orientations(&families::cycle(3), 16).unwrap().len(), 2);
        assert!(totally_cyclic_orientations(&families::dumbbell(), 16).unwrap().is_empty());
        assert_eq!(totally_cyclic_orientations(&families::bouquet(2), 16).unwrap().len(), 4);
    }

    #[test]
    fn lexicographic_order() {
        let o = totally_cyclic_orientations(&families::banana(2), 16).unwrap();
        // edges 1 and 2 both 0 -> 1: one of them must be reversed
        assert_eq!(o[0].get(1), Some(Direction::Forward));
        assert_eq!(o[0].get(2), Some(Direction::Reversed));
        assert_eq!(o[1].get(1), Some(Direction::Reversed));
    }

    #[test]
    fn partial_orientation_is_an_error() {
        let g = families::cycle(3);
        let o = Orientation::new([(1, Direction::Forward)].into_iter().collect());
        assert_eq!(is_totally_cyclic(&g, &o), Err(Error::PartialOrientation(2)));
        let extra = Orientation::new(
            [1, 2, 3, 4].into_iter().map(|e| (e, Direction::Forward)).collect(),
        );
        assert_eq!(is_totally_cyclic(&g, &extra), Err(Error::UnknownEdge(4)));
    }

    #[test]
    fn reference_orientation_of_cycle_is_cyclic() {
        let g = families::cycle(4);
        let all_forward = Orientation::from_masks(&g, g.full_mask(), 0);
        assert!(is_totally_cyclic(&g, &all_forward).unwrap());
        assert_eq!(cyclically_oriented_circuits(&g, &all_forward, 16).unwrap().len(), 1);
        let one_flipped = Orientation::from_masks(&g, g.full_mask(), 1);
        assert!(!is_totally_cyclic(&g, &one_flipped).unwrap());
        assert!(!is_totally_cyclic_by_cuts(&g, &one_flipped).unwrap());
    }
}
