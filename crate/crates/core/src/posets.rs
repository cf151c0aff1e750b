//! The poset of bridgeless deletions (SP), of totally cyclic orientations of
//! such deletions (OP), and its quotient by outdegree (OP-bar).

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::arith::rank_int;
use crate::delaunay::edge_functionals;
use crate::error::Result;
use crate::graph::{bridge_positions, homology_basis, tc_orientation_masks, EdgeSet, MultiGraph};
use crate::poset::RankedPoset;

/// Default cap on the number of edges for subset enumeration.
pub const DEFAULT_SUBSET_BOUND: usize = 12;

/// SP, OP and OP-bar of one graph together with the maps between them.
#[derive(Clone, Debug)]
pub struct OrientationPosets {
    pub sp: RankedPoset,
    pub op: RankedPoset,
    pub opbar: RankedPoset,
    /// Support of each OP element, as an index into `sp`.
    pub support: Vec<usize>,
    /// Class of each OP element, as an index into `opbar`.
    pub class: Vec<usize>,
    sp_masks: Vec<u64>,
}

fn set_label(g: &MultiGraph, mask: u64) -> String {
    let ids: Vec<String> = g.set_of_mask(mask).iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn orientation_label(g: &MultiGraph, support: u64, reversed: u64) -> String {
    let mut parts = Vec::new();
    for p in g.positions_by_id() {
        if support >> p & 1 == 0 {
            let sign = if reversed >> p & 1 == 1 { '-' } else { '+' };
            parts.push(format!("{}{sign}", g.edges()[p].id));
        }
    }
    parts.join(",")
}

fn betti_without(g: &MultiGraph, removed: u64) -> usize {
    let alive = |p: usize| removed >> p & 1 == 0;
    let (components, _) = g.components_where(alive);
    let edges = (0..g.edge_count()).filter(|&p| alive(p)).count();
    components + edges - g.vertex_count()
}

/// Subsets `S` with `G \ S` free of separating edges, by size then ids.
fn sp_masks(g: &MultiGraph) -> Vec<u64> {
    let full = g.full_mask();
    let mut masks: Vec<u64> = (0..=full)
        .filter(|&s| bridge_positions(g, |p| s >> p & 1 == 0).is_empty())
        .collect();
    masks.sort_by_key(|&s| (s.count_ones(), g.set_of_mask(s).into_iter().collect::<Vec<_>>()));
    masks
}

pub fn orientation_posets(g: &MultiGraph) -> Result<OrientationPosets> {
    orientation_posets_bounded(g, DEFAULT_SUBSET_BOUND)
}

pub fn orientation_posets_bounded(g: &MultiGraph, bound: usize) -> Result<OrientationPosets> {
    g.require_bound("subset enumeration", bound)?;
    let masks = sp_masks(g);
    let sp = RankedPoset::from_relation(
        masks.iter().map(|&s| set_label(g, s)).collect(),
        |i, j| masks[i] & masks[j] == masks[j],
        Some(masks.iter().map(|&s| betti_without(g, s)).collect()),
    )?;

    // OP elements: (support index, reversed mask)
    let mut elements: Vec<(usize, u64)> = Vec::new();
    for (si, &s) in masks.iter().enumerate() {
        for rev in tc_orientation_masks(g, g.full_mask() & !s) {
            elements.push((si, rev));
        }
    }
    let op_leq = |a: usize, b: usize| {
        let ((ta, ra), (sb, rb)) = (elements[a], elements[b]);
        let (t, s) = (masks[ta], masks[sb]);
        t & s == s && rb & !t == ra
    };
    let op = RankedPoset::from_relation(
        elements
            .iter()
            .map(|&(si, rev)| format!("{}:{}", set_label(g, masks[si]), orientation_label(g, masks[si], rev)))
            .collect(),
        op_leq,
        Some(elements.iter().map(|&(si, _)| sp.rank().unwrap()[si]).collect()),
    )?;

    // OP-bar: classes of equal support and outdegree vector
    let mut class_of_key: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let keys: Vec<(usize, Vec<usize>)> = elements
        .iter()
        .map(|&(si, rev)| (si, outdegrees(g, masks[si], rev)))
        .collect();
    for k in &keys {
        let next = class_of_key.len();
        class_of_key.entry(k.clone()).or_insert(next);
    }
    // renumber classes in key order
    let ordered: Vec<(usize, Vec<usize>)> = class_of_key.keys().cloned().collect();
    let index: BTreeMap<&(usize, Vec<usize>), usize> =
        ordered.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let class: Vec<usize> = keys.iter().map(|k| index[k]).collect();
    let c = ordered.len();
    let mut up = vec![FixedBitSet::with_capacity(c); c];
    for a in 0..elements.len() {
        for b in 0..elements.len() {
            if op.leq(a, b) {
                up[class[a]].insert(class[b]);
            }
        }
    }
    let opbar = RankedPoset::from_up_sets(
        ordered
            .iter()
            .map(|(si, d)| {
                let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                format!("{}:d=({})", set_label(g, masks[*si]), d.join(","))
            })
            .collect(),
        up,
        Some(ordered.iter().map(|(si, _)| sp.rank().unwrap()[*si]).collect()),
    )?;
    Ok(OrientationPosets {
        sp,
        op,
        opbar,
        support: elements.iter().map(|&(si, _)| si).collect(),
        class,
        sp_masks: masks,
    })
}

fn outdegrees(g: &MultiGraph, removed: u64, reversed: u64) -> Vec<usize> {
    let mut d = vec![0; g.vertex_count()];
    for (p, e) in g.edges().iter().enumerate() {
        if removed >> p & 1 == 0 {
            let source = if reversed >> p & 1 == 1 { e.head } else { e.tail };
            d[source] += 1;
        }
    }
    d
}

pub fn sp_poset(g: &MultiGraph) -> Result<RankedPoset> {
    Ok(orientation_posets(g)?.sp)
}

pub fn op_poset(g: &MultiGraph) -> Result<RankedPoset> {
    Ok(orientation_posets(g)?.op)
}

pub fn opbar_poset(g: &MultiGraph) -> Result<RankedPoset> {
    Ok(orientation_posets(g)?.opbar)
}

impl OrientationPosets {
    /// Element sets of SP, in the order of `sp`.
    pub fn sp_sets(&self, g: &MultiGraph) -> Vec<EdgeSet> {
        self.sp_masks.iter().map(|&m| g.set_of_mask(m)).collect()
    }

    /// Whether the support map `OP -> SP` is a quotient of posets.
    pub fn support_is_quotient(&self) -> bool {
        let n = self.sp.len();
        let mut induced = vec![vec![false; n]; n];
        for a in 0..self.op.len() {
            for b in 0..self.op.len() {
                if self.op.leq(a, b) {
                    induced[self.support[a]][self.support[b]] = true;
                }
            }
        }
        (0..n).all(|x| (0..n).all(|y| induced[x][y] == self.sp.leq(x, y)))
    }

    /// Largest number of extensions of an orientation across one SP cover.
    pub fn max_cover_extensions(&self) -> usize {
        let mut best = 0;
        for &(lower, upper) in self.sp.covers() {
            for a in (0..self.op.len()).filter(|&a| self.support[a] == lower) {
                let count = (0..self.op.len())
                    .filter(|&b| self.support[b] == upper && self.op.leq(a, b))
                    .count();
                best = best.max(count);
            }
        }
        best
    }
}

/// Flats of the cographic matroid: sets `S` whose functional span grows when
/// any outside edge is added.
pub fn cographic_flats(g: &MultiGraph) -> Result<Vec<EdgeSet>> {
    g.require_bound("subset enumeration", DEFAULT_SUBSET_BOUND)?;
    let f = edge_functionals(g, &homology_basis(g))?;
    let vectors: Vec<Vec<i64>> = g.edges().iter().map(|e| f.vectors[&e.id].clone()).collect();
    let span_rank = |mask: u64| {
        let rows: Vec<Vec<i64>> = (0..g.edge_count())
            .filter(|p| mask >> p & 1 == 1)
            .map(|p| vectors[p].clone())
            .collect();
        if rows.is_empty() {
            0
        } else {
            rank_int(&rows)
        }
    };
    let full = g.full_mask();
    let mut flats: Vec<EdgeSet> = (0..=full)
        .filter(|&s| {
            let r = span_rank(s);
            (0..g.edge_count())
                .filter(|p| s >> p & 1 == 0)
                .all(|p| span_rank(s | 1 << p) > r)
        })
        .map(|s| g.set_of_mask(s))
        .collect();
    flats.sort();
    Ok(flats)
}
