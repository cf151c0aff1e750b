//! Finite ranked posets and isomorphism testing by individualization and
//! refinement.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default cap on the number of elements for isomorphism testing.
pub const DEFAULT_POSET_BOUND: usize = 10_000;

#[derive(Clone, Debug)]
pub struct RankedPoset {
    labels: Vec<String>,
    /// `(lower, upper)` cover pairs.
    covers: Vec<(usize, usize)>,
    rank: Option<Vec<usize>>,
    /// `up[i]` holds every `j` with `i <= j`.
    up: Vec<FixedBitSet>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    keys: Vec<NodeKey>,
    invariant: u64,
}

/// `(rank, up-degree, down-degree, |up-set|, |down-set|)` in the Hasse diagram.
type NodeKey = (usize, usize, usize, usize, usize);

impl PartialEq for RankedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.covers == other.covers && self.rank == other.rank
    }
}

impl RankedPoset {
    /// Builds the poset of `labels` under `leq`, checking the partial order
    /// axioms. When `rank` is given, every cover must raise it by one.
    pub fn from_relation(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        rank: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        Self::from_up_sets(labels, up, rank)
    }

    pub(crate) fn from_up_sets(
        labels: Vec<String>,
        up: Vec<FixedBitSet>,
        rank: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotAPartialOrder(format!("{} is not <= itself", labels[i])));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are mutually comparable",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "transitivity fails above {} <= {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in up[i].ones() {
                down[j].insert(i);
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            let mut strictly_above = up[i].clone();
            strictly_above.set(i, false);
            for j in strictly_above.ones() {
                // only j itself lies in (i, j]
                if strictly_above.intersection_count(&down[j]) == 1 {
                    covers.push((i, j));
                }
            }
        }
        if let Some(r) = &rank {
            if r.len() != n {
                return Err(Error::DimensionMismatch("rank vector length".into()));
            }
            if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| r[b] != r[a] + 1) {
                return Err(Error::NotAPartialOrder(format!(
                    "cover {} < {} does not raise the rank by one",
                    labels[a], labels[b]
                )));
            }
        }
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up_covers[a].push(b);
            down_covers[b].push(a);
        }
        let mut p = RankedPoset {
            labels,
            covers,
            rank,
            up,
            up_covers,
            down_covers,
            keys: Vec::new(),
            invariant: 0,
        };
        p.keys = (0..n)
            .map(|i| {
                let rank = p.rank.as_ref().map_or(usize::MAX, |r| r[i]);
                (
                    rank,
                    p.up_covers[i].len(),
                    p.down_covers[i].len(),
                    p.up[i].count_ones(..),
                    down[i].count_ones(..),
                )
            })
            .collect();
        p.invariant = p.compute_invariant();
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn rank(&self) -> Option<&[usize]> {
        self.rank.as_deref()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Elements without anything below them.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down_covers[i].is_empty()).collect()
    }

    /// Number of elements of each rank, when ranked.
    pub fn rank_profile(&self) -> Option<Vec<usize>> {
        let r = self.rank.as_ref()?;
        let top = r.iter().copied().max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for &k in r {
            out[k] += 1;
        }
        Some(out)
    }

    /// Isomorphism-invariant fingerprint from color refinement.
    pub fn invariant(&self) -> u64 {
        self.invariant
    }

    fn compute_invariant(&self) -> u64 {
        let n = self.len();
        let hash = |x: &dyn Fn(&mut DefaultHasher)| {
            let mut h = DefaultHasher::new();
            x(&mut h);
            h.finish()
        };
        let mut color: Vec<u64> = (0..n)
            .map(|i| hash(&|h| self.keys[i].hash(h)))
            .collect();
        let mut classes = distinct(&color);
        loop {
            let next: Vec<u64> = (0..n)
                .map(|i| {
                    let mut up: Vec<u64> = self.up_covers[i].iter().map(|&j| color[j]).collect();
                    let mut down: Vec<u64> = self.down_covers[i].iter().map(|&j| color[j]).collect();
                    up.sort_unstable();
                    down.sort_unstable();
                    hash(&|h| (color[i], &up, &down).hash(h))
                })
                .collect();
            let k = distinct(&next);
            color = next;
            if k == classes {
                break;
            }
            classes = k;
        }
        color.sort_unstable();
        hash(&|h| color.hash(h))
    }
}

fn distinct(v: &[u64]) -> usize {
    v.iter().collect::<HashSet<_>>().len()
}

/// Isomorphism `P -> Q` preserving order and rank, as `map[p] = q`.
pub fn poset_isomorphic(p: &RankedPoset, q: &RankedPoset) -> Result<Option<Vec<usize>>> {
    poset_isomorphic_bounded(p, q, DEFAULT_POSET_BOUND)
}

pub fn poset_isomorphic_bounded(
    p: &RankedPoset,
    q: &RankedPoset,
    bound: usize,
) -> Result<Option<Vec<usize>>> {
    for size in [p.len(), q.len()] {
        if size > bound {
            return Err(Error::BoundExceeded {
                what: "poset isomorphism",
                size,
                bound,
            });
        }
    }
    if p.len() != q.len()
        || p.covers.len() != q.covers.len()
        || p.rank.is_some() != q.rank.is_some()
        || p.invariant != q.invariant
    {
        return Ok(None);
    }
    let n = p.len();
    let joint = Joint { p, q, n };
    let mut color: Vec<u32> = {
        let keys: Vec<_> = (0..2 * n).map(|v| joint.node_key(v)).collect();
        let table: BTreeMap<_, u32> = keys
            .iter()
            .cloned()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        keys.iter().map(|k| table[k]).collect()
    };
    Ok(joint.search(&mut color))
}

struct Joint<'a> {
    p: &'a RankedPoset,
    q: &'a RankedPoset,
    n: usize,
}

impl Joint<'_> {
    fn side(&self, v: usize) -> (&RankedPoset, usize) {
        if v < self.n {
            (self.p, v)
        } else {
            (self.q, v - self.n)
        }
    }

    fn node_key(&self, v: usize) -> NodeKey {
        let (poset, i) = self.side(v);
        poset.keys[i]
    }

    fn neighbours(&self, v: usize) -> (Vec<usize>, Vec<usize>) {
        let (poset, i) = self.side(v);
        let off = if v < self.n { 0 } else { self.n };
        (
            poset.up_covers[i].iter().map(|&j| j + off).collect(),
            poset.down_covers[i].iter().map(|&j| j + off).collect(),
        )
    }

    /// Refines to a stable coloring; false if the two sides become unbalanced.
    fn refine(&self, color: &mut [u32]) -> bool {
        let total = 2 * self.n;
        let mut classes = color.iter().collect::<HashSet<_>>().len();
        loop {
            let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..total)
                .map(|v| {
                    let (up, down) = self.neighbours(v);
                    let mut cu: Vec<u32> = up.iter().map(|&j| color[j]).collect();
                    let mut cd: Vec<u32> = down.iter().map(|&j| color[j]).collect();
                    cu.sort_unstable();
                    cd.sort_unstable();
                    (color[v], cu, cd)
                })
                .collect();
            let mut sorted: Vec<&(u32, Vec<u32>, Vec<u32>)> = keys.iter().collect();
            sorted.sort();
            sorted.dedup();
            let table: BTreeMap<&(u32, Vec<u32>, Vec<u32>), u32> =
                sorted.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
            for v in 0..total {
                color[v] = table[&keys[v]];
            }
            let k = table.len();
            if !self.balanced(color) {
                return false;
            }
            if k == classes {
                return true;
            }
            classes = k;
        }
    }

    fn balanced(&self, color: &[u32]) -> bool {
        let mut count: BTreeMap<u32, i64> = BTreeMap::new();
        for (v, &c) in color.iter().enumerate() {
            *count.entry(c).or_default() += if v < self.n { 1 } else { -1 };
        }
        count.values().all(|&c| c == 0)
    }

    fn search(&self, color: &mut Vec<u32>) -> Option<Vec<usize>> {
        if !self.refine(color) {
            return None;
        }
        let mut members: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            members.entry(color[v]).or_default().push(v);
        }
        let target = members
            .iter()
            .filter(|(_, m)| m.len() > 1)
            .min_by_key(|(_, m)| m.len())
            .map(|(&c, m)| (c, m[0]));
        let Some((c, a)) = target else {
            return self.discrete_map(color);
        };
        let fresh = color.iter().copied().max().unwrap() + 1;
        for b in (self.n..2 * self.n).filter(|&b| color[b] == c) {
            let mut next = color.clone();
            next[a] = fresh;
            next[b] = fresh;
            if let Some(m) = self.search(&mut next) {
                return Some(m);
            }
        }
        None
    }

    fn discrete_map(&self, color: &[u32]) -> Option<Vec<usize>> {
        let by_color: BTreeMap<u32, usize> = (self.n..2 * self.n).map(|v| (color[v], v - self.n)).collect();
        let map: Vec<usize> = (0..self.n).map(|v| by_color[&color[v]]).collect();
        let q_covers: HashSet<(usize, usize)> = self.q.covers.iter().copied().collect();
        let ok = self
            .p
            .covers
            .iter()
            .all(|&(a, b)| q_covers.contains(&(map[a], map[b])));
        ok.then_some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> RankedPoset {
        RankedPoset::from_relation(
            (0..n).map(|i| i.to_string()).collect(),
            |i, j| i <= j,
            Some((0..n).collect()),
        )
        .unwrap()
    }

    fn boolean(k: usize) -> RankedPoset {
        let n = 1usize << k;
        RankedPoset::from_relation(
            (0..n).map(|i| format!("{i:b}")).collect(),
            |i, j| i & j == i,
            Some((0..n).map(|i| i.count_ones() as usize).collect()),
        )
        .unwrap()
    }

    #[test]
    fn covers_of_boolean_lattice() {
        let b = boolean(3);
        assert_eq!(b.len(), 8);
        assert_eq!(b.covers().len(), 12);
        assert_eq!(b.rank_profile(), Some(vec![1, 3, 3, 1]));
    }

    #[test]
    fn rejects_non_orders() {
        let r = RankedPoset::from_relation(vec!["a".into(), "b".into()], |_, _| true, None);
        assert!(matches!(r, Err(Error::NotAPartialOrder(_))));
        let r = RankedPoset::from_relation(
            vec!["a".into(), "b".into(), "c".into()],
            |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2),
            None,
        );
        assert!(matches!(r, Err(Error::NotAPartialOrder(_))));
    }

    #[test]
    fn isomorphism_of_relabelled_boolean_lattice() {
        let b = boolean(3);
        // permute the atoms
        let perm = |i: usize| ((i & 1) << 2) | (i >> 1 & 1) | ((i >> 2 & 1) << 1);
        let n = 8;
        let c = RankedPoset::from_relation(
            (0..n).map(|i| format!("{:b}", perm(i))).collect(),
            |i, j| perm(i) & perm(j) == perm(i),
            Some((0..n).map(|i| i.count_ones() as usize).collect()),
        )
        .unwrap();
        let m = poset_isomorphic(&b, &c).unwrap().unwrap();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(b.leq(i, j), c.leq(m[i], m[j]));
            }
        }
    }

    #[test]
    fn non_isomorphic_posets() {
        assert!(poset_isomorphic(&chain(4), &boolean(2)).unwrap().is_none());
        assert!(poset_isomorphic(&chain(3), &chain(4)).unwrap().is_none());
    }

    #[test]
    fn bound_is_enforced() {
        let b = boolean(3);
        assert!(matches!(
            poset_isomorphic_bounded(&b, &b, 4),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
