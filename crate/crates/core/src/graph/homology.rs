use std::collections::BTreeMap;

use super::{Dsu, EdgeId, EdgeSet, MultiGraph};
use crate::arith::{determinant, rat, solve_unique, to_rational_matrix, Rational};
use crate::error::{Error, Result};

/// Integer 1-chain, stored sparsely (no zero coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntChain(BTreeMap<EdgeId, i64>);

impl IntChain {
    pub fn new() -> Self {
        IntChain(BTreeMap::new())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (EdgeId, i64)>) -> Self {
        let mut c = IntChain::new();
        for (e, k) in terms {
            c.add_term(e, k);
        }
        c
    }

    pub fn add_term(&mut self, e: EdgeId, k: i64) {
        let entry = self.0.entry(e).or_insert(0);
        *entry += k;
        if *entry == 0 {
            self.0.remove(&e);
        }
    }

    pub fn coefficient(&self, e: EdgeId) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (EdgeId, i64)> + '_ {
        self.0.iter().map(|(&e, &k)| (e, k))
    }

    pub fn support(&self) -> EdgeSet {
        self.0.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> IntChain {
        IntChain(self.0.iter().map(|(&e, &k)| (e, -k)).collect())
    }

    pub fn plus(&self, other: &IntChain) -> IntChain {
        let mut c = self.clone();
        for (e, k) in other.terms() {
            c.add_term(e, k);
        }
        c
    }

    /// Boundary `sum k_e (head(e) - tail(e))` as a vector indexed by vertex.
    pub fn boundary(&self, g: &MultiGraph) -> Result<Vec<i64>> {
        let mut b = vec![0; g.vertex_count()];
        for (id, k) in self.terms() {
            let e = g.edge(id).ok_or(Error::UnknownEdge(id))?;
            b[e.head] += k;
            b[e.tail] -= k;
        }
        Ok(b)
    }

    pub fn is_cycle(&self, g: &MultiGraph) -> bool {
        self.boundary(g).is_ok_and(|b| b.iter().all(|&x| x == 0))
    }

    /// Weighted pairing `sum a_e b_e l(e)`.
    pub fn pairing(&self, other: &IntChain, length: impl Fn(EdgeId) -> Rational) -> Rational {
        self.terms()
            .filter_map(|(e, a)| {
                let b = other.coefficient(e);
                (b != 0).then(|| rat((a * b) as i128) * length(e))
            })
            .sum()
    }
}

/// Ordered integral basis of the first homology group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleBasis {
    pub chains: Vec<IntChain>,
}

impl CycleBasis {
    pub fn new(chains: Vec<IntChain>) -> Self {
        CycleBasis { chains }
    }

    pub fn dim(&self) -> usize {
        self.chains.len()
    }

    /// Coordinates of `c` in this basis, if `c` is an integral combination.
    pub fn coordinates(&self, c: &IntChain) -> Option<Vec<i64>> {
        let mut support: EdgeSet = c.support();
        for b in &self.chains {
            support.extend(b.support());
        }
        let a: Vec<Vec<Rational>> = support
            .iter()
            .map(|&e| {
                self.chains
                    .iter()
                    .map(|b| rat(b.coefficient(e) as i128))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = support
            .iter()
            .map(|&e| rat(c.coefficient(e) as i128))
            .collect();
        if self.chains.is_empty() {
            return c.is_zero().then(Vec::new);
        }
        let x = solve_unique(&a, &rhs)?;
        x.iter()
            .map(|v| v.is_integer().then(|| *v.numer() as i64))
            .collect()
    }

    /// Checks that the chains are cycles of `g` forming a `Z`-basis of
    /// `H_1(g, Z)`.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let b1 = betti_number(g);
        if self.chains.len() != b1 {
            return Err(Error::BasisMismatch(format!(
                "{} chains for first Betti number {b1}",
                self.chains.len()
            )));
        }
        for (i, c) in self.chains.iter().enumerate() {
            g.check_edges(c.0.keys())?;
            if !c.is_cycle(g) {
                return Err(Error::BasisMismatch(format!("chain {i} is not a cycle")));
            }
        }
        // Every cycle is determined by its coefficients on the non-tree edges
        // of a spanning forest, and those coefficients are integral
        // coordinates in the forest basis.
        let pivots = forest_pivots(g);
        let m: Vec<Vec<i64>> = self
            .chains
            .iter()
            .map(|c| pivots.iter().map(|&e| c.coefficient(e)).collect())
            .collect();
        let det = determinant(&to_rational_matrix(&m));
        if det != rat(1) && det != rat(-1) {
            return Err(Error::BasisMismatch(format!(
                "chains span a sublattice of index {}",
                det.numer().abs()
            )));
        }
        Ok(())
    }
}

pub fn betti_number(g: &MultiGraph) -> usize {
    g.component_count() + g.edge_count() - g.vertex_count()
}

pub(crate) struct SpanningForest {
    /// `(parent vertex, edge position)` for non-root vertices.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    is_tree: Vec<bool>,
}

impl SpanningForest {
    fn non_tree_edges(&self, g: &MultiGraph) -> Vec<EdgeId> {
        g.positions_by_id()
            .into_iter()
            .filter(|&p| !self.is_tree[p])
            .map(|p| g.edges()[p].id)
            .collect()
    }

    /// Signed tree path from `from` to `to` (same component).
    fn path(&self, g: &MultiGraph, mut from: usize, mut to: usize) -> IntChain {
        let mut c = IntChain::new();
        let mut tail_part = Vec::new();
        while from != to {
            if self.depth[from] >= self.depth[to] {
                let (p, pos) = self.parent[from].expect("non-root vertex");
                let e = g.edges()[pos];
                c.add_term(e.id, if e.tail == from { 1 } else { -1 });
                from = p;
            } else {
                let (p, pos) = self.parent[to].expect("non-root vertex");
                tail_part.push((pos, p, to));
                to = p;
            }
        }
        for (pos, a, b) in tail_part.into_iter().rev() {
            let e = g.edges()[pos];
            c.add_term(e.id, if e.tail == a && e.head == b { 1 } else { -1 });
        }
        c
    }
}

/// Non-tree edges of the canonical forest. A cycle's coefficients on these
/// edges are its coordinates in the canonical basis.
pub(crate) fn forest_pivots(g: &MultiGraph) -> Vec<EdgeId> {
    spanning_forest(g).non_tree_edges(g)
}

/// Depth-first forest, roots taken in increasing vertex order, incident
/// edges explored in increasing edge id order.
pub(crate) fn spanning_forest(g: &MultiGraph) -> SpanningForest {
    let inc = g.incidence();
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut is_tree = vec![false; g.edge_count()];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if i == inc[v].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (p, w) = inc[v][i];
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some((v, p));
                depth[w] = depth[v] + 1;
                is_tree[p] = true;
                stack.push((w, 0));
            }
        }
    }
    SpanningForest {
        parent,
        depth,
        is_tree,
    }
}

/// Canonical basis: one chain per non-tree edge of the depth-first forest
/// (increasing edge id), with coefficient `+1` on that edge plus the tree path
/// from its head back to its tail.
pub fn homology_basis(g: &MultiGraph) -> CycleBasis {
    let forest = spanning_forest(g);
    let chains = forest
        .non_tree_edges(g)
        .into_iter()
        .map(|id| {
            let e = *g.edge(id).unwrap();
            let mut c = forest.path(g, e.head, e.tail);
            c.add_term(id, 1);
            c
        })
        .collect();
    CycleBasis { chains }
}

pub(crate) fn is_circuit_mask(g: &MultiGraph, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut degree = vec![0u32; g.vertex_count()];
    let mut dsu = Dsu::new(g.vertex_count());
    let mut first = usize::MAX;
    for (p, e) in g.edges().iter().enumerate() {
        if mask >> p & 1 == 1 {
            degree[e.tail] += 1;
            degree[e.head] += 1;
            dsu.union(e.tail, e.head);
            first = e.tail;
        }
    }
    let root = dsu.find(first);
    (0..g.vertex_count()).all(|v| degree[v] == 0 || (degree[v] == 2 && dsu.find(v) == root))
}

/// Edge masks of all circuits, in increasing mask order.
pub(crate) fn circuit_masks(g: &MultiGraph) -> Vec<u64> {
    let bridges = super::bridge_positions(g, |_| true)
        .into_iter()
        .fold(0u64, |m, p| m | 1 << p);
    let usable = g.full_mask() & !bridges;
    let mut out = Vec::new();
    // enumerate submasks of `usable`
    let mut sub = usable;
    loop {
        if is_circuit_mask(g, sub) {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & usable;
    }
    out.sort_unstable();
    out
}

/// All circuits (connected, bridgeless, first Betti number 1), as edge sets.
pub fn circuits(g: &MultiGraph, bound: usize) -> Result<Vec<EdgeSet>> {
    g.require_bound("circuit enumeration", bound)?;
    let mut out: Vec<EdgeSet> = circuit_masks(g)
        .into_iter()
        .map(|m| g.set_of_mask(m))
        .collect();
    out.sort();
    Ok(out)
}

/// Chain of a circuit traversed once, starting along the reference
/// orientation of its lowest-id edge.
pub(crate) fn circuit_chain(g: &MultiGraph, circuit: &EdgeSet) -> IntChain {
    let mut remaining: Vec<usize> = circuit.iter().filter_map(|&id| g.position(id)).collect();
    let mut chain = IntChain::new();
    if remaining.is_empty() {
        return chain;
    }
    let first = g.edges()[remaining.remove(0)];
    chain.add_term(first.id, 1);
    let mut at = first.head;
    while let Some(i) = remaining
        .iter()
        .position(|&p| g.edges()[p].tail == at || g.edges()[p].head == at)
    {
        let e = g.edges()[remaining.remove(i)];
        if e.tail == at {
            chain.add_term(e.id, 1);
            at = e.head;
        } else {
            chain.add_term(e.id, -1);
            at = e.tail;
        }
    }
    chain
}
