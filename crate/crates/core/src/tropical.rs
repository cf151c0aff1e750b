//! Metric graphs, tropical curves and their Jacobians.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::{
    betti_number, bridge_positions, circuit_chain, is_three_connected, is_three_edge_connected,
    CycleBasis, Edge, EdgeId, EdgeSet, MultiGraph,
};
use crate::iso::metric_graph_isomorphism;
use crate::lattice::{albanese_isomorphic_metric, canonical_gram, GramLattice, RouteReport};

/// A multigraph with a positive rational length on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGraph {
    graph: MultiGraph,
    lengths: BTreeMap<EdgeId, Rational>,
}

impl MetricGraph {
    pub fn new(graph: MultiGraph, lengths: BTreeMap<EdgeId, Rational>) -> Result<Self> {
        graph.check_edges(lengths.keys())?;
        if lengths.len() != graph.edge_count() {
            return Err(Error::LengthMismatch);
        }
        if let Some((&e, _)) = lengths.iter().find(|(_, l)| **l <= Rational::zero()) {
            return Err(Error::NonPositiveLength(e));
        }
        Ok(MetricGraph { graph, lengths })
    }

    /// Every edge of length 1.
    pub fn unit(graph: MultiGraph) -> Self {
        let lengths = graph.edge_ids().into_iter().map(|e| (e, Rational::one())).collect();
        MetricGraph { graph, lengths }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn lengths(&self) -> &BTreeMap<EdgeId, Rational> {
        &self.lengths
    }

    pub fn length(&self, e: EdgeId) -> Rational {
        self.lengths[&e]
    }

    pub fn into_parts(self) -> (MultiGraph, BTreeMap<EdgeId, Rational>) {
        (self.graph, self.lengths)
    }
}

/// A connected metric graph with every valence at least 3 (loops count
/// twice) and genus at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    metric: MetricGraph,
}

impl TropicalCurve {
    pub fn new(metric: MetricGraph) -> Result<Self> {
        let g = metric.graph();
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        if let Some(v) = (0..g.vertex_count()).find(|&v| g.valence(v) < 3) {
            return Err(Error::NotTropicalCurve(format!(
                "vertex {v} has valence {}",
                g.valence(v)
            )));
        }
        let genus = betti_number(g);
        if genus < 2 {
            return Err(Error::GenusTooSmall(genus));
        }
        Ok(TropicalCurve { metric })
    }

    pub fn metric(&self) -> &MetricGraph {
        &self.metric
    }

    pub fn genus(&self) -> usize {
        betti_number(self.metric.graph())
    }
}

/// Gram matrix of the Jacobian in the canonical homology basis.
pub fn jacobian(c: &TropicalCurve) -> GramLattice {
    canonical_gram(&c.metric)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorelliVerdict {
    pub equal_jacobians: bool,
    pub routes: RouteReport,
    /// Length-preserving isomorphism, decided when the first curve is
    /// 3-connected.
    pub tropically_equivalent: Option<bool>,
}

/// Whether two tropical curves have isometric Jacobians, by Gram isometry
/// and by the metric 3-edge connected class. For a 3-connected first curve
/// the verdict must also match tropical equivalence.
pub fn tropical_torelli_decide(c: &TropicalCurve, d: &TropicalCurve) -> Result<TorelliVerdict> {
    let verdict = albanese_isomorphic_metric(&c.metric, &d.metric)?;
    let tropically_equivalent = if is_three_connected(c.metric.graph()) {
        let iso = metric_graph_isomorphism(&c.metric, &d.metric).is_some();
        if iso != verdict.isomorphic {
            return Err(Error::RouteDisagreement(format!(
                "3-connected curve: Jacobians equal {}, tropically equivalent {iso}",
                verdict.isomorphic
            )));
        }
        Some(iso)
    } else {
        None
    };
    Ok(TorelliVerdict {
        equal_jacobians: verdict.isomorphic,
        routes: verdict.routes,
        tropically_equivalent,
    })
}

/// Which case of the splitting construction produced an extension step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitCase {
    /// The vertex carries loops.
    Loops,
    /// Removing the vertex disconnects the graph.
    SeparatingVertex,
    /// The rest of the graph is connected and bridgeless.
    Plain,
    /// The rest of the graph is connected with separating edges.
    SeparatingEdges,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionStep {
    pub vertex: usize,
    pub case: SplitCase,
    pub new_edge: EdgeId,
}

/// A 3-regular, 3-edge connected graph together with the contraction back
/// onto the input: contracting `contracted` maps vertex `x` to `origin[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub extended: MultiGraph,
    pub contracted: EdgeSet,
    pub origin: Vec<usize>,
    pub steps: Vec<ExtensionStep>,
}

impl ExtensionWitness {
    /// Contracts the new edges; returns the input graph when the witness
    /// is sound.
    pub fn contract(&self) -> Result<MultiGraph> {
        Ok(self.extended.contract_edges(&self.contracted)?.0)
    }
}

/// Repeatedly splits the lowest-index vertex of valence at least 4 into two
/// vertices joined by a new edge, keeping the graph 3-edge connected.
pub fn three_regular_extension(g: &MultiGraph) -> Result<ExtensionWitness> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !is_three_edge_connected(g) {
        return Err(Error::NotThreeEdgeConnected);
    }
    let genus = betti_number(g);
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let mut current = g.clone();
    let mut origin: Vec<usize> = (0..g.vertex_count()).collect();
    let mut contracted = EdgeSet::new();
    let mut steps = Vec::new();
    while let Some(v) = (0..current.vertex_count()).find(|&v| current.valence(v) >= 4) {
        let (next, step) = split_vertex(&current, v)?;
        if !is_three_edge_connected(&next) {
            return Err(Error::Internal(format!("splitting vertex {v} broke 3-edge connectivity")));
        }
        let w = current.vertex_count();
        for x in [v, w] {
            if next.valence(x) < 3 || next.valence(x) >= current.valence(v) {
                return Err(Error::Internal(format!("splitting vertex {v} did not reduce valence")));
            }
        }
        origin.push(origin[v]);
        contracted.insert(step.new_edge);
        steps.push(step);
        current = next;
    }
    if !is_three_connected(&current) {
        return Err(Error::Internal("3-regular extension is not 3-connected".into()));
    }
    Ok(ExtensionWitness {
        extended: current,
        contracted,
        origin,
        steps,
    })
}

/// Splits `v` into `u' = v` and a new vertex `w'`. Returns the new graph and
/// the step record; edges keep their ids and the new edge gets the next id.
fn split_vertex(g: &MultiGraph, v: usize) -> Result<(MultiGraph, ExtensionStep)> {
    let w = g.vertex_count();
    let new_edge = g.max_edge_id().unwrap_or(0) + 1;
    let at_v = |e: &Edge| e.tail == v || e.head == v;
    let mut loops = Vec::new();
    let mut links = Vec::new();
    for p in g.positions_by_id() {
        let e = g.edges()[p];
        if e.is_loop() && e.tail == v {
            loops.push(e.id);
        } else if at_v(&e) {
            links.push(e.id);
        }
    }
    let other = |id: EdgeId| g.edge(id).unwrap().other(v);
    // groups of links whose far ends lie in one component of `rest`
    let groups = |alive: &dyn Fn(usize) -> bool| -> Vec<Vec<EdgeId>> {
        let (_, label) = g.components_where(alive);
        let mut by: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
        for &id in &links {
            by.entry(label[other(id)]).or_default().push(id);
        }
        let mut out: Vec<Vec<EdgeId>> = by.into_values().collect();
        out.sort_by_key(|grp| grp[0]);
        out
    };
    let off_v = |p: usize| !at_v(&g.edges()[p]);

    let mut to_u: Vec<EdgeId> = Vec::new();
    let mut to_w: Vec<EdgeId> = Vec::new();
    let case;
    if !loops.is_empty() {
        case = SplitCase::Loops;
        if !links.is_empty() {
            if links.len() < 3 {
                return Err(Error::Internal(format!("vertex {v} has {} links", links.len())));
            }
            to_u.push(links[0]);
            to_w.extend([links[1], links[2]]);
        }
    } else {
        let parts = groups(&off_v);
        if parts.len() >= 2 {
            case = SplitCase::SeparatingVertex;
            for (i, part) in parts.iter().enumerate() {
                if part.len() < 3 {
                    return Err(Error::Internal(format!("component at vertex {v} meets it {} times", part.len())));
                }
                let (one, two) = if i % 2 == 0 { (&mut to_u, &mut to_w) } else { (&mut to_w, &mut to_u) };
                one.push(part[0]);
                two.extend([part[1], part[2]]);
            }
        } else {
            let bridges = bridge_positions(g, off_v);
            if bridges.is_empty() {
                case = SplitCase::Plain;
                to_u.extend([links[0], links[1]]);
                to_w.extend([links[2], links[3]]);
            } else {
                case = SplitCase::SeparatingEdges;
                // Blocks meeting v once lie inside the bridge tree of G - v and
                // become leftovers. The leaves meet v at least twice, so every
                // side of a bridge still reaches both u' and w'.
                let parts = groups(&|p| off_v(p) && !bridges.contains(&p));
                let parts: Vec<&Vec<EdgeId>> = parts.iter().filter(|part| part.len() >= 2).collect();
                if parts.len() < 2 {
                    return Err(Error::Internal(format!("fewer than two leaf blocks at vertex {v}")));
                }
                for (i, part) in parts.iter().enumerate() {
                    let (one, two) = if i % 2 == 0 { (&mut to_u, &mut to_w) } else { (&mut to_w, &mut to_u) };
                    one.push(part[0]);
                    two.push(part[1]);
                }
            }
        }
    }
    // leftover links go to the endpoint of currently lower valence
    for &id in &links {
        if to_u.contains(&id) || to_w.contains(&id) {
            continue;
        }
        if to_w.len() < to_u.len() {
            to_w.push(id);
        } else {
            to_u.push(id);
        }
    }
    let edges = g.edges().iter().map(|&e| {
        let mut e = e;
        if e.is_loop() && e.tail == v {
            e.head = w;
        } else if to_w.contains(&e.id) {
            if e.tail == v {
                e.tail = w;
            } else {
                e.head = w;
            }
        }
        e
    });
    let edges: Vec<Edge> = edges
        .chain([Edge {
            id: new_edge,
            tail: v,
            head: w,
        }])
        .collect();
    let next = MultiGraph::new(w + 1, edges)?;
    Ok((
        next,
        ExtensionStep {
            vertex: v,
            case,
            new_edge,
        },
    ))
}

/// Two edge-disjoint `a`-`b` paths avoiding edge position `skip`, as edge
/// position lists, or `None` if the local edge connectivity is below 2.
fn two_disjoint_paths(g: &MultiGraph, a: usize, b: usize, skip: usize) -> Option<[Vec<usize>; 2]> {
    let inc = g.incidence();
    // flow[p] = +1 along tail -> head, -1 against
    let mut flow = vec![0i8; g.edge_count()];
    for _ in 0..2 {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &(p, y) in &inc[x] {
                let e = g.edges()[p];
                if p == skip || e.is_loop() || seen[y] {
                    continue;
                }
                let dir = if e.tail == x { 1 } else { -1 };
                if flow[p] == dir {
                    continue;
                }
                seen[y] = true;
                prev[y] = Some((x, p));
                queue.push_back(y);
            }
        }
        if !seen[b] {
            return None;
        }
        let mut y = b;
        while let Some((x, p)) = prev[y] {
            flow[p] += if g.edges()[p].tail == x { 1 } else { -1 };
            y = x;
        }
    }
    let mut used = vec![false; g.edge_count()];
    let mut walk = || -> Vec<usize> {
        let mut path: Vec<(usize, usize)> = Vec::new(); // (vertex left, edge)
        let mut x = a;
        while x != b {
            let &(p, y) = inc[x]
                .iter()
                .find(|&&(p, _)| {
                    let e = g.edges()[p];
                    !used[p] && flow[p] == if e.tail == x { 1 } else { -1 } && !e.is_loop()
                })
                .expect("flow is conserved");
            used[p] = true;
            // shortcut any cycle closed by arriving at y
            if let Some(k) = path.iter().position(|&(v, _)| v == y) {
                path.truncate(k);
            } else {
                path.push((x, p));
            }
            x = y;
        }
        path.into_iter().map(|(_, p)| p).collect()
    };
    Some([walk(), walk()])
}

/// Two circuits meeting exactly in edge `e`, as edge sets.
pub fn circuits_meeting_in(g: &MultiGraph, e: EdgeId) -> Result<(EdgeSet, EdgeSet)> {
    let p = g.position(e).ok_or(Error::UnknownEdge(e))?;
    let edge = g.edges()[p];
    if edge.is_loop() {
        let c: EdgeSet = [e].into();
        return Ok((c.clone(), c));
    }
    let [one, two] = two_disjoint_paths(g, edge.tail, edge.head, p)
        .ok_or_else(|| Error::Internal(format!("no two circuits meet exactly in edge {e}")))?;
    let close = |path: Vec<usize>| -> EdgeSet {
        path.into_iter().map(|q| g.edges()[q].id).chain([e]).collect()
    };
    Ok((close(one), close(two)))
}

/// Recovers edge lengths from a Gram matrix in `basis`: for each edge,
/// `|<c1, c2>|` for two circuits meeting exactly in that edge.
pub fn recover_lengths(
    g: &MultiGraph,
    gram: &GramLattice,
    basis: &CycleBasis,
) -> Result<BTreeMap<EdgeId, Rational>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !is_three_edge_connected(g) {
        return Err(Error::NotThreeEdgeConnected);
    }
    basis.validate(g)?;
    if gram.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "Gram matrix of dimension {} for a basis of {} cycles",
            gram.dim(),
            basis.dim()
        )));
    }
    let coords = |c: &EdgeSet| -> Result<Vec<i64>> {
        basis
            .coordinates(&circuit_chain(g, c))
            .ok_or_else(|| Error::BasisMismatch("circuit outside the span of the basis".into()))
    };
    let mut out = BTreeMap::new();
    for e in g.edge_ids() {
        let (c1, c2) = circuits_meeting_in(g, e)?;
        let value = gram.inner(&coords(&c1)?, &coords(&c2)?);
        if value.is_zero() {
            return Err(Error::Internal(format!("edge {e} recovered with zero length")));
        }
        out.insert(e, value.abs());
    }
    Ok(out)
}
