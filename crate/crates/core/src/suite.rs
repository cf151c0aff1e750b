//! Exhaustive and randomized verification of the theorems over a corpus of
//! small graphs.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Rational;
use crate::c1::{three_connectivization, three_connectivization_metric, two_connectivization};
use crate::cyclic::CycleProfile;
use crate::delaunay::FunctionalArrangement;
use crate::enumerate::enumerate_multigraphs;
use crate::error::Result;
use crate::families;
use crate::format::{serialize_graph_file, GraphFile};
use crate::graph::{
    betti_number, every_edge_on_cyclic_circuit, has_cyclic_circuit_basis, has_directed_paths,
    homology_basis, is_three_connected, is_three_edge_connected, is_totally_cyclic,
    is_totally_cyclic_by_cuts, separating_edges, CycleBasis, Direction, IntChain, MultiGraph,
    Orientation,
};
use crate::iso::graph_isomorphic;
use crate::lattice::{canonical_gram, gram_matrix, lattice_isometry_exists, unit_gram, GramLattice};
use crate::par::{pairs, Execution};
use crate::poset::poset_isomorphic;
use crate::posets::{orientation_posets, OrientationPosets};
use crate::tropical::{recover_lengths, three_regular_extension, MetricGraph};
use crate::voronoi::{check_voronoi_conjecture, MAX_CONJECTURE_GENUS};

/// Deliberate defects for checking that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mutation {
    /// Lattice isometry decided by dimension and determinant only.
    DeterminantOnlyIsometry,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteParams {
    pub max_edges: usize,
    pub orientation_max_edges: usize,
    pub metric_samples: usize,
    pub primitivity_samples: usize,
    pub max_length: i64,
    pub seed: u64,
    #[serde(skip)]
    pub execution: Execution,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max_edges: 6,
            orientation_max_edges: 5,
            metric_samples: 200,
            primitivity_samples: 100,
            max_length: 10,
            seed: 2024,
            execution: Execution::Parallel,
            mutation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckKind {
    Theorem,
    /// Outcomes are recorded; failures do not fail the suite.
    Evidence,
}

/// At most this many counterexamples are kept per criterion.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: String,
    pub kind: CheckKind,
    pub checked: usize,
    pub failures: usize,
    /// Instances where the shared verdict was positive, where meaningful.
    pub positives: usize,
    pub counterexamples: Vec<String>,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.kind == CheckKind::Evidence || self.failures == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "[{}] criterion {}: {} ({} checked, {} failures, {} positive, {:.2}s)",
            if self.failures == 0 { "PASS" } else if self.kind == CheckKind::Evidence { "NOTE" } else { "FAIL" },
            self.id,
            self.name,
            self.checked,
            self.failures,
            self.positives,
            self.seconds
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub params: SuiteParams,
    pub corpus_size: usize,
    pub criteria: Vec<CriterionReport>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionReport::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Per-instance outcome: `Ok(positive)` or a counterexample description.
type Outcome = std::result::Result<bool, String>;

fn collect(id: u32, name: &str, kind: CheckKind, outcomes: Vec<Outcome>, start: Instant) -> CriterionReport {
    let mut report = CriterionReport {
        id,
        name: name.to_string(),
        kind,
        checked: outcomes.len(),
        failures: 0,
        positives: 0,
        counterexamples: Vec::new(),
        seconds: 0.0,
    };
    for o in outcomes {
        match o {
            Ok(true) => report.positives += 1,
            Ok(false) => {}
            Err(msg) => {
                report.failures += 1;
                if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    report.counterexamples.push(msg);
                }
            }
        }
    }
    report.seconds = start.elapsed().as_secs_f64();
    report
}

fn show(g: &MultiGraph, tag: &str) -> String {
    serialize_graph_file(&GraphFile::plain(tag, g.clone()))
}

fn show_metric(g: &MetricGraph, tag: &str) -> String {
    serialize_graph_file(&GraphFile::metric(tag, g))
}

fn pair_failure(a: &MultiGraph, b: &MultiGraph, why: String) -> String {
    format!("{why}\n{}{}", show(a, "A"), show(b, "B"))
}

/// Precomputed data of one corpus graph.
pub struct CorpusEntry {
    pub graph: MultiGraph,
    pub gram: GramLattice,
    pub two: CycleProfile,
    pub three: CycleProfile,
    pub arrangement3: FunctionalArrangement,
    pub posets: OrientationPosets,
}

impl CorpusEntry {
    pub fn new(g: &MultiGraph) -> Result<Self> {
        let g3 = three_connectivization(g).graph;
        Ok(CorpusEntry {
            gram: unit_gram(g),
            two: CycleProfile::new(&two_connectivization(g).graph)?,
            three: CycleProfile::new(&g3)?,
            arrangement3: FunctionalArrangement::new(&g3),
            posets: orientation_posets(g)?,
            graph: g.clone(),
        })
    }
}

pub fn build_corpus(max_edges: usize, execution: Execution) -> Result<Vec<CorpusEntry>> {
    let graphs = enumerate_multigraphs(max_edges, true)?;
    execution.map(&graphs, CorpusEntry::new).into_iter().collect()
}

fn isometric(a: &GramLattice, b: &GramLattice, mutation: Option<Mutation>) -> std::result::Result<bool, String> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    match mutation {
        Some(Mutation::DeterminantOnlyIsometry) => Ok(a.determinant() == b.determinant()),
        None => lattice_isometry_exists(a, b).map(|u| u.is_some()).map_err(|e| e.to_string()),
    }
}

/// Lattice isometry of unit Grams against cyclic equivalence of the 2-edge
/// connectivizations, for every pair.
pub fn check_graph_torelli(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let outcomes = params.execution.map(&pairs(corpus.len()), |&(i, j)| {
        let (a, b) = (&corpus[i], &corpus[j]);
        let direct = isometric(&a.gram, &b.gram, params.mutation)?;
        let theorem = a.two.find_bijection(&b.two, |_, _| true).is_some();
        if direct != theorem {
            return Err(pair_failure(
                &a.graph,
                &b.graph,
                format!("lattice isometry {direct}, 2-edge class equality {theorem}"),
            ));
        }
        Ok(direct)
    });
    collect(1, "graph Torelli: Gram isometry = 2-edge class", CheckKind::Theorem, outcomes, start)
}

/// 3-edge class equality, Delaunay matching and isomorphism of SP, OP and
/// OP-bar coincide on every pair.
pub fn check_poset_equivalences(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let iso = |p: &crate::poset::RankedPoset, q: &crate::poset::RankedPoset| {
        poset_isomorphic(p, q).map(|m| m.is_some()).map_err(|e| e.to_string())
    };
    let outcomes = params.execution.map(&pairs(corpus.len()), |&(i, j)| {
        let (a, b) = (&corpus[i], &corpus[j]);
        let verdicts = [
            a.three.find_bijection(&b.three, |_, _| true).is_some(),
            a.arrangement3.find_match(&b.arrangement3).is_some(),
            iso(&a.posets.sp, &b.posets.sp)?,
            iso(&a.posets.op, &b.posets.op)?,
            iso(&a.posets.opbar, &b.posets.opbar)?,
        ];
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            return Err(pair_failure(
                &a.graph,
                &b.graph,
                format!("[3-edge class, Delaunay, SP, OP, OP-bar] = {verdicts:?}"),
            ));
        }
        Ok(verdicts[0])
    });
    collect(2, "3-edge class = Del = SP = OP = OP-bar", CheckKind::Theorem, outcomes, start)
}

/// `Del(G)` matches `Del(G^3)` under functional matching.
pub fn check_delaunay_connectivization(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let outcomes = params.execution.map(corpus, |a| {
        match FunctionalArrangement::new(&a.graph).find_match(&a.arrangement3) {
            Some(_) => Ok(true),
            None => Err(format!("no functional matching with G^3\n{}", show(&a.graph, "G"))),
        }
    });
    collect(3, "Del(G) = Del(G^3)", CheckKind::Theorem, outcomes, start)
}

fn random_lengths(g: &MultiGraph, rng: &mut ChaCha8Rng, max: i64, integral: bool) -> BTreeMap<u32, Rational> {
    g.edge_ids()
        .into_iter()
        .map(|e| {
            let num = rng.gen_range(1..=max) as i128;
            let den = if integral { 1 } else { rng.gen_range(1..=max) as i128 };
            (e, Rational::new(num, den))
        })
        .collect()
}

/// Random metric graphs over the corpus: Gram isometry against the metric
/// 3-edge class, for every pair.
pub fn check_metric_torelli(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let samples: Vec<MetricGraph> = (0..params.metric_samples)
        .map(|_| {
            let g = &corpus[rng.gen_range(0..corpus.len())].graph;
            let lengths = random_lengths(g, &mut rng, params.max_length, false);
            MetricGraph::new(g.clone(), lengths).expect("positive lengths")
        })
        .collect();
    let prepared: Vec<std::result::Result<(GramLattice, MetricGraph, CycleProfile), String>> =
        params.execution.map(&samples, |mg| {
            let (m3, _) = three_connectivization_metric(mg);
            let profile = CycleProfile::new(m3.graph()).map_err(|e| e.to_string())?;
            Ok((canonical_gram(mg), m3, profile))
        });
    let outcomes = params.execution.map(&pairs(samples.len()), |&(i, j)| {
        let (ga, ma, pa) = prepared[i].as_ref().map_err(Clone::clone)?;
        let (gb, mb, pb) = prepared[j].as_ref().map_err(Clone::clone)?;
        let direct = isometric(ga, gb, params.mutation)?;
        let theorem = pa.find_bijection(pb, |e, f| ma.length(e) == mb.length(f)).is_some();
        if direct != theorem {
            return Err(format!(
                "Gram isometry {direct}, metric 3-edge class {theorem}\n{}{}",
                show_metric(&samples[i], "A"),
                show_metric(&samples[j], "B")
            ));
        }
        Ok(direct)
    });
    collect(4, "metric Torelli: Gram isometry = metric 3-edge class", CheckKind::Theorem, outcomes, start)
}

fn basis_of(chains: &[&[(u32, i64)]]) -> CycleBasis {
    CycleBasis::new(chains.iter().map(|c| IntChain::from_terms(c.iter().copied())).collect())
}

/// Exact values on named graphs.
pub fn check_worked_instances() -> CriterionReport {
    let start = Instant::now();
    let theta = families::theta();
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut expect = |ok: bool, what: &str| outcomes.push(if ok { Ok(true) } else { Err(what.to_string()) });

    let hex = GramLattice::from_integers(&[vec![2, -1], vec![-1, 2]]).unwrap();
    let consecutive = basis_of(&[&[(1, 1), (2, -1)], &[(2, 1), (3, -1)]]);
    let gram = gram_matrix(&MetricGraph::unit(theta.clone()), &consecutive);
    expect(gram.as_ref() == Ok(&hex), "theta unit Gram in basis {e1-e2, e2-e3} is [[2,-1],[-1,2]]");
    expect(
        matches!(lattice_isometry_exists(&unit_gram(&theta), &hex), Ok(Some(_))),
        "canonical theta Gram is isometric to [[2,-1],[-1,2]]",
    );

    match crate::voronoi::voronoi_face_poset(&unit_gram(&theta)) {
        Ok((faces, quotient)) => expect(
            faces.faces.len() == 13 && quotient.len() == 6,
            "theta Voronoi face counts are 13 and 6",
        ),
        Err(e) => expect(false, &format!("theta Voronoi faces: {e}")),
    }
    match orientation_posets(&theta) {
        Ok(p) => expect(p.op.len() == 13 && p.opbar.len() == 6, "|OP| = 13 and |OP-bar| = 6 for theta"),
        Err(e) => expect(false, &format!("theta posets: {e}")),
    }

    let (c4, c5) = (families::cycle(4), families::cycle(5));
    let c4_3 = three_connectivization(&c4).graph;
    expect(
        c4_3.vertex_count() == 1 && c4_3.edge_count() == 1 && c4_3.edges()[0].is_loop(),
        "C4^3 is a single loop",
    );
    expect(
        matches!(crate::delaunay::delaunay_isomorphic(&c4, &c5), Ok(v) if v.isomorphic),
        "C4 and C5 are Delaunay-equivalent",
    );
    expect(
        matches!(crate::lattice::albanese_isomorphic(&c4, &c5), Ok(v) if !v.isomorphic),
        "C4 and C5 are not Albanese-equivalent",
    );
    let mut report = collect(5, "worked exact instances", CheckKind::Theorem, outcomes, start);
    report.positives = report.checked - report.failures;
    report
}

/// Orientation posets against Voronoi faces for genus at most 3; outcomes
/// are evidence only.
pub fn check_voronoi_evidence(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let domain: Vec<&CorpusEntry> = corpus
        .iter()
        .filter(|a| betti_number(&a.graph) <= MAX_CONJECTURE_GENUS)
        .collect();
    let outcomes = params.execution.map(&domain, |a| {
        let r = check_voronoi_conjecture(&a.graph).map_err(|e| e.to_string())?;
        if !r.holds() || r.facets != r.oriented_circuits {
            return Err(format!("{r:?}\n{}", show(&a.graph, "G")));
        }
        Ok(true)
    });
    collect(6, "OP = Faces(Vor) and OP-bar = quotient faces", CheckKind::Evidence, outcomes, start)
}

/// 3-regular extensions of every 3-edge connected corpus graph of genus at
/// least 2, plus the banana on four edges.
pub fn check_extensions(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let mut domain: Vec<MultiGraph> = corpus
        .iter()
        .map(|a| a.graph.clone())
        .filter(|g| is_three_edge_connected(g) && betti_number(g) >= 2)
        .collect();
    domain.push(families::banana(4));
    let k4 = families::complete(4);
    let outcomes = params.execution.map(&domain, |g| {
        let fail = |why: &str| Err(format!("{why}\n{}", show(g, "G")));
        let w = match three_regular_extension(g) {
            Ok(w) => w,
            Err(e) => return fail(&e.to_string()),
        };
        let h = &w.extended;
        let genus = betti_number(g);
        if (0..h.vertex_count()).any(|v| h.valence(v) != 3) {
            return fail("extension is not 3-regular");
        }
        if !is_three_edge_connected(h) || !is_three_connected(h) {
            return fail("extension is not 3-connected");
        }
        if h.edge_count() != 3 * genus - 3 || h.vertex_count() != 2 * genus - 2 || betti_number(h) != genus {
            return fail("extension has the wrong size");
        }
        match w.contract() {
            Ok(back) if graph_isomorphic(&back, g) => {}
            _ => return fail("contracting the witness does not return the input"),
        }
        if *g == families::banana(4) && !graph_isomorphic(h, &k4) {
            return fail("the banana on four edges does not extend to K4");
        }
        Ok(true)
    });
    collect(7, "3-regular 3-connected extensions", CheckKind::Theorem, outcomes, start)
}

/// Lengths recovered from Gram matrices: integral Grams give integral
/// lengths, and rational lengths round-trip.
pub fn check_primitivity(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let pool: Vec<&MultiGraph> = corpus
        .iter()
        .map(|a| &a.graph)
        .filter(|g| is_three_edge_connected(g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x5eed);
    let mut samples: Vec<(MetricGraph, bool)> = Vec::new();
    for integral in [true, false] {
        for _ in 0..params.primitivity_samples {
            let g = pool[rng.gen_range(0..pool.len())];
            let lengths = random_lengths(g, &mut rng, params.max_length, integral);
            samples.push((MetricGraph::new(g.clone(), lengths).expect("positive lengths"), integral));
        }
    }
    let outcomes = params.execution.map(&samples, |(mg, integral)| {
        let fail = |why: String| Err(format!("{why}\n{}", show_metric(mg, "G")));
        let basis = homology_basis(mg.graph());
        let gram = gram_matrix(mg, &basis).map_err(|e| e.to_string())?;
        if *integral && !gram.is_integral() {
            return fail("integer lengths gave a non-integral Gram matrix".into());
        }
        match recover_lengths(mg.graph(), &gram, &basis) {
            Ok(l) if &l == mg.lengths() => {
                if *integral && !l.values().all(|x| x.is_integer()) {
                    return fail("recovered lengths are not integral".into());
                }
                Ok(*integral)
            }
            Ok(l) => fail(format!("recovered {l:?}")),
            Err(e) => fail(e.to_string()),
        }
    });
    collect(8, "degree-one primitivity and length recovery", CheckKind::Theorem, outcomes, start)
}

/// The totally cyclic characterizations agree on every orientation of every
/// bridgeless corpus graph with few edges.
pub fn check_totally_cyclic(corpus: &[CorpusEntry], params: &SuiteParams) -> CriterionReport {
    let start = Instant::now();
    let mut cases: Vec<(&MultiGraph, u64)> = Vec::new();
    for a in corpus {
        let g = &a.graph;
        if g.edge_count() <= params.orientation_max_edges && separating_edges(g).is_empty() {
            cases.extend((0..1u64 << g.edge_count()).map(|m| (g, m)));
        }
    }
    let bound = params.orientation_max_edges;
    let outcomes = params.execution.map(&cases, |&(g, reversed)| {
        let o = Orientation::new(
            g.edges()
                .iter()
                .enumerate()
                .map(|(p, e)| {
                    let d = if reversed >> p & 1 == 1 { Direction::Reversed } else { Direction::Forward };
                    (e.id, d)
                })
                .collect(),
        );
        let verdicts = [
            is_totally_cyclic(g, &o),
            is_totally_cyclic_by_cuts(g, &o),
            has_directed_paths(g, &o),
            has_cyclic_circuit_basis(g, &o, bound),
            every_edge_on_cyclic_circuit(g, &o, bound),
        ]
        .into_iter()
        .collect::<Result<Vec<bool>>>()
        .map_err(|e| e.to_string())?;
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            return Err(format!("verdicts {verdicts:?} for orientation {o:?}\n{}", show(g, "G")));
        }
        Ok(verdicts[0])
    });
    collect(9, "totally cyclic characterizations coincide", CheckKind::Theorem, outcomes, start)
}

/// Runs every criterion over the corpus described by `params`.
pub fn run_theorem_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let corpus = build_corpus(params.max_edges, params.execution)?;
    let criteria = vec![
        check_graph_torelli(&corpus, params),
        check_poset_equivalences(&corpus, params),
        check_delaunay_connectivization(&corpus, params),
        check_metric_torelli(&corpus, params),
        check_worked_instances(),
        check_voronoi_evidence(&corpus, params),
        check_extensions(&corpus, params),
        check_primitivity(&corpus, params),
        check_totally_cyclic(&corpus, params),
    ];
    Ok(SuiteReport {
        params: params.clone(),
        corpus_size: corpus.len(),
        criteria,
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteParams {
        SuiteParams {
            max_edges: 4,
            orientation_max_edges: 4,
            metric_samples: 20,
            primitivity_samples: 10,
            ..SuiteParams::default()
        }
    }

    #[test]
    fn small_suite_passes() {
        let report = run_theorem_suite(&small()).unwrap();
        for c in &report.criteria {
            assert_eq!(c.failures, 0, "{}", c.summary());
        }
        assert!(report.to_json().contains("\"corpus_size\": 47"));
    }

    #[test]
    fn mutated_isometry_is_caught() {
        let params = SuiteParams {
            max_edges: 4,
            mutation: Some(Mutation::DeterminantOnlyIsometry),
            ..small()
        };
        let corpus = build_corpus(params.max_edges, params.execution).unwrap();
        let report = check_graph_torelli(&corpus, &params);
        assert!(report.failures > 0);
        assert!(!report.counterexamples.is_empty());
    }
}
