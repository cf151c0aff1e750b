//! Command-line front end. Results go to stdout as `key: value` lines or as
//! graph files with `#` comment headers. Exit status: 0 ok, 1 negative
//! verdict, 2 error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torelli::arith::format_rational;
use torelli::c1::{c1_sets, three_connectivization_metric, two_connectivization};
use torelli::cyclic::are_cyclically_equivalent;
use torelli::delaunay::delaunay_isomorphic;
use torelli::format::{parse_gram_file, parse_graph_file, serialize_gram, serialize_graph_file, GraphFile};
use torelli::graph::{
    betti_number, homology_basis, is_three_connected, is_three_edge_connected, separating_edges, EdgeSet,
};
use torelli::lattice::{albanese_isomorphic, albanese_isomorphic_metric, canonical_gram, IntMatrix};
use torelli::par::Execution;
use torelli::poset::{poset_isomorphic, RankedPoset};
use torelli::posets::orientation_posets;
use torelli::suite::{run_theorem_suite, SuiteParams};
use torelli::tropical::{recover_lengths, three_regular_extension, tropical_torelli_decide, MetricGraph, TropicalCurve};
use torelli::voronoi::{check_voronoi_conjecture, voronoi_face_poset};

#[derive(Parser)]
#[command(name = "torelli", version, about = "Cyclic equivalence, Albanese lattices and Voronoi cells of multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetType {
    Sp,
    Op,
    Opbar,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants and the canonical Gram matrix.
    Info { graph: PathBuf },
    /// C1-sets and separating edges.
    C1sets { graph: PathBuf },
    /// 2- or 3-edge connectivization, printed as a graph file.
    Connectivize {
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        level: u8,
    },
    /// Cyclic equivalence with an edge bijection.
    EquivCyc { a: PathBuf, b: PathBuf },
    /// Albanese (Jacobian) comparison, optionally with edge lengths.
    Torelli {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        metric: bool,
    },
    /// Delaunay decompositions compared by functional matching.
    DelaunayCompare { a: PathBuf, b: PathBuf },
    /// One of the orientation posets.
    Posets {
        graph: PathBuf,
        #[arg(long = "type", value_enum)]
        kind: PosetType,
    },
    /// Isomorphism of orientation posets.
    PosetIso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "type", value_enum)]
        kind: PosetType,
    },
    /// Relevant vectors and face lattice of the Voronoi cell.
    Voronoi { graph: PathBuf },
    /// Compares OP and OP-bar with the Voronoi faces.
    Conjecture { graph: PathBuf },
    /// 3-regular extension, printed as a graph file.
    Extend { graph: PathBuf },
    /// Edge lengths from a Gram matrix in the canonical homology basis.
    RecoverLengths { graph: PathBuf, gram: PathBuf },
    /// Runs every acceptance check over the small-graph corpus.
    Suite {
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
}

type Outcome = Result<(String, bool), String>;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<GraphFile, String> {
    parse_graph_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn set(s: &EdgeSet) -> String {
    let ids: Vec<String> = s.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn matrix(out: &mut String, key: &str, m: &IntMatrix) {
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{key}: {}", cells.join(" "));
    }
}

fn metric(file: &GraphFile) -> Result<MetricGraph, String> {
    file.to_metric().map_err(|e| e.to_string())
}

fn info(path: &Path) -> Outcome {
    let f = load(path)?;
    let g = &f.graph;
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", f.name);
    let _ = writeln!(out, "vertices: {}", g.vertex_count());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    let _ = writeln!(out, "components: {}", g.component_count());
    let _ = writeln!(out, "genus: {}", betti_number(g));
    let _ = writeln!(out, "metric: {}", f.lengths.is_some());
    let _ = writeln!(out, "separating_edges: {}", set(&separating_edges(g)));
    let _ = writeln!(out, "three_edge_connected: {}", is_three_edge_connected(g));
    let _ = writeln!(out, "three_connected: {}", is_three_connected(g));
    if g.is_connected() {
        let gram = canonical_gram(&metric(&f)?);
        for line in serialize_gram(&gram).lines() {
            let _ = writeln!(out, "gram: {line}");
        }
    }
    Ok((out, true))
}

fn c1(path: &Path) -> Outcome {
    let g = load(path)?.graph;
    let mut out = String::new();
    let sets = c1_sets(&g);
    let _ = writeln!(out, "count: {}", sets.len());
    for s in &sets.sets {
        let _ = writeln!(out, "c1set: {}", set(s));
    }
    let _ = writeln!(out, "separating_edges: {}", set(&separating_edges(&g)));
    Ok((out, true))
}

fn connectivize(path: &Path, level: u8) -> Outcome {
    let f = load(path)?;
    let mut out = String::new();
    let name = format!("{}_{level}", f.name);
    let (file, conn) = if level == 2 {
        let conn = two_connectivization(&f.graph);
        let file = match &f.lengths {
            Some(l) => {
                let lengths = conn.edge_map.iter().map(|(&e, src)| (e, l[src])).collect();
                GraphFile {
                    name,
                    graph: conn.graph.clone(),
                    lengths: Some(lengths),
                }
            }
            None => GraphFile::plain(&name, conn.graph.clone()),
        };
        (file, conn)
    } else {
        let (mg, conn) = three_connectivization_metric(&metric(&f)?);
        let file = if f.lengths.is_some() {
            GraphFile::metric(&name, &mg)
        } else {
            GraphFile::plain(&name, conn.graph.clone())
        };
        (file, conn)
    };
    let _ = writeln!(out, "# level: {level}");
    for (e, src) in &conn.edge_map {
        let _ = writeln!(out, "# edge_map: {e} <- {src}");
    }
    for (s, e) in conn.psi.iter().flatten() {
        let _ = writeln!(out, "# psi: {} -> {e}", set(s));
    }
    out.push_str(&serialize_graph_file(&file));
    Ok((out, true))
}

fn equiv_cyc(a: &Path, b: &Path) -> Outcome {
    let (g, h) = (load(a)?.graph, load(b)?.graph);
    let found = are_cyclically_equivalent(&g, &h).map_err(|e| e.to_string())?;
    let mut out = format!("cyclically_equivalent: {}\n", found.is_some());
    for (x, y) in found.iter().flat_map(|bij| &bij.mapping) {
        let _ = writeln!(out, "map: {x} -> {y}");
    }
    Ok((out, found.is_some()))
}

fn torelli(a: &Path, b: &Path, use_lengths: bool) -> Outcome {
    let (fa, fb) = (load(a)?, load(b)?);
    let mut out = String::new();
    let verdict = if use_lengths {
        let (ma, mb) = (metric(&fa)?, metric(&fb)?);
        if let (Ok(ca), Ok(cb)) = (TropicalCurve::new(ma.clone()), TropicalCurve::new(mb.clone())) {
            let t = tropical_torelli_decide(&ca, &cb).map_err(|e| e.to_string())?;
            if let Some(eq) = t.tropically_equivalent {
                let _ = writeln!(out, "tropically_equivalent: {eq}");
            }
        }
        albanese_isomorphic_metric(&ma, &mb)
    } else {
        albanese_isomorphic(&fa.graph, &fb.graph)
    }
    .map_err(|e| e.to_string())?;
    let _ = writeln!(out, "isomorphic: {}", verdict.isomorphic);
    let _ = writeln!(out, "route_lattice_isometry: {}", verdict.routes.direct);
    let _ = writeln!(out, "route_cyclic_equivalence: {}", verdict.routes.theorem);
    if let Some(u) = &verdict.witness {
        matrix(&mut out, "witness", u);
    }
    Ok((out, verdict.isomorphic))
}

fn delaunay(a: &Path, b: &Path) -> Outcome {
    let (g, h) = (load(a)?.graph, load(b)?.graph);
    let v = delaunay_isomorphic(&g, &h).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "isomorphic: {}", v.isomorphic);
    let _ = writeln!(out, "route_functional_matching: {}", v.routes.direct);
    let _ = writeln!(out, "route_three_edge_class: {}", v.routes.theorem);
    if let Some(m) = &v.witness {
        matrix(&mut out, "transform", &m.transform);
    }
    Ok((out, v.isomorphic))
}

fn poset_of(path: &Path, kind: PosetType) -> Result<RankedPoset, String> {
    let g = load(path)?.graph;
    let p = orientation_posets(&g).map_err(|e| e.to_string())?;
    Ok(match kind {
        PosetType::Sp => p.sp,
        PosetType::Op => p.op,
        PosetType::Opbar => p.opbar,
    })
}

fn posets(path: &Path, kind: PosetType) -> Outcome {
    let p = poset_of(path, kind)?;
    let mut out = String::new();
    let _ = writeln!(out, "size: {}", p.len());
    if let Some(profile) = p.rank_profile() {
        let cells: Vec<String> = profile.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "rank_profile: {}", cells.join(" "));
    }
    for (i, label) in p.labels().iter().enumerate() {
        let rank = p.rank().map(|r| r[i].to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "element: {i} rank {rank} {label}");
    }
    for (i, j) in p.covers() {
        let _ = writeln!(out, "cover: {i} < {j}");
    }
    Ok((out, true))
}

fn poset_iso(a: &Path, b: &Path, kind: PosetType) -> Outcome {
    let (p, q) = (poset_of(a, kind)?, poset_of(b, kind)?);
    let m = poset_isomorphic(&p, &q).map_err(|e| e.to_string())?;
    let mut out = format!("isomorphic: {}\n", m.is_some());
    for (i, j) in m.iter().flatten().enumerate() {
        let _ = writeln!(out, "map: {i} -> {j}");
    }
    Ok((out, m.is_some()))
}

fn voronoi(path: &Path) -> Outcome {
    let f = load(path)?;
    if !f.graph.is_connected() {
        return Err("graph is not connected".into());
    }
    let gram = canonical_gram(&metric(&f)?);
    let (cell, quotient) = voronoi_face_poset(&gram).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "dim: {}", gram.dim());
    let _ = writeln!(out, "relevant_vectors: {}", cell.relevant_vectors.len());
    for v in &cell.relevant_vectors {
        let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "relevant: {}", cells.join(" "));
    }
    let fv: Vec<String> = cell.f_vector().iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "f_vector: {}", fv.join(" "));
    let _ = writeln!(out, "faces: {}", cell.faces.len());
    let _ = writeln!(out, "quotient_faces: {}", quotient.len());
    for p in cell.vertices() {
        let cells: Vec<String> = p.iter().map(format_rational).collect();
        let _ = writeln!(out, "vertex: {}", cells.join(" "));
    }
    Ok((out, true))
}

fn conjecture(path: &Path) -> Outcome {
    let g = load(path)?.graph;
    let r = check_voronoi_conjecture(&g).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "genus: {}", r.genus);
    let _ = writeln!(out, "op: {}", r.op_count);
    let _ = writeln!(out, "voronoi_faces: {}", r.face_count);
    let _ = writeln!(out, "opbar: {}", r.opbar_count);
    let _ = writeln!(out, "quotient_faces: {}", r.quotient_count);
    let _ = writeln!(out, "faces_isomorphic: {}", r.faces_isomorphic);
    let _ = writeln!(out, "quotient_isomorphic: {}", r.quotient_isomorphic);
    let _ = writeln!(out, "oriented_circuits: {}", r.oriented_circuits);
    let _ = writeln!(out, "facets: {}", r.facets);
    let _ = writeln!(out, "holds: {}", r.holds());
    Ok((out, r.holds()))
}

fn extend(path: &Path) -> Outcome {
    let f = load(path)?;
    let w = three_regular_extension(&f.graph).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for s in &w.steps {
        let _ = writeln!(out, "# step: vertex {} case {:?} new_edge {}", s.vertex, s.case, s.new_edge);
    }
    let _ = writeln!(out, "# contracted: {}", set(&w.contracted));
    let origin: Vec<String> = w.origin.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "# origin: {}", origin.join(" "));
    out.push_str(&serialize_graph_file(&GraphFile::plain(&format!("{}_extended", f.name), w.extended)));
    Ok((out, true))
}

fn recover(path: &Path, gram_path: &Path) -> Outcome {
    let g = load(path)?.graph;
    let gram = parse_gram_file(&read(gram_path)?).map_err(|e| format!("{}: {e}", gram_path.display()))?;
    let lengths = recover_lengths(&g, &gram, &homology_basis(&g)).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for (e, l) in &lengths {
        let _ = writeln!(out, "length: {e} {}", format_rational(l));
    }
    Ok((out, true))
}

fn suite(max_edges: usize, seed: u64, sequential: bool, json: bool) -> Outcome {
    let params = SuiteParams {
        max_edges,
        orientation_max_edges: max_edges.min(5),
        seed,
        execution: if sequential { Execution::Sequential } else { Execution::Parallel },
        ..SuiteParams::default()
    };
    let report = run_theorem_suite(&params).map_err(|e| e.to_string())?;
    if json {
        return Ok((report.to_json() + "\n", report.passed()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "corpus: {}", report.corpus_size);
    for c in &report.criteria {
        let _ = writeln!(out, "{}", c.summary());
        for example in &c.counterexamples {
            for line in example.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    let _ = writeln!(out, "passed: {}", report.passed());
    let _ = writeln!(out, "seconds: {:.2}", report.seconds);
    Ok((out, report.passed()))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { graph } => info(&graph),
        Command::C1sets { graph } => c1(&graph),
        Command::Connectivize { graph, level } => connectivize(&graph, level),
        Command::EquivCyc { a, b } => equiv_cyc(&a, &b),
        Command::Torelli { a, b, metric } => torelli(&a, &b, metric),
        Command::DelaunayCompare { a, b } => delaunay(&a, &b),
        Command::Posets { graph, kind } => posets(&graph, kind),
        Command::PosetIso { a, b, kind } => poset_iso(&a, &b, kind),
        Command::Voronoi { graph } => voronoi(&graph),
        Command::Conjecture { graph } => conjecture(&graph),
        Command::Extend { graph } => extend(&graph),
        Command::RecoverLengths { graph, gram } => recover(&graph, &gram),
        Command::Suite {
            max_edges,
            seed,
            sequential,
            json,
        } => suite(max_edges, seed, sequential, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, positive)) => {
            print!("{out}");
            ExitCode::from(if positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
