use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn info_prints_the_canonical_gram() {
    let (code, out) = run(&["info", &data("theta_123.graph")]);
    assert_eq!(code, 0);
    assert!(out.contains("genus: 2\n"));
    assert!(out.contains("gram: 3/1 1/1\ngram: 1/1 4/1\n"));
}

#[test]
fn verdicts_set_the_exit_code() {
    let (code, out) = run(&["torelli", &data("c4.graph"), &data("c5.graph")]);
    assert_eq!((code, out.lines().next()), (1, Some("isomorphic: false")));
    let (code, _) = run(&["delaunay-compare", &data("c4.graph"), &data("c5.graph")]);
    assert_eq!(code, 0);
    let (code, out) = run(&["torelli", &data("dumbbell.graph"), &data("wedge.graph")]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(&["torelli", "--metric", &data("theta_123.graph"), &data("theta_312.graph")]);
    assert_eq!(code, 0);
    assert!(out.contains("tropically_equivalent: true"));
}

#[test]
fn errors_exit_with_two() {
    let (code, _) = run(&["info", &data("missing.graph")]);
    assert_eq!(code, 2);
    let (code, _) = run(&["extend", &data("c4.graph")]);
    assert_eq!(code, 2);
    let (code, _) = run(&["connectivize", "--level", "4", &data("c4.graph")]);
    assert_eq!(code, 2);
}

#[test]
fn graph_outputs_parse_back() {
    let (code, out) = run(&["extend", &data("banana4.graph")]);
    assert_eq!(code, 0);
    let f = torelli::format::parse_graph_file(&out).unwrap();
    assert!(torelli::iso::graph_isomorphic(&f.graph, &torelli::families::complete(4)));

    let (code, out) = run(&["connectivize", "--level", "3", &data("c4.graph")]);
    assert_eq!(code, 0);
    let f = torelli::format::parse_graph_file(&out).unwrap();
    assert_eq!(f.graph.edge_count(), 1);
    assert!(f.graph.edges()[0].is_loop());
}

#[test]
fn theta_posets_and_voronoi() {
    let (_, out) = run(&["posets", "--type", "op", &data("theta.graph")]);
    assert!(out.starts_with("size: 13\n"));
    let (_, out) = run(&["posets", "--type", "opbar", &data("theta.graph")]);
    assert!(out.starts_with("size: 6\n"));
    let (_, out) = run(&["voronoi", &data("theta.graph")]);
    assert!(out.contains("faces: 13\nquotient_faces: 6\n"));
    let (code, out) = run(&["conjecture", &data("k4.graph")]);
    assert_eq!(code, 0);
    assert!(out.contains("holds: true"));
}

#[test]
fn lengths_are_recovered() {
    let (code, out) = run(&["recover-lengths", &data("theta.graph"), &data("theta_gram.txt")]);
    assert_eq!(code, 0);
    assert_eq!(out, "length: 1 1/1\nlength: 2 2/1\nlength: 3 3/1\n");
}

#[test]
fn small_suite_passes() {
    let (code, out) = run(&["suite", "--max-edges", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("passed: true"));
    let (_, json) = run(&["suite", "--max-edges", "2", "--json", "--sequential"]);
    assert!(json.trim_start().starts_with('{'));
}
