//! Acceptance run: every criterion at full scale, one line each, then a
//! negative control. Runs without the libtest harness so the lines always
//! reach stdout; any failure exits non-zero.

use std::process::ExitCode;

use torelli::suite::{
    build_corpus, check_graph_torelli, run_theorem_suite, CheckKind, Mutation, SuiteParams,
};

fn criteria() -> Result<(), String> {
    let params = SuiteParams::default();
    let expected = (6, 5, 200, 100, 10);
    let actual = (
        params.max_edges,
        params.orientation_max_edges,
        params.metric_samples,
        params.primitivity_samples,
        params.max_length,
    );
    if actual != expected {
        return Err(format!("default parameters changed: {actual:?}"));
    }

    let report = run_theorem_suite(&params).map_err(|e| e.to_string())?;
    println!("corpus: {} connected multigraphs with at most {} edges", report.corpus_size, params.max_edges);
    let mut criteria: Vec<_> = report.criteria.iter().collect();
    criteria.sort_by_key(|c| c.id);
    for c in &criteria {
        println!("{}", c.summary());
        for example in &c.counterexamples {
            println!("  counterexample:\n    {}", example.trim_end().replace('\n', "\n    "));
        }
    }
    println!("total {:.2}s", report.seconds);

    if report.corpus_size != 470 {
        return Err(format!("corpus has {} graphs, expected 470", report.corpus_size));
    }
    let ids: Vec<u32> = criteria.iter().map(|c| c.id).collect();
    if ids != (1..=9).collect::<Vec<_>>() {
        return Err(format!("criteria {ids:?}"));
    }
    for c in &criteria {
        if c.checked == 0 {
            return Err(format!("criterion {} checked nothing", c.id));
        }
        if c.kind == CheckKind::Theorem && c.failures > 0 {
            return Err(c.summary());
        }
    }
    if criteria[5].kind != CheckKind::Evidence {
        return Err("criterion 6 must be recorded as evidence".into());
    }
    Ok(())
}

/// A deliberately weakened isometry test must be caught by the graph
/// Torelli sweep, so a green run means something.
fn negative_control() -> Result<(), String> {
    let params = SuiteParams {
        max_edges: 5,
        mutation: Some(Mutation::DeterminantOnlyIsometry),
        ..SuiteParams::default()
    };
    let corpus = build_corpus(params.max_edges, params.execution).map_err(|e| e.to_string())?;
    let report = check_graph_torelli(&corpus, &params);
    println!("negative control (determinant-only isometry): {}", report.summary());
    if report.failures == 0 || report.passed() {
        return Err("mutated isometry went unnoticed".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut ok = true;
    for (name, check) in [("acceptance criteria", criteria as fn() -> Result<(), String>), ("negative control", negative_control)] {
        match check() {
            Ok(()) => println!("ok: {name}"),
            Err(e) => {
                println!("FAILED: {name}: {e}");
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
