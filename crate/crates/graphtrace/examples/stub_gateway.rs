//! Query the built-in stub endpoint end to end: build prompts, collect
//! candidates over HTTP with bounded concurrency, grade, and report.
//!
//! ```bash
//! cargo run --example stub_gateway
//! ```

use graphtrace::dataset::record_input;
use graphtrace::eval::{aggregate_report, best_of_n, ScoredRow};
use graphtrace::gateway::{batch_query, stub::StubBehavior, stub::StubServer, ModelConfig};
use graphtrace::graph::{sample_instance, SizeClass, ALL_TASKS};
use graphtrace::solve::solve;

fn main() {
    let server = StubServer::spawn(StubBehavior::default()).unwrap();
    println!("stub endpoint at {}", server.url());

    let instances: Vec<_> = ALL_TASKS
        .iter()
        .map(|&kind| sample_instance(kind, SizeClass::Small, 1))
        .collect();
    let jobs: Vec<(String, String)> = instances
        .iter()
        .map(|inst| (inst.instance_id.clone(), record_input(inst)))
        .collect();

    let cfg = ModelConfig {
        base_url: server.url(),
        model: "stub".into(),
        n: 4,
        temperature: 1.0,
        concurrency: 4,
        ..ModelConfig::default()
    };
    let results = batch_query(&jobs, &cfg);
    println!("queried {} instances ({} requests, peak {} in flight)\n",
        results.len(), server.request_count(), server.peak_inflight());

    let mut rows = Vec::new();
    for result in &results {
        let inst = instances.iter().find(|i| i.instance_id == result.instance_id).unwrap();
        let solved = solve(inst).unwrap();
        let outcome = best_of_n(inst, solved.objective, &result.candidates).unwrap();
        rows.push(ScoredRow {
            instance_id: result.instance_id.clone(),
            kind: inst.kind,
            size_class: inst.size_class,
            outcome,
        });
    }
    println!("{}", aggregate_report(&rows).render_text());
}
