//! Replay verification: recompute every claim in a trace and catch a
//! hallucinated step.
//!
//! ```bash
//! cargo run --example trace_replay
//! ```

use graphtrace::fixtures;
use graphtrace::graph::TaskKind;
use graphtrace::thought::{generate_trace, verify_trace};

fn main() {
    let inst = fixtures::example_instance(TaskKind::Mvc);
    let trace = generate_trace(&inst).unwrap();
    let text = trace.render();
    println!("{text}\n");

    let report = verify_trace(&inst, &text);
    println!("unmodified trace consistent: {}", report.consistent);

    // Corrupt one number: claim a wrong isolated-node list.
    let mutated = text.replace(
        "Remove isolated nodes: [0, 3, 4, 8, 9].",
        "Remove isolated nodes: [0, 3, 4, 8].",
    );
    let report = verify_trace(&inst, &mutated);
    println!("mutated trace consistent:    {}", report.consistent);
    if let Some(divergence) = report.divergence {
        println!(
            "first divergence at line {}:\n  expected: {}\n  found:    {}",
            divergence.line, divergence.expected, divergence.found
        );
    }
}
