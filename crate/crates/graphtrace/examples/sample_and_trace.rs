//! Sample a synthetic instance, generate its step-by-step reasoning trace,
//! and replay-verify the result.
//!
//! ```bash
//! cargo run --example sample_and_trace
//! ```

use graphtrace::graph::{sample_instance, SizeClass, TaskKind};
use graphtrace::thought::{generate_trace, verify_trace};

fn main() {
    let inst = sample_instance(TaskKind::Mis, SizeClass::Small, 7);
    println!("instance {}:", inst.instance_id);
    println!("{}\n", inst.render_text());

    let trace = generate_trace(&inst).unwrap();
    println!("trace ({} lines):", trace.lines.len());
    for line in &trace.lines {
        println!("  [{}] {}", line.thought.identifier(), line.rendered);
    }

    let report = verify_trace(&inst, &trace.render());
    println!("\nreplay consistent: {}", report.consistent);
    println!("final solution valid: {}", report.final_valid);
    println!("final solution: {}", trace.final_solution.render());
}
