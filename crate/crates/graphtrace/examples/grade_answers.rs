//! Grade free-text answers: parse, validate, score, and aggregate a report.
//!
//! ```bash
//! cargo run --example grade_answers
//! ```

use graphtrace::eval::{aggregate_report, score_candidate, ScoredRow};
use graphtrace::fixtures;
use graphtrace::graph::TaskKind;
use graphtrace::solve::solve;

fn main() {
    let inst = fixtures::example_instance(TaskKind::Mis);
    let optimum = solve(&inst).unwrap().objective;
    println!("optimum objective: {optimum}\n");

    let answers = [
        ("optimal", "After some thought, the maximum independent set is [0, 1, 2, 7, 3, 5]."),
        ("suboptimal", "The maximum independent set is [0, 1, 2, 7]."),
        ("invalid", "The maximum independent set is [3, 4]."),
        ("unparseable", "I cannot find any independent set."),
    ];

    let mut rows = Vec::new();
    for (label, text) in answers {
        let outcome = score_candidate(&inst, optimum, text);
        println!(
            "{label:<12} valid={:<5} objective={:<4} optimal={:<5} ratio={:.4}  {}",
            outcome.valid,
            outcome.objective.map_or("-".into(), |o| o.to_string()),
            outcome.optimal,
            outcome.ratio,
            outcome.reason
        );
        rows.push(ScoredRow {
            instance_id: inst.instance_id.clone(),
            kind: inst.kind,
            size_class: inst.size_class,
            outcome,
        });
    }

    println!("\n{}", aggregate_report(&rows).render_text());
}
