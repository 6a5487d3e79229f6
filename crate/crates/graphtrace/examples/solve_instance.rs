//! Parse an instance from its text form and solve it three ways: the exact
//! solver, the brute-force oracle, and the greedy baseline.
//!
//! ```bash
//! cargo run --example solve_instance
//! ```

use graphtrace::fixtures;
use graphtrace::graph::TaskKind;
use graphtrace::solve::{heuristic_solve, oracle_solve, solution_objective, solve, Strategy};

fn main() {
    for kind in [TaskKind::Mis, TaskKind::Mvc, TaskKind::Tsp, TaskKind::Ged] {
        let inst = fixtures::example_instance(kind);
        println!("== {kind} ==");
        println!("{}", fixtures::example_text(kind));

        let exact = solve(&inst).unwrap();
        println!("exact   {} -> objective {}", exact.solution.render(), exact.objective);

        let oracle = oracle_solve(&inst).unwrap();
        println!(
            "oracle  {} -> objective {}",
            oracle.render(),
            solution_objective(&inst, &oracle)
        );

        let greedy = heuristic_solve(&inst, Strategy::Greedy).unwrap();
        println!(
            "greedy  {} -> objective {}",
            greedy.render(),
            solution_objective(&inst, &greedy)
        );
        println!();
    }
}
