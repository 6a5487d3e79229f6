//! Best-of-n candidate selection: the kept score never drops as the pool
//! prefix grows.
//!
//! ```bash
//! cargo run --example best_of_n
//! ```

use graphtrace::eval::best_of_n;
use graphtrace::graph::{sample_instance, SizeClass, TaskKind};
use graphtrace::solve::solve;
use graphtrace::thought::generate_trace;

fn main() {
    let inst = sample_instance(TaskKind::Mvc, SizeClass::Small, 11);
    let solved = solve(&inst).unwrap();
    println!("{}", inst.render_text());
    println!("optimum objective: {}\n", solved.objective);

    let optimal_answer = generate_trace(&inst).unwrap().render();
    let pool: Vec<String> = vec![
        "no answer here".into(),
        "The minimum vertex cover is [0, 1, 2, 3, 4, 5].".into(),
        optimal_answer,
        "The minimum vertex cover is [].".into(),
    ];

    for n in 1..=pool.len() {
        let best = best_of_n(&inst, solved.objective, &pool[..n]).unwrap();
        println!(
            "n={n}: ratio {:.4}, optimal {}, objective {:?}",
            best.ratio, best.optimal, best.objective
        );
    }
}
