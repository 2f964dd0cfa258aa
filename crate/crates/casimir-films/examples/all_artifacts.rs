// Regenerate every bundled CSV artifact into out/.  The reflection sweeps are
// instant; the force sweeps dominate, and the whole set takes a few minutes on
// one core.

use std::time::Instant;

use casimir_films::scenario::{self, RunOptions};

fn main() {
    for b in scenario::BUNDLED {
        let config = scenario::parse_config(b.text).unwrap();
        let started = Instant::now();
        match scenario::run_scenario(&config, &RunOptions::default()) {
            Ok(summary) => println!(
                "{:<16} {:>4} rows, {} failed, {:>6.1}s -> {}",
                b.name,
                summary.rows_total,
                summary.rows_failed,
                started.elapsed().as_secs_f64(),
                summary.output_path.display(),
            ),
            Err(e) => println!("{:<16} error: {e}", b.name),
        }
    }
}
