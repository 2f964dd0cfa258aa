// The scenario pipeline end to end, without the CLI: parse a sweep
// description, run it in parallel, and read back the deterministic CSV.

use casimir_films::scenario::{parse_config, run_scenario, RunOptions};

const SCENARIO: &str = r#"
description = "gold half-spaces, coarse separation sweep"
temperature = 300.0
output_path = "out/example_sweep.csv"

[materials.gold]
kind = "drude"
omega_p = 9.0
omega_tau = 0.035
v_f = 0.00467

[[plates]]
substrate = "gold"

[[plates]]
substrate = "gold"

[sweep]
kind = "separation"
values_nm = [100.0, 200.0, 400.0]
"#;

fn main() {
    let config = parse_config(SCENARIO).unwrap();
    let options = RunOptions { output_override: None, tolerance_override: Some(1e-7) };
    let summary = run_scenario(&config, &options).unwrap();
    println!(
        "wrote {} ({} rows, {} failed)\n",
        summary.output_path.display(),
        summary.rows_total,
        summary.rows_failed
    );
    print!("{}", std::fs::read_to_string(&summary.output_path).unwrap());
}
