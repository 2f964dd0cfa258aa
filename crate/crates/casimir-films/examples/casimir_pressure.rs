// One full pressure evaluation, both response models: gold half-spaces at
// 100 nm and room temperature, with the polarization split and the Matsubara
// bookkeeping that the CSV artifacts summarize.

use casimir_films::lifshitz::{force_pp, ForceJob, PlateConfig, Tolerances};
use casimir_films::materials::{DrudeParams, MaterialModel, SurfaceScattering};
use casimir_films::reflection_local::LayerStack;

fn main() {
    let gold = MaterialModel::Drude(
        DrudeParams { omega_p: 9.0, omega_tau: 0.035, v_f: 0.00467 },
        SurfaceScattering::default(),
    );
    let stack = LayerStack::half_space(gold);
    let job = |response: fn(LayerStack) -> PlateConfig| ForceJob {
        plate1: response(stack.clone()),
        plate2: response(stack.clone()),
        separation: 100.0,
        temperature: 300.0,
        tolerances: Tolerances::default(),
    };

    let local = force_pp(&job(PlateConfig::local)).unwrap();
    let nonlocal = force_pp(&job(PlateConfig::nonlocal)).unwrap();

    for (name, result) in [("local", &local), ("nonlocal", &nonlocal)] {
        println!("{name} response:");
        println!("  pressure          {:+.6e} Pa", result.pressure);
        println!(
            "  s / p split       {:+.6e} / {:+.6e} Pa",
            result.per_polarization.s, result.per_polarization.p
        );
        println!("  Matsubara terms   {}", result.n_terms_used);
        println!("  quadrature error  {:.1e} Pa", result.quad_error_estimate);
        let head: Vec<String> = result
            .per_term_contributions
            .iter()
            .take(4)
            .map(|t| format!("n={} ({:.3e} Pa)", t.n, t.pressure.total()))
            .collect();
        println!("  leading terms     {}\n", head.join(", "));
    }

    let delta = 100.0 * (local.pressure - nonlocal.pressure).abs() / local.pressure.abs();
    println!("nonlocal correction: {delta:.4}% of the local pressure");
}
