// The headline physics: how large is the nonlocal correction to the Casimir
// pressure for thin films, and what do thickness and a substrate do to it?
// Takes a minute or so; tolerances are relaxed accordingly.

use casimir_films::lifshitz::{percent_difference, ForceJob, PlateConfig, Tolerances};
use casimir_films::materials::{DrudeParams, MaterialModel, SurfaceScattering};
use casimir_films::reflection_local::LayerStack;

fn delta(stack: &LayerStack, a: f64) -> f64 {
    let tolerances = Tolerances { matsubara_rel: 1e-6, quad_rel: 1e-6 };
    let job = |response: fn(LayerStack) -> PlateConfig| ForceJob {
        plate1: response(stack.clone()),
        plate2: response(stack.clone()),
        separation: a,
        temperature: 300.0,
        tolerances,
    };
    percent_difference(&job(PlateConfig::local), &job(PlateConfig::nonlocal))
        .unwrap()
        .delta_percent
}

fn main() {
    let gold = MaterialModel::Drude(
        DrudeParams { omega_p: 9.0, omega_tau: 0.035, v_f: 0.00467 },
        SurfaceScattering::default(),
    );

    println!("Free-standing gold films, percent difference local vs nonlocal:");
    println!("{:>8} {:>10} {:>10} {:>10}", "a (nm)", "h = 2", "h = 10", "h = 100");
    for a in [50.0, 100.0, 200.0] {
        let row: Vec<String> = [2.0, 10.0, 100.0]
            .iter()
            .map(|&h| {
                let stack = LayerStack::film(gold.clone(), h, MaterialModel::Vacuum);
                format!("{:>10.4}", delta(&stack, a))
            })
            .collect();
        println!("{a:>8.0} {}", row.join(" "));
    }

    println!("\n2 nm films at a = 50 nm, by support:");
    for (name, substrate) in [
        ("vacuum", MaterialModel::Vacuum),
        ("silica", MaterialModel::ConstantDielectric(4.0)),
    ] {
        let stack = LayerStack::film(gold.clone(), 2.0, substrate);
        println!("  {name:<8} {:.4}%", delta(&stack, 50.0));
    }
    let bulk = LayerStack::half_space(gold);
    println!("  {:<8} {:.4}%", "bulk", delta(&bulk, 50.0));
}
