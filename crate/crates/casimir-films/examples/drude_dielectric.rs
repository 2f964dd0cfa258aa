// Material models at imaginary frequency: the Drude permittivity, how thin-film
// surface scattering stiffens the relaxation, and the dimensionless variables
// the nonlocal layer works in.

use casimir_films::materials::{
    effective_relaxation, to_dimensionless, DrudeParams, MaterialModel, SurfaceScattering,
};

fn main() {
    let gold = DrudeParams { omega_p: 9.0, omega_tau: 0.035, v_f: 0.00467 };
    let model = MaterialModel::Drude(gold.clone(), SurfaceScattering::default());

    println!("Drude permittivity of gold at imaginary frequency (always real, > 1):");
    println!("{:>10} {:>14}", "zeta (eV)", "eps(i zeta)");
    for zeta in [0.01, 0.1, 1.0, 9.0] {
        let eps = model.epsilon(zeta, None).unwrap();
        println!("{zeta:>10.2} {eps:>14.4}");
    }

    // Rough boundaries shorten the electron mean free path; the thinner the
    // film, the larger the extra collision frequency.
    let rough = SurfaceScattering { specularity: 0.0, enabled: true };
    println!("\nEffective relaxation (eV) with fully diffuse boundaries:");
    println!("{:>10} {:>14}", "h (nm)", "omega_tau_eff");
    for h in [2.0, 10.0, 100.0] {
        let tau = effective_relaxation(&gold, &rough, Some(h)).unwrap();
        println!("{h:>10.0} {tau:>14.4}");
    }
    let bulk = effective_relaxation(&gold, &rough, None).unwrap();
    println!("{:>10} {bulk:>14.4}", "bulk");

    // The nonlocal layer measures frequency in units of omega_p, transverse
    // wave vectors in omega_p / (hbar c), lengths in hbar c / omega_p.
    let point = to_dimensionless(0.09, 0.0456, 2.0, &gold);
    println!("\nzeta = 0.09 eV, q = 0.0456 /nm, h = 2 nm in film units:");
    println!(
        "  Omega = {:.4}, Q = {:.4}, gamma = {:.5}, H = {:.4}",
        point.omega, point.q, point.gamma, point.h
    );
}
