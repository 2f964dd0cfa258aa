// Local (Fresnel) reflection of layered plates at imaginary frequency: a bare
// interface, then a thin gold film on silica approaching the opaque limit as
// it thickens.

use casimir_films::materials::{DrudeParams, MaterialModel, SurfaceScattering};
use casimir_films::reflection_local::{fresnel_interface, LayerStack, Polarization};

fn main() {
    let gold = MaterialModel::Drude(
        DrudeParams { omega_p: 9.0, omega_tau: 0.035, v_f: 0.00467 },
        SurfaceScattering::default(),
    );
    let silica = MaterialModel::ConstantDielectric(4.0);

    let zeta = 0.9; // eV
    let q = 0.01; // 1/nm

    println!("Bare vacuum -> silica interface at zeta = {zeta} eV, q = {q} /nm:");
    for pol in [Polarization::S, Polarization::P] {
        let r = fresnel_interface(&MaterialModel::Vacuum, &silica, zeta, q, pol).unwrap();
        println!("  R_{pol:?} = {r:+.6}");
    }

    let half_space = LayerStack::half_space(gold.clone());
    println!("\nGold films on silica, same (zeta, q):");
    println!("{:>8} {:>12} {:>12}", "h (nm)", "R_s", "R_p");
    for h in [1.0, 2.0, 5.0, 10.0, 20.0, 50.0] {
        let stack = LayerStack::film(gold.clone(), h, silica.clone());
        let rs = stack.reflection(Polarization::S, zeta, q).unwrap();
        let rp = stack.reflection(Polarization::P, zeta, q).unwrap();
        println!("{h:>8.0} {rs:>12.6} {rp:>12.6}");
    }
    let rs = half_space.reflection(Polarization::S, zeta, q).unwrap();
    let rp = half_space.reflection(Polarization::P, zeta, q).unwrap();
    println!("{:>8} {rs:>12.6} {rp:>12.6}", "thick");
}
