// Spatial dispersion at work: even/odd surface impedances of a thin film with
// specular electron reflection, and how far the assembled reflection
// coefficients drift from the local Drude answer.  The s channel barely moves;
// the p channel carries the effect.

use casimir_films::materials::{to_dimensionless, DrudeParams};
use casimir_films::reflection_local::{film_reflection as local_film, Polarization};
use casimir_films::reflection_nonlocal::{film_impedance_p, film_impedance_s, film_reflection, Parity};

fn main() {
    let gold = DrudeParams { omega_p: 9.0, omega_tau: 0.035, v_f: 0.00467 };
    let h_nm = 2.0;
    let q = 0.1 * gold.omega_p / 197.327; // Q = 0.1 in film units

    println!("2 nm gold film on silica, Q = 0.1:");
    println!(
        "{:>10} {:>13} {:>13} {:>13} {:>13}",
        "Omega", "Z_s even", "Z_s odd", "Z_p even", "Z_p odd"
    );
    for omega in [1e-3, 1e-2, 1e-1] {
        let zeta = omega * gold.omega_p;
        let pt = to_dimensionless(zeta, q, h_nm, &gold);
        let zse = film_impedance_s(Parity::Even, pt.omega, pt.q, pt.gamma, pt.h, gold.v_f).unwrap();
        let zso = film_impedance_s(Parity::Odd, pt.omega, pt.q, pt.gamma, pt.h, gold.v_f).unwrap();
        let zpe = film_impedance_p(Parity::Even, pt.omega, pt.q, pt.gamma, pt.h, gold.v_f).unwrap();
        let zpo = film_impedance_p(Parity::Odd, pt.omega, pt.q, pt.gamma, pt.h, gold.v_f).unwrap();
        println!("{omega:>10.0e} {zse:>13.6e} {zso:>13.6e} {zpe:>13.6e} {zpo:>13.6e}");
    }

    println!(
        "\n{:>10} {:>4} {:>13} {:>13} {:>13}",
        "Omega", "pol", "local", "nonlocal", "difference"
    );
    for pol in [Polarization::S, Polarization::P] {
        for omega in [1e-3, 1e-2, 1e-1] {
            let zeta = omega * gold.omega_p;
            let eps = 1.0 + gold.omega_p.powi(2) / (zeta * (zeta + gold.omega_tau));
            let local = local_film(pol, zeta, q, eps, h_nm, 4.0);
            let nonlocal = film_reflection(pol, zeta, q, &gold, h_nm, 4.0).unwrap();
            println!(
                "{omega:>10.0e} {pol:>4?} {local:>13.6} {nonlocal:>13.6} {:>13.3e}",
                local - nonlocal
            );
        }
    }
}
