// Sanity anchor: perfectly reflecting mirrors at zero temperature must land on
// the closed-form -pi^2 hbar c / (240 a^4).

use casimir_films::lifshitz::{
    force_zero_temperature, ideal_pressure, ForceJob, PlateConfig, Tolerances,
};

fn main() {
    println!(
        "{:>8} {:>16} {:>16} {:>12}",
        "a (nm)", "computed (Pa)", "closed form", "rel. error"
    );
    for a in [50.0, 100.0, 200.0, 500.0] {
        let job = ForceJob {
            plate1: PlateConfig::ideal(),
            plate2: PlateConfig::ideal(),
            separation: a,
            temperature: 300.0, // ignored on the zero-temperature path
            tolerances: Tolerances::default(),
        };
        let got = force_zero_temperature(&job).unwrap().pressure;
        let want = ideal_pressure(a);
        println!(
            "{a:>8.0} {got:>16.6e} {want:>16.6e} {:>12.2e}",
            (got / want - 1.0).abs()
        );
    }
}
