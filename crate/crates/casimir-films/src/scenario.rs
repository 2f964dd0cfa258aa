//! Declarative sweep descriptions and their execution into CSV artifacts.
//!
//! A scenario is a TOML file: a few scalar keys, a `[materials]` table naming
//! the media, two `[[plates]]` entries (for force sweeps), and one `[sweep]`
//! table selecting what varies.  Example:
//!
//! ```toml
//! description = "free-standing films, pressure vs separation"
//! temperature = 300.0
//! output_path = "out/example.csv"
//!
//! [materials.gold]
//! kind = "drude"
//! omega_p = 9.0
//! omega_tau = 0.035
//! v_f = 0.00467
//!
//! [[plates]]
//! substrate = "gold"
//!
//! [[plates]]
//! substrate = "gold"
//!
//! [sweep]
//! kind = "separation"
//! values_nm = [100.0, 200.0]
//! ```
//!
//! Force sweeps (`separation`, `thickness`, `substrate`) evaluate every row
//! twice — once with the local response, once with the nonlocal one — and
//! report both pressures plus their percent difference.  `reflection` sweeps
//! skip the plates entirely and tabulate single-interface or film reflection
//! coefficients on a dimensionless (omega, q, thickness) grid.
//!
//! Rows are computed in parallel but written in order; a run is
//! byte-reproducible at any thread count.  A row that fails numerically fills
//! the trailing `error` column and leaves its result cells empty instead of
//! aborting the sweep.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::HBAR_C;
use crate::error::{Error, Result};
use crate::lifshitz::{percent_difference, ForceJob, PlateConfig, Tolerances};
use crate::materials::{DrudeParams, MaterialModel, SurfaceScattering};
use crate::reflection_local::{Layer, LayerStack, Polarization};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// One line shown by `--list`.
    pub description: String,
    /// Kelvin. Unused by reflection sweeps.
    #[serde(default = "default_temperature")]
    pub temperature: f64,
    /// Where the CSV goes, relative to the working directory unless absolute.
    pub output_path: String,
    #[serde(default)]
    pub tolerances: ToleranceSpec,
    pub materials: BTreeMap<String, MaterialSpec>,
    /// Exactly two for force sweeps, none for reflection sweeps.
    #[serde(default)]
    pub plates: Vec<PlateSpec>,
    pub sweep: SweepSpec,
}

fn default_temperature() -> f64 {
    300.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceSpec {
    pub matsubara_rel: f64,
    pub quad_rel: f64,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        let t = Tolerances::default();
        Self { matsubara_rel: t.matsubara_rel, quad_rel: t.quad_rel }
    }
}

impl ToleranceSpec {
    pub fn to_tolerances(self) -> Tolerances {
        Tolerances { matsubara_rel: self.matsubara_rel, quad_rel: self.quad_rel }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaterialSpec {
    Vacuum,
    Dielectric {
        epsilon: f64,
    },
    Drude {
        /// eV
        omega_p: f64,
        /// eV
        omega_tau: f64,
        /// Fermi velocity over c; 0 means the material is local-only.
        #[serde(default)]
        v_f: f64,
        /// Present = enabled. Adds the thin-film collision term to the
        /// relaxation frequency wherever this material appears as a layer.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        surface_scattering: Option<ScatteringSpec>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatteringSpec {
    /// Probability of specular reflection at the film boundaries, in [0, 1].
    pub specularity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlateSpec {
    pub substrate: String,
    /// Top (vacuum side) first. At most one layer: the nonlocal column
    /// describes a single film or a bare half-space.
    #[serde(default)]
    pub layers: Vec<LayerSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    pub material: String,
    pub thickness_nm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepSpec {
    /// Pressure vs plate separation, geometry fixed.
    Separation { values_nm: Vec<f64> },
    /// Pressure vs top-layer thickness (replaced on both plates), separation fixed.
    Thickness { separation_nm: f64, values_nm: Vec<f64> },
    /// Pressure vs substrate material (replaced on both plates), separation fixed.
    Substrate { separation_nm: f64, materials: Vec<String> },
    /// Reflection coefficients of one film (or half-space) on a dimensionless
    /// grid: omega in units of the metal's plasma frequency, q in units of
    /// omega_p / (hbar c), thickness in units of hbar c / omega_p with `inf`
    /// meaning a bare half-space.
    Reflection {
        material: String,
        substrate: String,
        polarization: PolarizationSpec,
        q: Vec<f64>,
        omega: Vec<f64>,
        thickness: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarizationSpec {
    S,
    P,
}

impl PolarizationSpec {
    pub fn as_str(self) -> &'static str {
        match self {
            PolarizationSpec::S => "s",
            PolarizationSpec::P => "p",
        }
    }

    pub fn to_polarization(self) -> Polarization {
        match self {
            PolarizationSpec::S => Polarization::S,
            PolarizationSpec::P => Polarization::P,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.description.trim().is_empty() {
            return Err(Error::Config("description must not be empty".into()));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(Error::Config(format!(
                "temperature must be > 0 and finite, got {}",
                self.temperature
            )));
        }
        if self.output_path.is_empty() {
            return Err(Error::Config("output_path must not be empty".into()));
        }
        self.tolerances.to_tolerances().validate()?;
        if self.materials.is_empty() {
            return Err(Error::Config("at least one material is required".into()));
        }
        for (name, spec) in &self.materials {
            if name.is_empty() {
                return Err(Error::Config("material names must not be empty".into()));
            }
            material_model(spec)
                .validate()
                .map_err(|e| Error::Config(format!("material '{name}': {e}")))?;
        }

        match &self.sweep {
            SweepSpec::Separation { values_nm } => {
                self.validate_plates()?;
                check_sweep_values("sweep.values_nm", values_nm, false, false)?;
            }
            SweepSpec::Thickness { separation_nm, values_nm } => {
                self.validate_plates()?;
                check_scalar("sweep.separation_nm", *separation_nm)?;
                check_sweep_values("sweep.values_nm", values_nm, false, false)?;
                for (i, plate) in self.plates.iter().enumerate() {
                    if plate.layers.is_empty() {
                        return Err(Error::Config(format!(
                            "thickness sweeps replace the top layer, but plate {} has no layers",
                            i + 1
                        )));
                    }
                }
            }
            SweepSpec::Substrate { separation_nm, materials } => {
                self.validate_plates()?;
                check_scalar("sweep.separation_nm", *separation_nm)?;
                if materials.is_empty() {
                    return Err(Error::Config("sweep.materials must not be empty".into()));
                }
                for name in materials {
                    self.resolve(name)?;
                }
                for (i, plate) in self.plates.iter().enumerate() {
                    if plate.layers.is_empty() {
                        return Err(Error::Config(format!(
                            "substrate sweeps swap the substrate under a film, but plate {} \
                             has no layers; the swept material would front the gap",
                            i + 1
                        )));
                    }
                }
            }
            SweepSpec::Reflection { material, substrate, q, omega, thickness, .. } => {
                if !self.plates.is_empty() {
                    return Err(Error::Config(
                        "reflection sweeps take no plates; remove the [[plates]] entries".into(),
                    ));
                }
                match self.resolve(material)? {
                    MaterialSpec::Drude { v_f, .. } if *v_f > 0.0 => {}
                    _ => {
                        return Err(Error::Config(format!(
                            "reflection sweep material '{material}' must be a Drude metal \
                             with v_f > 0 so the nonlocal column is defined"
                        )));
                    }
                }
                self.resolve(substrate)?;
                check_sweep_values("sweep.q", q, true, false)?;
                check_sweep_values("sweep.omega", omega, false, false)?;
                check_sweep_values("sweep.thickness", thickness, false, true)?;
            }
        }
        Ok(())
    }

    /// Shared checks for the three force sweep kinds.
    fn validate_plates(&self) -> Result<()> {
        if self.plates.len() != 2 {
            return Err(Error::Config(format!(
                "force sweeps need exactly two plates, got {}",
                self.plates.len()
            )));
        }
        for (i, plate) in self.plates.iter().enumerate() {
            let which = i + 1;
            if plate.layers.len() > 1 {
                return Err(Error::Config(format!(
                    "plate {which}: at most one layer is supported (a film on a substrate)"
                )));
            }
            self.build_stack(plate)?
                .validate()
                .map_err(|e| Error::Config(format!("plate {which}: {e}")))?;
            // Every force row carries a nonlocal column, so the medium facing
            // the gap must have a nonlocal description.
            let surface = plate
                .layers
                .first()
                .map(|l| l.material.as_str())
                .unwrap_or(plate.substrate.as_str());
            match self.resolve(surface)? {
                MaterialSpec::Drude { v_f, .. } if *v_f > 0.0 => {}
                _ => {
                    return Err(Error::Config(format!(
                        "plate {which}: material '{surface}' fronts the gap but has no \
                         nonlocal description (needs kind = \"drude\" with v_f > 0)"
                    )));
                }
            }
        }
        Ok(())
    }

    fn resolve(&self, name: &str) -> Result<&MaterialSpec> {
        self.materials
            .get(name)
            .ok_or_else(|| Error::Config(format!("unknown material '{name}'")))
    }

    fn model(&self, name: &str) -> Result<MaterialModel> {
        Ok(material_model(self.resolve(name)?))
    }

    fn build_stack(&self, plate: &PlateSpec) -> Result<LayerStack> {
        let mut layers = Vec::with_capacity(plate.layers.len());
        for layer in &plate.layers {
            layers.push(Layer {
                material: self.model(&layer.material)?,
                thickness: layer.thickness_nm,
            });
        }
        Ok(LayerStack { layers, substrate: self.model(&plate.substrate)? })
    }

    /// Materialize the sweep: CSV header plus one row descriptor per line.
    fn build_rows(&self) -> Result<(String, Vec<RowSpec>)> {
        const FORCE_COLUMNS: &str =
            "F_local_Pa,F_nonlocal_Pa,delta_percent,n_matsubara,quad_err,error";
        match &self.sweep {
            SweepSpec::Separation { values_nm } => {
                let p1 = self.build_stack(&self.plates[0])?;
                let p2 = self.build_stack(&self.plates[1])?;
                let rows = values_nm
                    .iter()
                    .map(|&a| RowSpec::Force {
                        label: fmt_float(a),
                        plate1: p1.clone(),
                        plate2: p2.clone(),
                        separation: a,
                    })
                    .collect();
                Ok((format!("a_nm,{FORCE_COLUMNS}"), rows))
            }
            SweepSpec::Thickness { separation_nm, values_nm } => {
                let p1 = self.build_stack(&self.plates[0])?;
                let p2 = self.build_stack(&self.plates[1])?;
                let rows = values_nm
                    .iter()
                    .map(|&h| {
                        let mut p1 = p1.clone();
                        let mut p2 = p2.clone();
                        p1.layers[0].thickness = h;
                        p2.layers[0].thickness = h;
                        RowSpec::Force {
                            label: fmt_float(h),
                            plate1: p1,
                            plate2: p2,
                            separation: *separation_nm,
                        }
                    })
                    .collect();
                Ok((format!("h_nm,{FORCE_COLUMNS}"), rows))
            }
            SweepSpec::Substrate { separation_nm, materials } => {
                let p1 = self.build_stack(&self.plates[0])?;
                let p2 = self.build_stack(&self.plates[1])?;
                let mut rows = Vec::with_capacity(materials.len());
                for name in materials {
                    let model = self.model(name)?;
                    let mut p1 = p1.clone();
                    let mut p2 = p2.clone();
                    p1.substrate = model.clone();
                    p2.substrate = model;
                    rows.push(RowSpec::Force {
                        label: csv_cell(name),
                        plate1: p1,
                        plate2: p2,
                        separation: *separation_nm,
                    });
                }
                Ok((format!("substrate,{FORCE_COLUMNS}"), rows))
            }
            SweepSpec::Reflection { material, substrate, polarization, q, omega, thickness } => {
                let film = self.model(material)?;
                let omega_p = match &film {
                    MaterialModel::Drude(params, _) => params.omega_p,
                    _ => unreachable!("validated as Drude"),
                };
                let sub = self.model(substrate)?;
                let mut rows = Vec::with_capacity(q.len() * thickness.len() * omega.len());
                for &qd in q {
                    for &hd in thickness {
                        let stack = if hd.is_finite() {
                            LayerStack::film(film.clone(), hd * HBAR_C / omega_p, sub.clone())
                        } else {
                            LayerStack::half_space(film.clone())
                        };
                        for &od in omega {
                            rows.push(RowSpec::Reflection {
                                omega: od,
                                q: qd,
                                h: hd,
                                zeta: od * omega_p,
                                q_dim: qd * omega_p / HBAR_C,
                                pol: *polarization,
                                stack: stack.clone(),
                            });
                        }
                    }
                }
                Ok(("omega,q,h,polarization,r_local,r_nonlocal,delta,error".into(), rows))
            }
        }
    }
}

fn material_model(spec: &MaterialSpec) -> MaterialModel {
    match spec {
        MaterialSpec::Vacuum => MaterialModel::Vacuum,
        MaterialSpec::Dielectric { epsilon } => MaterialModel::ConstantDielectric(*epsilon),
        MaterialSpec::Drude { omega_p, omega_tau, v_f, surface_scattering } => {
            let scattering = match surface_scattering {
                Some(s) => SurfaceScattering { specularity: s.specularity, enabled: true },
                None => SurfaceScattering::default(),
            };
            MaterialModel::Drude(
                DrudeParams { omega_p: *omega_p, omega_tau: *omega_tau, v_f: *v_f },
                scattering,
            )
        }
    }
}

fn check_scalar(what: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::Config(format!("{what} must be > 0 and finite, got {value}")));
    }
    Ok(())
}

fn check_sweep_values(what: &str, values: &[f64], allow_zero: bool, allow_inf: bool) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Config(format!("{what} must not be empty")));
    }
    let mut prev = f64::NEG_INFINITY;
    for &v in values {
        if v.is_nan() || (!allow_inf && !v.is_finite()) {
            return Err(Error::Config(format!("{what}: entries must be finite, got {v}")));
        }
        let floor_ok = v > 0.0 || (allow_zero && v == 0.0);
        if !floor_ok {
            return Err(Error::Config(format!("{what}: entries must be positive, got {v}")));
        }
        if !(v > prev) {
            return Err(Error::Config(format!("{what} must be strictly increasing")));
        }
        prev = v;
    }
    Ok(())
}

/// One CSV line, ready to compute.
#[derive(Debug, Clone)]
enum RowSpec {
    Force {
        /// Already CSV-escaped first column (separation, thickness, or substrate name).
        label: String,
        plate1: LayerStack,
        plate2: LayerStack,
        separation: f64,
    },
    Reflection {
        omega: f64,
        q: f64,
        h: f64,
        zeta: f64,
        q_dim: f64,
        pol: PolarizationSpec,
        stack: LayerStack,
    },
}

fn compute_row(row: &RowSpec, temperature: f64, tolerances: Tolerances) -> (Vec<String>, bool) {
    match row {
        RowSpec::Force { label, plate1, plate2, separation } => {
            let local = ForceJob {
                plate1: PlateConfig::local(plate1.clone()),
                plate2: PlateConfig::local(plate2.clone()),
                separation: *separation,
                temperature,
                tolerances,
            };
            let nonlocal = ForceJob {
                plate1: PlateConfig::nonlocal(plate1.clone()),
                plate2: PlateConfig::nonlocal(plate2.clone()),
                separation: *separation,
                temperature,
                tolerances,
            };
            match percent_difference(&local, &nonlocal) {
                Ok(cmp) => {
                    let n = cmp.local.n_terms_used.max(cmp.nonlocal.n_terms_used);
                    let quad_err =
                        cmp.local.quad_error_estimate + cmp.nonlocal.quad_error_estimate;
                    let cells = vec![
                        label.clone(),
                        fmt_float(cmp.local.pressure),
                        fmt_float(cmp.nonlocal.pressure),
                        fmt_float(cmp.delta_percent),
                        n.to_string(),
                        fmt_float(quad_err),
                        String::new(),
                    ];
                    (cells, false)
                }
                Err(e) => {
                    let mut cells = vec![label.clone()];
                    cells.extend(std::iter::repeat_n(String::new(), 5));
                    cells.push(csv_cell(&e.to_string()));
                    (cells, true)
                }
            }
        }
        RowSpec::Reflection { omega, q, h, zeta, q_dim, pol, stack } => {
            let polarization = pol.to_polarization();
            let outcome = PlateConfig::local(stack.clone())
                .reflection(polarization, *zeta, *q_dim)
                .and_then(|r_local| {
                    let r_nonlocal = PlateConfig::nonlocal(stack.clone())
                        .reflection(polarization, *zeta, *q_dim)?;
                    Ok((r_local, r_nonlocal))
                });
            let mut cells =
                vec![fmt_float(*omega), fmt_float(*q), fmt_float(*h), pol.as_str().to_string()];
            match outcome {
                Ok((r_local, r_nonlocal)) => {
                    cells.push(fmt_float(r_local));
                    cells.push(fmt_float(r_nonlocal));
                    cells.push(fmt_float(r_local - r_nonlocal));
                    cells.push(String::new());
                    (cells, false)
                }
                Err(e) => {
                    cells.extend(std::iter::repeat_n(String::new(), 3));
                    cells.push(csv_cell(&e.to_string()));
                    (cells, true)
                }
            }
        }
    }
}

/// 12 significant digits; `inf` stays `inf`.
fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        x.to_string()
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Replaces the config's `output_path`.
    pub output_override: Option<PathBuf>,
    /// Replaces both relative tolerances.
    pub tolerance_override: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub output_path: PathBuf,
    pub rows_total: usize,
    pub rows_failed: usize,
}

pub fn run_scenario(config: &ScenarioConfig, options: &RunOptions) -> Result<RunSummary> {
    config.validate()?;
    let tolerances = match options.tolerance_override {
        Some(t) => {
            let tol = Tolerances { matsubara_rel: t, quad_rel: t };
            tol.validate()?;
            tol
        }
        None => config.tolerances.to_tolerances(),
    };
    let (header, rows) = config.build_rows()?;

    let temperature = config.temperature;
    let results: Vec<(Vec<String>, bool)> =
        rows.par_iter().map(|row| compute_row(row, temperature, tolerances)).collect();

    let mut text = String::with_capacity(64 * (results.len() + 1));
    text.push_str(&header);
    text.push('\n');
    let mut rows_failed = 0;
    for (cells, failed) in &results {
        if *failed {
            rows_failed += 1;
        }
        text.push_str(&cells.join(","));
        text.push('\n');
    }

    let output_path = options
        .output_override
        .clone()
        .unwrap_or_else(|| PathBuf::from(&config.output_path));
    write_atomic(&output_path, &text)?;

    Ok(RunSummary { output_path, rows_total: results.len(), rows_failed })
}

/// Write via a temp file in the target directory so a crash never leaves a
/// truncated CSV behind.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(parent).map_err(|e| io_error(parent, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(parent).map_err(|e| io_error(parent, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), source }
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    toml::from_str(text).map_err(|e| Error::Config(format!("scenario parse failed: {e}")))
}

pub fn to_toml(config: &ScenarioConfig) -> Result<String> {
    toml::to_string_pretty(config)
        .map_err(|e| Error::Config(format!("scenario serialization failed: {e}")))
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_config(&text)
}

/// CLI argument resolution: bundled name first, then filesystem path.
pub fn load_argument(arg: &str) -> Result<ScenarioConfig> {
    match bundled(arg) {
        Some(b) => parse_config(b.text),
        None => load_config(Path::new(arg)),
    }
}

pub struct BundledScenario {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! bundled_scenarios {
    ($($name:literal),+ $(,)?) => {
        &[$(BundledScenario {
            name: $name,
            text: include_str!(concat!("../scenarios/", $name, ".toml")),
        }),+]
    };
}

pub const BUNDLED: &[BundledScenario] = bundled_scenarios![
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig7_thickness",
    "fig8",
    "fig8_thickness",
    "fig9",
    "fig9_bulk",
    "table1",
];

pub fn bundled(name: &str) -> Option<&'static BundledScenario> {
    BUNDLED.iter().find(|b| b.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_force_config() -> String {
        r#"
            description = "gold half-spaces"
            temperature = 300.0
            output_path = "out/mini.csv"

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
            values_nm = [200.0, 400.0]
        "#
        .to_string()
    }

    #[test]
    fn parses_and_validates_a_minimal_config() {
        let config = parse_config(&minimal_force_config()).unwrap();
        config.validate().unwrap();
        assert_eq!(config.temperature, 300.0);
        assert_eq!(config.plates.len(), 2);
        assert_eq!(config.tolerances, ToleranceSpec::default());
    }

    #[test]
    fn round_trips_through_toml() {
        let mut config = parse_config(&minimal_force_config()).unwrap();
        // exercise the trickier corners: optional scattering, inf thickness
        config.materials.insert(
            "coated".into(),
            MaterialSpec::Drude {
                omega_p: 9.0,
                omega_tau: 0.035,
                v_f: 0.00467,
                surface_scattering: Some(ScatteringSpec { specularity: 0.25 }),
            },
        );
        config.materials.insert("glass".into(), MaterialSpec::Dielectric { epsilon: 4.0 });
        config.plates.clear();
        config.sweep = SweepSpec::Reflection {
            material: "gold".into(),
            substrate: "glass".into(),
            polarization: PolarizationSpec::P,
            q: vec![0.1],
            omega: vec![1e-3, 1e-2, 1e-1],
            thickness: vec![0.1, 1.0, f64::INFINITY],
        };
        let text = to_toml(&config).unwrap();
        let reparsed = parse_config(&text).unwrap();
        assert_eq!(config, reparsed);
        reparsed.validate().unwrap();
    }

    #[test]
    fn rejects_unknown_top_level_keys() {
        let text = minimal_force_config().replace("temperature", "temprature");
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, Error::Config(_)), "got {err:?}");
    }

    #[test]
    fn validation_catches_bad_configs() {
        let base = minimal_force_config();

        let mut config = parse_config(&base).unwrap();
        config.temperature = 0.0;
        assert!(config.validate().is_err());

        let mut config = parse_config(&base).unwrap();
        config.plates.pop();
        assert!(config.validate().is_err());

        let mut config = parse_config(&base).unwrap();
        config.plates[0].substrate = "nope".into();
        assert!(config.validate().is_err());

        // descending sweep values
        let mut config = parse_config(&base).unwrap();
        config.sweep = SweepSpec::Separation { values_nm: vec![400.0, 200.0] };
        assert!(config.validate().is_err());

        // thickness sweep needs a layer to replace
        let mut config = parse_config(&base).unwrap();
        config.sweep = SweepSpec::Thickness { separation_nm: 100.0, values_nm: vec![2.0] };
        assert!(config.validate().is_err());

        // a gap-fronting material without a nonlocal description
        let mut config = parse_config(&base).unwrap();
        config.materials.insert("glass".into(), MaterialSpec::Dielectric { epsilon: 4.0 });
        config.plates[0].substrate = "glass".into();
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("nonlocal"), "got {err}");

        // reflection sweeps reject local-only metals
        let mut config = parse_config(&base).unwrap();
        config.plates.clear();
        config.materials.insert(
            "dull".into(),
            MaterialSpec::Drude { omega_p: 9.0, omega_tau: 0.035, v_f: 0.0, surface_scattering: None },
        );
        config.sweep = SweepSpec::Reflection {
            material: "dull".into(),
            substrate: "gold".into(),
            polarization: PolarizationSpec::S,
            q: vec![0.1],
            omega: vec![0.1],
            thickness: vec![1.0],
        };
        assert!(config.validate().is_err());
    }

    #[test]
    fn thickness_rows_replace_the_top_layer() {
        let mut config = parse_config(&minimal_force_config()).unwrap();
        config.materials.insert("glass".into(), MaterialSpec::Dielectric { epsilon: 4.0 });
        for plate in &mut config.plates {
            plate.substrate = "glass".into();
            plate.layers.push(LayerSpec { material: "gold".into(), thickness_nm: 2.0 });
        }
        config.sweep = SweepSpec::Thickness { separation_nm: 100.0, values_nm: vec![2.0, 10.0] };
        config.validate().unwrap();

        let (header, rows) = config.build_rows().unwrap();
        assert!(header.starts_with("h_nm,"));
        assert_eq!(rows.len(), 2);
        match &rows[1] {
            RowSpec::Force { label, plate1, plate2, separation } => {
                assert_eq!(label, "1.00000000000e1");
                assert_eq!(plate1.layers[0].thickness, 10.0);
                assert_eq!(plate2.layers[0].thickness, 10.0);
                assert_eq!(*separation, 100.0);
            }
            other => panic!("unexpected row {other:?}"),
        }
    }

    #[test]
    fn reflection_rows_scale_to_ev_and_inverse_nm() {
        let mut config = parse_config(&minimal_force_config()).unwrap();
        config.plates.clear();
        config.materials.insert("glass".into(), MaterialSpec::Dielectric { epsilon: 4.0 });
        config.sweep = SweepSpec::Reflection {
            material: "gold".into(),
            substrate: "glass".into(),
            polarization: PolarizationSpec::S,
            q: vec![0.1],
            omega: vec![1e-2],
            thickness: vec![1.0, f64::INFINITY],
        };
        let (header, rows) = config.build_rows().unwrap();
        assert!(header.starts_with("omega,q,h,"));
        assert_eq!(rows.len(), 2);
        match &rows[0] {
            RowSpec::Reflection { zeta, q_dim, stack, .. } => {
                assert!((zeta - 0.09).abs() < 1e-15);
                assert!((q_dim - 0.1 * 9.0 / HBAR_C).abs() < 1e-18);
                assert_eq!(stack.layers.len(), 1);
                assert!((stack.layers[0].thickness - HBAR_C / 9.0).abs() < 1e-12);
            }
            other => panic!("unexpected row {other:?}"),
        }
        match &rows[1] {
            RowSpec::Reflection { h, stack, .. } => {
                assert!(h.is_infinite());
                assert!(stack.layers.is_empty());
            }
            other => panic!("unexpected row {other:?}"),
        }
    }

    #[test]
    fn csv_cells_quote_only_when_needed() {
        assert_eq!(csv_cell("silica"), "silica");
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
        assert_eq!(csv_cell("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(fmt_float(50.0), "5.00000000000e1");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
    }

    #[test]
    fn runs_are_byte_reproducible() {
        let config = parse_config(&minimal_force_config()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out1 = dir.path().join("one.csv");
        let out2 = dir.path().join("two.csv");
        let mut options = RunOptions {
            output_override: Some(out1.clone()),
            tolerance_override: Some(1e-6),
        };
        let summary = run_scenario(&config, &options).unwrap();
        assert_eq!(summary.rows_total, 2);
        assert_eq!(summary.rows_failed, 0);
        assert_eq!(summary.output_path, out1);

        options.output_override = Some(out2.clone());
        run_scenario(&config, &options).unwrap();

        let first = fs::read(&out1).unwrap();
        let second = fs::read(&out2).unwrap();
        assert!(!first.is_empty());
        assert_eq!(first, second);

        let text = String::from_utf8(first).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("a_nm,F_local_Pa,F_nonlocal_Pa,delta_percent"));
        for line in &lines[1..] {
            assert!(line.ends_with(','), "error column should be empty: {line}");
            let f_local: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert!(f_local < 0.0, "attraction expected, got {f_local}");
        }
    }

    #[test]
    fn bundled_scenarios_parse_validate_and_are_distinct() {
        assert!(BUNDLED.len() >= 10, "only {} bundled scenarios", BUNDLED.len());
        let mut names = std::collections::BTreeSet::new();
        let mut outputs = std::collections::BTreeSet::new();
        for b in BUNDLED {
            let config = parse_config(b.text)
                .unwrap_or_else(|e| panic!("bundled scenario {}: {e}", b.name));
            config
                .validate()
                .unwrap_or_else(|e| panic!("bundled scenario {}: {e}", b.name));
            assert!(names.insert(b.name), "duplicate bundled name {}", b.name);
            assert!(
                outputs.insert(config.output_path.clone()),
                "duplicate output path {}",
                config.output_path
            );
        }
        assert!(bundled("fig1").is_some());
        assert!(bundled("missing").is_none());
    }
}
