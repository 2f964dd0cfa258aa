//! Casimir pressure between two layered plates from their reflection
//! coefficients, evaluated on the imaginary frequency axis.
//!
//! The pressure at separation `a` and temperature `T` is
//!
//! ```text
//! F(a) = -(k_B T / π) Σ'_n ∫₀^∞ dq · q · k₀ · Σ_pol g_pol ,
//! g = R₁R₂ e^{-2 a k₀} / (1 - R₁R₂ e^{-2 a k₀}) ,
//! ```
//!
//! with k₀ = √(ζ_n²/(ħc)² + q²) and the prime giving the n = 0 term half
//! weight.  Substituting x = 2 a k₀ turns each Matsubara term into
//! (1/8a³) ∫_{x_min}^∞ x² g dx with x_min = 2aζ_n/ħc, which decays as e^{-x}
//! and is integrated adaptively on panels tied to that decay.
//!
//! Negative pressure means attraction; results are reported in Pa.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::constants::{EV_PER_NM3_TO_PA, HBAR_C, K_B};
use crate::error::{Error, Result};
use crate::materials::{self, DrudeParams, MaterialModel, SurfaceScattering};
use crate::quadrature::{self, Quad};
use crate::reflection_local::{LayerStack, Polarization};
use crate::reflection_nonlocal;

/// Which description of the plate's optical response to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseMode {
    /// Drude/constant permittivities with Fresnel multilayer reflection.
    Local,
    /// Spatially dispersive metal via even/odd surface impedances; the
    /// substrate (if any) stays local.
    Nonlocal,
    /// Perfect mirror, |R| = 1 in both polarizations.  Exists so the
    /// analytic -π²ħc/(240a⁴) limit can be checked end to end.
    Ideal,
}

/// One plate of the two-plate system.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateConfig {
    pub stack: LayerStack,
    pub response: ResponseMode,
}

/// Relative accuracy targets for the two nested summation levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Governs where the Matsubara sum stops.
    pub matsubara_rel: f64,
    /// Relative target for each x-integration.
    pub quad_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { matsubara_rel: 1e-9, quad_rel: 1e-9 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("matsubara_rel", self.matsubara_rel), ("quad_rel", self.quad_rel)] {
            if !(value > 0.0 && value <= 1e-2) {
                return Err(Error::Config(format!(
                    "{name} must lie in (0, 1e-2], got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// A fully specified pressure computation.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceJob {
    pub plate1: PlateConfig,
    pub plate2: PlateConfig,
    /// Separation in nm.
    pub separation: f64,
    /// Kelvin.
    pub temperature: f64,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PolarizationSplit {
    pub s: f64,
    pub p: f64,
}

impl PolarizationSplit {
    pub fn total(&self) -> f64 {
        self.s + self.p
    }
}

/// One Matsubara term's contribution to the pressure, in Pa, with the n = 0
/// half weight already applied.  Summing every entry recovers the total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermContribution {
    pub n: u64,
    /// eV.
    pub zeta: f64,
    pub pressure: PolarizationSplit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForceResult {
    /// Pa; negative = attractive.
    pub pressure: f64,
    pub per_polarization: PolarizationSplit,
    /// Matsubara terms evaluated, counting n = 0.
    pub n_terms_used: usize,
    pub per_term_contributions: Vec<TermContribution>,
    /// Accumulated quadrature error estimate, Pa.  Does not include the
    /// Matsubara truncation allowance, which is bounded separately by
    /// `matsubara_rel`.
    pub quad_error_estimate: f64,
}

/// Both descriptions of the same geometry plus their relative difference.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceComparison {
    pub local: ForceResult,
    pub nonlocal: ForceResult,
    /// 100·|F_loc - F_nl| / |F_loc|.
    pub delta_percent: f64,
}

/// ζ_n = 2π k_B T n, in eV.
pub fn matsubara_frequency(n: u64, temperature: f64) -> f64 {
    2.0 * PI * K_B * temperature * n as f64
}

/// Vacuum normal wavevector at imaginary frequency: √(ζ²/(ħc)² + q²), nm⁻¹.
pub fn k0(zeta: f64, q: f64) -> f64 {
    (zeta * zeta / (HBAR_C * HBAR_C) + q * q).sqrt()
}

/// Closed-form perfect-mirror zero-temperature pressure, -π²ħc/(240 a⁴), Pa.
pub fn ideal_pressure(separation: f64) -> f64 {
    -PI * PI * HBAR_C / (240.0 * separation.powi(4)) * EV_PER_NM3_TO_PA
}

// Fixed relative tolerance for the u-integrals inside half-space impedances.
// Decoupled from job tolerances: those govern sums over terms and q, while
// this sits two levels deeper and must stay below both.
const HALF_SPACE_IMPEDANCE_TOL: f64 = 1e-9;

// The n = 0 reflection is extrapolated from evaluations at 1×, 2×, 4× a
// small dimensionless frequency Ω₁; the weights kill the linear and
// quadratic pieces of R(Ω).  The expansion is only polynomial while
// Ω ≪ Q = ħcq/ω_p, so Ω₁ shrinks with q once Q drops below 1e-2 — with a
// fixed Ω₁ the extrapolated |R_p| overshoots 1 near the q → 0 edge of the
// static integration.
const OMEGA_STATIC: f64 = 1e-6;

fn static_base_frequency(omega_p: f64, q: f64) -> f64 {
    let q_dimless = q * HBAR_C / omega_p;
    if q_dimless > 0.0 {
        OMEGA_STATIC.min(1e-4 * q_dimless) * omega_p
    } else {
        OMEGA_STATIC * omega_p
    }
}

// Hard cap on the Matsubara sum; reached only by broken configurations.
// T = 1 K at a = 100 nm, the slowest intended case, needs ~2e4 terms.
const MAX_MATSUBARA_TERMS: u64 = 50_000;

// x-integration panel boundaries, as offsets from x_min = 2aζ/ħc.  The
// integrand decays as e^{-x}, so [x_min, x_min + 70] carries everything
// down to ~4e-31 of the peak; panel density follows the decay.
const PANEL_OFFSETS: [f64; 7] = [0.0, 1.0, 3.0, 8.0, 20.0, 40.0, 70.0];

impl PlateConfig {
    pub fn local(stack: LayerStack) -> Self {
        Self { stack, response: ResponseMode::Local }
    }

    pub fn nonlocal(stack: LayerStack) -> Self {
        Self { stack, response: ResponseMode::Nonlocal }
    }

    pub fn ideal() -> Self {
        Self {
            stack: LayerStack::half_space(MaterialModel::Vacuum),
            response: ResponseMode::Ideal,
        }
    }

    /// The metal the nonlocal description applies to: the single film, or
    /// the substrate itself when there are no layers.
    fn nonlocal_metal(&self) -> Result<(&DrudeParams, &SurfaceScattering, Option<f64>)> {
        match self.stack.layers.len() {
            0 => match &self.stack.substrate {
                MaterialModel::Drude(params, scattering) => Ok((params, scattering, None)),
                other => Err(Error::Config(format!(
                    "nonlocal response needs a Drude metal at the surface, got {other:?}"
                ))),
            },
            1 => {
                let layer = &self.stack.layers[0];
                match &layer.material {
                    MaterialModel::Drude(params, scattering) => {
                        Ok((params, scattering, Some(layer.thickness)))
                    }
                    other => Err(Error::Config(format!(
                        "nonlocal response needs a Drude film, got {other:?}"
                    ))),
                }
            }
            n => Err(Error::Config(format!(
                "nonlocal response supports a single film on a local substrate, got {n} layers"
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.stack.validate()?;
        if self.response == ResponseMode::Nonlocal {
            let (params, _, _) = self.nonlocal_metal()?;
            if !(params.v_f > 0.0) {
                return Err(Error::Config(format!(
                    "nonlocal response needs v_f > 0, got {}",
                    params.v_f
                )));
            }
        }
        Ok(())
    }

    /// Reflection coefficient of this plate at `zeta > 0`.
    pub fn reflection(&self, pol: Polarization, zeta: f64, q: f64) -> Result<f64> {
        match self.response {
            ResponseMode::Ideal => Ok(match pol {
                Polarization::S => -1.0,
                Polarization::P => 1.0,
            }),
            ResponseMode::Local => self.stack.reflection(pol, zeta, q),
            ResponseMode::Nonlocal => {
                let (params, scattering, thickness) = self.nonlocal_metal()?;
                let omega_tau = materials::effective_relaxation(params, scattering, thickness)?;
                let metal = DrudeParams { omega_tau, ..*params };
                match thickness {
                    Some(h) => {
                        let eps_sub = self.stack.substrate.epsilon(zeta, None)?;
                        reflection_nonlocal::film_reflection(pol, zeta, q, &metal, h, eps_sub)
                    }
                    None => reflection_nonlocal::half_space_reflection(
                        pol,
                        zeta,
                        q,
                        &metal,
                        HALF_SPACE_IMPEDANCE_TOL,
                    ),
                }
            }
        }
    }

    /// ζ → 0 limit of the reflection, which is what the n = 0 Matsubara
    /// term samples.  Local stacks get the analytic limit; the nonlocal
    /// response is extrapolated from three small, finite frequencies.
    pub fn static_reflection(&self, pol: Polarization, q: f64) -> Result<f64> {
        match self.response {
            ResponseMode::Ideal => Ok(match pol {
                Polarization::S => -1.0,
                Polarization::P => 1.0,
            }),
            ResponseMode::Local => Ok(local_static_reflection(&self.stack, pol, q)),
            ResponseMode::Nonlocal => {
                let (params, _, _) = self.nonlocal_metal()?;
                let zeta1 = static_base_frequency(params.omega_p, q);
                let f1 = self.reflection(pol, zeta1, q)?;
                let f2 = self.reflection(pol, 2.0 * zeta1, q)?;
                let f4 = self.reflection(pol, 4.0 * zeta1, q)?;
                Ok((8.0 * f1 - 6.0 * f2 + f4) / 3.0)
            }
        }
    }
}

/// Static (ζ = 0) reflection of a local stack.  Permittivities enter only
/// through how they diverge: ε ~ c/ζ^d with d = 0 (dielectric), 1
/// (dissipative Drude) or 2 (lossless plasma).  An interface coefficient
/// r_p = (ε_l k_m - ε_m k_l)/(ε_l k_m + ε_m k_l) then tends to ±1 when the
/// orders differ and to a finite contrast when they match; every r_s tends
/// to (k_m - k_l)/(k_m + k_l) with k = √(q² + shift), the shift being
/// nonzero only for the plasma model.
fn local_static_reflection(stack: &LayerStack, pol: Polarization, q: f64) -> f64 {
    let static_k = |r: &materials::StaticResponse| (q * q + r.k2_shift).sqrt();
    let interface = |upper: &materials::StaticResponse, lower: &materials::StaticResponse| -> f64 {
        let k_m = static_k(upper);
        let k_l = static_k(lower);
        match pol {
            Polarization::S => (k_m - k_l) / (k_m + k_l),
            Polarization::P => match lower.order.cmp(&upper.order) {
                std::cmp::Ordering::Greater => 1.0,
                std::cmp::Ordering::Less => -1.0,
                std::cmp::Ordering::Equal => {
                    (lower.coeff * k_m - upper.coeff * k_l)
                        / (lower.coeff * k_m + upper.coeff * k_l)
                }
            },
        }
    };

    // same bottom-up fold as the finite-frequency stack
    let mut top = materials::static_response(&stack.substrate);
    let mut transported = 0.0;
    for layer in stack.layers.iter().rev() {
        let response = materials::static_response(&layer.material);
        let r_int = interface(&response, &top);
        let r_bottom = (r_int + transported) / (1.0 + r_int * transported);
        let exponent = 2.0 * static_k(&response) * layer.thickness;
        transported = if exponent > 700.0 { 0.0 } else { r_bottom * (-exponent).exp() };
        top = response;
    }
    let vacuum = materials::static_response(&MaterialModel::Vacuum);
    let r_top = interface(&vacuum, &top);
    (r_top + transported) / (1.0 + r_top * transported)
}

impl ForceJob {
    pub fn validate(&self) -> Result<()> {
        if !(self.separation > 0.0 && self.separation.is_finite()) {
            return Err(Error::Config(format!(
                "separation must be > 0 and finite, got {}",
                self.separation
            )));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(Error::Config(format!(
                "temperature must be > 0 and finite, got {}",
                self.temperature
            )));
        }
        self.tolerances.validate()?;
        self.plate1.validate()?;
        self.plate2.validate()
    }
}

/// ∫ x² g dx for one polarization of one Matsubara term.  `zeta = 0` selects
/// the static reflection limits.
fn polarized_term(
    plate1: &PlateConfig,
    plate2: &PlateConfig,
    a: f64,
    zeta: f64,
    pol: Polarization,
    quad_rel: f64,
) -> Result<Quad> {
    let xmin = 2.0 * a * zeta / HBAR_C;
    let edges: Vec<f64> = PANEL_OFFSETS.iter().map(|o| xmin + o).collect();
    let zeta_over_hbarc2 = (zeta / HBAR_C) * (zeta / HBAR_C);

    // The quadrature driver takes f64 -> f64 closures; the first failure is
    // parked here and the integrand turns into NaN, which the driver treats
    // as fatal.
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |x: f64| -> f64 {
        if failure.borrow().is_some() {
            // a poisoned term never recovers; skip the remaining nodes
            return f64::NAN;
        }
        let point = || -> Result<f64> {
            let k0 = x / (2.0 * a);
            let q = (k0 * k0 - zeta_over_hbarc2).max(0.0).sqrt();
            let (r1, r2) = if zeta > 0.0 {
                (plate1.reflection(pol, zeta, q)?, plate2.reflection(pol, zeta, q)?)
            } else {
                (plate1.static_reflection(pol, q)?, plate2.static_reflection(pol, q)?)
            };
            let rr = r1 * r2 * (-x).exp();
            if !(rr.abs() < 1.0) {
                return Err(Error::Numerical(format!(
                    "|R1 R2 e^(-2 a k0)| = {} >= 1 at zeta={zeta}, q={q}: \
                     impossible for passive media",
                    rr.abs()
                )));
            }
            Ok(x * x * rr / (1.0 - rr))
        };
        match point() {
            Ok(v) => v,
            Err(e) => {
                let mut slot = failure.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                f64::NAN
            }
        }
    };

    // Terms that matter sum to O(1) in these units, so absolute errors
    // below quad_rel·1e-4 never surface in the pressure; the floor lets
    // near-zero channels (e.g. the extrapolated static s term, pure
    // cancellation residue ~1e-22) finish instantly at their noise level.
    let quad =
        quadrature::integrate_panels_with_floor(&integrand, &edges, quad_rel, quad_rel * 1e-4);
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    quad
}

/// Pressure via the Matsubara sum.  Terms accumulate in order of increasing
/// n (deterministically); the sum stops once five consecutive terms each
/// fall below `matsubara_rel / 10` of the running total.
pub fn force_pp(job: &ForceJob) -> Result<ForceResult> {
    job.validate()?;
    let a = job.separation;
    let quad_rel = job.tolerances.quad_rel;
    let prefactor = -(K_B * job.temperature / PI) / (8.0 * a * a * a) * EV_PER_NM3_TO_PA;
    let threshold = job.tolerances.matsubara_rel / 10.0;

    let s0 = polarized_term(&job.plate1, &job.plate2, a, 0.0, Polarization::S, quad_rel)?;
    let p0 = polarized_term(&job.plate1, &job.plate2, a, 0.0, Polarization::P, quad_rel)?;

    let mut raw_sum = 0.5 * (s0.value + p0.value);
    let mut raw_s = 0.5 * s0.value;
    let mut raw_p = 0.5 * p0.value;
    let mut quad_err = 0.5 * (s0.error + p0.error);
    let mut terms = vec![TermContribution {
        n: 0,
        zeta: 0.0,
        pressure: PolarizationSplit {
            s: prefactor * 0.5 * s0.value,
            p: prefactor * 0.5 * p0.value,
        },
    }];

    let mut consecutive_small = 0;
    let mut n = 0u64;
    while consecutive_small < 5 {
        n += 1;
        if n > MAX_MATSUBARA_TERMS {
            return Err(Error::Numerical(format!(
                "Matsubara sum not converged after {MAX_MATSUBARA_TERMS} terms \
                 (a = {a} nm, T = {} K)",
                job.temperature
            )));
        }
        let zeta = matsubara_frequency(n, job.temperature);
        let s = polarized_term(&job.plate1, &job.plate2, a, zeta, Polarization::S, quad_rel)?;
        let p = polarized_term(&job.plate1, &job.plate2, a, zeta, Polarization::P, quad_rel)?;
        let term = s.value + p.value;
        raw_sum += term;
        raw_s += s.value;
        raw_p += p.value;
        quad_err += s.error + p.error;
        terms.push(TermContribution {
            n,
            zeta,
            pressure: PolarizationSplit { s: prefactor * s.value, p: prefactor * p.value },
        });
        if term.abs() <= threshold * raw_sum.abs() {
            consecutive_small += 1;
        } else {
            consecutive_small = 0;
        }
    }

    let per_polarization = PolarizationSplit { s: prefactor * raw_s, p: prefactor * raw_p };
    Ok(ForceResult {
        pressure: per_polarization.total(),
        per_polarization,
        n_terms_used: terms.len(),
        per_term_contributions: terms,
        quad_error_estimate: prefactor.abs() * quad_err,
    })
}

/// Pressure in the T → 0 limit: the Matsubara sum becomes
/// (ħ/2πk_BT)∫dζ, so F = -(1/2π²)(1/8a³) ∫₀^∞ dζ ∫ x² g dx.  The job's
/// temperature is ignored; ζ never hits 0, so no static limits enter.
pub fn force_zero_temperature(job: &ForceJob) -> Result<ForceResult> {
    job.validate()?;
    let a = job.separation;
    let quad_rel = job.tolerances.quad_rel;
    let prefactor = -EV_PER_NM3_TO_PA / (2.0 * PI * PI * 8.0 * a * a * a);
    // characteristic ζ: x_min reaches ~1 at ζ = ħc/2a
    let scale = HBAR_C / (2.0 * a);

    let channel = |pol: Polarization| -> Result<Quad> {
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let integrand = |zeta: f64| -> f64 {
            match polarized_term(&job.plate1, &job.plate2, a, zeta, pol, quad_rel) {
                Ok(quad) => quad.value,
                Err(e) => {
                    let mut slot = failure.borrow_mut();
                    if slot.is_none() {
                        *slot = Some(e);
                    }
                    f64::NAN
                }
            }
        };
        let quad = quadrature::semi_infinite(&integrand, scale, quad_rel);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        quad
    };

    let s = channel(Polarization::S)?;
    let p = channel(Polarization::P)?;
    let per_polarization = PolarizationSplit { s: prefactor * s.value, p: prefactor * p.value };
    Ok(ForceResult {
        pressure: per_polarization.total(),
        per_polarization,
        n_terms_used: 0,
        per_term_contributions: Vec::new(),
        quad_error_estimate: prefactor.abs() * (s.error + p.error),
    })
}

/// Run both jobs and report Δ% = 100·|F_loc - F_nl|/|F_loc|.  The jobs must
/// describe the same geometry; only the response modes should differ.
pub fn percent_difference(job_local: &ForceJob, job_nonlocal: &ForceJob) -> Result<ForceComparison> {
    if job_local.separation != job_nonlocal.separation
        || job_local.temperature != job_nonlocal.temperature
    {
        return Err(Error::Config(
            "percent difference compares response models of one geometry; \
             separation and temperature must match"
                .into(),
        ));
    }
    let local = force_pp(job_local)?;
    let nonlocal = force_pp(job_nonlocal)?;
    if local.pressure == 0.0 {
        return Err(Error::Domain(
            "percent difference undefined: local pressure is zero".into(),
        ));
    }
    let delta_percent = 100.0 * ((local.pressure - nonlocal.pressure) / local.pressure).abs();
    Ok(ForceComparison { local, nonlocal, delta_percent })
}
