//! Dielectric response at imaginary frequencies `omega = i*zeta`.
//!
//! Local response is the Drude model; nonlocal response are the
//! longitudinal/transverse Boltzmann (semiclassical) dielectric functions,
//! which depend on frequency *and* wave vector through the single
//! combination `v = v_F*k/(zeta + omega_tau)`. At imaginary frequency all
//! of these are real and >= 1, which is what makes the whole pipeline
//! complex-free.

use crate::constants::HBAR_C;
use crate::error::{Error, Result};

/// Free-electron parameters. `v_f` is the Fermi velocity as a fraction of
/// the speed of light; it only matters on the nonlocal path but is carried
/// here so a material means the same thing in both descriptions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParams {
    /// Plasma frequency (eV).
    pub omega_p: f64,
    /// Bulk relaxation frequency (eV).
    pub omega_tau: f64,
    /// Fermi velocity / c.
    pub v_f: f64,
}

impl DrudeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_p > 0.0) {
            return Err(Error::Domain(format!("omega_p must be > 0, got {}", self.omega_p)));
        }
        if !(self.omega_tau >= 0.0) {
            return Err(Error::Domain(format!("omega_tau must be >= 0, got {}", self.omega_tau)));
        }
        if !(0.0..1.0).contains(&self.v_f) {
            return Err(Error::Domain(format!("v_f must be in [0, 1), got {}", self.v_f)));
        }
        Ok(())
    }

    /// omega_tau / omega_p.
    pub fn gamma(&self) -> f64 {
        self.omega_tau / self.omega_p
    }
}

/// Thickness-dependent surface contribution to the relaxation frequency
/// (Fuchs–Sondheimer). Off by default: the headline numbers use the bulk
/// relaxation only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceScattering {
    /// Probability of specular reflection at the film boundary, in [0, 1].
    pub specularity: f64,
    pub enabled: bool,
}

impl Default for SurfaceScattering {
    fn default() -> Self {
        Self { specularity: 1.0, enabled: false }
    }
}

impl SurfaceScattering {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.specularity) {
            return Err(Error::Domain(format!(
                "specularity must be in [0, 1], got {}",
                self.specularity
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialModel {
    /// Exactly epsilon = 1.
    Vacuum,
    /// Dispersionless dielectric, epsilon >= 1 (real at imaginary frequency).
    ConstantDielectric(f64),
    Drude(DrudeParams, SurfaceScattering),
}

impl MaterialModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            MaterialModel::Vacuum => Ok(()),
            MaterialModel::ConstantDielectric(eps) => {
                if !(*eps >= 1.0) {
                    Err(Error::Domain(format!("constant dielectric must have eps >= 1, got {eps}")))
                } else {
                    Ok(())
                }
            }
            MaterialModel::Drude(p, s) => {
                p.validate()?;
                s.validate()
            }
        }
    }

    /// Local dielectric function at zeta > 0. `thickness` feeds the surface
    /// scattering correction when that is enabled; pass None for half-spaces.
    pub fn epsilon(&self, zeta: f64, thickness: Option<f64>) -> Result<f64> {
        match self {
            MaterialModel::Vacuum => Ok(1.0),
            MaterialModel::ConstantDielectric(eps) => Ok(*eps),
            MaterialModel::Drude(p, s) => drude_epsilon(p, s, zeta, thickness),
        }
    }
}

/// Drude dielectric function 1 + omega_p^2 / (zeta*(zeta + omega_tau_eff))
/// at imaginary frequency. Strictly decreasing in zeta, always > 1.
pub fn drude_epsilon(
    params: &DrudeParams,
    scattering: &SurfaceScattering,
    zeta: f64,
    thickness: Option<f64>,
) -> Result<f64> {
    if !(zeta > 0.0) {
        return Err(Error::Domain(format!(
            "drude_epsilon needs zeta > 0 (got {zeta}); the static limit belongs to the caller"
        )));
    }
    let tau = effective_relaxation(params, scattering, thickness)?;
    Ok(1.0 + params.omega_p * params.omega_p / (zeta * (zeta + tau)))
}

/// Bulk relaxation plus the surface term when enabled and a thickness is known.
pub fn effective_relaxation(
    params: &DrudeParams,
    scattering: &SurfaceScattering,
    thickness: Option<f64>,
) -> Result<f64> {
    let mut tau = params.omega_tau;
    if scattering.enabled {
        if let Some(h) = thickness {
            tau += surface_relaxation(params.v_f, scattering.specularity, h)?;
        }
    }
    Ok(tau)
}

/// (3/8)(1-p) * v_F * hbar*c / h, in eV. Only diffusely reflected electrons
/// contribute, so it vanishes at p = 1 and scales as 1/h.
pub fn surface_relaxation(v_f: f64, specularity: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("surface_relaxation needs h > 0, got {h}")));
    }
    if !(0.0..=1.0).contains(&specularity) {
        return Err(Error::Domain(format!("specularity must be in [0, 1], got {specularity}")));
    }
    Ok(0.375 * (1.0 - specularity) * v_f * HBAR_C / h)
}

/// Argument of the Boltzmann response functions for film mode n:
/// v = v_F * sqrt((n*pi/H)^2 + Q^2) / (Omega + gamma). All dimensionless.
pub fn boltzmann_v(omega: f64, gamma: f64, n: u32, h: f64, q: f64, v_f: f64) -> f64 {
    let u = n as f64 * std::f64::consts::PI / h;
    v_f * (u * u + q * q).sqrt() / (omega + gamma)
}

/// Same argument with the wave vector given directly (used for the
/// continuum/half-space limit where n*pi/H becomes a continuous variable).
pub fn boltzmann_v_at(k_tilde: f64, omega: f64, gamma: f64, v_f: f64) -> f64 {
    v_f * k_tilde / (omega + gamma)
}

// Both response functions below hit 0/0 cancellation as v -> 0; switch to
// their Taylor series early enough that the closed forms still carry ~9
// correct digits at the seam (the branches must agree to 1e-12 there,
// which a switch at the often-quoted 1e-3 does not achieve).
const SERIES_SWITCH_V: f64 = 0.1;

/// (v - arctan v)/v^3, the building block of the longitudinal response.
/// g(0) = 1/3.
pub fn arctan_defect(v: f64) -> f64 {
    if v < SERIES_SWITCH_V {
        // 1/3 - v^2/5 + v^4/7 - ...
        let v2 = v * v;
        let mut term = 1.0 / 3.0;
        let mut sum = term;
        let mut m = 1u32;
        loop {
            term = -term * v2 * (2 * m + 1) as f64 / (2 * m + 3) as f64;
            sum += term;
            m += 1;
            if term.abs() < 1e-17 * sum.abs() {
                return sum;
            }
        }
    }
    (v - v.atan()) / (v * v * v)
}

/// Transverse kernel f_t(v) = (3/(2v^3)) * (-v + (1+v^2) arctan v).
/// Decreasing from f_t(0) = 1 toward the 3*pi/(4v) asymptote.
pub fn f_transverse(v: f64) -> f64 {
    if v < SERIES_SWITCH_V {
        // 1 - v^2/5 + ... with coefficients 3*(-1)^(k+1)/(4k^2-1)
        let v2 = v * v;
        let mut pow = 1.0;
        let mut sum = 0.0;
        let mut k = 1u32;
        loop {
            let term = 3.0 * pow / (4 * k * k - 1) as f64;
            sum += if k % 2 == 1 { term } else { -term };
            if term < 1e-17 * sum.abs() {
                return sum;
            }
            pow *= v2;
            k += 1;
        }
    }
    1.5 * (-v + (1.0 + v * v) * v.atan()) / (v * v * v)
}

/// Longitudinal kernel: f_l = 3g / (1 + (gamma/Omega) v^2 g) with
/// g = arctan_defect(v). f_l(0) = 1 recovers the Drude limit.
pub fn f_longitudinal(v: f64, gamma_over_omega: f64) -> f64 {
    let g = arctan_defect(v);
    3.0 * g / (1.0 + gamma_over_omega * v * v * g)
}

/// Drude dielectric function in dimensionless variables:
/// 1 + 1/(Omega*(Omega + gamma)).
pub fn drude_epsilon_dimensionless(omega: f64, gamma: f64) -> f64 {
    1.0 + 1.0 / (omega * (omega + gamma))
}

/// Longitudinal Boltzmann dielectric function. At fixed k and Omega -> 0 it
/// tends to the Thomas–Fermi form 1 + 3/(v_F^2 k^2); that static screening
/// is the whole reason the p-polarization nonlocal effect survives at zero
/// frequency.
pub fn epsilon_longitudinal(omega: f64, gamma: f64, v: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("epsilon_longitudinal needs Omega > 0, got {omega}")));
    }
    Ok(1.0 + f_longitudinal(v, gamma / omega) / (omega * (omega + gamma)))
}

/// Transverse Boltzmann dielectric function; equals the Drude value at
/// v = 0 and is suppressed below it for v > 0.
pub fn epsilon_transverse(omega: f64, gamma: f64, v: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("epsilon_transverse needs Omega > 0, got {omega}")));
    }
    Ok(1.0 + f_transverse(v) / (omega * (omega + gamma)))
}

/// One (zeta, q, h) evaluation point mapped to the dimensionless variables
/// the film formulas are written in. All four fields are ratios against the
/// film material's plasma frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessPoint {
    /// zeta / omega_p.
    pub omega: f64,
    /// hbar*c*q / omega_p.
    pub q: f64,
    /// omega_tau / omega_p.
    pub gamma: f64,
    /// omega_p*h / (hbar*c).
    pub h: f64,
}

pub fn to_dimensionless(zeta: f64, q: f64, h: f64, params: &DrudeParams) -> DimensionlessPoint {
    DimensionlessPoint {
        omega: zeta / params.omega_p,
        q: HBAR_C * q / params.omega_p,
        gamma: params.omega_tau / params.omega_p,
        h: params.omega_p * h / HBAR_C,
    }
}

/// Inverse of [`to_dimensionless`]; returns (zeta, q, h).
pub fn from_dimensionless(point: &DimensionlessPoint, params: &DrudeParams) -> (f64, f64, f64) {
    (
        point.omega * params.omega_p,
        point.q * params.omega_p / HBAR_C,
        point.h * HBAR_C / params.omega_p,
    )
}

/// How epsilon(i*zeta) diverges (or not) as zeta -> 0. The zero-frequency
/// Matsubara term needs only this classification plus the leading
/// coefficient, never a full epsilon evaluation at zeta = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticResponse {
    /// Power of 1/zeta in epsilon as zeta -> 0: 0 for dielectrics/vacuum,
    /// 1 for dissipative Drude, 2 for the lossless plasma model.
    pub order: u8,
    /// lim zeta^order * epsilon: eps(0), omega_p^2/omega_tau, or omega_p^2.
    pub coeff: f64,
    /// Static shift of k^2 in 1/nm^2; nonzero only for the lossless plasma
    /// model, where eps*zeta^2/(hbar c)^2 -> (omega_p/hbar c)^2.
    pub k2_shift: f64,
}

pub fn static_response(material: &MaterialModel) -> StaticResponse {
    match material {
        MaterialModel::Vacuum => StaticResponse { order: 0, coeff: 1.0, k2_shift: 0.0 },
        MaterialModel::ConstantDielectric(eps) => {
            StaticResponse { order: 0, coeff: *eps, k2_shift: 0.0 }
        }
        MaterialModel::Drude(p, _) => {
            if p.omega_tau > 0.0 {
                StaticResponse { order: 1, coeff: p.omega_p * p.omega_p / p.omega_tau, k2_shift: 0.0 }
            } else {
                let wp_over_hbarc = p.omega_p / HBAR_C;
                StaticResponse {
                    order: 2,
                    coeff: p.omega_p * p.omega_p,
                    k2_shift: wp_over_hbarc * wp_over_hbarc,
                }
            }
        }
    }
}
