//! Reflection of films and half-spaces with spatial dispersion, assuming
//! specular electron scattering at the boundaries.
//!
//! A film of thickness h supports standing bulk modes with transverse
//! wavevectors u_n = nπ/h; the surface impedance of each field-parity class
//! is a sum over those modes weighted by the longitudinal and transverse
//! Boltzmann dielectric functions.  Everything here works in the
//! dimensionless variables of [`crate::materials::DimensionlessPoint`]
//! (frequencies over ω_p, wavevectors times ħc/ω_p) unless a function takes
//! an explicit `zeta`/`q` pair in eV and nm⁻¹.
//!
//! The raw mode sums converge as slowly as 1/n, so they are never summed
//! directly: the local-response part is split off and summed in closed form
//! (geometric/tanh identities), the Thomas–Fermi screening tail of the
//! longitudinal part is captured by a one-pole Padé reference with its own
//! closed form, and only the fast-decaying remainder is accumulated term by
//! term.

use crate::error::{Error, Result};
use crate::materials::{
    boltzmann_v_at, drude_epsilon_dimensionless, f_longitudinal, f_transverse, to_dimensionless,
    DrudeParams,
};
use crate::quadrature;
use crate::reflection_local::Polarization;

/// Parity of the field profile across the film midplane.  Even profiles are
/// built from modes with odd n (their closed-form sums produce tanh), odd
/// profiles from even n including n = 0 (coth).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    fn first_mode(self) -> u64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => 0,
        }
    }
}

/// Transverse wavevector of film mode n: u_n = nπ/h (dimensionless).
pub fn mode_wavevector(n: u64, h: f64) -> f64 {
    n as f64 * std::f64::consts::PI / h
}

// Σ_n w_n/(u_n² + w²) over the parity's mode set, both signs of n counted
// (weight 2 for n > 0, 1 for n = 0):
//   even n incl 0:  (h/2w) coth(hw/2)
//   odd n:          (h/2w) tanh(hw/2)
fn lorentzian_mode_sum(parity: Parity, w: f64, h: f64) -> f64 {
    let x = 0.5 * h * w;
    match parity {
        Parity::Even => h / (2.0 * w) * x.tanh(),
        Parity::Odd => h / (2.0 * w) / x.tanh(),
    }
}

// q² · lorentzian_mode_sum(parity, q, h), finite as q -> 0 where the odd
// family's n = 0 term alone survives (value 1).
fn q2_lorentzian_mode_sum(parity: Parity, q: f64, h: f64) -> f64 {
    let x = 0.5 * h * q;
    match parity {
        Parity::Even => x * x.tanh(),
        Parity::Odd => {
            if x < 1e-4 {
                1.0 + x * x / 3.0
            } else {
                x / x.tanh()
            }
        }
    }
}

fn validate_point(omega: f64, q: f64, gamma: f64, v_f: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!(
            "impedances need omega > 0, got {omega}; the static limit belongs to the caller"
        )));
    }
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::Domain(format!("q must be >= 0, got {q}")));
    }
    if !(gamma >= 0.0) {
        return Err(Error::Domain(format!("gamma must be >= 0, got {gamma}")));
    }
    if !(0.0..1.0).contains(&v_f) {
        return Err(Error::Domain(format!("v_f must be in [0, 1), got {v_f}")));
    }
    Ok(())
}

// One-pole Padé reference for the longitudinal response,
// 1/ε_ref = (k² + b²)/(k² + c²): exact Drude value at k = 0, exact
// Thomas–Fermi screening κ² = 3/v_F² at large k.  The k-sums of the
// reference have closed forms via partial fractions.
struct LongitudinalReference {
    kappa2: f64,
    b2: f64,
    c2: f64,
}

impl LongitudinalReference {
    fn new(eps_drude: f64, v_f: f64) -> Self {
        let kappa2 = 3.0 / (v_f * v_f);
        let b2 = kappa2 / (eps_drude - 1.0);
        Self {
            kappa2,
            b2,
            c2: b2 + kappa2,
        }
    }

    fn inverse_eps(&self, k2: f64) -> f64 {
        (k2 + self.b2) / (k2 + self.c2)
    }
}

// Convergence policy for the accelerated mode sums.  The remainder terms
// decay like n⁻⁴ (transverse) and n⁻⁵ (longitudinal), so the tail beyond
// term t_n is bounded by |t_n|·n/2; both the term and the tail bound must
// be negligible for several consecutive terms before stopping, because a
// single remainder term can pass through zero.
const MAX_TERMS: usize = 1_000_000;
const TERM_REL: f64 = 1e-12;
const TAIL_REL: f64 = 1e-10;
const CONSECUTIVE: usize = 3;

fn accumulate<F: Fn(u64, f64) -> f64>(
    parity: Parity,
    h: f64,
    reference: f64,
    term: F,
) -> Result<f64> {
    let mut accum = reference;
    let mut streak = 0;
    let mut n = parity.first_mode();
    for count in 1..=MAX_TERMS {
        let weight = if n == 0 { 1.0 } else { 2.0 };
        let u = mode_wavevector(n, h);
        let t = weight * term(n, u);
        accum += t;
        let tail_bound = t.abs() * (n.max(1) as f64) / 2.0;
        if t.abs() <= TERM_REL * accum.abs() && tail_bound <= TAIL_REL * accum.abs() {
            streak += 1;
            if streak >= CONSECUTIVE {
                return Ok(accum);
            }
        } else {
            streak = 0;
        }
        if count == MAX_TERMS {
            return Err(Error::Truncation {
                terms: count,
                partial: accum,
                tail_bound,
            });
        }
        n += 2;
    }
    unreachable!()
}

/// s-polarization surface impedance of a film, for one field parity.
///
/// All arguments dimensionless; `v_f = 0` short-circuits to the closed-form
/// local (Drude) value, which the accelerated sum equals identically.
pub fn film_impedance_s(
    parity: Parity,
    omega: f64,
    q: f64,
    gamma: f64,
    h: f64,
    v_f: f64,
) -> Result<f64> {
    validate_point(omega, q, gamma, v_f)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("film thickness must be > 0, got {h}")));
    }
    let eps_d = drude_epsilon_dimensionless(omega, gamma);
    let m2 = omega * omega * eps_d;
    let kd = (m2 + q * q).sqrt();
    let reference = lorentzian_mode_sum(parity, kd, h);
    if v_f == 0.0 {
        return Ok(2.0 * omega / h * reference);
    }
    let scale = omega * (omega + gamma);
    let sum = accumulate(parity, h, reference, |_, u| {
        let k2 = u * u + q * q;
        let v = boltzmann_v_at(k2.sqrt(), omega, gamma, v_f);
        let eps_t = 1.0 + f_transverse(v) / scale;
        1.0 / (omega * omega * eps_t + k2) - 1.0 / (k2 + m2)
    })?;
    Ok(2.0 * omega / h * sum)
}

/// p-polarization surface impedance of a film, for one field parity.
///
/// Contains both a transverse part (same structure as s) and the
/// longitudinal part responsible for Thomas–Fermi screening; the latter is
/// what keeps the nonlocal correction alive down to zero frequency.
pub fn film_impedance_p(
    parity: Parity,
    omega: f64,
    q: f64,
    gamma: f64,
    h: f64,
    v_f: f64,
) -> Result<f64> {
    validate_point(omega, q, gamma, v_f)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("film thickness must be > 0, got {h}")));
    }
    let eps_d = drude_epsilon_dimensionless(omega, gamma);
    let om2 = omega * omega;
    let m2 = om2 * eps_d;
    let kd2 = m2 + q * q;
    let kd = kd2.sqrt();
    if v_f == 0.0 {
        return Ok(2.0 * omega / h * (kd2 / m2) * lorentzian_mode_sum(parity, kd, h));
    }

    let lref = LongitudinalReference::new(eps_d, v_f);
    // u²/(k²(k² + m²)) summed via 1/(k²+m²) and q²/k² partial fractions
    let transverse_ref = (kd2 / m2) * lorentzian_mode_sum(parity, kd, h)
        - q2_lorentzian_mode_sum(parity, q, h) / m2;
    // q²(k² + b²)/(k²(k² + c²)) likewise; written so q = 0 costs nothing
    let longitudinal_ref = ((lref.b2 / lref.c2) * q2_lorentzian_mode_sum(parity, q, h)
        + (lref.kappa2 / lref.c2)
            * q
            * q
            * lorentzian_mode_sum(parity, (q * q + lref.c2).sqrt(), h))
        / om2;

    let scale = omega * (omega + gamma);
    let damping_ratio = gamma / omega;
    let sum = accumulate(
        parity,
        h,
        transverse_ref + longitudinal_ref,
        |n, u| {
            let k2 = u * u + q * q;
            if n == 0 {
                // u = 0 makes the transverse part vanish and q²/k² = 1
                // exactly; at q = 0 the remainder is identically zero
                // because the Padé reference matches ε_Drude at k = 0.
                if q == 0.0 {
                    return 0.0;
                }
                let v = boltzmann_v_at(q, omega, gamma, v_f);
                let eps_l = 1.0 + f_longitudinal(v, damping_ratio) / scale;
                return (1.0 / eps_l - lref.inverse_eps(k2)) / om2;
            }
            let v = boltzmann_v_at(k2.sqrt(), omega, gamma, v_f);
            let eps_t = 1.0 + f_transverse(v) / scale;
            let transverse =
                (u * u / k2) * (1.0 / (om2 * eps_t + k2) - 1.0 / (k2 + m2));
            if q == 0.0 {
                return transverse;
            }
            let eps_l = 1.0 + f_longitudinal(v, damping_ratio) / scale;
            let longitudinal = (q * q / k2) * (1.0 / eps_l - lref.inverse_eps(k2));
            transverse + longitudinal / om2
        },
    )?;
    Ok(2.0 * omega / h * sum)
}

// In the continuum (half-space) limit the mode sum (2/h)Σ becomes
// (2/π)∫du, and the reference sums become reference integrals through
// ∫₀^∞ du/(u² + w²) = π/(2w).

fn half_space_scale(kd: f64, omega: f64, gamma: f64, v_f: f64) -> f64 {
    // the remainder integrand turns over where v ~ 1, i.e. u ~ (Ω+γ)/v_F
    kd.max(1.0).max(0.5 * (omega + gamma) / v_f)
}

/// s-polarization surface impedance of a semi-infinite metal.
pub fn half_space_impedance_s(
    omega: f64,
    q: f64,
    gamma: f64,
    v_f: f64,
    rel_tol: f64,
) -> Result<f64> {
    validate_point(omega, q, gamma, v_f)?;
    let eps_d = drude_epsilon_dimensionless(omega, gamma);
    let m2 = omega * omega * eps_d;
    let kd = (m2 + q * q).sqrt();
    let local = omega / kd;
    if v_f == 0.0 {
        return Ok(local);
    }
    let scale = omega * (omega + gamma);
    // Z errors below rel_tol·|Z| are invisible downstream; expressed as a
    // budget on the remainder integral that keeps its refinement from
    // chasing cancellation noise when the nonlocal correction is tiny.
    let budget = rel_tol * local * std::f64::consts::PI / (2.0 * omega);
    let remainder = quadrature::semi_infinite_with_floor(
        &|u: f64| {
            let k2 = u * u + q * q;
            let v = boltzmann_v_at(k2.sqrt(), omega, gamma, v_f);
            let eps_t = 1.0 + f_transverse(v) / scale;
            1.0 / (omega * omega * eps_t + k2) - 1.0 / (k2 + m2)
        },
        half_space_scale(kd, omega, gamma, v_f),
        rel_tol,
        budget,
    )?;
    Ok(local + 2.0 * omega / std::f64::consts::PI * remainder.value)
}

/// p-polarization surface impedance of a semi-infinite metal.
pub fn half_space_impedance_p(
    omega: f64,
    q: f64,
    gamma: f64,
    v_f: f64,
    rel_tol: f64,
) -> Result<f64> {
    validate_point(omega, q, gamma, v_f)?;
    let eps_d = drude_epsilon_dimensionless(omega, gamma);
    let om2 = omega * omega;
    let m2 = om2 * eps_d;
    let kd2 = m2 + q * q;
    let kd = kd2.sqrt();
    if v_f == 0.0 {
        return Ok(kd / (omega * eps_d));
    }
    let lref = LongitudinalReference::new(eps_d, v_f);
    let half_pi = 0.5 * std::f64::consts::PI;
    let transverse_ref = (kd2 / (m2 * kd)) * half_pi - (q / m2) * half_pi;
    let longitudinal_ref = ((lref.b2 / lref.c2) * q * half_pi
        + (lref.kappa2 / lref.c2) * q * q * half_pi / (q * q + lref.c2).sqrt())
        / om2;

    let scale = omega * (omega + gamma);
    let damping_ratio = gamma / omega;
    // same reasoning as the s-branch: the references carry |Z|'s magnitude,
    // so errors below rel_tol·(refs) in the remainder are invisible
    let budget = rel_tol * (transverse_ref + longitudinal_ref).abs();
    let remainder = quadrature::semi_infinite_with_floor(
        &|u: f64| {
            let k2 = u * u + q * q;
            let v = boltzmann_v_at(k2.sqrt(), omega, gamma, v_f);
            let eps_t = 1.0 + f_transverse(v) / scale;
            let transverse = (u * u / k2) * (1.0 / (om2 * eps_t + k2) - 1.0 / (k2 + m2));
            if q == 0.0 {
                return transverse;
            }
            let eps_l = 1.0 + f_longitudinal(v, damping_ratio) / scale;
            let longitudinal = (q * q / k2) * (1.0 / eps_l - lref.inverse_eps(k2));
            transverse + longitudinal / om2
        },
        half_space_scale(kd, omega, gamma, v_f),
        rel_tol,
        budget,
    )?;
    Ok(2.0 * omega / std::f64::consts::PI
        * (transverse_ref + longitudinal_ref + remainder.value))
}

/// Surface impedance of vacuum at a dimensionless (Ω, Q) point.
pub fn vacuum_impedance(pol: Polarization, omega: f64, q: f64) -> f64 {
    let k0 = omega.hypot(q);
    match pol {
        Polarization::S => omega / k0,
        Polarization::P => k0 / omega,
    }
}

/// Surface impedance of a local half-space of permittivity `eps`, used for
/// the substrate underneath a nonlocally described film.
pub fn substrate_impedance(pol: Polarization, omega: f64, q: f64, eps: f64) -> f64 {
    let k = (omega * omega * eps + q * q).sqrt();
    match pol {
        Polarization::S => omega / k,
        Polarization::P => k / (omega * eps),
    }
}

/// Reflection coefficient of a film from its two parity impedances, the
/// vacuum impedance above and the substrate impedance below.
pub fn assemble_reflection(
    pol: Polarization,
    z_even: f64,
    z_odd: f64,
    z_vacuum: f64,
    z_substrate: f64,
) -> f64 {
    let num = (z_even - z_vacuum) * (z_odd + z_substrate)
        + (z_odd - z_vacuum) * (z_even + z_substrate);
    let den = (z_even + z_vacuum) * (z_odd + z_substrate)
        + (z_odd + z_vacuum) * (z_even + z_substrate);
    match pol {
        Polarization::S => num / den,
        Polarization::P => -num / den,
    }
}

/// Nonlocal reflection of a metal film of thickness `h` nm on a local
/// substrate of permittivity `eps_substrate` (1.0 for free-standing films).
///
/// `metal.omega_tau` is used as given; if a surface-scattering correction is
/// wanted the caller passes already-adjusted parameters.
pub fn film_reflection(
    pol: Polarization,
    zeta: f64,
    q: f64,
    metal: &DrudeParams,
    h: f64,
    eps_substrate: f64,
) -> Result<f64> {
    let pt = to_dimensionless(zeta, q, h, metal);
    let z_even = match pol {
        Polarization::S => film_impedance_s(Parity::Even, pt.omega, pt.q, pt.gamma, pt.h, metal.v_f)?,
        Polarization::P => film_impedance_p(Parity::Even, pt.omega, pt.q, pt.gamma, pt.h, metal.v_f)?,
    };
    let z_odd = match pol {
        Polarization::S => film_impedance_s(Parity::Odd, pt.omega, pt.q, pt.gamma, pt.h, metal.v_f)?,
        Polarization::P => film_impedance_p(Parity::Odd, pt.omega, pt.q, pt.gamma, pt.h, metal.v_f)?,
    };
    let z0 = vacuum_impedance(pol, pt.omega, pt.q);
    let z_sub = substrate_impedance(pol, pt.omega, pt.q, eps_substrate);
    Ok(assemble_reflection(pol, z_even, z_odd, z0, z_sub))
}

/// Nonlocal reflection of a semi-infinite metal, from the impedance
/// mismatch with vacuum.
pub fn half_space_reflection(
    pol: Polarization,
    zeta: f64,
    q: f64,
    metal: &DrudeParams,
    rel_tol: f64,
) -> Result<f64> {
    let pt = to_dimensionless(zeta, q, 1.0, metal);
    let z0 = vacuum_impedance(pol, pt.omega, pt.q);
    Ok(match pol {
        Polarization::S => {
            let z = half_space_impedance_s(pt.omega, pt.q, pt.gamma, metal.v_f, rel_tol)?;
            (z - z0) / (z + z0)
        }
        Polarization::P => {
            let z = half_space_impedance_p(pt.omega, pt.q, pt.gamma, metal.v_f, rel_tol)?;
            (z0 - z) / (z0 + z)
        }
    })
}
