//! Fresnel reflection for layered media in the local description.
//!
//! Everything is evaluated at imaginary frequency, where permittivities and
//! normal wavevectors are real and positive, so no complex arithmetic is
//! needed.  Units: frequencies in eV, wavevectors in nm⁻¹, thicknesses in nm.

use crate::constants::HBAR_C;
use crate::error::{Error, Result};
use crate::materials::MaterialModel;

/// Field polarization relative to the plane of incidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// transverse electric
    S,
    /// transverse magnetic
    P,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::S, Polarization::P];
}

/// Normal component of the wavevector in a medium of permittivity `eps`:
/// k = √(ε ζ²/(ħc)² + q²).
pub fn normal_wavevector(eps: f64, zeta: f64, q: f64) -> f64 {
    (eps * zeta * zeta / (HBAR_C * HBAR_C) + q * q).sqrt()
}

/// Fresnel coefficient for light going from medium `m` into medium `l`,
/// given each medium's permittivity and normal wavevector.
pub fn fresnel(pol: Polarization, eps_m: f64, k_m: f64, eps_l: f64, k_l: f64) -> f64 {
    match pol {
        Polarization::S => (k_m - k_l) / (k_m + k_l),
        Polarization::P => (eps_l * k_m - eps_m * k_l) / (eps_l * k_m + eps_m * k_l),
    }
}

/// [`normal_wavevector`] with the permittivity taken from a material at
/// `zeta`.  Thickness-dependent corrections don't apply here; layers inside
/// a [`LayerStack`] evaluate their own permittivity with thickness known.
pub fn k_normal(material: &MaterialModel, zeta: f64, q: f64) -> Result<f64> {
    Ok(normal_wavevector(material.epsilon(zeta, None)?, zeta, q))
}

/// [`fresnel`] for light going from material `m` into material `l`.
pub fn fresnel_interface(
    m: &MaterialModel,
    l: &MaterialModel,
    zeta: f64,
    q: f64,
    pol: Polarization,
) -> Result<f64> {
    let eps_m = m.epsilon(zeta, None)?;
    let eps_l = l.epsilon(zeta, None)?;
    Ok(fresnel(
        pol,
        eps_m,
        normal_wavevector(eps_m, zeta, q),
        eps_l,
        normal_wavevector(eps_l, zeta, q),
    ))
}

// Beyond this optical thickness e^{-2k₁h} underflows long before it matters;
// skip the exponential so huge ε·h products cannot produce 0·∞.
const OPAQUE_EXPONENT: f64 = 700.0;

/// Two-interface composition: a film with top-interface coefficient `r01`,
/// bottom coefficient `r21` (for light hitting the film from *below* the
/// bottom interface), normal wavevector `k1` inside the film, thickness `h`:
///
///   R = (r01 − r21 e^{−2k₁h}) / (1 − r01 r21 e^{−2k₁h})
pub fn compose_film(r01: f64, r21: f64, k1: f64, h: f64) -> f64 {
    if 2.0 * k1 * h > OPAQUE_EXPONENT {
        return r01;
    }
    let attenuation = (-2.0 * k1 * h).exp();
    (r01 - r21 * attenuation) / (1.0 - r01 * r21 * attenuation)
}

/// Reflection from vacuum off a film of permittivity `eps_film` and
/// thickness `h` on a semi-infinite substrate `eps_substrate`.
pub fn film_reflection(
    pol: Polarization,
    zeta: f64,
    q: f64,
    eps_film: f64,
    h: f64,
    eps_substrate: f64,
) -> f64 {
    let k0 = normal_wavevector(1.0, zeta, q);
    let k1 = normal_wavevector(eps_film, zeta, q);
    let k2 = normal_wavevector(eps_substrate, zeta, q);
    let r01 = fresnel(pol, 1.0, k0, eps_film, k1);
    let r21 = fresnel(pol, eps_substrate, k2, eps_film, k1);
    compose_film(r01, r21, k1, h)
}

/// Planar stack under vacuum: `layers` from top (vacuum side) to bottom,
/// each `(permittivity, thickness)`, resting on a semi-infinite substrate.
#[derive(Debug, Clone, PartialEq)]
pub struct Stack {
    pub layers: Vec<(f64, f64)>,
    pub substrate: f64,
}

impl Stack {
    /// Overall reflection from vacuum, folding the stack bottom-up.
    ///
    /// Invariant carried between layers: `(eps_top, k_top, transported)`
    /// describe everything processed so far as one object, whose reflection
    /// seen from a medium m above it is
    /// (fresnel(m→top) + transported) / (1 + fresnel(m→top)·transported).
    /// A bare substrate has transported = 0.
    pub fn reflection(&self, pol: Polarization, zeta: f64, q: f64) -> f64 {
        let mut eps_top = self.substrate;
        let mut k_top = normal_wavevector(self.substrate, zeta, q);
        let mut transported = 0.0;

        for &(eps, h) in self.layers.iter().rev() {
            let k = normal_wavevector(eps, zeta, q);
            let r_int = fresnel(pol, eps, k, eps_top, k_top);
            // total reflection at the lower boundary, inside this layer
            let r_bottom = (r_int + transported) / (1.0 + r_int * transported);
            transported = if 2.0 * k * h > OPAQUE_EXPONENT {
                0.0
            } else {
                r_bottom * (-2.0 * k * h).exp()
            };
            eps_top = eps;
            k_top = k;
        }

        let k0 = normal_wavevector(1.0, zeta, q);
        let r_top = fresnel(pol, 1.0, k0, eps_top, k_top);
        (r_top + transported) / (1.0 + r_top * transported)
    }
}

/// A finite layer of material inside a stack.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub material: MaterialModel,
    /// nm, strictly positive; a vanishing layer must be dropped, not carried.
    pub thickness: f64,
}

/// A plate as seen from the vacuum gap: finite layers ordered top (vacuum
/// side) to bottom, resting on a semi-infinite substrate.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    pub layers: Vec<Layer>,
    pub substrate: MaterialModel,
}

impl LayerStack {
    pub fn half_space(material: MaterialModel) -> Self {
        Self { layers: Vec::new(), substrate: material }
    }

    pub fn film(material: MaterialModel, thickness: f64, substrate: MaterialModel) -> Self {
        Self { layers: vec![Layer { material, thickness }], substrate }
    }

    pub fn validate(&self) -> Result<()> {
        for layer in &self.layers {
            layer.material.validate()?;
            if !(layer.thickness > 0.0 && layer.thickness.is_finite()) {
                return Err(Error::Domain(format!(
                    "layer thickness must be > 0 and finite, got {}",
                    layer.thickness
                )));
            }
        }
        self.substrate.validate()
    }

    /// The layer adjacent to the vacuum gap, if any.
    pub fn top_layer(&self) -> Option<&Layer> {
        self.layers.first()
    }

    /// Local reflection of the whole stack at `zeta > 0`.  Layer
    /// permittivities see their own thickness, so the surface-scattering
    /// correction (when enabled on a material) is applied per layer.
    pub fn reflection(&self, pol: Polarization, zeta: f64, q: f64) -> Result<f64> {
        let mut layers = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            layers.push((
                layer.material.epsilon(zeta, Some(layer.thickness))?,
                layer.thickness,
            ));
        }
        let stack = Stack { layers, substrate: self.substrate.epsilon(zeta, None)? };
        Ok(stack.reflection(pol, zeta, q))
    }
}
