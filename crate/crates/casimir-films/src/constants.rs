//! Unit conventions: frequencies in eV, lengths in nm, pressures in Pa.
//! Everything dimensionful funnels through these constants so a unit bug
//! can only live in one place.

/// hbar*c in eV*nm.
pub const HBAR_C: f64 = 197.327;

/// Boltzmann constant in eV/K.
pub const K_B: f64 = 8.617e-5;

/// Converts an energy density eV/nm^3 to a pressure in Pa.
/// 1 eV/nm^3 = e * 1e27 J/m^3 with e the elementary charge.
pub const EV_PER_NM3_TO_PA: f64 = 1.602_176_634e8;
