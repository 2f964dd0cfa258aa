//! Casimir pressure between parallel plates coated with thin metallic films.
//!
//! Two descriptions of the film optics are implemented side by side:
//!
//! * a **local** one — Drude dielectric function plus Fresnel/multilayer
//!   reflection ([`reflection_local`]), and
//! * a **nonlocal** one — spatially dispersive Boltzmann dielectric
//!   functions entering the even/odd surface impedances of a film with
//!   specular electron reflection ([`reflection_nonlocal`]).
//!
//! [`lifshitz`] assembles either set of reflection coefficients into the
//! pressure via the Matsubara sum, and [`scenario`] drives declarative
//! sweeps (separation, thickness, substrate, reflection curves) to CSV.
//!
//! All response functions are evaluated at imaginary frequencies
//! `omega = i*zeta`, where every quantity involved is real — no complex
//! arithmetic appears anywhere in the crate.

pub mod constants;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod quadrature;
pub mod reflection_local;
pub mod reflection_nonlocal;
pub mod scenario;

pub use error::{Error, Result};
