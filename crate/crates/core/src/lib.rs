//! Semiclassical particle and kinetic-energy densities for noninteracting
//! fermions in one-dimensional potentials with two classical turning points.

pub mod classical;
pub mod density;
pub mod error;
pub mod metrics;
pub mod oracle;
pub mod potential;
pub mod profile;
pub mod quad;
pub mod quantize;
pub mod real;
pub mod rootfind;
pub mod special;
pub mod spline;

pub use error::{Error, Result};

/// The library is generic over the float width; these aliases fix the
/// common case.
pub type Potential64 = potential::Potential<f64>;
pub type TurningPoints64 = classical::TurningPoints<f64>;
pub type PhaseData64 = classical::PhaseData<f64>;
pub type SpectrumResult64 = quantize::SpectrumResult<f64>;
pub type BoundStateSet64 = oracle::BoundStateSet<f64>;
pub type DensityProfile64 = profile::DensityProfile<f64>;
pub type ProfileBuilder64 = profile::ProfileBuilder<f64>;
pub type ErrorReport64 = metrics::ErrorReport<f64>;
