//! frostlab-core: a numerical laboratory for fractal measures on curved
//! graphs. Builds Frostman/AD-regular measures, evaluates Fourier transforms
//! and L^p ball norms at scale, measures additive 2-/3-energies and
//! decoupling ratios, decomposes measures into wave packets on tubes, counts
//! tube-square incidences, and verifies discretized Furstenberg sets.
//!
//! The numerical core is generic over the scalar type through
//! [`scalar::Real`] (`f32` or `f64`); the aliases at the crate root pin the
//! `f64` instantiations used by the CLI and most tests.

pub mod curve;
pub mod decoupling;
pub mod energy;
pub mod error;
pub mod fit;
pub mod fourier;
pub mod incidence;
pub mod io;
pub mod measure;
pub mod rng;
pub mod scalar;
pub mod special;
pub mod wavepacket;

pub use error::{Error, Result};
pub use scalar::Real;

/// f64 instantiations.
pub type DiscreteMeasure1D = measure::DiscreteMeasure1D<f64>;
pub type DiscreteMeasure2D = curve::DiscreteMeasure2D<f64>;
pub type CurveSpec = curve::CurveSpec<f64>;
pub type PointSet1D = energy::PointSet1D<f64>;
pub type PigeonholeClass = wavepacket::PigeonholeClass<f64>;

/// f32 instantiations, for quick scans at half the memory bandwidth.
pub type DiscreteMeasure1D32 = measure::DiscreteMeasure1D<f32>;
pub type DiscreteMeasure2D32 = curve::DiscreteMeasure2D<f32>;
pub type CurveSpec32 = curve::CurveSpec<f32>;
pub type PointSet1D32 = energy::PointSet1D<f32>;
