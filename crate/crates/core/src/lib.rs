//! Two-photon Hong-Ou-Mandel interference at a lossless beamsplitter.
//!
//! - [`fock`]: creation-operator algebra on the up/down x H/V mode space,
//!   the beamsplitter transformation and split/unsplit/Bell projections.
//! - [`polarization`]: degradation of bunching by mismatched linear
//!   polarizations and its restoration by symmetric superpositions.
//! - [`spectral`]: SPDC spectral amplitude, two-time wave function, split and
//!   unsplit densities over the arrival-time difference and their totals.
//! - [`montecarlo`]: sampled detection runs with timing jitter, density
//!   reconstruction and delay scans.

pub mod error;
pub mod fock;
pub mod montecarlo;
pub mod polarization;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
pub use fock::{
    apply_beamsplitter, bell_decompose, create_photon, split_probability_of, unsplit_probability_of,
    BeamsplitterUnitary, BellCoefficients, BellDecomposition, BellSector, ModeLabel, OccupationVector, PhotonState,
    Polarization, Spatial,
};
pub use montecarlo::{
    dip_scan, reconstruct_density, simulate_run, DetectionRun, DetectorConfig, DipRow, EventRecord, Histogram, Outcome,
    PairSampler, RunResult, RunSummary,
};
pub use num_complex::Complex64;
pub use polarization::PolarizationAngles;
pub use spectral::{Sign, SpectralModel, SpectralParams, TimeGrid};
