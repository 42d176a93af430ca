//! Complex-vector power (CVP) analysis of unbalanced three-phase sinusoidal
//! systems.
//!
//! The CVP of a voltage/current phasor pair is the classical complex power
//! `P + jQ = V·I*` together with the cross-phase unbalance vector
//! `D = V × I`. Their norms combine as `‖S‖² = P² + Q² + ‖D‖²`, and that norm
//! is invariant under the power-invariant Fortescue transform.
//!
//! Modules, bottom-up:
//!
//! * [`phasor`] – phasor scalars, phasor triples and polar helpers.
//! * [`power`] – dot power, cross-phase unbalance, the CVP and its norm identity.
//! * [`sequence`] – power-invariant symmetrical components.
//! * [`four_wire`] – artificial neutral and equivalent coordinates for 3P-4W systems.
//! * [`instantaneous`] – time-domain synthesis and the 2ω structure of `d(t)`.
//! * [`pipeline`] – end-to-end analysis, IEEE 1459 comparison, built-in fixtures.

pub mod error;
pub mod four_wire;
pub mod instantaneous;
pub mod phasor;
pub mod pipeline;
pub mod power;
pub mod sequence;

pub use error::{CvpError, Result};
pub use four_wire::{
    artificial_neutral_shift, equivalent_coordinates, homopolar_correction, k_factor,
    FourWireEquivalents, NeutralConfig,
};
pub use instantaneous::{
    decompose_cross_term, synthesize, verify_mean_power, CrossTermDecomposition, WaveformGrid,
    WaveformSet,
};
pub use phasor::{Phasor, PhasorTriple, Unit};
pub use pipeline::{
    analyze, analyze_with, builtin_fixtures, ieee1459_compare, AnalysisOptions, AnalysisReport,
    AnalysisRequest, Fixture, Ieee1459Comparison, UnitSystem,
};
pub use power::{cross_unbalance, cvp, dot_power, lagrange_residual, CvpResult};
pub use sequence::{
    cross_transform_check, from_sequence, to_sequence, FortescueMatrix, SequenceTriple,
};
