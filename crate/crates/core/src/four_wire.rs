//! Artificial-neutral reference and equivalent coordinates for three-phase
//! four-wire systems.
//!
//! Measured line-to-neutral voltages are referred to a virtual neutral `O`
//! fixed by the barycentric condition `V̄₁O + V̄₂O + V̄₃O + V̄_NO/ρ = 0`, with
//! `ρ = R_N / R_S`. The homopolar components are then rescaled by
//! `√(1 + 3ρ)`, which gives equivalent coordinates `(V_e, I_e)` whose norms
//! are the effective voltage and current.
//!
//! The equivalents are computed along two routes, the explicit phase-domain
//! formula and the sequence-domain correction followed by the inverse
//! transform. [`equivalent_coordinates`] returns both so callers can compare
//! them.
//!
//! Note: for ρ = 2.4 the shift factor evaluates to `k = 0.25883`; the product
//! `ρ·k = 0.62119` is the coefficient that multiplies `Ī_N` in `I_e`.

use num_complex::Complex64;

use crate::error::{CvpError, Result};
use crate::phasor::{Phasor, PhasorTriple, Unit};
use crate::sequence::{from_sequence_unchecked, to_sequence_unchecked, SequenceTriple};

/// Default relative tolerance on `|Ī_N| / ‖I‖` in three-wire mode.
pub const DEFAULT_KCL_TOLERANCE: f64 = 1e-9;

/// Neutral-conductor configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NeutralConfig {
    /// Four-wire system with `ρ = R_N / R_S ≥ 0`. `ρ = 0` is a perfect neutral.
    FourWire { rho: f64 },
    /// Three-wire system, the `ρ → ∞` limit.
    ThreeWire,
}

impl NeutralConfig {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NeutralConfig::FourWire { rho } => check_rho(rho),
            NeutralConfig::ThreeWire => Ok(()),
        }
    }

    pub fn rho(&self) -> Option<f64> {
        match *self {
            NeutralConfig::FourWire { rho } => Some(rho),
            NeutralConfig::ThreeWire => None,
        }
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho >= 0.0 {
        Ok(())
    } else {
        Err(CvpError::InvalidConfig(format!(
            "rho must be finite and >= 0, got {rho}"
        )))
    }
}

/// `V̄_NO = −(V̄₁N + V̄₂N + V̄₃N) / (3 + 1/ρ)`; exactly zero at `ρ = 0`.
pub fn artificial_neutral_shift(v: &PhasorTriple, rho: f64) -> Result<Phasor> {
    check_rho(rho)?;
    v.ensure_finite("V")?;
    Ok(neutral_shift(v, rho))
}

// Written as −ρΣV/(3ρ + 1) so tiny ρ does not go through 1/ρ.
fn neutral_shift(v: &PhasorTriple, rho: f64) -> Phasor {
    if rho == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    -v.sum() * (rho / (3.0 * rho + 1.0))
}

/// `k(ρ) = (√(1+3ρ) − 1)/(3ρ)`, evaluated as `1/(√(1+3ρ) + 1)`.
pub fn k_factor(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(1.0 / ((1.0 + 3.0 * rho).sqrt() + 1.0))
}

/// Homopolar metric correction `√(1 + 3ρ)`.
pub fn homopolar_correction(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok((1.0 + 3.0 * rho).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourWireEquivalents {
    pub neutral: NeutralConfig,
    /// Artificial-neutral shift `V̄_NO`.
    pub v_no: Phasor,
    /// Neutral current `Ī_N = Ī₁ + Ī₂ + Ī₃`.
    pub i_n: Phasor,
    /// `k(ρ)`; zero in three-wire mode.
    pub k: f64,
    /// `√(1 + 3ρ)`; `None` in three-wire mode, where the homopolar
    /// current is zero and the correction is not applied.
    pub correction: Option<f64>,
    /// Voltages referred to the artificial neutral.
    pub v_o: PhasorTriple,
    /// Equivalent phase voltages from the explicit formula.
    pub v_e: PhasorTriple,
    /// Equivalent phase currents from the explicit formula.
    pub i_e: PhasorTriple,
    /// Equivalent sequence voltages (homopolar corrected).
    pub v_pm_e: SequenceTriple,
    /// Equivalent sequence currents (homopolar corrected).
    pub i_pm_e: SequenceTriple,
    /// `A⁻¹ V_±e`, the sequence-route counterpart of `v_e`.
    pub v_e_from_sequence: PhasorTriple,
    /// `A⁻¹ I_±e`, the sequence-route counterpart of `i_e`.
    pub i_e_from_sequence: PhasorTriple,
}

impl FourWireEquivalents {
    /// Largest relative disagreement between the phase-domain and
    /// sequence-domain constructions of `V_e` and `I_e`.
    pub fn route_disagreement(&self) -> f64 {
        let rel = |a: &PhasorTriple, b: &PhasorTriple| {
            let scale = a.norm().max(b.norm());
            if scale == 0.0 {
                0.0
            } else {
                (*a - *b).norm() / scale
            }
        };
        rel(&self.v_e, &self.v_e_from_sequence).max(rel(&self.i_e, &self.i_e_from_sequence))
    }
}

/// Equivalent coordinates `(V_e, I_e)` and their sequence counterparts.
///
/// Four-wire: `V_e = V_O − k V̄_NO 1`, `I_e = I + ρk Ī_N 1`.
/// Three-wire: `V̄_NO = −ΣV/3`, `V_e = V_O`, `I_e = I`, and `Ī_N` must
/// vanish to within `kcl_tolerance · ‖I‖`.
pub fn equivalent_coordinates(
    v: &PhasorTriple,
    i: &PhasorTriple,
    neutral: NeutralConfig,
) -> Result<FourWireEquivalents> {
    equivalent_coordinates_with_tolerance(v, i, neutral, DEFAULT_KCL_TOLERANCE)
}

pub fn equivalent_coordinates_with_tolerance(
    v: &PhasorTriple,
    i: &PhasorTriple,
    neutral: NeutralConfig,
    kcl_tolerance: f64,
) -> Result<FourWireEquivalents> {
    neutral.validate()?;
    v.ensure_finite("V")?;
    i.ensure_finite("I")?;
    let v = v.with_unit(Unit::Volt);
    let i = i.with_unit(Unit::Ampere);
    let i_n = i.sum();

    let (v_no, k, correction, v_e, i_e) = match neutral {
        NeutralConfig::FourWire { rho } => {
            let v_no = neutral_shift(&v, rho);
            let k = 1.0 / ((1.0 + 3.0 * rho).sqrt() + 1.0);
            let correction = (1.0 + 3.0 * rho).sqrt();
            let v_o = v + PhasorTriple::uniform(v_no, Unit::Volt);
            let v_e = v_o - PhasorTriple::uniform(v_no * k, Unit::Volt);
            let i_e = i + PhasorTriple::uniform(i_n * (rho * k), Unit::Ampere);
            (v_no, k, Some(correction), v_e, i_e)
        }
        NeutralConfig::ThreeWire => {
            if !(kcl_tolerance.is_finite() && kcl_tolerance >= 0.0) {
                return Err(CvpError::InvalidConfig(format!(
                    "KCL tolerance must be finite and >= 0, got {kcl_tolerance}"
                )));
            }
            let limit = kcl_tolerance * i.norm();
            if i_n.norm() > limit {
                return Err(CvpError::KclViolation {
                    neutral_current: i_n.norm(),
                    tolerance: kcl_tolerance,
                    limit,
                });
            }
            let v_no = -v.sum() / 3.0;
            let v_o = v + PhasorTriple::uniform(v_no, Unit::Volt);
            (v_no, 0.0, None, v_o, i)
        }
    };
    let v_o = v + PhasorTriple::uniform(v_no, Unit::Volt);

    // Sequence route: transform V_O and I, then rescale the homopolar parts.
    let c = correction.unwrap_or(1.0);
    let v_pm_o = to_sequence_unchecked(&v_o);
    let i_pm = to_sequence_unchecked(&i);
    let v_pm_e = v_pm_o.with_homopolar(v_pm_o.homopolar * c);
    let i_pm_e = i_pm.with_homopolar(i_pm.homopolar * c);

    Ok(FourWireEquivalents {
        neutral,
        v_no,
        i_n,
        k,
        correction,
        v_o,
        v_e,
        i_e,
        v_pm_e,
        i_pm_e,
        v_e_from_sequence: from_sequence_unchecked(&v_pm_e),
        i_e_from_sequence: from_sequence_unchecked(&i_pm_e),
    })
}
