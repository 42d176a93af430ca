//! End-to-end analysis: measured POC phasors to a full CVP report.
//!
//! [`analyze`] chains the four-wire equivalents, the CVP on `(V_e, I_e)`,
//! the sequence-domain consistency checks and an instantaneous summary.
//! Every identity that must hold exactly is re-checked on the way; a
//! violation beyond [`INTEGRITY_TOLERANCE`] comes back as
//! [`CvpError::Integrity`] instead of a report.

mod fixtures;

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{CvpError, Result};
use crate::four_wire::{
    equivalent_coordinates_with_tolerance, NeutralConfig, DEFAULT_KCL_TOLERANCE,
};
use crate::instantaneous::{decompose_cross_term, synthesize, WaveformGrid};
use crate::phasor::{Phasor, PhasorTriple, Unit};
use crate::power::{cross, cvp_unchecked, dot};
use crate::sequence::SequenceTriple;

pub use fixtures::{builtin_fixtures, ExpectedValue, FieldCheck, Fixture, Tolerance};

/// Relative tolerance for internal cross-checks, scaled by `‖V_e‖‖I_e‖`.
pub const INTEGRITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    PerUnit,
    Si,
}

impl UnitSystem {
    /// Unit labels for (voltage, current, active, reactive, apparent).
    pub fn labels(self) -> [&'static str; 5] {
        match self {
            UnitSystem::PerUnit => ["pu", "pu", "pu", "pu", "pu"],
            UnitSystem::Si => ["V", "A", "W", "var", "VA"],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisRequest {
    pub label: String,
    pub voltages: PhasorTriple,
    pub currents: PhasorTriple,
    pub neutral: NeutralConfig,
    pub frequency: f64,
    pub unit_system: UnitSystem,
}

impl AnalysisRequest {
    pub fn validate(&self) -> Result<()> {
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(CvpError::InvalidConfig(format!(
                "frequency must be finite and > 0, got {}",
                self.frequency
            )));
        }
        self.neutral.validate()?;
        self.voltages.ensure_finite("voltages")?;
        self.currents.ensure_finite("currents")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Relative `|Ī_N| / ‖I‖` allowance in three-wire mode.
    pub kcl_tolerance: f64,
    /// Compute the IEEE 1459 `S_+` / `S_u` comparison.
    pub ieee1459: bool,
    /// Sampling used for the instantaneous summary; `None` skips it.
    pub instantaneous: Option<(usize, usize)>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            kcl_tolerance: DEFAULT_KCL_TOLERANCE,
            ieee1459: false,
            instantaneous: Some((256, 2)),
        }
    }
}

/// IEEE 1459 positive-sequence and unbalance apparent powers, derived here
/// from the equivalent sequence coordinates. `S_u` is not `‖D_e‖` in general.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ieee1459Comparison {
    pub s_plus: f64,
    pub s_u: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantaneousSummary {
    pub samples_per_cycle: usize,
    pub cycles: usize,
    /// rms of the oscillatory cross-phase term, `‖D_e‖/√2`.
    pub sigma_d: f64,
    /// Per-component rms `σ_k`.
    pub sigma: [f64; 3],
    /// Cycle average of `p(t)`.
    pub mean_power: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub request: AnalysisRequest,
    pub v_no: Phasor,
    pub i_n: Phasor,
    pub k: f64,
    pub correction: Option<f64>,
    pub v_o: PhasorTriple,
    pub v_e: PhasorTriple,
    pub i_e: PhasorTriple,
    pub v_pm_e: SequenceTriple,
    pub i_pm_e: SequenceTriple,
    pub v_e_norm: f64,
    pub i_e_norm: f64,
    pub p: f64,
    pub q: f64,
    pub d_e: PhasorTriple,
    pub d_e_norm: f64,
    pub d_pm_e: PhasorTriple,
    pub d_pm_e_norm: f64,
    pub s_e_norm: f64,
    /// Signed `P / ‖S_e‖`; `None` when `‖S_e‖ = 0`.
    pub pf: Option<f64>,
    pub ieee1459: Option<Ieee1459Comparison>,
    pub instantaneous: Option<InstantaneousSummary>,
}

impl AnalysisReport {
    pub fn complex_power(&self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }

    /// `‖V_e‖·‖I_e‖`, the natural magnitude scale of every bilinear output.
    pub fn scale(&self) -> f64 {
        self.v_e_norm * self.i_e_norm
    }
}

pub fn analyze(req: &AnalysisRequest) -> Result<AnalysisReport> {
    analyze_with(req, &AnalysisOptions::default())
}

pub fn analyze_with(req: &AnalysisRequest, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    req.validate()?;
    let eq = equivalent_coordinates_with_tolerance(
        &req.voltages,
        &req.currents,
        req.neutral,
        opts.kcl_tolerance,
    )?;

    let disagreement = eq.route_disagreement();
    if disagreement > INTEGRITY_TOLERANCE {
        return Err(CvpError::Integrity(format!(
            "phase-domain and sequence-domain equivalents differ by {disagreement:e} (relative)"
        )));
    }

    let phase = cvp_unchecked(eq.v_e.components(), eq.i_e.components());
    let (v_pm, i_pm) = (eq.v_pm_e.to_array(), eq.i_pm_e.to_array());
    let s_pm = dot(&v_pm, &i_pm);
    let d_pm_e = PhasorTriple::new(cross(&v_pm, &i_pm), Unit::VoltAmpere);

    let v_e_norm = eq.v_e.norm();
    let i_e_norm = eq.i_e.norm();
    let scale = v_e_norm * i_e_norm;
    let d_e_norm = phase.d_norm();
    let d_pm_e_norm = d_pm_e.norm();

    check(
        "P + jQ in phase vs sequence coordinates",
        (phase.complex_power() - s_pm).norm(),
        scale,
    )?;
    check("‖D_e‖ vs ‖D_±e‖", (d_e_norm - d_pm_e_norm).abs(), scale)?;
    check(
        "‖S_e‖ vs ‖V_e‖·‖I_e‖",
        (phase.s_norm - scale).abs(),
        scale,
    )?;

    let mut report = AnalysisReport {
        request: req.clone(),
        v_no: eq.v_no,
        i_n: eq.i_n,
        k: eq.k,
        correction: eq.correction,
        v_o: eq.v_o,
        v_e: eq.v_e,
        i_e: eq.i_e,
        v_pm_e: eq.v_pm_e,
        i_pm_e: eq.i_pm_e,
        v_e_norm,
        i_e_norm,
        p: phase.p,
        q: phase.q,
        d_e: phase.d,
        d_e_norm,
        d_pm_e,
        d_pm_e_norm,
        s_e_norm: phase.s_norm,
        pf: phase.pf,
        ieee1459: None,
        instantaneous: None,
    };

    if let Some((samples_per_cycle, cycles)) = opts.instantaneous {
        let grid = WaveformGrid::new(req.frequency, samples_per_cycle, cycles)?;
        let w = synthesize(&report.v_e, &report.i_e, &grid)?;
        let dec = decompose_cross_term(&w, &grid)?;
        let mean_power = w.p.iter().sum::<f64>() / w.p.len() as f64;
        check(
            "σ_d vs ‖D_e‖/√2",
            (dec.sigma_d - d_e_norm / SQRT_2).abs(),
            scale,
        )?;
        check("⟨p(t)⟩ vs P", (mean_power - report.p).abs(), scale)?;
        report.instantaneous = Some(InstantaneousSummary {
            samples_per_cycle,
            cycles,
            sigma_d: dec.sigma_d,
            sigma: dec.sigma,
            mean_power,
        });
    }

    if opts.ieee1459 {
        report.ieee1459 = Some(ieee1459_compare(&report)?);
    }
    Ok(report)
}

fn check(what: &str, deviation: f64, scale: f64) -> Result<()> {
    if deviation <= INTEGRITY_TOLERANCE * scale {
        Ok(())
    } else {
        Err(CvpError::Integrity(format!(
            "{what}: deviation {deviation:e} exceeds {INTEGRITY_TOLERANCE:e} x {scale:e}"
        )))
    }
}

/// IEEE 1459 split `S_e² = S_+² + S_u²` in the power-invariant equivalent
/// sequence coordinates: `S_+ = |V̄₊||Ī₊|`.
///
/// `S_u²` is evaluated as `|V₊|²r_I + r_V|I₊|² + r_V r_I`, with
/// `r_X = |X₋|² + |X_h|²`. That is `‖V_±e‖²‖I_±e‖² − S_+²` expanded, so the
/// balanced case gives `S_u ≈ 0` without cancellation.
pub fn ieee1459_compare(report: &AnalysisReport) -> Result<Ieee1459Comparison> {
    let (v, i) = (&report.v_pm_e, &report.i_pm_e);
    let v_plus = v.plus.norm_sqr();
    let i_plus = i.plus.norm_sqr();
    let r_v = v.minus.norm_sqr() + v.homopolar.norm_sqr();
    let r_i = i.minus.norm_sqr() + i.homopolar.norm_sqr();
    let s_plus = (v_plus * i_plus).sqrt();
    let s_u = (v_plus * r_i + r_v * i_plus + r_v * r_i).sqrt();

    if s_plus > report.s_e_norm * (1.0 + INTEGRITY_TOLERANCE) {
        return Err(CvpError::Integrity(format!(
            "S_+ = {s_plus} exceeds ‖S_e‖ = {}",
            report.s_e_norm
        )));
    }
    let closure = ((s_plus * s_plus + s_u * s_u).sqrt() - report.s_e_norm).abs();
    check("S_+² + S_u² vs ‖S_e‖²", closure, report.scale())?;
    Ok(Ieee1459Comparison { s_plus, s_u })
}
