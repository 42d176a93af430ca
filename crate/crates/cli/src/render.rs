//! Human table and machine JSON renderings of an [`AnalysisReport`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use cvp_core::phasor::to_polar_deg;
use cvp_core::{AnalysisReport, Phasor, PhasorTriple, SequenceTriple};

use crate::input::{NeutralSpec, UnitSystemTag};

/// A phasor in both rectangular and polar form. `re`/`im` are
/// authoritative; `mag`/`angle_deg` are convenience copies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasorJson {
    pub re: f64,
    pub im: f64,
    pub mag: f64,
    pub angle_deg: f64,
}

impl From<Phasor> for PhasorJson {
    fn from(z: Phasor) -> Self {
        let (mag, angle_deg) = to_polar_deg(z);
        Self {
            re: z.re,
            im: z.im,
            mag,
            angle_deg,
        }
    }
}

fn triple(x: &PhasorTriple) -> [PhasorJson; 3] {
    x.components().map(PhasorJson::from)
}

fn sequence(x: &SequenceTriple) -> [PhasorJson; 3] {
    x.to_array().map(PhasorJson::from)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ieee1459Json {
    pub s_plus: f64,
    pub s_u: f64,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstantaneousJson {
    pub samples_per_cycle: usize,
    pub cycles: usize,
    pub sigma: [f64; 3],
    pub sigma_d: f64,
    pub mean_power: f64,
}

/// Machine-readable report. Sequence triples are ordered (+, −, h).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineReport {
    pub schema_version: u32,
    pub label: String,
    pub unit_system: UnitSystemTag,
    pub frequency_hz: f64,
    pub neutral: NeutralSpec,
    pub voltages: [PhasorJson; 3],
    pub currents: [PhasorJson; 3],
    pub v_no: PhasorJson,
    pub i_n: PhasorJson,
    pub k: f64,
    pub correction: Option<f64>,
    #[serde(rename = "V_O")]
    pub v_o: [PhasorJson; 3],
    #[serde(rename = "V_e")]
    pub v_e: [PhasorJson; 3],
    #[serde(rename = "I_e")]
    pub i_e: [PhasorJson; 3],
    #[serde(rename = "V_pm_e")]
    pub v_pm_e: [PhasorJson; 3],
    #[serde(rename = "I_pm_e")]
    pub i_pm_e: [PhasorJson; 3],
    #[serde(rename = "V_e_norm")]
    pub v_e_norm: f64,
    #[serde(rename = "I_e_norm")]
    pub i_e_norm: f64,
    #[serde(rename = "P")]
    pub p: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "D_e")]
    pub d_e: [PhasorJson; 3],
    #[serde(rename = "D_e_norm")]
    pub d_e_norm: f64,
    #[serde(rename = "D_pm_e")]
    pub d_pm_e: [PhasorJson; 3],
    #[serde(rename = "D_pm_e_norm")]
    pub d_pm_e_norm: f64,
    #[serde(rename = "S_e_norm")]
    pub s_e_norm: f64,
    #[serde(rename = "PF")]
    pub pf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ieee1459: Option<Ieee1459Json>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub instantaneous: Option<InstantaneousJson>,
}

pub const IEEE1459_NOTE: &str =
    "derived by cvp: S_+ = |V+e||I+e| and S_u = sqrt(S_e^2 - S_+^2); S_u is not ||D_e|| in general";

impl From<&AnalysisReport> for MachineReport {
    fn from(r: &AnalysisReport) -> Self {
        let req = &r.request;
        Self {
            schema_version: crate::input::SCHEMA_VERSION,
            label: req.label.clone(),
            unit_system: req.unit_system.into(),
            frequency_hz: req.frequency,
            neutral: req.neutral.into(),
            voltages: triple(&req.voltages),
            currents: triple(&req.currents),
            v_no: r.v_no.into(),
            i_n: r.i_n.into(),
            k: r.k,
            correction: r.correction,
            v_o: triple(&r.v_o),
            v_e: triple(&r.v_e),
            i_e: triple(&r.i_e),
            v_pm_e: sequence(&r.v_pm_e),
            i_pm_e: sequence(&r.i_pm_e),
            v_e_norm: r.v_e_norm,
            i_e_norm: r.i_e_norm,
            p: r.p,
            q: r.q,
            d_e: triple(&r.d_e),
            d_e_norm: r.d_e_norm,
            d_pm_e: triple(&r.d_pm_e),
            d_pm_e_norm: r.d_pm_e_norm,
            s_e_norm: r.s_e_norm,
            pf: r.pf,
            ieee1459: r.ieee1459.map(|c| Ieee1459Json {
                s_plus: c.s_plus,
                s_u: c.s_u,
                note: IEEE1459_NOTE.to_string(),
            }),
            instantaneous: r.instantaneous.map(|s| InstantaneousJson {
                samples_per_cycle: s.samples_per_cycle,
                cycles: s.cycles,
                sigma: s.sigma,
                sigma_d: s.sigma_d,
                mean_power: s.mean_power,
            }),
        }
    }
}

/// Pretty JSON. serde_json writes the shortest representation that
/// round-trips, so every f64 keeps its full precision.
pub fn render_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(&MachineReport::from(report)).expect("report serializes");
    s.push('\n');
    s
}

fn polar(z: Phasor) -> String {
    let (m, a) = to_polar_deg(z);
    // Avoid printing "-0.000°".
    let a = if a.abs() < 5e-4 { 0.0 } else { a };
    format!("{m:.6}∠{a:.3}°")
}

fn column<'a>(items: impl IntoIterator<Item = &'a Phasor>) -> Vec<String> {
    items.into_iter().map(|z| polar(*z)).collect()
}

struct Table {
    out: String,
}

const NAME_WIDTH: usize = 18;

impl Table {
    fn section(&mut self, title: &str) {
        let _ = writeln!(self.out, "\n{title}");
        let _ = writeln!(self.out, "{}", "-".repeat(64));
    }

    fn scalar(&mut self, name: &str, value: String) {
        let width = name
            .chars()
            .filter(|c| !('\u{300}'..='\u{36f}').contains(c))
            .count();
        let pad = NAME_WIDTH.saturating_sub(width);
        let _ = writeln!(self.out, "  {name}{} {value}", " ".repeat(pad));
    }

    fn vector(&mut self, name: &str, rows: Vec<String>, unit: &str) {
        for (k, row) in rows.into_iter().enumerate() {
            let label = if k == 0 { name } else { "" };
            self.scalar(label, format!("{row} {unit}"));
        }
    }
}

/// Fixed-width text layout: phasor vectors and norms, then power
/// components and norms.
pub fn render_table(report: &AnalysisReport) -> String {
    let req = &report.request;
    let [u_v, u_i, u_p, u_q, u_s] = req.unit_system.labels();
    let neutral: NeutralSpec = req.neutral.into();
    let mut t = Table { out: String::new() };
    let _ = writeln!(
        t.out,
        "CVP analysis: {} ({}, {} Hz, {neutral})",
        req.label,
        match req.unit_system {
            cvp_core::UnitSystem::PerUnit => "per-unit",
            cvp_core::UnitSystem::Si => "SI",
        },
        req.frequency
    );

    t.section("Phasor vectors and norms");
    t.vector("V", column(req.voltages.iter()), u_v);
    t.scalar("V̄_NO", format!("{} {u_v}", polar(report.v_no)));
    t.vector("V_O", column(report.v_o.iter()), u_v);
    t.scalar("k(ρ)", format!("{:.6}", report.k));
    if let Some(c) = report.correction {
        t.scalar("√(1+3ρ)", format!("{c:.6}"));
    }
    t.vector("V_e", column(report.v_e.iter()), u_v);
    t.vector("V_±e", column(&report.v_pm_e.to_array()), u_v);
    t.scalar("‖V_±e‖ = ‖V_e‖", format!("{:.6} {u_v}", report.v_e_norm));
    t.vector("I", column(req.currents.iter()), u_i);
    t.scalar("Ī_N", format!("{} {u_i}", polar(report.i_n)));
    t.vector("I_e", column(report.i_e.iter()), u_i);
    t.vector("I_±e", column(&report.i_pm_e.to_array()), u_i);
    t.scalar("‖I_±e‖ = ‖I_e‖", format!("{:.6} {u_i}", report.i_e_norm));

    t.section("Power components and norms");
    t.scalar("P", format!("{:.6} {u_p}", report.p));
    t.scalar("Q", format!("{:.6} {u_q}", report.q));
    t.vector("D_e", column(report.d_e.iter()), u_s);
    t.vector("D_±e", column(report.d_pm_e.iter()), u_s);
    t.scalar("‖D_e‖ = ‖D_±e‖", format!("{:.6} {u_s}", report.d_e_norm));
    let pure_cross = report.complex_power().norm() <= 1e-9 * report.s_e_norm;
    if pure_cross && report.s_e_norm > 0.0 {
        t.scalar("‖D_e‖ = ‖S_e‖", format!("{:.6} {u_s}", report.s_e_norm));
    } else {
        t.scalar("‖S_e‖", format!("{:.6} {u_s}", report.s_e_norm));
    }
    t.scalar(
        "PF",
        report
            .pf
            .map(|pf| format!("{pf:.6}"))
            .unwrap_or_else(|| "undefined (‖S_e‖ = 0)".into()),
    );

    if let Some(s) = &report.instantaneous {
        t.section(&format!(
            "Instantaneous check ({} samples/cycle x {} cycles)",
            s.samples_per_cycle, s.cycles
        ));
        t.scalar("⟨p(t)⟩", format!("{:.6} {u_p}", s.mean_power));
        t.scalar("σ_d", format!("{:.6} {u_s}", s.sigma_d));
        t.scalar("‖D_e‖/√2", format!("{:.6} {u_s}", report.d_e_norm / std::f64::consts::SQRT_2));
    }

    if let Some(c) = &report.ieee1459 {
        t.section("IEEE 1459 comparison (derived by this tool)");
        t.scalar("S_+", format!("{:.6} {u_s}", c.s_plus));
        t.scalar("S_u", format!("{:.6} {u_s}", c.s_u));
        t.scalar("‖D_e‖", format!("{:.6} {u_s}", report.d_e_norm));
    }
    t.out
}
