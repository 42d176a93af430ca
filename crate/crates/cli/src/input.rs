//! Input document: measured POC phasors plus the neutral configuration.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "label": "example2",
//!   "frequency_hz": 60,
//!   "unit_system": "si",
//!   "voltages": [{ "mag": 91.5, "angle_deg": -5.5 }, ...],
//!   "currents": [{ "mag": 3.562, "angle_deg": -38.28 }, ...],
//!   "neutral": { "mode": "four_wire", "rho": 2.4 }
//! }
//! ```
//!
//! `neutral` may also be `{ "mode": "three_wire" }`. Magnitudes are rms,
//! angles in degrees.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use cvp_core::{AnalysisRequest, NeutralConfig, PhasorTriple, Unit, UnitSystem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field}: {message}")]
pub struct InputError {
    /// Dotted path of the offending field, `<document>` for syntax errors.
    pub field: String,
    pub message: String,
}

impl InputError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSystemTag {
    PerUnit,
    Si,
}

impl From<UnitSystemTag> for UnitSystem {
    fn from(tag: UnitSystemTag) -> Self {
        match tag {
            UnitSystemTag::PerUnit => UnitSystem::PerUnit,
            UnitSystemTag::Si => UnitSystem::Si,
        }
    }
}

impl From<UnitSystem> for UnitSystemTag {
    fn from(u: UnitSystem) -> Self {
        match u {
            UnitSystem::PerUnit => UnitSystemTag::PerUnit,
            UnitSystem::Si => UnitSystemTag::Si,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarEntry {
    pub mag: f64,
    pub angle_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum NeutralSpec {
    FourWire { rho: f64 },
    ThreeWire,
}

impl From<NeutralSpec> for NeutralConfig {
    fn from(n: NeutralSpec) -> Self {
        match n {
            NeutralSpec::FourWire { rho } => NeutralConfig::FourWire { rho },
            NeutralSpec::ThreeWire => NeutralConfig::ThreeWire,
        }
    }
}

impl From<NeutralConfig> for NeutralSpec {
    fn from(n: NeutralConfig) -> Self {
        match n {
            NeutralConfig::FourWire { rho } => NeutralSpec::FourWire { rho },
            NeutralConfig::ThreeWire => NeutralSpec::ThreeWire,
        }
    }
}

impl fmt::Display for NeutralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeutralSpec::FourWire { rho } => write!(f, "four-wire, rho = {rho}"),
            NeutralSpec::ThreeWire => write!(f, "three-wire"),
        }
    }
}

/// Raw document as it appears on disk; arity and ranges are checked by
/// [`parse_input`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: u32,
    label: String,
    frequency_hz: f64,
    unit_system: UnitSystemTag,
    voltages: Vec<PolarEntry>,
    currents: Vec<PolarEntry>,
    neutral: RawNeutral,
}

/// Flat form of [`NeutralSpec`]. Serde loses the field path inside
/// internally tagged enums, so the mode is resolved by hand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNeutral {
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
}

impl From<NeutralSpec> for RawNeutral {
    fn from(n: NeutralSpec) -> Self {
        match n {
            NeutralSpec::FourWire { rho } => RawNeutral {
                mode: "four_wire".into(),
                rho: Some(rho),
            },
            NeutralSpec::ThreeWire => RawNeutral {
                mode: "three_wire".into(),
                rho: None,
            },
        }
    }
}

impl RawNeutral {
    fn resolve(&self) -> Result<NeutralSpec, InputError> {
        match (self.mode.as_str(), self.rho) {
            ("four_wire", Some(rho)) if rho.is_finite() && rho >= 0.0 => {
                Ok(NeutralSpec::FourWire { rho })
            }
            ("four_wire", Some(rho)) => Err(InputError::new(
                "neutral.rho",
                format!("must be finite and >= 0, got {rho}"),
            )),
            ("four_wire", None) => Err(InputError::new(
                "neutral.rho",
                "missing field `rho` (required when mode is \"four_wire\")",
            )),
            ("three_wire", None) => Ok(NeutralSpec::ThreeWire),
            ("three_wire", Some(_)) => Err(InputError::new(
                "neutral.rho",
                "not allowed when mode is \"three_wire\"",
            )),
            (other, _) => Err(InputError::new(
                "neutral.mode",
                format!("unknown mode `{other}`, expected `four_wire` or `three_wire`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub schema_version: u32,
    pub label: String,
    pub frequency_hz: f64,
    pub unit_system: UnitSystemTag,
    pub voltages: [PolarEntry; 3],
    pub currents: [PolarEntry; 3],
    pub neutral: NeutralSpec,
}

impl InputDocument {
    pub fn to_request(&self) -> AnalysisRequest {
        let triple = |e: &[PolarEntry; 3], unit| {
            PhasorTriple::from_polar_deg(e.map(|p| (p.mag, p.angle_deg)), unit)
        };
        AnalysisRequest {
            label: self.label.clone(),
            voltages: triple(&self.voltages, Unit::Volt),
            currents: triple(&self.currents, Unit::Ampere),
            neutral: self.neutral.into(),
            frequency: self.frequency_hz,
            unit_system: self.unit_system.into(),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            schema_version: self.schema_version,
            label: self.label.clone(),
            frequency_hz: self.frequency_hz,
            unit_system: self.unit_system,
            voltages: self.voltages.to_vec(),
            currents: self.currents.to_vec(),
            neutral: self.neutral.into(),
        };
        serde_json::to_string_pretty(&raw).expect("document serializes")
    }
}

pub fn parse_input(bytes: &[u8]) -> Result<InputDocument, InputError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| InputError::new("<document>", format!("not valid UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "<document>".to_string() } else { path };
        InputError::new(field, e.into_inner().to_string())
    })?;

    if raw.schema_version != SCHEMA_VERSION {
        return Err(InputError::new(
            "schema_version",
            format!(
                "unsupported version {}, expected {SCHEMA_VERSION}",
                raw.schema_version
            ),
        ));
    }
    if !(raw.frequency_hz.is_finite() && raw.frequency_hz > 0.0) {
        return Err(InputError::new(
            "frequency_hz",
            format!("must be > 0, got {}", raw.frequency_hz),
        ));
    }
    let neutral = raw.neutral.resolve()?;
    let voltages = phasor_array("voltages", &raw.voltages)?;
    let currents = phasor_array("currents", &raw.currents)?;

    Ok(InputDocument {
        schema_version: raw.schema_version,
        label: raw.label,
        frequency_hz: raw.frequency_hz,
        unit_system: raw.unit_system,
        voltages,
        currents,
        neutral,
    })
}

fn phasor_array(field: &str, entries: &[PolarEntry]) -> Result<[PolarEntry; 3], InputError> {
    let array: [PolarEntry; 3] = entries.try_into().map_err(|_| {
        InputError::new(
            field,
            format!("expected exactly 3 entries, found {}", entries.len()),
        )
    })?;
    for (k, e) in array.iter().enumerate() {
        if !(e.mag.is_finite() && e.mag >= 0.0) {
            return Err(InputError::new(
                format!("{field}[{k}].mag"),
                format!("magnitude must be finite and >= 0, got {}", e.mag),
            ));
        }
        if !e.angle_deg.is_finite() {
            return Err(InputError::new(
                format!("{field}[{k}].angle_deg"),
                "angle must be finite",
            ));
        }
    }
    Ok(array)
}
