//! Phasor scalars and ordered phasor triples.
//!
//! Phasors are stored in rectangular form. Polar form (magnitude, degrees)
//! only appears at the I/O boundary through [`from_polar_deg`] and
//! [`to_polar_deg`].

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{CvpError, Result};

/// An rms phasor, `|X|∠θ`, in rectangular form.
pub type Phasor = Complex64;

/// Physical unit carried by a phasor triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Volt,
    Ampere,
    VoltAmpere,
    Dimensionless,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Volt => "V",
            Unit::Ampere => "A",
            Unit::VoltAmpere => "VA",
            Unit::Dimensionless => "",
        }
    }
}

/// Builds a phasor from an rms magnitude and an angle in degrees.
pub fn from_polar_deg(magnitude: f64, angle_deg: f64) -> Phasor {
    Complex64::from_polar(magnitude, angle_deg.to_radians())
}

/// Magnitude and angle in degrees, with the angle normalized to (−180°, 180°].
pub fn to_polar_deg(z: Phasor) -> (f64, f64) {
    (z.norm(), normalize_deg(z.arg().to_degrees()))
}

/// Maps an angle in degrees onto (−180°, 180°].
pub fn normalize_deg(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(360.0);
    if wrapped > 180.0 {
        wrapped - 360.0
    } else {
        wrapped
    }
}

/// Shortest-arc distance between two angles in degrees, in [0°, 180°].
pub fn angle_distance_deg(a: f64, b: f64) -> f64 {
    normalize_deg(a - b).abs()
}

/// Ordered 3-vector of phasors (phase 1, 2, 3) with a unit tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasorTriple {
    components: [Phasor; 3],
    unit: Unit,
}

impl PhasorTriple {
    pub const fn new(components: [Phasor; 3], unit: Unit) -> Self {
        Self { components, unit }
    }

    /// Builds a triple from `(magnitude, angle_deg)` pairs.
    pub fn from_polar_deg(polar: [(f64, f64); 3], unit: Unit) -> Self {
        Self::new(polar.map(|(m, a)| from_polar_deg(m, a)), unit)
    }

    pub fn zero(unit: Unit) -> Self {
        Self::new([Complex64::new(0.0, 0.0); 3], unit)
    }

    /// `value · 1`, the same phasor on every phase.
    pub fn uniform(value: Phasor, unit: Unit) -> Self {
        Self::new([value; 3], unit)
    }

    pub fn components(&self) -> &[Phasor; 3] {
        &self.components
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn with_unit(self, unit: Unit) -> Self {
        Self { unit, ..self }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Phasor> {
        self.components.iter()
    }

    /// `X̄₁ + X̄₂ + X̄₃`.
    pub fn sum(&self) -> Phasor {
        self.components.iter().sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Euclidean norm `√(Σ|x_k|²)`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.components.map(|c| c.conj()), self.unit)
    }

    pub fn scale(&self, factor: Phasor) -> Self {
        Self::new(self.components.map(|c| c * factor), self.unit)
    }

    pub fn map(&self, f: impl FnMut(Phasor) -> Phasor) -> Self {
        Self::new(self.components.map(f), self.unit)
    }

    pub fn is_finite(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn ensure_finite(&self, what: &str) -> Result<()> {
        match self.components.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            None => Ok(()),
            Some(k) => Err(CvpError::InvalidInput(format!(
                "{what}[{}] is not finite: {}",
                k + 1,
                self.components[k]
            ))),
        }
    }

    /// `(magnitude, angle_deg)` per component.
    pub fn to_polar_deg(&self) -> [(f64, f64); 3] {
        self.components.map(to_polar_deg)
    }
}

impl Index<usize> for PhasorTriple {
    type Output = Phasor;

    fn index(&self, index: usize) -> &Phasor {
        &self.components[index]
    }
}

impl Add for PhasorTriple {
    type Output = PhasorTriple;

    fn add(self, rhs: PhasorTriple) -> PhasorTriple {
        let mut out = self.components;
        for (o, r) in out.iter_mut().zip(rhs.components) {
            *o += r;
        }
        PhasorTriple::new(out, self.unit)
    }
}

impl Sub for PhasorTriple {
    type Output = PhasorTriple;

    fn sub(self, rhs: PhasorTriple) -> PhasorTriple {
        self + (-rhs)
    }
}

impl Neg for PhasorTriple {
    type Output = PhasorTriple;

    fn neg(self) -> PhasorTriple {
        self.map(|c| -c)
    }
}

impl Mul<f64> for PhasorTriple {
    type Output = PhasorTriple;

    fn mul(self, rhs: f64) -> PhasorTriple {
        self.map(|c| c * rhs)
    }
}

impl fmt::Display for PhasorTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = self.unit.symbol();
        write!(f, "[")?;
        for (k, (m, a)) in self.to_polar_deg().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m:.6}∠{a:.3}°")?;
        }
        write!(f, "]")?;
        if !unit.is_empty() {
            write!(f, " {unit}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_normalize_into_half_open_interval() {
        assert_eq!(normalize_deg(180.0), 180.0);
        assert_eq!(normalize_deg(-180.0), 180.0);
        assert_eq!(normalize_deg(540.0), 180.0);
        assert!((normalize_deg(250.893) - (-109.107)).abs() < 1e-12);
        assert_eq!(normalize_deg(0.0), 0.0);
    }

    #[test]
    fn shortest_arc_handles_wraparound() {
        assert!(angle_distance_deg(-109.107, 250.893) < 1e-12);
        assert!((angle_distance_deg(179.0, -179.0) - 2.0).abs() < 1e-12);
        assert!((angle_distance_deg(10.0, -10.0) - 20.0).abs() < 1e-12);
    }

    #[test]
    fn polar_round_trip() {
        let z = from_polar_deg(3.985, 53.214);
        let (m, a) = to_polar_deg(z);
        assert!((m - 3.985).abs() < 1e-12);
        assert!((a - 53.214).abs() < 1e-10);
    }

    #[test]
    fn norm_is_euclidean() {
        let x = PhasorTriple::new(
            [
                Complex64::new(3.0, 4.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -12.0),
            ],
            Unit::Volt,
        );
        assert_eq!(x.norm(), 13.0);
        assert_eq!(x.sum(), Complex64::new(3.0, -8.0));
    }

    #[test]
    fn non_finite_component_is_reported_by_position() {
        let x = PhasorTriple::new(
            [
                Complex64::new(1.0, 0.0),
                Complex64::new(f64::NAN, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            Unit::Ampere,
        );
        let err = x.ensure_finite("I").unwrap_err();
        assert!(matches!(err, CvpError::InvalidInput(ref m) if m.starts_with("I[2]")));
    }
}
