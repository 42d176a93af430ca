//! Power-invariant symmetrical components.
//!
//! `A = (1/√3)·[[1, a, a²], [1, a², a], [1, 1, 1]]` with `a = e^{j2π/3}`.
//! Rows are ordered (+, −, h). `A` is unitary, so `A⁻¹ = (A*)ᵀ`.

use num_complex::Complex64;

use crate::error::Result;
use crate::phasor::{Phasor, PhasorTriple, Unit};
use crate::power::cross;

const INV_SQRT_3: f64 = 0.577_350_269_189_625_8;
const HALF_SQRT_3: f64 = 0.866_025_403_784_438_6;

const ONE: Complex64 = Complex64::new(INV_SQRT_3, 0.0);
const A1: Complex64 = Complex64::new(-0.5 * INV_SQRT_3, HALF_SQRT_3 * INV_SQRT_3);
const A2: Complex64 = Complex64::new(-0.5 * INV_SQRT_3, -HALF_SQRT_3 * INV_SQRT_3);

/// The power-invariant Fortescue matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FortescueMatrix {
    m: [[Complex64; 3]; 3],
}

impl FortescueMatrix {
    pub const POWER_INVARIANT: FortescueMatrix = FortescueMatrix {
        m: [[ONE, A1, A2], [ONE, A2, A1], [ONE, ONE, ONE]],
    };

    pub fn entries(&self) -> &[[Complex64; 3]; 3] {
        &self.m
    }

    pub fn apply(&self, x: &[Phasor; 3]) -> [Phasor; 3] {
        self.m
            .map(|row| row[0] * x[0] + row[1] * x[1] + row[2] * x[2])
    }

    /// Elementwise conjugate `A*`.
    pub fn conj(&self) -> FortescueMatrix {
        FortescueMatrix {
            m: self.m.map(|row| row.map(|c| c.conj())),
        }
    }

    pub fn transpose(&self) -> FortescueMatrix {
        let mut m = self.m;
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.m[c][r];
            }
        }
        FortescueMatrix { m }
    }

    /// `A⁻¹ = (A*)ᵀ`.
    pub fn inverse(&self) -> FortescueMatrix {
        self.conj().transpose()
    }

    pub fn mul(&self, rhs: &FortescueMatrix) -> FortescueMatrix {
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.m[r][k] * rhs.m[k][c]).sum();
            }
        }
        FortescueMatrix { m }
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entry of `|AᵀA* − 𝟙|`.
    pub fn unitarity_residual(&self) -> f64 {
        let p = self.transpose().mul(&self.conj());
        let mut worst = 0.0_f64;
        for (r, row) in p.m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((v - target).norm());
            }
        }
        worst
    }
}

/// Symmetrical components in (+, −, h) order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceTriple {
    pub plus: Phasor,
    pub minus: Phasor,
    pub homopolar: Phasor,
    pub unit: Unit,
}

impl SequenceTriple {
    pub fn from_array([plus, minus, homopolar]: [Phasor; 3], unit: Unit) -> Self {
        Self {
            plus,
            minus,
            homopolar,
            unit,
        }
    }

    pub fn to_array(&self) -> [Phasor; 3] {
        [self.plus, self.minus, self.homopolar]
    }

    /// The (+, −, h) components as a plain vector, for reuse of the dot
    /// and cross machinery in sequence coordinates.
    pub fn as_triple(&self) -> PhasorTriple {
        PhasorTriple::new(self.to_array(), self.unit)
    }

    pub fn norm(&self) -> f64 {
        self.as_triple().norm()
    }

    pub fn with_homopolar(self, homopolar: Phasor) -> Self {
        Self { homopolar, ..self }
    }
}

pub fn to_sequence(x: &PhasorTriple) -> Result<SequenceTriple> {
    x.ensure_finite("phase triple")?;
    Ok(to_sequence_unchecked(x))
}

pub(crate) fn to_sequence_unchecked(x: &PhasorTriple) -> SequenceTriple {
    SequenceTriple::from_array(
        FortescueMatrix::POWER_INVARIANT.apply(x.components()),
        x.unit(),
    )
}

pub fn from_sequence(x: &SequenceTriple) -> Result<PhasorTriple> {
    x.as_triple().ensure_finite("sequence triple")?;
    Ok(from_sequence_unchecked(x))
}

pub(crate) fn from_sequence_unchecked(x: &SequenceTriple) -> PhasorTriple {
    PhasorTriple::new(
        FortescueMatrix::POWER_INVARIANT.inverse().apply(&x.to_array()),
        x.unit,
    )
}

/// `‖(AV)×(AI) − det(A)·A*·(V×I)‖`, zero in exact arithmetic.
pub fn cross_transform_check(v: &PhasorTriple, i: &PhasorTriple) -> Result<f64> {
    v.ensure_finite("V")?;
    i.ensure_finite("I")?;
    let a = FortescueMatrix::POWER_INVARIANT;
    let lhs = cross(&a.apply(v.components()), &a.apply(i.components()));
    let det = a.det();
    let rhs = a.conj().apply(&cross(v.components(), i.components())).map(|c| det * c);
    let diff: f64 = lhs
        .iter()
        .zip(&rhs)
        .map(|(l, r)| (l - r).norm_sqr())
        .sum();
    Ok(diff.sqrt())
}
