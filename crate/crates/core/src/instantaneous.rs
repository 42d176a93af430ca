//! Time-domain synthesis and the double-frequency structure of the
//! cross-phase term `d(t) = v(t) × i(t)`.
//!
//! Phasors map to waveforms with the sine reference,
//! `x_k(t) = √2 |X̄_k| sin(ωt + arg X̄_k)`. Under that convention the
//! oscillatory part of each `d_k` is `−Re{D̄_k e^{j2ωt}}`, i.e. a cosine of
//! amplitude `|D̄_k|` at phase `arg D̄_k + 180°`. The phase reported by
//! [`decompose_cross_term`] is the fitted one.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{CvpError, Result};
use crate::phasor::{normalize_deg, PhasorTriple};
use crate::power::CvpResult;

pub const MIN_SAMPLES_PER_CYCLE: usize = 16;

/// Uniform sampling grid covering an integer number of fundamental cycles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveformGrid {
    pub frequency: f64,
    pub samples_per_cycle: usize,
    pub cycles: usize,
}

impl Default for WaveformGrid {
    fn default() -> Self {
        Self {
            frequency: 50.0,
            samples_per_cycle: 256,
            cycles: 2,
        }
    }
}

impl WaveformGrid {
    pub fn new(frequency: f64, samples_per_cycle: usize, cycles: usize) -> Result<Self> {
        let grid = Self {
            frequency,
            samples_per_cycle,
            cycles,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(CvpError::InvalidConfig(format!(
                "frequency must be finite and > 0, got {}",
                self.frequency
            )));
        }
        if self.samples_per_cycle < MIN_SAMPLES_PER_CYCLE {
            return Err(CvpError::InvalidConfig(format!(
                "samples per cycle must be >= {MIN_SAMPLES_PER_CYCLE}, got {}",
                self.samples_per_cycle
            )));
        }
        if self.cycles == 0 {
            return Err(CvpError::InvalidConfig("cycles must be >= 1".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.samples_per_cycle * self.cycles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time_step(&self) -> f64 {
        1.0 / (self.frequency * self.samples_per_cycle as f64)
    }

    pub fn omega(&self) -> f64 {
        2.0 * PI * self.frequency
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let dt = self.time_step();
        (0..self.len()).map(move |n| n as f64 * dt)
    }

    /// Fundamental phase `ωt` of sample `n`, computed from the sample index
    /// so that it is exact over whole cycles.
    fn phase(&self, n: usize) -> f64 {
        2.0 * PI * (n % self.samples_per_cycle) as f64 / self.samples_per_cycle as f64
    }
}

/// Sampled three-phase waveforms.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveformSet {
    pub t: Vec<f64>,
    pub v: [Vec<f64>; 3],
    pub i: [Vec<f64>; 3],
    /// `p(t) = Σ v_k i_k`.
    pub p: Vec<f64>,
    /// `d(t) = v(t) × i(t)`.
    pub d: [Vec<f64>; 3],
}

impl WaveformSet {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

pub fn synthesize(v: &PhasorTriple, i: &PhasorTriple, grid: &WaveformGrid) -> Result<WaveformSet> {
    grid.validate()?;
    v.ensure_finite("V")?;
    i.ensure_finite("I")?;

    let n = grid.len();
    let wave = |x: &PhasorTriple| -> [Vec<f64>; 3] {
        x.components().map(|c| {
            let (amp, arg) = (SQRT_2 * c.norm(), c.arg());
            (0..n).map(|s| amp * (grid.phase(s) + arg).sin()).collect()
        })
    };
    let vw = wave(v);
    let iw = wave(i);

    let mut p = Vec::with_capacity(n);
    let mut d: [Vec<f64>; 3] = Default::default();
    for s in 0..n {
        let vs = [vw[0][s], vw[1][s], vw[2][s]];
        let is = [iw[0][s], iw[1][s], iw[2][s]];
        p.push(vs[0] * is[0] + vs[1] * is[1] + vs[2] * is[2]);
        d[0].push(vs[1] * is[2] - vs[2] * is[1]);
        d[1].push(vs[2] * is[0] - vs[0] * is[2]);
        d[2].push(vs[0] * is[1] - vs[1] * is[0]);
    }

    Ok(WaveformSet {
        t: grid.times().collect(),
        v: vw,
        i: iw,
        p,
        d,
    })
}

/// Mean and 2ω content of each `d_k(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossTermDecomposition {
    /// Time average `⟨d_k⟩` (VA).
    pub mean: [f64; 3],
    /// Fitted 2ω amplitude `D_k` (VA).
    pub amplitude: [f64; 3],
    /// Fitted phase `ψ_k` of `D_k cos(2ωt + ψ_k)`, degrees in (−180, 180].
    pub phase_deg: [f64; 3],
    /// Discrete rms of the oscillatory part `d̃_k` (VA).
    pub sigma: [f64; 3],
    /// `√(Σ σ_k²)` (VA).
    pub sigma_d: f64,
    /// rms of `d̃_k − fit` per component.
    pub fit_residual: [f64; 3],
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Least-squares fit of `A cos(2ωt) + B sin(2ωt)` to `d̃_k(t)` for each
/// component, plus mean and rms.
pub fn decompose_cross_term(w: &WaveformSet, grid: &WaveformGrid) -> Result<CrossTermDecomposition> {
    grid.validate()?;
    check_coverage(w, grid)?;

    let mut out = CrossTermDecomposition {
        mean: [0.0; 3],
        amplitude: [0.0; 3],
        phase_deg: [0.0; 3],
        sigma: [0.0; 3],
        sigma_d: 0.0,
        fit_residual: [0.0; 3],
    };
    let basis: Vec<(f64, f64)> = (0..w.len())
        .map(|n| {
            let x = 2.0 * grid.phase(n);
            (x.cos(), x.sin())
        })
        .collect();

    for k in 0..3 {
        let dk = &w.d[k];
        let m = mean(dk);
        let osc: Vec<f64> = dk.iter().map(|x| x - m).collect();

        // Normal equations [cc cs; cs ss][A B]ᵀ = [yc ys]ᵀ.
        let (mut cc, mut cs, mut ss, mut yc, mut ys) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for ((c, s), y) in basis.iter().zip(&osc) {
            cc += c * c;
            cs += c * s;
            ss += s * s;
            yc += y * c;
            ys += y * s;
        }
        let det = cc * ss - cs * cs;
        let a = (yc * ss - ys * cs) / det;
        let b = (ys * cc - yc * cs) / det;

        let resid_sq: f64 = basis
            .iter()
            .zip(&osc)
            .map(|((c, s), y)| (y - (a * c + b * s)).powi(2))
            .sum();

        out.mean[k] = m;
        out.amplitude[k] = a.hypot(b);
        // A cos x + B sin x = R cos(x + ψ) with R cos ψ = A, R sin ψ = −B.
        out.phase_deg[k] = normalize_deg((-b).atan2(a).to_degrees());
        out.sigma[k] = (osc.iter().map(|y| y * y).sum::<f64>() / osc.len() as f64).sqrt();
        out.fit_residual[k] = (resid_sq / osc.len() as f64).sqrt();
    }
    out.sigma_d = out.sigma.iter().map(|s| s * s).sum::<f64>().sqrt();
    Ok(out)
}

fn check_coverage(w: &WaveformSet, grid: &WaveformGrid) -> Result<()> {
    let n = w.len();
    let lengths_agree = w.p.len() == n
        && w.v.iter().chain(&w.i).chain(&w.d).all(|x| x.len() == n);
    if !lengths_agree {
        return Err(CvpError::InvalidConfig(
            "waveform arrays have inconsistent lengths".into(),
        ));
    }
    if n == 0 || !n.is_multiple_of(grid.samples_per_cycle) {
        return Err(CvpError::InvalidConfig(format!(
            "waveform of {n} samples does not cover an integer number of {}-sample cycles",
            grid.samples_per_cycle
        )));
    }
    Ok(())
}

/// `|⟨p⟩ − P|` over the sampled window.
pub fn verify_mean_power(w: &WaveformSet, expected: &CvpResult) -> f64 {
    if w.p.is_empty() {
        return expected.p.abs();
    }
    (mean(&w.p) - expected.p).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasor::{angle_distance_deg, to_polar_deg, Unit};
    use crate::power::{cross_unbalance, cvp};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn balanced(unit: Unit) -> PhasorTriple {
        PhasorTriple::from_polar_deg([(1.0, 0.0), (1.0, -120.0), (1.0, 120.0)], unit)
    }

    fn example1() -> (PhasorTriple, PhasorTriple) {
        (
            balanced(Unit::Volt),
            PhasorTriple::from_polar_deg([(1.0, -90.0), (0.2, -30.0), (0.8, -150.0)], Unit::Ampere),
        )
    }

    fn grid() -> WaveformGrid {
        WaveformGrid::new(50.0, 256, 2).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(WaveformGrid::new(50.0, 15, 1).is_err());
        assert!(WaveformGrid::new(50.0, 16, 0).is_err());
        assert!(WaveformGrid::new(0.0, 64, 1).is_err());
        assert!(WaveformGrid::new(f64::NAN, 64, 1).is_err());
        let g = WaveformGrid::new(60.0, 16, 3).unwrap();
        assert_eq!(g.len(), 48);
        assert_eq!(WaveformGrid::default(), WaveformGrid::new(50.0, 256, 2).unwrap());
    }

    #[test]
    fn single_phase_unity_power() {
        let one = PhasorTriple::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], Unit::Volt);
        let g = WaveformGrid::new(1.0, 64, 1).unwrap();
        let w = synthesize(&one, &one, &g).unwrap();
        for (t, p) in w.t.iter().zip(&w.p) {
            let expected = 2.0 * (2.0 * PI * t).sin().powi(2);
            assert!((p - expected).abs() < 1e-12);
        }
        let r = cvp(&one, &one).unwrap();
        assert!(verify_mean_power(&w, &r) < 1e-12);
        assert!((mean(&w.p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_current_gives_zero_power() {
        let v = balanced(Unit::Volt);
        let i = PhasorTriple::zero(Unit::Ampere);
        let w = synthesize(&v, &i, &grid()).unwrap();
        assert!(w.p.iter().all(|&p| p == 0.0));
        assert_eq!(verify_mean_power(&w, &cvp(&v, &i).unwrap()), 0.0);
    }

    #[test]
    fn proportional_load_has_constant_cross_term() {
        let v = balanced(Unit::Volt);
        let i = v.scale(c(0.6, -0.8)).with_unit(Unit::Ampere);
        let w = synthesize(&v, &i, &grid()).unwrap();
        for dk in &w.d {
            let first = dk[0];
            assert!(dk.iter().all(|x| (x - first).abs() < 1e-12));
        }
        let dec = decompose_cross_term(&w, &grid()).unwrap();
        assert!(dec.amplitude.iter().all(|a| *a < 1e-12));
        assert!(dec.sigma_d < 1e-12);
    }

    #[test]
    fn example1_mean_power_vanishes() {
        let (v, i) = example1();
        let w = synthesize(&v, &i, &grid()).unwrap();
        assert!(mean(&w.p).abs() < 1e-12);
    }

    #[test]
    fn example1_amplitudes_match_phasor_cross() {
        let (v, i) = example1();
        let w = synthesize(&v, &i, &grid()).unwrap();
        let dec = decompose_cross_term(&w, &grid()).unwrap();
        let d = cross_unbalance(&v, &i).unwrap();
        for k in 0..3 {
            let (mag, arg) = to_polar_deg(d[k]);
            assert!((dec.amplitude[k] - mag).abs() <= 1e-9 * mag);
            assert!(dec.fit_residual[k] <= 1e-9 * mag);
            // Sine reference puts the fitted phase half a turn from arg D̄_k.
            assert!(angle_distance_deg(dec.phase_deg[k], arg + 180.0) < 1e-7);
        }
    }

    #[test]
    fn example1_equivalent_sigma_d() {
        let (v, i) = example1();
        let ie = i + PhasorTriple::uniform(i.sum() / 3.0, Unit::Ampere);
        let w = synthesize(&v, &ie, &grid()).unwrap();
        let dec = decompose_cross_term(&w, &grid()).unwrap();
        let expected = (3.0 * 35f64.sqrt() / 5.0) / SQRT_2;
        assert!((dec.sigma_d - expected).abs() <= 1e-9 * expected);
        assert!((dec.sigma_d - 2.5100).abs() < 1e-4);
    }

    #[test]
    fn partial_cycle_rejected() {
        let (v, i) = example1();
        let mut w = synthesize(&v, &i, &grid()).unwrap();
        for x in std::iter::once(&mut w.t)
            .chain(std::iter::once(&mut w.p))
            .chain(w.v.iter_mut())
            .chain(w.i.iter_mut())
            .chain(w.d.iter_mut())
        {
            x.truncate(300);
        }
        assert!(matches!(
            decompose_cross_term(&w, &grid()),
            Err(CvpError::InvalidConfig(_))
        ));
    }

    #[test]
    fn invalid_grid_rejected_by_synthesis() {
        let (v, i) = example1();
        let g = WaveformGrid {
            frequency: 50.0,
            samples_per_cycle: 4,
            cycles: 2,
        };
        assert!(matches!(synthesize(&v, &i, &g), Err(CvpError::InvalidConfig(_))));
    }

    /// Product-to-sum: ⟨2|X||Y| sin(ωt+α) sin(ωt+β)⟩ = |X||Y| cos(α−β).
    fn product_mean(x: Complex64, y: Complex64) -> f64 {
        x.norm() * y.norm() * (x.arg() - y.arg()).cos()
    }

    fn phasor() -> impl Strategy<Value = Complex64> {
        (0.0..1e3f64, -180.0..180.0f64).prop_map(|(m, a)| crate::phasor::from_polar_deg(m, a))
    }

    fn triple(unit: Unit) -> impl Strategy<Value = PhasorTriple> {
        [phasor(), phasor(), phasor()].prop_map(move |c| PhasorTriple::new(c, unit))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mean_law_matches_product_to_sum(v in triple(Unit::Volt), i in triple(Unit::Ampere)) {
            let g = WaveformGrid::new(60.0, 64, 1).unwrap();
            let w = synthesize(&v, &i, &g).unwrap();
            let dec = decompose_cross_term(&w, &g).unwrap();
            let scale = v.norm() * i.norm() + 1.0;
            for k in 0..3 {
                let (l, m) = ((k + 1) % 3, (k + 2) % 3);
                let expected = product_mean(v[l], i[m]) - product_mean(v[m], i[l]);
                prop_assert!((dec.mean[k] - expected).abs() <= 1e-9 * scale);
                // Conjugated cross form of the same quantity.
                let conj = (v[l] * i[m].conj() - v[m] * i[l].conj()).re;
                prop_assert!((dec.mean[k] - conj).abs() <= 1e-9 * scale);
            }
        }

        #[test]
        fn amplitude_and_rms_laws(v in triple(Unit::Volt), i in triple(Unit::Ampere)) {
            let g = WaveformGrid::new(50.0, 64, 2).unwrap();
            let w = synthesize(&v, &i, &g).unwrap();
            let dec = decompose_cross_term(&w, &g).unwrap();
            let d = cross_unbalance(&v, &i).unwrap();
            let scale = v.norm() * i.norm() + 1.0;
            for k in 0..3 {
                prop_assert!((dec.amplitude[k] - d[k].norm()).abs() <= 1e-9 * scale);
                prop_assert!((dec.sigma[k] - d[k].norm() / SQRT_2).abs() <= 1e-9 * scale);
                prop_assert!(dec.fit_residual[k] <= 1e-9 * scale);
                // The oscillatory part averages to zero over whole cycles.
                let m = mean(&w.d[k]);
                let osc_mean = mean(&w.d[k].iter().map(|x| x - m).collect::<Vec<_>>());
                prop_assert!(osc_mean.abs() <= 1e-12 * scale);
            }
            prop_assert!((dec.sigma_d - d.norm() / SQRT_2).abs() <= 1e-9 * scale);
            let r = cvp(&v, &i).unwrap();
            prop_assert!(verify_mean_power(&w, &r) <= 1e-9 * r.p.abs().max(1.0).max(scale));
        }
    }
}
