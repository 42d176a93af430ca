//! Dot power, cross-phase unbalance and the complex-vector power.

use num_complex::Complex64;

use crate::error::Result;
use crate::phasor::{Phasor, PhasorTriple, Unit};

/// `Σ_k x̄_k ȳ_k*`, no finiteness checks.
pub(crate) fn dot(x: &[Phasor; 3], y: &[Phasor; 3]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Unconjugated cyclic cross product, component k = x_ℓ y_m − x_m y_ℓ.
pub(crate) fn cross(x: &[Phasor; 3], y: &[Phasor; 3]) -> [Phasor; 3] {
    [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]
}

/// Classical complex power `V·I* = P + jQ`.
pub fn dot_power(v: &PhasorTriple, i: &PhasorTriple) -> Result<Complex64> {
    v.ensure_finite("V")?;
    i.ensure_finite("I")?;
    Ok(dot(v.components(), i.components()))
}

/// Cross-phase unbalance vector `D = V × I`.
///
/// The current is *not* conjugated: `D̄₁ = V̄₂Ī₃ − V̄₃Ī₂` and cyclic.
pub fn cross_unbalance(v: &PhasorTriple, i: &PhasorTriple) -> Result<PhasorTriple> {
    v.ensure_finite("V")?;
    i.ensure_finite("I")?;
    Ok(PhasorTriple::new(
        cross(v.components(), i.components()),
        Unit::VoltAmpere,
    ))
}

/// Complex-vector power `S = V·I* + V×I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvpResult {
    /// Active power (W).
    pub p: f64,
    /// Reactive power (var).
    pub q: f64,
    /// Cross-phase unbalance vector (VA).
    pub d: PhasorTriple,
    /// `√(P² + Q² + ‖D‖²)` (VA).
    pub s_norm: f64,
    /// Signed `P / ‖S‖`; `None` when `‖S‖ = 0`.
    pub pf: Option<f64>,
}

impl CvpResult {
    pub(crate) fn from_parts(s: Complex64, d: [Phasor; 3]) -> Self {
        let d = PhasorTriple::new(d, Unit::VoltAmpere);
        let s_norm = (s.norm_sqr() + d.norm_sqr()).sqrt();
        let pf = (s_norm > 0.0).then(|| s.re / s_norm);
        Self {
            p: s.re,
            q: s.im,
            d,
            s_norm,
            pf,
        }
    }

    pub fn complex_power(&self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }

    pub fn d_norm(&self) -> f64 {
        self.d.norm()
    }
}

pub fn cvp(v: &PhasorTriple, i: &PhasorTriple) -> Result<CvpResult> {
    v.ensure_finite("V")?;
    i.ensure_finite("I")?;
    Ok(cvp_unchecked(v.components(), i.components()))
}

pub(crate) fn cvp_unchecked(v: &[Phasor; 3], i: &[Phasor; 3]) -> CvpResult {
    CvpResult::from_parts(dot(v, i), cross(v, i))
}

/// `‖V‖²‖I‖² − |V·I*|² − Σ_{j<k} |V̄_jĪ_k − V̄_kĪ_j|²`, zero in exact arithmetic.
pub fn lagrange_residual(v: &PhasorTriple, i: &PhasorTriple) -> Result<f64> {
    v.ensure_finite("V")?;
    i.ensure_finite("I")?;
    let (x, y) = (v.components(), i.components());
    let mut pairs = 0.0;
    for j in 0..3 {
        for k in (j + 1)..3 {
            pairs += (x[j] * y[k] - x[k] * y[j]).norm_sqr();
        }
    }
    Ok(v.norm_sqr() * i.norm_sqr() - dot(x, y).norm_sqr() - pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasor::{angle_distance_deg, from_polar_deg, to_polar_deg};
    use crate::CvpError;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn balanced(unit: Unit) -> PhasorTriple {
        PhasorTriple::from_polar_deg([(1.0, 0.0), (1.0, -120.0), (1.0, 120.0)], unit)
    }

    fn example1_current() -> PhasorTriple {
        PhasorTriple::from_polar_deg([(1.0, -90.0), (0.2, -30.0), (0.8, -150.0)], Unit::Ampere)
    }

    // I_e = I + ρk Ī_N 1 with ρ = 1, k = 1/3, built by hand.
    fn example1_equivalent_current() -> PhasorTriple {
        let i = example1_current();
        i + PhasorTriple::uniform(i.sum() / 3.0, Unit::Ampere)
    }

    #[test]
    fn example1_dot_power_vanishes() {
        let s = dot_power(&balanced(Unit::Volt), &example1_current()).unwrap();
        assert!(s.norm() < 1e-15, "{s}");
    }

    #[test]
    fn single_phase_inductive() {
        let v = PhasorTriple::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], Unit::Volt);
        let i = PhasorTriple::new([from_polar_deg(2.0, -90.0), c(0.0, 0.0), c(0.0, 0.0)], Unit::Ampere);
        let s = dot_power(&v, &i).unwrap();
        assert!((s - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn example2_table_equivalents_reproduce_reported_power() {
        let v = PhasorTriple::from_polar_deg(
            [(93.07, -3.95), (91.83, -123.71), (91.19, 118.93)],
            Unit::Volt,
        );
        let i = PhasorTriple::from_polar_deg(
            [(4.0, -35.28), (2.44, -161.14), (2.89, 65.15)],
            Unit::Ampere,
        );
        let r = cvp(&v, &i).unwrap();
        // Table inputs carry 2-4 significant digits.
        assert!((r.p - 648.66).abs() / 648.66 < 0.01, "P = {}", r.p);
        assert!((r.q - 542.72).abs() / 542.72 < 0.01, "Q = {}", r.q);
        assert!((r.s_norm - 876.05).abs() / 876.05 < 0.01, "S = {}", r.s_norm);
        assert!((r.pf.unwrap() - 0.74).abs() / 0.74 < 0.01);
    }

    #[test]
    fn proportional_current_gives_zero_cross() {
        let v = balanced(Unit::Volt);
        let d = cross_unbalance(&v, &v.scale(c(2.0, 0.0))).unwrap();
        assert!(d.norm() < 1e-15);
    }

    #[test]
    fn cross_of_unit_vectors() {
        let v = PhasorTriple::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], Unit::Volt);
        let i = PhasorTriple::new([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], Unit::Ampere);
        let d = cross_unbalance(&v, &i).unwrap();
        assert_eq!(*d.components(), [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(d.unit(), Unit::VoltAmpere);
    }

    #[test]
    fn example1_equivalent_cross_matches_table() {
        let d = cross_unbalance(&balanced(Unit::Volt), &example1_equivalent_current()).unwrap();
        let expected = [
            (39f64.sqrt() / 5.0, 133.898),
            (183f64.sqrt() / 5.0, 33.67),
            (93f64.sqrt() / 5.0, -51.052),
        ];
        for (got, (mag, ang)) in d.iter().zip(expected) {
            let (m, a) = to_polar_deg(*got);
            assert!((m - mag).abs() / mag < 1e-12, "{m} vs {mag}");
            assert!(angle_distance_deg(a, ang) < 1e-3, "{a} vs {ang}");
        }
    }

    #[test]
    fn example1_cvp_is_pure_cross_phase() {
        let r = cvp(&balanced(Unit::Volt), &example1_equivalent_current()).unwrap();
        let expected = 3.0 * 35f64.sqrt() / 5.0;
        assert!(r.p.abs() < 1e-15 && r.q.abs() < 1e-15);
        assert!((r.s_norm - expected).abs() / expected < 1e-12);
        assert!((r.d_norm() - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn balanced_resistive_has_unity_pf() {
        let v = balanced(Unit::Volt);
        let r = cvp(&v, &v.with_unit(Unit::Ampere)).unwrap();
        assert!((r.p - 3.0).abs() < 1e-14);
        assert!(r.q.abs() < 1e-14);
        assert!(r.d_norm() < 1e-14);
        assert!((r.pf.unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pf_undefined_at_zero_apparent_power() {
        let z = PhasorTriple::zero(Unit::Volt);
        let r = cvp(&z, &z).unwrap();
        assert_eq!(r.s_norm, 0.0);
        assert_eq!(r.pf, None);
        assert_eq!(lagrange_residual(&z, &z).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_input_rejected() {
        let mut bad = balanced(Unit::Volt).components().to_owned();
        bad[0] = c(f64::INFINITY, 0.0);
        let bad = PhasorTriple::new(bad, Unit::Volt);
        let i = example1_current();
        assert!(matches!(dot_power(&bad, &i), Err(CvpError::InvalidInput(_))));
        assert!(matches!(cross_unbalance(&i, &bad), Err(CvpError::InvalidInput(_))));
        assert!(matches!(cvp(&bad, &i), Err(CvpError::InvalidInput(_))));
        assert!(matches!(lagrange_residual(&bad, &i), Err(CvpError::InvalidInput(_))));
    }

    /// Brute-force expansion of both sides of the Lagrange identity,
    /// written out term by term without the crate's dot/cross helpers.
    fn lagrange_sides(v: &[Complex64; 3], i: &[Complex64; 3]) -> (f64, f64) {
        let mut vv = 0.0;
        let mut ii = 0.0;
        let mut dot_re = 0.0;
        let mut dot_im = 0.0;
        for k in 0..3 {
            vv += v[k].re * v[k].re + v[k].im * v[k].im;
            ii += i[k].re * i[k].re + i[k].im * i[k].im;
            dot_re += v[k].re * i[k].re + v[k].im * i[k].im;
            dot_im += v[k].im * i[k].re - v[k].re * i[k].im;
        }
        let mut cross_sq = 0.0;
        for j in 0..3 {
            for k in 0..3 {
                if j < k {
                    let re = (v[j].re * i[k].re - v[j].im * i[k].im)
                        - (v[k].re * i[j].re - v[k].im * i[j].im);
                    let im = (v[j].re * i[k].im + v[j].im * i[k].re)
                        - (v[k].re * i[j].im + v[k].im * i[j].re);
                    cross_sq += re * re + im * im;
                }
            }
        }
        (vv * ii, dot_re * dot_re + dot_im * dot_im + cross_sq)
    }

    #[test]
    fn example1_lagrange_matches_brute_force() {
        let v = balanced(Unit::Volt);
        let i = example1_equivalent_current();
        let (lhs, rhs) = lagrange_sides(v.components(), i.components());
        // ‖V‖²‖I_e‖² = 3 · 105/25 = (3√35/5)²
        assert!((lhs - 3.0 * 105.0 / 25.0).abs() < 1e-12);
        assert!((rhs - (3.0 * 35f64.sqrt() / 5.0).powi(2)).abs() < 1e-12);
        assert!(lagrange_residual(&v, &i).unwrap().abs() < 1e-12 * lhs);
    }

    fn phasor() -> impl Strategy<Value = Complex64> {
        (0.0..1e3f64, -180.0..180.0f64).prop_map(|(m, a)| from_polar_deg(m, a))
    }

    fn triple(unit: Unit) -> impl Strategy<Value = PhasorTriple> {
        [phasor(), phasor(), phasor()].prop_map(move |c| PhasorTriple::new(c, unit))
    }

    proptest! {
        #[test]
        fn lagrange_identity_holds(v in triple(Unit::Volt), i in triple(Unit::Ampere)) {
            let scale = v.norm_sqr() * i.norm_sqr();
            let r = lagrange_residual(&v, &i).unwrap();
            prop_assert!(r.abs() <= 1e-12 * scale);
            let s = cvp(&v, &i).unwrap();
            prop_assert!((s.s_norm - v.norm() * i.norm()).abs() <= 1e-12 * v.norm() * i.norm());
        }

        #[test]
        fn additive_in_current(v in triple(Unit::Volt), i1 in triple(Unit::Ampere), i2 in triple(Unit::Ampere)) {
            let scale = v.norm() * (i1.norm() + i2.norm()) + 1.0;
            let s_sum = dot_power(&v, &(i1 + i2)).unwrap();
            let s_parts = dot_power(&v, &i1).unwrap() + dot_power(&v, &i2).unwrap();
            prop_assert!((s_sum - s_parts).norm() <= 1e-12 * scale);
            let d_sum = cross_unbalance(&v, &(i1 + i2)).unwrap();
            let d_parts = cross_unbalance(&v, &i1).unwrap() + cross_unbalance(&v, &i2).unwrap();
            prop_assert!((d_sum - d_parts).norm() <= 1e-12 * scale);
        }

        #[test]
        fn cross_is_antisymmetric(v in triple(Unit::Volt), i in triple(Unit::Ampere)) {
            let a = cross_unbalance(&v, &i).unwrap();
            let b = cross_unbalance(&i, &v).unwrap();
            prop_assert!((a + b).norm() <= 1e-12 * (v.norm() * i.norm() + 1.0));
        }

        #[test]
        fn complex_proportional_current_has_no_cross(v in triple(Unit::Volt), alpha in phasor()) {
            let i = v.scale(alpha);
            let d = cross_unbalance(&v, &i).unwrap();
            prop_assert!(d.norm() <= 1e-12 * v.norm() * i.norm() + f64::MIN_POSITIVE);
        }

        #[test]
        fn non_proportional_current_has_cross(v in triple(Unit::Volt), i in triple(Unit::Ampere)) {
            // Converse: D = 0 forces I ∥ V. Measure the distance of I from span(V).
            prop_assume!(v.norm() > 1e-3);
            let alpha = dot(i.components(), v.components()) / v.norm_sqr();
            let residual = (i - v.scale(alpha).with_unit(Unit::Ampere)).norm();
            let d = cross_unbalance(&v, &i).unwrap();
            // ‖V × I‖ = ‖V‖ · dist(I, span V) by the Lagrange identity.
            prop_assert!((d.norm() - v.norm() * residual).abs() <= 1e-9 * v.norm() * i.norm() + 1e-9);
        }
    }
}
