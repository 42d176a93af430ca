//! Shared inputs for the criterion benches.

use cvp_core::{builtin_fixtures, AnalysisRequest, PhasorTriple, Unit};

/// Deterministic, well-spread phasor pairs; no RNG so runs are comparable.
pub fn phasor_pairs(n: usize) -> Vec<(PhasorTriple, PhasorTriple)> {
    (0..n)
        .map(|s| {
            let x = s as f64;
            let v = PhasorTriple::from_polar_deg(
                [
                    (230.0 + (x * 0.37).sin() * 20.0, (x * 7.1) % 360.0),
                    (225.0 + (x * 0.53).cos() * 15.0, (x * 3.3 - 120.0) % 360.0),
                    (235.0 + (x * 0.11).sin() * 10.0, (x * 5.9 + 120.0) % 360.0),
                ],
                Unit::Volt,
            );
            let i = PhasorTriple::from_polar_deg(
                [
                    (10.0 + (x * 0.71).sin() * 5.0, (x * 2.3) % 360.0),
                    (12.0 + (x * 0.29).cos() * 4.0, (x * 4.7 - 120.0) % 360.0),
                    (8.0 + (x * 0.19).sin() * 3.0, (x * 1.9 + 120.0) % 360.0),
                ],
                Unit::Ampere,
            );
            (v, i)
        })
        .collect()
}

pub fn example_requests() -> Vec<AnalysisRequest> {
    builtin_fixtures().into_iter().map(|f| f.request).collect()
}
