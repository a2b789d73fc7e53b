//! Exact enumerators and Monte Carlo estimators: the quantum oracle for
//! singlet pair probabilities, correlation estimation and angle sweeps,
//! CHSH evaluation (exhaustive and sampled), no-signaling tests, and the
//! tripartite signaling attack.

mod chsh;
mod estimator;
mod monogamy;
mod nosignal;

pub use chsh::{
    chsh_local_deterministic, chsh_local_deterministic_max, chsh_pr_box_exhaustive,
    chsh_protocol, optimal_singlet_settings, predicted_singlet_s, ChshMethod, ChshResult,
    ChshSettings, LocalStrategy,
};
pub use estimator::{
    estimate_correlation, sweep_correlation, tally_protocol, RunTally, SweepPoint,
};
pub use monogamy::{monogamy_attack, monogamy_attack_exhaustive, monogamy_control};
pub use nosignal::{no_signaling_test, systematic_variants, MarginalSide, NoSignalingReport};

use std::f64::consts::PI;

use crate::core::Bit;
use crate::protocols::{MeasurementPair, ProtocolId};

/// The quantum prediction for one joint outcome of projective measurements
/// on a singlet: `P(A, B) = (1 − (−1)^(A⊕B) · ν_A·ν_B) / 4`.
///
/// The four entries sum to 1 and both marginals are exactly 1/2; summing
/// the two unequal outcomes recovers `P(A≠B) = (1 + ν_A·ν_B)/2`.
pub fn quantum_pair_probability(pair: &MeasurementPair, a: Bit, b: Bit) -> f64 {
    let sign = if a == b { 1.0 } else { -1.0 };
    (1.0 - sign * pair.dot()) / 4.0
}

/// The predicted `P(A≠B)` for a protocol at the given settings.
///
/// The singlet protocols follow the quantum curve `(1 + ν_A·ν_B)/2`. The
/// baseline follows the random-hyperplane law: a uniform λ1 separates two
/// directions at angle θ with probability θ/π, and the baseline's built-in
/// output flip keys Bob to −ν_B, so `P(A≠B) = 1 − θ/π` with θ measured
/// between ν_A and ν_B. The two laws agree at θ ∈ {0, π/2, π} and nowhere
/// else.
pub fn predicted_p_unequal(protocol: ProtocolId, pair: &MeasurementPair) -> f64 {
    match protocol {
        ProtocolId::PrSinglet | ProtocolId::TonerBacon => (1.0 + pair.dot()) / 2.0,
        ProtocolId::LhvBaseline => 1.0 - pair.angle() / PI,
    }
}

/// Standard error of a proportion at the *predicted* value: the yardstick
/// for accepting an estimate. Zero at deterministic predictions.
pub fn predicted_std_error(p_pred: f64, n: u64) -> f64 {
    (p_pred * (1.0 - p_pred) / n as f64).sqrt()
}

/// Deviation of an estimate from its prediction in predicted-σ units.
///
/// Where the prediction is deterministic (σ = 0) the score is 0 for an
/// exact match and ±∞ otherwise.
pub fn z_score(p_hat: f64, p_pred: f64, n: u64) -> f64 {
    let se = predicted_std_error(p_pred, n);
    if se == 0.0 {
        if p_hat == p_pred {
            0.0
        } else if p_hat > p_pred {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    } else {
        (p_hat - p_pred) / se
    }
}

/// A Monte Carlo estimate of `P(A≠B)` and the derived ±1 correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    /// Estimated `P(A≠B)`.
    pub p_unequal: f64,
    /// `E[A'·B'] = 1 − 2·p_unequal`, exactly.
    pub correlation: f64,
    pub n_samples: u64,
    /// `sqrt(p̂(1−p̂)/n)` at the observed proportion.
    pub std_error: f64,
}

impl CorrelationEstimate {
    pub fn from_counts(unequal: u64, n: u64) -> CorrelationEstimate {
        assert!(n > 0, "estimate over zero samples");
        let p = unequal as f64 / n as f64;
        CorrelationEstimate {
            p_unequal: p,
            correlation: 1.0 - 2.0 * p,
            n_samples: n,
            std_error: (p * (1.0 - p) / n as f64).sqrt(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::UnitVector3;

    #[test]
    fn pair_probability_examples() {
        let z = UnitVector3::Z_AXIS;
        let antipodal = MeasurementPair::new(z, -z);
        assert_eq!(quantum_pair_probability(&antipodal, Bit::ZERO, Bit::ONE), 0.0);

        let orthogonal = MeasurementPair::new(z, UnitVector3::X_AXIS);
        for a in [Bit::ZERO, Bit::ONE] {
            for b in [Bit::ZERO, Bit::ONE] {
                assert_eq!(quantum_pair_probability(&orthogonal, a, b), 0.25);
            }
        }

        // dot = 1/2 at θ = π/3: the unequal outcomes carry (1+1/2)/4 each.
        let pair = MeasurementPair::from_angle(PI / 3.0);
        let p01 = quantum_pair_probability(&pair, Bit::ZERO, Bit::ONE);
        assert!((p01 - 0.375).abs() < 1e-12);
    }

    #[test]
    fn pair_probability_is_normalized_with_uniform_marginals() {
        for k in 0..=20 {
            let pair = MeasurementPair::from_angle(k as f64 * PI / 20.0);
            let p: [[f64; 2]; 2] = [
                [
                    quantum_pair_probability(&pair, Bit::ZERO, Bit::ZERO),
                    quantum_pair_probability(&pair, Bit::ZERO, Bit::ONE),
                ],
                [
                    quantum_pair_probability(&pair, Bit::ONE, Bit::ZERO),
                    quantum_pair_probability(&pair, Bit::ONE, Bit::ONE),
                ],
            ];
            let total: f64 = p.iter().flatten().sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!((p[0][0] + p[0][1] - 0.5).abs() < 1e-12);
            assert!((p[0][0] + p[1][0] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn predictions_at_reference_angles() {
        let singlet = |theta: f64| {
            predicted_p_unequal(ProtocolId::PrSinglet, &MeasurementPair::from_angle(theta))
        };
        let baseline = |theta: f64| {
            predicted_p_unequal(ProtocolId::LhvBaseline, &MeasurementPair::from_angle(theta))
        };
        assert_eq!(singlet(0.0), 1.0);
        assert_eq!(singlet(PI), 0.0);
        assert!((singlet(PI / 3.0) - 0.75).abs() < 1e-12);
        assert_eq!(baseline(0.0), 1.0);
        assert_eq!(baseline(PI), 0.0);
        assert!((baseline(PI / 2.0) - 0.5).abs() < 1e-12);
        assert!((baseline(PI / 3.0) - 2.0 / 3.0).abs() < 1e-12);
        // The two protocols' predictions coincide for every pair.
        for k in 0..=12 {
            let pair = MeasurementPair::from_angle(k as f64 * PI / 12.0);
            assert_eq!(
                predicted_p_unequal(ProtocolId::PrSinglet, &pair),
                predicted_p_unequal(ProtocolId::TonerBacon, &pair)
            );
        }
    }

    #[test]
    fn z_score_handles_deterministic_predictions()  {
        assert_eq!(z_score(0.0, 0.0, 1000), 0.0);
        assert_eq!(z_score(0.001, 0.0, 1000), f64::INFINITY);
        assert_eq!(z_score(0.999, 1.0, 1000), f64::NEG_INFINITY);
        let z = z_score(0.52, 0.5, 10_000);
        assert!((z - 0.02 / (0.25f64 / 10_000.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn estimate_internal_consistency() {
        let e = CorrelationEstimate::from_counts(750, 1000);
        assert_eq!(e.p_unequal, 0.75);
        assert_eq!(e.correlation, 1.0 - 2.0 * 0.75);
        assert!(e.correlation.abs() <= 1.0);
        assert!((e.std_error - (0.75 * 0.25f64 / 1000.0).sqrt()).abs() < 1e-15);
    }
}
