use std::f64::consts::PI;
use std::ops::Add;

use crate::core::{chunk_rng, mix_seed};
use crate::error::{Error, Result};
use crate::exec;
use crate::protocols::{run_once, MeasurementPair, ProtocolId, RunRecord};

use super::{predicted_p_unequal, z_score, CorrelationEstimate};

/// Stream-salt namespaces. Every estimator derives its chunk streams from
/// `mix_seed(seed, salt)` so that distinct operations sharing one root
/// seed never consume the same random numbers.
pub(crate) mod salts {
    const fn salt(purpose: u64, k: u64) -> u64 {
        (purpose << 32) | k
    }

    pub const fn estimate() -> u64 {
        salt(0, 0)
    }
    pub const fn sweep(angle_index: u64) -> u64 {
        salt(1, angle_index)
    }
    pub const fn chsh_term(term_index: u64) -> u64 {
        salt(2, term_index)
    }
    pub const fn no_signaling(variant_index: u64) -> u64 {
        salt(3, variant_index)
    }
    pub const fn monogamy(kind: u64) -> u64 {
        salt(4, kind)
    }
    pub const fn equivalence() -> u64 {
        salt(5, 0)
    }
    pub const fn endpoint(kind: u64) -> u64 {
        salt(6, kind)
    }
}

/// Integer tallies over a batch of runs. Merging is plain summation
/// (min/max for the per-run resource bounds), so chunked reductions are
/// exact and order-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunTally {
    pub runs: u64,
    pub unequal: u64,
    pub alice_zero: u64,
    pub bob_zero: u64,
    pub bits_a_to_b: u64,
    pub bits_b_to_a: u64,
    pub nl_boxes: u64,
    pub min_bits_per_run: u64,
    pub max_bits_per_run: u64,
    pub min_boxes_per_run: u64,
    pub max_boxes_per_run: u64,
}

impl Default for RunTally {
    fn default() -> RunTally {
        RunTally {
            runs: 0,
            unequal: 0,
            alice_zero: 0,
            bob_zero: 0,
            bits_a_to_b: 0,
            bits_b_to_a: 0,
            nl_boxes: 0,
            min_bits_per_run: u64::MAX,
            max_bits_per_run: 0,
            min_boxes_per_run: u64::MAX,
            max_boxes_per_run: 0,
        }
    }
}

impl RunTally {
    pub fn absorb(&mut self, rec: &RunRecord) {
        let bits = rec.transcript.bits_total();
        let boxes = rec.transcript.nl_boxes_used();
        self.runs += 1;
        self.unequal += rec.outputs_differ() as u64;
        self.alice_zero += (rec.alice_out.value() == 0) as u64;
        self.bob_zero += (rec.bob_out.value() == 0) as u64;
        self.bits_a_to_b += rec.transcript.bits_a_to_b();
        self.bits_b_to_a += rec.transcript.bits_b_to_a();
        self.nl_boxes += boxes;
        self.min_bits_per_run = self.min_bits_per_run.min(bits);
        self.max_bits_per_run = self.max_bits_per_run.max(bits);
        self.min_boxes_per_run = self.min_boxes_per_run.min(boxes);
        self.max_boxes_per_run = self.max_boxes_per_run.max(boxes);
    }

    pub fn p_unequal(&self) -> f64 {
        self.unequal as f64 / self.runs as f64
    }

    /// Bits communicated per run, when every run used the same amount.
    pub fn uniform_bits_per_run(&self) -> Option<u64> {
        (self.runs > 0 && self.min_bits_per_run == self.max_bits_per_run)
            .then_some(self.max_bits_per_run)
    }

    /// Boxes consumed per run, when every run used the same amount.
    pub fn uniform_boxes_per_run(&self) -> Option<u64> {
        (self.runs > 0 && self.min_boxes_per_run == self.max_boxes_per_run)
            .then_some(self.max_boxes_per_run)
    }
}

impl Add for RunTally {
    type Output = RunTally;

    fn add(self, other: RunTally) -> RunTally {
        RunTally {
            runs: self.runs + other.runs,
            unequal: self.unequal + other.unequal,
            alice_zero: self.alice_zero + other.alice_zero,
            bob_zero: self.bob_zero + other.bob_zero,
            bits_a_to_b: self.bits_a_to_b + other.bits_a_to_b,
            bits_b_to_a: self.bits_b_to_a + other.bits_b_to_a,
            nl_boxes: self.nl_boxes + other.nl_boxes,
            min_bits_per_run: self.min_bits_per_run.min(other.min_bits_per_run),
            max_bits_per_run: self.max_bits_per_run.max(other.max_bits_per_run),
            min_boxes_per_run: self.min_boxes_per_run.min(other.min_boxes_per_run),
            max_boxes_per_run: self.max_boxes_per_run.max(other.max_boxes_per_run),
        }
    }
}

pub(crate) fn tally_salted(
    protocol: ProtocolId,
    pair: &MeasurementPair,
    n: u64,
    seed: u64,
    salt: u64,
) -> RunTally {
    let stream_seed = mix_seed(seed, salt);
    exec::reduce_chunks(n, |chunk| {
        let mut rng = chunk_rng(stream_seed, chunk.index);
        let mut tally = RunTally::default();
        for _ in 0..chunk.len {
            tally.absorb(&run_once(protocol, pair, &mut rng, seed));
        }
        tally
    })
}

/// Runs the protocol `n` times with independent shared randomness and
/// returns the full tally: outcome counts plus exact resource usage.
/// Deterministic given `(protocol, pair, n, seed)` for any worker count.
pub fn tally_protocol(
    protocol: ProtocolId,
    pair: &MeasurementPair,
    n: u64,
    seed: u64,
) -> Result<RunTally> {
    if n == 0 {
        return Err(Error::Usage("sample count must be at least 1".to_owned()));
    }
    Ok(tally_salted(protocol, pair, n, seed, salts::estimate()))
}

/// Estimates `P(A≠B)` for the protocol at the given settings.
pub fn estimate_correlation(
    protocol: ProtocolId,
    pair: &MeasurementPair,
    n: u64,
    seed: u64,
) -> Result<CorrelationEstimate> {
    let tally = tally_protocol(protocol, pair, n, seed)?;
    Ok(CorrelationEstimate::from_counts(tally.unequal, tally.runs))
}

/// One row of a correlation sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub theta: f64,
    pub estimate: CorrelationEstimate,
    pub prediction: f64,
    pub z_score: f64,
    pub bits_per_run: u64,
    pub boxes_per_run: u64,
}

/// Sweeps `P(A≠B)` across `n_angles` settings θ evenly spaced on [0, π],
/// with Alice fixed along ẑ and Bob at angle θ in the xz-plane. The
/// prediction column is the protocol's own law; each angle draws from its
/// own stream.
pub fn sweep_correlation(
    protocol: ProtocolId,
    n_angles: u64,
    n_per_angle: u64,
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    if n_angles < 2 {
        return Err(Error::Usage("a sweep needs at least 2 angles".to_owned()));
    }
    if n_per_angle == 0 {
        return Err(Error::Usage("sample count must be at least 1".to_owned()));
    }
    let mut rows = Vec::with_capacity(n_angles as usize);
    for k in 0..n_angles {
        let theta = k as f64 * PI / (n_angles - 1) as f64;
        let pair = MeasurementPair::from_angle(theta);
        let tally = tally_salted(protocol, &pair, n_per_angle, seed, salts::sweep(k));
        let estimate = CorrelationEstimate::from_counts(tally.unequal, tally.runs);
        let prediction = predicted_p_unequal(protocol, &pair);
        rows.push(SweepPoint {
            theta,
            estimate,
            prediction,
            z_score: z_score(estimate.p_unequal, prediction, n_per_angle),
            bits_per_run: tally.uniform_bits_per_run().unwrap_or(u64::MAX),
            boxes_per_run: tally.uniform_boxes_per_run().unwrap_or(u64::MAX),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimator_rejects_zero_samples() {
        let pair = MeasurementPair::from_angle(1.0);
        assert!(matches!(
            estimate_correlation(ProtocolId::PrSinglet, &pair, 0, 1),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            sweep_correlation(ProtocolId::PrSinglet, 1, 100, 1),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn estimates_are_deterministic_and_seed_sensitive() {
        let pair = MeasurementPair::from_angle(1.3);
        let a = estimate_correlation(ProtocolId::PrSinglet, &pair, 40_000, 99).unwrap();
        let b = estimate_correlation(ProtocolId::PrSinglet, &pair, 40_000, 99).unwrap();
        let c = estimate_correlation(ProtocolId::PrSinglet, &pair, 40_000, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.p_unequal, c.p_unequal);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let pair = MeasurementPair::from_angle(0.9);
        let baseline =
            exec::with_workers(1, || tally_protocol(ProtocolId::PrSinglet, &pair, 50_000, 7))
                .unwrap();
        for workers in [0, 2, 3] {
            let tally = exec::with_workers(workers, || {
                tally_protocol(ProtocolId::PrSinglet, &pair, 50_000, 7)
            })
            .unwrap();
            assert_eq!(tally, baseline);
        }
    }

    #[test]
    fn tally_tracks_uniform_resource_usage() {
        let pair = MeasurementPair::from_angle(2.1);
        let pr = tally_protocol(ProtocolId::PrSinglet, &pair, 10_000, 5).unwrap();
        assert_eq!(pr.uniform_bits_per_run(), Some(0));
        assert_eq!(pr.uniform_boxes_per_run(), Some(1));
        let tb = tally_protocol(ProtocolId::TonerBacon, &pair, 10_000, 5).unwrap();
        assert_eq!(tb.uniform_bits_per_run(), Some(1));
        assert_eq!(tb.uniform_boxes_per_run(), Some(0));
        assert_eq!(tb.bits_a_to_b, 10_000);
        assert_eq!(tb.bits_b_to_a, 0);
        let lhv = tally_protocol(ProtocolId::LhvBaseline, &pair, 10_000, 5).unwrap();
        assert_eq!(lhv.uniform_bits_per_run(), Some(0));
        assert_eq!(lhv.uniform_boxes_per_run(), Some(0));
    }

    #[test]
    fn singlet_estimate_tracks_quantum_curve_at_pi_thirds() {
        // P(A≠B) = 3/4 at θ = π/3; 40k samples keep the test quick, the
        // acceptance suite covers the full-n version.
        let pair = MeasurementPair::from_angle(PI / 3.0);
        for protocol in [ProtocolId::PrSinglet, ProtocolId::TonerBacon] {
            let est = estimate_correlation(protocol, &pair, 40_000, 21).unwrap();
            let z = z_score(est.p_unequal, 0.75, est.n_samples);
            assert!(z.abs() <= 5.0, "{protocol}: z = {z}");
        }
    }

    #[test]
    fn lhv_estimate_tracks_hyperplane_law() {
        let pair = MeasurementPair::from_angle(PI / 3.0);
        let est = estimate_correlation(ProtocolId::LhvBaseline, &pair, 40_000, 22).unwrap();
        let z = z_score(est.p_unequal, 2.0 / 3.0, est.n_samples);
        assert!(z.abs() <= 5.0, "z = {z}");
    }

    #[test]
    fn sweep_rows_cover_the_grid_with_deterministic_endpoints() {
        let rows = sweep_correlation(ProtocolId::PrSinglet, 13, 2_000, 42).unwrap();
        assert_eq!(rows.len(), 13);
        assert_eq!(rows[0].theta, 0.0);
        assert!((rows[12].theta - PI).abs() < 1e-15);
        assert_eq!(rows[0].estimate.p_unequal, 1.0);
        assert_eq!(rows[0].z_score, 0.0);
        assert_eq!(rows[12].estimate.p_unequal, 0.0);
        assert_eq!(rows[12].z_score, 0.0);
        for row in &rows {
            assert_eq!(row.bits_per_run, 0);
            assert_eq!(row.boxes_per_run, 1);
        }
    }
}
