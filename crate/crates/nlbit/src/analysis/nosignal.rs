use crate::core::{chunk_rng, mix_seed, Bit, SharedRandomness, UnitVector3};
use crate::error::{Error, Result};
use crate::protocols::{run_pr_singlet, MeasurementPair, ProtocolId};
use crate::resources::pr_from_one_bit;

use super::estimator::{salts, tally_salted};

/// Which party's marginal is being checked for dependence on the remote
/// setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalSide {
    /// Variants share ν_A; Alice's marginal must not move.
    Alice,
    /// Variants share ν_B; Bob's marginal must not move.
    Bob,
}

/// Outcome of a no-signaling test.
#[derive(Debug, Clone, PartialEq)]
pub struct NoSignalingReport {
    pub protocol: ProtocolId,
    pub side: MarginalSide,
    pub n_per_variant: u64,
    /// Estimated P(out = 0) of the checked party, one entry per variant.
    pub marginal_zero_rates: Vec<f64>,
    /// Largest pairwise difference between the rates.
    pub max_pairwise_delta: f64,
    /// 5σ allowance for the worst pair.
    pub threshold: f64,
    pub monte_carlo_pass: bool,
    /// Exact r-enumeration: per fixed (λ1, λ2, settings) the marginal over
    /// the box bit is 1/2 exactly. PR-singlet only (the other protocols
    /// have no box bit).
    pub exact_marginal_pass: Option<bool>,
    /// Exhaustive marginal of the one-bit PR simulation over λ: 1/2 for
    /// every input pair.
    pub one_bit_marginal_pass: bool,
}

impl NoSignalingReport {
    pub fn pass(&self) -> bool {
        self.monte_carlo_pass
            && self.exact_marginal_pass.unwrap_or(true)
            && self.one_bit_marginal_pass
    }
}

/// Tests that one party's output marginal is independent of the other
/// party's setting.
///
/// Every variant must share the checked party's setting; each variant's
/// P(out = 0) is estimated on its own stream and all pairwise differences
/// are compared at 5σ. For the PR protocol the exact enumeration over the
/// box bit runs alongside (1000 random (λ, settings) draws), as does the
/// exhaustive marginal check of [`pr_from_one_bit`].
pub fn no_signaling_test(
    protocol: ProtocolId,
    side: MarginalSide,
    variants: &[MeasurementPair],
    n_per_variant: u64,
    seed: u64,
) -> Result<NoSignalingReport> {
    if variants.len() < 2 {
        return Err(Error::Usage(
            "no-signaling test needs at least 2 setting variants".to_owned(),
        ));
    }
    if n_per_variant == 0 {
        return Err(Error::Usage("sample count must be at least 1".to_owned()));
    }
    let shared = match side {
        MarginalSide::Alice => variants.iter().map(|p| p.nu_a).collect::<Vec<_>>(),
        MarginalSide::Bob => variants.iter().map(|p| p.nu_b).collect::<Vec<_>>(),
    };
    if shared.iter().any(|&v| v != shared[0]) {
        return Err(Error::Usage(
            "all variants must share the checked party's setting".to_owned(),
        ));
    }

    let mut rates = Vec::with_capacity(variants.len());
    for (idx, pair) in variants.iter().enumerate() {
        let tally = tally_salted(protocol, pair, n_per_variant, seed, salts::no_signaling(idx as u64));
        let zeros = match side {
            MarginalSide::Alice => tally.alice_zero,
            MarginalSide::Bob => tally.bob_zero,
        };
        rates.push(zeros as f64 / n_per_variant as f64);
    }

    let se = |p: f64| (p * (1.0 - p) / n_per_variant as f64).sqrt();
    let mut max_delta = 0.0f64;
    let mut threshold = 0.0f64;
    let mut monte_carlo_pass = true;
    for i in 0..rates.len() {
        for j in (i + 1)..rates.len() {
            let delta = (rates[i] - rates[j]).abs();
            let pair_tol = 5.0 * (se(rates[i]).powi(2) + se(rates[j]).powi(2)).sqrt();
            if delta > max_delta {
                max_delta = delta;
                threshold = pair_tol;
            }
            if delta > pair_tol {
                monte_carlo_pass = false;
            }
        }
    }

    let exact_marginal_pass = (protocol == ProtocolId::PrSinglet)
        .then(|| exact_r_marginals_hold(1000, mix_seed(seed, salts::no_signaling(u32::MAX as u64))));

    Ok(NoSignalingReport {
        protocol,
        side,
        n_per_variant,
        marginal_zero_rates: rates,
        max_pairwise_delta: max_delta,
        threshold,
        monte_carlo_pass,
        exact_marginal_pass,
        one_bit_marginal_pass: one_bit_marginals_hold(),
    })
}

/// For `draws` random (λ1, λ2, ν_A, ν_B): averaging the PR protocol over
/// the box bit r ∈ {0,1} must give P(A=0) = P(B=0) = 1/2 exactly, i.e.
/// each output takes both values across the two r's.
pub fn exact_r_marginals_hold(draws: u64, stream_seed: u64) -> bool {
    let mut rng = chunk_rng(stream_seed, 0);
    for _ in 0..draws {
        let pair = MeasurementPair::new(
            crate::core::sample_uniform_sphere(&mut rng),
            crate::core::sample_uniform_sphere(&mut rng),
        );
        let sr = SharedRandomness::sample(&mut rng, stream_seed);
        let mut a_zero = 0u32;
        let mut b_zero = 0u32;
        for r in [Bit::ZERO, Bit::ONE] {
            let rec = run_pr_singlet(&pair, &sr, r);
            a_zero += (rec.alice_out == Bit::ZERO) as u32;
            b_zero += (rec.bob_out == Bit::ZERO) as u32;
        }
        if a_zero != 1 || b_zero != 1 {
            return false;
        }
    }
    true
}

/// Exhaustive: the one-bit PR simulation's outputs, marginalized over the
/// unbiased hidden bit λ, are 1/2 for all four input pairs.
pub fn one_bit_marginals_hold() -> bool {
    for x in [Bit::ZERO, Bit::ONE] {
        for y in [Bit::ZERO, Bit::ONE] {
            let mut a_zero = 0u32;
            let mut b_zero = 0u32;
            for lambda in [Bit::ZERO, Bit::ONE] {
                let mut t = crate::resources::Transcript::new();
                let (a, b) = pr_from_one_bit(x, y, lambda, &mut t);
                a_zero += (a == Bit::ZERO) as u32;
                b_zero += (b == Bit::ZERO) as u32;
            }
            if a_zero != 1 || b_zero != 1 {
                return false;
            }
        }
    }
    true
}

/// The stock variant set for a no-signaling check: the checked party's
/// setting fixed, the remote party's swept over ±ẑ and x̂.
pub fn systematic_variants(side: MarginalSide) -> Vec<MeasurementPair> {
    let fixed = UnitVector3::Z_AXIS;
    let remote = [UnitVector3::Z_AXIS, -UnitVector3::Z_AXIS, UnitVector3::X_AXIS];
    remote
        .into_iter()
        .map(|v| match side {
            MarginalSide::Alice => MeasurementPair::new(fixed, v),
            MarginalSide::Bob => MeasurementPair::new(v, fixed),
        })
        .collect()
}
