//! The signaling attack that rules out a shared PR box.
//!
//! If Alice's box half obeyed the PR relation with Bob *and* with Charles
//! simultaneously, then `b ⊕ c = x·(y ⊕ z)`. With `y = 0`, `z = 1` that is
//! `b ⊕ c = x`: Bob and Charles, sitting together far from Alice, read her
//! input off their outputs instantly. The attack succeeds with probability
//! exactly 1, for any internal randomness — which is why such a tripartite
//! box cannot exist and the PR resource is monogamous.

use rand::Rng;

use crate::core::{chunk_rng, mix_seed, Bit};
use crate::error::{Error, Result};
use crate::exec;
use crate::resources::tripartite_eval;

use super::estimator::salts;

const ATTACK_Y: Bit = Bit::ZERO;
const ATTACK_Z: Bit = Bit::ONE;

/// Monte Carlo attack: `trials` evaluations with random internal bits,
/// decoding `x̂ = b ⊕ c`. Returns the success rate (exactly 1.0).
pub fn monogamy_attack(x: Bit, trials: u64, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Usage("trial count must be at least 1".to_owned()));
    }
    let stream_seed = mix_seed(seed, salts::monogamy(x.value() as u64));
    let successes = exec::reduce_chunks(trials, |chunk| {
        let mut rng = chunk_rng(stream_seed, chunk.index);
        let mut ok = 0u64;
        for _ in 0..chunk.len {
            let r1 = Bit::from(rng.random::<bool>());
            let r2 = Bit::from(rng.random::<bool>());
            let (_a, b, c) = tripartite_eval(x, ATTACK_Y, ATTACK_Z, r1, r2);
            ok += ((b ^ c) == x) as u64;
        }
        ok
    });
    Ok(successes as f64 / trials as f64)
}

/// The same attack, exhaustive over the internal bits instead of sampled.
pub fn monogamy_attack_exhaustive(x: Bit) -> f64 {
    let mut ok = 0u32;
    let mut total = 0u32;
    for r1 in [Bit::ZERO, Bit::ONE] {
        for r2 in [Bit::ZERO, Bit::ONE] {
            let (_a, b, c) = tripartite_eval(x, ATTACK_Y, ATTACK_Z, r1, r2);
            ok += ((b ^ c) == x) as u32;
            total += 1;
        }
    }
    ok as f64 / total as f64
}

/// Control experiment: with `y = z` the decoder reads `b ⊕ c = x·(y⊕z) = 0`
/// whatever Alice does, so guessing a uniformly random `x` from it succeeds
/// half the time.
pub fn monogamy_control(trials: u64, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Usage("trial count must be at least 1".to_owned()));
    }
    let stream_seed = mix_seed(seed, salts::monogamy(2));
    let successes = exec::reduce_chunks(trials, |chunk| {
        let mut rng = chunk_rng(stream_seed, chunk.index);
        let mut ok = 0u64;
        for _ in 0..chunk.len {
            let x = Bit::from(rng.random::<bool>());
            let yz = Bit::from(rng.random::<bool>());
            let r1 = Bit::from(rng.random::<bool>());
            let r2 = Bit::from(rng.random::<bool>());
            let (_a, b, c) = tripartite_eval(x, yz, yz, r1, r2);
            ok += ((b ^ c) == x) as u64;
        }
        ok
    });
    Ok(successes as f64 / trials as f64)
}
