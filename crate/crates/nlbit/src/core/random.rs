//! Seed derivation and sphere sampling.
//!
//! All randomness in the crate flows from a single 64-bit root seed. Work
//! is split into fixed-size chunks and each chunk draws from the
//! counter-based stream `(seed, chunk index)`, so every experiment is
//! bit-reproducible from `(seed, parameters)` no matter how the chunks are
//! scheduled across workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::vectors::{UnitVector3, Vec3};

/// 64-bit finalizer with good avalanche behavior (the splitmix64 mixer).
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent sub-seed from a root seed and a purpose salt.
pub fn mix_seed(root: u64, salt: u64) -> u64 {
    splitmix64(root ^ splitmix64(salt))
}

/// The random stream for one chunk of work: ChaCha8 keyed by `seed` on
/// stream `chunk`. Streams with distinct indices never overlap.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// A point uniform on the unit sphere: three independent standard
/// Gaussians, normalized. Draws with norm below 1e−12 (probability ~0)
/// are rejected and redrawn.
pub fn sample_uniform_sphere<R: Rng + ?Sized>(rng: &mut R) -> UnitVector3 {
    loop {
        let v = Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        let norm = v.norm();
        if norm >= 1e-12 {
            return UnitVector3::normalized(v.x, v.y, v.z).expect("finite non-zero vector");
        }
    }
}

/// The shared randomness of one protocol run: a pair of independent
/// uniform sphere vectors, plus the root seed they came from (provenance
/// only — the seed is never re-consumed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharedRandomness {
    pub lambda1: UnitVector3,
    pub lambda2: UnitVector3,
    pub seed: u64,
}

impl SharedRandomness {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, seed: u64) -> SharedRandomness {
        SharedRandomness {
            lambda1: sample_uniform_sphere(rng),
            lambda2: sample_uniform_sphere(rng),
            seed,
        }
    }
}
