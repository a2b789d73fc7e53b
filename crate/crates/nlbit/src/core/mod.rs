//! Fundamental types and pure primitives: bits with mod-2 arithmetic, unit
//! vectors on the sphere, and the seeded randomness every experiment flows
//! from.
//!
//! Vectors live on the Poincaré sphere (the Bloch sphere under its older
//! optics name); for this crate both are the same S² and the sphere vectors
//! are the entire quantum interface — no amplitudes or density matrices.

mod bits;
mod random;
mod vectors;

pub use bits::{sg, to_signed, Bit, SignedBit};
pub use random::{chunk_rng, mix_seed, sample_uniform_sphere, SharedRandomness};
pub use vectors::{DerivedVectorPair, UnitVector3, Vec3, UNIT_NORM_TOL};
