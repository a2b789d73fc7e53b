//! The three two-party protocols under study, all emitting [`RunRecord`]s
//! with the same schema:
//!
//! - [`run_pr_singlet`]: one PR box plus shared randomness, zero
//!   communication. Reproduces the singlet's projective-measurement
//!   statistics exactly: `P(A≠B | ν_A, ν_B) = (1 + ν_A·ν_B)/2`.
//! - [`run_toner_bacon`]: shared randomness plus one classical bit A→B.
//!   Produces the identical `A ⊕ B` for the same hidden vectors.
//! - [`run_lhv_baseline`]: shared randomness alone. Matches the singlet at
//!   parallel and antipodal settings but follows the hyperplane law
//!   `P(A≠B) = 1 − θ/π` in between, so it cannot match the quantum curve.
//!
//! Alice's functions read only her setting, the shared randomness, and her
//! box output; Bob's only his. The transcript in each record certifies the
//! communication count.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::core::{sg, Bit, DerivedVectorPair, SharedRandomness, UnitVector3};
use crate::error::Error;
use crate::resources::{Port, PrBoxInstance, Transcript};

/// Which protocol produced a record. Recorded per run so downstream
/// analysis never re-infers provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProtocolId {
    PrSinglet,
    TonerBacon,
    LhvBaseline,
}

impl ProtocolId {
    pub const ALL: [ProtocolId; 3] = [
        ProtocolId::PrSinglet,
        ProtocolId::TonerBacon,
        ProtocolId::LhvBaseline,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolId::PrSinglet => "pr-singlet",
            ProtocolId::TonerBacon => "toner-bacon",
            ProtocolId::LhvBaseline => "lhv-baseline",
        }
    }
}

impl fmt::Display for ProtocolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ProtocolId, Error> {
        match s {
            "pr-singlet" => Ok(ProtocolId::PrSinglet),
            "toner-bacon" => Ok(ProtocolId::TonerBacon),
            "lhv-baseline" => Ok(ProtocolId::LhvBaseline),
            other => Err(Error::Usage(format!(
                "unknown protocol {other:?} (expected pr-singlet, toner-bacon or lhv-baseline)"
            ))),
        }
    }
}

/// The measurement settings handed to the two parties after they separate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementPair {
    pub nu_a: UnitVector3,
    pub nu_b: UnitVector3,
}

impl MeasurementPair {
    pub fn new(nu_a: UnitVector3, nu_b: UnitVector3) -> MeasurementPair {
        MeasurementPair { nu_a, nu_b }
    }

    /// Alice along the z-axis, Bob at angle `theta` from it in the
    /// xz-plane. The standard geometry for correlation sweeps.
    pub fn from_angle(theta: f64) -> MeasurementPair {
        MeasurementPair {
            nu_a: UnitVector3::Z_AXIS,
            nu_b: UnitVector3::in_xz_plane(theta),
        }
    }

    pub fn dot(&self) -> f64 {
        self.nu_a.dot(self.nu_b)
    }

    /// Angle between the settings, from the actual inner product.
    pub fn angle(&self) -> f64 {
        self.dot().clamp(-1.0, 1.0).acos()
    }
}

/// Per-run outcome: the two output bits, the exact resource transcript,
/// and provenance (protocol, root seed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunRecord {
    pub alice_out: Bit,
    pub bob_out: Bit,
    pub transcript: Transcript,
    pub protocol: ProtocolId,
    pub seed: u64,
}

impl RunRecord {
    pub fn outputs_differ(&self) -> bool {
        self.alice_out != self.bob_out
    }
}

fn sg_dot(nu: UnitVector3, v: crate::core::Vec3) -> Bit {
    // Dot products of finite vectors are finite, so sg cannot fail here.
    sg(nu.dot_vec(v)).expect("finite dot product")
}

/// Alice's box input: `x = sg(ν_A·λ1) ⊕ sg(ν_A·λ2)`.
pub fn alice_input(nu_a: UnitVector3, sr: &SharedRandomness) -> Bit {
    sg_dot(nu_a, sr.lambda1.as_vec3()) ^ sg_dot(nu_a, sr.lambda2.as_vec3())
}

/// Alice's simulated measurement outcome: `A = a ⊕ sg(ν_A·λ1)`.
pub fn alice_output(a: Bit, nu_a: UnitVector3, sr: &SharedRandomness) -> Bit {
    a ^ sg_dot(nu_a, sr.lambda1.as_vec3())
}

/// Bob's box input: `y = sg(ν_B·λ+) ⊕ sg(ν_B·λ−)` with `λ± = λ1 ± λ2`.
pub fn bob_input(nu_b: UnitVector3, sr: &SharedRandomness) -> Bit {
    let pair = DerivedVectorPair::new(sr.lambda1, sr.lambda2);
    sg_dot(nu_b, pair.lambda_plus) ^ sg_dot(nu_b, pair.lambda_minus)
}

/// Bob's simulated measurement outcome: `B = b ⊕ sg(ν_B·λ+) ⊕ 1`.
pub fn bob_output(b: Bit, nu_b: UnitVector3, sr: &SharedRandomness) -> Bit {
    let pair = DerivedVectorPair::new(sr.lambda1, sr.lambda2);
    b ^ sg_dot(nu_b, pair.lambda_plus) ^ Bit::ONE
}

/// One run of the singlet simulation: a single PR box with internal bit
/// `r`, shared randomness, and no communication at all.
pub fn run_pr_singlet(pair: &MeasurementPair, sr: &SharedRandomness, r: Bit) -> RunRecord {
    let mut transcript = Transcript::new();
    let mut pr_box = PrBoxInstance::new(r);
    transcript.record_nl_box();

    // Alice's side: her setting, the shared λ's, her box port.
    let x = alice_input(pair.nu_a, sr);
    let a = pr_box.invoke(Port::Alice, x).expect("fresh box port");
    let alice_out = alice_output(a, pair.nu_a, sr);

    // Bob's side: his setting, the shared λ's, his box port.
    let y = bob_input(pair.nu_b, sr);
    let b = pr_box.invoke(Port::Bob, y).expect("fresh box port");
    let bob_out = bob_output(b, pair.nu_b, sr);

    RunRecord {
        alice_out,
        bob_out,
        transcript,
        protocol: ProtocolId::PrSinglet,
        seed: sr.seed,
    }
}

/// One run of the one-bit-communication simulation: Alice outputs
/// `A = sg(ν_A·λ1)` and sends `c = sg(ν_A·λ1) ⊕ sg(ν_A·λ2)`; Bob outputs
/// `B = (1−c)·sg(ν_B·λ+) + c·sg(ν_B·λ−) + 1`.
pub fn run_toner_bacon(pair: &MeasurementPair, sr: &SharedRandomness) -> RunRecord {
    let mut transcript = Transcript::new();

    // Alice's side.
    let alice_out = sg_dot(pair.nu_a, sr.lambda1.as_vec3());
    let comm_bit = alice_out ^ sg_dot(pair.nu_a, sr.lambda2.as_vec3());
    transcript.record_a_to_b(1);

    // Bob's side, with the received bit selecting between λ+ and λ−.
    let derived = DerivedVectorPair::new(sr.lambda1, sr.lambda2);
    let s_plus = sg_dot(pair.nu_b, derived.lambda_plus).value();
    let s_minus = sg_dot(pair.nu_b, derived.lambda_minus).value();
    let c = comm_bit.value();
    let selected = (1 - c) * s_plus + c * s_minus;
    let bob_out = Bit::new(selected % 2).expect("bit-valued selection") ^ Bit::ONE;

    RunRecord {
        alice_out,
        bob_out,
        transcript,
        protocol: ProtocolId::TonerBacon,
        seed: sr.seed,
    }
}

/// One run of the shared-randomness-only baseline: `A = sg(ν_A·λ1)`,
/// `B = sg(ν_B·λ1) ⊕ 1`. No box, no communication.
pub fn run_lhv_baseline(pair: &MeasurementPair, sr: &SharedRandomness) -> RunRecord {
    let alice_out = sg_dot(pair.nu_a, sr.lambda1.as_vec3());
    let bob_out = sg_dot(pair.nu_b, sr.lambda1.as_vec3()) ^ Bit::ONE;

    RunRecord {
        alice_out,
        bob_out,
        transcript: Transcript::new(),
        protocol: ProtocolId::LhvBaseline,
        seed: sr.seed,
    }
}

/// One run of any protocol with fresh randomness off `rng`.
///
/// Every protocol consumes the same `SharedRandomness` draw (λ1, λ2);
/// the PR protocol additionally draws the box's internal bit. `seed` is
/// recorded as provenance.
pub fn run_once<R: Rng + ?Sized>(
    protocol: ProtocolId,
    pair: &MeasurementPair,
    rng: &mut R,
    seed: u64,
) -> RunRecord {
    let sr = SharedRandomness::sample(rng, seed);
    match protocol {
        ProtocolId::PrSinglet => {
            let r = Bit::from(rng.random::<bool>());
            run_pr_singlet(pair, &sr, r)
        }
        ProtocolId::TonerBacon => run_toner_bacon(pair, &sr),
        ProtocolId::LhvBaseline => run_lhv_baseline(pair, &sr),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{chunk_rng, SharedRandomness};

    fn sr(l1: UnitVector3, l2: UnitVector3) -> SharedRandomness {
        SharedRandomness {
            lambda1: l1,
            lambda2: l2,
            seed: 0,
        }
    }

    #[test]
    fn alice_input_examples() {
        let z = UnitVector3::Z_AXIS;
        assert_eq!(alice_input(z, &sr(z, -z)), Bit::ONE);
        assert_eq!(alice_input(z, &sr(z, z)), Bit::ZERO);
    }

    #[test]
    fn alice_output_examples() {
        let z = UnitVector3::Z_AXIS;
        let shared = sr(z, z); // sg(ν_A·λ1) = 1
        assert_eq!(alice_output(Bit::ONE, z, &shared), Bit::ZERO);
        assert_eq!(alice_output(Bit::ZERO, z, &shared), Bit::ONE);
    }

    #[test]
    fn bob_input_examples() {
        // λ1 = ẑ, λ2 = x̂: λ+ = (1,0,1), λ− = (−1,0,1).
        let shared = sr(UnitVector3::Z_AXIS, UnitVector3::X_AXIS);
        assert_eq!(bob_input(UnitVector3::Z_AXIS, &shared), Bit::ZERO);
        assert_eq!(bob_input(UnitVector3::X_AXIS, &shared), Bit::ONE);
    }

    #[test]
    fn bob_output_examples() {
        // λ1 = λ2 = ẑ gives sg(ν_B·λ+) = 1 at ν_B = ẑ.
        let shared = sr(UnitVector3::Z_AXIS, UnitVector3::Z_AXIS);
        assert_eq!(bob_output(Bit::ZERO, UnitVector3::Z_AXIS, &shared), Bit::ZERO);
        assert_eq!(bob_output(Bit::ONE, UnitVector3::Z_AXIS, &shared), Bit::ONE);
    }

    #[test]
    fn inputs_are_scale_invariant_in_the_settings() {
        // x depends only on which λ-hemispheres contain ν_A; rescaling the
        // dot products by any positive factor changes nothing. Exercised
        // through sg directly since settings stay normalized.
        let mut rng = chunk_rng(3, 0);
        for _ in 0..100 {
            let shared = SharedRandomness::sample(&mut rng, 3);
            let nu = crate::core::sample_uniform_sphere(&mut rng);
            let t1 = nu.dot(shared.lambda1);
            for k in [1e-6, 0.5, 3.0, 1e6] {
                assert_eq!(sg(k * t1).unwrap(), sg(t1).unwrap());
            }
        }
    }

    #[test]
    fn pr_singlet_zero_communication_one_box() {
        let mut rng = chunk_rng(5, 0);
        for _ in 0..100 {
            let shared = SharedRandomness::sample(&mut rng, 5);
            let pair = MeasurementPair::from_angle(1.0);
            let rec = run_pr_singlet(&pair, &shared, Bit::from(rng.random::<bool>()));
            assert_eq!(rec.transcript.bits_total(), 0);
            assert_eq!(rec.transcript.nl_boxes_used(), 1);
            assert_eq!(rec.protocol, ProtocolId::PrSinglet);
        }
    }

    #[test]
    fn toner_bacon_sends_exactly_one_bit() {
        let mut rng = chunk_rng(7, 0);
        for _ in 0..100 {
            let shared = SharedRandomness::sample(&mut rng, 7);
            let rec = run_toner_bacon(&MeasurementPair::from_angle(0.7), &shared);
            assert_eq!(rec.transcript.bits_a_to_b(), 1);
            assert_eq!(rec.transcript.bits_b_to_a(), 0);
            assert_eq!(rec.transcript.nl_boxes_used(), 0);
        }
    }

    #[test]
    fn lhv_baseline_uses_nothing() {
        let mut rng = chunk_rng(9, 0);
        let shared = SharedRandomness::sample(&mut rng, 9);
        let rec = run_lhv_baseline(&MeasurementPair::from_angle(2.0), &shared);
        assert_eq!(rec.transcript.bits_total(), 0);
        assert_eq!(rec.transcript.nl_boxes_used(), 0);
    }

    #[test]
    fn antipodal_settings_force_equal_outputs() {
        let mut rng = chunk_rng(11, 0);
        for _ in 0..1000 {
            let nu_a = crate::core::sample_uniform_sphere(&mut rng);
            let pair = MeasurementPair::new(nu_a, -nu_a);
            let shared = SharedRandomness::sample(&mut rng, 11);
            for r in [Bit::ZERO, Bit::ONE] {
                let rec = run_pr_singlet(&pair, &shared, r);
                assert_eq!(rec.alice_out, rec.bob_out);
            }
            let rec = run_toner_bacon(&pair, &shared);
            assert_eq!(rec.alice_out, rec.bob_out);
            let rec = run_lhv_baseline(&pair, &shared);
            assert_eq!(rec.alice_out, rec.bob_out);
        }
    }

    #[test]
    fn parallel_settings_force_unequal_outputs() {
        let mut rng = chunk_rng(13, 0);
        for _ in 0..1000 {
            let nu_a = crate::core::sample_uniform_sphere(&mut rng);
            let pair = MeasurementPair::new(nu_a, nu_a);
            let shared = SharedRandomness::sample(&mut rng, 13);
            for r in [Bit::ZERO, Bit::ONE] {
                let rec = run_pr_singlet(&pair, &shared, r);
                assert_ne!(rec.alice_out, rec.bob_out);
            }
            let rec = run_toner_bacon(&pair, &shared);
            assert_ne!(rec.alice_out, rec.bob_out);
            let rec = run_lhv_baseline(&pair, &shared);
            assert_ne!(rec.alice_out, rec.bob_out);
        }
    }

    #[test]
    fn pr_and_one_bit_models_agree_on_xor() {
        // A ⊕ B is the same function of (λ1, λ2, settings) in both
        // models, for either box bit.
        let mut rng = chunk_rng(17, 0);
        for _ in 0..2000 {
            let pair = MeasurementPair::new(
                crate::core::sample_uniform_sphere(&mut rng),
                crate::core::sample_uniform_sphere(&mut rng),
            );
            let shared = SharedRandomness::sample(&mut rng, 17);
            let tb = run_toner_bacon(&pair, &shared);
            for r in [Bit::ZERO, Bit::ONE] {
                let pr = run_pr_singlet(&pair, &shared, r);
                assert_eq!(
                    pr.alice_out ^ pr.bob_out,
                    tb.alice_out ^ tb.bob_out,
                    "xor mismatch for pair {pair:?}"
                );
            }
        }
    }

    #[test]
    fn flipping_r_flips_both_outputs() {
        let mut rng = chunk_rng(19, 0);
        for _ in 0..1000 {
            let pair = MeasurementPair::new(
                crate::core::sample_uniform_sphere(&mut rng),
                crate::core::sample_uniform_sphere(&mut rng),
            );
            let shared = SharedRandomness::sample(&mut rng, 19);
            let rec0 = run_pr_singlet(&pair, &shared, Bit::ZERO);
            let rec1 = run_pr_singlet(&pair, &shared, Bit::ONE);
            assert_eq!(rec0.alice_out, rec1.alice_out.flip());
            assert_eq!(rec0.bob_out, rec1.bob_out.flip());
            assert_eq!(
                rec0.alice_out ^ rec0.bob_out,
                rec1.alice_out ^ rec1.bob_out
            );
        }
    }

    #[test]
    fn marginals_over_r_are_exactly_half() {
        let mut rng = chunk_rng(23, 0);
        for _ in 0..1000 {
            let pair = MeasurementPair::new(
                crate::core::sample_uniform_sphere(&mut rng),
                crate::core::sample_uniform_sphere(&mut rng),
            );
            let shared = SharedRandomness::sample(&mut rng, 23);
            let mut a_zero = 0;
            let mut b_zero = 0;
            for r in [Bit::ZERO, Bit::ONE] {
                let rec = run_pr_singlet(&pair, &shared, r);
                a_zero += (rec.alice_out == Bit::ZERO) as u32;
                b_zero += (rec.bob_out == Bit::ZERO) as u32;
            }
            assert_eq!(a_zero, 1);
            assert_eq!(b_zero, 1);
        }
    }

    #[test]
    fn protocol_id_round_trips() {
        for p in ProtocolId::ALL {
            assert_eq!(p.as_str().parse::<ProtocolId>().unwrap(), p);
        }
        assert!("bell".parse::<ProtocolId>().is_err());
    }
}
