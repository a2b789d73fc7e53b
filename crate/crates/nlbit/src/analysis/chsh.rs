use std::f64::consts::TAU;

use serde::Serialize;

use crate::core::{to_signed, Bit, UnitVector3};
use crate::error::{Error, Result};
use crate::protocols::{MeasurementPair, ProtocolId};
use crate::resources::pr_box_eval;

use super::estimator::{salts, tally_salted};

/// The four measurement settings of a CHSH experiment: Alice chooses
/// between `a0`, `a1`; Bob between `b0`, `b1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a0: UnitVector3,
    pub a1: UnitVector3,
    pub b0: UnitVector3,
    pub b1: UnitVector3,
}

impl ChshSettings {
    pub fn alice(&self, x: Bit) -> UnitVector3 {
        if x.as_bool() {
            self.a1
        } else {
            self.a0
        }
    }

    pub fn bob(&self, y: Bit) -> UnitVector3 {
        if y.as_bool() {
            self.b1
        } else {
            self.b0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChshMethod {
    Exhaustive,
    MonteCarlo,
}

/// A CHSH value with its four correlation terms, ordered
/// `(x,y) = (0,0), (0,1), (1,0), (1,1)`; `S = E₀₀ + E₀₁ + E₁₀ − E₁₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult {
    pub s: f64,
    pub terms: [f64; 4],
    pub term_std_errors: [f64; 4],
    pub n_per_term: u64,
    pub method: ChshMethod,
}

impl ChshResult {
    fn from_terms(terms: [f64; 4], term_std_errors: [f64; 4], n_per_term: u64, method: ChshMethod) -> ChshResult {
        ChshResult {
            s: terms[0] + terms[1] + terms[2] - terms[3],
            terms,
            term_std_errors,
            n_per_term,
            method,
        }
    }

    /// Standard error of `S`: the four terms are estimated from disjoint
    /// streams, so their variances add.
    pub fn s_std_error(&self) -> f64 {
        self.term_std_errors
            .iter()
            .map(|se| se * se)
            .sum::<f64>()
            .sqrt()
    }
}

/// The PR box's CHSH value by exhaustive enumeration of `(x, y, r)`:
/// every term is ±1 exactly and `S = 4`, the algebraic maximum.
pub fn chsh_pr_box_exhaustive() -> ChshResult {
    let mut terms = [0.0f64; 4];
    for (idx, (x, y)) in input_pairs().into_iter().enumerate() {
        let mut sum = 0i32;
        for r in [Bit::ZERO, Bit::ONE] {
            let (a, b) = pr_box_eval(x, y, r);
            sum += (to_signed(a) * to_signed(b)).value() as i32;
        }
        terms[idx] = sum as f64 / 2.0;
    }
    ChshResult::from_terms(terms, [0.0; 4], 2, ChshMethod::Exhaustive)
}

/// Monte Carlo CHSH for a vector-input protocol: each term gets
/// `n_per_term` runs on its own stream.
pub fn chsh_protocol(
    protocol: ProtocolId,
    settings: &ChshSettings,
    n_per_term: u64,
    seed: u64,
) -> Result<ChshResult> {
    if n_per_term == 0 {
        return Err(Error::Usage("sample count must be at least 1".to_owned()));
    }
    let mut terms = [0.0f64; 4];
    let mut errors = [0.0f64; 4];
    for (idx, (x, y)) in input_pairs().into_iter().enumerate() {
        let pair = MeasurementPair::new(settings.alice(x), settings.bob(y));
        let tally = tally_salted(protocol, &pair, n_per_term, seed, salts::chsh_term(idx as u64));
        let p = tally.p_unequal();
        terms[idx] = 1.0 - 2.0 * p;
        errors[idx] = 2.0 * (p * (1.0 - p) / n_per_term as f64).sqrt();
    }
    Ok(ChshResult::from_terms(terms, errors, n_per_term, ChshMethod::MonteCarlo))
}

fn input_pairs() -> [(Bit, Bit); 4] {
    [
        (Bit::ZERO, Bit::ZERO),
        (Bit::ZERO, Bit::ONE),
        (Bit::ONE, Bit::ZERO),
        (Bit::ONE, Bit::ONE),
    ]
}

/// A deterministic local strategy: fixed outputs for each input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalStrategy {
    /// Alice's output for x = 0 and x = 1.
    pub alice: [Bit; 2],
    /// Bob's output for y = 0 and y = 1.
    pub bob: [Bit; 2],
}

/// All 16 deterministic local strategies with their exact CHSH values.
/// No randomness is involved; every term is ±1.
pub fn chsh_local_deterministic() -> Vec<(LocalStrategy, i32)> {
    let tables = [
        [Bit::ZERO, Bit::ZERO],
        [Bit::ZERO, Bit::ONE],
        [Bit::ONE, Bit::ZERO],
        [Bit::ONE, Bit::ONE],
    ];
    let mut out = Vec::with_capacity(16);
    for alice in tables {
        for bob in tables {
            let term = |x: usize, y: usize| -> i32 {
                (to_signed(alice[x]) * to_signed(bob[y])).value() as i32
            };
            let s = term(0, 0) + term(0, 1) + term(1, 0) - term(1, 1);
            out.push((LocalStrategy { alice, bob }, s));
        }
    }
    out
}

/// The exact maximum CHSH value over deterministic local strategies: 2.
pub fn chsh_local_deterministic_max() -> i32 {
    chsh_local_deterministic()
        .into_iter()
        .map(|(_, s)| s)
        .max()
        .expect("16 strategies")
}

/// The CHSH value predicted for the singlet at the given settings, from
/// the correlation law `E = −ν_A·ν_B`.
pub fn predicted_singlet_s(settings: &ChshSettings) -> f64 {
    let e = |a: UnitVector3, b: UnitVector3| -(a.dot(b));
    e(settings.a0, settings.b0) + e(settings.a0, settings.b1) + e(settings.a1, settings.b0)
        - e(settings.a1, settings.b1)
}

/// Settings maximizing the singlet's predicted CHSH value, found by grid
/// search over coplanar directions rather than hard-coded — immune to
/// sign-convention slips in `E = −ν_A·ν_B`.
///
/// All four vectors lie in the xz-plane at angles (0, α1, β0, β1) from ẑ;
/// pinning Alice's first angle costs nothing because the objective is
/// invariant under a common rotation. A coarse 5° pass is refined locally
/// to ~1e−4 rad, which pins S to 2√2 within ~1e−9.
pub fn optimal_singlet_settings() -> ChshSettings {
    let objective = |a1: f64, b0: f64, b1: f64| -> f64 {
        -(b0.cos() + b1.cos() + (a1 - b0).cos() - (a1 - b1).cos())
    };

    let coarse = 72usize;
    let mut step = TAU / coarse as f64;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
    for i in 0..coarse {
        let a1 = i as f64 * step;
        for j in 0..coarse {
            let b0 = j as f64 * step;
            for k in 0..coarse {
                let b1 = k as f64 * step;
                let s = objective(a1, b0, b1);
                if s > best.0 {
                    best = (s, a1, b0, b1);
                }
            }
        }
    }

    for _ in 0..4 {
        let prev = step;
        step /= 6.0;
        let center = (best.1, best.2, best.3);
        for i in -6..=6i64 {
            let a1 = center.0 + i as f64 * step;
            for j in -6..=6i64 {
                let b0 = center.1 + j as f64 * step;
                for k in -6..=6i64 {
                    let b1 = center.2 + k as f64 * step;
                    let s = objective(a1, b0, b1);
                    if s > best.0 {
                        best = (s, a1, b0, b1);
                    }
                }
            }
        }
        debug_assert!(step < prev);
    }

    ChshSettings {
        a0: UnitVector3::in_xz_plane(0.0),
        a1: UnitVector3::in_xz_plane(best.1),
        b0: UnitVector3::in_xz_plane(best.2),
        b1: UnitVector3::in_xz_plane(best.3),
    }
}
