use std::fmt;
use std::ops::{BitXor, BitXorAssign, Mul};

use serde::Serialize;

use crate::error::{Error, Result};

/// A classical bit. All addition of bits in this crate is taken modulo 2,
/// written as XOR; multiplication is AND.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Bit(u8);

impl Bit {
    pub const ZERO: Bit = Bit(0);
    pub const ONE: Bit = Bit(1);

    pub fn new(value: u8) -> Result<Bit> {
        match value {
            0 | 1 => Ok(Bit(value)),
            other => Err(Error::NotABit(other)),
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn as_bool(self) -> bool {
        self.0 == 1
    }

    /// The complement `b ⊕ 1`.
    pub fn flip(self) -> Bit {
        Bit(self.0 ^ 1)
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Bit {
        Bit(b as u8)
    }
}

impl TryFrom<u8> for Bit {
    type Error = Error;

    fn try_from(value: u8) -> Result<Bit> {
        Bit::new(value)
    }
}

/// Addition modulo 2.
impl BitXor for Bit {
    type Output = Bit;

    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Bit {
    fn bitxor_assign(&mut self, rhs: Bit) {
        self.0 ^= rhs.0;
    }
}

/// Bit product `x·y` (logical AND).
impl Mul for Bit {
    type Output = Bit;

    fn mul(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A bit in the ±1 convention used by Bell inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedBit(i8);

impl SignedBit {
    pub const PLUS: SignedBit = SignedBit(1);
    pub const MINUS: SignedBit = SignedBit(-1);

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

impl Mul for SignedBit {
    type Output = SignedBit;

    fn mul(self, rhs: SignedBit) -> SignedBit {
        SignedBit(self.0 * rhs.0)
    }
}

/// Maps a bit to the ±1 convention via `a' = 1 − 2a`: 0 ↦ +1, 1 ↦ −1.
///
/// The product rule follows: `to_signed(a)·to_signed(b)` is +1 exactly when
/// `a ⊕ b = 0`.
pub fn to_signed(b: Bit) -> SignedBit {
    SignedBit(1 - 2 * (b.0 as i8))
}

/// The half-space indicator: 1 if `t ≥ 0`, 0 if `t < 0`.
///
/// The tie `t = 0` maps to 1 by convention (including `-0.0`, which
/// compares equal to zero). The convention is load-bearing only on a
/// measure-zero set but is fixed and tested. Scale invariant: `sg(k·t) =
/// sg(t)` for every `k > 0`.
pub fn sg(t: f64) -> Result<Bit> {
    if !t.is_finite() {
        return Err(Error::NonFinite { context: "sg" });
    }
    Ok(sg_unchecked(t))
}

/// `sg` for inputs already known finite (dot products of finite vectors).
pub(crate) fn sg_unchecked(t: f64) -> Bit {
    debug_assert!(t.is_finite());
    Bit::from(t >= 0.0)
}
