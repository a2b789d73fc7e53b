//! Non-signaling and classical resources with exact usage accounting.
//!
//! The PR box is the elementary non-local resource: input bits `x`, `y`
//! on the two sides, output bits `a`, `b` with `a ⊕ b = x·y`, each output
//! locally an unbiased coin. One use of it is one nl-bit. The [`Transcript`]
//! counts classical bits crossing the Alice/Bob cut so protocols carry a
//! measurable resource bill; randomness shared before the run is free.

use std::fmt;

use crate::core::Bit;
use crate::error::{Error, Result};

/// The PR box relation: `a = r`, `b = r ⊕ x·y`, so `a ⊕ b = x·y`.
///
/// `r` is the box's internal unbiased bit. Marginalized over `r`, each
/// output is unbiased whatever the inputs, which is exactly why the box
/// cannot signal.
pub fn pr_box_eval(x: Bit, y: Bit, r: Bit) -> (Bit, Bit) {
    let a = r;
    let b = r ^ (x * y);
    (a, b)
}

/// One side of a bipartite box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    Alice,
    Bob,
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Port::Alice => write!(f, "A"),
            Port::Bob => write!(f, "B"),
        }
    }
}

/// A one-shot PR box. Each port accepts exactly one input and yields
/// exactly one output, in either port order.
///
/// Physically each output exists before the distant input does. A
/// single-process simulator cannot produce Bob's output value before
/// Alice's input has been registered (it depends on `x·y`), so input
/// registration ([`put`](Self::put)) is separated from output retrieval
/// ([`get`](Self::get)): Alice's output is available as soon as her input
/// is in, Bob's once both are. The exact no-signaling tests certify that
/// this scheduling shortcut leaks nothing.
#[derive(Debug)]
pub struct PrBoxInstance {
    r: Bit,
    x: Option<Bit>,
    y: Option<Bit>,
}

impl PrBoxInstance {
    /// A fresh box with internal bit `r`. Callers draw `r` unbiased;
    /// nothing here depends on how it was produced.
    pub fn new(r: Bit) -> PrBoxInstance {
        PrBoxInstance { r, x: None, y: None }
    }

    /// Registers the input of one port. Errors on a second input to the
    /// same port: that is a protocol bug, not a recoverable state.
    pub fn put(&mut self, port: Port, input: Bit) -> Result<()> {
        let slot = match port {
            Port::Alice => &mut self.x,
            Port::Bob => &mut self.y,
        };
        if slot.is_some() {
            return Err(Error::PortConsumed(port));
        }
        *slot = Some(input);
        Ok(())
    }

    /// The output of one port, per [`pr_box_eval`] on the registered
    /// inputs. Alice's needs her input; Bob's needs both.
    pub fn get(&self, port: Port) -> Result<Bit> {
        match port {
            Port::Alice => {
                self.x.ok_or(Error::OutputNotReady(Port::Alice))?;
                Ok(self.r)
            }
            Port::Bob => {
                let y = self.y.ok_or(Error::OutputNotReady(Port::Bob))?;
                let x = self.x.ok_or(Error::OutputNotReady(Port::Bob))?;
                Ok(self.r ^ (x * y))
            }
        }
    }

    /// `put` followed by `get` on the same port: the common flow where
    /// ports are served in an order that never waits on a missing input.
    pub fn invoke(&mut self, port: Port, input: Bit) -> Result<Bit> {
        self.put(port, input)?;
        self.get(port)
    }
}

/// Exact count of classical resources consumed by one run: bits crossing
/// the Alice/Bob cut in each direction and non-local boxes used. Counts
/// only ever increase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Transcript {
    bits_a_to_b: u64,
    bits_b_to_a: u64,
    nl_boxes_used: u64,
}

impl Transcript {
    pub fn new() -> Transcript {
        Transcript::default()
    }

    pub fn record_a_to_b(&mut self, bits: u64) {
        self.bits_a_to_b += bits;
    }

    pub fn record_b_to_a(&mut self, bits: u64) {
        self.bits_b_to_a += bits;
    }

    pub fn record_nl_box(&mut self) {
        self.nl_boxes_used += 1;
    }

    pub fn bits_a_to_b(&self) -> u64 {
        self.bits_a_to_b
    }

    pub fn bits_b_to_a(&self) -> u64 {
        self.bits_b_to_a
    }

    pub fn bits_total(&self) -> u64 {
        self.bits_a_to_b + self.bits_b_to_a
    }

    pub fn nl_boxes_used(&self) -> u64 {
        self.nl_boxes_used
    }
}

/// Simulates one PR box use with shared randomness plus one bit of
/// communication: the hidden variable `lambda` is an unbiased bit, Alice
/// outputs `a = λ` and sends `x`; Bob outputs `b = x·y ⊕ λ`.
///
/// The joint conditional distribution of `(a, b)` over `λ` equals the PR
/// box's over `r`, for every input pair — but the channel use is real and
/// the transcript bills exactly one bit A→B.
pub fn pr_from_one_bit(x: Bit, y: Bit, lambda: Bit, channel: &mut Transcript) -> (Bit, Bit) {
    let a = lambda;
    // Alice sends x across the cut; Bob computes his output with it.
    channel.record_a_to_b(1);
    let received_x = x;
    let b = (received_x * y) ^ lambda;
    (a, b)
}

/// The hypothetical three-party box of the monogamy argument: Alice's
/// output satisfies the PR relation with Bob's *and* with Charles's
/// simultaneously.
///
/// `a = r1`, `b = r1 ⊕ x·y`, `c = r1 ⊕ x·z`, hence `b ⊕ c = x·(y ⊕ z)`.
/// `r2` is accepted and ignored: no local output randomization on
/// Charles's side can break that identity, which is the point of the
/// signaling attack this box exists to demonstrate.
pub fn tripartite_eval(x: Bit, y: Bit, z: Bit, r1: Bit, _r2: Bit) -> (Bit, Bit, Bit) {
    let a = r1;
    let b = r1 ^ (x * y);
    let c = r1 ^ (x * z);
    (a, b, c)
}

/// One-shot wrapper around [`tripartite_eval`].
#[derive(Debug)]
pub struct TripartiteBoxInstance {
    r1: Bit,
    r2: Bit,
    used: bool,
}

impl TripartiteBoxInstance {
    pub fn new(r1: Bit, r2: Bit) -> TripartiteBoxInstance {
        TripartiteBoxInstance { r1, r2, used: false }
    }

    /// Feeds all three ports at once and returns `(a, b, c)`. A second
    /// call is a usage error.
    pub fn eval(&mut self, x: Bit, y: Bit, z: Bit) -> Result<(Bit, Bit, Bit)> {
        if self.used {
            return Err(Error::Usage(
                "tripartite box instance was already consumed".to_owned(),
            ));
        }
        self.used = true;
        Ok(tripartite_eval(x, y, z, self.r1, self.r2))
    }
}
