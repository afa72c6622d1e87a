//! GF(2) level vectors and the linear deterministic channel.

use std::fmt;
use std::ops::BitXor;

use crate::error::ModelError;
use crate::scalar::{rat, Rational};

/// A column vector over GF(2), most significant level first.
///
/// Levels are 1-based in the public accessors (level 1 is the top).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    bits: Vec<bool>,
}

impl BitVec {
    pub fn zeros(q: usize) -> Self {
        Self { bits: vec![false; q] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a `0`/`1` string, top level first.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn q(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Level `i` (1-based, 1 = top).
    pub fn level(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    pub fn set_level(&mut self, i: usize, v: bool) {
        self.bits[i - 1] = v;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn xor(&self, other: &Self) -> Result<Self, ModelError> {
        if self.q() != other.q() {
            return Err(ModelError::LengthMismatch { expected: self.q(), got: other.q() });
        }
        Ok(Self { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect() })
    }
}

impl BitXor for &BitVec {
    type Output = BitVec;

    /// Panics on a length mismatch; use [`BitVec::xor`] for the checked form.
    fn bitxor(self, rhs: &BitVec) -> BitVec {
        self.xor(rhs).expect("xor of BitVecs with different lengths")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Gains and feedback capacities of the linear deterministic IC.
///
/// `n12` is the gain from transmitter 1 to receiver 2, `n21` from
/// transmitter 2 to receiver 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LdicParams {
    pub n11: usize,
    pub n22: usize,
    pub n12: usize,
    pub n21: usize,
    pub cfb1: Rational,
    pub cfb2: Rational,
}

impl LdicParams {
    pub fn new(n11: usize, n22: usize, n12: usize, n21: usize, cfb1: Rational, cfb2: Rational) -> Self {
        Self { n11, n22, n12, n21, cfb1, cfb2 }
    }

    /// Integer feedback capacities.
    pub fn int(n11: usize, n22: usize, n12: usize, n21: usize, cfb1: i64, cfb2: i64) -> Self {
        Self::new(n11, n22, n12, n21, rat(cfb1), rat(cfb2))
    }

    /// Symmetric channel `(n, n, m, m, c, c)`.
    pub fn symmetric(n: usize, m: usize, cfb: i64) -> Self {
        Self::int(n, n, m, m, cfb, cfb)
    }

    pub fn q(&self) -> usize {
        self.n11.max(self.n22).max(self.n12).max(self.n21)
    }

    pub fn without_feedback(&self) -> Self {
        Self { cfb1: rat(0), cfb2: rat(0), ..self.clone() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.n11 == self.n22 && self.n12 == self.n21 && self.cfb1 == self.cfb2
    }

    /// Integer feedback capacities, if both are whole and nonnegative.
    pub fn integer_feedback(&self) -> Option<(usize, usize)> {
        let as_usize = |c: &Rational| {
            (c.is_integer() && *c.numer() >= 0).then(|| *c.numer() as usize)
        };
        Some((as_usize(&self.cfb1)?, as_usize(&self.cfb2)?))
    }
}

impl fmt::Display for LdicParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n11={}, n22={}, n12={}, n21={}, cfb1={}, cfb2={})",
            self.n11, self.n22, self.n12, self.n21, self.cfb1, self.cfb2
        )
    }
}

/// `S^{q−n} x`: the top `n` entries of `x` move to the bottom, zeros fill the top.
pub fn shift_down(x: &BitVec, n: usize) -> Result<BitVec, ModelError> {
    let q = x.q();
    if n > q {
        return Err(ModelError::InvalidGain { gain: n, q });
    }
    let mut bits = vec![false; q - n];
    bits.extend_from_slice(&x.bits[..n]);
    Ok(BitVec { bits })
}

/// Received signals `(y1, y2)` for one channel use.
pub fn channel_output(x1: &BitVec, x2: &BitVec, g: &LdicParams) -> Result<(BitVec, BitVec), ModelError> {
    let q = g.q();
    for x in [x1, x2] {
        if x.q() != q {
            return Err(ModelError::LengthMismatch { expected: q, got: x.q() });
        }
    }
    let y1 = shift_down(x1, g.n11)?.xor(&shift_down(x2, g.n21)?)?;
    let y2 = shift_down(x1, g.n12)?.xor(&shift_down(x2, g.n22)?)?;
    Ok((y1, y2))
}

/// Keeps the bottom `min(cross_gain, cfb)` levels of `y` and zeroes the rest.
pub fn lsb_feedback(y: &BitVec, cross_gain: usize, cfb: usize) -> BitVec {
    let q = y.q();
    let keep = cross_gain.min(cfb).min(q);
    let mut out = BitVec::zeros(q);
    out.bits[q - keep..].copy_from_slice(&y.bits[q - keep..]);
    out
}
