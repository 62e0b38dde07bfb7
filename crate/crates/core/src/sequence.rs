//! Binary target sequences and the minimum stage bound.

use std::fmt;

use crate::error::{Error, Result};

/// A finite binary sequence `a_0..a_{n-1}` with its Hamming weight cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    bits: Vec<u8>,
    weight: usize,
}

impl BinarySequence {
    /// Builds a sequence from 0/1 values.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(position) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidCharacter {
                position,
                found: char::from_digit(u32::from(bits[position]) % 36, 36).unwrap_or('?'),
            });
        }
        let weight = bits.iter().filter(|&&b| b == 1).count();
        Ok(Self { bits, weight })
    }

    /// Builds a sequence from booleans, `true` being a 1.
    pub fn from_bools<I: IntoIterator<Item = bool>>(bools: I) -> Result<Self> {
        Self::from_bits(bools.into_iter().map(u8::from).collect())
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; a `BinarySequence` holds at least one bit.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Hamming weight: the number of ones.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Number of zeros, `n - wt`.
    pub fn zeros(&self) -> usize {
        self.bits.len() - self.weight
    }

    pub fn is_balanced(&self) -> bool {
        self.weight == self.zeros()
    }

    pub fn is_constant(&self) -> bool {
        self.weight == 0 || self.weight == self.bits.len()
    }

    /// Smallest `p` in `1..n` such that rotating the sequence by `p` leaves it
    /// unchanged, i.e. the sequence is `n / p` copies of its first `p` bits.
    /// `None` when no such `p` exists (the sequence is aperiodic).
    pub fn proper_period(&self) -> Option<usize> {
        // Smallest linear period from the KMP failure function; the sequence is
        // a repetition exactly when that period divides n.
        let n = self.bits.len();
        let mut border = vec![0usize; n];
        for i in 1..n {
            let mut b = border[i - 1];
            while b > 0 && self.bits[i] != self.bits[b] {
                b = border[b - 1];
            }
            if self.bits[i] == self.bits[b] {
                b += 1;
            }
            border[i] = b;
        }
        let p = n - border[n - 1];
        (p < n && n.is_multiple_of(p)).then_some(p)
    }

    pub fn is_aperiodic(&self) -> bool {
        self.proper_period().is_none()
    }

    /// Fails with [`Error::ConstantSequence`] unless `0 < wt < n`.
    pub fn require_nonconstant(&self) -> Result<()> {
        if self.is_constant() {
            Err(Error::ConstantSequence)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// Parses `'0'`/`'1'` characters, skipping whitespace.
///
/// Positions in [`Error::InvalidCharacter`] are character offsets into `text`.
pub fn parse_sequence(text: &str) -> Result<BinarySequence> {
    let mut bits = Vec::with_capacity(text.len());
    for (position, c) in text.chars().enumerate() {
        match c {
            '0' => bits.push(0),
            '1' => bits.push(1),
            c if c.is_whitespace() => {}
            found => return Err(Error::InvalidCharacter { position, found }),
        }
    }
    BinarySequence::from_bits(bits)
}

/// `ceil(log2 x)` for `x >= 1`, with `ceil(log2 1) = 0`.
pub fn ceil_log2(x: usize) -> u32 {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// The exact minimum number of stages of a machine generating a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StageBound {
    pub k: u32,
    /// `ceil(log2 wt)`
    pub wt_term: u32,
    /// `ceil(log2 (n - wt))`
    pub zero_term: u32,
}

impl StageBound {
    /// Bound for a length-`n` sequence of weight `wt`; requires `0 < wt < n`.
    pub fn from_counts(n: usize, wt: usize) -> Result<Self> {
        if wt == 0 || wt >= n {
            return Err(Error::ConstantSequence);
        }
        let wt_term = ceil_log2(wt);
        let zero_term = ceil_log2(n - wt);
        Ok(Self {
            k: wt_term.max(zero_term) + 1,
            wt_term,
            zero_term,
        })
    }
}

/// Minimum stage count `k = max(ceil(log2 wt), ceil(log2 (n - wt))) + 1`.
pub fn min_stages(seq: &BinarySequence) -> Result<StageBound> {
    StageBound::from_counts(seq.len(), seq.weight())
}
