//! Linear complexity baseline via Berlekamp-Massey over GF(2).

use crate::error::Result;
use crate::sequence::{min_stages, BinarySequence};

/// Shortest LFSR for a sequence.
///
/// The recurrence is `s[t] = c[0]·s[t-1] ⊕ c[1]·s[t-2] ⊕ .. ⊕ c[L-1]·s[t-L]`,
/// i.e. `connection[0]` is `c_1`, the tap on the most recent bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearComplexityResult {
    pub complexity: usize,
    pub connection: Vec<u8>,
}

/// Linear complexity `L` and nonlinear stage bound `k` of one sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComplexityComparison {
    pub linear: usize,
    pub stages: u32,
}

pub fn berlekamp_massey(seq: &BinarySequence) -> LinearComplexityResult {
    let s = seq.bits();
    let n = s.len();
    // c and b are connection polynomials with c[0] = 1.
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;
    for t in 0..n {
        let mut d = s[t];
        for i in 1..=l {
            d ^= c[i] & s[t - i];
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let prev = c.clone();
        for i in 0..=n - shift {
            c[i + shift] ^= b[i];
        }
        if 2 * l <= t {
            l = t + 1 - l;
            b = prev;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    LinearComplexityResult { complexity: l, connection: c[1..=l].to_vec() }
}

/// Whether the LFSR with taps `connection`, seeded with the first
/// `connection.len()` bits of `bits`, reproduces all of `bits`.
pub fn lfsr_generates(connection: &[u8], bits: &[u8]) -> bool {
    let l = connection.len();
    (l..bits.len()).all(|t| {
        let predicted = connection.iter().enumerate().fold(0u8, |acc, (i, &c)| acc ^ (c & bits[t - 1 - i]));
        predicted == bits[t]
    })
}

/// Linear complexity alongside the minimum stage count.
pub fn compare_complexities(seq: &BinarySequence) -> Result<ComplexityComparison> {
    let stages = min_stages(seq)?.k;
    Ok(ComplexityComparison { linear: berlekamp_massey(seq).complexity, stages })
}
