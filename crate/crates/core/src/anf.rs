//! Algebraic normal form over GF(2).
//!
//! Truth tables are bit-packed into `u64` words, entry `x` at bit `x % 64` of
//! word `x / 64`. The Möbius transform over the subset lattice maps a truth
//! table to its ANF coefficients and, being an involution, back again.

use std::fmt;

use crate::error::{Error, Result};
use crate::State;

/// Largest variable count accepted by the transforms.
pub const MAX_VARIABLES: u32 = 24;

const LOW_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn check_vars(k: u32) -> Result<()> {
    if k > MAX_VARIABLES {
        Err(Error::VariableCountTooLarge { k, max: MAX_VARIABLES })
    } else {
        Ok(())
    }
}

/// A Boolean function of `k` variables as a packed table of `2^k` bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    k: u32,
    words: Vec<u64>,
}

impl TruthTable {
    /// The constant-zero function.
    pub fn zero(k: u32) -> Result<Self> {
        check_vars(k)?;
        let words = (1usize << k).div_ceil(64);
        Ok(Self { k, words: vec![0; words] })
    }

    /// The function whose 1-set is `ones`.
    pub fn from_ones(k: u32, ones: &[State]) -> Result<Self> {
        let mut t = Self::zero(k)?;
        for &x in ones {
            if u64::from(x) >> k != 0 {
                return Err(Error::StateOutOfRange { state: u64::from(x), k });
            }
            t.set(x, true);
        }
        Ok(t)
    }

    /// Builds a table from one 0/1 value per input, `bits.len()` must be `2^k`.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let len = bits.len();
        if !len.is_power_of_two() {
            return Err(Error::Format(format!("truth table length {len} is not a power of two")));
        }
        let mut t = Self::zero(len.trailing_zeros())?;
        for (x, &b) in bits.iter().enumerate() {
            if b != 0 {
                t.set(x as State, true);
            }
        }
        Ok(t)
    }

    pub fn vars(&self) -> u32 {
        self.k
    }

    /// `2^k`
    pub fn len(&self) -> usize {
        1usize << self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: State) -> bool {
        let x = x as usize;
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: State, value: bool) {
        let x = x as usize;
        let bit = 1u64 << (x % 64);
        if value {
            self.words[x / 64] |= bit;
        } else {
            self.words[x / 64] &= !bit;
        }
    }

    /// Ascending list of inputs mapped to 1.
    pub fn ones(&self) -> Vec<State> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push((w * 64) as State + bits.trailing_zeros());
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len() as State).map(|x| u8::from(self.get(x))).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// In-place GF(2) Möbius transform; applying it twice restores the table.
    pub fn mobius(&mut self) {
        for i in 0..self.k.min(6) {
            let shift = 1u32 << i;
            for w in &mut self.words {
                *w ^= (*w << shift) & LOW_MASKS[i as usize];
            }
        }
        for i in 6..self.k {
            let stride = 1usize << (i - 6);
            for block in self.words.chunks_mut(2 * stride) {
                let (lo, hi) = block.split_at_mut(stride);
                for (h, l) in hi.iter_mut().zip(lo.iter()) {
                    *h ^= *l;
                }
            }
        }
    }
}

/// A GF(2) polynomial in `x_0..x_{k-1}`; each monomial is the mask of the
/// variables it multiplies, mask 0 being the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnfPoly {
    k: u32,
    monomials: Vec<State>,
}

impl AnfPoly {
    /// Builds a polynomial from monomial masks; duplicates cancel in pairs.
    pub fn new(k: u32, mut monomials: Vec<State>) -> Result<Self> {
        check_vars(k)?;
        if let Some(&m) = monomials.iter().find(|&&m| u64::from(m) >> k != 0) {
            return Err(Error::StateOutOfRange { state: u64::from(m), k });
        }
        monomials.sort_unstable();
        let mut reduced: Vec<State> = Vec::with_capacity(monomials.len());
        for m in monomials {
            if reduced.last() == Some(&m) {
                reduced.pop();
            } else {
                reduced.push(m);
            }
        }
        Ok(Self { k, monomials: reduced })
    }

    pub fn zero(k: u32) -> Self {
        Self { k, monomials: Vec::new() }
    }

    /// Coefficients read off a transformed table.
    pub fn from_coefficients(coefficients: &TruthTable) -> Self {
        Self { k: coefficients.vars(), monomials: coefficients.ones() }
    }

    pub fn vars(&self) -> u32 {
        self.k
    }

    /// Ascending monomial masks.
    pub fn monomials(&self) -> &[State] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Polynomial sum (symmetric difference of monomials).
    pub fn xor(&self, other: &AnfPoly) -> AnfPoly {
        let mut all = self.monomials.clone();
        all.extend_from_slice(&other.monomials);
        AnfPoly::new(self.k.max(other.k), all).expect("inputs already validated")
    }

    /// Evaluates at `x`.
    pub fn eval(&self, x: State) -> Result<bool> {
        if u64::from(x) >> self.k != 0 {
            return Err(Error::StateOutOfRange { state: u64::from(x), k: self.k });
        }
        Ok(self.monomials.iter().fold(false, |acc, &m| acc ^ (x & m == m)))
    }

    pub fn cost(&self) -> CostReport {
        cost(self)
    }

    /// Renders with the given XOR separator, e.g. `" ⊕ "` or `" + "`.
    pub fn render(&self, xor: &str) -> String {
        if self.monomials.is_empty() {
            return "0".to_string();
        }
        let terms: Vec<String> = self.monomials.iter().map(|&m| render_monomial(m)).collect();
        terms.join(xor)
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" ⊕ "))
    }
}

/// `x_{i}x_{j}..` in ascending variable order, `1` for the empty monomial.
pub fn render_monomial(mask: State) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut bits = mask;
    while bits != 0 {
        out.push_str(&format!("x_{}", bits.trailing_zeros()));
        bits &= bits - 1;
    }
    out
}

/// ANF of the function whose 1-set is `support`.
pub fn support_to_anf(support: &[State], k: u32) -> Result<AnfPoly> {
    let mut table = TruthTable::from_ones(k, support)?;
    table.mobius();
    Ok(AnfPoly::from_coefficients(&table))
}

/// ANF of an arbitrary truth table.
pub fn truth_table_to_anf(table: &TruthTable) -> AnfPoly {
    let mut t = table.clone();
    t.mobius();
    AnfPoly::from_coefficients(&t)
}

/// Evaluates `p` at `x`.
pub fn anf_eval(p: &AnfPoly, x: State) -> Result<bool> {
    p.eval(x)
}

/// Full truth table of `p`.
pub fn anf_to_truth_table(p: &AnfPoly) -> Result<TruthTable> {
    let mut t = TruthTable::from_ones(p.k, &p.monomials)?;
    t.mobius();
    Ok(t)
}

/// Size metrics of an ANF; `gate_upper_bound` counts the two-input AND and
/// XOR gates of the direct two-level realisation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct CostReport {
    pub monomial_count: u64,
    pub literal_count: u64,
    pub max_degree: u32,
    pub gate_upper_bound: u64,
}

impl std::ops::Add for CostReport {
    type Output = CostReport;

    fn add(self, rhs: CostReport) -> CostReport {
        CostReport {
            monomial_count: self.monomial_count + rhs.monomial_count,
            literal_count: self.literal_count + rhs.literal_count,
            max_degree: self.max_degree.max(rhs.max_degree),
            gate_upper_bound: self.gate_upper_bound + rhs.gate_upper_bound,
        }
    }
}

impl std::iter::Sum for CostReport {
    fn sum<I: Iterator<Item = CostReport>>(iter: I) -> CostReport {
        iter.fold(CostReport::default(), |a, b| a + b)
    }
}

pub fn cost(p: &AnfPoly) -> CostReport {
    let monomial_count = p.monomials.len() as u64;
    let literal_count: u64 = p.monomials.iter().map(|m| u64::from(m.count_ones())).sum();
    let max_degree = p.monomials.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    let and_gates: u64 = p.monomials.iter().map(|m| u64::from(m.count_ones().saturating_sub(1))).sum();
    CostReport {
        monomial_count,
        literal_count,
        max_degree,
        gate_upper_bound: and_gates + monomial_count.saturating_sub(1),
    }
}
