//! State assignment: integers whose least significant bits follow the target.
//!
//! The `i`-th zero of the sequence takes the `i`-th entry of the even pool
//! `{0, 2, .., 2(n - wt) - 2}` and the `i`-th one takes the `i`-th entry of the
//! odd pool `{1, 3, .., 2 wt - 1}`. With the pools in ascending order every
//! state fits in exactly the minimum number of stages.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::sequence::BinarySequence;
use crate::State;

/// Largest supported stage count. Tables of `2^k` entries are allocated per machine.
pub const MAX_STAGES: u32 = 24;

/// Per-step machine states `s_0..s_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSequence {
    states: Vec<State>,
    width: u32,
}

impl StateSequence {
    /// Validates an arbitrary list of states: nonempty, pairwise distinct and
    /// representable in at most [`MAX_STAGES`] bits.
    pub fn new(states: Vec<State>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidStateSequence("no states".into()));
        }
        let mut seen = HashSet::with_capacity(states.len());
        for &s in &states {
            if !seen.insert(s) {
                return Err(Error::InvalidStateSequence(format!("state {s} repeats")));
            }
        }
        let width = bit_length(states.iter().copied().max().unwrap_or(0));
        if width > MAX_STAGES {
            return Err(Error::VariableCountTooLarge { k: width, max: MAX_STAGES });
        }
        Ok(Self { states, width })
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Bits needed for the largest state (at least 1).
    pub fn width(&self) -> u32 {
        self.width
    }

    /// The output bits `LSB(s_i)`.
    pub fn lsb_trace(&self) -> impl Iterator<Item = u8> + '_ {
        self.states.iter().map(|&s| (s & 1) as u8)
    }
}

/// Bit-length of `x`, treating 0 as one bit wide.
pub fn bit_length(x: State) -> u32 {
    (State::BITS - x.leading_zeros()).max(1)
}

/// Bits needed to represent the largest state of `seq`.
pub fn state_width(seq: &StateSequence) -> u32 {
    seq.width()
}

/// Orders in which the even and odd pools are consumed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoolPermutation {
    even_order: Vec<State>,
    odd_order: Vec<State>,
}

impl PoolPermutation {
    /// Checks that `even_order` permutes `{0, 2, ..}` and `odd_order`
    /// permutes `{1, 3, ..}`, each over its own length.
    pub fn new(even_order: Vec<State>, odd_order: Vec<State>) -> Result<Self> {
        check_pool(&even_order, 0, "even")?;
        check_pool(&odd_order, 1, "odd")?;
        Ok(Self { even_order, odd_order })
    }

    /// Ascending pools: `zeros` evens and `ones` odds.
    pub fn identity(zeros: usize, ones: usize) -> Self {
        Self {
            even_order: (0..zeros as State).map(|i| 2 * i).collect(),
            odd_order: (0..ones as State).map(|i| 2 * i + 1).collect(),
        }
    }

    /// The identity permutation sized for `seq`.
    pub fn identity_for(seq: &BinarySequence) -> Self {
        Self::identity(seq.zeros(), seq.weight())
    }

    pub fn even_order(&self) -> &[State] {
        &self.even_order
    }

    pub fn odd_order(&self) -> &[State] {
        &self.odd_order
    }

    /// Swaps two entries of the even pool.
    pub fn swap_even(&mut self, a: usize, b: usize) {
        self.even_order.swap(a, b);
    }

    /// Swaps two entries of the odd pool.
    pub fn swap_odd(&mut self, a: usize, b: usize) {
        self.odd_order.swap(a, b);
    }

    pub(crate) fn pools_mut(&mut self) -> (&mut Vec<State>, &mut Vec<State>) {
        (&mut self.even_order, &mut self.odd_order)
    }
}

fn check_pool(order: &[State], parity: State, name: &str) -> Result<()> {
    let mut seen = vec![false; order.len()];
    for &v in order {
        let idx = (v / 2) as usize;
        if v % 2 != parity || idx >= order.len() || seen[idx] {
            return Err(Error::PermutationMismatch(format!(
                "{name} order is not a permutation of its pool (offending value {v})"
            )));
        }
        seen[idx] = true;
    }
    Ok(())
}

/// Assigns states with ascending pools.
pub fn assign_states(seq: &BinarySequence) -> Result<StateSequence> {
    seq.require_nonconstant()?;
    assign_states_permuted(seq, &PoolPermutation::identity_for(seq))
}

/// Assigns states consuming the pools in the order given by `perm`.
pub fn assign_states_permuted(seq: &BinarySequence, perm: &PoolPermutation) -> Result<StateSequence> {
    seq.require_nonconstant()?;
    if perm.even_order.len() != seq.zeros() || perm.odd_order.len() != seq.weight() {
        return Err(Error::PermutationMismatch(format!(
            "pools have {} evens and {} odds, sequence needs {} and {}",
            perm.even_order.len(),
            perm.odd_order.len(),
            seq.zeros(),
            seq.weight()
        )));
    }
    let mut evens = perm.even_order.iter();
    let mut odds = perm.odd_order.iter();
    let states: Vec<State> = seq
        .bits()
        .iter()
        .map(|&bit| {
            let next = if bit == 0 { evens.next() } else { odds.next() };
            *next.expect("pool sizes checked against the sequence")
        })
        .collect();
    StateSequence::new(states)
}
