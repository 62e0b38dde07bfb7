//! Stepping machines and checking what they generate.

use std::fmt::Write as _;

use crate::error::Result;
use crate::machine::{format_state, BinaryMachine};
use crate::sequence::BinarySequence;
use crate::State;

/// States visited by a run and the output (stage 0) bit of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationTrace {
    pub states: Vec<State>,
    pub output_bits: Vec<u8>,
}

impl SimulationTrace {
    pub fn steps(&self) -> usize {
        self.states.len()
    }

    /// One line per step: `<step> <state, MSB first> <output bit>`.
    pub fn render(&self, k: u32) -> String {
        let mut out = String::new();
        for (step, (&s, &b)) in self.states.iter().zip(&self.output_bits).enumerate() {
            let _ = writeln!(out, "{step} {} {b}", format_state(s, k));
        }
        out
    }
}

/// Runs `steps` states starting at (and including) `start`.
pub fn run(machine: &BinaryMachine, start: State, steps: usize) -> Result<SimulationTrace> {
    machine.transition(start)?;
    let mut states = Vec::with_capacity(steps);
    let mut x = start;
    for _ in 0..steps {
        states.push(x);
        x = machine.step(x);
    }
    let output_bits = states.iter().map(|&s| (s & 1) as u8).collect();
    Ok(SimulationTrace { states, output_bits })
}

/// True iff the machine, started at its initial state, emits `seq` and then
/// returns to the initial state.
pub fn verify_generates(machine: &BinaryMachine, seq: &BinarySequence) -> bool {
    let n = seq.len();
    let Ok(trace) = run(machine, machine.initial_state(), n) else {
        return false;
    };
    if trace.output_bits != seq.bits() {
        return false;
    }
    trace.states.last().is_some_and(|&last| machine.step(last) == machine.initial_state())
}

/// Length of the cycle through `start`, or `None` if `start` is transient.
pub fn cycle_length(machine: &BinaryMachine, start: State) -> Option<usize> {
    machine.transition(start).ok()?;
    let mut seen = vec![false; machine.state_count()];
    let mut x = start;
    for t in 1..=machine.state_count() {
        seen[x as usize] = true;
        x = machine.step(x);
        if x == start {
            return Some(t);
        }
        if seen[x as usize] {
            return None;
        }
    }
    None
}
