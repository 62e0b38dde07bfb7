//! Synthesis of binary k-stage machines.
//!
//! A binary k-stage machine is a register of `k` bits in which every stage has
//! its own next-state function of all `k` stages. Given a finite binary
//! sequence, this crate builds a machine with the minimum possible number of
//! stages whose stage 0 emits the sequence, derives the algebraic normal form
//! of each next-state function, and checks the result by simulation.
//!
//! ```
//! use kstage::{assign_states, build_machine, parse_sequence, verify_generates, RemainingStatePolicy};
//!
//! let a = parse_sequence("0011011100101110110").unwrap();
//! let states = assign_states(&a).unwrap();
//! let machine = build_machine(&states, RemainingStatePolicy::ZeroSink);
//! assert_eq!(machine.stages(), 5);
//! assert!(verify_generates(&machine, &a));
//! ```

pub mod anf;
pub mod assign;
pub mod document;
pub mod error;
pub mod linear;
pub mod machine;
pub mod netlist;
pub mod optimize;
pub mod sequence;
pub mod sim;

/// A machine state; bit `j` is the value of stage `j`.
pub type State = u32;

pub use anf::{anf_eval, anf_to_truth_table, cost, support_to_anf, AnfPoly, CostReport, TruthTable};
pub use assign::{assign_states, assign_states_permuted, state_width, PoolPermutation, StateSequence, MAX_STAGES};
pub use document::{stage_anfs, verify_document, MachineDocument, VerificationReport};
pub use error::{Error, Result};
pub use linear::{berlekamp_massey, compare_complexities, ComplexityComparison, LinearComplexityResult};
pub use machine::{build_machine, format_state, BinaryMachine, RemainingStatePolicy};
pub use netlist::{emit_netlist, machine_netlist, Netlist};
pub use optimize::{
    machine_cost, optimize, optimize_observed, total_cost, Improvement, Objective, OptimizationConfig,
    OptimizationResult,
};
pub use sequence::{min_stages, parse_sequence, BinarySequence, StageBound};
pub use sim::{cycle_length, run, verify_generates, SimulationTrace};
