//! Hill climbing over pool permutations and remaining-state policies.
//!
//! A move swaps two entries of the even pool or two entries of the odd pool
//! (parity is fixed by the target bits) or toggles the policy. Only strictly
//! improving moves are accepted. Chain 0 starts from the identity
//! permutation; each restart starts from a seeded random permutation. Chains
//! run in parallel and the best result is chosen by cost, then by the
//! canonical serialization of the machine.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anf::{support_to_anf, CostReport};
use crate::assign::{assign_states_permuted, PoolPermutation};
use crate::document::MachineDocument;
use crate::error::{Error, Result};
use crate::machine::{build_machine, BinaryMachine, RemainingStatePolicy};
use crate::sequence::BinarySequence;

/// Probability of proposing a policy toggle when both policies are allowed.
const TOGGLE_PROBABILITY: f64 = 0.1;

/// Which `CostReport` field the search minimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    Monomials,
    Literals,
    GateUpperBound,
}

impl Objective {
    pub fn select(self, cost: &CostReport) -> u64 {
        match self {
            Self::Monomials => cost.monomial_count,
            Self::Literals => cost.literal_count,
            Self::GateUpperBound => cost.gate_upper_bound,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Monomials => "monomials",
            Self::Literals => "literals",
            Self::GateUpperBound => "gate-upper-bound",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomials" => Ok(Self::Monomials),
            "literals" => Ok(Self::Literals),
            "gate-upper-bound" | "gates" => Ok(Self::GateUpperBound),
            other => Err(Error::InvalidConfig(format!("unknown objective {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizationConfig {
    /// Moves proposed per chain. Zero runs no search at all.
    pub iterations: usize,
    /// Random-start chains in addition to the identity chain.
    pub restarts: usize,
    pub seed: u64,
    pub policy_choices: Vec<RemainingStatePolicy>,
    pub objective: Objective,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            iterations: 2000,
            restarts: 4,
            seed: 1,
            policy_choices: vec![RemainingStatePolicy::ZeroSink],
            objective: Objective::Monomials,
        }
    }
}

impl OptimizationConfig {
    fn policies(&self) -> Result<Vec<RemainingStatePolicy>> {
        let mut policies = self.policy_choices.clone();
        policies.sort();
        policies.dedup();
        if policies.is_empty() {
            return Err(Error::InvalidConfig("no remaining-state policy allowed".into()));
        }
        Ok(policies)
    }
}

/// A strict improvement accepted at `iteration` (0 is the starting point).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Improvement {
    pub iteration: usize,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizationResult {
    pub machine: BinaryMachine,
    pub perm: PoolPermutation,
    /// Cost summed over all stages.
    pub total_cost: CostReport,
    /// `objective` applied to `total_cost`.
    pub objective_value: u64,
    /// Objective value of the identity-permutation zero-sink machine.
    pub canonical_value: u64,
    /// Index of the winning chain, 0 being the identity start.
    pub chain: usize,
    /// Improvements of the winning chain.
    pub history: Vec<Improvement>,
}

/// Summed cost report over every stage of the machine.
pub fn machine_cost(machine: &BinaryMachine) -> CostReport {
    machine
        .supports()
        .iter()
        .map(|support| {
            support_to_anf(support, machine.stages())
                .expect("machine supports are in range")
                .cost()
        })
        .sum()
}

/// The objective summed over all stages.
pub fn total_cost(machine: &BinaryMachine, objective: Objective) -> u64 {
    objective.select(&machine_cost(machine))
}

pub fn optimize(seq: &BinarySequence, cfg: &OptimizationConfig) -> Result<OptimizationResult> {
    optimize_observed(seq, cfg, |_| {})
}

/// Like [`optimize`], calling `observer` with every machine the search builds.
pub fn optimize_observed<F>(seq: &BinarySequence, cfg: &OptimizationConfig, observer: F) -> Result<OptimizationResult>
where
    F: Fn(&BinaryMachine) + Sync,
{
    seq.require_nonconstant()?;
    let policies = cfg.policies()?;
    let identity = PoolPermutation::identity_for(seq);
    let canonical = build_machine(&assign_states_permuted(seq, &identity)?, RemainingStatePolicy::ZeroSink);
    let canonical_value = total_cost(&canonical, cfg.objective);

    let chains: Vec<ChainResult> = (0..=cfg.restarts)
        .into_par_iter()
        .map(|chain| run_chain(seq, cfg, &policies, chain, &observer))
        .collect::<Result<_>>()?;

    let mut best: Option<(ChainResult, String)> = None;
    for result in chains {
        let key = MachineDocument::from_machine(&result.machine, seq, false)?.to_json();
        let better = match &best {
            None => true,
            Some((b, bkey)) => (result.value, &key) < (b.value, bkey),
        };
        if better {
            best = Some((result, key));
        }
    }
    let (best, _) = best.expect("at least one chain runs");
    Ok(OptimizationResult {
        total_cost: machine_cost(&best.machine),
        objective_value: best.value,
        canonical_value,
        chain: best.chain,
        history: best.history,
        machine: best.machine,
        perm: best.perm,
    })
}

struct ChainResult {
    chain: usize,
    machine: BinaryMachine,
    perm: PoolPermutation,
    value: u64,
    history: Vec<Improvement>,
}

#[derive(Clone, Copy)]
enum Move {
    SwapEven(usize, usize),
    SwapOdd(usize, usize),
    Toggle,
}

fn run_chain<F>(
    seq: &BinarySequence,
    cfg: &OptimizationConfig,
    policies: &[RemainingStatePolicy],
    chain: usize,
    observer: &F,
) -> Result<ChainResult>
where
    F: Fn(&BinaryMachine) + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chain as u64);

    let mut perm = PoolPermutation::identity_for(seq);
    let mut policy = if policies.contains(&RemainingStatePolicy::ZeroSink) {
        RemainingStatePolicy::ZeroSink
    } else {
        policies[0]
    };
    if chain > 0 {
        let (evens, odds) = perm.pools_mut();
        evens.shuffle(&mut rng);
        odds.shuffle(&mut rng);
        policy = *policies.choose(&mut rng).expect("policies nonempty");
    }

    let evaluate = |perm: &PoolPermutation, policy| -> Result<(BinaryMachine, u64)> {
        let machine = build_machine(&assign_states_permuted(seq, perm)?, policy);
        observer(&machine);
        let value = total_cost(&machine, cfg.objective);
        Ok((machine, value))
    };

    let (mut machine, mut value) = evaluate(&perm, policy)?;
    let mut history = vec![Improvement { iteration: 0, cost: value }];
    let evens = perm.even_order().len();
    let odds = perm.odd_order().len();
    let can_toggle = policies.len() > 1;
    let swappable = (if evens > 1 { evens } else { 0 }) + (if odds > 1 { odds } else { 0 });

    for iteration in 1..=cfg.iterations {
        let mv = if can_toggle && (swappable == 0 || rng.random_bool(TOGGLE_PROBABILITY)) {
            Move::Toggle
        } else if swappable == 0 {
            break;
        } else if evens > 1 && rng.random_range(0..swappable) < evens {
            let (a, b) = distinct_pair(&mut rng, evens);
            Move::SwapEven(a, b)
        } else {
            let (a, b) = distinct_pair(&mut rng, odds);
            Move::SwapOdd(a, b)
        };
        let candidate_policy = match mv {
            Move::Toggle => policy.toggled(),
            _ => policy,
        };
        apply(&mut perm, mv);
        let (candidate, candidate_value) = evaluate(&perm, candidate_policy)?;
        if candidate_value < value {
            machine = candidate;
            value = candidate_value;
            policy = candidate_policy;
            history.push(Improvement { iteration, cost: value });
        } else {
            apply(&mut perm, mv);
        }
    }
    Ok(ChainResult { chain, machine, perm, value, history })
}

fn distinct_pair(rng: &mut ChaCha8Rng, len: usize) -> (usize, usize) {
    let a = rng.random_range(0..len);
    let mut b = rng.random_range(0..len - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Applies a move; every move is its own inverse.
fn apply(perm: &mut PoolPermutation, mv: Move) {
    match mv {
        Move::SwapEven(a, b) => perm.swap_even(a, b),
        Move::SwapOdd(a, b) => perm.swap_odd(a, b),
        Move::Toggle => {}
    }
}
