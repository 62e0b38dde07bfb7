//! Next-state functions of a binary k-stage machine.
//!
//! Stage `j` holds bit `j` of the integer state; stage 0 is the output. The
//! machine keeps one support set per stage and a derived transition table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assign::{StateSequence, MAX_STAGES};
use crate::error::{Error, Result};
use crate::State;

/// Where the `2^k - n` states outside the generation cycle go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemainingStatePolicy {
    /// Every unused state maps to the all-zero state.
    ZeroSink,
    /// Unused states, in ascending order, form one cycle of their own.
    Cycle,
}

impl RemainingStatePolicy {
    pub const ALL: [RemainingStatePolicy; 2] = [Self::ZeroSink, Self::Cycle];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ZeroSink => "zero-sink",
            Self::Cycle => "cycle",
        }
    }

    pub fn toggled(self) -> Self {
        match self {
            Self::ZeroSink => Self::Cycle,
            Self::Cycle => Self::ZeroSink,
        }
    }
}

impl fmt::Display for RemainingStatePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RemainingStatePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero-sink" => Ok(Self::ZeroSink),
            "cycle" => Ok(Self::Cycle),
            other => Err(Error::Format(format!("unknown policy {other:?}"))),
        }
    }
}

/// A binary k-stage machine given by the supports of its next-state functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMachine {
    k: u32,
    supports: Vec<Vec<State>>,
    policy: RemainingStatePolicy,
    initial_state: State,
    next: Vec<State>,
}

impl BinaryMachine {
    /// Assembles a machine from explicit supports. Each support is sorted and
    /// deduplicated; every element and the initial state must be below `2^k`.
    pub fn from_supports(
        k: u32,
        supports: Vec<Vec<State>>,
        policy: RemainingStatePolicy,
        initial_state: State,
    ) -> Result<Self> {
        if k == 0 || k > MAX_STAGES {
            return Err(Error::VariableCountTooLarge { k, max: MAX_STAGES });
        }
        if supports.len() != k as usize {
            return Err(Error::Format(format!("{} supports given for {k} stages", supports.len())));
        }
        let size = 1usize << k;
        check_range(initial_state, k)?;
        let mut next = vec![0 as State; size];
        let mut sorted = Vec::with_capacity(supports.len());
        for (j, mut support) in supports.into_iter().enumerate() {
            support.sort_unstable();
            support.dedup();
            for &x in &support {
                check_range(x, k)?;
                next[x as usize] |= 1 << j;
            }
            sorted.push(support);
        }
        Ok(Self { k, supports: sorted, policy, initial_state, next })
    }

    fn from_table(k: u32, next: Vec<State>, policy: RemainingStatePolicy, initial_state: State) -> Self {
        let mut supports = vec![Vec::new(); k as usize];
        for (x, &y) in next.iter().enumerate() {
            let mut bits = y;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                supports[j].push(x as State);
                bits &= bits - 1;
            }
        }
        Self { k, supports, policy, initial_state, next }
    }

    /// Number of stages.
    pub fn stages(&self) -> u32 {
        self.k
    }

    /// Ascending support of the next-state function of each stage.
    pub fn supports(&self) -> &[Vec<State>] {
        &self.supports
    }

    pub fn support(&self, stage: usize) -> &[State] {
        &self.supports[stage]
    }

    pub fn policy(&self) -> RemainingStatePolicy {
        self.policy
    }

    pub fn initial_state(&self) -> State {
        self.initial_state
    }

    /// `2^k`
    pub fn state_count(&self) -> usize {
        self.next.len()
    }

    /// One step of the machine.
    pub fn transition(&self, x: State) -> Result<State> {
        check_range(x, self.k)?;
        Ok(self.next[x as usize])
    }

    /// One step without the range check; `x` must be below `2^k`.
    #[inline]
    pub(crate) fn step(&self, x: State) -> State {
        self.next[x as usize]
    }

    /// The full transition table, indexed by state.
    pub fn transition_table(&self) -> &[State] {
        &self.next
    }

    /// States on the cycle through the initial state, in visiting order.
    pub fn cycle_from_initial(&self) -> Result<Vec<State>> {
        let mut visited = Vec::new();
        let mut x = self.initial_state;
        for _ in 0..self.next.len() {
            visited.push(x);
            x = self.step(x);
            if x == self.initial_state {
                return Ok(visited);
            }
        }
        Err(Error::NonCyclicReachability { k: self.k })
    }

    /// Whether states off the main cycle are placed exactly as the policy says.
    pub fn conforms_to_policy(&self) -> bool {
        match self.cycle_from_initial() {
            Ok(cycle) => transition_table(self.k, &cycle, self.policy) == self.next,
            Err(_) => false,
        }
    }

    /// The set of states on the main generation cycle, ascending.
    pub fn used_states(&self) -> Result<Vec<State>> {
        let mut states = self.cycle_from_initial()?;
        states.sort_unstable();
        Ok(states)
    }
}

fn check_range(x: State, k: u32) -> Result<()> {
    if u64::from(x) >> k != 0 {
        Err(Error::StateOutOfRange { state: u64::from(x), k })
    } else {
        Ok(())
    }
}

/// Builds the machine following `seq` cyclically, `s_i -> s_{(i+1) mod n}`.
///
/// Under [`RemainingStatePolicy::ZeroSink`] unused states appear in no support.
/// Under [`RemainingStatePolicy::Cycle`] the unused states `u_0 < .. < u_{m-1}`
/// are chained `u_0 -> u_1 -> .. -> u_{m-1} -> u_0`.
pub fn build_machine(seq: &StateSequence, policy: RemainingStatePolicy) -> BinaryMachine {
    let k = seq.width();
    let states = seq.states();
    BinaryMachine::from_table(k, transition_table(k, states, policy), policy, states[0])
}

/// Transition table of a `k`-stage machine whose main cycle visits `cycle`
/// (distinct states below `2^k`) with the remaining states placed by `policy`.
fn transition_table(k: u32, cycle: &[State], policy: RemainingStatePolicy) -> Vec<State> {
    let n = cycle.len();
    let size = 1usize << k;
    let mut next = vec![0 as State; size];
    let mut used = vec![false; size];
    for (i, &s) in cycle.iter().enumerate() {
        next[s as usize] = cycle[(i + 1) % n];
        used[s as usize] = true;
    }
    if policy == RemainingStatePolicy::Cycle {
        let unused: Vec<State> = (0..size as State).filter(|&x| !used[x as usize]).collect();
        for (i, &u) in unused.iter().enumerate() {
            next[u as usize] = unused[(i + 1) % unused.len()];
        }
    }
    next
}

/// Renders a state as `k` binary digits, most significant stage first.
pub fn format_state(x: State, k: u32) -> String {
    format!("{:0width$b}", x, width = k as usize)
}
