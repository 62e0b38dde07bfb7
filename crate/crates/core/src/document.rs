//! Self-describing machine documents.
//!
//! A document is JSON with a fixed field order and ascending support and
//! monomial lists, so identical machines serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::anf::{support_to_anf, AnfPoly};
use crate::error::{Error, Result};
use crate::machine::{BinaryMachine, RemainingStatePolicy};
use crate::sequence::{parse_sequence, BinarySequence};
use crate::sim::{cycle_length, verify_generates};
use crate::State;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineDocument {
    pub format_version: u32,
    pub k: u32,
    pub n: usize,
    pub policy: RemainingStatePolicy,
    pub initial_state: State,
    pub supports: Vec<Vec<State>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anf: Option<Vec<Vec<State>>>,
    pub sequence: String,
}

impl MachineDocument {
    pub fn from_machine(machine: &BinaryMachine, seq: &BinarySequence, with_anf: bool) -> Result<Self> {
        let anf = if with_anf {
            Some(
                stage_anfs(machine)?
                    .into_iter()
                    .map(|p| p.monomials().to_vec())
                    .collect(),
            )
        } else {
            None
        };
        Ok(Self {
            format_version: FORMAT_VERSION,
            k: machine.stages(),
            n: seq.len(),
            policy: machine.policy(),
            initial_state: machine.initial_state(),
            supports: machine.supports().to_vec(),
            anf,
            sequence: seq.to_string(),
        })
    }

    /// Parses and structurally validates a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MachineDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Canonical serialization, one top-level field per line.
    pub fn to_json(&self) -> String {
        fn json<T: Serialize + ?Sized>(v: &T) -> String {
            serde_json::to_string(v).expect("plain data serializes")
        }
        fn rows(rows: &[Vec<State>]) -> String {
            if rows.is_empty() {
                return "[]".to_string();
            }
            let lines: Vec<String> = rows.iter().map(|r| format!("    {}", json(r))).collect();
            format!("[\n{}\n  ]", lines.join(",\n"))
        }
        let mut fields = vec![
            format!("  \"format_version\": {}", self.format_version),
            format!("  \"k\": {}", self.k),
            format!("  \"n\": {}", self.n),
            format!("  \"policy\": {}", json(&self.policy)),
            format!("  \"initial_state\": {}", self.initial_state),
            format!("  \"supports\": {}", rows(&self.supports)),
        ];
        if let Some(anf) = &self.anf {
            fields.push(format!("  \"anf\": {}", rows(anf)));
        }
        fields.push(format!("  \"sequence\": {}", json(&self.sequence)));
        format!("{{\n{}\n}}\n", fields.join(",\n"))
    }

    fn validate(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format_version {}", self.format_version)));
        }
        if self.supports.len() != self.k as usize {
            return Err(Error::Format(format!("{} supports for k = {}", self.supports.len(), self.k)));
        }
        let check_rows = |name: &str, rows: &[Vec<State>]| -> Result<()> {
            for (j, row) in rows.iter().enumerate() {
                if row.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Format(format!("{name}[{j}] is not strictly ascending")));
                }
                if let Some(&x) = row.iter().find(|&&x| self.k >= 32 || x >> self.k != 0) {
                    return Err(Error::Format(format!("{name}[{j}] holds {x}, not below 2^{}", self.k)));
                }
            }
            Ok(())
        };
        check_rows("supports", &self.supports)?;
        if let Some(anf) = &self.anf {
            if anf.len() != self.k as usize {
                return Err(Error::Format(format!("{} polynomials for k = {}", anf.len(), self.k)));
            }
            check_rows("anf", anf)?;
        }
        let seq = self.target()?;
        if seq.len() != self.n {
            return Err(Error::Format(format!("n = {} but the sequence has {} bits", self.n, seq.len())));
        }
        Ok(())
    }

    /// The embedded target sequence.
    pub fn target(&self) -> Result<BinarySequence> {
        parse_sequence(&self.sequence).map_err(|e| Error::Format(format!("sequence: {e}")))
    }

    pub fn to_machine(&self) -> Result<BinaryMachine> {
        BinaryMachine::from_supports(self.k, self.supports.clone(), self.policy, self.initial_state)
            .map_err(|e| Error::Format(e.to_string()))
    }
}

/// ANF of every stage's next-state function, stage 0 first.
pub fn stage_anfs(machine: &BinaryMachine) -> Result<Vec<AnfPoly>> {
    machine
        .supports()
        .iter()
        .map(|support| support_to_anf(support, machine.stages()))
        .collect()
}

/// Outcome of checking a document against a target sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub generates: bool,
    pub policy_conforms: bool,
    /// `None` when the document carries no ANF.
    pub anf_consistent: Option<bool>,
    /// Cycle length through the initial state.
    pub period: Option<usize>,
    pub trace_len: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.generates && self.policy_conforms && self.anf_consistent != Some(false)
    }
}

/// Checks that the document's machine generates `target` (or the embedded
/// sequence), places unused states as its policy states, and that any
/// embedded ANF matches the supports.
pub fn verify_document(doc: &MachineDocument, target: Option<&BinarySequence>) -> Result<VerificationReport> {
    let machine = doc.to_machine()?;
    let embedded;
    let target = match target {
        Some(t) => t,
        None => {
            embedded = doc.target()?;
            &embedded
        }
    };
    let anf_consistent = match &doc.anf {
        None => None,
        Some(polys) => {
            let derived = stage_anfs(&machine)?;
            Some(polys.iter().zip(&derived).all(|(p, d)| p.as_slice() == d.monomials()))
        }
    };
    Ok(VerificationReport {
        generates: verify_generates(&machine, target),
        policy_conforms: machine.conforms_to_policy(),
        anf_consistent,
        period: cycle_length(&machine, machine.initial_state()),
        trace_len: target.len(),
    })
}
