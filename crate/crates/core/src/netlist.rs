//! Two-input gate netlists for machine next-state functions.
//!
//! Each stage's ANF is realised directly: an AND chain per monomial, then an
//! XOR chain over the monomials. The number of gate lines equals the summed
//! `gate_upper_bound` of the stage polynomials.

use std::fmt::Write as _;

use crate::anf::AnfPoly;
use crate::document::stage_anfs;
use crate::error::Result;
use crate::machine::BinaryMachine;

/// Netlist text and the number of gates in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    pub text: String,
    pub gates: usize,
}

/// Emits the netlist of a machine whose stage `j` computes `anfs[j]`.
pub fn emit_netlist(anfs: &[AnfPoly]) -> Netlist {
    let mut text = String::new();
    let mut gates = 0usize;
    let mut gate = |text: &mut String, op: &str, a: &str, b: &str| -> String {
        let name = format!("g{gates}");
        let _ = writeln!(text, "{name} = {op}({a}, {b})");
        gates += 1;
        name
    };
    for j in 0..anfs.len() {
        let _ = writeln!(text, "reg x{j}");
    }
    for (j, poly) in anfs.iter().enumerate() {
        let mut acc: Option<String> = None;
        for &mask in poly.monomials() {
            let term = if mask == 0 {
                "1".to_string()
            } else {
                let mut vars = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| format!("x{i}"));
                let first = vars.next().expect("nonzero mask");
                vars.fold(first, |a, v| gate(&mut text, "AND", &a, &v))
            };
            acc = Some(match acc {
                None => term,
                Some(a) => gate(&mut text, "XOR", &a, &term),
            });
        }
        let _ = writeln!(text, "next x{j} = {}", acc.as_deref().unwrap_or("0"));
    }
    text.push_str("output x0\n");
    Netlist { text, gates }
}

/// Netlist of a machine, deriving the stage ANFs from its supports.
pub fn machine_netlist(machine: &BinaryMachine) -> Result<Netlist> {
    Ok(emit_netlist(&stage_anfs(machine)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assign::assign_states;
    use crate::machine::{build_machine, RemainingStatePolicy};
    use crate::sequence::parse_sequence;

    #[test]
    fn toggle() {
        let m = BinaryMachine::from_supports(1, vec![vec![0]], RemainingStatePolicy::ZeroSink, 0).unwrap();
        let net = machine_netlist(&m).unwrap();
        assert_eq!(net.text, "reg x0\ng0 = XOR(1, x0)\nnext x0 = g0\noutput x0\n");
        assert_eq!(net.gates, 1);
    }

    #[test]
    fn constant_and_projection_stages() {
        let net = emit_netlist(&[AnfPoly::zero(2), AnfPoly::new(2, vec![1]).unwrap()]);
        assert_eq!(net.text, "reg x0\nreg x1\nnext x0 = 0\nnext x1 = x0\noutput x0\n");
        assert_eq!(net.gates, 0);
    }

    #[test]
    fn gate_chains() {
        // 1 + x0x1x2 + x1
        let p = AnfPoly::new(3, vec![0, 7, 2]).unwrap();
        let net = emit_netlist(&[p.clone(), AnfPoly::zero(3), AnfPoly::zero(3)]);
        assert_eq!(
            net.text,
            "reg x0\nreg x1\nreg x2\ng0 = XOR(1, x1)\ng1 = AND(x0, x1)\ng2 = AND(g1, x2)\n\
             g3 = XOR(g0, g2)\nnext x0 = g3\nnext x1 = 0\nnext x2 = 0\noutput x0\n"
        );
        assert_eq!(net.gates as u64, p.cost().gate_upper_bound);
    }

    #[test]
    fn paper_gate_count() {
        let a = parse_sequence("0011011100101110110").unwrap();
        let m = build_machine(&assign_states(&a).unwrap(), RemainingStatePolicy::ZeroSink);
        let anfs = stage_anfs(&m).unwrap();
        let net = emit_netlist(&anfs);
        let bound: u64 = anfs.iter().map(|p| p.cost().gate_upper_bound).sum();
        assert_eq!(net.gates as u64, bound);
        let gate_lines = net.text.lines().filter(|l| l.starts_with('g')).count();
        assert_eq!(gate_lines, net.gates);
    }
}
