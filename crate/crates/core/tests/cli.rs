use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use kstage::MachineDocument;

const PAPER_A: &str = "0011011100101110110";

fn kstage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstage")).args(args).output().unwrap()
}

fn kstage_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kstage"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn synth_paper_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "a.txt", PAPER_A);
    let out = dir.path().join("m.json");
    let o = kstage(&["synth", "-i", s(&input), "--emit-anf", "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("k=5 n=19 wt=11\n"), "{text}");
    assert!(text.contains("f_4: monomials=10 literals=35 degree=5 gates=34"));
    assert!(text.contains("total: monomials=76"));
    let doc = MachineDocument::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.k, 5);
    assert_eq!(doc.supports[4], vec![12, 15, 19]);
    assert_eq!(doc.anf.as_ref().unwrap()[4].len(), 10);
    assert_eq!(doc.sequence, PAPER_A);
}

#[test]
fn synth_two_bits_from_stdin() {
    let o = kstage_stdin(&["synth", "--input", "-"], "0 1\n");
    assert_eq!(o.status.code(), Some(0));
    let doc = MachineDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.k, 1);
    assert_eq!(doc.supports, vec![vec![0]]);
    assert!(stderr(&o).contains("k=1 n=2 wt=1"));
}

#[test]
fn synth_rejects_bad_input() {
    let o = kstage_stdin(&["synth", "-i", "-"], "111");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("constant"));

    let o = kstage_stdin(&["synth", "-i", "-"], "01a1");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("position 2"));

    let o = kstage(&["synth", "-i", "/nonexistent/seq.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn synth_warns_on_periodic_input() {
    let o = kstage_stdin(&["synth", "-i", "-", "-o", "/dev/null"], "011011");
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("period 3"));
}

#[test]
fn synth_cycle_policy_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = kstage_stdin(&["synth", "-i", "-", "--policy", "cycle", "-o", s(&out)], PAPER_A);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"policy\": \"cycle\""));
    assert_eq!(kstage(&["verify", "-m", s(&out)]).status.code(), Some(0));
}

#[test]
fn verify_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "a.txt", PAPER_A);
    let out = dir.path().join("m.json");
    assert!(kstage(&["synth", "-i", s(&input), "-o", s(&out)]).status.success());

    let o = kstage(&["verify", "-m", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "period=19 trace_len=19\nok\n");

    let other = write(dir.path(), "b.txt", "0011011100101110111");
    assert_eq!(kstage(&["verify", "-m", s(&out), "-s", s(&other)]).status.code(), Some(1));

    let text = std::fs::read_to_string(&out).unwrap();
    let tampered = write(dir.path(), "t.json", &text.replace("[12,15,19]", "[12,19]"));
    assert_eq!(kstage(&["verify", "-m", s(&tampered)]).status.code(), Some(1));

    let truncated = write(dir.path(), "cut.json", &text[..text.len() / 2]);
    assert_eq!(kstage(&["verify", "-m", s(&truncated)]).status.code(), Some(2));

    let garbage = write(dir.path(), "g.json", "not json");
    assert_eq!(kstage(&["verify", "-m", s(&garbage)]).status.code(), Some(2));
}

#[test]
fn verify_trace_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    assert!(kstage_stdin(&["synth", "-i", "-", "-o", s(&out)], PAPER_A).status.success());
    let trace = dir.path().join("trace.txt");
    assert!(kstage(&["verify", "-m", s(&out), "--trace", s(&trace)]).status.success());
    let lines: Vec<String> = std::fs::read_to_string(&trace).unwrap().lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 19);
    assert_eq!(lines[0], "0 00000 0");
    assert_eq!(lines[2], "2 00001 1");
    assert_eq!(lines[18], "18 01110 0");
}

#[test]
fn bound_reports() {
    let o = kstage_stdin(&["bound", "-i", "-"], PAPER_A);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k=5 wt=11 n=19\n");

    let o = kstage_stdin(&["bound", "-i", "-"], "0110011001100111\n");
    assert_eq!(stdout(&o), "k=5 wt=9 n=16\n");

    let o = kstage_stdin(&["bound", "-i", "-"], "0110100110010110");
    assert_eq!(stdout(&o), "k=4 wt=8 n=16\nbalanced: k = ceil(log2 n)\n");

    assert_eq!(kstage_stdin(&["bound", "-i", "-"], "0000").status.code(), Some(1));
}

#[test]
fn baseline_reports() {
    let o = kstage_stdin(&["baseline", "-i", "-"], PAPER_A);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("L=11 k=5\n"));

    let o = kstage_stdin(&["baseline", "-i", "-"], "00000000");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("L=0\n"));
    assert!(stderr(&o).contains("warning"));

    let o = kstage_stdin(&["baseline", "-i", "-"], "01");
    assert!(stdout(&o).starts_with("L=2 k=1\n"));
}

#[test]
fn optimize_writes_verifiable_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("opt.json");
    let net = dir.path().join("opt.net");
    let o = kstage_stdin(
        &[
            "optimize", "-i", "-", "--iterations", "300", "--restarts", "2", "--seed", "7", "--objective",
            "gate-upper-bound", "--policies", "zero-sink", "--emit-anf", "-o", s(&out), "--netlist", s(&net),
        ],
        PAPER_A,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("objective=gate-upper-bound canonical=196 best="), "{text}");
    assert!(text.contains("iteration 0 cost"));
    assert_eq!(kstage(&["verify", "-m", s(&out)]).status.code(), Some(0));
    let doc = MachineDocument::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.policy.as_str(), "zero-sink");
    assert!(std::fs::read_to_string(&net).unwrap().ends_with("output x0\n"));

    let o = kstage_stdin(&["optimize", "-i", "-", "--objective", "speed"], PAPER_A);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn netlist_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    assert!(kstage_stdin(&["synth", "-i", "-", "-o", s(&out)], "01").status.success());
    let o = kstage(&["netlist", "-m", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "reg x0\ng0 = XOR(1, x0)\nnext x0 = g0\noutput x0\n");

    assert!(kstage_stdin(&["synth", "-i", "-", "-o", s(&out)], PAPER_A).status.success());
    let o = kstage(&["netlist", "-m", s(&out)]);
    let gates = stdout(&o).lines().filter(|l| l.starts_with('g')).count();
    assert_eq!(gates, 196);
}
