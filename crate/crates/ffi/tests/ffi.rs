use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use kstage_ffi::*;

const PAPER_A: &str = "0011011100101110110";

fn parse(text: &str) -> *mut KsSequence {
    let c = CString::new(text).unwrap();
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { ks_sequence_parse(c.as_ptr(), &mut seq) }, KsStatus::Ok);
    seq
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ks_last_error_message()) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { ks_string_free(p) };
    s
}

#[test]
fn sequence_queries() {
    let seq = parse(PAPER_A);
    unsafe {
        assert_eq!(ks_sequence_length(seq), 19);
        assert_eq!(ks_sequence_weight(seq), 11);
        assert_eq!(ks_sequence_period(seq), 0);
        let mut k = 0;
        assert_eq!(ks_min_stages(seq, &mut k), KsStatus::Ok);
        assert_eq!(k, 5);
        let mut l = 0;
        assert_eq!(ks_linear_complexity(seq, &mut l), KsStatus::Ok);
        assert_eq!(l, 11);
        ks_sequence_free(seq);
    }
    let periodic = parse("0101");
    assert_eq!(unsafe { ks_sequence_period(periodic) }, 2);
    unsafe { ks_sequence_free(periodic) };
}

#[test]
fn parse_errors_set_status_and_message() {
    let mut seq = ptr::null_mut();
    let bad = CString::new("01x").unwrap();
    assert_eq!(unsafe { ks_sequence_parse(bad.as_ptr(), &mut seq) }, KsStatus::InvalidCharacter);
    assert!(seq.is_null());
    assert!(last_error().contains("position 2"));

    let empty = CString::new("  ").unwrap();
    assert_eq!(unsafe { ks_sequence_parse(empty.as_ptr(), &mut seq) }, KsStatus::EmptySequence);
    assert_eq!(unsafe { ks_sequence_parse(ptr::null(), &mut seq) }, KsStatus::NullPointer);

    let bits = [0u8, 1, 2];
    assert_eq!(unsafe { ks_sequence_from_bits(bits.as_ptr(), 3, &mut seq) }, KsStatus::InvalidCharacter);
    assert_eq!(unsafe { ks_sequence_from_bits(bits.as_ptr(), 2, &mut seq) }, KsStatus::Ok);
    assert_eq!(unsafe { ks_sequence_length(seq) }, 2);
    unsafe { ks_sequence_free(seq) };
}

#[test]
fn synthesize_and_inspect() {
    let seq = parse(PAPER_A);
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(ks_synthesize(seq, KsPolicy::ZeroSink, &mut m), KsStatus::Ok);
        assert_eq!(ks_machine_stages(m), 5);
        assert_eq!(ks_machine_initial_state(m), 0);

        let mut next = 0;
        assert_eq!(ks_machine_transition(m, 15, &mut next), KsStatus::Ok);
        assert_eq!(next, 17);
        assert_eq!(ks_machine_transition(m, 20, &mut next), KsStatus::Ok);
        assert_eq!(next, 0);
        assert_eq!(ks_machine_transition(m, 32, &mut next), KsStatus::StateOutOfRange);

        let mut len = 0;
        assert_eq!(ks_machine_support(m, 0, ptr::null_mut(), 0, &mut len), KsStatus::BufferTooSmall);
        assert_eq!(len, 11);
        let mut buf = vec![0u32; len];
        assert_eq!(ks_machine_support(m, 0, buf.as_mut_ptr(), buf.len(), &mut len), KsStatus::Ok);
        assert_eq!(buf, vec![1, 2, 4, 5, 7, 8, 10, 12, 13, 15, 19]);
        assert_eq!(ks_machine_support(m, 5, buf.as_mut_ptr(), buf.len(), &mut len), KsStatus::InvalidArgument);

        let mut ok = false;
        assert_eq!(ks_machine_verify(m, ptr::null(), &mut ok), KsStatus::Ok);
        assert!(ok);
        let other = parse("0011011100101110111");
        assert_eq!(ks_machine_verify(m, other, &mut ok), KsStatus::Ok);
        assert!(!ok);
        ks_sequence_free(other);

        let mut cost = KsCost::default();
        assert_eq!(ks_machine_cost(m, &mut cost), KsStatus::Ok);
        assert_eq!(cost, KsCost { monomial_count: 76, literal_count: 200, max_degree: 5, gate_upper_bound: 196 });

        let mut net = ptr::null_mut();
        assert_eq!(ks_machine_netlist(m, &mut net), KsStatus::Ok);
        let net = take_string(net);
        assert_eq!(net.lines().filter(|l| l.starts_with('g')).count(), 196);

        ks_machine_free(m);
        ks_sequence_free(seq);
    }
}

#[test]
fn constant_sequence_rejected() {
    let seq = parse("0000");
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(ks_synthesize(seq, KsPolicy::Cycle, &mut m), KsStatus::ConstantSequence);
        assert!(m.is_null());
        let mut k = 0;
        assert_eq!(ks_min_stages(seq, &mut k), KsStatus::ConstantSequence);
        ks_sequence_free(seq);
    }
}

#[test]
fn document_round_trip() {
    let seq = parse(PAPER_A);
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(ks_synthesize(seq, KsPolicy::Cycle, &mut m), KsStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(ks_machine_to_document(m, true, &mut text), KsStatus::Ok);
        let text = take_string(text);
        assert!(text.contains("\"policy\": \"cycle\""));

        let c = CString::new(text.clone()).unwrap();
        let mut loaded = ptr::null_mut();
        assert_eq!(ks_machine_from_document(c.as_ptr(), &mut loaded), KsStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(ks_machine_to_document(loaded, true, &mut again), KsStatus::Ok);
        assert_eq!(take_string(again), text);

        let truncated = CString::new(&text[..40]).unwrap();
        let mut bad = ptr::null_mut();
        assert_eq!(ks_machine_from_document(truncated.as_ptr(), &mut bad), KsStatus::Format);
        assert!(bad.is_null());

        ks_machine_free(loaded);
        ks_machine_free(m);
        ks_sequence_free(seq);
    }
}

#[test]
fn optimize_through_ffi() {
    let seq = parse(PAPER_A);
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(ks_optimize(seq, 500, 2, 1, KsObjective::Monomials, true, &mut m), KsStatus::Ok);
        let mut ok = false;
        assert_eq!(ks_machine_verify(m, ptr::null(), &mut ok), KsStatus::Ok);
        assert!(ok);
        let mut cost = KsCost::default();
        ks_machine_cost(m, &mut cost);
        assert!(cost.monomial_count <= 76);
        ks_machine_free(m);
        ks_sequence_free(seq);
    }
}

#[test]
fn null_handles() {
    unsafe {
        assert_eq!(ks_sequence_length(ptr::null()), 0);
        assert_eq!(ks_machine_stages(ptr::null()), 0);
        let mut k = 0;
        assert_eq!(ks_min_stages(ptr::null(), &mut k), KsStatus::NullPointer);
        let seq = parse("01");
        assert_eq!(ks_min_stages(seq, ptr::null_mut()), KsStatus::NullPointer);
        ks_sequence_free(seq);
        ks_sequence_free(ptr::null_mut());
        ks_machine_free(ptr::null_mut());
        ks_string_free(ptr::null_mut());
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/kstage.h")).unwrap();
    for name in [
        "typedef struct KsSequence KsSequence;",
        "typedef struct KsMachine KsMachine;",
        "KS_STATUS_CONSTANT_SEQUENCE = 5",
        "KS_POLICY_ZERO_SINK = 0",
        "ks_sequence_parse(const char *text, struct KsSequence **out)",
        "ks_synthesize(",
        "ks_machine_to_document(",
        "ks_string_free(",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Builds the static library, compiles examples/smoke.c against it and runs it.
#[test]
fn c_program_links_and_runs() {
    // A separate target directory keeps this build off the outer cargo lock.
    let workspace = crate_dir().join("../..");
    let target_dir = workspace.join("target").join("c-smoke");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let build = Command::new(cargo)
        .args(["build", "--quiet", "-p", "kstage-ffi", "--lib", "--target-dir"])
        .arg(&target_dir)
        .current_dir(&workspace)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let lib = target_dir.join("debug").join("libkstage_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let compile = Command::new("cc")
        .arg(crate_dir().join("examples/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .expect("C compiler `cc` is required for this test");
    assert!(compile.status.success(), "{}", String::from_utf8_lossy(&compile.stderr));

    let run = Command::new(&bin).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(stdout, "k=5 stages=5 f4=3:12,15,19 verified=1\nconstant=5\n");
}
