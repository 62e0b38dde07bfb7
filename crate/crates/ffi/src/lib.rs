//! C ABI for the kstage synthesizer.
//!
//! Sequences and machines are opaque handles created by `ks_*` constructors
//! and released with the matching `*_free` function. Fallible calls return a
//! [`KsStatus`]; on failure [`ks_last_error_message`] describes the error.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with [`ks_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kstage::{
    assign_states, berlekamp_massey, build_machine, machine_cost, machine_netlist, min_stages, optimize,
    parse_sequence, verify_generates, BinaryMachine, BinarySequence, Error, MachineDocument, Objective,
    OptimizationConfig, RemainingStatePolicy,
};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    EmptySequence = 3,
    InvalidCharacter = 4,
    ConstantSequence = 5,
    StateOutOfRange = 6,
    InvalidArgument = 7,
    Format = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsPolicy {
    ZeroSink = 0,
    Cycle = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsObjective {
    Monomials = 0,
    Literals = 1,
    GateUpperBound = 2,
}

/// ANF size metrics summed over all stages.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KsCost {
    pub monomial_count: u64,
    pub literal_count: u64,
    pub max_degree: u32,
    pub gate_upper_bound: u64,
}

/// A parsed binary sequence.
pub struct KsSequence(BinarySequence);

/// A machine together with the sequence it was built for.
pub struct KsMachine {
    machine: BinaryMachine,
    target: BinarySequence,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: KsStatus, msg: impl AsRef<str>) -> KsStatus {
    set_last_error(msg.as_ref());
    status
}

fn status_of(err: &Error) -> KsStatus {
    match err {
        Error::EmptySequence => KsStatus::EmptySequence,
        Error::InvalidCharacter { .. } => KsStatus::InvalidCharacter,
        Error::ConstantSequence => KsStatus::ConstantSequence,
        Error::StateOutOfRange { .. } => KsStatus::StateOutOfRange,
        Error::Format(_) => KsStatus::Format,
        _ => KsStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), KsStatus>>(f: F) -> KsStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KsStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(KsStatus::Internal, "internal panic"),
    }
}

fn check(err: Error) -> KsStatus {
    fail(status_of(&err), err.to_string())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, KsStatus> {
    p.as_ref().ok_or_else(|| fail(KsStatus::NullPointer, "null handle"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, KsStatus> {
    if p.is_null() {
        return Err(fail(KsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(KsStatus::InvalidUtf8, "string is not valid UTF-8"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), KsStatus> {
    if out.is_null() {
        return Err(fail(KsStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), KsStatus> {
    let c = CString::new(s).map_err(|_| fail(KsStatus::Internal, "string contains NUL"))?;
    write_out(out, c.into_raw())
}

fn policy_of(p: KsPolicy) -> RemainingStatePolicy {
    match p {
        KsPolicy::ZeroSink => RemainingStatePolicy::ZeroSink,
        KsPolicy::Cycle => RemainingStatePolicy::Cycle,
    }
}

/// Message describing the last failure on this thread, or an empty string.
/// The pointer stays valid until the next `ks_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ks_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a NUL-terminated string of '0'/'1' characters (whitespace ignored).
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ks_sequence_parse(text: *const c_char, out: *mut *mut KsSequence) -> KsStatus {
    guard(|| {
        let text = read_str(text)?;
        let seq = parse_sequence(text).map_err(check)?;
        write_out(out, Box::into_raw(Box::new(KsSequence(seq))))
    })
}

/// Builds a sequence from `len` bytes, each 0 or 1.
///
/// # Safety
/// `bits` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ks_sequence_from_bits(bits: *const u8, len: usize, out: *mut *mut KsSequence) -> KsStatus {
    guard(|| {
        if bits.is_null() {
            return Err(fail(KsStatus::NullPointer, "null bits"));
        }
        let bits = std::slice::from_raw_parts(bits, len).to_vec();
        let seq = BinarySequence::from_bits(bits).map_err(check)?;
        write_out(out, Box::into_raw(Box::new(KsSequence(seq))))
    })
}

/// # Safety
/// `seq` must be null or a handle from a `ks_sequence_*` constructor not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ks_sequence_free(seq: *mut KsSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Length of the sequence, 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live sequence handle.
#[no_mangle]
pub unsafe extern "C" fn ks_sequence_length(seq: *const KsSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

/// Hamming weight of the sequence, 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live sequence handle.
#[no_mangle]
pub unsafe extern "C" fn ks_sequence_weight(seq: *const KsSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.weight())
}

/// Smallest rotation period below the length, or 0 when the sequence is aperiodic.
///
/// # Safety
/// `seq` must be null or a live sequence handle.
#[no_mangle]
pub unsafe extern "C" fn ks_sequence_period(seq: *const KsSequence) -> usize {
    seq.as_ref().and_then(|s| s.0.proper_period()).unwrap_or(0)
}

/// Minimum stage count of any machine generating the sequence.
///
/// # Safety
/// `seq` must be a live sequence handle and `k` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_min_stages(seq: *const KsSequence, k: *mut u32) -> KsStatus {
    guard(|| {
        let seq = borrow(seq)?;
        let bound = min_stages(&seq.0).map_err(check)?;
        write_out(k, bound.k)
    })
}

/// Linear complexity from Berlekamp-Massey.
///
/// # Safety
/// `seq` must be a live sequence handle and `complexity` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_linear_complexity(seq: *const KsSequence, complexity: *mut usize) -> KsStatus {
    guard(|| {
        let seq = borrow(seq)?;
        write_out(complexity, berlekamp_massey(&seq.0).complexity)
    })
}

/// Synthesizes the canonical minimum-stage machine for `seq`.
///
/// # Safety
/// `seq` must be a live sequence handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_synthesize(seq: *const KsSequence, policy: KsPolicy, out: *mut *mut KsMachine) -> KsStatus {
    guard(|| {
        let seq = borrow(seq)?;
        let states = assign_states(&seq.0).map_err(check)?;
        let machine = build_machine(&states, policy_of(policy));
        write_out(out, Box::into_raw(Box::new(KsMachine { machine, target: seq.0.clone() })))
    })
}

/// Hill-climbs over state assignments; `allow_cycle` adds the cycle policy to
/// the zero-sink policy as a search option.
///
/// # Safety
/// `seq` must be a live sequence handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_optimize(
    seq: *const KsSequence,
    iterations: usize,
    restarts: usize,
    seed: u64,
    objective: KsObjective,
    allow_cycle: bool,
    out: *mut *mut KsMachine,
) -> KsStatus {
    guard(|| {
        let seq = borrow(seq)?;
        let mut policy_choices = vec![RemainingStatePolicy::ZeroSink];
        if allow_cycle {
            policy_choices.push(RemainingStatePolicy::Cycle);
        }
        let cfg = OptimizationConfig {
            iterations,
            restarts,
            seed,
            policy_choices,
            objective: match objective {
                KsObjective::Monomials => Objective::Monomials,
                KsObjective::Literals => Objective::Literals,
                KsObjective::GateUpperBound => Objective::GateUpperBound,
            },
        };
        let result = optimize(&seq.0, &cfg).map_err(check)?;
        write_out(out, Box::into_raw(Box::new(KsMachine { machine: result.machine, target: seq.0.clone() })))
    })
}

/// # Safety
/// `machine` must be null or a machine handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_free(machine: *mut KsMachine) {
    if !machine.is_null() {
        drop(Box::from_raw(machine));
    }
}

/// Stage count, 0 for a null handle.
///
/// # Safety
/// `machine` must be null or a live machine handle.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_stages(machine: *const KsMachine) -> u32 {
    machine.as_ref().map_or(0, |m| m.machine.stages())
}

/// # Safety
/// `machine` must be null or a live machine handle.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_initial_state(machine: *const KsMachine) -> u32 {
    machine.as_ref().map_or(0, |m| m.machine.initial_state())
}

/// One step of the machine from `state`.
///
/// # Safety
/// `machine` must be a live machine handle and `next` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_transition(machine: *const KsMachine, state: u32, next: *mut u32) -> KsStatus {
    guard(|| {
        let m = borrow(machine)?;
        write_out(next, m.machine.transition(state).map_err(check)?)
    })
}

/// Copies the ascending support of `stage` into `buf`. `len` always receives
/// the support size; `KS_STATUS_BUFFER_TOO_SMALL` is returned when
/// `capacity` is smaller, and `buf` may then be null.
///
/// # Safety
/// `machine` must be a live handle, `len` writable and `buf` valid for
/// `capacity` writes when non-null.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_support(
    machine: *const KsMachine,
    stage: u32,
    buf: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> KsStatus {
    guard(|| {
        let m = borrow(machine)?;
        if stage >= m.machine.stages() {
            return Err(fail(KsStatus::InvalidArgument, format!("no stage {stage}")));
        }
        let support = m.machine.support(stage as usize);
        write_out(len, support.len())?;
        if capacity < support.len() || (buf.is_null() && !support.is_empty()) {
            return Err(fail(KsStatus::BufferTooSmall, "support does not fit"));
        }
        if !support.is_empty() {
            ptr::copy_nonoverlapping(support.as_ptr(), buf, support.len());
        }
        Ok(())
    })
}

/// Whether the machine regenerates `seq`, or its own target when `seq` is null.
///
/// # Safety
/// `machine` must be a live handle, `seq` null or live, `generates` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_verify(
    machine: *const KsMachine,
    seq: *const KsSequence,
    generates: *mut bool,
) -> KsStatus {
    guard(|| {
        let m = borrow(machine)?;
        let target = seq.as_ref().map_or(&m.target, |s| &s.0);
        write_out(generates, verify_generates(&m.machine, target))
    })
}

/// ANF cost summed over all stages.
///
/// # Safety
/// `machine` must be a live handle and `cost` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_cost(machine: *const KsMachine, cost: *mut KsCost) -> KsStatus {
    guard(|| {
        let m = borrow(machine)?;
        let c = machine_cost(&m.machine);
        write_out(
            cost,
            KsCost {
                monomial_count: c.monomial_count,
                literal_count: c.literal_count,
                max_degree: c.max_degree,
                gate_upper_bound: c.gate_upper_bound,
            },
        )
    })
}

/// Serializes the machine as a canonical JSON machine document.
///
/// # Safety
/// `machine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_to_document(
    machine: *const KsMachine,
    emit_anf: bool,
    out: *mut *mut c_char,
) -> KsStatus {
    guard(|| {
        let m = borrow(machine)?;
        let doc = MachineDocument::from_machine(&m.machine, &m.target, emit_anf).map_err(check)?;
        write_string(out, doc.to_json())
    })
}

/// Loads a machine document; the embedded sequence becomes the target.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_from_document(text: *const c_char, out: *mut *mut KsMachine) -> KsStatus {
    guard(|| {
        let text = read_str(text)?;
        let doc = MachineDocument::from_json(text).map_err(check)?;
        let machine = doc.to_machine().map_err(check)?;
        let target = doc.target().map_err(check)?;
        write_out(out, Box::into_raw(Box::new(KsMachine { machine, target })))
    })
}

/// Two-input gate netlist of the machine.
///
/// # Safety
/// `machine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ks_machine_netlist(machine: *const KsMachine, out: *mut *mut c_char) -> KsStatus {
    guard(|| {
        let m = borrow(machine)?;
        let net = machine_netlist(&m.machine).map_err(check)?;
        write_string(out, net.text)
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
