use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kstage::{
    assign_states, berlekamp_massey, build_machine, machine_netlist, min_stages, optimize, parse_sequence, run,
    stage_anfs, verify_document, AnfPoly, BinaryMachine, BinarySequence, CostReport, Error, MachineDocument,
    Objective, OptimizationConfig, RemainingStatePolicy,
};

/// Synthesize minimum-stage binary k-stage machines for binary sequences.
#[derive(Parser)]
#[command(name = "kstage", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the canonical machine for a sequence and write its document.
    Synth(SynthArgs),
    /// Check that a machine document regenerates its target sequence.
    Verify(VerifyArgs),
    /// Print the minimum stage count.
    Bound(InputArgs),
    /// Print the linear complexity next to the minimum stage count.
    Baseline(InputArgs),
    /// Search state assignments for cheaper next-state functions.
    Optimize(OptimizeArgs),
    /// Emit a two-input gate netlist for a machine document.
    Netlist(NetlistArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Sequence file, or "-" for standard input.
    #[arg(long, short)]
    input: String,
}

#[derive(Args)]
struct OutputArgs {
    /// Where to write the machine document ("-" for standard output).
    #[arg(long, short, default_value = "-")]
    out: String,
    /// Include the ANF of every stage in the document.
    #[arg(long)]
    emit_anf: bool,
    /// Also write the gate netlist to this file.
    #[arg(long)]
    netlist: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "zero-sink", value_parser = parse_policy)]
    policy: RemainingStatePolicy,
    #[command(flatten)]
    output: OutputArgs,
    /// Write a simulation trace of one period ("-" for standard error).
    #[arg(long)]
    trace: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, short)]
    machine: String,
    /// Target sequence; defaults to the one embedded in the document.
    #[arg(long, short)]
    sequence: Option<String>,
    /// Write the simulation trace ("-" for standard output).
    #[arg(long)]
    trace: Option<String>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 2000)]
    iterations: usize,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "monomials", value_parser = parse_objective)]
    objective: Objective,
    /// Remaining-state policies the search may use.
    #[arg(long, value_delimiter = ',', default_value = "zero-sink,cycle", value_parser = parse_policy)]
    policies: Vec<RemainingStatePolicy>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct NetlistArgs {
    #[arg(long, short)]
    machine: String,
    #[arg(long, short, default_value = "-")]
    out: String,
}

fn parse_policy(s: &str) -> Result<RemainingStatePolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed command and its exit status.
enum Failure {
    /// Domain error or failed verification.
    Domain(String),
    /// I/O or malformed input.
    Format(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(_) => Failure::Format(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Format(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn write_output(path: &str, contents: &str) -> CmdResult {
    let res = if path == "-" {
        io::stdout().write_all(contents.as_bytes())
    } else {
        fs::write(path, contents)
    };
    res.map_err(|e| Failure::Format(format!("cannot write {path}: {e}")))
}

fn read_sequence(path: &str) -> Result<BinarySequence, Failure> {
    Ok(parse_sequence(&read_input(path)?)?)
}

fn warn_if_periodic(seq: &BinarySequence) {
    if let Some(p) = seq.proper_period() {
        eprintln!("warning: sequence repeats with period {p}; the stage count may not be minimal");
    }
}

fn cost_line(cost: &CostReport) -> String {
    format!(
        "monomials={} literals={} degree={} gates={}",
        cost.monomial_count, cost.literal_count, cost.max_degree, cost.gate_upper_bound
    )
}

/// Summary lines for a machine: per-stage costs, optionally with the ANF.
fn describe(anfs: &[AnfPoly], with_anf: bool) -> String {
    let mut out = String::new();
    for (j, p) in anfs.iter().enumerate().rev() {
        out.push_str(&format!("f_{j}: {}\n", cost_line(&p.cost())));
        if with_anf {
            out.push_str(&format!("f_{j} = {p}\n"));
        }
    }
    let total: CostReport = anfs.iter().map(AnfPoly::cost).sum();
    out.push_str(&format!("total: {}\n", cost_line(&total)));
    out
}

/// Writes the document and any netlist; the summary goes to stdout unless the
/// document itself does.
fn emit(machine: &BinaryMachine, seq: &BinarySequence, output: &OutputArgs, summary: &str) -> CmdResult {
    let doc = MachineDocument::from_machine(machine, seq, output.emit_anf)?;
    if output.out == "-" {
        eprint!("{summary}");
    } else {
        print!("{summary}");
    }
    write_output(&output.out, &doc.to_json())?;
    if let Some(path) = &output.netlist {
        let net = machine_netlist(machine)?;
        fs::write(path, net.text).map_err(|e| Failure::Format(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn synth(args: SynthArgs) -> CmdResult {
    let seq = read_sequence(&args.input.input)?;
    let bound = min_stages(&seq)?;
    warn_if_periodic(&seq);
    let states = assign_states(&seq)?;
    let machine = build_machine(&states, args.policy);
    let anfs = stage_anfs(&machine)?;
    let summary = format!(
        "k={} n={} wt={}\n{}",
        bound.k,
        seq.len(),
        seq.weight(),
        describe(&anfs, args.output.emit_anf)
    );
    emit(&machine, &seq, &args.output, &summary)?;
    if let Some(path) = args.trace {
        let trace = run(&machine, machine.initial_state(), seq.len())?.render(machine.stages());
        if path == "-" {
            eprint!("{trace}");
        } else {
            fs::write(&path, trace).map_err(|e| Failure::Format(format!("cannot write {path}: {e}")))?;
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> CmdResult {
    let doc = MachineDocument::from_json(&read_input(&args.machine)?)?;
    let target = match &args.sequence {
        Some(path) => read_sequence(path)?,
        None => doc.target()?,
    };
    let report = verify_document(&doc, Some(&target))?;
    let period = report.period.map_or_else(|| "none".to_string(), |p| p.to_string());
    println!("period={period} trace_len={}", report.trace_len);
    if let Some(path) = &args.trace {
        let machine = doc.to_machine()?;
        let trace = run(&machine, machine.initial_state(), target.len())?.render(machine.stages());
        write_output(path, &trace)?;
    }
    if !report.generates {
        return Err(Failure::Domain("machine does not regenerate the target sequence".into()));
    }
    if !report.policy_conforms {
        return Err(Failure::Domain(format!("unused states are not placed per the {} policy", doc.policy)));
    }
    if report.anf_consistent == Some(false) {
        return Err(Failure::Domain("embedded ANF does not match the supports".into()));
    }
    println!("ok");
    Ok(())
}

fn bound(args: InputArgs) -> CmdResult {
    let seq = read_sequence(&args.input)?;
    let b = min_stages(&seq)?;
    warn_if_periodic(&seq);
    println!("k={} wt={} n={}", b.k, seq.weight(), seq.len());
    if seq.is_balanced() {
        println!("balanced: k = ceil(log2 n)");
    }
    Ok(())
}

fn baseline(args: InputArgs) -> CmdResult {
    let seq = read_sequence(&args.input)?;
    let lc = berlekamp_massey(&seq);
    match min_stages(&seq) {
        Ok(b) => println!("L={} k={}", lc.complexity, b.k),
        Err(Error::ConstantSequence) => {
            eprintln!("warning: constant sequence, no stage bound");
            println!("L={}", lc.complexity);
        }
        Err(e) => return Err(e.into()),
    }
    let taps: String = lc.connection.iter().map(|c| if *c == 1 { '1' } else { '0' }).collect();
    println!("connection (c_1..c_L, c_1 taps the most recent bit): {taps}");
    Ok(())
}

fn optimize_cmd(args: OptimizeArgs) -> CmdResult {
    let seq = read_sequence(&args.input.input)?;
    min_stages(&seq)?;
    warn_if_periodic(&seq);
    let cfg = OptimizationConfig {
        iterations: args.iterations,
        restarts: args.restarts,
        seed: args.seed,
        policy_choices: args.policies,
        objective: args.objective,
    };
    let result = optimize(&seq, &cfg)?;
    let mut summary = format!(
        "objective={} canonical={} best={} chain={} policy={}\n",
        cfg.objective,
        result.canonical_value,
        result.objective_value,
        result.chain,
        result.machine.policy()
    );
    for step in &result.history {
        summary.push_str(&format!("iteration {} cost {}\n", step.iteration, step.cost));
    }
    summary.push_str(&describe(&stage_anfs(&result.machine)?, args.output.emit_anf));
    emit(&result.machine, &seq, &args.output, &summary)
}

fn netlist(args: NetlistArgs) -> CmdResult {
    let doc = MachineDocument::from_json(&read_input(&args.machine)?)?;
    let net = machine_netlist(&doc.to_machine()?)?;
    write_output(&args.out, &net.text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(a) => synth(a),
        Command::Verify(a) => verify(a),
        Command::Bound(a) => bound(a),
        Command::Baseline(a) => baseline(a),
        Command::Optimize(a) => optimize_cmd(a),
        Command::Netlist(a) => netlist(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Format(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
