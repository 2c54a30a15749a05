//! Command-line front end.
//!
//! CSV files have a header row, one row per point in input order, numbers
//! written with 17 significant digits (`{:.16e}`) and LF line endings.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuit::{gate_census, passes, qasm, run, GateCensus};
use crate::compiler::{assemble, compile_plan, CompileOptions, CompiledPlan, FourierSeries};
use crate::error::Error;
use crate::oracle::{eval_plan_probability, eval_target};
use crate::sampler::sample_probability;
use crate::statevector::prob_of_outcome;
use crate::superposition::{
    build_superposition_circuit, p0_theory, reference_slot, simulate_p0, slot_kappa, REFERENCE_BETA,
};

#[derive(Debug, Parser)]
#[command(name = "fourier-circuit", version, about = "Compile Fourier series into quantum circuits and simulate them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a series JSON file into a plan JSON file.
    Compile {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Use this scaling constant instead of the largest feasible one.
        #[arg(long, allow_hyphen_values = true)]
        pin_c: Option<f64>,
    },
    /// Simulate the assembled circuit over a grid of x.
    Sweep {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xmin: f64,
        #[arg(long, allow_hyphen_values = true)]
        xmax: f64,
        #[arg(long)]
        steps: usize,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the output qubit at one x.
    Shots {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        shots: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Superposed-input experiment with the reference U3 chain.
    Superpose {
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        /// Second input (required when sweeping theta).
        #[arg(long, allow_hyphen_values = true)]
        x1: Option<f64>,
        #[arg(long, value_enum)]
        sweep: SweepVar,
        #[arg(long)]
        steps: usize,
        /// Mixing angle used when sweeping x1.
        #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
        theta: f64,
        /// Sweep range (defaults: [0, 2π] for theta, [0, π] for x1).
        #[arg(long, allow_hyphen_values = true)]
        min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        max: Option<f64>,
        #[arg(long, requires = "seed")]
        shots: Option<u64>,
        #[arg(long, requires = "shots")]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the gate census of the assembled circuit as JSON.
    Gatecount {
        #[arg(long)]
        plan: PathBuf,
        /// Count after full decomposition.
        #[arg(long)]
        decomposed: bool,
    },
    /// Write the fully decomposed circuit as OpenQASM 2.0.
    ExportQasm {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    X1,
    Theta,
}

/// 0 ok, 1 internal, 2 validation, 3 infeasible.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::Infeasible { .. } | Error::Degenerate) => 3,
        Some(_) => 2,
        None => 1,
    }
}

pub fn run_cli(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Compile { series, out, pin_c } => {
            let series = FourierSeries::load(&series)?;
            let (plan, report) = cmd_compile(&series, CompileOptions { pin_c })?;
            std::fs::write(&out, plan.to_json()).with_context(|| format!("writing {}", out.display()))?;
            print!("{report}");
        }
        Command::Sweep {
            plan,
            xmin,
            xmax,
            steps,
            out,
        } => {
            let plan = CompiledPlan::load(&plan)?;
            emit(out, &sweep_csv(&cmd_sweep(&plan, xmin, xmax, steps)?))?;
        }
        Command::Shots { plan, x, shots, seed } => {
            let plan = CompiledPlan::load(&plan)?;
            println!("{}", cmd_shots(&plan, x, shots, seed)?);
        }
        Command::Superpose {
            x0,
            x1,
            sweep,
            steps,
            theta,
            min,
            max,
            shots,
            seed,
            out,
        } => {
            let sampling = shots.zip(seed);
            let rows = cmd_superpose(x0, x1, sweep, steps, theta, min, max, sampling)?;
            emit(out, &superpose_csv(sweep, &rows, sampling.is_some()))?;
        }
        Command::Gatecount { plan, decomposed } => {
            let plan = CompiledPlan::load(&plan)?;
            let census = cmd_gatecount(&plan, decomposed)?;
            println!("{}", serde_json::to_string_pretty(&census)?);
        }
        Command::ExportQasm { plan, out } => {
            let plan = CompiledPlan::load(&plan)?;
            let text = cmd_export_qasm(&plan)?;
            std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(())
}

fn emit(out: Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (n - 1).ilog2() as usize + 1
    }
}

/// Compile and build the human-readable report.
pub fn cmd_compile(series: &FourierSeries, options: CompileOptions) -> crate::error::Result<(CompiledPlan, String)> {
    let plan = compile_plan(series, options)?;
    let circuit = assemble(&plan)?;
    let pre = gate_census(&circuit);
    let post = gate_census(&passes::decompose_full(&circuit));

    let mut r = String::new();
    writeln!(r, "C = {}", num(plan.c)).unwrap();
    writeln!(r, "residual weight = {}", num(plan.residual_weight)).unwrap();
    writeln!(r, "{:>4} {:>24} {:>5} {:>24} {:>24}", "n", "gamma", "sign", "beta", "amplitude/C").unwrap();
    for s in &plan.slots {
        let amp = s.sign_f64() * s.gamma * s.alpha / plan.c;
        writeln!(r, "{:>4} {:>24} {:>5} {:>24} {:>24}", s.n, num(s.gamma), s.sign, num(s.beta[0]), num(amp)).unwrap();
    }
    let n = plan.layout.q.len();
    let m = plan.layout.qprime.len();
    writeln!(r, "qubits = {} (M = {m}, N = {n})", circuit.num_qubits).unwrap();
    writeln!(r, "gates before decomposition = {}", pre.total()).unwrap();
    writeln!(r, "  {}", census_line(&pre)).unwrap();
    writeln!(r, "gates after decomposition = {}", post.total()).unwrap();
    writeln!(r, "  {}", census_line(&post)).unwrap();
    let bound = n * n * ceil_log2(n).max(1).pow(2);
    writeln!(r, "N^2*ceil(log2 N)^2 = {bound}, ratio = {:.3}", post.total() as f64 / bound as f64).unwrap();
    Ok((plan, r))
}

fn census_line(c: &GateCensus) -> String {
    let mut s = format!(
        "Ry {} H {} X {} CRy {} CCRy {} CNOT {} SWAP {}",
        c.ry, c.h, c.x, c.cry, c.ccry, c.cnot, c.swap
    );
    for (k, v) in &c.multi_controlled_ry {
        write!(s, " C{k}Ry {v}").unwrap();
    }
    if c.other > 0 {
        write!(s, " other {}", c.other).unwrap();
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub p1_sim: f64,
    pub p1_theory: f64,
    pub f_target: f64,
    pub c_f_plus_half: f64,
}

fn grid(min: f64, max: f64, steps: usize) -> crate::error::Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::Validation(format!("steps must be >= 2, got {steps}")));
    }
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(Error::Validation(format!("need min < max, got [{min}, {max}]")));
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { max } else { min + h * i as f64 }).collect())
}

/// x is the series variable; endpoints included.
pub fn cmd_sweep(plan: &CompiledPlan, xmin: f64, xmax: f64, steps: usize) -> crate::error::Result<Vec<SweepRow>> {
    let xs = grid(xmin, xmax, steps)?;
    let circuit = assemble(plan)?;
    let q_last = plan.layout.last_q();
    xs.into_iter()
        .map(|x| {
            let cx = plan.circuit_x(x);
            let state = run(&circuit, circuit.layout.input_state(cx)?)?;
            let f = plan.series.as_ref().map_or(f64::NAN, |s| eval_target(s, x));
            Ok(SweepRow {
                x,
                p1_sim: prob_of_outcome(&state, q_last, true)?,
                p1_theory: eval_plan_probability(plan, cx),
                f_target: f,
                c_f_plus_half: plan.c * f + 0.5,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("x,p1_sim,p1_theory,f_target,c_f_plus_half\n");
    for r in rows {
        let cells = [r.x, r.p1_sim, r.p1_theory, r.f_target, r.c_f_plus_half].map(num);
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

#[derive(Debug, Serialize)]
struct ShotLine {
    x: f64,
    shots: u64,
    ones: u64,
    seed: u64,
    p_exact: f64,
    p_hat: f64,
}

pub fn cmd_shots(plan: &CompiledPlan, x: f64, shots: u64, seed: u64) -> crate::error::Result<String> {
    let circuit = assemble(plan)?;
    let state = run(&circuit, circuit.layout.input_state(plan.circuit_x(x))?)?;
    let p = prob_of_outcome(&state, plan.layout.last_q(), true)?.clamp(0.0, 1.0);
    let rec = sample_probability(p, shots, seed)?;
    let line = ShotLine {
        x,
        shots: rec.shots,
        ones: rec.ones,
        seed: rec.seed,
        p_exact: rec.p_exact,
        p_hat: rec.p_hat(),
    };
    Ok(serde_json::to_string(&line).expect("shot line serializes"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperposeRow {
    pub value: f64,
    pub p0_sim: f64,
    pub p0_theory: f64,
    pub p0_hat: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_superpose(
    x0: f64,
    x1: Option<f64>,
    sweep: SweepVar,
    steps: usize,
    theta: f64,
    min: Option<f64>,
    max: Option<f64>,
    sampling: Option<(u64, u64)>,
) -> crate::error::Result<Vec<SuperposeRow>> {
    let (lo, hi) = match sweep {
        SweepVar::Theta => (min.unwrap_or(0.0), max.unwrap_or(2.0 * PI)),
        SweepVar::X1 => (min.unwrap_or(0.0), max.unwrap_or(PI)),
    };
    let values = grid(lo, hi, steps)?;
    let fixed_x1 = match (sweep, x1) {
        (SweepVar::Theta, None) => return Err(Error::Validation("--x1 is required when sweeping theta".into())),
        (_, v) => v.unwrap_or(0.0),
    };
    let slot = reference_slot();
    let kappa = slot_kappa(&slot);
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let (x1, th) = match sweep {
                SweepVar::Theta => (fixed_x1, v),
                SweepVar::X1 => (v, theta),
            };
            let p0 = simulate_p0(&build_superposition_circuit(x0, x1, th, &slot)?)?;
            let p0_hat = match sampling {
                Some((shots, seed)) => {
                    // Shots count zeros here: sample P(0) directly.
                    let rec = sample_probability(p0.clamp(0.0, 1.0), shots, seed.wrapping_add(i as u64))?;
                    Some(rec.p_hat())
                }
                None => None,
            };
            Ok(SuperposeRow {
                value: v,
                p0_sim: p0,
                p0_theory: p0_theory(x0, x1, th, kappa, REFERENCE_BETA),
                p0_hat,
            })
        })
        .collect()
}

pub fn superpose_csv(sweep: SweepVar, rows: &[SuperposeRow], with_hat: bool) -> String {
    let name = match sweep {
        SweepVar::Theta => "theta_sup",
        SweepVar::X1 => "x1",
    };
    let mut s = format!("{name},p0_sim,p0_theory{}\n", if with_hat { ",p0_hat" } else { "" });
    for r in rows {
        let mut cells = vec![num(r.value), num(r.p0_sim), num(r.p0_theory)];
        if with_hat {
            cells.push(r.p0_hat.map_or_else(|| "nan".into(), num));
        }
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn cmd_gatecount(plan: &CompiledPlan, decomposed: bool) -> crate::error::Result<GateCensus> {
    let c = assemble(plan)?;
    Ok(if decomposed {
        gate_census(&passes::decompose_full(&c))
    } else {
        gate_census(&c)
    })
}

pub fn cmd_export_qasm(plan: &CompiledPlan) -> crate::error::Result<String> {
    qasm::to_qasm(&passes::decompose_full(&assemble(plan)?))
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_cli(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}
