//! `chronos`: analyses of linear control systems on time scales.
//!
//! Exit status: 0 when the analysed property holds (or the command simply
//! succeeded), 1 when it does not, 2 on any error.

mod builtin;
mod parse;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use chronos_core::matrix::is_monomial;
use chronos_core::reach::{
    decide_positive_reachability, gram, is_positively_accessible, kalman_matrix,
    synthesize_control, Accessibility, ReachOptions, SynthesizedControl,
};
use chronos_core::system::{PositivityReport, SimulationOptions, WitnessSampling};
use chronos_core::tsexp::ts_exp_path;
use chronos_core::{ControlSignal64, DeltaSet64, GramSpec64, LinearSystem64, Mat64, ReachReport64};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "chronos",
    version,
    about = "Positivity, accessibility and reachability of linear systems on time scales"
)]
struct Cli {
    /// Print the built-in example systems as JSON and exit.
    #[arg(long)]
    examples: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Positivity, accessibility and reachability in one report.
    Analyze(AnalyzeArgs),
    /// Trajectory under a piecewise-constant control.
    Simulate(SimulateArgs),
    /// The exponential e_A(t1, t0) with its factorisation.
    Exp(WindowArgs),
    /// A modified Gram matrix and whether it is monomial.
    Gram(GramArgs),
    /// Decide positive reachability and synthesize controls.
    Reach(ReachArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct WindowArgs {
    /// System descriptor: a JSON file or `builtin:<name>` (see --examples).
    #[arg(long)]
    system: String,
    /// Window start; defaults to the first point of the scale.
    #[arg(long, allow_negative_numbers = true)]
    t0: Option<f64>,
    /// Window end; defaults to the last point of the scale.
    #[arg(long, allow_negative_numbers = true)]
    t1: Option<f64>,
    /// Relative tolerance for sign, rank and monomiality tests.
    #[arg(long, env = "CHRONOS_TOL", default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    window: WindowArgs,
    /// Seed of the sampled cross-check of the positivity test.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    window: WindowArgs,
    /// Control JSON: {"t0", "t1", "segments": [{"t", "u"}]}.
    #[arg(long)]
    control: PathBuf,
    /// Initial state, e.g. "1,0" or "e1"; defaults to zero.
    #[arg(long)]
    x0: Option<String>,
    /// Intermediate samples per dense stretch.
    #[arg(long, default_value_t = 32)]
    samples: usize,
}

#[derive(Args)]
struct GramArgs {
    #[command(flatten)]
    window: WindowArgs,
    /// Selected input columns, 1-based, e.g. "1,3".
    #[arg(long = "M")]
    m: Option<String>,
    /// Δ-sets per column, e.g. "1:[0,1)|[2,3);2:[0,2)".
    #[arg(long = "S")]
    s: Option<String>,
}

#[derive(Args)]
struct ReachArgs {
    #[command(flatten)]
    window: WindowArgs,
    /// Extra target to steer to, e.g. "e1" or "0.5,2".
    #[arg(long)]
    target: Option<String>,
}

fn load_system(arg: &str) -> Result<LinearSystem64> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin::system(name).with_context(|| {
            format!(
                "unknown built-in {name:?}; available: {}",
                builtin::NAMES.join(", ")
            )
        });
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
    serde_json::from_str(&text).with_context(|| format!("{arg} is not a valid system descriptor"))
}

impl WindowArgs {
    fn resolve(&self) -> Result<(LinearSystem64, f64, f64)> {
        let sys = load_system(&self.system)?;
        let ts = sys.scale();
        let t0 = ts.snap(self.t0.unwrap_or(ts.inf())).context("t0")?;
        let t1 = ts.snap(self.t1.unwrap_or(ts.sup())).context("t1")?;
        if t0 > t1 {
            bail!("window [{t0}, {t1}] is reversed");
        }
        Ok((sys, t0, t1))
    }

    fn options(&self) -> ReachOptions<f64> {
        ReachOptions {
            tol: self.tol,
            ..ReachOptions::default()
        }
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn print_json<S: Serialize>(value: &S) -> Result<()> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

fn matrix_csv(m: &Mat64) -> String {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(f64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Serialize)]
struct AccessibilitySection {
    accessible: bool,
    kalman_rank: usize,
    kalman_matrix: Mat64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    system: LinearSystem64,
    t0: f64,
    t1: f64,
    positive: bool,
    accessible: bool,
    reachable: bool,
    positivity: PositivityReport<f64>,
    /// Negative entry of some e_A(t, s) found by sampling; absent for positive systems.
    sampled_witness: Option<chronos_core::system::ExpWitness<f64>>,
    accessibility: AccessibilitySection,
    reach: Option<ReachReport64>,
}

fn analyze(args: &AnalyzeArgs) -> Result<bool> {
    let w = &args.window;
    let (sys, t0, t1) = w.resolve()?;
    let positivity = sys.is_positive(w.tol);
    let sampling = WitnessSampling {
        seed: args.seed,
        tol: w.tol,
        ..WitnessSampling::default()
    };
    let sampled_witness = sys.positivity_witness(&sampling)?;
    let accessible = is_positively_accessible(&sys, t0, t1, w.tol)?;
    let k = kalman_matrix(&sys);
    let kalman_rank = chronos_core::matrix::rank(&k, w.tol);
    let reach = if positivity.positive {
        Some(decide_positive_reachability(&sys, t0, t1, &w.options())?)
    } else {
        None
    };
    let reachable = reach.as_ref().is_some_and(|r| r.reachable);
    print_json(&AnalyzeReport {
        system: sys.clone(),
        t0,
        t1,
        positive: positivity.positive,
        accessible,
        reachable,
        positivity,
        sampled_witness,
        accessibility: AccessibilitySection {
            accessible,
            kalman_rank,
            kalman_matrix: k,
        },
        reach,
    })?;
    Ok(reachable)
}

#[derive(Serialize)]
struct SimulationSummary {
    final_time: f64,
    final_state: Vec<f64>,
}

#[derive(Serialize)]
struct SimulationReport {
    system: LinearSystem64,
    control: ControlSignal64,
    x0: Vec<f64>,
    #[serde(flatten)]
    summary: SimulationSummary,
    samples: Vec<(f64, Vec<f64>)>,
}

fn simulate(args: &SimulateArgs) -> Result<bool> {
    let w = &args.window;
    let sys = load_system(&w.system)?;
    let text = std::fs::read_to_string(&args.control)
        .with_context(|| format!("cannot read {}", args.control.display()))?;
    let control: ControlSignal64 = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid control", args.control.display()))?;
    let x0 = match &args.x0 {
        Some(s) => parse::vector(s, sys.n())?,
        None => vec![0.0; sys.n()],
    };
    let t_end = w.t1.unwrap_or(control.t1());
    let traj = sys.simulate(
        &x0,
        &control,
        t_end,
        &SimulationOptions {
            dense_samples: args.samples,
        },
    )?;
    let summary = SimulationSummary {
        final_time: traj.final_time(),
        final_state: traj.final_state().to_vec(),
    };
    match w.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            emit(&traj.to_csv())?;
            eprintln!("{}", serde_json::to_string(&summary)?);
        }
        Format::Json => print_json(&SimulationReport {
            system: sys,
            control,
            x0,
            summary,
            samples: traj.samples,
        })?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct ExpReport {
    system: LinearSystem64,
    path: chronos_core::ExpPath64,
}

fn exp(w: &WindowArgs) -> Result<bool> {
    let (sys, t0, t1) = w.resolve()?;
    let path = ts_exp_path(sys.a(), sys.scale(), t1, t0)?;
    match w.format.unwrap_or(Format::Json) {
        Format::Csv => emit(&(matrix_csv(&path.value) + "\n"))?,
        Format::Json => print_json(&ExpReport { system: sys, path })?,
    }
    Ok(true)
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum GramKind {
    /// Every column over the whole window: the ordinary Gram matrix.
    Ordinary,
    /// Selected columns over the whole window.
    Columns,
    /// Selected columns over user-supplied Δ-sets.
    Custom,
}

#[derive(Serialize)]
struct GramReport {
    system: LinearSystem64,
    kind: GramKind,
    spec: GramSpec64,
    #[serde(rename = "W")]
    w: Mat64,
    monomial: bool,
}

fn gram_cmd(args: &GramArgs) -> Result<bool> {
    let w = &args.window;
    let (sys, t0, t1) = w.resolve()?;
    let m_set = args.m.as_deref().map(parse::columns).transpose()?;
    let (spec, kind) = match &args.s {
        Some(s) => {
            let raw = parse::sets(s)?;
            if let Some(m) = &m_set {
                if m.iter().copied().ne(raw.keys().copied()) {
                    bail!("--M {m:?} does not match the columns of --S");
                }
            }
            let mut sets = BTreeMap::new();
            for (k, pieces) in raw {
                sets.insert(k, DeltaSet64::new(sys.scale(), pieces)?);
            }
            (GramSpec64::new(t0, t1, sets), GramKind::Custom)
        }
        None => {
            let m = m_set.unwrap_or_else(|| (1..=sys.m()).collect());
            let kind = if m.len() == sys.m() {
                GramKind::Ordinary
            } else {
                GramKind::Columns
            };
            (GramSpec64::columns(&sys, t0, t1, &m)?, kind)
        }
    };
    let opts = w.options();
    let wm = gram(&sys, &spec, &opts)?;
    let monomial = is_monomial(&wm, opts.tol)?;
    match w.format.unwrap_or(Format::Json) {
        Format::Csv => emit(&(matrix_csv(&wm) + "\n"))?,
        Format::Json => print_json(&GramReport {
            system: sys,
            kind,
            spec,
            w: wm,
            monomial,
        })?,
    }
    Ok(monomial)
}

#[derive(Serialize)]
struct ReachCmdReport {
    system: LinearSystem64,
    #[serde(flatten)]
    report: ReachReport64,
    target: Option<SynthesizedControl<f64>>,
}

fn reach(args: &ReachArgs) -> Result<bool> {
    let w = &args.window;
    let (sys, t0, t1) = w.resolve()?;
    let opts = w.options();
    let report = decide_positive_reachability(&sys, t0, t1, &opts)?;
    let target = match (&args.target, &report.certificate) {
        (Some(t), Some(cert)) => Some(synthesize_control(
            &sys,
            &cert.spec,
            &cert.w,
            &parse::vector(t, sys.n())?,
            &opts,
        )?),
        (Some(_), None) => {
            eprintln!("note: not positively reachable, no control synthesized for --target");
            None
        }
        (None, _) => None,
    };
    if w.format == Some(Format::Csv) {
        let Accessibility {
            accessible, rank, ..
        } = report.accessibility;
        let decision = serde_json::to_value(report.decision)?;
        emit(&format!(
            "decision,reachable,accessible,rank\n{},{},{accessible},{rank}\n",
            decision.as_str().unwrap_or_default(),
            report.reachable
        ))?;
    } else {
        let reachable = report.reachable;
        print_json(&ReachCmdReport {
            system: sys,
            report,
            target,
        })?;
        return Ok(reachable);
    }
    Ok(report.reachable)
}

fn run(cli: &Cli) -> Result<bool> {
    if cli.examples {
        print_json(&builtin::all())?;
        return Ok(true);
    }
    match &cli.command {
        Some(Command::Analyze(a)) => analyze(a),
        Some(Command::Simulate(a)) => simulate(a),
        Some(Command::Exp(a)) => exp(a),
        Some(Command::Gram(a)) => gram_cmd(a),
        Some(Command::Reach(a)) => reach(a),
        None => bail!("no command given; see --help"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
