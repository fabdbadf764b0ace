//! `tgait`: analyze, simulate and draw max-plus gaits from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 violated constraint, 4 I/O failure.

pub mod analyze;
pub mod failure;
pub mod input;
pub mod simulate;

use std::path::PathBuf;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use maxplus_gait::gait::system_matrix;

pub use failure::{CliResult, ExitKind, Failure};
use input::{build_run, load_spec, InitialConfig, InitialKind, Spec, TauFlags};

pub const TOLERANCE_ENV: &str = "TG_TOLERANCE";
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
}

#[derive(Debug, Parser)]
#[command(name = "tgait", version, about = "Max-plus gait analysis and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue, eigenvector, critical graph and coupling time of a gait.
    Analyze(CommonArgs),
    /// Run a gait or a plan and verify the resulting leg schedule.
    Simulate(CommonArgs),
    /// Dump P, Q, C, A0, A1, A0*, A and Ā.
    Matrices(CommonArgs),
    /// Print the Hildebrand diagram of a simulation.
    Diagram(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Gait config, DSL text or plan file; `-` reads stdin.
    #[arg(long)]
    pub input: Option<String>,
    /// Inline gait, e.g. "{1,4}<{2,3}".
    #[arg(long)]
    pub dsl: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau_f: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau_g: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau_delta: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Diagram cell width in time units.
    #[arg(long, default_value_t = 0.25)]
    pub quantum: f64,
    /// Steps when simulating a single gait.
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Initial state when the input does not fix one.
    #[arg(long, value_enum)]
    pub initial: Option<InitialKind>,
    /// Seed for random initial states.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for simulation files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include matrix dumps in the analysis report.
    #[arg(long)]
    pub matrices: bool,
}

impl CommonArgs {
    fn taus(&self) -> TauFlags {
        TauFlags {
            tau_f: self.tau_f,
            tau_g: self.tau_g,
            tau_delta: self.tau_delta,
        }
    }

    fn spec(&self) -> CliResult<Spec> {
        load_spec(self.input.as_deref(), self.dsl.as_deref(), &self.taus())
    }
}

/// What a successful invocation prints, and whether it found violations.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub violations: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.violations {
            ExitKind::Constraint as i32
        } else {
            0
        }
    }
}

/// `TG_TOLERANCE` or the default.
pub fn tolerance_from_env() -> CliResult<f64> {
    match std::env::var(TOLERANCE_ENV) {
        Err(_) => Ok(DEFAULT_TOLERANCE),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(t) if t >= 0.0 && t.is_finite() => Ok(t),
            _ => Err(Failure::validation(anyhow!("{TOLERANCE_ENV}={text:?} is not a non-negative number"))),
        },
    }
}

pub fn run(cli: &Cli, tol: f64) -> CliResult<Outcome> {
    match &cli.command {
        Command::Analyze(args) => analyze_cmd(args, tol),
        Command::Simulate(args) => simulate_cmd(args, tol),
        Command::Matrices(args) => matrices_cmd(args),
        Command::Diagram(args) => diagram_cmd(args, tol),
    }
}

fn single_gait(args: &CommonArgs, what: &str) -> CliResult<(maxplus_gait::gait::Gait, maxplus_gait::gait::GaitParams<f64>)> {
    match args.spec()? {
        Spec::Gait(g, p) => Ok((g, p)),
        Spec::Plan(_) => Err(Failure::validation(anyhow!("{what} takes a single gait, not a plan"))),
    }
}

fn analyze_cmd(args: &CommonArgs, tol: f64) -> CliResult<Outcome> {
    let (gait, params) = single_gait(args, "analyze")?;
    let report = analyze::run_analyze(&gait, &params, tol, args.matrices)?;
    let stdout = match args.format {
        Format::Ascii => analyze::render_text(&report),
        Format::Json | Format::Csv => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    };
    Ok(Outcome {
        stdout,
        violations: false,
    })
}

fn simulation(args: &CommonArgs, tol: f64) -> CliResult<simulate::SimulationOutput> {
    let run = build_run(
        args.spec()?,
        args.steps,
        args.initial.map(InitialConfig::Named),
        args.seed,
    )?;
    simulate::run_simulate(&run, tol, args.quantum)
}

fn simulate_cmd(args: &CommonArgs, tol: f64) -> CliResult<Outcome> {
    let out = simulation(args, tol)?;
    let stdout = match (&args.out, args.format) {
        (Some(dir), _) => {
            simulate::write_outputs(&out, dir)?;
            simulate::report_json(&out)
        }
        (None, Format::Json) => simulate::combined_json(&out),
        (None, Format::Csv) => simulate::trajectory_csv(&out.trajectory)?,
        (None, Format::Ascii) => out.diagram.clone(),
    };
    Ok(Outcome {
        stdout,
        violations: out.report.violation_count > 0,
    })
}

fn diagram_cmd(args: &CommonArgs, tol: f64) -> CliResult<Outcome> {
    let out = simulation(args, tol)?;
    Ok(Outcome {
        stdout: out.diagram,
        violations: false,
    })
}

fn matrices_cmd(args: &CommonArgs) -> CliResult<Outcome> {
    let (gait, params) = single_gait(args, "matrices")?;
    let gm = system_matrix(&gait, &params)?;
    let stdout = match args.format {
        Format::Json => serde_json::to_string_pretty(&gm).expect("matrices serialize") + "\n",
        Format::Ascii => {
            let named = [
                ("P", &gm.p),
                ("Q", &gm.q),
                ("C_bar", &gm.c_bar),
                ("A0", &gm.a0),
                ("A1", &gm.a1),
                ("A0*", &gm.a0_star),
                ("A", &gm.a),
                ("A_bar", &gm.a_bar),
            ];
            named.iter().map(|(name, m)| format!("{name} =\n{m}\n")).collect::<Vec<_>>().join("\n")
        }
        Format::Csv => {
            // the system matrix only, ε written as -inf
            let mut s = String::new();
            for i in 0..gm.a.rows() {
                let row: Vec<String> = gm.a.row(i).iter().map(|e| e.to_f64().to_string()).collect();
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        violations: false,
    })
}
