use std::path::Path;

use anyhow::Context;
use maxplus_gait::sim::{
    detect_steady_state, extract_schedule, render_diagram, simulate, AppliedDisturbance, LegSchedule, ScheduleReport,
    Trajectory,
};
use serde::Serialize;

use crate::failure::{CliResult, Failure};
use crate::input::Run;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SegmentReport {
    pub gait: String,
    pub eigenvalue: f64,
    pub first_step: usize,
    pub last_step: usize,
    /// First step from which the segment advances by `eigenvalue` per step.
    pub steady_from: Option<usize>,
    /// `steady_from - first_step + 1`, i.e. steps taken after the switch.
    pub steps_to_steady: Option<usize>,
    pub verification: ScheduleReport<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub steps: usize,
    pub monotone: bool,
    pub violation_count: usize,
    pub segments: Vec<SegmentReport>,
    pub disturbances: Vec<AppliedDisturbance<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationOutput {
    pub trajectory: Trajectory<f64>,
    pub schedule: LegSchedule<f64>,
    pub report: SimulationReport,
    pub diagram: String,
}

/// Simulates, verifies each segment against its own gait and renders the
/// diagram of the whole run.
pub fn run_simulate(run: &Run, tol: f64, quantum: f64) -> CliResult<SimulationOutput> {
    let trajectory = simulate(&run.plan, &run.x0)?;
    let schedule = extract_schedule(&trajectory.states)?;
    let diagram = render_diagram(&schedule, quantum)?;

    let mut segments = Vec::new();
    for (i, (span, seg)) in trajectory.segments.iter().zip(&run.plan.segments).enumerate() {
        let states = trajectory.segment_states(i);
        let verification = maxplus_gait::sim::verify_schedule(
            states,
            &trajectory.segment_disturbances(i),
            &seg.gait,
            &seg.params,
            tol,
        )?;
        let first_step = trajectory.states[span.from_state].k + 1;
        let steady_from = detect_steady_state(states, span.eigenvalue, tol);
        segments.push(SegmentReport {
            gait: span.gait.clone(),
            eigenvalue: span.eigenvalue,
            first_step,
            last_step: trajectory.states[span.to_state].k,
            steady_from,
            steps_to_steady: steady_from.map(|k| (k + 1).saturating_sub(first_step)),
            verification,
        });
    }
    let monotone = trajectory
        .states
        .windows(2)
        .all(|w| w[0].values().iter().zip(w[1].values()).all(|(a, b)| *a <= b));
    let report = SimulationReport {
        steps: trajectory.states.len() - 1,
        monotone,
        violation_count: segments.iter().map(|s| s.verification.violations.len()).sum(),
        segments,
        disturbances: trajectory.disturbances.clone(),
    };
    Ok(SimulationOutput {
        trajectory,
        schedule,
        report,
        diagram,
    })
}

/// `k,t1..tn,l1..ln`, one row per state.
pub fn trajectory_csv(traj: &Trajectory<f64>) -> CliResult<String> {
    let n = traj.states.first().map_or(0, |s| s.n());
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<String> = std::iter::once("k".to_string())
        .chain((1..=n).map(|i| format!("t{i}")))
        .chain((1..=n).map(|i| format!("l{i}")))
        .collect();
    let io = |e: csv::Error| Failure::io(anyhow::Error::from(e));
    w.write_record(&header).map_err(io)?;
    for s in &traj.states {
        let row: Vec<String> = std::iter::once(s.k.to_string())
            .chain(s.values().iter().map(|v| v.to_string()))
            .collect();
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::io(anyhow::anyhow!("{e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of numbers is utf-8"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

/// Everything as one JSON document.
pub fn combined_json(out: &SimulationOutput) -> String {
    #[derive(Serialize)]
    struct Combined<'a> {
        report: &'a SimulationReport,
        trajectory: &'a Trajectory<f64>,
        schedule: &'a LegSchedule<f64>,
    }
    to_json(&Combined {
        report: &out.report,
        trajectory: &out.trajectory,
        schedule: &out.schedule,
    })
}

/// Writes trajectory.csv, trajectory.json, schedule.json, report.json and diagram.txt.
pub fn write_outputs(out: &SimulationOutput, dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating {}", dir.display()))
        .map_err(Failure::io)?;
    let files = [
        ("trajectory.csv", trajectory_csv(&out.trajectory)?),
        ("trajectory.json", to_json(&out.trajectory)),
        ("schedule.json", to_json(&out.schedule)),
        ("report.json", to_json(&out.report)),
        ("diagram.txt", out.diagram.clone()),
    ];
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::io)?;
    }
    Ok(())
}

pub fn report_json(out: &SimulationOutput) -> String {
    to_json(&out.report)
}
