//! Gait specs and simulation plans as accepted on the command line.

use std::io::Read;

use anyhow::{anyhow, Context};
use maxplus_gait::gait::{closed_form_eigenpair, parse_gait_dsl, parse_gait_spec, Gait, GaitParams};
use maxplus_gait::sim::{Disturbance, EventState, Segment, SimulationPlan};
use maxplus_gait::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::failure::{CliResult, Failure};

/// Reads `-` as stdin, anything else as a file path.
pub fn read_input(source: &str) -> CliResult<String> {
    let mut text = String::new();
    if source == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")
            .map_err(Failure::io)?;
    } else {
        text = std::fs::read_to_string(source)
            .with_context(|| format!("reading {source}"))
            .map_err(Failure::io)?;
    }
    Ok(text)
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum GaitField {
    Dsl(String),
    Groups(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentConfig {
    pub gait: GaitField,
    pub tau_f: f64,
    pub tau_g: f64,
    pub tau_delta: f64,
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum InitialKind {
    /// Closed-form eigenvector of the first segment.
    #[default]
    Eigen,
    Zeros,
    /// Integer times in `0..10` drawn from the seed.
    Random,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum InitialConfig {
    Named(InitialKind),
    /// Explicit `[t1..tn, l1..ln]`.
    Values(Vec<f64>),
}

impl Default for InitialConfig {
    fn default() -> Self {
        InitialConfig::Named(InitialKind::Eigen)
    }
}

/// Plan file: `{"n", "segments", "disturbances", "initial"}`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanConfig {
    #[serde(default)]
    pub n: Option<usize>,
    pub segments: Vec<SegmentConfig>,
    #[serde(default)]
    pub disturbances: Vec<Disturbance<f64>>,
    #[serde(default)]
    pub initial: InitialConfig,
}

/// What the input resolved to.
#[derive(Clone, Debug, PartialEq)]
pub enum Spec {
    Gait(Gait, GaitParams<f64>),
    Plan(PlanConfig),
}

/// Timing flags; each one given overrides the corresponding config value.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TauFlags {
    pub tau_f: Option<f64>,
    pub tau_g: Option<f64>,
    pub tau_delta: Option<f64>,
}

impl TauFlags {
    fn complete(&self) -> Option<GaitParams<f64>> {
        Some(GaitParams::new(self.tau_f?, self.tau_g?, self.tau_delta?))
    }

    fn apply(&self, p: GaitParams<f64>) -> GaitParams<f64> {
        GaitParams::new(
            self.tau_f.unwrap_or(p.tau_f),
            self.tau_g.unwrap_or(p.tau_g),
            self.tau_delta.unwrap_or(p.tau_delta),
        )
    }
}

fn looks_like_json(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with('{') && t[1..].trim_start().starts_with('"')
}

/// Resolves `--input`/`--dsl` plus timing flags into a gait or a plan.
pub fn load_spec(input: Option<&str>, dsl: Option<&str>, taus: &TauFlags) -> CliResult<Spec> {
    let text = match (input, dsl) {
        (Some(_), Some(_)) => return Err(Failure::validation(anyhow!("give either --input or --dsl, not both"))),
        (None, None) => return Err(Failure::validation(anyhow!("missing gait: give --input <path|-> or --dsl"))),
        (None, Some(d)) => d.to_string(),
        (Some(path), None) => read_input(path)?,
    };
    parse_spec_text(&text, taus)
}

pub fn parse_spec_text(text: &str, taus: &TauFlags) -> CliResult<Spec> {
    if looks_like_json(text) {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Failure::validation(anyhow!("invalid JSON: {e}")))?;
        if value.get("segments").is_some() {
            let plan = serde_json::from_value(value).map_err(|e| Failure::validation(anyhow!("invalid plan: {e}")))?;
            return Ok(Spec::Plan(plan));
        }
        let (gait, params) = parse_gait_spec(text, None)?;
        return Ok(Spec::Gait(gait, taus.apply(params)));
    }
    let params = taus.complete().ok_or_else(|| {
        Failure::validation(anyhow!("a gait DSL needs --tau-f, --tau-g and --tau-delta"))
    })?;
    let (gait, params) = parse_gait_spec(text, Some(params))?;
    Ok(Spec::Gait(gait, params))
}

fn segment_gait(field: &GaitField, n: Option<usize>) -> CliResult<Gait> {
    let gait = match field {
        GaitField::Dsl(text) => parse_gait_dsl(text)?,
        GaitField::Groups(groups) => match n {
            Some(n) => Gait::new(n, groups.clone())?,
            None => Gait::from_groups(groups.clone())?,
        },
    };
    if let Some(n) = n {
        if gait.n() != n {
            return Err(Error::LegCountMismatch {
                expected: n,
                found: gait.n(),
            }
            .into());
        }
    }
    Ok(gait)
}

/// A ready-to-run simulation.
#[derive(Clone, Debug, PartialEq)]
pub struct Run {
    pub plan: SimulationPlan<f64>,
    pub x0: EventState<f64>,
}

/// Turns a spec into a plan; a bare gait becomes one segment of `steps` steps.
/// `initial` overrides the plan's own choice.
pub fn build_run(spec: Spec, steps: usize, initial: Option<InitialConfig>, seed: u64) -> CliResult<Run> {
    let (plan, plan_initial) = match spec {
        Spec::Gait(gait, params) => (
            SimulationPlan {
                segments: vec![Segment { gait, params, steps }],
                disturbances: Vec::new(),
            },
            InitialConfig::default(),
        ),
        Spec::Plan(cfg) => {
            let segments = cfg
                .segments
                .iter()
                .map(|s| {
                    Ok(Segment {
                        gait: segment_gait(&s.gait, cfg.n)?,
                        params: GaitParams::new(s.tau_f, s.tau_g, s.tau_delta),
                        steps: s.steps,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            (
                SimulationPlan {
                    segments,
                    disturbances: cfg.disturbances,
                },
                cfg.initial,
            )
        }
    };
    let first = plan
        .segments
        .first()
        .ok_or_else(|| Failure::validation(anyhow!("plan has no segments")))?;
    let n = first.gait.n();
    let x0 = match initial.unwrap_or(plan_initial) {
        InitialConfig::Named(InitialKind::Eigen) => {
            let (_, v) = closed_form_eigenpair(&first.gait, &first.params)?;
            EventState::from_column(0, &v)?
        }
        InitialConfig::Named(InitialKind::Zeros) => EventState::zeros(n),
        InitialConfig::Named(InitialKind::Random) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(0..10) as f64).collect();
            EventState::from_values(0, &values)?
        }
        InitialConfig::Values(values) => {
            if values.len() != 2 * n {
                return Err(Error::LegCountMismatch {
                    expected: n,
                    found: values.len() / 2,
                }
                .into());
            }
            EventState::from_values(0, &values)?
        }
    };
    Ok(Run { plan, x0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taus() -> TauFlags {
        TauFlags {
            tau_f: Some(1.0),
            tau_g: Some(3.0),
            tau_delta: Some(2.0),
        }
    }

    #[test]
    fn dsl_and_json_gaits() {
        let Spec::Gait(g, p) = parse_spec_text("{1,4}<{2,3}", &taus()).unwrap() else {
            panic!("expected a gait");
        };
        assert_eq!(g.to_string(), "{1,4}<{2,3}");
        assert_eq!(p, GaitParams::new(1.0, 3.0, 2.0));

        let json = r#"{"n":2,"gait":[[1],[2]],"tau_f":1.0,"tau_g":3.0,"tau_delta":2.0}"#;
        let over = TauFlags {
            tau_g: Some(8.0),
            ..TauFlags::default()
        };
        let Spec::Gait(_, p) = parse_spec_text(json, &over).unwrap() else {
            panic!("expected a gait");
        };
        assert_eq!(p.tau_g, 8.0);
    }

    #[test]
    fn dsl_without_timings_fails() {
        let err = parse_spec_text("{1}<{2}", &TauFlags::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn plan_with_mixed_gait_forms() {
        let text = r#"{"n":4,"segments":[
            {"gait":"{1,4}<{2,3}","tau_f":1,"tau_g":3,"tau_delta":2,"steps":5},
            {"gait":[[1],[2],[3],[4]],"tau_f":1,"tau_g":3,"tau_delta":2,"steps":4}],
            "disturbances":[{"step":2,"index":0,"delay":1.5}],
            "initial":"zeros"}"#;
        let spec = parse_spec_text(text, &TauFlags::default()).unwrap();
        let run = build_run(spec, 99, None, 0).unwrap();
        assert_eq!(run.plan.total_steps(), 9);
        assert_eq!(run.plan.disturbances.len(), 1);
        assert_eq!(run.x0, EventState::zeros(4));
    }

    #[test]
    fn plan_leg_count_checked() {
        let text = r#"{"n":4,"segments":[{"gait":"{1}<{2}","tau_f":1,"tau_g":3,"tau_delta":2,"steps":5}]}"#;
        let spec = parse_spec_text(text, &TauFlags::default()).unwrap();
        assert_eq!(build_run(spec, 1, None, 0).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn random_initial_is_seeded() {
        let spec = parse_spec_text("{1}<{2}", &taus()).unwrap();
        let a = build_run(spec.clone(), 3, Some(InitialConfig::Named(InitialKind::Random)), 7).unwrap();
        let b = build_run(spec, 3, Some(InitialConfig::Named(InitialKind::Random)), 7).unwrap();
        assert_eq!(a.x0, b.x0);
    }
}
