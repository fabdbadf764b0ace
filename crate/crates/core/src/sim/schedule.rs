use serde::Serialize;

use crate::error::{Error, Result};
use crate::gait::{Gait, GaitParams};
use crate::scalar::Scalar;

use super::engine::AppliedDisturbance;
use super::state::EventState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval<T> {
    pub start: T,
    pub end: T,
}

impl<T: Scalar> Interval<T> {
    pub fn duration(&self) -> T {
        self.end - self.start
    }
}

/// Stance `[t(k-1), l(k)]` followed by swing `[l(k), t(k)]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepPhases<T> {
    pub step: usize,
    pub stance: Interval<T>,
    pub swing: Interval<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LegTimeline<T> {
    /// 1-based.
    pub leg: usize,
    pub phases: Vec<StepPhases<T>>,
}

/// Hildebrand-diagram data: one timeline per leg.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LegSchedule<T> {
    pub legs: Vec<LegTimeline<T>>,
}

impl<T: Scalar> LegSchedule<T> {
    /// Earliest and latest event time covered by any interval.
    pub fn span(&self) -> Option<(T, T)> {
        let mut bounds: Option<(T, T)> = None;
        for p in self.legs.iter().flat_map(|l| &l.phases) {
            bounds = Some(match bounds {
                None => (p.stance.start, p.swing.end),
                Some((lo, hi)) => (
                    if p.stance.start < lo { p.stance.start } else { lo },
                    hi.max_of(p.swing.end),
                ),
            });
        }
        bounds
    }
}

/// Interleaves `t(k-1) <= l(k) <= t(k)` per leg for every consecutive pair of states.
pub fn extract_schedule<T: Scalar>(states: &[EventState<T>]) -> Result<LegSchedule<T>> {
    let first = states.first().ok_or(Error::EmptyTrajectory)?;
    let n = first.n();
    let mut legs: Vec<LegTimeline<T>> = (1..=n).map(|leg| LegTimeline { leg, phases: Vec::new() }).collect();
    for pair in states.windows(2) {
        let (prev, cur) = (&pair[0], &pair[1]);
        if cur.n() != n {
            return Err(Error::LegCountMismatch {
                expected: n,
                found: cur.n(),
            });
        }
        for (i, timeline) in legs.iter_mut().enumerate() {
            if !(prev.t[i] <= cur.l[i] && cur.l[i] <= cur.t[i]) {
                return Err(Error::NonMonotoneTrajectory { leg: i + 1, step: cur.k });
            }
            timeline.phases.push(StepPhases {
                step: cur.k,
                stance: Interval {
                    start: prev.t[i],
                    end: cur.l[i],
                },
                swing: Interval {
                    start: cur.l[i],
                    end: cur.t[i],
                },
            });
        }
    }
    Ok(LegSchedule { legs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `t(k) != τ_f ⊗ l(k)`.
    Swing,
    /// `l(k)` differs from its synchronization recursion.
    Liftoff,
    /// Liftoff earlier than `τ_Δ` after the preceding group's touchdown.
    DoubleStance,
    /// Stance shorter than `τ_g`.
    StanceDuration,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation<T> {
    pub step: usize,
    /// 1-based.
    pub leg: usize,
    pub kind: ViolationKind,
    /// Value required by the constraint (lower bound for inequalities).
    pub expected: T,
    pub found: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScheduleReport<T> {
    pub steps_checked: usize,
    pub violations: Vec<Violation<T>>,
}

impl<T> ScheduleReport<T> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every step of a constant-gait trajectory against
///
/// ```text
/// t(k) = τ_f ⊗ l(k) ⊕ d_t(k)
/// l(k) = τ_g ⊗ t(k-1) ⊕ P ⊗ t(k) ⊕ Q ⊗ t(k-1) ⊕ l(k-1) ⊕ d_l(k)
/// ```
///
/// with `d` the recorded disturbance bounds, plus the implied double-stance
/// and stance-duration inequalities.
pub fn verify_schedule<T: Scalar>(
    states: &[EventState<T>],
    disturbances: &[AppliedDisturbance<T>],
    gait: &Gait,
    params: &GaitParams<T>,
    tol: T,
) -> Result<ScheduleReport<T>> {
    if states.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let n = gait.n();
    let groups = gait.groups();
    let m = groups.len();
    let mut violations = Vec::new();
    for pair in states.windows(2) {
        let (prev, cur) = (&pair[0], &pair[1]);
        for x in [prev, cur] {
            if x.n() != n {
                return Err(Error::LegCountMismatch { expected: n, found: x.n() });
            }
        }
        let k = cur.k;
        let bound = |index: usize| {
            disturbances
                .iter()
                .filter(|d| d.step == k && d.index == index)
                .map(|d| d.bound)
                .reduce(|a, b| a.max_of(b))
        };
        let mut flag = |leg: usize, kind, expected: T, found: T, ok: bool| {
            if !ok {
                violations.push(Violation {
                    step: k,
                    leg,
                    kind,
                    expected,
                    found,
                });
            }
        };

        for (j, group) in groups.iter().enumerate() {
            // touchdowns this leg's liftoff waits for: the previous group in
            // this step, or the last group one step earlier
            let (waits_on, same_step) = if j == 0 { (&groups[m - 1], false) } else { (&groups[j - 1], true) };
            for &leg in group {
                let i = leg - 1;
                let mut swing = params.tau_f + cur.l[i];
                if let Some(b) = bound(i) {
                    swing = swing.max_of(b);
                }
                flag(leg, ViolationKind::Swing, swing, cur.t[i], swing.approx_eq(cur.t[i], tol));

                let sync = waits_on
                    .iter()
                    .map(|&q| params.tau_delta + if same_step { cur.t[q - 1] } else { prev.t[q - 1] })
                    .reduce(|a, b| a.max_of(b))
                    .expect("groups are non-empty");
                let stance = params.tau_g + prev.t[i];
                let mut liftoff = stance.max_of(prev.l[i]).max_of(sync);
                if let Some(b) = bound(i + n) {
                    liftoff = liftoff.max_of(b);
                }
                flag(leg, ViolationKind::Liftoff, liftoff, cur.l[i], liftoff.approx_eq(cur.l[i], tol));
                flag(leg, ViolationKind::DoubleStance, sync, cur.l[i], cur.l[i] >= sync - tol);
                flag(leg, ViolationKind::StanceDuration, stance, cur.l[i], cur.l[i] >= stance - tol);
            }
        }
    }
    Ok(ScheduleReport {
        steps_checked: states.len() - 1,
        violations,
    })
}
