use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gait::{system_matrix, Gait, GaitParams};
use crate::matrix::Matrix;
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;
use crate::spectral::max_cycle_mean;

use super::state::{shifted, values_close, EventState};

/// `steps` consecutive steps driven by one gait.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment<T> {
    pub gait: Gait,
    pub params: GaitParams<T>,
    pub steps: usize,
}

/// Postpones state component `index` of step `step` (0 is the initial state)
/// by `delay` relative to the undisturbed value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Disturbance<T> {
    pub step: usize,
    pub index: usize,
    pub delay: T,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SimulationPlan<T> {
    pub segments: Vec<Segment<T>>,
    pub disturbances: Vec<Disturbance<T>>,
}

/// A disturbance as it entered the recursion: the component is bounded below by `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AppliedDisturbance<T> {
    pub step: usize,
    pub index: usize,
    pub delay: T,
    pub bound: T,
}

/// States `from_state..=to_state` of the trajectory belong to this segment;
/// `from_state` is the state the segment starts from. `eigenvalue` is the
/// maximum cycle mean of the segment's system matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SegmentSpan<T> {
    pub gait: String,
    pub params: GaitParams<T>,
    pub eigenvalue: T,
    pub from_state: usize,
    pub to_state: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory<T> {
    pub states: Vec<EventState<T>>,
    pub segments: Vec<SegmentSpan<T>>,
    pub disturbances: Vec<AppliedDisturbance<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn segment_states(&self, segment: usize) -> &[EventState<T>] {
        let span = &self.segments[segment];
        &self.states[span.from_state..=span.to_state]
    }

    /// Disturbances applied strictly inside a segment (not to its starting state).
    pub fn segment_disturbances(&self, segment: usize) -> Vec<AppliedDisturbance<T>> {
        let span = &self.segments[segment];
        let (lo, hi) = (self.states[span.from_state].k, self.states[span.to_state].k);
        self.disturbances
            .iter()
            .filter(|d| d.step > lo && d.step <= hi)
            .copied()
            .collect()
    }
}

impl<T: Scalar> SimulationPlan<T> {
    pub fn total_steps(&self) -> usize {
        self.segments.iter().map(|s| s.steps).sum()
    }

    fn validate(&self, n: usize) -> Result<()> {
        for seg in &self.segments {
            if seg.gait.n() != n {
                return Err(Error::LegCountMismatch {
                    expected: n,
                    found: seg.gait.n(),
                });
            }
        }
        let steps = self.total_steps();
        for d in &self.disturbances {
            if d.delay < T::zero() {
                return Err(Error::NegativeDelay {
                    step: d.step,
                    delay: d.delay.to_string(),
                });
            }
            if d.index >= 2 * n {
                return Err(Error::BadStateIndex {
                    index: d.index,
                    len: 2 * n,
                });
            }
            if d.step > steps {
                return Err(Error::DisturbanceOutOfRange { step: d.step, steps });
            }
        }
        Ok(())
    }

    /// Per component, the largest delay scheduled at `step`.
    fn delays_at(&self, step: usize, dim: usize) -> Option<Vec<Option<T>>> {
        let mut out = vec![None; dim];
        let mut any = false;
        for d in self.disturbances.iter().filter(|d| d.step == step) {
            let slot: &mut Option<T> = &mut out[d.index];
            *slot = Some(slot.map_or(d.delay, |cur| cur.max_of(d.delay)));
            any = true;
        }
        any.then_some(out)
    }
}

/// Runs every segment in order, rebuilding the system matrix at each gait
/// boundary.
///
/// A disturbance at step `k` on component `i` adds `d_i = x̂_i(k) ⊗ delay` to
/// the implicit recursion, `x(k) = A0* ⊗ (A1 ⊗ x(k-1) ⊕ d)`, where `x̂(k)` is the
/// undisturbed successor. Dependent events shift through `A0*` in the same
/// step and through `A1` afterwards.
pub fn simulate<T: Scalar>(plan: &SimulationPlan<T>, x0: &EventState<T>) -> Result<Trajectory<T>> {
    let n = x0.n();
    let dim = 2 * n;
    plan.validate(n)?;
    // a finite start keeps every later state finite
    let mut start = EventState::new(x0.k, x0.t.clone(), x0.l.clone())?;
    let mut applied = Vec::new();
    if let Some(delays) = plan.delays_at(0, dim) {
        let mut values = start.values();
        for (i, d) in delays.iter().enumerate() {
            if let Some(d) = *d {
                let bound = values[i] + d;
                applied.push(AppliedDisturbance {
                    step: 0,
                    index: i,
                    delay: d,
                    bound,
                });
                values[i] = bound;
            }
        }
        start = EventState::from_values(x0.k, &values)?;
    }

    let mut states = vec![start];
    let mut segments = Vec::with_capacity(plan.segments.len());
    let mut step_no = 0;
    for seg in &plan.segments {
        let gm = system_matrix(&seg.gait, &seg.params)?;
        // the identity diagonal of A1 gives every node a loop, so λ is finite
        let MaxPlus::Finite(eigenvalue) = max_cycle_mean(&gm.a)? else {
            return Err(Error::NonFiniteState);
        };
        let from_state = states.len() - 1;
        for _ in 0..seg.steps {
            step_no += 1;
            let prev = states.last().expect("non-empty");
            let prev_col = prev.to_column();
            let mut b = gm.a1.otimes(&prev_col)?;
            if let Some(delays) = plan.delays_at(step_no, dim) {
                let nominal = gm.a.otimes(&prev_col)?;
                for (i, d) in delays.iter().enumerate() {
                    if let Some(d) = *d {
                        let MaxPlus::Finite(base) = nominal[(i, 0)] else {
                            return Err(Error::NonFiniteState);
                        };
                        let bound = base + d;
                        applied.push(AppliedDisturbance {
                            step: step_no,
                            index: i,
                            delay: d,
                            bound,
                        });
                        b[(i, 0)] = b[(i, 0)].oplus(MaxPlus::Finite(bound));
                    }
                }
            }
            let next = gm.a0_star.otimes(&b)?;
            states.push(EventState::from_column(prev.k + 1, &next)?);
        }
        segments.push(SegmentSpan {
            gait: seg.gait.to_string(),
            params: seg.params,
            eigenvalue,
            from_state,
            to_state: states.len() - 1,
        });
    }
    Ok(Trajectory {
        states,
        segments,
        disturbances: applied,
    })
}

/// `k` of the first state from which `x(j+1) = λ ⊗ x(j)` holds up to the end
/// of `states`; `None` if the last step is not on the eigenray or fewer than
/// two states are given.
pub fn detect_steady_state<T: Scalar>(states: &[EventState<T>], lambda: T, tol: T) -> Option<usize> {
    if states.len() < 2 {
        return None;
    }
    let on_ray = |j: usize| values_close(&states[j + 1].values(), &shifted(&states[j], lambda), tol);
    let mut first = states.len() - 1;
    while first > 0 && on_ray(first - 1) {
        first -= 1;
    }
    (first < states.len() - 1).then(|| states[first].k)
}

/// `x(k) - v` for each state; constant across `k` once on the eigenray of `v`.
pub fn offsets_from<T: Scalar>(states: &[EventState<T>], v: &Matrix<T>) -> Result<Vec<Vec<T>>> {
    let v = EventState::from_column(0, v)?.values();
    Ok(states
        .iter()
        .map(|x| x.values().iter().zip(&v).map(|(a, b)| *a - *b).collect())
        .collect())
}
