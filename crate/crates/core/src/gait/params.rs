use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

use super::Gait;

/// Minimal swing, stance and double-stance durations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaitParams<T> {
    pub tau_f: T,
    pub tau_g: T,
    pub tau_delta: T,
}

/// Flags for the two standing assumptions of the closed-form analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    /// `tau_g > 0` and `tau_f > 0`.
    pub a1: bool,
    /// `tau_f + tau_g <= m * (tau_f + tau_delta)`.
    pub a2: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaitWarning {
    /// Negative double stance: legs may all be airborne, guarantees relying on A2 are dropped.
    RunningGait,
    AssumptionA1Violated,
    AssumptionA2Violated,
}

impl<T: Scalar> GaitParams<T> {
    pub fn new(tau_f: T, tau_g: T, tau_delta: T) -> Self {
        GaitParams {
            tau_f,
            tau_g,
            tau_delta,
        }
    }

    /// `Tz = τ_f ⊗ τ_Δ`.
    pub fn tz(&self) -> T {
        self.tau_f + self.tau_delta
    }

    /// `τγ = τ_f ⊗ τ_g`.
    pub fn tau_gamma(&self) -> T {
        self.tau_f + self.tau_g
    }

    pub fn satisfies_a1(&self) -> bool {
        self.tau_f > T::zero() && self.tau_g > T::zero()
    }

    pub fn satisfies_a2(&self, m: usize) -> bool {
        self.tau_gamma() <= self.tz() * T::from_usize_exact(m)
    }

    /// `Tz^⊗m ⊕ τγ`.
    pub fn eigenvalue(&self, m: usize) -> T {
        (self.tz() * T::from_usize_exact(m)).max_of(self.tau_gamma())
    }

    pub fn warnings(&self, m: usize) -> Vec<GaitWarning> {
        let mut w = Vec::new();
        if self.tau_delta < T::zero() {
            w.push(GaitWarning::RunningGait);
        }
        if !self.satisfies_a1() {
            w.push(GaitWarning::AssumptionA1Violated);
        }
        if !self.satisfies_a2(m) {
            w.push(GaitWarning::AssumptionA2Violated);
        }
        w
    }
}

pub fn check_assumptions<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> Assumptions {
    Assumptions {
        a1: params.satisfies_a1(),
        a2: params.satisfies_a2(gait.m()),
    }
}
