use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Touchdown and liftoff times of every leg at step `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventState<T> {
    pub k: usize,
    pub t: Vec<T>,
    pub l: Vec<T>,
}

impl<T: Scalar> EventState<T> {
    pub fn new(k: usize, t: Vec<T>, l: Vec<T>) -> Result<Self> {
        if t.len() != l.len() {
            return Err(Error::DimensionMismatch {
                op: "event_state",
                left: (t.len(), 1),
                right: (l.len(), 1),
            });
        }
        let state = EventState { k, t, l };
        state.require_finite()?;
        Ok(state)
    }

    pub fn zeros(n: usize) -> Self {
        EventState {
            k: 0,
            t: vec![T::zero(); n],
            l: vec![T::zero(); n],
        }
    }

    /// Splits a `2n` vector `[t; l]`.
    pub fn from_values(k: usize, x: &[T]) -> Result<Self> {
        if !x.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                op: "event_state",
                left: (x.len(), 1),
                right: (x.len() + 1, 1),
            });
        }
        let n = x.len() / 2;
        Self::new(k, x[..n].to_vec(), x[n..].to_vec())
    }

    /// Fails with `NonFiniteState` on an `ε` entry.
    pub fn from_column(k: usize, x: &Matrix<T>) -> Result<Self> {
        let values = x
            .entries()
            .iter()
            .map(|e| e.value().ok_or(Error::NonFiniteState))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(k, &values)
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn values(&self) -> Vec<T> {
        self.t.iter().chain(&self.l).copied().collect()
    }

    /// Component `i` of `[t; l]`.
    pub fn get(&self, i: usize) -> T {
        let n = self.n();
        if i < n {
            self.t[i]
        } else {
            self.l[i - n]
        }
    }

    pub fn to_column(&self) -> Matrix<T> {
        Matrix::column_from_values(&self.values())
    }

    fn require_finite(&self) -> Result<()> {
        let finite = self.t.iter().chain(&self.l).all(|x| x.to_f64().is_some_and(f64::is_finite));
        if finite {
            Ok(())
        } else {
            Err(Error::NonFiniteState)
        }
    }
}

/// `x(k) = A ⊗ x(k-1)`.
pub fn step<T: Scalar>(a: &Matrix<T>, x: &EventState<T>) -> Result<EventState<T>> {
    let dim = 2 * x.n();
    if a.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch {
            op: "step",
            left: a.shape(),
            right: (dim, 1),
        });
    }
    x.require_finite()?;
    EventState::from_column(x.k + 1, &a.otimes(&x.to_column())?)
}

/// `λ ⊗ x` as plain values, used for eigenray comparisons.
pub(crate) fn shifted<T: Scalar>(x: &EventState<T>, lambda: T) -> Vec<T> {
    x.values().into_iter().map(|v| v + lambda).collect()
}

pub(crate) fn values_close<T: Scalar>(a: &[T], b: &[T], tol: T) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(*y, tol))
}
