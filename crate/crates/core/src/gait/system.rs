//! Construction of the implicit and explicit max-plus systems of a gait.
//!
//! The state is `x(k) = [t(k); l(k)]` (touchdowns then liftoffs) and the legs
//! obey
//!
//! ```text
//! t(k) = τ_f ⊗ l(k)
//! l(k) = τ_g ⊗ t(k-1) ⊕ P ⊗ t(k) ⊕ Q ⊗ t(k-1) ⊕ l(k-1)
//! ```
//!
//! i.e. `x(k) = A0 ⊗ x(k) ⊕ A1 ⊗ x(k-1)`, solved as `x(k) = A0* ⊗ A1 ⊗ x(k-1)`.

use serde::Serialize;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;

use super::{Gait, GaitParams, GaitWarning};

/// All matrices attached to one gait/parameter pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct GaitMatrices<T> {
    pub p: Matrix<T>,
    pub q: Matrix<T>,
    pub c_bar: Matrix<T>,
    pub c: Matrix<T>,
    pub a0: Matrix<T>,
    pub a1: Matrix<T>,
    pub a0_star: Matrix<T>,
    /// System matrix `A = A0* ⊗ A1`.
    pub a: Matrix<T>,
    /// `Ā = C ⊗ A ⊗ Cᵀ`, the system matrix of the normalized gait.
    pub a_bar: Matrix<T>,
    pub warnings: Vec<GaitWarning>,
}

/// `P` couples liftoff of group `j+1` to touchdown of group `j` in the same
/// step; `Q` couples liftoff of `ℓ1` to touchdown of `ℓm` one step earlier.
pub fn build_p_q<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> (Matrix<T>, Matrix<T>) {
    let n = gait.n();
    let groups = gait.groups();
    let delta = MaxPlus::Finite(params.tau_delta);
    let mut p = Matrix::zeros(n, n);
    for pair in groups.windows(2) {
        for &row in &pair[1] {
            for &col in &pair[0] {
                p[(row - 1, col - 1)] = delta;
            }
        }
    }
    let mut q = Matrix::zeros(n, n);
    for &row in &groups[0] {
        for &col in &groups[groups.len() - 1] {
            q[(row - 1, col - 1)] = delta;
        }
    }
    (p, q)
}

/// `A0 = [[Z, τ_f⊗I], [P, Z]]`, `A1 = [[I, Z], [τ_g⊗I ⊕ Q, I]]`.
pub fn build_a0_a1<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> (Matrix<T>, Matrix<T>) {
    let (p, q) = build_p_q(gait, params);
    assemble_a0_a1(gait.n(), params, p, q)
}

fn assemble_a0_a1<T: Scalar>(n: usize, params: &GaitParams<T>, p: Matrix<T>, q: Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let z = Matrix::zeros(n, n);
    let id = Matrix::identity(n);
    let a0 = Matrix::from_blocks(&[vec![z.clone(), id.shift(params.tau_f)], vec![p, z.clone()]])
        .expect("n×n blocks");
    let lower = id.shift(params.tau_g).oplus(&q).expect("n×n blocks");
    let a1 = Matrix::from_blocks(&[vec![id.clone(), z], vec![lower, id]]).expect("n×n blocks");
    (a0, a1)
}

/// Builds `A = A0* ⊗ A1` and its normalized form.
///
/// `P` is nilpotent for every valid gait, so `A0*` always exists.
pub fn system_matrix<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> Result<GaitMatrices<T>> {
    let warnings = params.warnings(gait.m());
    let (p, q) = build_p_q(gait, params);
    let (a0, a1) = assemble_a0_a1(gait.n(), params, p.clone(), q.clone());
    let a0_star = a0.kleene_star()?;
    let a = a0_star.otimes(&a1)?;
    let (c_bar, c) = gait.similarity();
    let a_bar = c.otimes(&a)?.otimes(&c.transpose())?;
    Ok(GaitMatrices {
        p,
        q,
        c_bar,
        c,
        a0,
        a1,
        a0_star,
        a,
        a_bar,
        warnings,
    })
}
