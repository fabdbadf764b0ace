//! Closed-form structure of normal-gait system matrices.
//!
//! For a normal gait with group sizes `#ℓ1..#ℓm`, write `E(i,j)` for the
//! `#ℓi × #ℓj` all-`e` block and `Tdf = τ_f ⊗ τ_Δ`. Then
//!
//! * `Δ  = (τ_f ⊗ P̄)*`: block `(i,j)` is `I` on the diagonal and `Tdf^(i-j) ⊗ E(i,j)` below it;
//! * `Δ' = P̄ ⊗ Δ`: block `(i,j)` is `τ_Δ ⊗ Tdf^(i-j-1) ⊗ E(i,j)` below the diagonal;
//! * `V  = Δ ⊗ Q̄`: only the last block column, block `(i,m)` is `τ_Δ ⊗ Tdf^(i-1) ⊗ E(i,m)`;
//!
//! and `Ā = [[τ_f⊗(τ_g⊗Δ ⊕ V), τ_f⊗Δ], [τ_g⊗Δ ⊕ V, Δ]]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;

use super::{Gait, GaitParams};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct StructuralBlocks<T> {
    pub delta: Matrix<T>,
    pub delta_prime: Matrix<T>,
    pub v: Matrix<T>,
}

fn require_normal(gait: &Gait) -> Result<()> {
    if gait.is_normal() {
        Ok(())
    } else {
        Err(Error::NotNormalGait)
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = vec![0];
    for s in sizes {
        acc.push(acc.last().unwrap() + s);
    }
    acc
}

fn times<T: Scalar>(x: T, k: usize) -> T {
    x * T::from_usize_exact(k)
}

/// `Δ`, `Δ'` and `V` from their block formulas (not via a star).
pub fn structural_blocks<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> Result<StructuralBlocks<T>> {
    require_normal(gait)?;
    let sizes = gait.group_sizes();
    let off = offsets(&sizes);
    let m = sizes.len();
    let n = gait.n();
    let tdf = params.tz();
    let td = params.tau_delta;

    let mut delta = Matrix::zeros(n, n);
    let mut delta_prime = Matrix::zeros(n, n);
    let mut v = Matrix::zeros(n, n);
    for i in 0..m {
        for j in 0..i {
            let ones = Matrix::ones(sizes[i], sizes[j]);
            delta.paste(off[i], off[j], &ones.shift(times(tdf, i - j)));
            delta_prime.paste(off[i], off[j], &ones.shift(td + times(tdf, i - j - 1)));
        }
        delta.paste(off[i], off[i], &Matrix::identity(sizes[i]));
        v.paste(
            off[i],
            off[m - 1],
            &Matrix::ones(sizes[i], sizes[m - 1]).shift(td + times(tdf, i)),
        );
    }
    Ok(StructuralBlocks {
        delta,
        delta_prime,
        v,
    })
}

/// `A0* = [[Δ, τ_f⊗Δ], [Δ', Δ]]` for a normal gait.
pub fn closed_form_a0_star<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> Result<Matrix<T>> {
    let b = structural_blocks(gait, params)?;
    Matrix::from_blocks(&[
        vec![b.delta.clone(), b.delta.shift(params.tau_f)],
        vec![b.delta_prime, b.delta],
    ])
}

/// `Ā` assembled from `Δ` and `V`; agrees with `A0*⊗A1` whenever A1 holds.
pub fn closed_form_system_matrix<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> Result<Matrix<T>> {
    let b = structural_blocks(gait, params)?;
    let lower_left = b.delta.shift(params.tau_g).oplus(&b.v)?;
    Matrix::from_blocks(&[
        vec![lower_left.shift(params.tau_f), b.delta.shift(params.tau_f)],
        vec![lower_left, b.delta],
    ])
}

/// `λ = Tz^⊗m ⊕ τγ` and the eigenvector with `[v]_q = τ_f ⊗ Tz^⊗(j-1)`,
/// `[v]_{q+n} = Tz^⊗(j-1)` for every leg `q ∈ ℓj`.
pub fn closed_form_eigenpair<T: Scalar>(gait: &Gait, params: &GaitParams<T>) -> Result<(T, Matrix<T>)> {
    if !params.satisfies_a1() {
        return Err(Error::AssumptionA1Violated);
    }
    let n = gait.n();
    let mut v = vec![T::zero(); 2 * n];
    for (j, group) in gait.groups().iter().enumerate() {
        let liftoff = times(params.tz(), j);
        for &leg in group {
            v[leg - 1] = params.tau_f + liftoff;
            v[leg - 1 + n] = liftoff;
        }
    }
    Ok((params.eigenvalue(gait.m()), Matrix::column_from_values(&v)))
}

/// `Ā^⊗r` for `r >= 2` under A2, from the column-block formulas
///
/// ```text
/// col 1: λ^(r-2) ⊗ τγ ⊗ V⊗Δ ⊕ λ^(r-1) ⊗ V
/// col 2: λ^(r-2) ⊗ τ_f ⊗ V⊗Δ
/// ```
///
/// with the upper block row shifted by `τ_f`.
pub fn closed_form_power<T: Scalar>(gait: &Gait, params: &GaitParams<T>, r: u32) -> Result<Matrix<T>> {
    require_normal(gait)?;
    if r < 2 {
        return Err(Error::BadExponent(r));
    }
    if !params.satisfies_a2(gait.m()) {
        return Err(Error::AssumptionA2Violated);
    }
    let b = structural_blocks(gait, params)?;
    let lambda = MaxPlus::Finite(params.eigenvalue(gait.m()));
    let vd = b.v.otimes(&b.delta)?;
    let first = vd
        .scale(lambda.pow(r - 2))
        .shift(params.tau_gamma())
        .oplus(&b.v.scale(lambda.pow(r - 1)))?;
    let second = vd.scale(lambda.pow(r - 2)).shift(params.tau_f);
    Matrix::from_blocks(&[
        vec![first.shift(params.tau_f), second.shift(params.tau_f)],
        vec![first, second],
    ])
}
