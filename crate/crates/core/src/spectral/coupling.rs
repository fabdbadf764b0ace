use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;

use super::graph::is_irreducible;
use super::karp::max_cycle_mean;

/// Outcome of the periodicity search `A^⊗(p+c) = λ^⊗c ⊗ A^⊗p` for `p >= k0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingReport<T> {
    pub eigenvalue: T,
    /// `None` when the cap was hit.
    pub cyclicity: Option<usize>,
    pub coupling_time: Option<usize>,
    pub power_cap_hit: bool,
    pub power_cap: usize,
}

/// `4n²`.
pub fn default_power_cap(n: usize) -> usize {
    4 * n * n
}

/// Smallest cyclicity `c` in `1..=n`, and for it the smallest `k0` such that
/// the coupling identity holds for every `p` in `[k0, p_max - c]`.
pub fn coupling_params<T: Scalar>(a: &Matrix<T>, p_max: usize, tol: T) -> Result<CouplingReport<T>> {
    let n = a.require_square()?;
    if p_max < 2 {
        return Err(Error::BadExponent(p_max as u32));
    }
    if !is_irreducible(a)? {
        return Err(Error::NotIrreducible);
    }
    let MaxPlus::Finite(lambda) = max_cycle_mean(a)? else {
        return Err(Error::NotIrreducible);
    };

    let mut powers = Vec::with_capacity(p_max + 1);
    powers.push(Matrix::identity(n));
    for p in 1..=p_max {
        powers.push(powers[p - 1].otimes(a)?);
    }

    for c in 1..=n.min(p_max) {
        let shift = lambda * T::from_usize_exact(c);
        let holds = |p: usize| powers[p + c].approx_eq(&powers[p].shift(shift), tol);
        let last = p_max - c;
        if !holds(last) {
            continue;
        }
        let mut k0 = last;
        while k0 > 0 && holds(k0 - 1) {
            k0 -= 1;
        }
        return Ok(CouplingReport {
            eigenvalue: lambda,
            cyclicity: Some(c),
            coupling_time: Some(k0),
            power_cap_hit: false,
            power_cap: p_max,
        });
    }
    Ok(CouplingReport {
        eigenvalue: lambda,
        cyclicity: None,
        coupling_time: None,
        power_cap_hit: true,
        power_cap: p_max,
    })
}
