//! Critical graph and eigenvectors of irreducible matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;

use super::graph::{components_of, is_irreducible, Arc};
use super::karp::max_cycle_mean;

/// Union of the circuits attaining the maximum cycle mean.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalGraphReport<T> {
    pub eigenvalue: T,
    /// 0-based, ascending.
    pub critical_nodes: Vec<usize>,
    pub critical_arcs: Vec<Arc<T>>,
    pub scc_count: usize,
    /// Component id per node; `None` for non-critical nodes.
    pub scc_membership: Vec<Option<usize>>,
}

/// `A_λ` (finite entries shifted by `-λ`) together with its star.
struct Normalized<T> {
    eigenvalue: T,
    shifted: Matrix<T>,
    metric: Matrix<T>,
}

fn normalize<T: Scalar>(a: &Matrix<T>) -> Result<Normalized<T>> {
    if !is_irreducible(a)? {
        return Err(Error::NotIrreducible);
    }
    let MaxPlus::Finite(eigenvalue) = max_cycle_mean(a)? else {
        return Err(Error::NotIrreducible);
    };
    let shifted = a.shift(-eigenvalue);
    // every circuit of A_λ has mean <= 0 up to rounding, so the truncated sum is the star
    let metric = shifted.star_unchecked()?;
    Ok(Normalized {
        eigenvalue,
        shifted,
        metric,
    })
}

fn is_zero<T: Scalar>(x: MaxPlus<T>, tol: T) -> bool {
    x.approx_eq(&MaxPlus::e(), tol)
}

/// Critical nodes satisfy `[A_λ⁺]_ii = 0`; arc `j -> i` is critical when
/// `[A_λ]_ij ⊗ [A_λ*]_ji = 0` and both ends are critical.
pub fn critical_graph<T: Scalar>(a: &Matrix<T>, tol: T) -> Result<CriticalGraphReport<T>> {
    let Normalized {
        eigenvalue,
        shifted,
        metric,
    } = normalize(a)?;
    let n = a.rows();
    let plus = shifted.otimes(&metric)?;
    let critical: Vec<bool> = (0..n).map(|i| is_zero(plus[(i, i)], tol)).collect();

    let mut critical_arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !(critical[i] && critical[j]) {
                continue;
            }
            if let MaxPlus::Finite(w) = a[(i, j)] {
                if is_zero(shifted[(i, j)].otimes(metric[(j, i)]), tol) {
                    critical_arcs.push(Arc {
                        source: j,
                        target: i,
                        weight: w,
                    });
                }
            }
        }
    }

    let components = components_of(n, critical_arcs.iter().map(|arc| (arc.source, arc.target)));
    let mut scc_membership = vec![None; n];
    let mut scc_count = 0;
    for comp in components.iter().filter(|c| critical[c[0]]) {
        for &v in comp {
            scc_membership[v] = Some(scc_count);
        }
        scc_count += 1;
    }

    Ok(CriticalGraphReport {
        eigenvalue,
        critical_nodes: (0..n).filter(|&i| critical[i]).collect(),
        critical_arcs,
        scc_count,
        scc_membership,
    })
}

/// Eigenvalue and the column of `A_λ*` at the lowest-indexed critical node.
pub fn eigenvector_from_critical<T: Scalar>(a: &Matrix<T>, tol: T) -> Result<(T, Matrix<T>)> {
    let report = critical_graph(a, tol)?;
    let node = *report
        .critical_nodes
        .first()
        .expect("irreducible matrix has a critical circuit");
    let Normalized { metric, .. } = normalize(a)?;
    Ok((report.eigenvalue, metric.col(node)))
}

/// Columns of `A_λ*` for every critical node, keyed by node.
pub fn critical_columns<T: Scalar>(a: &Matrix<T>, tol: T) -> Result<Vec<(usize, Matrix<T>)>> {
    let report = critical_graph(a, tol)?;
    let Normalized { metric, .. } = normalize(a)?;
    Ok(report
        .critical_nodes
        .into_iter()
        .map(|i| (i, metric.col(i)))
        .collect())
}

/// `A ⊗ v = λ ⊗ v` entrywise within `tol`.
pub fn verify_eigenpair<T: Scalar>(a: &Matrix<T>, lambda: MaxPlus<T>, v: &Matrix<T>, tol: T) -> Result<bool> {
    let n = a.require_square()?;
    if v.shape() != (n, 1) {
        return Err(Error::DimensionMismatch {
            op: "verify_eigenpair",
            left: a.shape(),
            right: v.shape(),
        });
    }
    if v.is_all_epsilon() {
        return Err(Error::AllEpsilonVector);
    }
    Ok(a.otimes(v)?.approx_eq(&v.scale(lambda), tol))
}
