//! Maximum cycle mean by Karp's dynamic program, run once per strongly
//! connected component.

use crate::error::Result;
use crate::matrix::Matrix;
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;

use super::graph::PrecedenceGraph;

/// Largest mean arc weight over all elementary circuits; `ε` when acyclic.
pub fn max_cycle_mean<T: Scalar>(a: &Matrix<T>) -> Result<MaxPlus<T>> {
    let graph = PrecedenceGraph::from_matrix(a)?;
    let mut best = MaxPlus::Epsilon;
    for comp in graph.components() {
        best = best.oplus(component_mean(a, &comp));
    }
    Ok(best)
}

fn component_mean<T: Scalar>(a: &Matrix<T>, comp: &[usize]) -> MaxPlus<T> {
    let k = comp.len();
    if k == 1 {
        // a lone node is cyclic only through its self-loop
        return a[(comp[0], comp[0])];
    }
    // levels[j][v]: heaviest walk of exactly j arcs from comp[0] to comp[v] inside the component
    let mut levels = vec![vec![MaxPlus::<T>::Epsilon; k]; k + 1];
    levels[0][0] = MaxPlus::e();
    for j in 1..=k {
        for (vi, &v) in comp.iter().enumerate() {
            let mut acc = MaxPlus::Epsilon;
            for (ui, &u) in comp.iter().enumerate() {
                acc = acc.oplus(levels[j - 1][ui].otimes(a[(v, u)]));
            }
            levels[j][vi] = acc;
        }
    }
    let mut best = MaxPlus::Epsilon;
    for vi in 0..k {
        let MaxPlus::Finite(top) = levels[k][vi] else {
            continue;
        };
        let mut worst: Option<T> = None;
        for (j, level) in levels.iter().enumerate().take(k) {
            if let MaxPlus::Finite(d) = level[vi] {
                let mean = (top - d) / T::from_usize_exact(k - j);
                worst = Some(match worst {
                    Some(w) if w <= mean => w,
                    _ => mean,
                });
            }
        }
        if let Some(w) = worst {
            best = best.oplus(MaxPlus::Finite(w));
        }
    }
    best
}
