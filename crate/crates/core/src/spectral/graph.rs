use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;

/// Arc `source -> target` carrying `[A]_{target,source}`. Node indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Arc<T> {
    pub source: usize,
    pub target: usize,
    pub weight: T,
}

/// Precedence graph of a square matrix: one arc `j -> i` per finite `[A]_ij`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrecedenceGraph<T> {
    pub node_count: usize,
    /// Row-major order of the originating entries.
    pub arcs: Vec<Arc<T>>,
}

impl<T: Scalar> PrecedenceGraph<T> {
    pub fn from_matrix(a: &Matrix<T>) -> Result<Self> {
        let n = a.require_square()?;
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let MaxPlus::Finite(w) = a[(i, j)] {
                    arcs.push(Arc {
                        source: j,
                        target: i,
                        weight: w,
                    });
                }
            }
        }
        Ok(PrecedenceGraph { node_count: n, arcs })
    }

    /// Strongly connected components, each sorted ascending, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.node_count, self.arcs.iter().map(|a| (a.source, a.target)))
    }

    /// Strongly connected with at least one circuit.
    pub fn is_strongly_connected(&self) -> bool {
        match self.node_count {
            0 => false,
            1 => !self.arcs.is_empty(),
            _ => self.components().len() == 1,
        }
    }
}

pub(crate) fn components_of(node_count: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(node_count, 0);
    for _ in 0..node_count {
        g.add_node(());
    }
    for (s, t) in edges {
        g.add_edge(NodeIndex::new(s), NodeIndex::new(t), ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

pub fn precedence_graph<T: Scalar>(a: &Matrix<T>) -> Result<PrecedenceGraph<T>> {
    PrecedenceGraph::from_matrix(a)
}

/// Irreducible iff the precedence graph is strongly connected. A single node
/// counts only with a self-loop, so every irreducible matrix has a finite eigenvalue.
pub fn is_irreducible<T: Scalar>(a: &Matrix<T>) -> Result<bool> {
    Ok(PrecedenceGraph::from_matrix(a)?.is_strongly_connected())
}
