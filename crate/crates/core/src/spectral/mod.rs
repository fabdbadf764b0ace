//! Graph-theoretic spectral analysis of max-plus matrices: irreducibility,
//! maximum cycle mean, critical graph, eigenvectors and coupling time.

mod coupling;
mod critical;
mod graph;
mod karp;

pub use coupling::{coupling_params, default_power_cap, CouplingReport};
pub use critical::{critical_columns, critical_graph, eigenvector_from_critical, verify_eigenpair, CriticalGraphReport};
pub use graph::{is_irreducible, precedence_graph, Arc, PrecedenceGraph};
pub use karp::max_cycle_mean;
