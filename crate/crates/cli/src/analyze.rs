use anyhow::anyhow;
use maxplus_gait::gait::{check_assumptions, closed_form_eigenpair, system_matrix, Assumptions, Gait, GaitMatrices, GaitParams, GaitWarning};
use maxplus_gait::spectral::{
    coupling_params, critical_graph, default_power_cap, eigenvector_from_critical, is_irreducible, max_cycle_mean,
    verify_eigenpair, CouplingReport,
};
use maxplus_gait::MaxPlus;
use serde::Serialize;

use crate::failure::{CliResult, Failure};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenvalueReport {
    /// `Tz^m ⊕ τγ`; `null` when A1 fails.
    pub closed_form: Option<f64>,
    /// Maximum cycle mean of `A`.
    pub karp: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalSummary {
    pub scc_count: usize,
    /// 0-based indices into `[t; l]`.
    pub critical_nodes: Vec<usize>,
    pub critical_arc_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub gait: String,
    pub n: usize,
    pub m: usize,
    pub params: GaitParams<f64>,
    pub assumptions: Assumptions,
    pub warnings: Vec<GaitWarning>,
    pub lambda: f64,
    pub eigenvalue: EigenvalueReport,
    /// Closed form under A1, otherwise a column of the critical metric matrix.
    pub eigenvector: Option<Vec<f64>>,
    pub eigenvector_verified: bool,
    pub irreducible: bool,
    pub critical_graph: Option<CriticalSummary>,
    pub coupling: Option<CouplingReport<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<GaitMatrices<f64>>,
}

fn values(v: &maxplus_gait::Matrix<f64>) -> Vec<f64> {
    v.entries().iter().map(|e| e.to_f64()).collect()
}

/// Spectral analysis of one gait. A closed-form eigenvalue that disagrees
/// with Karp's is a constraint failure, never a report entry.
pub fn run_analyze(gait: &Gait, params: &GaitParams<f64>, tol: f64, with_matrices: bool) -> CliResult<AnalyzeReport> {
    let gm = system_matrix(gait, params)?;
    let a = &gm.a;
    let karp = max_cycle_mean(a)?
        .value()
        .ok_or_else(|| Failure::validation(anyhow!("system matrix has no circuit")))?;
    let assumptions = check_assumptions(gait, params);
    let irreducible = is_irreducible(a)?;

    let (closed_form, eigenvector) = if assumptions.a1 {
        let (lambda, v) = closed_form_eigenpair(gait, params)?;
        if (lambda - karp).abs() > tol {
            return Err(Failure::constraint(anyhow!(
                "closed-form eigenvalue {lambda} disagrees with maximum cycle mean {karp}"
            )));
        }
        (Some(lambda), Some(v))
    } else if irreducible {
        (None, Some(eigenvector_from_critical(a, tol)?.1))
    } else {
        (None, None)
    };
    let eigenvector_verified = match &eigenvector {
        Some(v) => verify_eigenpair(a, MaxPlus::Finite(karp), v, tol)?,
        None => false,
    };

    let (critical, coupling) = if irreducible {
        let cg = critical_graph(a, tol)?;
        let summary = CriticalSummary {
            scc_count: cg.scc_count,
            critical_nodes: cg.critical_nodes,
            critical_arc_count: cg.critical_arcs.len(),
        };
        let coupling = coupling_params(a, default_power_cap(a.rows()), tol)?;
        (Some(summary), Some(coupling))
    } else {
        (None, None)
    };

    Ok(AnalyzeReport {
        gait: gait.to_string(),
        n: gait.n(),
        m: gait.m(),
        params: *params,
        assumptions,
        warnings: gm.warnings.clone(),
        lambda: karp,
        eigenvalue: EigenvalueReport { closed_form, karp },
        eigenvector: eigenvector.as_ref().map(values),
        eigenvector_verified,
        irreducible,
        critical_graph: critical,
        coupling,
        matrices: with_matrices.then_some(gm),
    })
}

fn list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// `key = value` lines.
pub fn render_text(r: &AnalyzeReport) -> String {
    let mut lines = vec![
        format!("gait = {}", r.gait),
        format!("n = {}, m = {}", r.n, r.m),
        format!(
            "tau_f = {}, tau_g = {}, tau_delta = {}",
            r.params.tau_f, r.params.tau_g, r.params.tau_delta
        ),
        format!("a1 = {}, a2 = {}", r.assumptions.a1, r.assumptions.a2),
        format!("lambda = {}", r.lambda),
        format!("v = {}", r.eigenvector.as_deref().map_or("none".into(), list)),
        format!("eigenvector_verified = {}", r.eigenvector_verified),
        format!("irreducible = {}", r.irreducible),
    ];
    if let Some(cg) = &r.critical_graph {
        lines.push(format!("scc_count = {}", cg.scc_count));
        lines.push(format!("critical_nodes = {:?}", cg.critical_nodes));
    }
    if let Some(c) = &r.coupling {
        lines.push(format!("c = {}, k0 = {}", opt(c.cyclicity), opt(c.coupling_time)));
        if c.power_cap_hit {
            lines.push(format!("power cap {} hit", c.power_cap));
        }
    }
    for w in &r.warnings {
        lines.push(format!("warning: {w:?}"));
    }
    if let Some(gm) = &r.matrices {
        lines.push(format!("A =\n{}", gm.a));
    }
    lines.join("\n") + "\n"
}
