//! p-refinement study on the exponential test fields.

use std::time::Instant;

use curlcurl_core::fields::exp_field_norm;
use curlcurl_core::{BoundaryData, Discretization, ExpScalarField, ExpVectorField};
use rayon::prelude::*;

use crate::config::StudyConfig;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeRecord {
    pub degree: usize,
    pub norm_f: f64,
    pub norm_e: f64,
    pub err_f: f64,
    pub err_e: f64,
    /// `‖Ẽ - M1 E¹⁰ F‖ / ‖Ẽ‖`
    pub equivalence_residual: f64,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyReport {
    /// Ordered by degree.
    pub records: Vec<DegreeRecord>,
    pub theoretical_norm: f64,
}

pub fn run_degree(cfg: &StudyConfig, degree: usize) -> Result<DegreeRecord> {
    let start = Instant::now();
    let d = Discretization::with_quadrature(degree, cfg.mass_quadrature)?;
    let bd = BoundaryData::from_vector_field(d.nodes(), cfg.quadrature_boost, &ExpVectorField);
    let sol = d.solve(&bd)?;
    let norm_f = d.norm_f(&sol.neumann)?;
    let norm_e = d.norm_e(&sol.dirichlet, &bd)?;
    let equivalence_residual = d.equivalence_residual(&sol)?;
    let (err_f, err_e) =
        d.error_norms(&sol, &ExpScalarField, &ExpVectorField, cfg.quadrature_boost)?;
    Ok(DegreeRecord {
        degree,
        norm_f,
        norm_e,
        err_f,
        err_e,
        equivalence_residual,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Solves both problems for `N = 1..=max_degree`. Degrees run in parallel;
/// the records come back in degree order.
pub fn run_study(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate()?;
    let records = (1..=cfg.max_degree)
        .into_par_iter()
        .map(|n| run_degree(cfg, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(StudyReport {
        records,
        theoretical_norm: exp_field_norm(),
    })
}
