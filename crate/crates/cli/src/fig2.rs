//! Pointwise comparison of `E^h` against `curl F^h`.

use curlcurl_core::{gauss_rule, BoundaryData, Discretization, ExpVectorField, GridValues, Reconstruction};
use nalgebra::DMatrix;

use crate::config::StudyConfig;
use crate::error::Result;

/// Degree used for the pointwise comparison.
pub const FIG2_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Grids {
    /// Interior grid coordinates (Gauss points), same in both directions.
    pub coords: Vec<f64>,
    /// `(E^h - curl F^h)_ξ` indexed `[(ξ, η)]`
    pub diff_xi: DMatrix<f64>,
    /// `(E^h - curl F^h)_η` indexed `[(ξ, η)]`
    pub diff_eta: DMatrix<f64>,
    pub max_abs: f64,
}

fn vector_grid(g: GridValues) -> (DMatrix<f64>, DMatrix<f64>) {
    match g {
        GridValues::Vector(x, y) => (x, y),
        GridValues::Scalar(_) => unreachable!("vector reconstruction"),
    }
}

pub fn compute_fig2(d: &Discretization, bd: &BoundaryData, grid_size: usize) -> Result<Fig2Grids> {
    let coords = gauss_rule(grid_size)?.points;
    let sol = d.solve(bd)?;
    let (ex, ey) = vector_grid(d.reconstruct_grid(
        Reconstruction::DualVector,
        &sol.dirichlet,
        &coords,
        &coords,
    )?);
    let (cx, cy) = vector_grid(d.reconstruct_grid(
        Reconstruction::PrimalCurl,
        &sol.neumann,
        &coords,
        &coords,
    )?);
    let diff_xi = ex - cx;
    let diff_eta = ey - cy;
    let max_abs = diff_xi.abs().max().max(diff_eta.abs().max());
    Ok(Fig2Grids {
        coords,
        diff_xi,
        diff_eta,
        max_abs,
    })
}

/// Comparison grids for the exponential test fields at `N = 3`.
pub fn emit_fig2(cfg: &StudyConfig) -> Result<Fig2Grids> {
    cfg.validate()?;
    let d = Discretization::with_quadrature(FIG2_DEGREE, cfg.mass_quadrature)?;
    let bd = BoundaryData::from_vector_field(d.nodes(), cfg.quadrature_boost, &ExpVectorField);
    compute_fig2(&d, &bd, cfg.grid_size)
}
