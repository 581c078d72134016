//! Built-in verification run by `--self-check`.

use curlcurl_core::fixtures::{INCIDENCE_N3, TRACE_N3};
use curlcurl_core::{
    build_incidence, build_trace, gauss_rule, gll_nodes, BoundaryData, Discretization,
    DualKind, ExpVectorField, MassQuadrature,
};
use nalgebra::DMatrix;

use crate::error::Result;

/// Fault-injection hooks for exercising the failure path.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SelfCheckOptions {
    /// Compares `E¹⁰ᵀ` instead of `E¹⁰` against the fixture.
    pub transpose_incidence: bool,
    pub mass_quadrature: MassQuadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SelfCheckReport {
    pub checks: Vec<CheckResult>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {:<32} {:.3e} (tol {:.0e})\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.measured,
                    c.tolerance
                )
            })
            .collect()
    }
}

fn edge_integral_error(max_degree: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 1..=max_degree {
        let ns = gll_nodes(n)?;
        let x = ns.nodes();
        let rule = gauss_rule(n)?;
        for j in 1..=n {
            let sub = rule.mapped(x[j - 1], x[j]);
            for i in 1..=n {
                let v = sub.integrate(|t| ns.edge_eval(t)[i - 1]);
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - expect).abs());
            }
        }
    }
    Ok(worst)
}

fn biorthogonality_error(max_degree: usize, quad: MassQuadrature) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 1..=max_degree {
        let d = Discretization::with_quadrature(n, quad)?;
        let grams = d.grams();
        let vol = grams.dual_mass(DualKind::Volume2) * &grams.m0;
        let edge = grams.dual_mass(DualKind::Edge1) * &grams.m1;
        let i0 = DMatrix::<f64>::identity(vol.nrows(), vol.ncols());
        let i1 = DMatrix::<f64>::identity(edge.nrows(), edge.ncols());
        worst = worst.max((vol - i0).abs().max()).max((edge - i1).abs().max());
    }
    Ok(worst)
}

fn fixture_mismatches(transpose: bool) -> Result<f64> {
    let mut e = build_incidence(3)?.to_dense();
    if transpose {
        e = e.transpose();
    }
    let t = build_trace(3)?.to_dense();
    let mut bad = 0usize;
    if e.shape() != (24, 16) {
        bad += 24 * 16;
    } else {
        bad += (0..24)
            .flat_map(|r| (0..16).map(move |c| (r, c)))
            .filter(|&(r, c)| e[(r, c)] != INCIDENCE_N3[r][c])
            .count();
    }
    bad += (0..12)
        .flat_map(|r| (0..16).map(move |c| (r, c)))
        .filter(|&(r, c)| t[(r, c)] != TRACE_N3[r][c])
        .count();
    Ok(bad as f64)
}

pub fn run_self_check(opts: SelfCheckOptions) -> Result<SelfCheckReport> {
    let quad = opts.mass_quadrature;
    let mut checks = vec![
        CheckResult::new("edge integrals N=1..12", edge_integral_error(12)?, 1e-12),
        CheckResult::new("biorthogonality N=1..8", biorthogonality_error(8, quad)?, 1e-12),
        CheckResult::new("N=3 incidence/trace fixtures", fixture_mismatches(opts.transpose_incidence)?, 0.0),
    ];

    let mut equiv = 0.0f64;
    let mut norm_gap = 0.0f64;
    let mut mass_sum = 0.0f64;
    for n in 1..=8 {
        let d = Discretization::with_quadrature(n, quad)?;
        let bd = BoundaryData::from_vector_field(d.nodes(), 15, &ExpVectorField);
        let sol = d.solve(&bd)?;
        equiv = equiv.max(d.equivalence_residual(&sol)?);
        let nf = d.norm_f(&sol.neumann)?;
        let ne = d.norm_e(&sol.dirichlet, &bd)?;
        norm_gap = norm_gap.max((nf - ne).abs() / nf);
        let g = d.grams();
        mass_sum = mass_sum.max((g.m0.sum() - 4.0).abs()).max((g.b0.sum() - 8.0).abs());
    }
    checks.push(CheckResult::new("equivalence residual N=1..8", equiv, 1e-11));
    checks.push(CheckResult::new("norm equality N=1..8", norm_gap, 1e-11));
    checks.push(CheckResult::new("mass matrix sums N=1..8", mass_sum, 1e-12));
    Ok(SelfCheckReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let report = run_self_check(SelfCheckOptions::default()).unwrap();
        assert!(report.passed(), "{}", report.summary());
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn transposed_incidence_fails() {
        let opts = SelfCheckOptions {
            transpose_incidence: true,
            ..Default::default()
        };
        let report = run_self_check(opts).unwrap();
        assert!(!report.passed());
        let fixture = report.checks.iter().find(|c| c.name.contains("fixtures")).unwrap();
        assert!(!fixture.passed);
    }
}
