//! Tensor-product bases on the reference square.
//!
//! `Ψ⁽⁰⁾` holds the nodal functions `h_i(ξ) h_j(η)` in node order. `Ψ⁽¹⁾` holds
//! the vector edge functions: the ξ-block `(h_i(ξ) e_j(η), 0)` followed by the
//! η-block `(0, e_i(ξ) h_j(η))`, in edge order (see [`DofLayout`]).
//!
//! [`DofLayout`]: crate::operators2d::DofLayout

use nalgebra::{DMatrix, DVector};

use crate::basis1d::{BasisEval1D, NodeSet1D};
use crate::operators2d::DofLayout;

/// Values of `Ψ⁽⁰⁾` at a single point.
pub fn volume_basis(ns: &NodeSet1D, x: f64, y: f64) -> DVector<f64> {
    let hx = ns.lagrange_eval(x);
    let hy = ns.lagrange_eval(y);
    let n = ns.degree();
    DVector::from_fn((n + 1) * (n + 1), |k, _| hx[k % (n + 1)] * hy[k / (n + 1)])
}

/// Values of `Ψ⁽¹⁾` at a single point: row 0 is the ξ-component, row 1 the
/// η-component.
pub fn edge_basis(ns: &NodeSet1D, x: f64, y: f64) -> DMatrix<f64> {
    let n = ns.degree();
    let layout = DofLayout::new(n).expect("node set has degree >= 1");
    let (hx, hy) = (ns.lagrange_eval(x), ns.lagrange_eval(y));
    let (ex, ey) = (ns.edge_eval(x), ns.edge_eval(y));
    let mut out = DMatrix::zeros(2, layout.n_edges());
    for j in 1..=n {
        for i in 0..=n {
            out[(0, layout.xi_edge(i, j))] = hx[i] * ey[j - 1];
        }
    }
    for j in 0..=n {
        for i in 1..=n {
            out[(1, layout.eta_edge(i, j))] = ex[i - 1] * hy[j];
        }
    }
    out
}

/// Evaluates `Ψ⁽⁰⁾ c` on the tensor grid `xs × ys`. Result is indexed
/// `[(a, b)]` for point `(xs[a], ys[b])`.
pub fn eval_volume_grid(ns: &NodeSet1D, coeffs: &DVector<f64>, xs: &[f64], ys: &[f64]) -> DMatrix<f64> {
    let n = ns.degree();
    let tx = ns.tabulate(xs);
    let ty = ns.tabulate(ys);
    let c = DMatrix::from_column_slice(n + 1, n + 1, coeffs.as_slice());
    // c[(i, j)] = coeff of node (i, j)
    tx.h.transpose() * c * ty.h
}

/// Evaluates `Ψ⁽¹⁾ c` on the tensor grid `xs × ys`, returning the ξ- and
/// η-component grids.
pub fn eval_edge_grid(
    ns: &NodeSet1D,
    coeffs: &DVector<f64>,
    xs: &[f64],
    ys: &[f64],
) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = ns.degree();
    let half = n * (n + 1);
    let tx: BasisEval1D = ns.tabulate(xs);
    let ty: BasisEval1D = ns.tabulate(ys);
    // ξ-block: index (j-1)(N+1)+i, column-major (N+1) × N
    let cx = DMatrix::from_column_slice(n + 1, n, &coeffs.as_slice()[..half]);
    // η-block: index j·N+(i-1), column-major N × (N+1)
    let cy = DMatrix::from_column_slice(n, n + 1, &coeffs.as_slice()[half..]);
    let gx = tx.h.transpose() * cx * &ty.e;
    let gy = tx.e.transpose() * cy * &ty.h;
    (gx, gy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis1d::gll_nodes;

    #[test]
    fn grid_eval_matches_pointwise() {
        let ns = gll_nodes(4).unwrap();
        let nodal = DVector::from_fn(25, |k, _| (k as f64 * 0.7).sin());
        let edge = DVector::from_fn(40, |k, _| (k as f64 * 0.3).cos());
        let xs = [-0.9, -0.2, 0.4];
        let ys = [-0.5, 0.1, 0.77, 1.0];
        let g = eval_volume_grid(&ns, &nodal, &xs, &ys);
        let (gx, gy) = eval_edge_grid(&ns, &edge, &xs, &ys);
        for (a, &x) in xs.iter().enumerate() {
            for (b, &y) in ys.iter().enumerate() {
                let v = volume_basis(&ns, x, y).dot(&nodal);
                assert!((g[(a, b)] - v).abs() < 1e-14);
                let e = edge_basis(&ns, x, y) * &edge;
                assert!((gx[(a, b)] - e[0]).abs() < 1e-13);
                assert!((gy[(a, b)] - e[1]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn partition_of_unity() {
        let ns = gll_nodes(5).unwrap();
        for &(x, y) in &[(0.1, -0.3), (-1.0, 0.5), (0.99, 0.99)] {
            assert!((volume_basis(&ns, x, y).sum() - 1.0).abs() < 1e-14);
        }
    }
}
