use curlcurl_core::basis2d::{edge_basis, volume_basis};
use curlcurl_core::galerkin::{
    assemble_mass0, assemble_mass1, dual_basis_eval, spd_solve, GramSet, MassQuadrature,
};
use curlcurl_core::{gauss_rule, gll_nodes, NodeSet1D, QuadratureRule1D};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn tensor_points(rule: &QuadratureRule1D) -> (Vec<[f64; 2]>, Vec<f64>) {
    let mut pts = Vec::new();
    let mut w = Vec::new();
    for (&y, &wy) in rule.points.iter().zip(&rule.weights) {
        for (&x, &wx) in rule.points.iter().zip(&rule.weights) {
            pts.push([x, y]);
            w.push(wx * wy);
        }
    }
    (pts, w)
}

fn lobatto_rule(ns: &NodeSet1D) -> QuadratureRule1D {
    QuadratureRule1D {
        points: ns.nodes().to_vec(),
        weights: ns.weights().to_vec(),
    }
}

/// Σ_q w_q a(q) b(q)ᵀ with one column of `a`, `b` per point.
fn weighted_outer(a: &DMatrix<f64>, b: &DMatrix<f64>, w: &[f64]) -> DMatrix<f64> {
    let wd = DMatrix::from_diagonal(&DVector::from_column_slice(w));
    a * wd * b.transpose()
}

#[test]
fn tensor_mass_matches_direct_2d_quadrature() {
    for n in 1..=6 {
        let ns = gll_nodes(n).unwrap();
        for (quad, rule) in [
            (MassQuadrature::Gauss, gauss_rule(n + 1).unwrap()),
            (MassQuadrature::Lobatto, lobatto_rule(&ns)),
        ] {
            let (pts, w) = tensor_points(&rule);
            let np = (n + 1) * (n + 1);
            let mut direct = DMatrix::zeros(np, np);
            let mut direct1 = DMatrix::zeros(2 * n * (n + 1), 2 * n * (n + 1));
            for (&[x, y], &wq) in pts.iter().zip(&w) {
                let v = volume_basis(&ns, x, y);
                direct += &v * v.transpose() * wq;
                let e = edge_basis(&ns, x, y);
                direct1 += e.transpose() * &e * wq;
            }
            let tensor = assemble_mass0(&ns, quad);
            let diff = (&tensor - &direct).abs().max();
            assert!(diff <= 1e-13, "N={n} {quad:?}: {diff}");
            let diff1 = (assemble_mass1(&ns, quad) - &direct1).abs().max();
            assert!(diff1 <= 1e-13, "N={n} {quad:?} M1: {diff1}");
        }
    }
}

#[test]
fn n1_exact_masses_match_hand_values() {
    let ns = gll_nodes(1).unwrap();
    let m0 = assemble_mass0(&ns, MassQuadrature::Gauss);
    let g = [[2.0 / 3.0, 1.0 / 3.0], [1.0 / 3.0, 2.0 / 3.0]];
    for r in 0..4 {
        for c in 0..4 {
            let expect = g[r % 2][c % 2] * g[r / 2][c / 2];
            assert!((m0[(r, c)] - expect).abs() < 1e-15);
        }
    }
}

#[test]
fn dual_bases_are_biorthogonal() {
    for n in 1..=8 {
        let ns = gll_nodes(n).unwrap();
        // exact masses paired with an exact rule, GLL masses with the GLL rule
        for (quad, rule) in [
            (MassQuadrature::Gauss, gauss_rule(n + 2).unwrap()),
            (MassQuadrature::Lobatto, lobatto_rule(&ns)),
        ] {
            let grams = GramSet::new(&ns, quad).unwrap();
            let (pts, w) = tensor_points(&rule);
            let dual = dual_basis_eval(&ns, &grams, &pts).unwrap();

            let np = pts.len();
            let mut prim_vol = DMatrix::zeros((n + 1) * (n + 1), np);
            let mut prim_x = DMatrix::zeros(2 * n * (n + 1), np);
            let mut prim_y = DMatrix::zeros(2 * n * (n + 1), np);
            for (c, &[x, y]) in pts.iter().enumerate() {
                prim_vol.set_column(c, &volume_basis(&ns, x, y));
                let e = edge_basis(&ns, x, y);
                prim_x.set_column(c, &e.row(0).transpose());
                prim_y.set_column(c, &e.row(1).transpose());
            }

            let vol = weighted_outer(&dual.volume, &prim_vol, &w);
            let id0 = DMatrix::<f64>::identity(vol.nrows(), vol.ncols());
            let err0 = (vol - id0).abs().max();
            assert!(err0 <= 1e-12, "N={n} {quad:?} volume: {err0}");

            let edge = weighted_outer(&dual.edge_xi, &prim_x, &w)
                + weighted_outer(&dual.edge_eta, &prim_y, &w);
            let id1 = DMatrix::<f64>::identity(edge.nrows(), edge.ncols());
            let err1 = (edge - id1).abs().max();
            assert!(err1 <= 1e-12, "N={n} {quad:?} edge: {err1}");
        }
    }
}

proptest! {
    #[test]
    fn spd_solve_small_residual(
        entries in prop::collection::vec(-1.0f64..1.0, 100),
        rhs in prop::collection::vec(-1.0f64..1.0, 10),
    ) {
        let g = DMatrix::from_column_slice(10, 10, &entries);
        let a = &g * g.transpose() + DMatrix::<f64>::identity(10, 10);
        let b = DVector::from_vec(rhs);
        prop_assume!(b.norm() > 1e-3);
        let x = spd_solve(&a, &b).unwrap();
        prop_assert!((&a * x - &b).norm() / b.norm() <= 1e-12);
    }
}
