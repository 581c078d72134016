//! One-dimensional Gauss-Lobatto-Legendre partitioning and the nodal/edge
//! polynomial bases built on it.
//!
//! The nodal basis `h_i` interpolates point values at the GLL nodes. The edge
//! basis `e_i`, `i = 1..N`, carries integral values: the integral of `e_i`
//! over the node interval `[ξ_{j-1}, ξ_j]` is `δ_ij`. Differentiating a nodal
//! expansion then only takes differences of coefficients:
//!
//! ```text
//! p'(ξ) = Σ_i p_i h_i'(ξ) = Σ_{i=1..N} (p_i - p_{i-1}) e_i(ξ)
//! ```

use nalgebra::DMatrix;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Legendre polynomial `L_n(x)` and its derivative, by three-term recurrence.
pub fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut p) = (1.0, x);
    let (mut d_prev, mut d) = (0.0, 1.0);
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        let d_next = d_prev + (2.0 * kf + 1.0) * p;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d)
}

/// GLL nodes and weights of degree `N`, with the barycentric weights and the
/// nodal differentiation matrix precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet1D {
    degree: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    bary: Vec<f64>,
    /// `diff[(i, j)] = h_j'(ξ_i)`
    diff: DMatrix<f64>,
}

/// The `N+1` Gauss-Lobatto-Legendre points: `±1` and the roots of `L_N'`.
pub fn gll_nodes(degree: usize) -> Result<NodeSet1D> {
    NodeSet1D::gll(degree)
}

impl NodeSet1D {
    pub fn gll(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(degree));
        }
        let n = degree;
        let nf = n as f64;
        let mut nodes = vec![0.0; n + 1];
        nodes[0] = -1.0;
        nodes[n] = 1.0;

        // Newton on (1 - x²) L_N'(x), whose derivative is -N(N+1) L_N(x).
        // Only the left half is iterated; the right half is mirrored.
        for j in 1..=(n - 1) / 2 {
            let mut x = -(PI * j as f64 / nf).cos();
            for _ in 0..NEWTON_MAX_ITER {
                let (p, dp) = legendre_eval(n, x);
                let step = (1.0 - x * x) * dp / (nf * (nf + 1.0) * p);
                x += step;
                if step.abs() < NEWTON_TOL {
                    break;
                }
            }
            nodes[j] = x;
            nodes[n - j] = -x;
        }
        // even N has ξ = 0 as the middle root (already zero-initialised)

        let weights = nodes
            .iter()
            .map(|&x| {
                let (p, _) = legendre_eval(n, x);
                2.0 / (nf * (nf + 1.0) * p * p)
            })
            .collect();

        let bary: Vec<f64> = (0..=n)
            .map(|j| {
                let prod: f64 = (0..=n)
                    .filter(|&k| k != j)
                    .map(|k| nodes[j] - nodes[k])
                    .product();
                1.0 / prod
            })
            .collect();

        let mut diff = DMatrix::zeros(n + 1, n + 1);
        for i in 0..=n {
            let mut diag = 0.0;
            for j in 0..=n {
                if i != j {
                    let v = bary[j] / bary[i] / (nodes[i] - nodes[j]);
                    diff[(i, j)] = v;
                    diag -= v;
                }
            }
            diff[(i, i)] = diag;
        }

        Ok(Self {
            degree,
            nodes,
            weights,
            bary,
            diff,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodal differentiation matrix, `D[(i, j)] = h_j'(ξ_i)`.
    pub fn differentiation_matrix(&self) -> &DMatrix<f64> {
        &self.diff
    }

    fn node_hit(&self, x: f64) -> Option<usize> {
        self.nodes.iter().position(|&n| n == x)
    }

    /// Lagrange basis values `h_0(x), …, h_N(x)` (barycentric second form).
    pub fn lagrange_eval(&self, x: f64) -> Vec<f64> {
        let n = self.degree;
        if let Some(k) = self.node_hit(x) {
            let mut out = vec![0.0; n + 1];
            out[k] = 1.0;
            return out;
        }
        let mut out: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.bary)
            .map(|(&xj, &bj)| bj / (x - xj))
            .collect();
        let denom: f64 = out.iter().sum();
        for v in &mut out {
            *v /= denom;
        }
        out
    }

    /// Derivatives `h_0'(x), …, h_N'(x)`.
    ///
    /// Each `h_j'` has degree `N - 1`, so it is reproduced exactly by its
    /// nodal interpolant `Σ_i h_j'(ξ_i) h_i(x)`. At a node this returns a
    /// row of the differentiation matrix.
    pub fn lagrange_deriv(&self, x: f64) -> Vec<f64> {
        let n = self.degree;
        if let Some(k) = self.node_hit(x) {
            return self.diff.row(k).iter().copied().collect();
        }
        let h = self.lagrange_eval(x);
        (0..=n)
            .map(|j| (0..=n).map(|i| h[i] * self.diff[(i, j)]).sum())
            .collect()
    }

    /// Edge basis values `e_1(x), …, e_N(x)`, with `e_i = -Σ_{k=0}^{i-1} h_k'`.
    ///
    /// Note the lower summation bound `k = 0`. Starting at `k = 1` would make
    /// `e_1` vanish identically and break the unit-integral property.
    pub fn edge_eval(&self, x: f64) -> Vec<f64> {
        let d = self.lagrange_deriv(x);
        d[..self.degree]
            .iter()
            .scan(0.0, |acc, &dk| {
                *acc -= dk;
                Some(*acc)
            })
            .collect()
    }

    /// Tabulates all three bases at the given points.
    pub fn tabulate(&self, points: &[f64]) -> BasisEval1D {
        let n = self.degree;
        let m = points.len();
        let mut h = DMatrix::zeros(n + 1, m);
        let mut d = DMatrix::zeros(n + 1, m);
        let mut e = DMatrix::zeros(n, m);
        for (c, &x) in points.iter().enumerate() {
            let dv = self.lagrange_deriv(x);
            for (i, v) in self.lagrange_eval(x).into_iter().enumerate() {
                h[(i, c)] = v;
            }
            let mut acc = 0.0;
            for i in 0..=n {
                d[(i, c)] = dv[i];
                if i < n {
                    acc -= dv[i];
                    e[(i, c)] = acc;
                }
            }
        }
        BasisEval1D { h, d, e }
    }
}

/// Basis tables at `M` evaluation points, one column per point.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisEval1D {
    /// `(N+1) × M`, nodal values `h_i`
    pub h: DMatrix<f64>,
    /// `(N+1) × M`, nodal derivatives `h_i'`
    pub d: DMatrix<f64>,
    /// `N × M`, edge values `e_i` (row `i-1` holds `e_i`)
    pub e: DMatrix<f64>,
}

/// Gauss-Legendre points and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `M`-point Gauss-Legendre rule, exact for polynomials of degree `2M - 1`.
pub fn gauss_rule(m: usize) -> Result<QuadratureRule1D> {
    if m == 0 {
        return Err(Error::InvalidQuadratureSize(m));
    }
    let mf = m as f64;
    let mut points = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        // Tricomi's initial guess for the i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = legendre_eval(m, x);
            let step = p / dp;
            x -= step;
            if step.abs() < NEWTON_TOL {
                break;
            }
        }
        if m % 2 == 1 && i == m / 2 {
            x = 0.0;
        }
        let (_, dp) = legendre_eval(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        points[i] = -x;
        points[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    Ok(QuadratureRule1D { points, weights })
}

impl QuadratureRule1D {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Affine image of the rule on `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> QuadratureRule1D {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        QuadratureRule1D {
            points: self.points.iter().map(|&t| mid + half * t).collect(),
            weights: self.weights.iter().map(|&w| half * w).collect(),
        }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_eval(0, 0.3), (1.0, 0.0));
        let (p, d) = legendre_eval(2, 0.0);
        assert_abs_diff_eq!(p, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-15);
        let (p, d) = legendre_eval(3, 1.0);
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d, 6.0, epsilon = 1e-14);
        // L_N'(1) = N(N+1)/2
        for n in 1..15 {
            let (_, d) = legendre_eval(n, 1.0);
            assert_abs_diff_eq!(d, (n * (n + 1)) as f64 / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn gll_low_degrees() {
        assert_eq!(gll_nodes(0), Err(Error::InvalidDegree(0)));

        let ns = gll_nodes(1).unwrap();
        assert_eq!(ns.nodes(), &[-1.0, 1.0]);
        assert_abs_diff_eq!(ns.weights()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ns.weights()[1], 1.0, epsilon = 1e-15);

        let ns = gll_nodes(2).unwrap();
        assert_eq!(ns.nodes(), &[-1.0, 0.0, 1.0]);
        for (w, expect) in ns.weights().iter().zip([1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0]) {
            assert_abs_diff_eq!(*w, expect, epsilon = 1e-15);
        }

        let ns = gll_nodes(3).unwrap();
        let r = 1.0 / 5f64.sqrt();
        assert_abs_diff_eq!(ns.nodes()[1], -r, epsilon = 1e-15);
        assert_abs_diff_eq!(ns.nodes()[2], r, epsilon = 1e-15);
    }

    #[test]
    fn gll_invariants() {
        for n in 1..=30 {
            let ns = gll_nodes(n).unwrap();
            let x = ns.nodes();
            assert_eq!(x[0], -1.0);
            assert_eq!(x[n], 1.0);
            assert!(x.windows(2).all(|w| w[0] < w[1]), "N={n} not increasing");
            for i in 0..=n {
                assert!((x[i] + x[n - i]).abs() <= 1e-14);
            }
            for &xi in &x[1..n] {
                assert!(legendre_eval(n, xi).1.abs() <= 1e-12, "N={n} residual");
            }
            let s: f64 = ns.weights().iter().sum();
            assert_abs_diff_eq!(s, 2.0, epsilon = 1e-13);
            assert!(ns.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn lagrange_examples() {
        let ns = gll_nodes(1).unwrap();
        assert_eq!(ns.lagrange_eval(0.0), vec![0.5, 0.5]);
        for (v, expect) in ns.lagrange_deriv(0.3).iter().zip([-0.5, 0.5]) {
            assert_abs_diff_eq!(*v, expect, epsilon = 1e-15);
        }

        let ns = gll_nodes(2).unwrap();
        let h = ns.lagrange_eval(0.5);
        for (v, expect) in h.iter().zip([-0.125, 0.75, 0.375]) {
            assert_abs_diff_eq!(*v, expect, epsilon = 1e-15);
        }
        let d = ns.lagrange_deriv(0.0);
        for (v, expect) in d.iter().zip([-0.5, 0.0, 0.5]) {
            assert_abs_diff_eq!(*v, expect, epsilon = 1e-15);
        }

        let ns = gll_nodes(6).unwrap();
        for (j, &xj) in ns.nodes().iter().enumerate() {
            let h = ns.lagrange_eval(xj);
            for (i, v) in h.iter().enumerate() {
                assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn derivative_at_node_matches_nearby_limit() {
        let ns = gll_nodes(7).unwrap();
        for &xj in ns.nodes() {
            let at = ns.lagrange_deriv(xj);
            let near = ns.lagrange_deriv(if xj < 0.0 { xj + 1e-9 } else { xj - 1e-9 });
            for (a, b) in at.iter().zip(&near) {
                assert!((a - b).abs() < 1e-6 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn edge_examples() {
        let ns = gll_nodes(1).unwrap();
        for x in [-1.0, -0.3, 0.0, 0.8, 1.0] {
            let e = ns.edge_eval(x);
            assert_eq!(e.len(), 1);
            assert_abs_diff_eq!(e[0], 0.5, epsilon = 1e-15);
        }

        let ns = gll_nodes(2).unwrap();
        let q = gauss_rule(4).unwrap();
        let left = q.mapped(-1.0, 0.0).integrate(|x| ns.edge_eval(x)[0]);
        let right = q.mapped(0.0, 1.0).integrate(|x| ns.edge_eval(x)[0]);
        assert_abs_diff_eq!(left, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(right, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn last_edge_is_last_nodal_derivative() {
        // e_N = -Σ_{k<N} h_k' = h_N' because the h_k' sum to zero
        for n in 1..=9 {
            let ns = gll_nodes(n).unwrap();
            for k in 0..20 {
                let x = -1.0 + 2.0 * ((k as f64 * 0.618_033_988_75).fract());
                let s = ns.edge_eval(x)[n - 1];
                let d = ns.lagrange_deriv(x)[n];
                assert!((s - d).abs() <= 1e-12 * (1.0 + d.abs()));
            }
        }
    }

    #[test]
    fn tabulate_matches_pointwise() {
        let ns = gll_nodes(5).unwrap();
        let pts = [-1.0, -0.7, 0.1, 0.5, 1.0];
        let t = ns.tabulate(&pts);
        for (c, &x) in pts.iter().enumerate() {
            let h = ns.lagrange_eval(x);
            let e = ns.edge_eval(x);
            let colsum_h: f64 = t.h.column(c).sum();
            let colsum_d: f64 = t.d.column(c).sum();
            assert_abs_diff_eq!(colsum_h, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(colsum_d, 0.0, epsilon = 1e-12);
            for (i, &hi) in h.iter().enumerate() {
                assert_eq!(t.h[(i, c)], hi);
            }
            for (i, &ei) in e.iter().enumerate() {
                assert_abs_diff_eq!(t.e[(i, c)], ei, epsilon = 1e-14);
            }
        }
        let at_nodes = ns.tabulate(ns.nodes());
        assert_eq!(at_nodes.h, DMatrix::identity(6, 6));
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_rule(0), Err(Error::InvalidQuadratureSize(0)));
        let q = gauss_rule(1).unwrap();
        assert_eq!(q.points, vec![0.0]);
        assert_abs_diff_eq!(q.weights[0], 2.0, epsilon = 1e-15);

        let q = gauss_rule(2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(q.points[0], -r, epsilon = 1e-15);
        assert_abs_diff_eq!(q.points[1], r, epsilon = 1e-15);
        assert_abs_diff_eq!(q.weights[0], 1.0, epsilon = 1e-15);

        let q = gauss_rule(3).unwrap();
        assert_abs_diff_eq!(q.integrate(|x| x.powi(4)), 0.4, epsilon = 1e-14);
    }

    #[test]
    fn gauss_exactness() {
        for m in 1..=25 {
            let q = gauss_rule(m).unwrap();
            assert!(q.points.windows(2).all(|w| w[0] < w[1]));
            assert_abs_diff_eq!(q.weights.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
            for k in 0..2 * m {
                let exact = if k % 2 == 0 { 2.0 / (k + 1) as f64 } else { 0.0 };
                let got = q.integrate(|x| x.powi(k as i32));
                assert!((got - exact).abs() <= 1e-12, "M={m} k={k}: {got} vs {exact}");
            }
        }
    }
}
