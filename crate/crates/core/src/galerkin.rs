//! Gram (mass) matrices of the primal bases, their inverses acting as the
//! dual mass matrices, and dual basis evaluation.
//!
//! The dual bases are `Ψ̃⁽²⁾ = Ψ⁽⁰⁾ M0⁻¹` and `Ψ̃⁽¹⁾ = Ψ⁽¹⁾ M1⁻¹`, so that
//! `∫ Ψ̃ᵀ Ψ dΩ = I` under the inner product used to build the masses.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::basis1d::{gauss_rule, NodeSet1D, QuadratureRule1D};
use crate::basis2d;
use crate::error::{Error, Result};
use crate::operators2d::{boundary_arclength_map, DofLayout};

/// Quadrature used to form the Gram matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MassQuadrature {
    /// `N+1` GLL points, collocated with the nodes. Inexact for the nodal
    /// products (degree `2N`), and makes the nodal Grams diagonal. This is
    /// the standard spectral-element inner product.
    #[default]
    Lobatto,
    /// `N+1` Gauss-Legendre points: exact for every integrand involved.
    Gauss,
}

impl MassQuadrature {
    pub fn rule(self, ns: &NodeSet1D) -> QuadratureRule1D {
        match self {
            MassQuadrature::Lobatto => QuadratureRule1D {
                points: ns.nodes().to_vec(),
                weights: ns.weights().to_vec(),
            },
            MassQuadrature::Gauss => gauss_rule(ns.degree() + 1).expect("N+1 >= 2"),
        }
    }
}

/// One-dimensional Grams: `nodal[(i,k)] = ∫ h_i h_k`, `edge[(i-1,k-1)] = ∫ e_i e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram1D {
    pub nodal: DMatrix<f64>,
    pub edge: DMatrix<f64>,
}

pub fn gram_1d(ns: &NodeSet1D, quad: MassQuadrature) -> Gram1D {
    let rule = quad.rule(ns);
    let t = ns.tabulate(&rule.points);
    let w = DMatrix::from_diagonal(&DVector::from_column_slice(&rule.weights));
    Gram1D {
        nodal: &t.h * &w * t.h.transpose(),
        edge: &t.e * &w * t.e.transpose(),
    }
}

/// `M0[(i,j),(k,l)] = (∫h_i h_k dξ)(∫h_j h_l dη)`
pub fn assemble_mass0(ns: &NodeSet1D, quad: MassQuadrature) -> DMatrix<f64> {
    let g = gram_1d(ns, quad).nodal;
    // node (i, j) = j(N+1) + i, so the η factor is the outer Kronecker factor
    g.kronecker(&g)
}

/// Block-diagonal `M1`: ξ-block `(∫h_i h_k)(∫e_j e_l)`, η-block `(∫e_i e_k)(∫h_j h_l)`.
pub fn assemble_mass1(ns: &NodeSet1D, quad: MassQuadrature) -> DMatrix<f64> {
    let g = gram_1d(ns, quad);
    let layout = DofLayout::new(ns.degree()).expect("degree >= 1");
    let half = layout.n_edges_per_component();
    let mut m1 = DMatrix::zeros(2 * half, 2 * half);
    m1.view_mut((0, 0), (half, half))
        .copy_from(&g.edge.kronecker(&g.nodal));
    m1.view_mut((half, half), (half, half))
        .copy_from(&g.nodal.kronecker(&g.edge));
    m1
}

/// `B0`: Gram of the `4N` boundary-loop nodal functions under arclength.
/// Corner functions live on two sides and collect both contributions.
pub fn assemble_boundary_mass(ns: &NodeSet1D, quad: MassQuadrature) -> DMatrix<f64> {
    let g = gram_1d(ns, quad).nodal;
    let map = boundary_arclength_map(ns);
    let nb = map.len();
    let mut b0 = DMatrix::zeros(nb, nb);
    for (p, dp) in map.iter().enumerate() {
        for (q, dq) in map.iter().enumerate() {
            let mut acc = 0.0;
            for &(sp, ap) in &dp.support {
                for &(sq, aq) in &dq.support {
                    if sp == sq {
                        // every side has length 2 and unit Jacobian in its coordinate
                        acc += g[(ap, aq)];
                    }
                }
            }
            b0[(p, q)] = acc;
        }
    }
    b0
}

/// Cholesky factorization of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct SpdFactor {
    chol: Cholesky<f64, Dyn>,
}

impl SpdFactor {
    pub fn new(a: DMatrix<f64>, what: &'static str) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                what,
                expected: a.nrows(),
                got: a.ncols(),
            });
        }
        Cholesky::new(a)
            .map(|chol| Self { chol })
            .ok_or(Error::NotPositiveDefinite(what))
    }

    pub fn dim(&self) -> usize {
        self.chol.l_dirty().nrows()
    }

    pub fn solve(&self, b: &DVector<f64>) -> Result<DVector<f64>> {
        if b.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "right-hand side",
                expected: self.dim(),
                got: b.len(),
            });
        }
        Ok(self.chol.solve(b))
    }

    pub fn solve_matrix(&self, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if b.nrows() != self.dim() {
            return Err(Error::DimensionMismatch {
                what: "right-hand side",
                expected: self.dim(),
                got: b.nrows(),
            });
        }
        Ok(self.chol.solve(b))
    }

    pub fn inverse(&self) -> DMatrix<f64> {
        let inv = self.chol.inverse();
        // symmetrize round-off
        (&inv + inv.transpose()) * 0.5
    }
}

/// Solves `A x = b` for symmetric positive definite `A`.
pub fn spd_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    SpdFactor::new(a.clone(), "system matrix")?.solve(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualKind {
    /// `M̃⁽²⁾ = M0⁻¹`
    Volume2,
    /// `M̃⁽¹⁾ = M1⁻¹`
    Edge1,
}

/// Primal masses with factorizations for the dual masses.
#[derive(Debug, Clone)]
pub struct GramSet {
    quadrature: MassQuadrature,
    pub m0: DMatrix<f64>,
    pub m1: DMatrix<f64>,
    pub b0: DMatrix<f64>,
    m0_factor: SpdFactor,
    m1_factor: SpdFactor,
}

impl GramSet {
    pub fn new(ns: &NodeSet1D, quadrature: MassQuadrature) -> Result<Self> {
        let m0 = assemble_mass0(ns, quadrature);
        let m1 = assemble_mass1(ns, quadrature);
        let b0 = assemble_boundary_mass(ns, quadrature);
        let m0_factor = SpdFactor::new(m0.clone(), "M0")?;
        let m1_factor = SpdFactor::new(m1.clone(), "M1")?;
        // B0 is not inverted anywhere, but its definiteness is part of the contract
        SpdFactor::new(b0.clone(), "B0")?;
        Ok(Self {
            quadrature,
            m0,
            m1,
            b0,
            m0_factor,
            m1_factor,
        })
    }

    pub fn quadrature(&self) -> MassQuadrature {
        self.quadrature
    }

    /// Explicit dual mass matrix.
    pub fn dual_mass(&self, which: DualKind) -> DMatrix<f64> {
        match which {
            DualKind::Volume2 => self.m0_factor.inverse(),
            DualKind::Edge1 => self.m1_factor.inverse(),
        }
    }

    /// `M̃⁽²⁾ v`
    pub fn apply_dual_volume(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        self.m0_factor.solve(v)
    }

    /// `M̃⁽²⁾ B`
    pub fn apply_dual_volume_matrix(&self, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.m0_factor.solve_matrix(b)
    }

    /// `M̃⁽¹⁾ v`
    pub fn apply_dual_edge(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        self.m1_factor.solve(v)
    }

    /// 1-norm condition estimate `‖M‖₁ ‖M⁻¹‖₁` of a primal mass matrix.
    pub fn condition_estimate(&self, which: DualKind) -> f64 {
        let norm1 = |m: &DMatrix<f64>| {
            m.column_iter()
                .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
                .fold(0.0, f64::max)
        };
        let primal = match which {
            DualKind::Volume2 => &self.m0,
            DualKind::Edge1 => &self.m1,
        };
        norm1(primal) * norm1(&self.dual_mass(which))
    }
}

/// Dual basis values at a list of points, one column per point.
#[derive(Debug, Clone, PartialEq)]
pub struct DualBasisEval {
    /// `(N+1)² × P`, `Ψ̃⁽²⁾`
    pub volume: DMatrix<f64>,
    /// `2N(N+1) × P`, ξ-component of `Ψ̃⁽¹⁾`
    pub edge_xi: DMatrix<f64>,
    /// `2N(N+1) × P`, η-component of `Ψ̃⁽¹⁾`
    pub edge_eta: DMatrix<f64>,
}

pub fn dual_basis_eval(ns: &NodeSet1D, grams: &GramSet, points: &[[f64; 2]]) -> Result<DualBasisEval> {
    let layout = DofLayout::new(ns.degree())?;
    let np = points.len();
    let mut vol = DMatrix::zeros(layout.n_nodes(), np);
    let mut ex = DMatrix::zeros(layout.n_edges(), np);
    let mut ey = DMatrix::zeros(layout.n_edges(), np);
    for (c, &[x, y]) in points.iter().enumerate() {
        vol.set_column(c, &basis2d::volume_basis(ns, x, y));
        let e = basis2d::edge_basis(ns, x, y);
        ex.set_column(c, &e.row(0).transpose());
        ey.set_column(c, &e.row(1).transpose());
    }
    // the masses are symmetric, so (Ψ M⁻¹)ᵀ = M⁻¹ Ψᵀ
    Ok(DualBasisEval {
        volume: grams.apply_dual_volume_matrix(&vol)?,
        edge_xi: grams.m1_factor.solve_matrix(&ex)?,
        edge_eta: grams.m1_factor.solve_matrix(&ey)?,
    })
}
