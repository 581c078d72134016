//! The two discrete curl-curl problems on the reference square.
//!
//! * Neumann, primal: nodal unknowns `F` with
//!   `(E¹⁰ᵀ M1 E¹⁰ + M0) F = -Tᵀ Ê`.
//! * Dirichlet, dual: dual edge unknowns `Ẽ` with
//!   `(E¹⁰ M̃⁽²⁾ E¹⁰ᵀ + M̃⁽¹⁾) Ẽ = -E¹⁰ M̃⁽²⁾ Tᵀ Ê`.
//!
//! Both share the boundary dofs `Ê`. The solutions satisfy
//! `Ẽ = M1 E¹⁰ F` exactly in exact arithmetic, which is `E^h = curl F^h`
//! pointwise, and the two `H(curl)` norms coincide.

use nalgebra::{DMatrix, DVector};

use crate::basis1d::{gauss_rule, gll_nodes, NodeSet1D};
use crate::basis2d;
use crate::error::{Error, Result};
use crate::fields::{ScalarField, VectorField};
use crate::galerkin::{DualKind, GramSet, MassQuadrature, SpdFactor};
use crate::operators2d::{
    boundary_arclength_map, build_incidence, build_trace, DofLayout, IncidenceMatrix, Side,
    TraceMatrix,
};

/// Extra Gauss points (beyond `N`) for integrating non-polynomial data.
pub const DEFAULT_QUADRATURE_BOOST: usize = 15;

/// Dofs of the weak curl of a dual field, `E¹⁰ᵀ Ẽ + Tᵀ Ê`, expanded in `Ψ̃⁽²⁾`.
pub type WeakCurlDofs = DVector<f64>;

/// Boundary dofs `Ê_k = ∮ ψ_k (n × E) ds`, in trace-matrix row order.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub dofs: DVector<f64>,
}

impl BoundaryData {
    pub fn zeros(degree: usize) -> Self {
        Self {
            dofs: DVector::zeros(4 * degree),
        }
    }

    pub fn len(&self) -> usize {
        self.dofs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dofs.is_empty()
    }

    /// Projects a trace function `ê(side, point)` onto the loop nodal basis,
    /// integrating each side with `N + boost` Gauss points.
    pub fn from_trace(ns: &NodeSet1D, boost: usize, trace: impl Fn(Side, [f64; 2]) -> f64) -> Self {
        let n = ns.degree();
        let rule = gauss_rule(n + boost.max(1)).expect("positive size");
        let table = ns.tabulate(&rule.points);

        // side integrals ∫ h_a(t) ê(t) dt, a = 0..N, per side
        let side_moments: Vec<(Side, Vec<f64>)> = Side::ALL
            .iter()
            .map(|&side| {
                let vals: Vec<f64> = rule
                    .points
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&t, &w)| w * trace(side, side.point(t)))
                    .collect();
                let moments = (0..=n)
                    .map(|a| (0..vals.len()).map(|q| table.h[(a, q)] * vals[q]).sum())
                    .collect();
                (side, moments)
            })
            .collect();

        let dofs = boundary_arclength_map(ns)
            .iter()
            .map(|d| {
                d.support
                    .iter()
                    .map(|&(s, a)| {
                        let (_, m) = side_moments.iter().find(|(side, _)| *side == s).unwrap();
                        m[a]
                    })
                    .sum()
            })
            .collect::<Vec<f64>>();
        Self {
            dofs: DVector::from_vec(dofs),
        }
    }

    /// Dirichlet data `n × E` of a vector field.
    pub fn from_vector_field(ns: &NodeSet1D, boost: usize, field: &dyn VectorField) -> Self {
        Self::from_trace(ns, boost, |side, [x, y]| {
            field.tangential(x, y, side.outward_normal())
        })
    }

    /// Neumann data `n × curl F` of a scalar field.
    pub fn from_scalar_curl(ns: &NodeSet1D, boost: usize, field: &dyn ScalarField) -> Self {
        Self::from_trace(ns, boost, |side, [x, y]| {
            let [cx, cy] = field.curl(x, y);
            let [nx, ny] = side.outward_normal();
            nx * cy - ny * cx
        })
    }
}

/// Solutions of both problems for one set of boundary data.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub degree: usize,
    /// primal nodal dofs `F`, length `(N+1)²`
    pub neumann: DVector<f64>,
    /// dual edge dofs `Ẽ`, length `2N(N+1)`
    pub dirichlet: DVector<f64>,
    pub boundary: BoundaryData,
}

/// Which expansion a dof vector is reconstructed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reconstruction {
    /// `Ψ⁽⁰⁾ F`
    PrimalScalar,
    /// `Ψ⁽¹⁾ E¹⁰ F`
    PrimalCurl,
    /// `Ψ̃⁽¹⁾ Ẽ`
    DualVector,
    /// `Ψ̃⁽²⁾ w` for weak-curl dofs `w`
    DualWeakCurl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldValues {
    Scalar(Vec<f64>),
    Vector(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridValues {
    Scalar(DMatrix<f64>),
    /// `(ξ-component, η-component)`
    Vector(DMatrix<f64>, DMatrix<f64>),
}

/// All operators for one polynomial degree on the reference element.
#[derive(Debug, Clone)]
pub struct Discretization {
    nodes: NodeSet1D,
    layout: DofLayout,
    incidence: IncidenceMatrix,
    trace: TraceMatrix,
    grams: GramSet,
    incidence_dense: DMatrix<f64>,
    neumann_factor: SpdFactor,
    dirichlet_factor: SpdFactor,
}

impl Discretization {
    /// Degree-`N` discretization with GLL mass matrices.
    pub fn new(degree: usize) -> Result<Self> {
        Self::with_quadrature(degree, MassQuadrature::default())
    }

    pub fn with_quadrature(degree: usize, quadrature: MassQuadrature) -> Result<Self> {
        let nodes = gll_nodes(degree)?;
        let incidence = build_incidence(degree)?;
        let trace = build_trace(degree)?;
        let grams = GramSet::new(&nodes, quadrature)?;
        let incidence_dense = incidence.to_f64();
        let neumann = neumann_operator(&incidence_dense, &grams);
        let dirichlet = dirichlet_operator(&incidence_dense, &grams)?;
        Ok(Self {
            layout: incidence.layout(),
            neumann_factor: SpdFactor::new(neumann, "Neumann system")?,
            dirichlet_factor: SpdFactor::new(dirichlet, "Dirichlet system")?,
            incidence_dense,
            nodes,
            incidence,
            trace,
            grams,
        })
    }

    pub fn degree(&self) -> usize {
        self.layout.degree()
    }

    pub fn nodes(&self) -> &NodeSet1D {
        &self.nodes
    }

    pub fn layout(&self) -> DofLayout {
        self.layout
    }

    pub fn incidence(&self) -> &IncidenceMatrix {
        &self.incidence
    }

    pub fn trace(&self) -> &TraceMatrix {
        &self.trace
    }

    pub fn grams(&self) -> &GramSet {
        &self.grams
    }

    pub fn project_boundary_data(&self, field: &dyn VectorField) -> BoundaryData {
        BoundaryData::from_vector_field(&self.nodes, DEFAULT_QUADRATURE_BOOST, field)
    }

    fn check_boundary(&self, bd: &BoundaryData) -> Result<()> {
        check_len("boundary data", self.layout.n_boundary(), bd.len())
    }

    /// `E¹⁰ᵀ M1 E¹⁰ + M0`
    pub fn neumann_matrix(&self) -> DMatrix<f64> {
        neumann_operator(&self.incidence_dense, &self.grams)
    }

    pub fn neumann_rhs(&self, bd: &BoundaryData) -> Result<DVector<f64>> {
        self.check_boundary(bd)?;
        Ok(-self.trace.apply_transpose(&bd.dofs)?)
    }

    /// `E¹⁰ M̃⁽²⁾ E¹⁰ᵀ + M̃⁽¹⁾`
    pub fn dirichlet_matrix(&self) -> Result<DMatrix<f64>> {
        dirichlet_operator(&self.incidence_dense, &self.grams)
    }

    /// `-E¹⁰ M̃⁽²⁾ Tᵀ Ê`
    pub fn dirichlet_rhs(&self, bd: &BoundaryData) -> Result<DVector<f64>> {
        self.check_boundary(bd)?;
        let tb = self.trace.apply_transpose(&bd.dofs)?;
        let m2_tb = self.grams.apply_dual_volume(&tb)?;
        Ok(-self.incidence.apply(&m2_tb)?)
    }

    pub fn solve_neumann(&self, bd: &BoundaryData) -> Result<DVector<f64>> {
        self.neumann_factor.solve(&self.neumann_rhs(bd)?)
    }

    pub fn solve_dirichlet(&self, bd: &BoundaryData) -> Result<DVector<f64>> {
        self.dirichlet_factor.solve(&self.dirichlet_rhs(bd)?)
    }

    pub fn solve(&self, bd: &BoundaryData) -> Result<Solution> {
        Ok(Solution {
            degree: self.degree(),
            neumann: self.solve_neumann(bd)?,
            dirichlet: self.solve_dirichlet(bd)?,
            boundary: bd.clone(),
        })
    }

    /// `M1 E¹⁰ F`, the dual edge dofs of `curl F^h`.
    pub fn dual_curl_of(&self, f: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(&self.grams.m1 * self.incidence.apply(f)?)
    }

    /// `‖Ẽ - M1 E¹⁰ F‖ / ‖Ẽ‖`; the absolute difference when `Ẽ = 0`.
    pub fn equivalence_residual(&self, sol: &Solution) -> Result<f64> {
        check_len("dual edge dofs", self.layout.n_edges(), sol.dirichlet.len())?;
        let diff = (&sol.dirichlet - self.dual_curl_of(&sol.neumann)?).norm();
        let scale = sol.dirichlet.norm();
        Ok(if scale > 0.0 { diff / scale } else { diff })
    }

    /// `E¹⁰ᵀ Ẽ + Tᵀ Ê`
    pub fn weak_curl(&self, e_dual: &DVector<f64>, bd: &BoundaryData) -> Result<WeakCurlDofs> {
        self.check_boundary(bd)?;
        Ok(self.incidence.apply_transpose(e_dual)? + self.trace.apply_transpose(&bd.dofs)?)
    }

    /// `sqrt(Fᵀ M0 F + Fᵀ E¹⁰ᵀ M1 E¹⁰ F)`
    pub fn norm_f(&self, f: &DVector<f64>) -> Result<f64> {
        check_len("nodal dofs", self.layout.n_nodes(), f.len())?;
        let c = self.incidence.apply(f)?;
        let sq = f.dot(&(&self.grams.m0 * f)) + c.dot(&(&self.grams.m1 * &c));
        Ok(sq.max(0.0).sqrt())
    }

    /// `sqrt(wᵀ M̃⁽²⁾ w + Ẽᵀ M̃⁽¹⁾ Ẽ)` with `w` the weak-curl dofs.
    pub fn norm_e(&self, e_dual: &DVector<f64>, bd: &BoundaryData) -> Result<f64> {
        let w = self.weak_curl(e_dual, bd)?;
        let sq = w.dot(&self.grams.apply_dual_volume(&w)?)
            + e_dual.dot(&self.grams.apply_dual_edge(e_dual)?);
        Ok(sq.max(0.0).sqrt())
    }

    /// Coefficients in the primal basis (`Ψ⁽⁰⁾` or `Ψ⁽¹⁾`) equivalent to `dofs`
    /// in the requested expansion.
    fn primal_coefficients(&self, kind: Reconstruction, dofs: &DVector<f64>) -> Result<DVector<f64>> {
        match kind {
            Reconstruction::PrimalScalar => {
                check_len("nodal dofs", self.layout.n_nodes(), dofs.len())?;
                Ok(dofs.clone())
            }
            Reconstruction::PrimalCurl => self.incidence.apply(dofs),
            Reconstruction::DualVector => self.grams.apply_dual_edge(dofs),
            Reconstruction::DualWeakCurl => self.grams.apply_dual_volume(dofs),
        }
    }

    fn is_scalar(kind: Reconstruction) -> bool {
        matches!(kind, Reconstruction::PrimalScalar | Reconstruction::DualWeakCurl)
    }

    /// Pointwise values of a dof vector in the given expansion.
    pub fn reconstruct(
        &self,
        kind: Reconstruction,
        dofs: &DVector<f64>,
        points: &[[f64; 2]],
    ) -> Result<FieldValues> {
        let c = self.primal_coefficients(kind, dofs)?;
        if Self::is_scalar(kind) {
            Ok(FieldValues::Scalar(
                points
                    .iter()
                    .map(|&[x, y]| basis2d::volume_basis(&self.nodes, x, y).dot(&c))
                    .collect(),
            ))
        } else {
            Ok(FieldValues::Vector(
                points
                    .iter()
                    .map(|&[x, y]| {
                        let v = basis2d::edge_basis(&self.nodes, x, y) * &c;
                        [v[0], v[1]]
                    })
                    .collect(),
            ))
        }
    }

    /// Values on the tensor grid `xs × ys`, indexed `[(a, b)]` for `(xs[a], ys[b])`.
    pub fn reconstruct_grid(
        &self,
        kind: Reconstruction,
        dofs: &DVector<f64>,
        xs: &[f64],
        ys: &[f64],
    ) -> Result<GridValues> {
        let c = self.primal_coefficients(kind, dofs)?;
        if Self::is_scalar(kind) {
            Ok(GridValues::Scalar(basis2d::eval_volume_grid(&self.nodes, &c, xs, ys)))
        } else {
            let (gx, gy) = basis2d::eval_edge_grid(&self.nodes, &c, xs, ys);
            Ok(GridValues::Vector(gx, gy))
        }
    }

    /// `(‖F_ex - F^h‖, ‖E_ex - E^h‖)` in the respective `H(curl)` norms,
    /// integrated with `N + boost` Gauss points per direction. The curl of
    /// `E^h` is its weak curl.
    pub fn error_norms(
        &self,
        sol: &Solution,
        exact_f: &dyn ScalarField,
        exact_e: &dyn VectorField,
        boost: usize,
    ) -> Result<(f64, f64)> {
        let rule = gauss_rule(self.degree() + boost.max(1))?;
        let pts = &rule.points;
        let w = &rule.weights;

        let scalar = |kind, dofs: &DVector<f64>| -> Result<DMatrix<f64>> {
            match self.reconstruct_grid(kind, dofs, pts, pts)? {
                GridValues::Scalar(g) => Ok(g),
                GridValues::Vector(..) => unreachable!(),
            }
        };
        let vector = |kind, dofs: &DVector<f64>| -> Result<(DMatrix<f64>, DMatrix<f64>)> {
            match self.reconstruct_grid(kind, dofs, pts, pts)? {
                GridValues::Vector(gx, gy) => Ok((gx, gy)),
                GridValues::Scalar(_) => unreachable!(),
            }
        };

        let f_h = scalar(Reconstruction::PrimalScalar, &sol.neumann)?;
        let (cf_x, cf_y) = vector(Reconstruction::PrimalCurl, &sol.neumann)?;
        let (e_x, e_y) = vector(Reconstruction::DualVector, &sol.dirichlet)?;
        let wc = self.weak_curl(&sol.dirichlet, &sol.boundary)?;
        let ce_h = scalar(Reconstruction::DualWeakCurl, &wc)?;

        let mut err_f = 0.0;
        let mut err_e = 0.0;
        for (a, &x) in pts.iter().enumerate() {
            for (b, &y) in pts.iter().enumerate() {
                let wq = w[a] * w[b];
                let [cx, cy] = exact_f.curl(x, y);
                err_f += wq
                    * ((f_h[(a, b)] - exact_f.value(x, y)).powi(2)
                        + (cf_x[(a, b)] - cx).powi(2)
                        + (cf_y[(a, b)] - cy).powi(2));
                let [ex, ey] = exact_e.value(x, y);
                err_e += wq
                    * ((e_x[(a, b)] - ex).powi(2)
                        + (e_y[(a, b)] - ey).powi(2)
                        + (ce_h[(a, b)] - exact_e.curl(x, y)).powi(2));
            }
        }
        Ok((err_f.sqrt(), err_e.sqrt()))
    }
}

fn neumann_operator(e: &DMatrix<f64>, grams: &GramSet) -> DMatrix<f64> {
    e.transpose() * &grams.m1 * e + &grams.m0
}

fn dirichlet_operator(e: &DMatrix<f64>, grams: &GramSet) -> Result<DMatrix<f64>> {
    let m2_et = grams.apply_dual_volume_matrix(&e.transpose())?;
    let a = e * m2_et + grams.dual_mass(DualKind::Edge1);
    Ok((&a + a.transpose()) * 0.5)
}

fn check_len(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            what,
            expected,
            got,
        })
    }
}
