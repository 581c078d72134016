//! Mimetic spectral element discretization of the two equivalent 2D
//! curl-curl problems on a single reference element: a Neumann problem for a
//! scalar `F` in primal nodal polynomials, and a Dirichlet problem for a
//! vector `E` in algebraic dual edge polynomials.
//!
//! The discrete solutions satisfy `E^h = curl F^h` and have equal `H(curl)`
//! norms up to round-off.

pub mod basis1d;
pub mod basis2d;
pub mod curlcurl;
pub mod error;
pub mod fields;
pub mod fixtures;
pub mod galerkin;
pub mod operators2d;

pub use basis1d::{gauss_rule, gll_nodes, legendre_eval, BasisEval1D, NodeSet1D, QuadratureRule1D};
pub use curlcurl::{
    BoundaryData, Discretization, FieldValues, GridValues, Reconstruction, Solution, WeakCurlDofs,
};
pub use error::{Error, Result};
pub use fields::{ExpScalarField, ExpVectorField, ScalarField, VectorField};
pub use galerkin::{DualKind, GramSet, MassQuadrature};
pub use operators2d::{build_incidence, build_trace, DofLayout, IncidenceMatrix, Side, TraceMatrix};
