//! Degree-of-freedom layout on the reference square, the incidence matrix
//! `E¹⁰` (nodal values to edge values of the curl) and the boundary trace
//! matrix `T`.
//!
//! Both matrices are topological: they depend on `N` only and store small
//! integers, never floating point.

use nalgebra::{DMatrix, DVector};

use crate::basis1d::NodeSet1D;
use crate::error::{Error, Result};

/// Index bookkeeping for nodes, edges and boundary dofs at degree `N`.
///
/// * node `(i, j)` ↦ `j·(N+1) + i` (ξ-index fastest)
/// * ξ-component edge `(i, j)`, `i = 0..N`, `j = 1..N` ↦ `(j-1)·(N+1) + i`
/// * η-component edge `(i, j)`, `i = 1..N`, `j = 0..N` ↦ `N(N+1) + j·N + (i-1)`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofLayout {
    degree: usize,
}

impl DofLayout {
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(degree));
        }
        Ok(Self { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_nodes(&self) -> usize {
        (self.degree + 1) * (self.degree + 1)
    }

    pub fn n_edges(&self) -> usize {
        2 * self.degree * (self.degree + 1)
    }

    /// Size of one edge-component block, `N(N+1)`.
    pub fn n_edges_per_component(&self) -> usize {
        self.degree * (self.degree + 1)
    }

    pub fn n_boundary(&self) -> usize {
        4 * self.degree
    }

    pub fn node(&self, i: usize, j: usize) -> usize {
        j * (self.degree + 1) + i
    }

    pub fn xi_edge(&self, i: usize, j: usize) -> usize {
        debug_assert!(j >= 1);
        (j - 1) * (self.degree + 1) + i
    }

    pub fn eta_edge(&self, i: usize, j: usize) -> usize {
        debug_assert!(i >= 1);
        self.n_edges_per_component() + j * self.degree + (i - 1)
    }
}

/// Discrete curl `E¹⁰`: one `+1` and one `-1` per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    layout: DofLayout,
    /// `(column of +1, column of -1)` per edge row
    rows: Vec<(usize, usize)>,
}

pub fn build_incidence(degree: usize) -> Result<IncidenceMatrix> {
    let layout = DofLayout::new(degree)?;
    let n = degree;
    let mut rows = vec![(0, 0); layout.n_edges()];
    // curl F = (∂F/∂η, -∂F/∂ξ)
    for j in 1..=n {
        for i in 0..=n {
            rows[layout.xi_edge(i, j)] = (layout.node(i, j), layout.node(i, j - 1));
        }
    }
    for j in 0..=n {
        for i in 1..=n {
            rows[layout.eta_edge(i, j)] = (layout.node(i - 1, j), layout.node(i, j));
        }
    }
    Ok(IncidenceMatrix { layout, rows })
}

impl IncidenceMatrix {
    pub fn layout(&self) -> DofLayout {
        self.layout
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.layout.n_nodes()
    }

    /// `(column of +1, column of -1)` for each row.
    pub fn row_pairs(&self) -> &[(usize, usize)] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        let (p, m) = self.rows[row];
        if col == p {
            1
        } else if col == m {
            -1
        } else {
            0
        }
    }

    pub fn to_dense(&self) -> DMatrix<i8> {
        DMatrix::from_fn(self.nrows(), self.ncols(), |r, c| self.entry(r, c))
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.to_dense().map(f64::from)
    }

    /// `E¹⁰ x`
    pub fn apply(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        check_len("incidence input", self.ncols(), x.len())?;
        Ok(DVector::from_iterator(
            self.nrows(),
            self.rows.iter().map(|&(p, m)| x[p] - x[m]),
        ))
    }

    /// `(E¹⁰)ᵀ y`
    pub fn apply_transpose(&self, y: &DVector<f64>) -> Result<DVector<f64>> {
        check_len("incidence-transpose input", self.nrows(), y.len())?;
        let mut out = DVector::zeros(self.ncols());
        for (&(p, m), &v) in self.rows.iter().zip(y.iter()) {
            out[p] += v;
            out[m] -= v;
        }
        Ok(out)
    }
}

/// Restriction of nodal dofs to the `4N` boundary-loop dofs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMatrix {
    layout: DofLayout,
    /// selected node index per row
    columns: Vec<usize>,
}

/// Boundary nodes `(i, j)` in loop order: counter-clockwise from `(0, 0)`.
fn boundary_loop(n: usize) -> Vec<(usize, usize)> {
    let south = (0..=n).map(|i| (i, 0));
    let east = (1..=n).map(|j| (n, j));
    let north = (0..n).rev().map(|i| (i, n));
    let west = (1..n).rev().map(|j| (0, j));
    south.chain(east).chain(north).chain(west).collect()
}

pub fn build_trace(degree: usize) -> Result<TraceMatrix> {
    let layout = DofLayout::new(degree)?;
    let columns = boundary_loop(degree)
        .into_iter()
        .map(|(i, j)| layout.node(i, j))
        .collect();
    Ok(TraceMatrix { layout, columns })
}

impl TraceMatrix {
    pub fn layout(&self) -> DofLayout {
        self.layout
    }

    pub fn nrows(&self) -> usize {
        self.columns.len()
    }

    pub fn ncols(&self) -> usize {
        self.layout.n_nodes()
    }

    /// Node index selected by each row.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        u8::from(self.columns[row] == col)
    }

    pub fn to_dense(&self) -> DMatrix<u8> {
        DMatrix::from_fn(self.nrows(), self.ncols(), |r, c| self.entry(r, c))
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.to_dense().map(f64::from)
    }

    /// `T x`
    pub fn apply(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        check_len("trace input", self.ncols(), x.len())?;
        Ok(DVector::from_iterator(
            self.nrows(),
            self.columns.iter().map(|&c| x[c]),
        ))
    }

    /// `Tᵀ y`
    pub fn apply_transpose(&self, y: &DVector<f64>) -> Result<DVector<f64>> {
        check_len("trace-transpose input", self.nrows(), y.len())?;
        let mut out = DVector::zeros(self.ncols());
        for (&c, &v) in self.columns.iter().zip(y.iter()) {
            out[c] += v;
        }
        Ok(out)
    }
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

/// A side of the reference square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    South,
    East,
    North,
    West,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::South, Side::East, Side::North, Side::West];

    pub fn outward_normal(self) -> [f64; 2] {
        match self {
            Side::South => [0.0, -1.0],
            Side::East => [1.0, 0.0],
            Side::North => [0.0, 1.0],
            Side::West => [-1.0, 0.0],
        }
    }

    /// Point on the side at coordinate `t ∈ [-1, 1]`; `t` is ξ on S/N and η on E/W.
    pub fn point(self, t: f64) -> [f64; 2] {
        match self {
            Side::South => [t, -1.0],
            Side::East => [1.0, t],
            Side::North => [t, 1.0],
            Side::West => [-1.0, t],
        }
    }

    /// Node `(i, j)` of the 1D node with index `a` along this side.
    pub fn node(self, a: usize, degree: usize) -> (usize, usize) {
        match self {
            Side::South => (a, 0),
            Side::East => (degree, a),
            Side::North => (a, degree),
            Side::West => (0, a),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::South => "S",
            Side::East => "E",
            Side::North => "N",
            Side::West => "W",
        }
    }
}

/// Geometry of one boundary-loop dof.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDof {
    /// Side on which the dof is listed in the loop traversal.
    pub side: Side,
    pub node: (usize, usize),
    pub position: [f64; 2],
    /// `(side, 1D node index along that side)` for every side the loop basis
    /// function is supported on; corners have two entries.
    pub support: Vec<(Side, usize)>,
}

/// Boundary dofs in `T` row order, with their support on the four sides.
pub fn boundary_arclength_map(ns: &NodeSet1D) -> Vec<BoundaryDof> {
    let n = ns.degree();
    let x = ns.nodes();
    let loop_nodes = boundary_loop(n);
    let last_south = n;
    let last_east = 2 * n;
    let last_north = 3 * n;
    loop_nodes
        .into_iter()
        .enumerate()
        .map(|(k, (i, j))| {
            let side = if k <= last_south {
                Side::South
            } else if k <= last_east {
                Side::East
            } else if k <= last_north {
                Side::North
            } else {
                Side::West
            };
            let mut support = Vec::with_capacity(2);
            if j == 0 {
                support.push((Side::South, i));
            }
            if i == n {
                support.push((Side::East, j));
            }
            if j == n {
                support.push((Side::North, i));
            }
            if i == 0 {
                support.push((Side::West, j));
            }
            BoundaryDof {
                side,
                node: (i, j),
                position: [x[i], x[j]],
                support,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis1d::gll_nodes;

    #[test]
    fn layout_counts() {
        assert_eq!(DofLayout::new(0), Err(Error::InvalidDegree(0)));
        let l = DofLayout::new(3).unwrap();
        assert_eq!((l.n_nodes(), l.n_edges(), l.n_boundary()), (16, 24, 12));
        assert_eq!(l.node(1, 0), 1);
        assert_eq!(l.node(0, 1), 4);
        assert_eq!(l.xi_edge(0, 1), 0);
        assert_eq!(l.eta_edge(1, 0), 12);
        assert_eq!(l.eta_edge(3, 3), 23);
    }

    #[test]
    fn incidence_n1() {
        let e = build_incidence(1).unwrap().to_dense();
        let expect = DMatrix::from_row_slice(
            4,
            4,
            &[-1, 0, 1, 0, 0, -1, 0, 1, 1, -1, 0, 0, 0, 0, 1, -1],
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn incidence_rows_and_constants() {
        for n in 1..=8 {
            let e = build_incidence(n).unwrap();
            let dense = e.to_dense();
            for r in 0..e.nrows() {
                let row = dense.row(r);
                assert_eq!(row.iter().filter(|&&v| v == 1).count(), 1);
                assert_eq!(row.iter().filter(|&&v| v == -1).count(), 1);
                assert_eq!(row.iter().map(|&v| v as i32).sum::<i32>(), 0);
            }
            let ones = DVector::from_element(e.ncols(), 1.0);
            assert!(e.apply(&ones).unwrap().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn incidence_node_valence() {
        for n in 2..=6 {
            let e = build_incidence(n).unwrap();
            let l = e.layout();
            let mut count = vec![0; l.n_nodes()];
            for &(p, m) in e.row_pairs() {
                count[p] += 1;
                count[m] += 1;
            }
            for j in 0..=n {
                for i in 0..=n {
                    let on_x = i == 0 || i == n;
                    let on_y = j == 0 || j == n;
                    let expect = match (on_x, on_y) {
                        (true, true) => 2,
                        (true, false) | (false, true) => 3,
                        _ => 4,
                    };
                    assert_eq!(count[l.node(i, j)], expect, "N={n} node ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn apply_matches_dense() {
        let e = build_incidence(4).unwrap();
        let t = build_trace(4).unwrap();
        let x = DVector::from_fn(25, |i, _| (i as f64 * 0.37).sin());
        let y = DVector::from_fn(40, |i, _| (i as f64 * 0.11).cos());
        let b = DVector::from_fn(16, |i, _| i as f64 - 3.5);
        assert_eq!(e.apply(&x).unwrap(), e.to_f64() * &x);
        assert_eq!(e.apply_transpose(&y).unwrap(), e.to_f64().transpose() * &y);
        assert_eq!(t.apply(&x).unwrap(), t.to_f64() * &x);
        assert_eq!(t.apply_transpose(&b).unwrap(), t.to_f64().transpose() * &b);
        assert!(matches!(
            e.apply(&y),
            Err(Error::DimensionMismatch { expected: 25, got: 40, .. })
        ));
    }

    #[test]
    fn trace_n1_and_rows() {
        let t = build_trace(1).unwrap();
        assert_eq!(t.columns(), &[0, 1, 3, 2]);
        for n in 1..=8 {
            let t = build_trace(n).unwrap();
            assert_eq!(t.nrows(), 4 * n);
            let dense = t.to_dense();
            for r in 0..t.nrows() {
                assert_eq!(dense.row(r).iter().map(|&v| v as u32).sum::<u32>(), 1);
            }
            let mut cols = t.columns().to_vec();
            cols.sort_unstable();
            cols.dedup();
            assert_eq!(cols.len(), 4 * n);
        }
    }

    #[test]
    fn arclength_map() {
        let ns = gll_nodes(1).unwrap();
        let map = boundary_arclength_map(&ns);
        assert_eq!(map[0].position, [-1.0, -1.0]);
        assert_eq!(map[0].support, vec![(Side::South, 0), (Side::West, 0)]);

        let ns = gll_nodes(3).unwrap();
        let map = boundary_arclength_map(&ns);
        assert_eq!(map[4].node, (3, 1));
        assert_eq!(map[4].side, Side::East);
        assert_eq!(map[4].support, vec![(Side::East, 1)]);
        assert_eq!(map[4].position, [1.0, ns.nodes()[1]]);

        for n in 1..=7 {
            let ns = gll_nodes(n).unwrap();
            let map = boundary_arclength_map(&ns);
            let t = build_trace(n).unwrap();
            let l = t.layout();
            for side in Side::ALL {
                let mut seen: Vec<usize> = map
                    .iter()
                    .flat_map(|d| d.support.iter())
                    .filter(|(s, _)| *s == side)
                    .map(|&(_, a)| a)
                    .collect();
                seen.sort_unstable();
                assert_eq!(seen, (0..=n).collect::<Vec<_>>());
            }
            for (d, &c) in map.iter().zip(t.columns()) {
                assert_eq!(l.node(d.node.0, d.node.1), c);
                for &(s, a) in &d.support {
                    assert_eq!(s.node(a, n), d.node);
                }
            }
            let segments: usize = map.iter().map(|d| d.support.len()).sum();
            assert_eq!(segments, 4 * (n + 1));
        }
    }
}
