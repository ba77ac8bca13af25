//! The matrix avatars of a graph: the graph Laplacian `Λ_G = Hᵀ D H` on the
//! cycle space, the dual Laplacian `L_G = ε D⁻¹ εᵀ` on the vertex side, the
//! block graph matrix `M_G`, the Kirchhoff polynomial `Ψ_G` and Dodgson
//! polynomials.
//!
//! Conventions: variables `x_e` are indexed by edge position; the reduced
//! incidence matrix `ε` drops the highest-index vertex and has `+1` at the
//! head, `−1` at the tail of each edge. In [`dual_laplacian`] the inverse
//! variables `1/x_e` are represented by fresh polynomial variables `y_e`
//! (same indices).

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::polyring::{MultiPoly, PolyMatrix};

/// A graph together with a cycle basis, its Laplacian and reduced incidence matrix.
#[derive(Clone, Debug)]
pub struct LaplacianBundle {
    pub graph: Graph,
    /// `e × h` cycle basis matrix `H`.
    pub cycle_basis: Vec<Vec<i64>>,
    /// `h × h` matrix `Hᵀ diag(x) H`, entries linear in the `x_e`.
    pub lambda: PolyMatrix,
    /// `(v−1) × e` reduced incidence matrix (highest vertex deleted).
    pub epsilon: Vec<Vec<i64>>,
}

impl LaplacianBundle {
    pub fn loop_number(&self) -> usize {
        self.lambda.rows()
    }

    /// `det Λ_G`, which equals the Kirchhoff polynomial.
    pub fn determinant(&self) -> Result<MultiPoly> {
        self.lambda.det()
    }
}

/// `Hᵀ diag(x) H` for an integer `e × h` matrix `H`.
pub fn lambda_from_basis(h: &[Vec<i64>]) -> PolyMatrix {
    let e = h.len();
    let loops = h.first().map_or(0, |r| r.len());
    PolyMatrix::from_fn(loops, loops, e, |i, j| {
        let mut p = MultiPoly::zero(e);
        for (edge, row) in h.iter().enumerate() {
            let c = row[i] * row[j];
            if c != 0 {
                p = p.add(&MultiPoly::var(e, edge).scale_int(c));
            }
        }
        p
    })
}

fn require_loops(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.loop_number() == 0 {
        return Err(Error::NoLoops);
    }
    Ok(())
}

/// Laplacian bundle with the greedy fundamental cycle basis.
pub fn laplacian(g: &Graph) -> Result<LaplacianBundle> {
    require_loops(g)?;
    let h = g.cycle_basis()?;
    laplacian_with_basis(g, h)
}

/// Laplacian bundle for a caller-supplied cycle basis `H` (`e × h`).
///
/// The basis is validated: it must have `e` rows and `h_G` columns, satisfy
/// `∂H = 0`, and be nondegenerate (`det Λ ≠ 0`).
pub fn laplacian_with_basis(g: &Graph, h: Vec<Vec<i64>>) -> Result<LaplacianBundle> {
    require_loops(g)?;
    let loops = g.loop_number();
    if h.len() != g.edge_count() || h.iter().any(|r| r.len() != loops) {
        return Err(Error::InvalidArgument(format!(
            "cycle basis must be {}x{}",
            g.edge_count(),
            loops
        )));
    }
    let incidence = g.incidence();
    for row in &incidence {
        for c in 0..loops {
            if (0..g.edge_count()).map(|e| row[e] * h[e][c]).sum::<i64>() != 0 {
                return Err(Error::InvalidArgument(format!("column {c} is not a cycle")));
            }
        }
    }
    let lambda = lambda_from_basis(&h);
    if lambda.det()?.is_zero() {
        return Err(Error::InvalidArgument("cycle basis is degenerate".into()));
    }
    Ok(LaplacianBundle {
        graph: g.clone(),
        cycle_basis: h,
        lambda,
        epsilon: reduced_incidence(g),
    })
}

/// The signed incidence matrix with the row of the highest-index vertex removed.
pub fn reduced_incidence(g: &Graph) -> Vec<Vec<i64>> {
    let mut m = g.incidence();
    m.pop();
    m
}

/// Kirchhoff polynomial `Ψ_G = Σ_T Π_{e∉T} x_e` over spanning trees `T`.
pub fn graph_polynomial(g: &Graph) -> Result<MultiPoly> {
    let e = g.edge_count();
    let mut psi = MultiPoly::zero(e);
    for tree in g.spanning_trees()? {
        let mut exps = vec![1u16; e];
        for t in tree {
            exps[t] = 0;
        }
        psi.add_term(crate::polyring::Monomial(exps), num_rational::BigRational::from_integer(1.into()));
    }
    Ok(psi)
}

/// Dual Laplacian `L_G = ε diag(y) εᵀ` in the variables `y_e = 1/x_e`.
pub fn dual_laplacian(g: &Graph) -> Result<PolyMatrix> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let e = g.edge_count();
    let eps = reduced_incidence(g);
    let n = eps.len();
    Ok(PolyMatrix::from_fn(n, n, e, |i, j| {
        let mut p = MultiPoly::zero(e);
        for edge in 0..e {
            let c = eps[i][edge] * eps[j][edge];
            if c != 0 {
                p = p.add(&MultiPoly::var(e, edge).scale_int(c));
            }
        }
        p
    }))
}

/// Graph matrix `M_G = [[D, −εᵀ], [ε, 0]]`; rows and columns `0..e` are the edges.
pub fn graph_matrix(g: &Graph) -> Result<PolyMatrix> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let e = g.edge_count();
    let eps = reduced_incidence(g);
    let n = e + eps.len();
    Ok(PolyMatrix::from_fn(n, n, e, |i, j| {
        if i < e && j < e {
            if i == j {
                MultiPoly::var(e, i)
            } else {
                MultiPoly::zero(e)
            }
        } else if i < e {
            MultiPoly::from_int(e, -eps[j - e][i])
        } else if j < e {
            MultiPoly::from_int(e, eps[i - e][j])
        } else {
            MultiPoly::zero(e)
        }
    }))
}

/// Dodgson polynomial `Ψ^{I,J}`: the determinant of `M_G` with edge rows `I`
/// and edge columns `J` removed (indices in ascending order, no extra sign).
pub fn dodgson(g: &Graph, rows: &[usize], cols: &[usize]) -> Result<MultiPoly> {
    if rows.len() != cols.len() {
        return Err(Error::InvalidArgument(format!(
            "Dodgson index sets differ in size ({} vs {})",
            rows.len(),
            cols.len()
        )));
    }
    for &i in rows.iter().chain(cols) {
        if i >= g.edge_count() {
            return Err(Error::EdgeOutOfRange {
                index: i,
                edges: g.edge_count(),
            });
        }
    }
    let mut r = rows.to_vec();
    let mut c = cols.to_vec();
    r.sort_unstable();
    r.dedup();
    c.sort_unstable();
    c.dedup();
    if r.len() != rows.len() || c.len() != cols.len() {
        return Err(Error::InvalidArgument("repeated index in Dodgson set".into()));
    }
    graph_matrix(g)?.minor(&r, &c).det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{banana, complete_graph, wheel};
    use num_rational::BigRational;

    const PSI_W3: &str = "x1*x2*x3 + x1*x2*x4 + x1*x2*x5 + x1*x3*x4 + x1*x3*x6 + x1*x4*x5 + x1*x4*x6 + x1*x5*x6 \
        + x2*x3*x5 + x2*x3*x6 + x2*x4*x5 + x2*x4*x6 + x2*x5*x6 + x3*x4*x5 + x3*x4*x6 + x3*x5*x6";

    fn reference_w3_basis() -> Vec<Vec<i64>> {
        let ht = [[1, 0, 0, 0, 1, -1], [0, 1, 0, -1, 0, 1], [0, 0, 1, 1, -1, 0]];
        (0..6).map(|e| (0..3).map(|c| ht[c][e]).collect()).collect()
    }

    #[test]
    fn w3_polynomial_matches_reference() {
        let w3 = wheel(3).unwrap();
        let expected = MultiPoly::parse(6, PSI_W3).unwrap();
        let psi = graph_polynomial(&w3).unwrap();
        assert_eq!(psi, expected);
        assert_eq!(laplacian(&w3).unwrap().determinant().unwrap(), expected);
        assert_eq!(graph_matrix(&w3).unwrap().det().unwrap(), expected);
    }

    #[test]
    fn w3_laplacian_in_reference_basis() {
        let w3 = wheel(3).unwrap();
        let b = laplacian_with_basis(&w3, reference_w3_basis()).unwrap();
        let expected = "x1 + x5 + x6 ; -x6 ; -x5\n-x6 ; x2 + x4 + x6 ; -x4\n-x5 ; -x4 ; x3 + x4 + x5";
        assert_eq!(b.lambda.to_text(), expected);
        let bad = vec![vec![1, 0, 0]; 6];
        assert!(laplacian_with_basis(&w3, bad).is_err());
    }

    #[test]
    fn banana_laplacian_and_polynomial() {
        let b2 = laplacian(&banana(2).unwrap()).unwrap();
        assert_eq!(b2.lambda.to_text(), "x1 + x2");
        let psi = graph_polynomial(&banana(3).unwrap()).unwrap();
        assert_eq!(psi, MultiPoly::parse(3, "x1*x2 + x1*x3 + x2*x3").unwrap());
        assert_eq!(graph_matrix(&banana(2).unwrap()).unwrap().det().unwrap(), MultiPoly::parse(2, "x1 + x2").unwrap());
    }

    #[test]
    fn trees_and_disconnected_graphs_are_rejected() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(laplacian(&path).unwrap_err(), Error::NoLoops);
        let two = Graph::new(4, vec![(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        assert_eq!(laplacian(&two).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn k3_dual_laplacian() {
        let l = dual_laplacian(&complete_graph(3).unwrap()).unwrap();
        assert_eq!(l.to_text(), "x1 + x2 ; -x1\n-x1 ; x1 + x3");
    }

    #[test]
    fn single_edge_dual_laplacian() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let l = dual_laplacian(&g).unwrap();
        assert_eq!(l.to_text(), "x1");
        assert_eq!(graph_polynomial(&g).unwrap(), MultiPoly::one(1));
    }

    #[test]
    fn dodgson_diagonal_is_a_derivative() {
        let w3 = wheel(3).unwrap();
        let psi = graph_polynomial(&w3).unwrap();
        assert_eq!(dodgson(&w3, &[], &[]).unwrap(), psi);
        for i in 0..6 {
            assert_eq!(dodgson(&w3, &[i], &[i]).unwrap(), psi.derivative(i));
            for j in 0..6 {
                assert_eq!(dodgson(&w3, &[i], &[j]).unwrap(), dodgson(&w3, &[j], &[i]).unwrap());
            }
        }
        assert!(dodgson(&w3, &[0], &[]).is_err());
        assert!(dodgson(&w3, &[9], &[0]).is_err());
    }

    #[test]
    fn contraction_and_deletion_of_psi() {
        let w3 = wheel(3).unwrap();
        let psi = graph_polynomial(&w3).unwrap();
        let zero = BigRational::from_integer(0.into());
        for e in 0..6 {
            let contracted = graph_polynomial(&w3.contract(e).unwrap()).unwrap();
            let keep: Vec<usize> = (0..6).filter(|&i| i != e).collect();
            let restricted = psi.substitute_value(e, &zero);
            let restricted = MultiPoly::from_terms(
                5,
                restricted.terms().map(|(m, c)| (c.clone(), keep.iter().map(|&i| m.0[i]).collect())),
            );
            assert_eq!(contracted, restricted);
            let deleted = graph_polynomial(&w3.delete(e).unwrap()).unwrap();
            let deriv = psi.derivative(e);
            let deriv = MultiPoly::from_terms(5, deriv.terms().map(|(m, c)| (c.clone(), keep.iter().map(|&i| m.0[i]).collect())));
            assert_eq!(deleted, deriv);
        }
    }
}
