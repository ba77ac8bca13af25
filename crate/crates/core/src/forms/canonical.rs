//! Canonical graph forms `ω^{4k+1}_G = β^{4k+1}_{Λ_G}`, their wedge
//! products, and the coproduct of the algebra they generate.
//!
//! Every route reduces to the cyclic trace engine: `X⁻¹ ∂_e X` has rank one
//! for each of the graph matrices, and the cyclic factor matrix `Q` is
//!
//! * `Λ_G`: `Q = H Λ⁻¹ Hᵀ`,
//! * `L_G` (variables `1/x_e`): `Q_ab = (εᵀ L⁻¹ ε)_ab · (−1/x_b²)`,
//! * `M_G`: `Q` is the edge block of `M⁻¹`,
//! * Dodgson polynomials: `Q_ab = Ψ^{a,b} / Ψ` (the signs `(−1)^{a+b}`
//!   relating this to the edge block of `M⁻¹` cancel around every cycle).

use super::trace::cyclic_trace_components;
use super::{mask_indices, DiffForm, FormValues, Mask};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::laplacian::{self, reduced_incidence};
use crate::polyring::{DenseMatrix, Field, MultiPoly, PolyMatrix};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An element `ω^{4k₁+1} ∧ … ∧ ω^{4k_r+1}` of the algebra of canonical
/// forms, given by strictly increasing indices `k₁ < … < k_r`, all ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalFormSpec {
    indices: Vec<u32>,
}

impl CanonicalFormSpec {
    /// Validates and builds a spec; repeated or unsorted indices are rejected
    /// (odd generators square to zero, and the order fixes the sign).
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.iter().any(|&k| k == 0) {
            return Err(Error::InvalidArgument("canonical form indices start at 1".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "canonical form indices must be strictly increasing, got {indices:?}"
            )));
        }
        Ok(CanonicalFormSpec { indices })
    }

    /// The unit `1` (empty wedge).
    pub fn unit() -> Self {
        CanonicalFormSpec { indices: Vec::new() }
    }

    /// The generator `ω^{4k+1}`.
    pub fn primitive(k: u32) -> Result<Self> {
        Self::new(vec![k])
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn is_unit(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_primitive(&self) -> bool {
        self.indices.len() == 1
    }

    /// Form degree `Σ (4kᵢ + 1)`.
    pub fn degree(&self) -> usize {
        self.indices.iter().map(|&k| 4 * k as usize + 1).sum()
    }

    /// Upper bound `Σ (kᵢ + 1)` on the power of `Ψ` in the denominator.
    pub fn pole_bound(&self) -> u32 {
        self.indices.iter().map(|&k| k + 1).sum()
    }

    /// Parses `"1"`, `"1,2"` or `"[1, 2]"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        if t.trim().is_empty() {
            return Ok(Self::unit());
        }
        let mut out = Vec::new();
        for part in t.split(',') {
            let k: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad canonical form index `{}`", part.trim())))?;
            out.push(k);
        }
        Self::new(out)
    }
}

impl fmt::Display for CanonicalFormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// One term `sign · left ⊗ right` of a coproduct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductTerm {
    pub left: CanonicalFormSpec,
    pub right: CanonicalFormSpec,
    pub sign: i8,
}

/// Coproduct with every generator primitive: a sum over splittings of the
/// factors into `(A, Ā)`, signed by the shuffle moving the (odd) factors of
/// `A` to the front. Terms are ordered by the size of `A`.
pub fn coproduct(spec: &CanonicalFormSpec) -> Vec<CoproductTerm> {
    let r = spec.indices.len();
    let mut masks: Vec<u32> = (0..(1u32 << r)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|m| {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut inversions = 0;
            for (i, &k) in spec.indices.iter().enumerate() {
                if m & (1 << i) != 0 {
                    // Every earlier factor of the right part has to move past this one.
                    inversions += right.len();
                    left.push(k);
                } else {
                    right.push(k);
                }
            }
            CoproductTerm {
                left: CanonicalFormSpec { indices: left },
                right: CanonicalFormSpec { indices: right },
                sign: if inversions % 2 == 0 { 1 } else { -1 },
            }
        })
        .collect()
}

/// Coproduct without the terms `1 ⊗ ω` and `ω ⊗ 1`.
pub fn reduced_coproduct(spec: &CanonicalFormSpec) -> Vec<CoproductTerm> {
    coproduct(spec)
        .into_iter()
        .filter(|t| !t.left.is_unit() && !t.right.is_unit())
        .collect()
}

/// Strategy for computing canonical forms (all routes give the same form).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// Cycle-space Laplacian `Λ_G` (size `h`).
    Lambda,
    /// Vertex-space dual Laplacian `L_G` (size `v − 1`).
    DualLaplacian,
    /// Block graph matrix `M_G` (size `e + v − 1`).
    GraphMatrix,
    /// Dodgson polynomials `Ψ^{a,b}` (minors of `M_G`).
    Dodgson,
    /// The smaller of `Λ_G` and `L_G`.
    Auto,
}

impl Route {
    fn resolve(self, g: &Graph) -> Route {
        match self {
            Route::Auto => {
                if g.loop_number() <= g.vertex_count - 1 {
                    Route::Lambda
                } else {
                    Route::DualLaplacian
                }
            }
            r => r,
        }
    }
}

fn int_matrix<F: Field>(m: &[Vec<i64>]) -> DenseMatrix<F> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    DenseMatrix::from_fn(rows, cols, |i, j| F::from_i64(m[i][j]))
}

fn graph_matrix_at<F: Field>(g: &Graph, point: &[F]) -> DenseMatrix<F> {
    let e = g.edge_count();
    let eps = reduced_incidence(g);
    let n = e + eps.len();
    DenseMatrix::from_fn(n, n, |i, j| {
        if i < e && j < e {
            if i == j {
                point[i].clone()
            } else {
                F::zero()
            }
        } else if i < e {
            F::from_i64(-eps[j - e][i])
        } else if j < e {
            F::from_i64(eps[i - e][j])
        } else {
            F::zero()
        }
    })
}

/// The cyclic factor matrix `Q` (`e × e`) of a connected graph at a point.
pub fn edge_matrix_at<F: Field>(g: &Graph, route: Route, point: &[F]) -> Result<Vec<Vec<F>>> {
    let e = g.edge_count();
    if point.len() != e {
        return Err(Error::InvalidArgument(format!("point has {} coordinates, graph has {e} edges", point.len())));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let q: DenseMatrix<F> = match route.resolve(g) {
        Route::Lambda | Route::Auto => {
            let h: DenseMatrix<F> = int_matrix(&g.cycle_basis()?);
            let loops = h.cols;
            if loops == 0 {
                DenseMatrix::zeros(e, e)
            } else {
                let dh = DenseMatrix::from_fn(e, loops, |i, j| point[i].mul(h.get(i, j)));
                let lambda = h.transpose().mul(&dh);
                let inv = lambda.inverse().ok_or(Error::Pole)?;
                h.mul(&inv).mul(&h.transpose())
            }
        }
        Route::DualLaplacian => {
            let eps: DenseMatrix<F> = int_matrix(&reduced_incidence(g));
            let inv_x: Vec<F> = point.iter().map(|x| x.inv().ok_or(Error::Pole)).collect::<Result<_>>()?;
            if eps.rows == 0 {
                DenseMatrix::zeros(e, e)
            } else {
                let scaled = DenseMatrix::from_fn(eps.rows, e, |i, j| eps.get(i, j).mul(&inv_x[j]));
                let l = scaled.mul(&eps.transpose());
                let linv = l.inverse().ok_or(Error::Pole)?;
                let core = eps.transpose().mul(&linv).mul(&eps);
                DenseMatrix::from_fn(e, e, |a, b| core.get(a, b).mul(&inv_x[b]).mul(&inv_x[b]).neg())
            }
        }
        Route::GraphMatrix => {
            let m = graph_matrix_at(g, point);
            let inv = m.inverse().ok_or(Error::Pole)?;
            DenseMatrix::from_fn(e, e, |a, b| inv.get(a, b).clone())
        }
        Route::Dodgson => {
            let m = graph_matrix_at(g, point);
            let psi = m.det();
            let psi_inv = psi.inv().ok_or(Error::Pole)?;
            let n = m.rows;
            let mut q = DenseMatrix::zeros(e, e);
            for a in 0..e {
                for b in a..e {
                    let minor = DenseMatrix::from_fn(n - 1, n - 1, |i, j| {
                        let ii = if i >= a { i + 1 } else { i };
                        let jj = if j >= b { j + 1 } else { j };
                        m.get(ii, jj).clone()
                    });
                    let v = minor.det().mul(&psi_inv);
                    q.set(a, b, v.clone());
                    q.set(b, a, v);
                }
            }
            q
        }
    };
    Ok((0..e).map(|a| (0..e).map(|b| q.get(a, b).clone()).collect()).collect())
}

fn full_mask(e: usize) -> Mask {
    if e == 64 {
        u64::MAX
    } else {
        (1 << e) - 1
    }
}

/// Values of a canonical form at a point over a field, by the chosen route.
pub fn canonical_form_at<F: Field>(g: &Graph, spec: &CanonicalFormSpec, point: &[F], route: Route) -> Result<FormValues<F>> {
    let e = g.edge_count();
    let mut acc = FormValues::one(e);
    if spec.is_unit() {
        return Ok(acc);
    }
    if spec.degree() > e {
        return Ok(FormValues::zero(e, spec.degree()));
    }
    let q = edge_matrix_at(g, route, point)?;
    for &k in spec.indices() {
        let n = 4 * k as usize + 1;
        let comps = cyclic_trace_components(&q, n, full_mask(e), &F::one());
        acc = acc.wedge(&FormValues::from_map(e, n, comps));
        if acc.is_zero() {
            return Ok(FormValues::zero(e, spec.degree()));
        }
    }
    Ok(acc)
}

/// Refuse symbolic expansions whose numerators could exceed this many monomials.
const SYMBOLIC_MONOMIAL_BUDGET: f64 = 2.0e5;

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_symbolic_budget(e: usize, degree: usize) -> Result<()> {
    let estimate = binomial((degree + e - 1) as u64, (e - 1) as u64);
    if estimate > SYMBOLIC_MONOMIAL_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "symbolic expansion of a degree-{degree} numerator in {e} variables (up to {estimate:.2e} monomials); \
             use point evaluation instead"
        )));
    }
    Ok(())
}

fn symbolic_from_q(g: &Graph, q: &[Vec<MultiPoly>], entry_degree: usize, psi: &MultiPoly, spec: &CanonicalFormSpec) -> Result<DiffForm> {
    let e = g.edge_count();
    let mut acc = DiffForm::one(e, psi.clone());
    for &k in spec.indices() {
        let n = 4 * k as usize + 1;
        let mut form = DiffForm::zero(e, n, psi.clone());
        if n <= e {
            check_symbolic_budget(e, n * entry_degree)?;
            for (mask, num) in cyclic_trace_components(q, n, full_mask(e), &MultiPoly::one(e)) {
                form.add_component(mask, num, n as u32);
            }
        }
        acc = acc.wedge(&form.reduce())?;
    }
    Ok(acc.reduce())
}

/// Symbolic canonical form through the cycle-space Laplacian, denominators
/// reduced to the smallest power of `Ψ_G`.
///
/// Fails with [`Error::BudgetExceeded`] when the unreduced numerators are too
/// large to expand; use [`canonical_form_at`] for such graphs.
pub fn canonical_form(g: &Graph, spec: &CanonicalFormSpec) -> Result<DiffForm> {
    let e = g.edge_count();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.loop_number() == 0 {
        let mut f = DiffForm::zero(e, spec.degree(), MultiPoly::one(e));
        if spec.is_unit() {
            f = DiffForm::one(e, MultiPoly::one(e));
        }
        return Ok(f);
    }
    let bundle = laplacian::laplacian(g)?;
    let psi = bundle.determinant()?;
    let adj = bundle.lambda.adjugate()?;
    let h = PolyMatrix::from_fn(e, bundle.loop_number(), e, |i, j| MultiPoly::from_int(e, bundle.cycle_basis[i][j]));
    let n_mat = h.mul(&adj).mul(&h.transpose());
    let q: Vec<Vec<MultiPoly>> = (0..e).map(|a| (0..e).map(|b| n_mat.get(a, b).clone()).collect()).collect();
    symbolic_from_q(g, &q, bundle.loop_number() - 1, &psi, spec)
}

/// Symbolic `ω^{4k+1}_G = tr(η_G^{4k+1})` built from the Dodgson matrix
/// `(Ψ^{a,b}/Ψ)`, independently of any cycle basis.
pub fn canonical_form_via_eta(g: &Graph, k: u32) -> Result<DiffForm> {
    let spec = CanonicalFormSpec::primitive(k)?;
    let e = g.edge_count();
    let psi = laplacian::graph_polynomial(g)?;
    let mut q = vec![vec![MultiPoly::zero(e); e]; e];
    for a in 0..e {
        for b in a..e {
            let d = laplacian::dodgson(g, &[a], &[b])?;
            q[a][b] = d.clone();
            q[b][a] = d;
        }
    }
    let degree = g.loop_number().saturating_sub(1);
    symbolic_from_q(g, &q, degree, &psi, &spec)
}

/// Components of a form as index lists (1-based), for display.
pub fn component_labels(mask: Mask) -> String {
    let v: Vec<String> = mask_indices(mask).iter().map(|i| (i + 1).to_string()).collect();
    v.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;
    use crate::graphs::{banana, wheel};
    use crate::polyring::Fp;

    #[test]
    fn spec_validation() {
        assert!(CanonicalFormSpec::new(vec![1, 1]).is_err());
        assert!(CanonicalFormSpec::new(vec![2, 1]).is_err());
        assert!(CanonicalFormSpec::new(vec![0]).is_err());
        let s = CanonicalFormSpec::parse("[1, 2]").unwrap();
        assert_eq!(s.degree(), 14);
        assert_eq!(s.to_string(), "[1, 2]");
        assert!(CanonicalFormSpec::parse("").unwrap().is_unit());
        assert!(CanonicalFormSpec::parse("x").is_err());
    }

    #[test]
    fn coproduct_of_two_generators() {
        let s = CanonicalFormSpec::new(vec![1, 2]).unwrap();
        let terms = coproduct(&s);
        let shown: Vec<(Vec<u32>, Vec<u32>, i8)> = terms
            .iter()
            .map(|t| (t.left.indices().to_vec(), t.right.indices().to_vec(), t.sign))
            .collect();
        assert_eq!(
            shown,
            vec![
                (vec![], vec![1, 2], 1),
                (vec![1], vec![2], 1),
                (vec![2], vec![1], -1),
                (vec![1, 2], vec![], 1),
            ]
        );
        assert_eq!(reduced_coproduct(&s).len(), 2);
        let p = CanonicalFormSpec::primitive(1).unwrap();
        assert_eq!(coproduct(&p).len(), 2);
        assert!(reduced_coproduct(&p).is_empty());
    }

    #[test]
    fn w3_omega5_is_ten_feynman_forms() {
        // The rim-first edge order is negatively oriented: ω⁵ = −10 Ω/Ψ².
        let w3 = wheel(3).unwrap();
        let spec = CanonicalFormSpec::primitive(1).unwrap();
        let f = canonical_form(&w3, &spec).unwrap();
        let ratio = f.ratio_to_omega().expect("multiple of Ω");
        assert_eq!(ratio.exponent, 2);
        assert_eq!(ratio.numerator, MultiPoly::from_int(6, -10));
        let eta = canonical_form_via_eta(&w3, 1).unwrap();
        assert!(eta.equals(&f));
    }

    #[test]
    fn routes_agree_on_w5() {
        let w5 = wheel(5).unwrap();
        let spec = CanonicalFormSpec::primitive(2).unwrap();
        let p: Vec<Fp> = (0..10).map(|i| Fp::from_i64(3 + 7 * i * i + i)).collect();
        let base = canonical_form_at(&w5, &spec, &p, Route::Lambda).unwrap();
        assert!(!base.is_zero());
        for r in [Route::DualLaplacian, Route::GraphMatrix, Route::Dodgson, Route::Auto] {
            assert_eq!(canonical_form_at(&w5, &spec, &p, r).unwrap(), base, "{r:?}");
        }
    }

    #[test]
    fn small_graphs_have_vanishing_omega5() {
        let spec = CanonicalFormSpec::primitive(1).unwrap();
        for g in [banana(4).unwrap(), banana(5).unwrap()] {
            assert!(canonical_form(&g, &spec).unwrap().is_zero());
            assert!(canonical_form_via_eta(&g, 1).unwrap().is_zero());
        }
    }

    fn closed_form_multiple(name: &str, spec: Vec<u32>, seed: u64, expected: impl Fn(&Graph, &[Fp]) -> Fp) {
        let g = crate::graphs::fixture(name).unwrap();
        let e = g.edge_count();
        let spec = CanonicalFormSpec::new(spec).unwrap();
        for x in crate::forms::random_points::<Fp>(e, 2, seed) {
            let v = canonical_form_at(&g, &spec, &x, Route::Auto).unwrap();
            let c = crate::forms::omega_multiple(&v, &x).expect("multiple of Ω");
            assert_eq!(c, expected(&g, &x), "{name}");
        }
    }

    fn psi_inv(g: &Graph, x: &[Fp]) -> Fp {
        laplacian::graph_polynomial(g).unwrap().eval(x).unwrap().inv().unwrap()
    }

    fn spoke_ratio(g: &Graph, x: &[Fp]) -> Fp {
        let n = g.vertex_count - 1;
        x[n..].iter().fold(psi_inv(g, x), |a, v| a.mul(v))
    }

    #[test]
    fn oriented_wheels_and_k6_match_closed_forms() {
        let c = |v: i64| Fp::from_i64(v);
        closed_form_multiple("W3", vec![1], 1, |g, x| c(10).mul(&psi_inv(g, x)).mul(&psi_inv(g, x)));
        closed_form_multiple("W5", vec![2], 2, |g, x| {
            let p = psi_inv(g, x);
            c(18).mul(&p).mul(&p).mul(&c(1).add(&c(12).mul(&spoke_ratio(g, x))))
        });
        closed_form_multiple("W7", vec![3], 3, |g, x| {
            let p = psi_inv(g, x);
            let y = spoke_ratio(g, x);
            c(26).mul(&p).mul(&p).mul(&c(1).add(&c(60).mul(&y)).add(&c(360).mul(&y).mul(&y)))
        });
        closed_form_multiple("K6", vec![1, 2], 4, |g, x| {
            let p = psi_inv(g, x);
            let prod = x.iter().fold(c(1), |a, v| a.mul(v));
            c(362_880 / 8).mul(&prod).mul(&p).mul(&p).mul(&p)
        });
    }
}
