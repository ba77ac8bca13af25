//! Invariant traces `β^n_X = tr((X⁻¹dX)^n)` by dynamic programming over
//! subsets of differentials.
//!
//! Writing `X⁻¹dX = Σ_e A_e dx_e`, the component of `β^n` on `dx_S` is
//! `Σ_σ sgn(σ) tr(A_{σ1}⋯A_{σn})` over orderings `σ` of `S`. Two engines:
//!
//! * [`matrix_trace_components`]: a subset DP with matrix-valued states, for
//!   arbitrary `A_e`.
//! * [`cyclic_trace_components`]: for rank-one `A_e = u_e v_eᵀ` the trace is a
//!   cyclic product of the scalars `Q_ab = v_aᵀ u_b`; for odd `n` the `n`
//!   rotations of an ordering have equal sign, so it suffices to sum Hamiltonian
//!   paths starting at `min S` (a Held–Karp recursion) and multiply by `n`.

use super::{DiffForm, FormValues, Mask};
use crate::error::{Error, Result};
use crate::polyring::{DenseMatrix, Field, MultiPoly, PolyMatrix};
use std::collections::{BTreeMap, HashMap};

/// Scalars the trace recursions can run over: field elements and polynomials.
pub trait TraceScalar: Clone + Send + Sync {
    fn is_zero_value(&self) -> bool;
    fn zero_like(&self) -> Self;
    /// `self += ± a·b`.
    fn add_signed_product(&mut self, a: &Self, b: &Self, negate: bool);
    fn times_int(&self, n: i64) -> Self;
}

impl<F: Field> TraceScalar for F {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        F::zero()
    }
    fn add_signed_product(&mut self, a: &Self, b: &Self, negate: bool) {
        let p = a.mul(b);
        *self = if negate { self.sub(&p) } else { self.add(&p) };
    }
    fn times_int(&self, n: i64) -> Self {
        self.mul(&F::from_i64(n))
    }
}

impl TraceScalar for MultiPoly {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars())
    }
    fn add_signed_product(&mut self, a: &Self, b: &Self, negate: bool) {
        let p = a.mul(b);
        *self = if negate { self.sub(&p) } else { self.add(&p) };
    }
    fn times_int(&self, n: i64) -> Self {
        self.scale_int(n)
    }
}

/// Components of `Σ_σ sgn(σ) Π_i Q[σ_i][σ_{i+1}]` (cyclic, `σ_{n+1} = σ_1`)
/// over all `n`-subsets `S` of the variables in `allowed`, i.e. the trace of
/// the `n`-th power of `Σ_e A_e dx_e` for rank-one `A_e` with cyclic factors `Q`.
///
/// `n` must be odd (even powers have vanishing trace).
pub fn cyclic_trace_components<S: TraceScalar>(q: &[Vec<S>], n: usize, allowed: Mask, one: &S) -> BTreeMap<Mask, S> {
    assert!(n % 2 == 1, "cyclic reduction needs an odd power");
    let positions: Vec<usize> = super::mask_indices(allowed);
    let a = positions.len();
    if n > a {
        return BTreeMap::new();
    }
    let mut out: BTreeMap<usize, S> = BTreeMap::new();
    assert!(a <= 24, "too many variables for the subset recursion");
    let zero = one.zero_like();
    let size = 1usize << a;
    // states[mask * a + last]
    let mut states: Vec<Option<S>> = vec![None; size * a];
    for s in 0..a {
        states[(1 << s) * a + s] = Some(one.clone());
    }
    for mask in 1..size {
        let t = mask.count_ones() as usize;
        if t > n {
            continue;
        }
        let start = mask.trailing_zeros() as usize;
        for last in 0..a {
            let idx = mask * a + last;
            let val = match states[idx].take() {
                Some(v) if !v.is_zero_value() => v,
                _ => continue,
            };
            let pl = positions[last];
            if t == n {
                let entry = out.entry(mask).or_insert_with(|| zero.clone());
                entry.add_signed_product(&val, &q[pl][positions[start]], false);
                continue;
            }
            for k in start + 1..a {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let qv = &q[pl][positions[k]];
                if qv.is_zero_value() {
                    continue;
                }
                let negate = (mask >> (k + 1)).count_ones() % 2 == 1;
                let slot = &mut states[(mask | (1 << k)) * a + k];
                let target = slot.get_or_insert_with(|| zero.clone());
                target.add_signed_product(&val, qv, negate);
            }
        }
    }
    let expand = |m: usize| -> Mask {
        let mut full = 0u64;
        for (i, &p) in positions.iter().enumerate() {
            if m & (1 << i) != 0 {
                full |= 1 << p;
            }
        }
        full
    };
    out.into_iter()
        .filter(|(_, v)| !v.is_zero_value())
        .map(|(m, v)| (expand(m), v.times_int(n as i64)))
        .collect()
}

/// Components of `tr((Σ_e A_e dx_e)^n)` for arbitrary matrices `A_e` over a field.
pub fn matrix_trace_components<F: Field>(a: &[DenseMatrix<F>], n: usize) -> BTreeMap<Mask, F> {
    let e = a.len();
    let mut out = BTreeMap::new();
    if n == 0 || n > e {
        return out;
    }
    let mut layer: HashMap<Mask, DenseMatrix<F>> = (0..e).map(|j| (1u64 << j, a[j].clone())).collect();
    for _ in 1..n {
        let mut next: HashMap<Mask, DenseMatrix<F>> = HashMap::new();
        for (&mask, m) in &layer {
            for k in 0..e {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let prod = m.mul(&a[k]);
                let negate = (mask >> (k + 1)).count_ones() % 2 == 1;
                let entry = next
                    .entry(mask | (1 << k))
                    .or_insert_with(|| DenseMatrix::zeros(prod.rows, prod.cols));
                for (x, y) in entry.data.iter_mut().zip(prod.data.iter()) {
                    *x = if negate { x.sub(y) } else { x.add(y) };
                }
            }
        }
        layer = next;
    }
    for (mask, m) in layer {
        let t = m.trace();
        if !t.is_zero() {
            out.insert(mask, t);
        }
    }
    out
}

/// The same recursion on polynomial matrices, returning the matrix-valued
/// components of `(Σ_e A_e dx_e)^n` (before taking traces).
fn poly_matrix_power_components(a: &[PolyMatrix], n: usize) -> HashMap<Mask, PolyMatrix> {
    let e = a.len();
    if n == 0 || n > e {
        return HashMap::new();
    }
    let mut layer: HashMap<Mask, PolyMatrix> = (0..e).map(|j| (1u64 << j, a[j].clone())).collect();
    for _ in 1..n {
        let mut next: HashMap<Mask, PolyMatrix> = HashMap::new();
        for (&mask, m) in &layer {
            for k in 0..e {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let prod = m.mul(&a[k]);
                let negate = (mask >> (k + 1)).count_ones() % 2 == 1;
                match next.get_mut(&(mask | (1 << k))) {
                    Some(acc) => {
                        *acc = PolyMatrix::from_fn(acc.rows(), acc.cols(), acc.nvars(), |i, j| {
                            if negate {
                                acc.get(i, j).sub(prod.get(i, j))
                            } else {
                                acc.get(i, j).add(prod.get(i, j))
                            }
                        });
                    }
                    None => {
                        let v = if negate { prod.map(prod.nvars(), |p| p.neg()) } else { prod };
                        next.insert(mask | (1 << k), v);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

/// Symbolic `β^n_X = tr((X⁻¹dX)^n)` for a square polynomial matrix, with the
/// denominator reduced to the smallest power of `det X`.
pub fn maurer_cartan_trace(x: &PolyMatrix, n: usize) -> Result<DiffForm> {
    let det = x.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let nv = x.nvars();
    let mut form = DiffForm::zero(nv, n, det.clone());
    if n == 0 {
        form.add_component(0, MultiPoly::from_int(nv, x.rows() as i64), 0);
        return Ok(form);
    }
    if n > nv {
        return Ok(form);
    }
    let adj = x.adjugate()?;
    let a: Vec<PolyMatrix> = (0..nv).map(|e| adj.mul(&x.derivative(e))).collect();
    let comps = poly_matrix_power_components(&a, n);
    let mut masks: Vec<Mask> = comps.keys().copied().collect();
    masks.sort_unstable();
    for mask in masks {
        let m = &comps[&mask];
        let mut tr = MultiPoly::zero(nv);
        for i in 0..m.rows() {
            tr = tr.add(m.get(i, i));
        }
        form.add_component(mask, tr, n as u32);
    }
    Ok(form.reduce())
}

fn derivative_matrices_at<F: Field>(x: &PolyMatrix, point: &[F]) -> Result<Vec<DenseMatrix<F>>> {
    (0..x.nvars())
        .map(|e| x.derivative(e).eval(point).ok_or(Error::Pole))
        .collect()
}

/// `β^n_X` evaluated at a point over a field.
pub fn maurer_cartan_trace_at<F: Field>(x: &PolyMatrix, n: usize, point: &[F]) -> Result<FormValues<F>> {
    let xv = x.eval(point).ok_or(Error::Pole)?;
    let inv = xv.inverse().ok_or(Error::Pole)?;
    let a: Vec<DenseMatrix<F>> = derivative_matrices_at(x, point)?.iter().map(|d| inv.mul(d)).collect();
    Ok(FormValues::from_map(x.nvars(), n, matrix_trace_components(&a, n)))
}

/// The matrix-valued components of `μ_X^n = (X⁻¹dX)^n` at a point (nonzero components only).
pub fn maurer_cartan_power_at<F: Field>(x: &PolyMatrix, n: usize, point: &[F]) -> Result<BTreeMap<Mask, DenseMatrix<F>>> {
    let xv = x.eval(point).ok_or(Error::Pole)?;
    let inv = xv.inverse().ok_or(Error::Pole)?;
    let a: Vec<DenseMatrix<F>> = derivative_matrices_at(x, point)?.iter().map(|d| inv.mul(d)).collect();
    let e = a.len();
    let mut out = BTreeMap::new();
    if n == 0 || n > e {
        return Ok(out);
    }
    let mut layer: HashMap<Mask, DenseMatrix<F>> = (0..e).map(|j| (1u64 << j, a[j].clone())).collect();
    for _ in 1..n {
        let mut next: HashMap<Mask, DenseMatrix<F>> = HashMap::new();
        for (&mask, m) in &layer {
            for k in 0..e {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let prod = m.mul(&a[k]);
                let negate = (mask >> (k + 1)).count_ones() % 2 == 1;
                let entry = next
                    .entry(mask | (1 << k))
                    .or_insert_with(|| DenseMatrix::zeros(prod.rows, prod.cols));
                for (x, y) in entry.data.iter_mut().zip(prod.data.iter()) {
                    *x = if negate { x.sub(y) } else { x.add(y) };
                }
            }
        }
        layer = next;
    }
    for (mask, m) in layer {
        if m.data.iter().any(|v| !v.is_zero()) {
            out.insert(mask, m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;
    use crate::forms::DiffForm;
    use crate::polyring::Fp;
    use num_rational::BigRational;

    fn generic_2x2() -> PolyMatrix {
        // [[a1, a3], [a4, a2]]
        let v = |i| MultiPoly::var(4, i);
        PolyMatrix::from_fn(2, 2, 4, |i, j| match (i, j) {
            (0, 0) => v(0),
            (0, 1) => v(2),
            (1, 0) => v(3),
            _ => v(1),
        })
    }

    fn generic_sym_3x3() -> PolyMatrix {
        // [[a1, a4, a5], [a4, a2, a6], [a5, a6, a3]]
        let idx = [[0, 3, 4], [3, 1, 5], [4, 5, 2]];
        PolyMatrix::from_fn(3, 3, 6, |i, j| MultiPoly::var(6, idx[i][j]))
    }

    #[test]
    fn beta1_is_dlog_det() {
        let x = generic_2x2();
        let b1 = maurer_cartan_trace(&x, 1).unwrap();
        let expected = DiffForm::dlog_base(4, x.det().unwrap());
        assert!(b1.equals(&expected));
    }

    #[test]
    fn beta3_of_generic_2x2() {
        let x = generic_2x2();
        let det = x.det().unwrap();
        let b3 = maurer_cartan_trace(&x, 3).unwrap();
        let expected = DiffForm::omega(4, det).mul_section(&MultiPoly::from_int(4, 3), 2);
        assert!(b3.equals(&expected), "{}", b3.to_text());
        assert_eq!(b3.max_exponent(), 2);
    }

    #[test]
    fn beta5_of_generic_symmetric_3x3() {
        let x = generic_sym_3x3();
        let det = x.det().unwrap();
        assert_eq!(det, MultiPoly::parse(6, "x1*x2*x3 - x1*x6^2 - x2*x5^2 - x3*x4^2 + 2*x4*x5*x6").unwrap());
        assert!(maurer_cartan_trace(&x, 3).unwrap().is_zero());
        let b5 = maurer_cartan_trace(&x, 5).unwrap();
        let expected = DiffForm::omega(6, det).mul_section(&MultiPoly::from_int(6, -10), 2);
        assert!(b5.equals(&expected), "{}", b5.to_text());
    }

    #[test]
    fn point_evaluation_agrees_with_symbolic() {
        let x = generic_sym_3x3();
        let b5 = maurer_cartan_trace(&x, 5).unwrap();
        let p: Vec<BigRational> = [3, -1, 4, 1, -5, 9].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let sym = b5.eval(&p).unwrap();
        let pt = maurer_cartan_trace_at(&x, 5, &p).unwrap();
        assert_eq!(sym, pt);
        let pf: Vec<Fp> = [3i64, -1, 4, 1, -5, 9].iter().map(|&v| Fp::from_i64(v)).collect();
        let sym_f = b5.eval(&pf).unwrap();
        assert_eq!(sym_f, maurer_cartan_trace_at(&x, 5, &pf).unwrap());
    }

    #[test]
    fn cyclic_engine_matches_matrix_engine_for_rank_one() {
        // A_e = u_e v_eᵀ with random integer vectors.
        let us = [[1i64, 2, -1], [0, 3, 1], [2, -2, 5], [1, 1, 1], [4, 0, -3], [-1, 2, 2]];
        let vs = [[2i64, -1, 0], [1, 1, 4], [0, 2, -2], [3, -1, 1], [1, 0, 2], [2, 5, -1]];
        let a: Vec<DenseMatrix<Fp>> = (0..6)
            .map(|e| DenseMatrix::from_fn(3, 3, |i, j| Fp::from_i64(us[e][i] * vs[e][j])))
            .collect();
        let q: Vec<Vec<Fp>> = (0..6)
            .map(|x| (0..6).map(|y| Fp::from_i64((0..3).map(|i| vs[x][i] * us[y][i]).sum())).collect())
            .collect();
        for n in [1usize, 3, 5] {
            let m = matrix_trace_components(&a, n);
            let c = cyclic_trace_components(&q, n, 0b111111, &Fp::from_i64(1));
            assert_eq!(m, c, "n = {n}");
        }
        // restricting to a subset of variables gives the sub-family
        let c = cyclic_trace_components(&q, 3, 0b101101, &Fp::from_i64(1));
        let full = cyclic_trace_components(&q, 3, 0b111111, &Fp::from_i64(1));
        for (mask, v) in c {
            assert_eq!(full[&mask], v);
        }
    }
}
