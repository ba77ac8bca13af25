//! Differential forms evaluated at a point: a scalar per basis monomial `dx_S`.

use super::{mask_indices, merge_sign, Mask};
use crate::polyring::{DenseMatrix, Field};
use std::collections::BTreeMap;

/// Values of the components of a form at one point, over a field `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormValues<F> {
    pub nvars: usize,
    pub degree: usize,
    comps: BTreeMap<Mask, F>,
}

impl<F: Field> FormValues<F> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        FormValues {
            nvars,
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// The constant function 1 (degree 0).
    pub fn one(nvars: usize) -> Self {
        let mut f = FormValues::zero(nvars, 0);
        f.add(0, F::one());
        f
    }

    pub fn from_map(nvars: usize, degree: usize, comps: BTreeMap<Mask, F>) -> Self {
        let mut f = FormValues::zero(nvars, degree);
        for (m, v) in comps {
            f.add(m, v);
        }
        f
    }

    /// Adds `v` to the component of `mask`.
    pub fn add(&mut self, mask: Mask, v: F) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if v.is_zero() {
            return;
        }
        match self.comps.get_mut(&mask) {
            Some(old) => {
                *old = old.add(&v);
                if old.is_zero() {
                    self.comps.remove(&mask);
                }
            }
            None => {
                self.comps.insert(mask, v);
            }
        }
    }

    /// Component value (zero if absent).
    pub fn get(&self, mask: Mask) -> F {
        self.comps.get(&mask).cloned().unwrap_or_else(F::zero)
    }

    pub fn components(&self) -> &BTreeMap<Mask, F> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = FormValues::zero(self.nvars, self.degree);
        for (&m, v) in &self.comps {
            out.add(m, v.mul(c));
        }
        out
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (o.nvars, o.degree));
        let mut out = self.clone();
        for (&m, v) in &o.comps {
            out.add(m, v.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale(&F::from_i64(-1)))
    }

    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = FormValues::zero(self.nvars, self.degree + o.degree);
        for (&a, va) in &self.comps {
            for (&b, vb) in &o.comps {
                if a & b == 0 {
                    let v = va.mul(vb);
                    out.add(a | b, if merge_sign(a, b) < 0 { v.neg() } else { v });
                }
            }
        }
        out
    }

    /// Re-embeds into `nvars` variables with variable `i` renamed `map[i]`,
    /// re-sorting each monomial `dx_S` with the corresponding sign.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = FormValues::zero(nvars, self.degree);
        for (&m, v) in &self.comps {
            let images: Vec<usize> = mask_indices(m).iter().map(|&i| map[i]).collect();
            let sign = permutation_parity(&images);
            let mask = images.iter().fold(0u64, |acc, &i| acc | (1 << i));
            out.add(mask, if sign < 0 { v.neg() } else { v.clone() });
        }
        out
    }

    /// Pullback along a map `φ` given its Jacobian at the point
    /// (`jac[i][j] = ∂φ_i/∂y_j`, old variables by new variables) and the
    /// values of this form at `φ(y)`.
    pub fn pullback(&self, jac: &DenseMatrix<F>) -> Self {
        let new_vars = jac.cols;
        let mut out = FormValues::zero(new_vars, self.degree);
        for target in subsets_of_size(new_vars, self.degree) {
            let cols = mask_indices(target);
            let mut acc = F::zero();
            for (&m, v) in &self.comps {
                let rows = mask_indices(m);
                let minor = DenseMatrix::from_fn(rows.len(), cols.len(), |i, j| jac.get(rows[i], cols[j]).clone());
                let d = minor.det();
                if !d.is_zero() {
                    acc = acc.add(&v.mul(&d));
                }
            }
            out.add(target, acc);
        }
        out
    }
}

/// Parity of the permutation sorting a list of distinct integers.
pub(crate) fn permutation_parity(items: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All masks of `k`-element subsets of `0..n`, in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        return vec![0];
    }
    // Gosper's hack.
    let mut m: u64 = (1 << k) - 1;
    let limit: u64 = if n == 64 { u64::MAX } else { 1 << n };
    while m < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
        if r == 0 {
            break;
        }
    }
    out
}
