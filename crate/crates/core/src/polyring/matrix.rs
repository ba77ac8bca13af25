//! Matrices of polynomials and dense matrices over a field.

use super::field::{Field, Ring};
use super::poly::MultiPoly;
use crate::error::{Error, Result};
use num_rational::BigRational;

/// A rectangular matrix of polynomials (row-major).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![MultiPoly::zero(nvars); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(p.nvars(), nvars);
                entries.push(p);
            }
        }
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows);
        PolyMatrix::from_fn(self.rows, o.cols, self.nvars, |i, j| {
            let mut acc = MultiPoly::zero(self.nvars);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    /// Entrywise partial derivative `∂X/∂x_i`.
    pub fn derivative(&self, i: usize) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, self.nvars, |r, c| self.get(r, c).derivative(i))
    }

    /// Applies a map to every entry (which may change the number of variables).
    pub fn map(&self, nvars: usize, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, nvars, |r, c| f(self.get(r, c)))
    }

    /// The submatrix with the given rows and columns removed.
    pub fn minor(&self, drop_rows: &[usize], drop_cols: &[usize]) -> PolyMatrix {
        let rs: Vec<usize> = (0..self.rows).filter(|r| !drop_rows.contains(r)).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|c| !drop_cols.contains(c)).collect();
        PolyMatrix::from_fn(rs.len(), cs.len(), self.nvars, |i, j| self.get(rs[i], cs[j]).clone())
    }

    /// Exact determinant.
    ///
    /// Sizes below 4 use cofactor expansion; larger matrices use fraction-free
    /// (Bareiss) elimination with exact polynomial division, pivoting on the
    /// entry with the fewest terms (constants first) to keep intermediate
    /// expressions small.
    pub fn det(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows < 4 {
            return Ok(self.det_cofactor());
        }
        Ok(self.det_bareiss())
    }

    /// Determinant by Laplace expansion along the first row (any size; exponential cost).
    pub fn det_cofactor(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let idx: Vec<usize> = (0..n).collect();
        fn rec(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> MultiPoly {
            let nv = m.nvars;
            match rows.len() {
                0 => MultiPoly::one(nv),
                1 => m.get(rows[0], cols[0]).clone(),
                2 => m
                    .get(rows[0], cols[0])
                    .mul(m.get(rows[1], cols[1]))
                    .sub(&m.get(rows[0], cols[1]).mul(m.get(rows[1], cols[0]))),
                _ => {
                    let mut acc = MultiPoly::zero(nv);
                    for (k, &c) in cols.iter().enumerate() {
                        let a = m.get(rows[0], c);
                        if a.is_zero() {
                            continue;
                        }
                        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                        let t = a.mul(&rec(m, &rows[1..], &sub_cols));
                        acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                    }
                    acc
                }
            }
        }
        rec(self, &idx, &idx)
    }

    fn det_bareiss(&self) -> MultiPoly {
        let n = self.rows;
        let mut a: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign_neg = false;
        let mut prev = MultiPoly::one(self.nvars);
        for k in 0..n {
            // Full pivoting: choose the nonzero entry with the fewest terms.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let t = a[i][j].len();
                    if t > 0 && best.map_or(true, |b| t < b.2) {
                        best = Some((i, j, t));
                    }
                }
            }
            let (pi, pj, _) = match best {
                Some(b) => b,
                None => return MultiPoly::zero(self.nvars),
            };
            if pi != k {
                a.swap(pi, k);
                sign_neg = !sign_neg;
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                sign_neg = !sign_neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .exact_divide(&prev)
                        .expect("nonzero pivot")
                        .expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        if sign_neg {
            prev.neg()
        } else {
            prev
        }
    }

    /// Adjugate matrix (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(PolyMatrix::from_fn(1, 1, self.nvars, |_, _| MultiPoly::one(self.nvars)));
        }
        let mut out = PolyMatrix::zeros(n, n, self.nvars);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(&[j], &[i]).det()?;
                out.set(i, j, if (i + j) % 2 == 0 { c } else { c.neg() });
            }
        }
        Ok(out)
    }

    /// Evaluates every entry at a point.
    pub fn eval<F: Field>(&self, point: &[F]) -> Option<DenseMatrix<F>> {
        let mut data = Vec::with_capacity(self.entries.len());
        for p in &self.entries {
            data.push(p.eval(point)?);
        }
        Some(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Canonical text: one row per line, entries separated by ` ; `.
    pub fn to_text_with(&self, names: &[String]) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_text_with(names))
                    .collect::<Vec<_>>()
                    .join(" ; ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_text(&self) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        self.to_text_with(&names)
    }
}

/// A dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Ring> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &DenseMatrix<F>) -> DenseMatrix<F> {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    out.data[i * o.cols + j].add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMatrix<F> {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }
}

impl<F: Field> DenseMatrix<F> {
    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = F::one();
        for k in 0..n {
            let p = match (k..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(p) => p,
                None => return F::zero(),
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                det = det.neg();
            }
            let piv = a[k * n + k].clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for i in k + 1..n {
                let f = a[i * n + k].mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a[i * n + j].sub(&f.mul(&a[k * n + j]));
                    a[i * n + j] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<DenseMatrix<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i * n + k].is_zero())?;
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                    inv.swap(p * n + j, k * n + j);
                }
            }
            let piv_inv = a[k * n + k].inv()?;
            for j in 0..n {
                a[k * n + j] = a[k * n + j].mul(&piv_inv);
                inv[k * n + j] = inv[k * n + j].mul(&piv_inv);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * n + k].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a[i * n + j].sub(&f.mul(&a[k * n + j]));
                    a[i * n + j] = v;
                    let w = inv[i * n + j].sub(&f.mul(&inv[k * n + j]));
                    inv[i * n + j] = w;
                }
            }
        }
        Some(DenseMatrix {
            rows: n,
            cols: n,
            data: inv,
        })
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..c {
            if rank == r {
                break;
            }
            let p = match (rank..r).find(|&i| !a[i * c + col].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if p != rank {
                for j in 0..c {
                    a.swap(p * c + j, rank * c + j);
                }
            }
            let inv = a[rank * c + col].inv().expect("nonzero pivot");
            for i in rank + 1..r {
                let f = a[i * c + col].mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in col..c {
                    let v = a[i * c + j].sub(&f.mul(&a[rank * c + j]));
                    a[i * c + j] = v;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl DenseMatrix<BigRational> {
    /// Converts an integer matrix.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: data.iter().map(|&v| <BigRational as Ring>::from_i64(v)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::Fp;

    fn lin(n: usize, coeffs: &[i64]) -> MultiPoly {
        // c0 + c1 x1 + ...
        let mut p = MultiPoly::from_int(n, coeffs[0]);
        for (i, &c) in coeffs[1..].iter().enumerate() {
            p = p.add(&MultiPoly::var(n, i).scale_int(c));
        }
        p
    }

    #[test]
    fn diagonal_determinant() {
        let m = PolyMatrix::from_fn(2, 2, 2, |i, j| if i == j { MultiPoly::var(2, i) } else { MultiPoly::zero(2) });
        assert_eq!(m.det().unwrap(), MultiPoly::var(2, 0).mul(&MultiPoly::var(2, 1)));
    }

    #[test]
    fn bareiss_matches_cofactor_on_5x5() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        let m = PolyMatrix::from_fn(5, 5, 3, |_, _| lin(3, &[next(), next(), next(), next()]));
        assert_eq!(m.det_bareiss(), m.det_cofactor());
    }

    #[test]
    fn non_square_rejected() {
        let m = PolyMatrix::zeros(2, 3, 1);
        assert!(m.det().is_err());
    }

    #[test]
    fn dense_inverse_and_det_over_fp() {
        let m = DenseMatrix::from_fn(3, 3, |i, j| Fp::from_i64(((i * 3 + j) as i64 * 7 + 1) % 5 + (i == j) as i64 * 4));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), DenseMatrix::identity(3));
        let d = m.det();
        assert!(!d.is_zero());
    }

    #[test]
    fn rank_of_rank_one_matrix() {
        let m = DenseMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, -1, -2, -3]);
        assert_eq!(m.rank(), 1);
    }
}
