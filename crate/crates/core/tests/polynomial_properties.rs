//! Randomized properties of exact polynomial arithmetic and polynomial
//! determinants.

mod common;

use common::{config, poly};
use graphforms::polyring::{MultiPoly, PolyMatrix};
use proptest::prelude::*;

const N: usize = 3;

fn matrix(entries: &[MultiPoly], n: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n, n, N, |i, j| entries[i * n + j].clone())
}

fn entries(n: usize) -> impl Strategy<Value = Vec<MultiPoly>> {
    prop::collection::vec(poly(N, 3, 2), n * n)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(a in poly(N, 5, 3), b in poly(N, 5, 3), c in poly(N, 5, 3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&MultiPoly::one(N)), a.clone());
    }

    #[test]
    fn exact_division_recovers_the_factor(a in poly(N, 5, 3), b in poly(N, 4, 2)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).exact_divide(&b).unwrap(), Some(a));
    }

    #[test]
    fn determinant_is_alternating(m in entries(3), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let swapped: Vec<MultiPoly> = (0..9)
            .map(|k| {
                let (r, c) = (k / 3, k % 3);
                let r = if r == i { j } else if r == j { i } else { r };
                m[r * 3 + c].clone()
            })
            .collect();
        let det = matrix(&m, 3).det().unwrap();
        prop_assert_eq!(matrix(&swapped, 3).det().unwrap(), det.neg());
        let repeated: Vec<MultiPoly> = (0..9).map(|k| m[if k / 3 == j { i * 3 + k % 3 } else { k }].clone()).collect();
        prop_assert!(matrix(&repeated, 3).det().unwrap().is_zero());
        prop_assert_eq!(matrix(&m, 3).det_cofactor(), det);
    }

    #[test]
    fn determinant_is_multilinear_in_rows(m in entries(3), extra in prop::collection::vec(poly(N, 3, 2), 3), row in 0usize..3, s in -4i64..=4) {
        let with_row = |r: &[MultiPoly]| -> Vec<MultiPoly> {
            (0..9).map(|k| if k / 3 == row { r[k % 3].clone() } else { m[k].clone() }).collect()
        };
        let original: Vec<MultiPoly> = (0..3).map(|c| m[row * 3 + c].clone()).collect();
        let combined: Vec<MultiPoly> = (0..3).map(|c| original[c].add(&extra[c].scale_int(s))).collect();
        let lhs = matrix(&with_row(&combined), 3).det().unwrap();
        let rhs = matrix(&with_row(&original), 3).det().unwrap().add(&matrix(&with_row(&extra), 3).det().unwrap().scale_int(s));
        prop_assert_eq!(lhs, rhs);
    }
}
