//! Randomized properties of graph Laplacians and Kirchhoff polynomials.

mod common;

use common::{config, fp_points, graph};
use graphforms::forms::wheel_dual_edge_map;
use graphforms::graphs::{banana, cycle, wheel};
use graphforms::laplacian::{graph_polynomial, laplacian, laplacian_with_basis};
use graphforms::polyring::{Field, Fp, MultiPoly, PolyMatrix, Ring};
use proptest::prelude::*;

/// Drops variable `e` from polynomials that do not involve it.
fn drop_var(p: &MultiPoly, e: usize) -> MultiPoly {
    let n = p.nvars();
    let keep: Vec<usize> = (0..n).filter(|&i| i != e).collect();
    MultiPoly::from_terms(n - 1, p.terms().map(|(m, c)| (c.clone(), keep.iter().map(|&i| m.0[i]).collect())))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn laplacian_determinant_is_the_kirchhoff_polynomial(g in graph(7, 1, 6, true)) {
        prop_assume!(g.edge_count() <= 12);
        prop_assert_eq!(laplacian(&g).unwrap().determinant().unwrap(), graph_polynomial(&g).unwrap());
    }

    #[test]
    fn change_of_cycle_basis_is_unimodular(g in graph(6, 1, 4, false), pick in any::<prop::sample::Index>()) {
        let trees = g.spanning_trees().unwrap();
        let t0 = g.greedy_spanning_tree().unwrap();
        let t1 = &trees[pick.index(trees.len())];
        let h0 = g.cycle_basis_for_tree(&t0).unwrap();
        let h1 = g.cycle_basis_for_tree(t1).unwrap();
        // With H₀ built from T₀, its rows at the edges outside T₀ form the identity,
        // so H₁ = H₀ P with P the rows of H₁ at those edges.
        let outside: Vec<usize> = (0..g.edge_count()).filter(|e| !t0.contains(e)).collect();
        let p: Vec<Vec<i64>> = outside.iter().map(|&e| h1[e].clone()).collect();
        let h = g.loop_number();
        for e in 0..g.edge_count() {
            for c in 0..h {
                let v: i64 = (0..h).map(|k| h0[e][k] * p[k][c]).sum();
                prop_assert_eq!(v, h1[e][c]);
            }
        }
        let pm = PolyMatrix::from_fn(h, h, g.edge_count(), |i, j| MultiPoly::from_int(g.edge_count(), p[i][j]));
        let det = pm.det().unwrap().as_constant().unwrap();
        prop_assert!(det == common::q(1) || det == common::q(-1));
        let l0 = laplacian_with_basis(&g, h0).unwrap();
        let l1 = laplacian_with_basis(&g, h1).unwrap();
        prop_assert_eq!(&pm.transpose().mul(&l0.lambda).mul(&pm), &l1.lambda);
        prop_assert_eq!(l1.determinant().unwrap(), l0.determinant().unwrap());
    }

    #[test]
    fn planar_duals_invert_the_kirchhoff_polynomial(n in 3usize..=6, pts in fp_points(12, 2), wheels in any::<bool>()) {
        let (g, dual, map) = if wheels {
            (wheel(n).unwrap(), wheel(n).unwrap(), wheel_dual_edge_map(n))
        } else {
            (banana(n).unwrap(), cycle(n).unwrap(), (0..n).collect())
        };
        let e = g.edge_count();
        let psi = graph_polynomial(&g).unwrap();
        let psi_dual = graph_polynomial(&dual).unwrap();
        for p in pts {
            let x = &p[..e];
            let inv: Vec<Fp> = x.iter().map(|v| v.inv().unwrap()).collect();
            let mut y = vec![Fp::zero(); e];
            for (edge, &d) in map.iter().enumerate() {
                y[d] = x[edge].clone();
            }
            let prod = x.iter().fold(Fp::one(), |a, v| a.mul(v));
            prop_assert_eq!(psi_dual.eval(&y).unwrap(), psi.eval(&inv).unwrap().mul(&prod));
        }
    }

    #[test]
    fn contraction_and_deletion_of_the_kirchhoff_polynomial(g in graph(6, 1, 4, false), pick in any::<prop::sample::Index>()) {
        let e = pick.index(g.edge_count());
        let psi = graph_polynomial(&g).unwrap();
        let contracted = graph_polynomial(&g.contract(e).unwrap()).unwrap();
        prop_assert_eq!(contracted, drop_var(&psi.substitute_value(e, &common::q(0)), e));
        if !g.bridges().contains(&e) {
            let deleted = graph_polynomial(&g.delete(e).unwrap()).unwrap();
            prop_assert_eq!(deleted, drop_var(&psi.derivative(e), e));
        }
    }
}
