//! Randomized properties of graphs: loop numbers under contraction and
//! deletion, canonical labeling, the matrix-tree theorem and cycle bases.

mod common;

use common::{config, graph};
use graphforms::graphs::{canonical_certificate, has_odd_automorphism};
use graphforms::polyring::DenseMatrix;
use num_rational::BigRational;
use proptest::prelude::*;

fn parity(perm: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn loop_number_under_contraction_and_deletion(g in graph(6, 0, 4, true), pick in any::<prop::sample::Index>()) {
        let e = pick.index(g.edge_count());
        let h = g.loop_number();
        prop_assert_eq!(g.contract(e).unwrap().loop_number(), if g.is_tadpole(e) { h - 1 } else { h });
        if !g.bridges().contains(&e) {
            let deleted = g.delete(e).unwrap();
            prop_assert!(deleted.is_connected());
            prop_assert_eq!(deleted.loop_number(), h - 1);
        }
    }

    #[test]
    fn canonical_key_ignores_labels_and_sign_composes(
        g in graph(6, 1, 5, false),
        vshuffle in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(vshuffle);
        let mut vperm: Vec<usize> = (0..g.vertex_count).collect();
        vperm.shuffle(&mut rng);
        let mut eperm: Vec<usize> = (0..g.edge_count()).collect();
        eperm.shuffle(&mut rng);
        let relabeled = g.relabel(&vperm, &eperm);
        let a = canonical_certificate(&g);
        let b = canonical_certificate(&relabeled);
        prop_assert_eq!(&a.canonical_key, &b.canonical_key);
        prop_assert_eq!(a.canonical_graph(&g), b.canonical_graph(&relabeled));
        if !has_odd_automorphism(&g) {
            // g → relabeled → canonical equals g → canonical up to an even automorphism.
            prop_assert_eq!(a.edge_sign, parity(&eperm) * b.edge_sign);
        }
    }

    #[test]
    fn spanning_tree_count_is_the_reduced_laplacian_determinant(g in graph(6, 0, 5, false)) {
        let inc = g.incidence();
        let v = g.vertex_count;
        let reduced = DenseMatrix::from_fn(v - 1, v - 1, |i, j| {
            let s: i64 = (0..g.edge_count()).map(|e| inc[i][e] * inc[j][e]).sum();
            BigRational::from_integer(s.into())
        });
        let trees = g.spanning_trees().unwrap().len();
        prop_assert_eq!(reduced.det(), BigRational::from_integer(trees.into()));
    }

    #[test]
    fn cycle_bases_are_cycles(g in graph(6, 1, 5, true)) {
        let h = g.cycle_basis().unwrap();
        prop_assert_eq!(h.len(), g.edge_count());
        prop_assert!(h.iter().all(|row| row.len() == g.loop_number()));
        let inc = g.incidence();
        for vertex in &inc {
            for c in 0..g.loop_number() {
                let boundary: i64 = (0..g.edge_count()).map(|e| vertex[e] * h[e][c]).sum();
                prop_assert_eq!(boundary, 0);
            }
        }
    }
}
