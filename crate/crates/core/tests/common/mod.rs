//! Shared proptest strategies: random polynomials, matrices and graphs.

#![allow(dead_code)]

use graphforms::graphs::Graph;
use graphforms::polyring::{Fp, MultiPoly, PolyMatrix, Ring};
use num_rational::BigRational;
use proptest::prelude::*;

/// Cases per property; every property runs on at least this many instances.
pub const CASES: u32 = 24;

pub fn config() -> ProptestConfig {
    ProptestConfig::with_cases(CASES)
}

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Polynomials in `nvars` variables with up to `terms` terms, small integer
/// coefficients and per-variable degree ≤ `deg`.
pub fn poly(nvars: usize, terms: usize, deg: u16) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-6i64..=6, prop::collection::vec(0..=deg, nvars)), 0..=terms)
        .prop_map(move |ts| MultiPoly::from_terms(nvars, ts.into_iter().map(|(c, e)| (q(c), e))))
}

/// `n × n` matrices whose entries are integer linear forms in `nvars`
/// variables (symmetric if requested).
pub fn linear_matrix(n: usize, nvars: usize, symmetric: bool) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, nvars), n * n).prop_map(move |rows| {
        let form = |c: &[i64]| {
            (0..nvars).fold(MultiPoly::zero(nvars), |acc, i| acc.add(&MultiPoly::var(nvars, i).scale_int(c[i])))
        };
        PolyMatrix::from_fn(n, n, nvars, |i, j| {
            let (a, b) = if symmetric && j < i { (j, i) } else { (i, j) };
            form(&rows[a * n + b])
        })
    })
}

/// Nonzero `F_p` points.
pub fn fp_points(nvars: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Fp>>> {
    prop::collection::vec(prop::collection::vec(1i64..1_000_000_007, nvars), count)
        .prop_map(|pts| pts.into_iter().map(|p| p.into_iter().map(Fp::from_i64).collect()).collect())
}

/// Connected multigraphs: a random spanning tree on `v ∈ [2, max_v]`
/// vertices plus `extra ∈ [min_extra, max_extra]` random edges. Tadpoles
/// appear only when `tadpoles` is set.
pub fn graph(max_v: usize, min_extra: usize, max_extra: usize, tadpoles: bool) -> impl Strategy<Value = Graph> {
    (2..=max_v)
        .prop_flat_map(move |v| {
            (
                Just(v),
                prop::collection::vec(any::<prop::sample::Index>(), v - 1),
                prop::collection::vec((0..v, 0..v), min_extra..=max_extra),
                any::<bool>(),
            )
        })
        .prop_map(move |(v, parents, extra, flip)| {
            let mut edges: Vec<(usize, usize)> = (1..v).map(|i| (parents[i - 1].index(i), i)).collect();
            for (a, b) in extra {
                if a == b && !tadpoles {
                    edges.push((a, (a + 1) % v));
                } else {
                    edges.push((a, b));
                }
            }
            if flip {
                edges.reverse();
            }
            Graph::new(v, edges).expect("valid graph")
        })
}

/// Loop number `h ≥ min_h` subset of [`graph`] without tadpoles.
pub fn graph_with_loops(max_v: usize, min_h: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    graph(max_v, min_h, max_extra, false).prop_filter("enough loops", move |g| g.loop_number() >= min_h)
}
