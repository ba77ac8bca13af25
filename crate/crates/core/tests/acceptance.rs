//! End-to-end acceptance run: one `PASS`/`FAIL` line per criterion.
//!
//! Criteria 1–13 are blocking; criterion 14 (the `K_6` and `W_7` integrals)
//! is a stretch target whose result is reported but never fails the run.
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

use graphforms::forms::{
    canonical_form, check_fixture_closed_form, identity_checks, maurer_cartan_trace, maurer_cartan_trace_at,
    random_points, CanonicalFormSpec, DiffForm,
};
use graphforms::graphcomplex::{check_differentials_square_to_zero, differential_d, table1_value, GraphChain, HomologyTable};
use graphforms::graphs::{fixture, wheel, Graph};
use graphforms::integrate::{
    integrate, integrate_sampled, reference_integral, stokes_residual, wheel_moment, HighPrecision, IntegralEstimate,
    ReferenceConstants, Sampler,
};
use graphforms::laplacian::{graph_matrix, graph_polynomial, laplacian};
use graphforms::polyring::{Fp, MultiPoly, PolyMatrix};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Relative tolerances and sample counts, pinned.
const W3_TOL: f64 = 0.005;
const W3_SAMPLES: u64 = 10_000_000;
const W5_Z5_TOL: f64 = 0.01;
const W5_Z5_SAMPLES: u64 = 2_000_000;
const T5_SAMPLES: u64 = 1_000_000;
const STOKES_SAMPLES: u64 = 200_000;
const K6_TOL: f64 = 0.05;
const K6_SAMPLES: u64 = 2_000_000;
const W7_TOL: f64 = 0.02;
const W7_SAMPLES: u64 = 2_000_000;
/// Exact random points for point-certified closed forms.
const CLOSED_FORM_POINTS: usize = 40;
/// Randomized instances per property family.
const PROPERTY_INSTANCES: usize = 20;
/// Digits of agreement for the analytic wheel-series check.
const SERIES_DIGITS: u32 = 12;
const SEED: u64 = 2024;

const PSI_W3: &str = "x1*x2*x3 + x1*x2*x4 + x1*x2*x5 + x1*x3*x4 + x1*x3*x6 + x1*x4*x5 + x1*x4*x6 + x1*x5*x6 \
    + x2*x3*x5 + x2*x3*x6 + x2*x4*x5 + x2*x4*x6 + x2*x5*x6 + x3*x4*x5 + x3*x4*x6 + x3*x5*x6";

struct Report {
    blocking_failures: Vec<u32>,
}

impl Report {
    fn line(&mut self, n: u32, name: &str, passed: bool, detail: impl AsRef<str>, elapsed: Duration, stretch: bool) {
        let status = if passed { "PASS" } else { "FAIL" };
        let kind = if stretch { " (stretch)" } else { "" };
        println!("criterion {n:>2}  {status}  {name}{kind}: {} [{:.1} s]", detail.as_ref(), elapsed.as_secs_f64());
        if !passed && !stretch {
            self.blocking_failures.push(n);
        }
    }
}

fn spec(text: &str) -> CanonicalFormSpec {
    CanonicalFormSpec::parse(text).unwrap()
}

fn target(name: &str, s: &str) -> f64 {
    reference_integral(name, &spec(s)).expect("reference value").0.to_f64()
}

fn describe(e: &IntegralEstimate, target: f64) -> String {
    format!("{:.4} ± {:.4} vs {target:.4} ({:+.3}%)", e.value, e.std_error, 100.0 * (e.value - target) / target)
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// A connected graph: random spanning tree on `v` vertices plus `extra` edges, no tadpoles.
fn random_graph(rng: &mut ChaCha8Rng, v: usize, extra: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..v).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..extra {
        let a = rng.gen_range(0..v);
        let b = (a + rng.gen_range(1..v)) % v;
        edges.push((a, b));
    }
    Graph::new(v, edges).unwrap()
}

/// Random `n × n` matrix of integer linear forms in `nvars` variables.
fn random_matrix(rng: &mut ChaCha8Rng, n: usize, nvars: usize, symmetric: bool) -> PolyMatrix {
    let forms: Vec<MultiPoly> = (0..n * n)
        .map(|_| (0..nvars).fold(MultiPoly::zero(nvars), |acc, i| acc.add(&MultiPoly::var(nvars, i).scale_int(rng.gen_range(-3..=3)))))
        .collect();
    PolyMatrix::from_fn(n, n, nvars, |i, j| {
        let (a, b) = if symmetric && j < i { (j, i) } else { (i, j) };
        forms[a * n + b].clone()
    })
}

fn criterion_1(r: &mut Report) {
    let t = Instant::now();
    let w3 = wheel(3).unwrap();
    let expected = MultiPoly::parse(6, PSI_W3).unwrap();
    let psi = graph_polynomial(&w3).unwrap();
    let ok = psi == expected
        && expected.terms().count() == 16
        && laplacian(&w3).unwrap().determinant().unwrap() == expected
        && graph_matrix(&w3).unwrap().det().unwrap() == expected;
    let el = t.elapsed();
    r.line(1, "Ψ(W3), det Λ, det M", ok && el < Duration::from_secs(1), "16 monomials, runtime < 1 s", el, false);
}

fn criterion_2(r: &mut Report) {
    let t = Instant::now();
    let v = |i| MultiPoly::var(4, i);
    let x = PolyMatrix::from_fn(2, 2, 4, |i, j| match (i, j) {
        (0, 0) => v(0),
        (0, 1) => v(2),
        (1, 0) => v(3),
        _ => v(1),
    });
    let b3 = maurer_cartan_trace(&x, 3).unwrap();
    let ok3 = b3.equals(&DiffForm::omega(4, x.det().unwrap()).mul_section(&MultiPoly::from_int(4, 3), 2));
    let idx = [[0, 3, 4], [3, 1, 5], [4, 5, 2]];
    let s = PolyMatrix::from_fn(3, 3, 6, |i, j| MultiPoly::var(6, idx[i][j]));
    let b5 = maurer_cartan_trace(&s, 5).unwrap();
    let ok5 = b5.equals(&DiffForm::omega(6, s.det().unwrap()).mul_section(&MultiPoly::from_int(6, -10), 2));
    r.line(2, "β³ generic 2×2, β⁵ symmetric 3×3", ok3 && ok5, "3·Ω/det², −10·Ω/det²", t.elapsed(), false);
}

fn criterion_3(r: &mut Report) {
    let t = Instant::now();
    let w3 = fixture("W3").unwrap();
    let form = canonical_form(&w3, &spec("1")).unwrap().reduce();
    let ratio = form.ratio_to_omega();
    let ok_w3 = form.base() == &graph_polynomial(&w3).unwrap()
        && ratio.is_some_and(|s| s.exponent == 2 && s.numerator == MultiPoly::from_int(6, 10));
    let w5 = check_fixture_closed_form("W5", &spec("2"), CLOSED_FORM_POINTS, SEED).unwrap();
    let k6 = check_fixture_closed_form("K6", &spec("1,2"), CLOSED_FORM_POINTS, SEED).unwrap();
    let detail = format!("W3 symbolic {}; W5: {}; K6: {}", if ok_w3 { "exact" } else { "mismatch" }, w5.detail, k6.detail);
    r.line(3, "closed forms W3, W5, K6", ok_w3 && w5.passed && k6.passed, detail, t.elapsed(), false);
}

fn criterion_4(r: &mut Report) {
    let t = Instant::now();
    let w7 = check_fixture_closed_form("W7", &spec("3"), CLOSED_FORM_POINTS, SEED).unwrap();
    let el = t.elapsed();
    r.line(4, "ω¹³ on W7", w7.passed && el < Duration::from_secs(600), &w7.detail, el, false);
}

fn criterion_5(r: &mut Report) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    // Trace vanishing and projective invariance on random matrices.
    for i in 0..PROPERTY_INSTANCES {
        let x = random_matrix(&mut rng, 3, 8, false);
        let s = random_matrix(&mut rng, 3, 8, true);
        let small = random_matrix(&mut rng, 2, 8, false);
        let scaled = x.map(8, |p| p.mul(&MultiPoly::var(8, 7)));
        for p in random_points::<Fp>(8, 2, SEED + i as u64) {
            let at = |m: &PolyMatrix, n| maurer_cartan_trace_at(m, n, &p).ok();
            let (Some(b2), Some(b3), Some(s3), Some(b5), Some(sm5)) = (at(&x, 2), at(&x, 3), at(&s, 3), at(&x, 5), at(&small, 5))
            else {
                continue;
            };
            if !b2.is_zero() || !s3.is_zero() || !sm5.is_zero() {
                failures.push(format!("trace vanishing #{i}"));
            }
            if at(&scaled, 3) != Some(b3) || at(&scaled, 5) != Some(b5) {
                failures.push(format!("projective invariance #{i}"));
            }
        }
    }
    // Graph-form identities (restriction, series, parallel, join, duality,
    // vanishing, routes, automorphisms) and pole order on random graphs.
    let mut graphs = 0;
    while graphs < PROPERTY_INSTANCES {
        let v = rng.gen_range(3..=5);
        let extra = rng.gen_range(3..=4);
        let g = random_graph(&mut rng, v, extra);
        if g.loop_number() < 3 {
            continue;
        }
        graphs += 1;
        let report = identity_checks(&g, SEED + graphs as u64).unwrap();
        for c in report.checks.iter().filter(|c| !c.passed) {
            failures.push(format!("{} on {}", c.name, g.to_json()));
        }
        if g.edge_count() <= 7 && canonical_form(&g, &spec("1")).unwrap().reduce().max_exponent() > 2 {
            failures.push(format!("pole order on {}", g.to_json()));
        }
    }
    for w in [3usize, 4, 5] {
        let report = identity_checks(&wheel(w).unwrap(), SEED).unwrap();
        failures.extend(report.checks.iter().filter(|c| !c.passed).map(|c| format!("{} on W{w}", c.name)));
    }
    let detail = if failures.is_empty() {
        format!("{PROPERTY_INSTANCES} matrices and {PROPERTY_INSTANCES} graphs per family, zero failures")
    } else {
        failures.join("; ")
    };
    r.line(5, "property suite", failures.is_empty(), detail, t.elapsed(), false);
}

fn criterion_6(r: &mut Report) {
    let t = Instant::now();
    let checks: Vec<_> = (1..=5).flat_map(check_differentials_square_to_zero).collect();
    let ok = checks.iter().all(|c| c.d_squared_zero && c.delta_squared_zero);
    r.line(6, "d² = 0 and δ² = 0, h ≤ 5", ok, format!("{} strata", checks.len()), t.elapsed(), false);
}

fn criterion_7(r: &mut Report) {
    let t = Instant::now();
    let table = HomologyTable::compute(6).unwrap();
    let mismatches: Vec<String> = table
        .columns
        .iter()
        .flat_map(|c| {
            let degrees: Vec<i64> = c.chain_dims.keys().copied().collect();
            degrees.into_iter().filter(move |&n| c.dim(n) != table1_value(c.h, n)).map(move |n| format!("h={} n={n}", c.h))
        })
        .collect();
    let detail = if mismatches.is_empty() { "h = 1…6 matches the reference table".into() } else { mismatches.join(", ") };
    r.line(7, "homology h ≤ 6", mismatches.is_empty(), detail, t.elapsed(), false);
}

fn criterion_8(r: &mut Report) {
    let t = Instant::now();
    let expected = GraphChain::from_graph(&fixture("Z5").unwrap())
        .scale(&q(2))
        .sub(&GraphChain::from_graph(&fixture("W5").unwrap()));
    let ok = differential_d(&GraphChain::from_graph(&fixture("X5").unwrap())) == expected;
    r.line(8, "dX5 = 2·Z5 − W5", ok, "exact chain identity", t.elapsed(), false);
}

fn criterion_9(r: &mut Report) {
    let t = Instant::now();
    let tg = target("W3", "1");
    let e = integrate(&fixture("W3").unwrap(), &spec("1"), Sampler::Hepp, W3_SAMPLES, SEED).unwrap();
    r.line(9, "I(W3) = 60 ζ(3)", e.within(tg, W3_TOL), describe(&e, tg), t.elapsed(), false);
}

fn criterion_10(r: &mut Report) {
    let t = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for name in ["W5", "Z5"] {
        let tg = target(name, "2");
        let e = integrate(&fixture(name).unwrap(), &spec("2"), Sampler::Hepp, W5_Z5_SAMPLES, SEED).unwrap();
        ok &= e.within(tg, W5_Z5_TOL);
        details.push(format!("{name}: {}", describe(&e, tg)));
    }
    r.line(10, "I(W5) = 1260 ζ(5), I(Z5) = 630 ζ(5)", ok, details.join("; "), t.elapsed(), false);
}

fn criterion_11(r: &mut Report) {
    let t = Instant::now();
    let t5 = fixture("T5").unwrap();
    let exact = integrate(&t5, &spec("2"), Sampler::Hepp, T5_SAMPLES, SEED).unwrap();
    let sampled = integrate_sampled(&t5, &spec("2"), Sampler::Hepp, T5_SAMPLES, SEED).unwrap();
    let ok = exact.value == 0.0 && sampled.value.abs() <= 3.0 * sampled.std_error;
    let detail = format!("sampled {:.3} ± {:.3}; short-circuit value {}", sampled.value, sampled.std_error, exact.value);
    r.line(11, "I(T5) = 0", ok, detail, t.elapsed(), false);
}

fn criterion_12(r: &mut Report) {
    let t = Instant::now();
    let x5 = stokes_residual(&fixture("X5").unwrap(), &spec("2"), Sampler::Hepp, STOKES_SAMPLES, SEED).unwrap();
    let g7 = fixture("W3").unwrap().subdivide(0).unwrap();
    let s7 = stokes_residual(&g7, &spec("1"), Sampler::Hepp, STOKES_SAMPLES, SEED).unwrap();
    let ok = x5.consistent_with_zero() && s7.consistent_with_zero() && g7.edge_count() == 7 && !g7.has_tadpole();
    let detail = format!(
        "X5 [2]: {:.3} ± {:.3}; subdivided W3 [1]: {:.4} ± {:.4}",
        x5.residual, x5.std_error, s7.residual, s7.std_error
    );
    r.line(12, "Stokes residuals", ok, detail, t.elapsed(), false);
}

fn criterion_13(r: &mut Report) {
    let t = Instant::now();
    let c = ReferenceConstants::get();
    let m = |n, k, a| wheel_moment(n, k).unwrap().scale(a).0;
    let w5 = HighPrecision(m(2, 0, 18) + m(2, 1, 18 * 12));
    let w7 = HighPrecision(m(3, 0, 26) + m(3, 1, 26 * 60) + m(3, 2, 26 * 360));
    let ok5 = w5.agrees_with(&c.zeta5.scale(1260), SERIES_DIGITS);
    let ok7 = w7.agrees_with(&c.zeta7.scale(24024), SERIES_DIGITS);
    let el = t.elapsed();
    let detail = format!("{} vs 1260 ζ(5); {} vs 24024 ζ(7)", w5.to_decimal(15), w7.to_decimal(15));
    r.line(13, "wheel series", ok5 && ok7 && el < Duration::from_secs(1), detail, el, false);
}

fn criterion_14(r: &mut Report) {
    let t = Instant::now();
    let tg = target("K6", "1,2");
    let k6 = integrate(&fixture("K6").unwrap(), &spec("1,2"), Sampler::Hepp, K6_SAMPLES, SEED).unwrap();
    r.line(14, "I(K6) ≈ 1708.19 within 5%", k6.within(tg, K6_TOL), describe(&k6, tg), t.elapsed(), true);
    let t = Instant::now();
    let tg = target("W7", "3");
    let w7 = integrate(&fixture("W7").unwrap(), &spec("3"), Sampler::Hepp, W7_SAMPLES, SEED).unwrap();
    r.line(14, "I(W7) ≈ 24024 ζ(7) within 2%", w7.within(tg, W7_TOL), describe(&w7, tg), t.elapsed(), true);
}

#[test]
fn acceptance() {
    let mut r = Report { blocking_failures: Vec::new() };
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    criterion_11(&mut r);
    criterion_12(&mut r);
    criterion_13(&mut r);
    criterion_14(&mut r);
    assert!(r.blocking_failures.is_empty(), "failed criteria: {:?}", r.blocking_failures);
}
