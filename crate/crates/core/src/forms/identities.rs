//! Point-evaluation checks of the functorial identities satisfied by
//! canonical graph forms: duality, series and parallel edges, one-vertex
//! joins, restriction to faces, automorphism invariance, route equivalence
//! and the vanishing criteria.
//!
//! All checks evaluate both sides exactly over `F_p` (`p = 2⁶¹ − 1`) at
//! pseudo-random points; a polynomial identity of degree `d` that fails is
//! detected at each point with probability at least `1 − d/p`.

use super::canonical::{canonical_form_at, CanonicalFormSpec, Route};
use super::values::FormValues;
use super::{mask_indices, Mask};
use crate::error::{Error, Result};
use crate::graphs::{automorphisms, canonical_certificate, wheel, Graph};
use crate::polyring::{DenseMatrix, Field, Fp, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// All identity checks run on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub graph: Graph,
    pub checks: Vec<CheckResult>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("{:<28} {}  {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `count` points with coordinates drawn uniformly from `1..2³¹`,
/// reproducible from `seed`.
pub fn random_points<F: Field>(nvars: usize, count: usize, seed: u64) -> Vec<Vec<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..nvars).map(|_| F::from_i64(rng.gen_range(1..(1i64 << 31)))).collect())
        .collect()
}

/// Edge correspondence between `W_n` and its planar dual (again `W_n`):
/// `map[e]` is the dual edge crossing edge `e`.
///
/// Rim edge `i` joins rim vertices `i` and `i + 1`; spoke `n + j` joins the
/// hub to rim vertex `j − 1` (indices mod `n`).
pub fn wheel_dual_edge_map(n: usize) -> Vec<usize> {
    let mut map = vec![0; 2 * n];
    for i in 0..n {
        map[i] = n + (i + 1) % n;
        // The spoke to rim vertex i separates the triangles on rim edges i − 1 and i.
        map[n + (i + 1) % n] = (i + n - 1) % n;
    }
    map
}

fn spec_for(k: u32) -> Result<CanonicalFormSpec> {
    CanonicalFormSpec::primitive(k)
}

fn first_difference<F: Field>(a: &FormValues<F>, b: &FormValues<F>) -> Option<Mask> {
    let diff = a.minus(b);
    diff.components().keys().next().copied()
}

fn describe(mask: Mask) -> String {
    let idx: Vec<String> = mask_indices(mask).iter().map(|i| (i + 1).to_string()).collect();
    format!("component dx[{}] differs", idx.join(" "))
}

/// Compares two sides at every point, counting the points where both vanish.
fn compare_points(
    name: &str,
    points: &[Vec<Fp>],
    mut sides: impl FnMut(&[Fp]) -> Result<(FormValues<Fp>, FormValues<Fp>)>,
) -> Result<CheckResult> {
    let mut zero = 0;
    for (i, p) in points.iter().enumerate() {
        let (lhs, rhs) = sides(p)?;
        if let Some(m) = first_difference(&lhs, &rhs) {
            return Ok(CheckResult::new(name, false, format!("point {i}: {}", describe(m))));
        }
        if lhs.is_zero() {
            zero += 1;
        }
    }
    let detail = if zero == points.len() {
        format!("{} points, both sides vanish", points.len())
    } else {
        format!("{} points agree", points.len())
    };
    Ok(CheckResult::new(name, true, detail))
}

/// Duality `ω_G = i*ω_{G∨}` with `i: x ↦ 1/x`, where `edge_map[e]` is the
/// edge of `dual` corresponding to edge `e` of `g`.
pub fn check_duality(g: &Graph, dual: &Graph, edge_map: &[usize], k: u32, points: &[Vec<Fp>]) -> Result<CheckResult> {
    let e = g.edge_count();
    if dual.edge_count() != e || edge_map.len() != e {
        return Err(Error::InvalidArgument("dual graph must have the same number of edges".into()));
    }
    let mut inverse = vec![usize::MAX; e];
    for (i, &j) in edge_map.iter().enumerate() {
        if j >= e || inverse[j] != usize::MAX {
            return Err(Error::InvalidArgument("edge map is not a permutation".into()));
        }
        inverse[j] = i;
    }
    let spec = spec_for(k)?;
    compare_points("duality", points, |x| {
        let lhs = canonical_form_at(g, &spec, x, Route::Auto)?;
        let inv_x: Vec<Fp> = x.iter().map(|v| v.inv().ok_or(Error::Pole)).collect::<Result<_>>()?;
        let mut y = vec![Fp::zero(); e];
        for i in 0..e {
            y[edge_map[i]] = inv_x[i];
        }
        let on_dual = canonical_form_at(dual, &spec, &y, Route::Auto)?.remap(e, &inverse);
        let jac = DenseMatrix::from_fn(e, e, |a, b| if a == b { inv_x[a].mul(&inv_x[a]).neg() } else { Fp::zero() });
        Ok((lhs, on_dual.pullback(&jac)))
    })
}

/// Series: subdividing edge `e` pulls the form back along `x_e ↦ x_e + x_new`.
pub fn check_series(g: &Graph, e: usize, k: u32, points: &[Vec<Fp>]) -> Result<CheckResult> {
    let g2 = g.subdivide(e)?;
    let n = g.edge_count();
    let spec = spec_for(k)?;
    compare_points("series", points, |y| {
        let lhs = canonical_form_at(&g2, &spec, y, Route::Auto)?;
        let mut x = y[..n].to_vec();
        x[e] = y[e].add(&y[n]);
        let jac = DenseMatrix::from_fn(n, n + 1, |a, b| if a == b || (a == e && b == n) { Fp::one() } else { Fp::zero() });
        let rhs = canonical_form_at(g, &spec, &x, Route::Auto)?.pullback(&jac);
        Ok((lhs, rhs))
    })
}

/// Parallel: doubling edge `e` pulls the form back along
/// `x_e ↦ (x_e⁻¹ + x_new⁻¹)⁻¹`.
pub fn check_parallel(g: &Graph, e: usize, k: u32, points: &[Vec<Fp>]) -> Result<CheckResult> {
    let g2 = g.double_edge(e)?;
    let n = g.edge_count();
    let spec = spec_for(k)?;
    compare_points("parallel", points, |y| {
        let lhs = canonical_form_at(&g2, &spec, y, Route::Auto)?;
        let (a, b) = (y[e], y[n]);
        let s_inv = a.add(&b).inv().ok_or(Error::Pole)?;
        let mut x = y[..n].to_vec();
        x[e] = a.mul(&b).mul(&s_inv);
        let s2 = s_inv.mul(&s_inv);
        let jac = DenseMatrix::from_fn(n, n + 1, |r, c| {
            if r == e && c == e {
                b.mul(&b).mul(&s2)
            } else if r == e && c == n {
                a.mul(&a).mul(&s2)
            } else if r == c {
                Fp::one()
            } else {
                Fp::zero()
            }
        });
        let rhs = canonical_form_at(g, &spec, &x, Route::Auto)?.pullback(&jac);
        Ok((lhs, rhs))
    })
}

/// One-vertex join: the form of `g1 ∨ g2` is the sum of the forms of the parts.
pub fn check_one_vertex_join(g1: &Graph, a: usize, g2: &Graph, b: usize, k: u32, points: &[Vec<Fp>]) -> Result<CheckResult> {
    let joined = g1.one_vertex_join(a, g2, b);
    let (e1, e2) = (g1.edge_count(), g2.edge_count());
    let spec = spec_for(k)?;
    let first: Vec<usize> = (0..e1).collect();
    let second: Vec<usize> = (e1..e1 + e2).collect();
    compare_points("one-vertex join", points, |x| {
        let lhs = canonical_form_at(&joined, &spec, x, Route::Auto)?;
        let p1 = canonical_form_at(g1, &spec, &x[..e1], Route::Auto)?.remap(e1 + e2, &first);
        let p2 = canonical_form_at(g2, &spec, &x[e1..], Route::Auto)?.remap(e1 + e2, &second);
        Ok((lhs, p1.plus(&p2)))
    })
}

/// Restriction to the face `x_e = 0` of a non-tadpole edge equals the form
/// of the contraction `G/e`.
pub fn check_restriction(g: &Graph, e: usize, k: u32, points: &[Vec<Fp>]) -> Result<CheckResult> {
    if g.is_tadpole(e) {
        return Err(Error::InvalidArgument(format!("edge {} is a tadpole", e + 1)));
    }
    let contracted = g.contract(e)?;
    let n = g.edge_count();
    let spec = spec_for(k)?;
    compare_points("restriction", points, |x| {
        let mut full = x.to_vec();
        full[e] = Fp::zero();
        let values = canonical_form_at(g, &spec, &full, Route::Lambda)?;
        let mut restricted = FormValues::zero(n - 1, values.degree);
        for (&m, v) in values.components() {
            if m & (1 << e) == 0 {
                let low = m & ((1 << e) - 1);
                let high = (m >> (e + 1)) << e;
                restricted.add(low | high, *v);
            }
        }
        let mut reduced = x.to_vec();
        reduced.remove(e);
        let rhs = canonical_form_at(&contracted, &spec, &reduced, Route::Lambda)?;
        Ok((restricted, rhs))
    })
}

/// Invariance under every automorphism of the graph, acting on edge variables.
pub fn check_automorphism_invariance(g: &Graph, k: u32, points: &[Vec<Fp>]) -> Result<CheckResult> {
    let spec = spec_for(k)?;
    let e = g.edge_count();
    let autos = automorphisms(g);
    let count = autos.len();
    let mut result = compare_points("automorphisms", points, |x| {
        let base = canonical_form_at(g, &spec, x, Route::Auto)?;
        for (_, eperm) in &autos {
            let mut moved = vec![Fp::zero(); e];
            for i in 0..e {
                moved[eperm[i]] = x[i];
            }
            let lhs = canonical_form_at(g, &spec, &moved, Route::Auto)?;
            let rhs = base.remap(e, eperm);
            if first_difference(&lhs, &rhs).is_some() {
                return Ok((lhs, rhs));
            }
        }
        Ok((base.clone(), base))
    })?;
    result.detail = format!("{count} automorphisms, {}", result.detail);
    Ok(result)
}

/// All construction routes give the same values.
pub fn check_route_equivalence(g: &Graph, k: u32, points: &[Vec<Fp>]) -> Result<CheckResult> {
    let spec = spec_for(k)?;
    let mut checked = 0;
    for (i, x) in points.iter().enumerate() {
        let base = canonical_form_at(g, &spec, x, Route::Lambda)?;
        for route in [Route::DualLaplacian, Route::GraphMatrix, Route::Dodgson] {
            let other = canonical_form_at(g, &spec, x, route)?;
            if let Some(m) = first_difference(&base, &other) {
                return Ok(CheckResult::new("routes", false, format!("point {i}, {route:?}: {}", describe(m))));
            }
            checked += 1;
        }
    }
    Ok(CheckResult::new("routes", true, format!("{checked} route comparisons agree")))
}

/// Reason (if any) why every canonical form of the given degree vanishes
/// identically on `g`, by degree counting and the vanishing criteria for
/// graphs with `degree + 1` edges.
pub fn vanishing_reason(g: &Graph, spec: &CanonicalFormSpec) -> Option<String> {
    if spec.is_unit() {
        return None;
    }
    let e = g.edge_count();
    let h = g.loop_number();
    let degree = spec.degree();
    if degree >= e {
        return Some(format!("degree {degree} projective form in {e} variables"));
    }
    if let Some(&k) = spec.indices().iter().find(|&&k| 4 * k as usize + 1 >= 2 * h) {
        return Some(format!("β^{} vanishes on {h}×{h} matrices", 4 * k + 1));
    }
    if e != degree + 1 || !g.is_connected() {
        return None;
    }
    if g.min_degree() <= 2 {
        return Some("vertex of degree ≤ 2".into());
    }
    if g.has_multiple_edge() {
        return Some("multiple edge".into());
    }
    if g.has_tadpole() {
        return Some("tadpole".into());
    }
    if g.is_one_vertex_reducible() {
        return Some("one-vertex reducible".into());
    }
    let three_regular = g.degrees().iter().all(|&d| d == 3);
    if 3 * h < e + 3 || (!three_regular && 3 * h == e + 3) {
        return Some(format!("loop number {h} too small for {e} edges"));
    }
    None
}

/// Checks that a graph flagged by [`vanishing_reason`] has a vanishing form.
pub fn check_vanishing(g: &Graph, spec: &CanonicalFormSpec, points: &[Vec<Fp>]) -> Result<CheckResult> {
    let Some(reason) = vanishing_reason(g, spec) else {
        return Ok(CheckResult::new("vanishing", true, "no vanishing criterion applies"));
    };
    for (i, x) in points.iter().enumerate() {
        let v = canonical_form_at(g, spec, x, Route::Auto)?;
        if let Some(m) = v.components().keys().next() {
            return Ok(CheckResult::new("vanishing", false, format!("{reason}, but at point {i} {}", describe(*m))));
        }
    }
    Ok(CheckResult::new("vanishing", true, format!("{reason}; zero at {} points", points.len())))
}

/// Dual graph and edge map when `g` is isomorphic to a wheel.
fn wheel_dual(g: &Graph) -> Option<(Graph, Vec<usize>)> {
    let n = g.vertex_count.checked_sub(1)?;
    if n < 3 || g.edge_count() != 2 * n {
        return None;
    }
    let w = wheel(n).ok()?;
    let cg = canonical_certificate(g);
    let cw = canonical_certificate(&w);
    if cg.canonical_key != cw.canonical_key {
        return None;
    }
    let mut canon_to_w = vec![0; 2 * n];
    for (j, &p) in cw.edge_map.iter().enumerate() {
        canon_to_w[p] = j;
    }
    let dual_map = wheel_dual_edge_map(n);
    let map = cg.edge_map.iter().map(|&p| dual_map[canon_to_w[p]]).collect();
    Some((w, map))
}

/// Runs every applicable identity check on `g` for `ω⁵` (and `ω⁹` when the
/// graph has enough edges), at a few pseudo-random points.
pub fn identity_checks(g: &Graph, seed: u64) -> Result<IdentityReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let e = g.edge_count();
    let mut checks = Vec::new();
    let ks: Vec<u32> = [1u32, 2].into_iter().filter(|&k| k == 1 || 4 * k as usize + 1 < e).collect();
    for k in ks {
        let tag = |c: CheckResult| CheckResult::new(format!("{} (ω^{})", c.name, 4 * k + 1), c.passed, c.detail);
        let pts = random_points::<Fp>(e, 3, seed.wrapping_add(k as u64));
        let pts_plus = random_points::<Fp>(e + 1, 3, seed.wrapping_add(100 + k as u64));
        checks.push(tag(check_route_equivalence(g, k, &pts)?));
        checks.push(tag(check_automorphism_invariance(g, k, &pts)?));
        if let Some(edge) = (0..e).find(|&i| !g.is_tadpole(i)) {
            checks.push(tag(check_restriction(g, edge, k, &pts)?));
        }
        checks.push(tag(check_series(g, 0, k, &pts_plus)?));
        checks.push(tag(check_parallel(g, 0, k, &pts_plus)?));
        let w3 = wheel(3)?;
        let join_pts = random_points::<Fp>(e + 6, 3, seed.wrapping_add(200 + k as u64));
        checks.push(tag(check_one_vertex_join(g, 0, &w3, 0, k, &join_pts)?));
        if let Some((dual, map)) = wheel_dual(g) {
            checks.push(tag(check_duality(g, &dual, &map, k, &pts)?));
        }
        checks.push(tag(check_vanishing(g, &spec_for(k)?, &pts)?));
    }
    Ok(IdentityReport { graph: g.clone(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{banana, complete_graph, cycle, fixture};

    fn pts(n: usize, seed: u64) -> Vec<Vec<Fp>> {
        random_points(n, 3, seed)
    }

    #[test]
    fn wheels_are_self_dual() {
        for n in [3, 4, 5] {
            let w = wheel(n).unwrap();
            let k = if n == 5 { 2 } else { 1 };
            let r = check_duality(&w, &w, &wheel_dual_edge_map(n), k, &pts(2 * n, 1)).unwrap();
            assert!(r.passed, "W{n}: {}", r.detail);
        }
    }

    #[test]
    fn wrong_dual_map_is_detected() {
        let w = wheel(4).unwrap();
        let ident: Vec<usize> = (0..8).collect();
        assert!(!check_duality(&w, &w, &ident, 1, &pts(8, 2)).unwrap().passed);
    }

    #[test]
    fn banana_and_cycle_are_dual() {
        let r = check_duality(&banana(6).unwrap(), &cycle(6).unwrap(), &(0..6).collect::<Vec<_>>(), 1, &pts(6, 3)).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn series_parallel_join_restriction_on_fixtures() {
        let k4 = complete_graph(4).unwrap();
        assert!(check_series(&k4, 2, 1, &pts(7, 4)).unwrap().passed);
        assert!(check_parallel(&k4, 2, 1, &pts(7, 5)).unwrap().passed);
        let w3 = wheel(3).unwrap();
        assert!(check_one_vertex_join(&w3, 1, &w3, 2, 1, &pts(12, 6)).unwrap().passed);
        let z5 = fixture("Z5").unwrap();
        assert!(check_restriction(&z5, 3, 1, &pts(10, 7)).unwrap().passed);
        assert!(check_restriction(&z5, 3, 2, &pts(10, 8)).unwrap().passed);
    }

    #[test]
    fn wrong_series_map_is_detected() {
        // Subdividing is not the same as doubling.
        let w4 = wheel(4).unwrap();
        let doubled = w4.double_edge(0).unwrap();
        let spec = spec_for(1).unwrap();
        let p = &pts(9, 9)[0];
        let a = canonical_form_at(&doubled, &spec, p, Route::Auto).unwrap();
        let b = canonical_form_at(&w4.subdivide(0).unwrap(), &spec, p, Route::Auto).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn vanishing_reasons() {
        let spec5 = spec_for(1).unwrap();
        let w3 = wheel(3).unwrap();
        assert_eq!(vanishing_reason(&w3, &spec5), None);
        assert!(vanishing_reason(&w3.double_edge(0).unwrap().contract(1).unwrap(), &spec5).is_some());
        assert!(vanishing_reason(&banana(6).unwrap(), &spec5).is_some());
        let g = banana(4).unwrap().subdivide(0).unwrap().subdivide(1).unwrap();
        let r = check_vanishing(&g, &spec5, &pts(6, 10)).unwrap();
        assert!(r.passed && r.detail.contains("degree ≤ 2"), "{}", r.detail);
        let k4 = complete_graph(4).unwrap();
        assert!(check_vanishing(&k4, &spec5, &pts(6, 11)).unwrap().detail.contains("no vanishing"));
    }

    #[test]
    fn full_report_on_w4() {
        let report = identity_checks(&wheel(4).unwrap(), 11).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(report.checks.iter().any(|c| c.name.starts_with("duality")));
    }
}
