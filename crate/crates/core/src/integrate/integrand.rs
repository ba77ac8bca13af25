//! Integrands `f_G = ω_G / Ω_G` of canonical forms of top degree
//! (`e_G = deg ω + 1`), reconstructed exactly and compiled for fast `f64`
//! evaluation.
//!
//! The ratio `f_G` is rational with denominator a power of `Ψ_G`. It is
//! recovered from exact evaluations of `ω_G` over `F_p`, in one of two shapes:
//!
//! * a short ansatz `Σ_t a_t P_S^{j_t} / Ψ^{i_t}` with `P_S = Π_{e∈S} x_e`
//!   for a distinguished edge set `S` (a vertex star or all edges). This
//!   covers the wheels and `K_6`, whose numerators are far too large to expand;
//! * a dense numerator `N / Ψ^m` interpolated over all monomials of degree
//!   `m·h − e` with per-variable degree `< m`.
//!
//! Coefficients are lifted to rationals by rational reconstruction and the
//! result is certified at fresh random points (Schwartz–Zippel). Results are
//! cached per isomorphism class and transported to any edge labeling with
//! the parity of the relabeling.

use crate::error::{Error, Result};
use crate::forms::{canonical_form_at, random_points, CanonicalFormSpec, Route};
use crate::graphs::{canonical_certificate, Graph};
use crate::laplacian::graph_polynomial;
use crate::polyring::field::rational_to_f64;
use crate::polyring::{rational_reconstruct, FloatPoly, Fp, MultiPoly, Ring};
use crate::polyring::Field;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Largest dense interpolation problem attempted (number of monomials).
pub const INTERPOLATION_LIMIT: usize = 3000;
/// Fresh points used to certify a reconstructed integrand.
const CERTIFY_POINTS: usize = 6;
/// Seed of the evaluation points (reconstruction is deterministic).
const POINT_SEED: u64 = 0x5eed_0f_f0e5;

/// One term `a · P^j / Ψ^i` of an ansatz integrand.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTerm {
    pub coefficient: BigRational,
    pub product_power: u32,
    pub psi_power: u32,
}

/// An exactly known integrand `f_G = ω_G / Ω_G`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactIntegrand {
    Zero,
    /// `Σ_t a_t (Π_{e ∈ product} x_e)^{j_t} / Ψ^{i_t}`.
    Blocks { product: Vec<usize>, terms: Vec<BlockTerm> },
    /// `N / Ψ^m`.
    Polynomial { numerator: MultiPoly, psi_power: u32 },
}

fn product_at(x: &[Fp], edges: &[usize]) -> Fp {
    edges.iter().fold(Fp::one(), |a, &e| a.mul(&x[e]))
}

impl ExactIntegrand {
    /// Value at a point over `F_p`, given `Ψ(x)`.
    pub fn eval_fp(&self, x: &[Fp], psi: Fp) -> Option<Fp> {
        let psi_inv = psi.inv()?;
        match self {
            ExactIntegrand::Zero => Some(Fp::zero()),
            ExactIntegrand::Blocks { product, terms } => {
                let p = product_at(x, product);
                let mut acc = Fp::zero();
                for t in terms {
                    let c = Fp::from_rational(&t.coefficient)?;
                    acc = acc.add(&c.mul(&p.pow(t.product_power as u64)).mul(&psi_inv.pow(t.psi_power as u64)));
                }
                Some(acc)
            }
            ExactIntegrand::Polynomial { numerator, psi_power } => {
                Some(numerator.eval(x)?.mul(&psi_inv.pow(*psi_power as u64)))
            }
        }
    }

    /// Transports an integrand of a graph `C` to a relabeling `G` of it:
    /// edge `i` of `G` is edge `to_c[i]` of `C`, and `sign` is the parity of
    /// that relabeling (`Ω` changes sign under odd permutations).
    pub fn relabel(&self, to_c: &[usize], sign: i8) -> ExactIntegrand {
        let s = BigRational::from_integer(sign.into());
        match self {
            ExactIntegrand::Zero => ExactIntegrand::Zero,
            ExactIntegrand::Blocks { product, terms } => {
                let mut product: Vec<usize> = (0..to_c.len()).filter(|&i| product.contains(&to_c[i])).collect();
                product.sort_unstable();
                let terms = terms
                    .iter()
                    .map(|t| BlockTerm {
                        coefficient: &t.coefficient * &s,
                        ..t.clone()
                    })
                    .collect();
                ExactIntegrand::Blocks { product, terms }
            }
            ExactIntegrand::Polynomial { numerator, psi_power } => {
                let mut from_c = vec![0; to_c.len()];
                for (i, &c) in to_c.iter().enumerate() {
                    from_c[c] = i;
                }
                ExactIntegrand::Polynomial {
                    numerator: numerator.remap(to_c.len(), &from_c).scale(&s),
                    psi_power: *psi_power,
                }
            }
        }
    }

    /// Human-readable form with 1-based edge names, e.g. `18/Ψ^2 + 216·P/Ψ^3, P = x6·x7·…`.
    pub fn describe(&self) -> String {
        match self {
            ExactIntegrand::Zero => "0".into(),
            ExactIntegrand::Blocks { product, terms } => {
                let body: Vec<String> = terms
                    .iter()
                    .map(|t| {
                        let p = match t.product_power {
                            0 => String::new(),
                            1 => "·P".into(),
                            j => format!("·P^{j}"),
                        };
                        format!("{}{p}/Ψ^{}", t.coefficient, t.psi_power)
                    })
                    .collect();
                let names: Vec<String> = product.iter().map(|e| format!("x{}", e + 1)).collect();
                if terms.iter().any(|t| t.product_power > 0) {
                    format!("{}, P = {}", body.join(" + "), names.join("·"))
                } else {
                    body.join(" + ")
                }
            }
            ExactIntegrand::Polynomial { numerator, psi_power } => {
                format!("({numerator}) / Ψ^{psi_power}  [{} monomials]", numerator.len())
            }
        }
    }
}

/// `f(x) = ω_G/Ω_G` at a point over `F_p`.
pub fn omega_ratio_at(g: &Graph, spec: &CanonicalFormSpec, x: &[Fp]) -> Result<Fp> {
    let e = g.edge_count();
    let values = canonical_form_at(g, spec, x, Route::Auto)?;
    let full: u64 = if e == 64 { u64::MAX } else { (1 << e) - 1 };
    let minus_x0 = x[0].neg().inv().ok_or(Error::Pole)?;
    Ok(values.get(full & !1).mul(&minus_x0))
}

/// Samples of `(x, Ψ(x), f(x))` at deterministic random points.
struct Samples {
    points: Vec<Vec<Fp>>,
    psi: Vec<Fp>,
    ratio: Vec<Fp>,
}

impl Samples {
    fn draw(g: &Graph, spec: &CanonicalFormSpec, psi: &MultiPoly, count: usize, seed: u64) -> Result<Samples> {
        let points = random_points::<Fp>(g.edge_count(), count, seed);
        let psi: Vec<Fp> = points.iter().map(|x| psi.eval(x).ok_or(Error::Pole)).collect::<Result<_>>()?;
        let ratio: Vec<Fp> = points.par_iter().map(|x| omega_ratio_at(g, spec, x)).collect::<Result<_>>()?;
        Ok(Samples { points, psi, ratio })
    }
}

/// Solves an overdetermined linear system over `F_p`; `None` if it is
/// inconsistent or the solution is not unique.
fn solve_mod_p(mut rows: Vec<Vec<Fp>>, unknowns: usize) -> Option<Vec<Fp>> {
    let n = rows.len();
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let p = (pivot_row..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv()?;
        for v in rows[pivot_row][col..].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col];
            for (v, pv) in row[col..].iter_mut().zip(&pivot[col..]) {
                *v = v.sub(&f.mul(pv));
            }
        }
        pivot_row += 1;
    }
    if rows[unknowns..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    Some((0..unknowns).map(|i| rows[i][unknowns]).collect())
}

fn reconstruct_all(values: &[Fp]) -> Option<Vec<BigRational>> {
    values.iter().map(|&v| rational_reconstruct(v)).collect()
}

/// Candidate edge sets for the product ansatz: none, every maximal-degree
/// vertex star, and all edges.
fn product_candidates(g: &Graph) -> Vec<Vec<usize>> {
    let degrees = g.degrees();
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for v in 0..g.vertex_count {
        if degrees[v] == max {
            let star: Vec<usize> = (0..g.edge_count()).filter(|&i| {
                let (a, b) = g.edges[i];
                a != b && (a == v || b == v)
            }).collect();
            if !out.contains(&star) {
                out.push(star);
            }
        }
    }
    out.push((0..g.edge_count()).collect());
    out
}

fn try_ansatz(g: &Graph, spec: &CanonicalFormSpec, fit: &Samples, check: &Samples) -> Option<ExactIntegrand> {
    let (e, h, m) = (g.edge_count() as u32, g.loop_number() as u32, spec.pole_bound());
    for product in product_candidates(g) {
        let s = product.len() as u32;
        // Homogeneity: s·j − h·i = −e.
        let shape: Vec<(u32, u32)> = (0..=m)
            .filter_map(|i| {
                let need = (h * i).checked_sub(e)?;
                match s {
                    0 if need == 0 => Some((0, i)),
                    0 => None,
                    _ if need % s == 0 => Some((need / s, i)),
                    _ => None,
                }
            })
            .collect();
        if shape.is_empty() || shape.len() + 2 > fit.points.len() {
            continue;
        }
        let rows: Vec<Vec<Fp>> = (0..fit.points.len())
            .map(|r| {
                let p = product_at(&fit.points[r], &product);
                let psi_inv = fit.psi[r].inv().expect("Ψ nonzero at sample points");
                let mut row: Vec<Fp> = shape
                    .iter()
                    .map(|&(j, i)| p.pow(j as u64).mul(&psi_inv.pow(i as u64)))
                    .collect();
                row.push(fit.ratio[r]);
                row
            })
            .collect();
        let Some(solution) = solve_mod_p(rows, shape.len()) else {
            continue;
        };
        let Some(coeffs) = reconstruct_all(&solution) else {
            continue;
        };
        let terms: Vec<BlockTerm> = shape
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !Zero::is_zero(c))
            .map(|(&(j, i), c)| BlockTerm {
                coefficient: c,
                product_power: j,
                psi_power: i,
            })
            .collect();
        let candidate = if terms.is_empty() {
            ExactIntegrand::Zero
        } else {
            ExactIntegrand::Blocks { product, terms }
        };
        if certify(&candidate, check) {
            return Some(candidate);
        }
    }
    None
}

fn certify(candidate: &ExactIntegrand, check: &Samples) -> bool {
    (0..check.points.len()).all(|r| candidate.eval_fp(&check.points[r], check.psi[r]) == Some(check.ratio[r]))
}

/// Exponent vectors of total degree `degree` in `n` variables with every
/// exponent at most `cap`.
fn bounded_monomials(n: usize, degree: u32, cap: u32) -> Vec<Vec<u16>> {
    fn rec(i: usize, left: u32, cap: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>, limit: usize) {
        if out.len() > limit {
            return;
        }
        let n = cur.len();
        if i + 1 == n {
            if left <= cap {
                cur[i] = left as u16;
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left.min(cap) {
            cur[i] = k as u16;
            rec(i + 1, left - k, cap, cur, out, limit);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(0, degree, cap, &mut vec![0; n], &mut out, INTERPOLATION_LIMIT);
    out
}

fn try_interpolation(g: &Graph, spec: &CanonicalFormSpec, psi: &MultiPoly, check: &Samples) -> Result<Option<ExactIntegrand>> {
    let (e, h, m) = (g.edge_count(), g.loop_number() as u32, spec.pole_bound());
    let Some(degree) = (m * h).checked_sub(e as u32) else {
        return Ok(None);
    };
    for cap in [m.saturating_sub(1).min(degree), degree] {
        let monomials = bounded_monomials(e, degree, cap);
        if monomials.is_empty() || monomials.len() > INTERPOLATION_LIMIT {
            continue;
        }
        let count = monomials.len() + 2;
        let fit = Samples::draw(g, spec, psi, count, POINT_SEED ^ 0xabcd)?;
        let rows: Vec<Vec<Fp>> = (0..count)
            .into_par_iter()
            .map(|r| {
                let x = &fit.points[r];
                let mut row: Vec<Fp> = monomials
                    .iter()
                    .map(|mono| mono.iter().enumerate().fold(Fp::one(), |a, (i, &k)| a.mul(&x[i].pow(k as u64))))
                    .collect();
                row.push(fit.ratio[r].mul(&fit.psi[r].pow(m as u64)));
                row
            })
            .collect();
        let Some(solution) = solve_mod_p(rows, monomials.len()) else {
            continue;
        };
        let Some(coeffs) = reconstruct_all(&solution) else {
            continue;
        };
        let numerator = MultiPoly::from_terms(e, monomials.into_iter().zip(coeffs).map(|(mono, c)| (c, mono)));
        let candidate = if numerator.is_zero() {
            ExactIntegrand::Zero
        } else {
            ExactIntegrand::Polynomial { numerator, psi_power: m }
        };
        if certify(&candidate, check) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Reconstructs the integrand of a connected graph in its own labeling,
/// without caching. `Ok(None)` means no certified exact form was found within
/// the interpolation budget.
pub fn reconstruct_integrand(g: &Graph, spec: &CanonicalFormSpec) -> Result<Option<ExactIntegrand>> {
    let e = g.edge_count();
    if e != spec.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: spec.degree() + 1,
            found: e,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let psi = graph_polynomial(g)?;
    let fit = Samples::draw(g, spec, &psi, 12, POINT_SEED)?;
    let check = Samples::draw(g, spec, &psi, CERTIFY_POINTS, POINT_SEED ^ 0x1234_5678)?;
    if fit.ratio.iter().chain(&check.ratio).all(|v| v.is_zero()) {
        return Ok(Some(ExactIntegrand::Zero));
    }
    if let Some(found) = try_ansatz(g, spec, &fit, &check) {
        return Ok(Some(found));
    }
    try_interpolation(g, spec, &psi, &check)
}

type CacheKey = (Vec<u8>, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Option<ExactIntegrand>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Option<ExactIntegrand>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The integrand of `g`, reconstructed once per isomorphism class and
/// transported to the labeling of `g`.
pub fn exact_integrand(g: &Graph, spec: &CanonicalFormSpec) -> Result<Option<ExactIntegrand>> {
    let cert = canonical_certificate(g);
    let key = (cert.canonical_key.clone(), spec.indices().to_vec());
    let cached = cache().lock().expect("integrand cache poisoned").get(&key).cloned();
    let canonical = match cached {
        Some(found) => found,
        None => {
            let found = reconstruct_integrand(&cert.canonical_graph(g), spec)?;
            cache().lock().expect("integrand cache poisoned").insert(key, found.clone());
            found
        }
    };
    Ok(canonical.map(|f| f.relabel(&cert.edge_map, cert.edge_sign)))
}

enum Kind {
    Zero,
    Blocks { product: Vec<usize>, terms: Vec<(f64, i32, i32)> },
    Polynomial { numerator: FloatPoly, psi_power: i32 },
    /// Evaluates the canonical form itself in floating point (slow fallback).
    Direct { graph: Graph, spec: CanonicalFormSpec },
    /// `1/Ψ²`, the Feynman residue integrand.
    Feynman,
}

/// A compiled integrand `f` with `ω = f · Ω`, evaluated in `f64`.
pub struct Integrand {
    edges: usize,
    psi: FloatPoly,
    kind: Kind,
    description: String,
}

/// Points where `Ψ` falls below this are rejected and resampled.
pub const PSI_FLOOR: f64 = 1e-300;

impl Integrand {
    /// The integrand of a canonical form on a graph with `deg + 1` edges.
    pub fn canonical(g: &Graph, spec: &CanonicalFormSpec) -> Result<Integrand> {
        let psi = FloatPoly::new(&graph_polynomial(g)?);
        let (kind, description) = match exact_integrand(g, spec)? {
            Some(ExactIntegrand::Zero) => (Kind::Zero, "0".to_string()),
            Some(exact @ ExactIntegrand::Blocks { .. }) => {
                let ExactIntegrand::Blocks { product, terms } = &exact else { unreachable!() };
                let terms = terms
                    .iter()
                    .map(|t| (rational_to_f64(&t.coefficient).unwrap_or(f64::NAN), t.product_power as i32, t.psi_power as i32))
                    .collect();
                (Kind::Blocks { product: product.clone(), terms }, exact.describe())
            }
            Some(exact @ ExactIntegrand::Polynomial { .. }) => {
                let ExactIntegrand::Polynomial { numerator, psi_power } = &exact else { unreachable!() };
                let kind = Kind::Polynomial {
                    numerator: FloatPoly::new(numerator),
                    psi_power: *psi_power as i32,
                };
                (kind, exact.describe())
            }
            None => (
                Kind::Direct {
                    graph: g.clone(),
                    spec: spec.clone(),
                },
                "direct floating-point evaluation of the canonical form".into(),
            ),
        };
        Ok(Integrand {
            edges: g.edge_count(),
            psi,
            kind,
            description,
        })
    }

    /// `1/Ψ_G²`, the integrand of the Feynman residue `∫ Ω_G/Ψ_G²`.
    pub fn feynman(g: &Graph) -> Result<Integrand> {
        Ok(Integrand {
            edges: g.edge_count(),
            psi: FloatPoly::new(&graph_polynomial(g)?),
            kind: Kind::Feynman,
            description: "1/Ψ^2".into(),
        })
    }

    pub fn edges(&self) -> usize {
        self.edges
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, Kind::Zero)
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `f(x)`, or `None` where `Ψ(x)` underflows or the value is not finite.
    pub fn eval(&self, x: &[f64]) -> Option<f64> {
        let psi = self.psi.eval(x);
        if !(psi > PSI_FLOOR) {
            return None;
        }
        let v = match &self.kind {
            Kind::Zero => 0.0,
            Kind::Feynman => 1.0 / (psi * psi),
            Kind::Blocks { product, terms } => {
                let p: f64 = product.iter().map(|&e| x[e]).product();
                terms.iter().map(|&(c, j, i)| c * p.powi(j) / psi.powi(i)).sum()
            }
            Kind::Polynomial { numerator, psi_power } => numerator.eval(x) / psi.powi(*psi_power),
            Kind::Direct { graph, spec } => {
                let values = canonical_form_at(graph, spec, x, Route::Auto).ok()?;
                let full: u64 = (1 << self.edges) - 1;
                values.get(full & !1) / (-x[0])
            }
        };
        v.is_finite().then_some(v)
    }
}
