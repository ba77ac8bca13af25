//! Canonical integrals `I_G(ω) = ∫_{σ_G} ω_G` by Monte-Carlo integration,
//! Stokes residuals, Feynman residues and the reference constants they are
//! compared against.
//!
//! Integrals use the positive-measure convention: for `ω_G = f · Ω_G`,
//! `I_G(ω) = ∫ f` over the simplex `Σ x_e = 1` with Lebesgue measure in the
//! first `e − 1` coordinates (equivalently over the chart `x_e = 1`), so the
//! Feynman residue `∫ Ω/Ψ²` is positive. Relabeling the edges of `G` by a
//! permutation multiplies `I_G` by its sign, matching orientations in `GC_2`.
//!
//! Sampling is split into fixed-size chunks, each driven by its own ChaCha
//! stream keyed by `(seed, chunk)`. Chunk statistics are merged in chunk
//! order, so estimates are bit-identical for any number of worker threads.

mod constants;
mod integrand;

pub use constants::{
    double_zeta, pi, stuffle_holds, wheel_feynman_residue, wheel_moment, zeta, zeta_borwein, zeta_multiple, HighPrecision, ReferenceConstants,
};
pub use integrand::{
    exact_integrand, omega_ratio_at, reconstruct_integrand, BlockTerm, ExactIntegrand, Integrand, INTERPOLATION_LIMIT,
    PSI_FLOOR,
};

use crate::error::{Error, Result};
use crate::forms::{vanishing_reason, CanonicalFormSpec};
use crate::graphs::{has_odd_automorphism, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Samples per chunk (one RNG stream each).
pub const CHUNK: u64 = 1 << 14;

/// How points of the simplex are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// Uniform points of the simplex (normalized exponentials).
    Uniform,
    /// A uniform Hepp sector (total order of the coordinates) followed by
    /// the cube map `x_{σ(k+1)} = t_1 ⋯ t_k`, which tames corner behavior.
    Hepp,
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sampler::Uniform => "uniform",
            Sampler::Hepp => "hepp",
        })
    }
}

impl FromStr for Sampler {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sampler> {
        match s {
            "uniform" => Ok(Sampler::Uniform),
            "hepp" => Ok(Sampler::Hepp),
            _ => Err(Error::InvalidArgument(format!("unknown sampler `{s}` (expected uniform or hepp)"))),
        }
    }
}

/// Running mean and variance (Welford), mergeable in a fixed order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Stats {
    count: u64,
    mean: f64,
    m2: f64,
    abs_mean: f64,
    rejected: u64,
}

impl Stats {
    fn push(&mut self, v: f64) {
        self.count += 1;
        let n = self.count as f64;
        let delta = v - self.mean;
        self.mean += delta / n;
        self.m2 += delta * (v - self.mean);
        self.abs_mean += (v.abs() - self.abs_mean) / n;
    }

    fn merge(&self, o: &Stats) -> Stats {
        if self.count == 0 {
            return Stats {
                rejected: self.rejected + o.rejected,
                ..*o
            };
        }
        if o.count == 0 {
            return Stats {
                rejected: self.rejected + o.rejected,
                ..*self
            };
        }
        let (na, nb) = (self.count as f64, o.count as f64);
        let n = na + nb;
        let delta = o.mean - self.mean;
        Stats {
            count: self.count + o.count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + o.m2 + delta * delta * na * nb / n,
            abs_mean: (self.abs_mean * na + o.abs_mean * nb) / n,
            rejected: self.rejected + o.rejected,
        }
    }

    fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

/// Result of a Monte-Carlo integration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub graph: String,
    pub spec: String,
    pub sampler: Sampler,
    pub seed: u64,
    pub samples: u64,
    pub value: f64,
    pub std_error: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigmas: Option<f64>,
    /// Mean absolute value of the sampled estimator.
    #[serde(skip)]
    pub scale: f64,
    /// Points rejected because `Ψ` underflowed (expected to stay zero).
    #[serde(skip)]
    pub rejected: u64,
    /// Why the integral is exactly zero, when no sampling was needed.
    #[serde(skip)]
    pub exact_zero: Option<String>,
}

impl IntegralEstimate {
    fn exact_zero(graph: String, spec: String, sampler: Sampler, seed: u64, reason: String) -> Self {
        IntegralEstimate {
            graph,
            spec,
            sampler,
            seed,
            samples: 0,
            value: 0.0,
            std_error: 0.0,
            target: None,
            sigmas: None,
            scale: 0.0,
            rejected: 0,
            exact_zero: Some(reason),
        }
    }

    /// Records a target value and the deviation from it in standard errors.
    pub fn with_target(mut self, target: f64) -> Self {
        self.target = Some(target);
        let diff = (self.value - target).abs();
        self.sigmas = Some(if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
        self
    }

    /// Within `max(rel_tol · |target|, 3 σ)` of the target.
    pub fn within(&self, target: f64, rel_tol: f64) -> bool {
        (self.value - target).abs() <= (rel_tol * target.abs()).max(3.0 * self.std_error)
    }

    /// Zero test `|value| ≤ max(10⁻⁶ · scale, 3 σ)`.
    pub fn consistent_with_zero(&self) -> bool {
        self.value.abs() <= (1e-6 * self.scale).max(3.0 * self.std_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serializes")
    }
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Open-interval uniform `(0, 1]`.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// One estimator sample of `∫ f` over the simplex, or `None` if rejected.
fn draw(f: &Integrand, sampler: Sampler, rng: &mut ChaCha8Rng, x: &mut [f64], order: &mut [usize]) -> Option<f64> {
    let e = x.len();
    match sampler {
        Sampler::Uniform => {
            let mut total = 0.0;
            for xi in x.iter_mut() {
                *xi = -unit(rng).ln();
                total += *xi;
            }
            x.iter_mut().for_each(|xi| *xi /= total);
            Some(f.eval(x)? / factorial_f64(e - 1))
        }
        Sampler::Hepp => {
            let weight = hepp_point(rng, x, order);
            Some(f.eval(x)? * weight)
        }
    }
}

/// Fills `x` with a point of a uniformly chosen Hepp sector (largest
/// coordinate `1`, then `x_{σ(k+1)} = t_1 ⋯ t_k`) and returns the weight
/// `e! · Π_k t_k^{e−1−k}` (sector count times Jacobian).
fn hepp_point(rng: &mut ChaCha8Rng, x: &mut [f64], order: &mut [usize]) -> f64 {
    let e = x.len();
    order.shuffle(rng);
    let mut weight = factorial_f64(e);
    let mut current = 1.0;
    x[order[0]] = 1.0;
    for k in 1..e {
        let t = unit(rng);
        current *= t;
        x[order[k]] = current;
        weight *= t.powi((e - 1 - k) as i32);
    }
    weight
}

fn run_chunk(f: &Integrand, sampler: Sampler, seed: u64, chunk: u64, count: u64) -> Stats {
    let e = f.edges();
    let mut rng = chunk_rng(seed, chunk);
    let mut x = vec![0.0; e];
    let mut order: Vec<usize> = (0..e).collect();
    let mut stats = Stats::default();
    let mut attempts = 0u64;
    while stats.count < count {
        attempts += 1;
        match draw(f, sampler, &mut rng, &mut x, &mut order) {
            Some(v) => stats.push(v),
            None => {
                stats.rejected += 1;
                if attempts > 16 * count + 64 {
                    break;
                }
            }
        }
    }
    stats
}

/// Monte-Carlo estimate of `∫ f` over the simplex with `samples` draws.
fn sample_integrand(f: &Integrand, sampler: Sampler, samples: u64, seed: u64) -> Stats {
    let chunks = samples.div_ceil(CHUNK);
    let per_chunk: Vec<Stats> = (0..chunks)
        .into_par_iter()
        .map(|c| run_chunk(f, sampler, seed, c, CHUNK.min(samples - c * CHUNK)))
        .collect();
    per_chunk.iter().fold(Stats::default(), |acc, s| acc.merge(s))
}

fn graph_name(g: &Graph) -> String {
    g.label.clone().unwrap_or_else(|| g.to_json())
}

fn estimate(g: &Graph, spec: String, f: &Integrand, sampler: Sampler, samples: u64, seed: u64) -> Result<IntegralEstimate> {
    let stats = sample_integrand(f, sampler, samples, seed);
    if stats.count < samples {
        return Err(Error::Divergent(format!(
            "{} of {} points had Ψ below {PSI_FLOOR:e}; the integrand is not bounded",
            stats.rejected,
            stats.count + stats.rejected
        )));
    }
    Ok(IntegralEstimate {
        graph: graph_name(g),
        spec,
        sampler,
        seed,
        samples: stats.count,
        value: stats.mean,
        std_error: stats.std_error(),
        target: None,
        sigmas: None,
        scale: stats.abs_mean,
        rejected: stats.rejected,
        exact_zero: None,
    })
}

/// Why `I_G(ω)` vanishes exactly, if a criterion applies: the form
/// vanishes on `G`, a primitive form meets a graph of nonzero degree, or
/// `G` has an odd automorphism (so `I_G = −I_G`).
pub fn integral_vanishing_reason(g: &Graph, spec: &CanonicalFormSpec) -> Option<String> {
    if let Some(reason) = vanishing_reason(g, spec) {
        return Some(reason);
    }
    let (e, h) = (g.edge_count(), g.loop_number());
    if spec.is_primitive() && e != 2 * h {
        return Some(format!("primitive form on a graph of degree {}", e as i64 - 2 * h as i64));
    }
    if has_odd_automorphism(g) {
        return Some("odd automorphism".into());
    }
    None
}

fn check_top_degree(g: &Graph, spec: &CanonicalFormSpec) -> Result<()> {
    if g.edge_count() != spec.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: spec.degree() + 1,
            found: g.edge_count(),
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Monte-Carlo estimate of the canonical integral `I_G(ω)`.
///
/// Requires `e_G = deg ω + 1` and `G` connected. Returns an exact zero
/// without sampling when [`integral_vanishing_reason`] applies.
pub fn integrate(g: &Graph, spec: &CanonicalFormSpec, sampler: Sampler, samples: u64, seed: u64) -> Result<IntegralEstimate> {
    check_top_degree(g, spec)?;
    if let Some(reason) = integral_vanishing_reason(g, spec) {
        return Ok(IntegralEstimate::exact_zero(graph_name(g), spec.to_string(), sampler, seed, reason));
    }
    let f = Integrand::canonical(g, spec)?;
    if f.is_zero() {
        let reason = "integrand vanishes identically".to_string();
        return Ok(IntegralEstimate::exact_zero(graph_name(g), spec.to_string(), sampler, seed, reason));
    }
    estimate(g, spec.to_string(), &f, sampler, samples, seed)
}

/// Like [`integrate`], but always samples: the vanishing criteria are not
/// consulted, so an exact zero can be confirmed numerically.
pub fn integrate_sampled(g: &Graph, spec: &CanonicalFormSpec, sampler: Sampler, samples: u64, seed: u64) -> Result<IntegralEstimate> {
    check_top_degree(g, spec)?;
    let f = Integrand::canonical(g, spec)?;
    estimate(g, spec.to_string(), &f, sampler, samples, seed)
}

/// Estimate of `I_G(ω)` evaluated on the affine chart `x_{e₀} = 1`.
///
/// Points `x` are drawn by the Hepp sampler and sent to the chart point
/// `y = x / x_{e₀}`; since `f(x) = x_{e₀}^{-e} f(y)` for a projective form,
/// the estimator is `x_{e₀}^{-e} f(y)` times the sector weight. Agreement
/// with [`integrate`] for every choice of `e₀` confirms that the compiled
/// integrand is homogeneous of degree `−e`.
pub fn integrate_on_chart(g: &Graph, spec: &CanonicalFormSpec, chart: usize, samples: u64, seed: u64) -> Result<IntegralEstimate> {
    check_top_degree(g, spec)?;
    let e = g.edge_count();
    if chart >= e {
        return Err(Error::EdgeOutOfRange { index: chart, edges: e });
    }
    let f = Integrand::canonical(g, spec)?;
    let chunks = samples.div_ceil(CHUNK);
    let per_chunk: Vec<Stats> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let mut x = vec![0.0; e];
            let mut order: Vec<usize> = (0..e).collect();
            let mut stats = Stats::default();
            let count = CHUNK.min(samples - c * CHUNK);
            let mut attempts = 0u64;
            while stats.count < count && attempts < 16 * count + 64 {
                attempts += 1;
                let weight = hepp_point(&mut rng, &mut x, &mut order);
                let pivot = x[chart];
                x.iter_mut().for_each(|xi| *xi /= pivot);
                match f.eval(&x) {
                    Some(v) => stats.push(v * weight * pivot.powi(-(e as i32))),
                    None => stats.rejected += 1,
                }
            }
            stats
        })
        .collect();
    let stats = per_chunk.iter().fold(Stats::default(), |acc, s| acc.merge(s));
    Ok(IntegralEstimate {
        graph: graph_name(g),
        spec: spec.to_string(),
        sampler: Sampler::Hepp,
        seed,
        samples: stats.count,
        value: stats.mean,
        std_error: stats.std_error(),
        target: None,
        sigmas: None,
        scale: stats.abs_mean,
        rejected: stats.rejected,
        exact_zero: None,
    })
}

/// Loop number of the subgraph on the edges in `mask`.
fn subgraph_loops(g: &Graph, mask: u64) -> usize {
    let mut sets = crate::graphs::DisjointSets::new(g.vertex_count);
    let mut loops = 0;
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if mask >> i & 1 == 1 && !sets.union(a, b) {
            loops += 1;
        }
    }
    loops
}

/// Largest graph whose subgraphs are enumerated for divergence tests.
const SUBGRAPH_LIMIT: usize = 24;

/// The Feynman residue form `Ω_G/Ψ_G²`, after checking that `G` has degree
/// zero (`e = 2h`) and no subdivergences (every proper subgraph `γ` with
/// loops has `e_γ > 2 h_γ`).
pub fn feynman_residue_integrand(g: &Graph) -> Result<crate::forms::DiffForm> {
    check_feynman(g)?;
    let e = g.edge_count();
    let psi = crate::laplacian::graph_polynomial(g)?;
    Ok(crate::forms::DiffForm::omega(e, psi).mul_section(&crate::polyring::MultiPoly::one(e), 2))
}

fn check_feynman(g: &Graph) -> Result<()> {
    let (e, h) = (g.edge_count(), g.loop_number());
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if e != 2 * h {
        return Err(Error::Divergent(format!("graph has {e} edges and {h} loops; a Feynman residue needs e = 2h")));
    }
    if e > SUBGRAPH_LIMIT {
        return Err(Error::BudgetExceeded(format!("subdivergence test over 2^{e} subgraphs")));
    }
    let full = (1u64 << e) - 1;
    for mask in 1..full {
        let loops = subgraph_loops(g, mask);
        if loops > 0 && mask.count_ones() as usize <= 2 * loops {
            let edges: Vec<String> = (0..e).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            return Err(Error::Divergent(format!("subgraph on edges {{{}}} has {loops} loops", edges.join(", "))));
        }
    }
    Ok(())
}

/// Monte-Carlo estimate of the Feynman residue `∫_{σ_G} Ω_G/Ψ_G²`.
pub fn feynman_residue(g: &Graph, sampler: Sampler, samples: u64, seed: u64) -> Result<IntegralEstimate> {
    check_feynman(g)?;
    let f = Integrand::feynman(g)?;
    estimate(g, "feynman".into(), &f, sampler, samples, seed)
}

/// Kind of boundary face in a Stokes relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    /// The face `x_e = 0`, carrying `G/e`.
    Contraction,
    /// The exceptional face over the vertex `x_e = 1`, carrying `G \ e`.
    Deletion,
}

/// One face contribution `sign · I_Γ(ω)` of a Stokes relation.
#[derive(Clone, Debug, Serialize)]
pub struct StokesTerm {
    pub kind: FaceKind,
    /// 1-based edge index.
    pub edge: usize,
    pub sign: i32,
    pub estimate: IntegralEstimate,
}

/// Signed sum of the boundary integrals of `ω` over `σ_G` (zero by Stokes).
#[derive(Clone, Debug, Serialize)]
pub struct StokesReport {
    pub graph: String,
    pub spec: String,
    pub residual: f64,
    pub std_error: f64,
    pub terms: Vec<StokesTerm>,
}

impl StokesReport {
    /// `|residual| ≤ max(10⁻⁶ · scale, 3 σ)` with `scale` the largest face integral.
    pub fn consistent_with_zero(&self) -> bool {
        let scale = self.terms.iter().map(|t| t.estimate.value.abs()).fold(0.0, f64::max);
        self.residual.abs() <= (1e-6 * scale).max(3.0 * self.std_error)
    }

    /// Number of faces that needed sampling.
    pub fn sampled_faces(&self) -> usize {
        self.terms.iter().filter(|t| t.estimate.exact_zero.is_none()).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("Stokes relation for {} with ω = {}\n", self.graph, self.spec);
        for t in &self.terms {
            let kind = match t.kind {
                FaceKind::Contraction => "G/e",
                FaceKind::Deletion => "G\\e",
            };
            let sign = if t.sign > 0 { '+' } else { '-' };
            match &t.estimate.exact_zero {
                Some(reason) => out.push_str(&format!("  {sign} {kind}{:<3} 0 (exact: {reason})\n", t.edge)),
                None => out.push_str(&format!(
                    "  {sign} {kind}{:<3} {:.6} ± {:.6}\n",
                    t.edge, t.estimate.value, t.estimate.std_error
                )),
            }
        }
        out.push_str(&format!("residual = {:.6} ± {:.6}\n", self.residual, self.std_error));
        out
    }
}

fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 step
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Face integral, treating graphs on which the form cannot live (tadpoles,
/// disconnected deletions) as exact zeros.
fn face_integral(g: &Graph, spec: &CanonicalFormSpec, sampler: Sampler, samples: u64, seed: u64) -> Result<IntegralEstimate> {
    let name = graph_name(g);
    if !g.is_connected() {
        return Ok(IntegralEstimate::exact_zero(name, spec.to_string(), sampler, seed, "disconnected".into()));
    }
    integrate(g, spec, sampler, samples, seed)
}

/// Stokes residual `Σ_i (−1)^i [I_{G/e_i}(ω) − I_{G\e_i}(ω)]` (1-based `i`)
/// for a tadpole-free graph with `deg ω + 2` edges.
///
/// The contraction faces carry the graph-complex signs of `d`; each deletion
/// face (the blown-up vertex where only `x_{e_i}` survives) carries the
/// opposite sign. For primitive `ω` the reduced coproduct vanishes, so these
/// are all boundary terms. For products of primitives the product faces
/// `σ_γ × σ_{G/γ}` contribute as well; they are supported only when every
/// such term vanishes for degree reasons, otherwise an error is returned.
pub fn stokes_residual(g: &Graph, spec: &CanonicalFormSpec, sampler: Sampler, samples: u64, seed: u64) -> Result<StokesReport> {
    let e = g.edge_count();
    if e != spec.degree() + 2 {
        return Err(Error::DegreeMismatch {
            expected: spec.degree() + 2,
            found: e,
        });
    }
    if g.has_tadpole() {
        return Err(Error::InvalidArgument("Stokes relations need a graph without tadpoles".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !spec.is_primitive() {
        check_product_faces_vanish(g, spec)?;
    }
    let mut jobs = Vec::with_capacity(2 * e);
    for i in 0..e {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        jobs.push((FaceKind::Contraction, i, sign, g.contract(i)?));
        jobs.push((FaceKind::Deletion, i, -sign, g.delete(i)?));
    }
    let mut terms = Vec::with_capacity(jobs.len());
    for (index, (kind, i, sign, face)) in jobs.into_iter().enumerate() {
        let face = face.with_label(format!(
            "{}{}{}",
            graph_name(g),
            if kind == FaceKind::Contraction { "/e" } else { "\\e" },
            i + 1
        ));
        let estimate = face_integral(&face, spec, sampler, samples, derive_seed(seed, index as u64))?;
        terms.push(StokesTerm {
            kind,
            edge: i + 1,
            sign,
            estimate,
        });
    }
    let residual = terms.iter().map(|t| t.sign as f64 * t.estimate.value).sum();
    let variance: f64 = terms.iter().map(|t| t.estimate.std_error.powi(2)).sum();
    Ok(StokesReport {
        graph: graph_name(g),
        spec: spec.to_string(),
        residual,
        std_error: variance.sqrt(),
        terms,
    })
}

/// For `ω = ω' ∧ ω''`-type specs, confirms that no product face `σ_γ × σ_{G/γ}`
/// can contribute: for each reduced coproduct term and each proper core
/// subgraph `γ` with `e_γ = deg ω' + 1`, one of the two factors must vanish.
fn check_product_faces_vanish(g: &Graph, spec: &CanonicalFormSpec) -> Result<()> {
    let e = g.edge_count();
    if e > SUBGRAPH_LIMIT {
        return Err(Error::BudgetExceeded(format!("product-face enumeration over 2^{e} subgraphs")));
    }
    let full = (1u64 << e) - 1;
    for term in crate::forms::reduced_coproduct(spec) {
        let need = term.left.degree() + 1;
        for mask in 1..full {
            if mask.count_ones() as usize != need {
                continue;
            }
            let sub: Vec<usize> = (0..e).filter(|i| mask >> i & 1 == 1).collect();
            let (gamma, _) = g.edge_subgraph(&sub);
            if !gamma.is_core() {
                continue;
            }
            let quotient = g.contract_subgraph(&sub)?;
            let gamma_zero = !gamma.is_connected() || integral_vanishing_reason(&gamma, &term.left).is_some();
            let quotient_zero = !quotient.is_connected() || integral_vanishing_reason(&quotient, &term.right).is_some();
            if !gamma_zero && !quotient_zero {
                return Err(Error::InvalidArgument(format!(
                    "product face for the subgraph on edges {:?} does not vanish; only boundary faces are supported",
                    sub.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
        }
    }
    Ok(())
}

/// Reference value of `I_G(ω)` for the named fixtures, with a note on its origin.
pub fn reference_integral(fixture: &str, spec: &CanonicalFormSpec) -> Option<(HighPrecision, &'static str)> {
    let c = ReferenceConstants::get();
    let k = spec.indices();
    match (fixture, k) {
        ("W3", [1]) => Some((c.zeta3.scale(60), "60 ζ(3)")),
        ("W5", [2]) => Some((c.zeta5.scale(1260), "1260 ζ(5)")),
        ("Z5", [2]) => Some((c.zeta5.scale(630), "630 ζ(5)")),
        ("T5", [2]) => Some((HighPrecision(num_rational::BigRational::from_integer(0.into())), "0")),
        ("W7", [3]) => Some((c.zeta7.scale(24024), "24024 ζ(7)")),
        ("K6", [1, 2]) => Some((c.k6_integral(), "(9!/16)(360 ζ(3,5) + 690 ζ(3)ζ(5) − 29π⁸/315)")),
        _ => None,
    }
}
