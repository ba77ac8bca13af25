//! The commutative graph complex `GC_2`: oriented isomorphism classes of
//! connected graphs with no tadpoles and all vertices of degree ≥ 3, the
//! contraction differential `d`, the deletion differential `δ`, the
//! Connes–Kreimer pairs `(γ, G/γ)`, and homology dimensions per loop order.
//!
//! An orientation is an ordering of the edges up to even permutations; a
//! generator `[G, η]` is stored as a coefficient on the canonical
//! representative of `G`, multiplied by the parity of the permutation taking
//! `η` to the canonical edge order. Graphs with an automorphism acting by an
//! odd permutation on edges (in particular any graph with a multiple edge)
//! are zero.

use crate::error::{Error, Result};
use crate::graphs::{canonical_certificate, has_odd_automorphism, Graph};
use crate::polyring::{DenseMatrix, ModP, P61, P_ALT};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

/// True iff `g` is a (possibly zero) generator shape of `GC_2`: connected,
/// no tadpoles, every vertex of degree at least 3.
pub fn is_admissible(g: &Graph) -> bool {
    g.is_connected() && !g.has_tadpole() && g.vertex_count > 0 && g.min_degree() >= 3
}

/// True iff `g` is a nonzero generator of `GC_2`.
pub fn is_generator(g: &Graph) -> bool {
    is_admissible(g) && !has_odd_automorphism(g)
}

/// A finite rational linear combination of oriented graph classes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphChain {
    terms: BTreeMap<Vec<u8>, (Graph, BigRational)>,
}

impl GraphChain {
    pub fn new() -> Self {
        GraphChain::default()
    }

    /// The class `[G, η]` with `η` the stored edge order.
    pub fn from_graph(g: &Graph) -> Self {
        let mut c = GraphChain::new();
        c.add_graph(g, BigRational::one());
        c
    }

    /// Adds `coefficient · [G, η]`. Graphs that vanish in `GC_2` are dropped.
    pub fn add_graph(&mut self, g: &Graph, coefficient: BigRational) {
        if coefficient.is_zero() || !is_generator(g) {
            return;
        }
        let cert = canonical_certificate(g);
        let mut coefficient = coefficient;
        if cert.edge_sign < 0 {
            coefficient = -coefficient;
        }
        self.add_canonical(cert.canonical_key.clone(), cert.canonical_graph(g), coefficient);
    }

    fn add_canonical(&mut self, key: Vec<u8>, rep: Graph, coefficient: BigRational) {
        match self.terms.get_mut(&key) {
            Some((_, c)) => {
                *c += coefficient;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (rep, coefficient));
            }
        }
    }

    pub fn add(&self, other: &GraphChain) -> GraphChain {
        let mut out = self.clone();
        for (k, (g, c)) in &other.terms {
            out.add_canonical(k.clone(), g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> GraphChain {
        let mut out = GraphChain::new();
        if c.is_zero() {
            return out;
        }
        for (k, (g, v)) in &self.terms {
            out.terms.insert(k.clone(), (g.clone(), v * c));
        }
        out
    }

    pub fn sub(&self, other: &GraphChain) -> GraphChain {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(canonical representative, coefficient)` in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Graph, &BigRational)> {
        self.terms.values().map(|(g, c)| (g, c))
    }

    /// Coefficient of `[G, η]` (relative to the stored edge order of `g`).
    pub fn coefficient_of(&self, g: &Graph) -> BigRational {
        let cert = canonical_certificate(g);
        match self.terms.get(&cert.canonical_key) {
            Some((_, c)) if cert.edge_sign < 0 => -c.clone(),
            Some((_, c)) => c.clone(),
            None => BigRational::zero(),
        }
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (g, c) in self.terms() {
            let edges: Vec<String> = g.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            let _ = writeln!(s, "{c} * [{}]", edges.join(" "));
        }
        s.trim_end().to_string()
    }
}

/// Sign `(−1)^i` for the 1-based position `i = index + 1`.
fn position_sign(index: usize) -> i64 {
    if index % 2 == 0 {
        -1
    } else {
        1
    }
}

/// The contraction differential `d[G] = Σ_i (−1)^i [G//e_i]`.
pub fn differential_d(chain: &GraphChain) -> GraphChain {
    let mut out = GraphChain::new();
    for (g, c) in chain.terms() {
        for i in 0..g.edge_count() {
            if let Ok(Some(h)) = g.contract_kill_loops(i) {
                out.add_graph(&h, c * BigRational::from_integer(position_sign(i).into()));
            }
        }
    }
    out
}

/// The deletion differential `δ[G] = Σ_i (−1)^i [G∖e_i]`.
pub fn differential_delta(chain: &GraphChain) -> GraphChain {
    let mut out = GraphChain::new();
    for (g, c) in chain.terms() {
        for i in 0..g.edge_count() {
            if let Ok(h) = g.delete(i) {
                out.add_graph(&h, c * BigRational::from_integer(position_sign(i).into()));
            }
        }
    }
    out
}

/// A core subgraph `γ` of `G` paired with the quotient `G/γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkTerm {
    /// Edges of `γ` (ascending indices into `G`).
    pub edges: Vec<usize>,
    /// `γ` as a graph on its own vertices, edges in ascending order.
    pub subgraph: Graph,
    /// `G/γ`, remaining edges in their original relative order.
    pub quotient: Graph,
    /// Parity of the shuffle `(E_γ, E_{G∖γ})` of the edge order.
    pub sign: i8,
}

/// All proper, nonempty core subgraphs `γ ⊂ G` (every component bridgeless
/// with at least one loop) and their quotients, ordered by edge bitmask.
pub fn coproduct_ck(g: &Graph) -> Result<Vec<CkTerm>> {
    let e = g.edge_count();
    if e > 24 {
        return Err(Error::BudgetExceeded(format!("{e} edges: 2^{e} subgraphs")));
    }
    let mut out = Vec::new();
    for mask in 1u32..((1u32 << e) - 1) {
        let edges: Vec<usize> = (0..e).filter(|&i| mask & (1 << i) != 0).collect();
        let (sub, _) = g.edge_subgraph(&edges);
        // Edge subgraphs have no isolated vertices, so bridgeless implies every component has a loop.
        if !sub.is_core() {
            continue;
        }
        let mut inversions = 0usize;
        let mut seen_outside = 0usize;
        for i in 0..e {
            if mask & (1 << i) != 0 {
                inversions += seen_outside;
            } else {
                seen_outside += 1;
            }
        }
        out.push(CkTerm {
            quotient: g.contract_subgraph(&edges)?,
            subgraph: sub,
            edges,
            sign: if inversions % 2 == 0 { 1 } else { -1 },
        });
    }
    Ok(out)
}

/// The nonzero generators with `h` loops and `e` edges, sorted by canonical key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumBasis {
    pub h: usize,
    pub e: usize,
    /// Canonical representatives (canonical vertex labels and edge order).
    pub graphs: Vec<Graph>,
    #[serde(skip)]
    keys: Vec<Vec<u8>>,
}

impl StratumBasis {
    fn from_map(h: usize, e: usize, graphs: &BTreeMap<Vec<u8>, Graph>) -> Self {
        let (keys, graphs): (Vec<_>, Vec<_>) = graphs
            .iter()
            .filter(|(_, g)| !has_odd_automorphism(g))
            .map(|(k, g)| (k.clone(), g.clone()))
            .unzip();
        StratumBasis { h, e, graphs, keys }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Homological degree `e − 2h`.
    pub fn degree(&self) -> i64 {
        self.e as i64 - 2 * self.h as i64
    }

    /// Position of the class of a canonical key.
    pub fn index_of_key(&self, key: &[u8]) -> Option<usize> {
        self.keys.binary_search_by(|k| k.as_slice().cmp(key)).ok()
    }

    /// Restores the key index after deserialization.
    pub fn reindex(&mut self) {
        self.keys = self.graphs.iter().map(|g| canonical_certificate(g).canonical_key).collect();
    }
}

/// All admissible simple graphs of one loop order, by edge count, including
/// those with odd automorphisms (needed as intermediate shapes).
#[derive(Debug)]
pub struct LoopOrderStrata {
    pub h: usize,
    pub bases: BTreeMap<usize, StratumBasis>,
}

impl LoopOrderStrata {
    pub fn basis(&self, e: usize) -> Option<&StratumBasis> {
        self.bases.get(&e)
    }
}

fn canonical_pair(g: &Graph) -> (Vec<u8>, Graph) {
    let cert = canonical_certificate(g);
    let rep = cert.canonical_graph(g);
    (cert.canonical_key, rep)
}

/// Connected simple 3-regular graphs on `n` vertices, by canonical augmentation:
/// connected partial graphs grow one edge at a time from the lowest
/// unsaturated vertex of their canonical form.
pub fn cubic_graphs(n: usize) -> Vec<Graph> {
    if n < 4 || n % 2 == 1 {
        return Vec::new();
    }
    let mut level: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    let (k, g) = canonical_pair(&Graph::new(1, Vec::new()).expect("single vertex"));
    level.insert(k, g);
    let mut done = Vec::new();
    for _ in 0..(3 * n / 2) {
        let candidates: Vec<Graph> = level
            .values()
            .flat_map(|p| {
                let deg = p.degrees();
                let v = p.vertex_count;
                let mut out = Vec::new();
                let Some(u) = (0..v).find(|&x| deg[x] < 3) else {
                    return out;
                };
                let adjacent = |w: usize| p.edges.iter().any(|&(a, b)| (a == u && b == w) || (a == w && b == u));
                for w in u + 1..v {
                    if deg[w] < 3 && !adjacent(w) {
                        let mut edges = p.edges.clone();
                        edges.push((u, w));
                        out.push(Graph { vertex_count: v, edges, label: None });
                    }
                }
                if v < n {
                    let mut edges = p.edges.clone();
                    edges.push((u, v));
                    out.push(Graph { vertex_count: v + 1, edges, label: None });
                }
                out
            })
            .filter(|g| feasible(g, n))
            .collect();
        let canon: Vec<(Vec<u8>, Graph)> = candidates.par_iter().map(canonical_pair).collect();
        level = canon.into_iter().collect();
    }
    for g in level.into_values() {
        if g.vertex_count == n && g.degrees().iter().all(|&d| d == 3) {
            done.push(g);
        }
    }
    done
}

/// Prunes partial graphs that cannot be completed to a cubic graph on `n` vertices.
fn feasible(g: &Graph, n: usize) -> bool {
    let deg = g.degrees();
    let missing: usize = deg.iter().map(|&d| 3 - d.min(3)).sum();
    let new_vertices = n - g.vertex_count;
    // Every missing half-edge needs a partner; a new vertex contributes 3.
    let remaining_edges = 3 * n / 2 - g.edge_count();
    deg.iter().all(|&d| d <= 3) && (missing + 3 * new_vertices) == 2 * remaining_edges && (missing > 0 || g.vertex_count == n)
}

/// Generates every stratum of loop order `h` (cached per process).
pub fn loop_order_strata(h: usize) -> Arc<LoopOrderStrata> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LoopOrderStrata>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("cache lock").get(&h) {
        return s.clone();
    }
    let strata = Arc::new(build_strata(h));
    cache.lock().expect("cache lock").insert(h, strata.clone());
    strata
}

fn build_strata(h: usize) -> LoopOrderStrata {
    let mut bases = BTreeMap::new();
    if h < 3 {
        return LoopOrderStrata { h, bases };
    }
    let top = 3 * (h - 1);
    let mut level: BTreeMap<Vec<u8>, Graph> = cubic_graphs(2 * (h - 1)).into_iter().map(|g| canonical_pair(&g)).collect();
    let mut e = top;
    while !level.is_empty() {
        bases.insert(e, StratumBasis::from_map(h, e, &level));
        let contracted: Vec<Graph> = level
            .values()
            .flat_map(|g| (0..g.edge_count()).filter_map(move |i| g.contract(i).ok()))
            .filter(|g| g.is_simple() && g.min_degree() >= 3)
            .collect();
        let canon: Vec<(Vec<u8>, Graph)> = contracted.par_iter().map(canonical_pair).collect();
        level = canon.into_iter().collect();
        e -= 1;
    }
    LoopOrderStrata { h, bases }
}

/// The nonzero generators of `GC_2` with `h` loops and `e` edges.
pub fn generate_stratum(h: usize, e: usize) -> StratumBasis {
    loop_order_strata(h).basis(e).cloned().unwrap_or_else(|| StratumBasis {
        h,
        e,
        graphs: Vec::new(),
        keys: Vec::new(),
    })
}

/// Sparse integer matrix stored by columns: `columns[j]` lists `(row, value)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m[i][j] += v;
            }
        }
        m
    }

    /// `self · other` (requires `self.cols == other.rows`).
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, v) in col {
                    for &(i, w) in &self.columns[k] {
                        *acc.entry(i).or_insert(0) += v * w;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }

    /// Rank over `F_p`.
    pub fn rank_mod<const P: u64>(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m: DenseMatrix<ModP<P>> = DenseMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m.set(i, j, <ModP<P> as crate::polyring::Ring>::from_i64(v));
            }
        }
        m.rank()
    }

    /// Exact rank over `Q` by sparse elimination with sparsest-pivot choice.
    pub fn rank_exact(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                if v != 0 {
                    rows[i].insert(j, BigRational::from_integer(BigInt::from(v)));
                }
            }
        }
        rows.retain(|r| !r.is_empty());
        let mut rank = 0;
        while !rows.is_empty() {
            let (pi, _) = rows.iter().enumerate().min_by_key(|(_, r)| r.len()).expect("nonempty");
            let pivot_row = rows.swap_remove(pi);
            let (&pc, pv) = pivot_row.iter().next().expect("nonempty row");
            let pv = pv.clone();
            rank += 1;
            for r in rows.iter_mut() {
                if let Some(f) = r.get(&pc).cloned() {
                    let factor = f / &pv;
                    for (c, v) in &pivot_row {
                        let entry = r.entry(*c).or_insert_with(BigRational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            r.remove(c);
                        }
                    }
                }
            }
            rows.retain(|r| !r.is_empty());
        }
        rank
    }
}

/// Matrix of `d` from the `e`-edge stratum to the `(e−1)`-edge stratum of loop order `h`.
pub fn boundary_matrix_d(h: usize, e: usize) -> SparseMatrix {
    let strata = loop_order_strata(h);
    let source = strata.basis(e).cloned().unwrap_or_else(|| generate_stratum(h, e));
    let target = strata.basis(e.wrapping_sub(1)).cloned().unwrap_or_else(|| generate_stratum(h, e.saturating_sub(1)));
    boundary_between(&source, &target, |g, i| g.contract_kill_loops(i).ok().flatten())
}

/// Outcome of checking `d² = 0` and `δ² = 0` on one stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareCheck {
    pub h: usize,
    pub e: usize,
    pub d_squared_zero: bool,
    pub delta_squared_zero: bool,
}

/// Checks `d ∘ d = 0` and `δ ∘ δ = 0` as exact matrix products on every
/// nonempty stratum of loop order `h`.
pub fn check_differentials_square_to_zero(h: usize) -> Vec<SquareCheck> {
    let strata = loop_order_strata(h);
    strata
        .bases
        .keys()
        .map(|&e| SquareCheck {
            h,
            e,
            d_squared_zero: boundary_matrix_d(h, e - 1).mul(&boundary_matrix_d(h, e)).is_zero(),
            delta_squared_zero: h < 2 || boundary_matrix_delta(h - 1, e - 1).mul(&boundary_matrix_delta(h, e)).is_zero(),
        })
        .collect()
}

/// Matrix of `δ` from stratum `(h, e)` to stratum `(h−1, e−1)`.
pub fn boundary_matrix_delta(h: usize, e: usize) -> SparseMatrix {
    let source = generate_stratum(h, e);
    let target = if h >= 1 && e >= 1 {
        generate_stratum(h - 1, e - 1)
    } else {
        StratumBasis {
            h: 0,
            e: 0,
            graphs: Vec::new(),
            keys: Vec::new(),
        }
    };
    boundary_between(&source, &target, |g, i| g.delete(i).ok())
}

fn boundary_between(source: &StratumBasis, target: &StratumBasis, op: impl Fn(&Graph, usize) -> Option<Graph> + Sync) -> SparseMatrix {
    let columns = source
        .graphs
        .par_iter()
        .map(|g| {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for i in 0..g.edge_count() {
                let Some(image) = op(g, i) else { continue };
                if !is_admissible(&image) {
                    continue;
                }
                let cert = canonical_certificate(&image);
                if let Some(row) = target.index_of_key(&cert.canonical_key) {
                    *acc.entry(row).or_insert(0) += position_sign(i) * cert.edge_sign as i64;
                }
            }
            acc.into_iter().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    SparseMatrix {
        rows: target.len(),
        cols: source.len(),
        columns,
    }
}

/// Largest matrix dimension for which ranks are confirmed over `Q`.
pub const EXACT_RANK_LIMIT: usize = 2000;

/// Rank of a boundary matrix over `F_p` (`p = 2⁶¹ − 1`), checked against a
/// second prime and, for matrices no larger than [`EXACT_RANK_LIMIT`], over `Q`.
pub fn certified_rank(m: &SparseMatrix) -> Result<RankReport> {
    let r1 = m.rank_mod::<P61>();
    let r2 = m.rank_mod::<P_ALT>();
    if r1 != r2 {
        return Err(Error::Invariant(format!("rank mod p disagrees between primes: {r1} vs {r2}")));
    }
    let exact = if m.rows.max(m.cols) <= EXACT_RANK_LIMIT {
        let r = m.rank_exact();
        if r != r1 {
            return Err(Error::Invariant(format!("rank over Q is {r}, rank mod p is {r1}")));
        }
        true
    } else {
        false
    };
    Ok(RankReport { rank: r1, exact })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    /// Whether the rank was also confirmed over the rationals.
    pub exact: bool,
}

/// Homology of one loop order: chain dimensions and `dim H_n` by degree `n = e − 2h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyColumn {
    pub h: usize,
    /// `(n, dim C_n)` for every nonempty stratum.
    pub chain_dims: BTreeMap<i64, usize>,
    /// `(n, dim H_n)`.
    pub homology: BTreeMap<i64, usize>,
    /// Whether every rank was confirmed over `Q`.
    pub exact: bool,
}

impl HomologyColumn {
    pub fn dim(&self, n: i64) -> usize {
        self.homology.get(&n).copied().unwrap_or(0)
    }
}

/// `dim H_n(GC_2)` with `h` loops for all degrees `n`.
pub fn homology_dimensions(h: usize) -> Result<HomologyColumn> {
    let strata = loop_order_strata(h);
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    let mut exact = true;
    for &e in strata.bases.keys() {
        let m = boundary_matrix_d(h, e);
        let r = certified_rank(&m)?;
        exact &= r.exact;
        ranks.insert(e, r.rank);
    }
    let mut chain_dims = BTreeMap::new();
    let mut homology = BTreeMap::new();
    for (&e, basis) in &strata.bases {
        let n = basis.degree();
        chain_dims.insert(n, basis.len());
        let out_rank = ranks.get(&e).copied().unwrap_or(0);
        let in_rank = ranks.get(&(e + 1)).copied().unwrap_or(0);
        let dim = basis
            .len()
            .checked_sub(out_rank + in_rank)
            .ok_or_else(|| Error::Invariant(format!("negative homology at h={h}, e={e}")))?;
        homology.insert(n, dim);
    }
    Ok(HomologyColumn {
        h,
        chain_dims,
        homology,
        exact,
    })
}

/// Homology columns for `h = 1..=h_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub columns: Vec<HomologyColumn>,
}

impl HomologyTable {
    pub fn compute(h_max: usize) -> Result<Self> {
        Ok(HomologyTable {
            columns: (1..=h_max).map(homology_dimensions).collect::<Result<_>>()?,
        })
    }

    /// Grid with rows `H_{h_max−2} … H_0` and one column per loop order.
    /// Degree `n` is shown for `h ≥ n + 2`; entries with `n = h − 2` are
    /// always zero (every such graph has a 2-valent vertex).
    pub fn to_text(&self) -> String {
        let h_max = self.columns.iter().map(|c| c.h).max().unwrap_or(0);
        let mut s = String::new();
        let top = h_max.saturating_sub(2) as i64;
        for n in (0..=top).rev() {
            let _ = write!(s, "H_{n:<3}|");
            for c in &self.columns {
                if (c.h as i64) < n + 2 {
                    s.push_str("   ");
                } else {
                    let _ = write!(s, "{:>3}", c.dim(n));
                }
            }
            s.push('\n');
        }
        s.push_str("-----+");
        s.push_str(&"---".repeat(self.columns.len()));
        s.push_str("\nh    |");
        for c in &self.columns {
            let _ = write!(s, "{:>3}", c.h);
        }
        s.push('\n');
        s
    }
}

/// Known homology dimensions of `GC_2` for `h ≤ 10`: `(h, n, dim H_n)` for the nonzero entries.
pub const TABLE1_NONZERO: &[(usize, i64, usize)] = &[
    (3, 0, 1),
    (5, 0, 1),
    (6, 3, 1),
    (7, 0, 1),
    (8, 0, 1),
    (8, 3, 1),
    (9, 0, 1),
    (9, 3, 1),
    (10, 0, 1),
    (10, 3, 2),
    (10, 7, 1),
];

/// The known value of `dim H_n` at `h` loops.
pub fn table1_value(h: usize, n: i64) -> usize {
    TABLE1_NONZERO
        .iter()
        .find(|&&(hh, nn, _)| hh == h && nn == n)
        .map(|&(_, _, d)| d)
        .unwrap_or(0)
}

/// Generators `X` of stratum `(h, e)` whose boundary is `± target`.
pub fn boundary_preimages(target: &GraphChain, h: usize, e: usize) -> Vec<(Graph, i8)> {
    let basis = generate_stratum(h, e);
    let neg = target.scale(&-BigRational::one());
    basis
        .graphs
        .iter()
        .filter_map(|g| {
            let d = differential_d(&GraphChain::from_graph(g));
            if d == *target {
                Some((g.clone(), 1))
            } else if d == neg {
                Some((g.clone(), -1))
            } else {
                None
            }
        })
        .collect()
}

/// Integer entries of a chain, for reporting (`None` if some coefficient is not integral).
pub fn integer_coefficients(chain: &GraphChain) -> Option<Vec<(Graph, i64)>> {
    chain
        .terms()
        .map(|(g, c)| {
            if c.is_integer() {
                let v = c.to_integer();
                let sign = if v.is_negative() { -1 } else { 1 };
                i64::try_from(v.abs()).ok().map(|a| (g.clone(), sign * a))
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{banana, complete_graph, cycle, fixture, wheel};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn cubic_graph_counts() {
        let counts: Vec<usize> = [4, 6, 8, 10].iter().map(|&n| cubic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }

    #[test]
    fn small_strata() {
        let w3 = generate_stratum(3, 6);
        assert_eq!(w3.len(), 1);
        assert_eq!(canonical_certificate(&w3.graphs[0]).canonical_key, canonical_certificate(&wheel(3).unwrap()).canonical_key);
        for e in 0..10 {
            assert!(generate_stratum(2, e).is_empty());
            assert!(generate_stratum(1, e).is_empty());
        }
        // W4 has an odd automorphism and is not a generator.
        let w4 = wheel(4).unwrap();
        assert!(admissible_but_zero(&w4));
        let key = canonical_certificate(&w4).canonical_key;
        assert!(generate_stratum(4, 8).index_of_key(&key).is_none());
    }

    fn admissible_but_zero(g: &Graph) -> bool {
        is_admissible(g) && !is_generator(g)
    }

    #[test]
    fn chain_orientation_signs() {
        let w3 = wheel(3).unwrap();
        let mut swapped = w3.clone();
        swapped.edges.swap(0, 1);
        let mut c = GraphChain::from_graph(&w3);
        c.add_graph(&swapped, q(1));
        assert!(c.is_zero());
        let c = GraphChain::from_graph(&w3);
        assert_eq!(c.coefficient_of(&w3), q(1));
        assert_eq!(c.coefficient_of(&swapped), q(-1));
        assert!(GraphChain::from_graph(&banana(4).unwrap()).is_zero());
        assert!(GraphChain::from_graph(&cycle(3).unwrap()).is_zero());
    }

    #[test]
    fn odd_wheels_are_cycles() {
        for n in [3, 5] {
            assert!(differential_d(&GraphChain::from_graph(&wheel(n).unwrap())).is_zero());
        }
        assert!(differential_delta(&GraphChain::from_graph(&wheel(3).unwrap())).is_zero());
    }

    #[test]
    fn d_and_delta_square_to_zero_up_to_five_loops() {
        for h in 3..=5 {
            let checks = check_differentials_square_to_zero(h);
            assert!(!checks.is_empty());
            for c in checks {
                assert!(c.d_squared_zero && c.delta_squared_zero, "{c:?}");
            }
        }
    }

    #[test]
    fn chain_level_d_matches_matrix() {
        let basis = generate_stratum(5, 11);
        let target = generate_stratum(5, 10);
        let m = boundary_matrix_d(5, 11).to_dense();
        for (j, g) in basis.graphs.iter().enumerate() {
            let d = differential_d(&GraphChain::from_graph(g));
            for (i, t) in target.graphs.iter().enumerate() {
                assert_eq!(d.coefficient_of(t), q(m[i][j]));
            }
        }
    }

    #[test]
    fn homology_low_loop_orders() {
        for h in 1..=5 {
            let col = homology_dimensions(h).unwrap();
            assert!(col.exact);
            for n in 0..=(h as i64) {
                assert_eq!(col.dim(n), table1_value(h, n), "h={h} n={n}");
            }
            assert!(col.homology.iter().filter(|(&n, _)| n < 0).all(|(_, &d)| d == 0));
        }
    }

    #[test]
    fn ck_pairs_of_w3_are_triangles_and_the_whole() {
        let w3 = wheel(3).unwrap();
        let terms = coproduct_ck(&w3).unwrap();
        // Proper core subgraphs of K4: the four triangles and the four 4-cycles.
        assert_eq!(terms.iter().filter(|t| t.edges.len() == 3).count(), 4);
        assert_eq!(terms.iter().filter(|t| t.edges.len() == 4).count(), 3);
        for t in &terms {
            assert!(t.subgraph.is_core());
            assert_eq!(t.quotient.edge_count(), 6 - t.edges.len());
        }
        let k4 = complete_graph(4).unwrap();
        let theta = k4.contract(0).unwrap();
        assert!(coproduct_ck(&theta).unwrap().iter().any(|t| t.subgraph.edge_count() == 2 && t.subgraph.vertex_count == 2));
        let with_bridge = wheel(3).unwrap().one_vertex_join(0, &cycle(3).unwrap(), 0);
        assert!(coproduct_ck(&with_bridge).unwrap().iter().all(|t| t.subgraph.is_core()));
    }

    #[test]
    fn x5_bounds_the_wheel_zigzag_relation() {
        let x5 = fixture("X5").unwrap();
        let expected = GraphChain::from_graph(&fixture("Z5").unwrap())
            .scale(&q(2))
            .sub(&GraphChain::from_graph(&fixture("W5").unwrap()));
        assert_eq!(differential_d(&GraphChain::from_graph(&x5)), expected);
        let pre = boundary_preimages(&expected, 5, 11);
        assert_eq!(pre.len(), 1);
    }

    #[test]
    fn table_text_layout() {
        let t = HomologyTable::compute(4).unwrap();
        let text = t.to_text();
        assert!(text.contains("H_0  |"));
        assert!(text.lines().last().unwrap().ends_with("  4"));
    }
}
