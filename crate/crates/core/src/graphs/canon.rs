//! Canonical labeling by colour refinement and individualization, with the
//! parity of the induced edge permutation tracked for graph-complex signs.

use super::Graph;
use serde::{Deserialize, Serialize};

/// Canonical form data for a graph.
///
/// Relabeling the graph by `vertex_map` (old vertex → new index) and
/// `edge_map` (old edge position → new position) yields the canonical
/// representative; `edge_sign` is the parity of `edge_map`, so that the
/// oriented class of the input equals `edge_sign` times the class of the
/// canonical representative with its canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub canonical_key: Vec<u8>,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub edge_sign: i8,
}

impl IsoCertificate {
    /// The canonical representative: relabeled vertices, canonical edge
    /// order, each edge stored as `(min, max)`.
    pub fn canonical_graph(&self, g: &Graph) -> Graph {
        let mut edges = vec![(0, 0); g.edges.len()];
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            let (x, y) = (self.vertex_map[a], self.vertex_map[b]);
            edges[self.edge_map[i]] = (x.min(y), x.max(y));
        }
        Graph {
            vertex_count: g.vertex_count,
            edges,
            label: None,
        }
    }
}

/// Multiplicity adjacency structure used by the search.
struct Adjacency {
    n: usize,
    mult: Vec<Vec<u32>>,
}

impl Adjacency {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count;
        let mut mult = vec![vec![0u32; n]; n];
        for &(a, b) in &g.edges {
            if a == b {
                mult[a][a] += 1;
            } else {
                mult[a][b] += 1;
                mult[b][a] += 1;
            }
        }
        Adjacency { n, mult }
    }

    /// Iterated colour refinement until the partition stops splitting.
    /// Colours are re-ranked densely after every round, so the result depends
    /// only on the input colouring, never on vertex names.
    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = rank(colors);
        loop {
            let sigs: Vec<(usize, u32, Vec<(usize, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<(usize, u32)> = (0..self.n)
                        .filter(|&u| u != v && self.mult[v][u] > 0)
                        .map(|u| (colors[u], self.mult[v][u]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], self.mult[v][v], nb)
                })
                .collect();
            let mut sorted: Vec<&(usize, u32, Vec<(usize, u32)>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            for v in 0..self.n {
                colors[v] = sorted.binary_search(&&sigs[v]).expect("signature present");
            }
            let new_classes = sorted.len();
            if new_classes == classes {
                return;
            }
            classes = new_classes;
        }
    }

    /// Upper-triangular multiplicity matrix under `pos` (vertex → position).
    fn key(&self, pos: &[usize]) -> Vec<u8> {
        let mut inv = vec![0; self.n];
        for (v, &p) in pos.iter().enumerate() {
            inv[p] = v;
        }
        let mut key = Vec::with_capacity(2 + self.n * (self.n + 1) / 2);
        key.extend_from_slice(&(self.n as u16).to_be_bytes());
        for i in 0..self.n {
            for j in i..self.n {
                key.push(self.mult[inv[i]][inv[j]].min(255) as u8);
            }
        }
        key
    }
}

/// Dense re-ranking of arbitrary colours; returns the number of classes.
fn rank(colors: &mut [usize]) -> usize {
    let mut vals: Vec<usize> = colors.to_vec();
    vals.sort_unstable();
    vals.dedup();
    for c in colors.iter_mut() {
        *c = vals.binary_search(c).expect("colour present");
    }
    vals.len()
}

struct Search<'a> {
    adj: &'a Adjacency,
    best_key: Option<Vec<u8>>,
    best_pos: Vec<usize>,
    /// Leaves equal to the best leaf (each gives an automorphism).
    equal_leaves: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn run(&mut self, mut colors: Vec<usize>) {
        self.adj.refine(&mut colors);
        let n = self.adj.n;
        let mut count = vec![0usize; n];
        for &c in &colors {
            count[c] += 1;
        }
        let target = (0..n).find(|&c| count[c] > 1);
        match target {
            None => {
                let key = self.adj.key(&colors);
                match &self.best_key {
                    Some(best) if key > *best => {}
                    Some(best) if key == *best => self.equal_leaves.push(colors),
                    _ => {
                        self.best_key = Some(key);
                        self.best_pos = colors.clone();
                        self.equal_leaves = vec![colors];
                    }
                }
            }
            Some(cell) => {
                for v in (0..n).filter(|&v| colors[v] == cell) {
                    let next: Vec<usize> = (0..n)
                        .map(|u| 2 * colors[u] + usize::from(colors[u] == cell && u != v))
                        .collect();
                    self.run(next);
                }
            }
        }
    }
}

fn search(g: &Graph) -> (Vec<u8>, Vec<usize>, Vec<Vec<usize>>) {
    let adj = Adjacency::new(g);
    if adj.n == 0 {
        return (vec![0, 0], Vec::new(), vec![Vec::new()]);
    }
    let mut s = Search {
        adj: &adj,
        best_key: None,
        best_pos: Vec::new(),
        equal_leaves: Vec::new(),
    };
    s.run(vec![0; adj.n]);
    (s.best_key.expect("at least one leaf"), s.best_pos, s.equal_leaves)
}

/// Edge positions after relabeling vertices by `pos`: edges are sorted by
/// their relabeled endpoint pair, ties (parallel edges, repeated tadpoles)
/// kept in original order.
fn edge_positions(g: &Graph, pos: &[usize]) -> Vec<usize> {
    let mut order: Vec<(usize, usize, usize)> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let (x, y) = (pos[a], pos[b]);
            (x.min(y), x.max(y), i)
        })
        .collect();
    order.sort_unstable();
    let mut map = vec![0; g.edges.len()];
    for (new, &(_, _, old)) in order.iter().enumerate() {
        map[old] = new;
    }
    map
}

/// Sign of a permutation given in one-line form.
pub(crate) fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Canonical certificate of `g`.
pub fn canonical_certificate(g: &Graph) -> IsoCertificate {
    let (key, pos, _) = search(g);
    let edge_map = edge_positions(g, &pos);
    let edge_sign = permutation_sign(&edge_map);
    IsoCertificate {
        canonical_key: key,
        vertex_map: pos,
        edge_map,
        edge_sign,
    }
}

/// All automorphisms as `(vertex permutation, induced edge permutation)`.
///
/// Only the automorphisms that fix each parallel bundle pointwise in order
/// are listed (one per vertex automorphism); swaps inside a bundle of
/// parallel edges or tadpoles are additional odd automorphisms, accounted
/// for by [`has_odd_automorphism`].
pub fn automorphisms(g: &Graph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (_, best, leaves) = search(g);
    let n = g.vertex_count;
    let mut best_inv = vec![0; n];
    for (v, &p) in best.iter().enumerate() {
        best_inv[p] = v;
    }
    let best_edges = edge_positions(g, &best);
    let mut best_edges_inv = vec![0; best_edges.len()];
    for (e, &p) in best_edges.iter().enumerate() {
        best_edges_inv[p] = e;
    }
    leaves
        .iter()
        .map(|pos| {
            let vperm: Vec<usize> = (0..n).map(|v| best_inv[pos[v]]).collect();
            let emap = edge_positions(g, pos);
            let eperm: Vec<usize> = emap.iter().map(|&p| best_edges_inv[p]).collect();
            (vperm, eperm)
        })
        .collect()
}

/// True iff some automorphism induces an odd permutation of the edges.
///
/// Any pair of parallel edges, or two tadpoles at one vertex, gives an odd
/// automorphism by transposition.
pub fn has_odd_automorphism(g: &Graph) -> bool {
    if g.has_multiple_edge() {
        return true;
    }
    let mut tadpoles = vec![0usize; g.vertex_count];
    for &(a, b) in &g.edges {
        if a == b {
            tadpoles[a] += 1;
            if tadpoles[a] >= 2 {
                return true;
            }
        }
    }
    automorphisms(g).iter().any(|(_, e)| permutation_sign(e) < 0)
}
