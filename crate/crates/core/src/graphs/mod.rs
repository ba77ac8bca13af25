//! Finite multigraphs with ordered, oriented edges.
//!
//! The position of an edge in [`Graph::edges`] is its index `0..e_G`; the
//! list order is the orientation of the graph in the graph complex. Each edge
//! also carries a direction `(tail, head)`, used only by the incidence and
//! cycle matrices (the Kirchhoff polynomial and the canonical forms do not
//! depend on it).

mod canon;
mod fixtures;

pub use canon::{automorphisms, canonical_certificate, has_odd_automorphism, IsoCertificate};
pub use fixtures::{banana, complete_graph, cycle, fixture, fixture_names, wheel};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A multigraph with ordered, directed edges `(tail, head)`. Tadpoles and
/// parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    #[serde(rename = "v")]
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Union–find over vertex indices (path halving, union by size).
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if they were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

impl Graph {
    /// Builds a graph, validating vertex indices.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        for &(a, b) in &edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index: v,
                        vertices: vertex_count,
                    });
                }
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let mut ds = DisjointSets::new(self.vertex_count);
        let mut c = self.vertex_count;
        for &(a, b) in &self.edges {
            if ds.union(a, b) {
                c -= 1;
            }
        }
        c
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }

    /// First Betti number `h = e − v + (#components)`.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    /// Degree of each vertex (a tadpole contributes 2).
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_tadpole(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        a == b
    }

    pub fn has_tadpole(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// True if two distinct edges join the same pair of distinct vertices.
    pub fn has_multiple_edge(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .filter(|&&(a, b)| a != b)
            .any(|&(a, b)| !seen.insert((a.min(b), a.max(b))))
    }

    pub fn is_simple(&self) -> bool {
        !self.has_tadpole() && !self.has_multiple_edge()
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e >= self.edges.len() {
            return Err(Error::EdgeOutOfRange {
                index: e,
                edges: self.edges.len(),
            });
        }
        Ok(())
    }

    /// Identifies the endpoints of edge `e` and removes it; the remaining
    /// edges keep their relative order. Contracting a tadpole simply removes it.
    ///
    /// The surviving vertex is the smaller endpoint; higher vertex indices
    /// shift down by one.
    pub fn contract(&self, e: usize) -> Result<Graph> {
        self.check_edge(e)?;
        let (a, b) = self.edges[e];
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(self.edges.len() - 1);
        if a == b {
            edges.extend(self.edges.iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &ed)| ed));
            return Ok(Graph {
                vertex_count: self.vertex_count,
                edges,
                label: None,
            });
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |v: usize| {
            if v == gone {
                keep
            } else if v > gone {
                v - 1
            } else {
                v
            }
        };
        for (i, &(s, t)) in self.edges.iter().enumerate() {
            if i != e {
                edges.push((relabel(s), relabel(t)));
            }
        }
        Ok(Graph {
            vertex_count: self.vertex_count - 1,
            edges,
            label: None,
        })
    }

    /// Like [`Graph::contract`], but contracting a tadpole yields the empty graph (`None`).
    pub fn contract_kill_loops(&self, e: usize) -> Result<Option<Graph>> {
        self.check_edge(e)?;
        if self.is_tadpole(e) {
            return Ok(None);
        }
        self.contract(e).map(Some)
    }

    /// Removes edge `e`, keeping every vertex.
    pub fn delete(&self, e: usize) -> Result<Graph> {
        self.check_edge(e)?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &ed)| ed)
            .collect();
        Ok(Graph {
            vertex_count: self.vertex_count,
            edges,
            label: None,
        })
    }

    /// Contracts every edge of the subset `sub` (tadpoles created along the
    /// way are removed as part of the subset; the rest keep their order).
    pub fn contract_subgraph(&self, sub: &[usize]) -> Result<Graph> {
        for &e in sub {
            self.check_edge(e)?;
        }
        let mut ds = DisjointSets::new(self.vertex_count);
        for &e in sub {
            let (a, b) = self.edges[e];
            ds.union(a, b);
        }
        let mut root_index = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            let r = ds.find(v);
            if root_index[r] == usize::MAX {
                root_index[r] = next;
                next += 1;
            }
        }
        let mut edges = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if !sub.contains(&i) {
                edges.push((root_index[ds.find(a)], root_index[ds.find(b)]));
            }
        }
        Ok(Graph {
            vertex_count: next,
            edges,
            label: None,
        })
    }

    /// The subgraph formed by an edge subset, on the vertices it touches.
    /// Returns the subgraph and, for each of its edges, the original index.
    pub fn edge_subgraph(&self, sub: &[usize]) -> (Graph, Vec<usize>) {
        let mut sorted: Vec<usize> = sub.to_vec();
        sorted.sort_unstable();
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut edges = Vec::with_capacity(sorted.len());
        for &e in &sorted {
            let (a, b) = self.edges[e];
            for v in [a, b] {
                if map[v] == usize::MAX {
                    map[v] = next;
                    next += 1;
                }
            }
            edges.push((map[a], map[b]));
        }
        (
            Graph {
                vertex_count: next,
                edges,
                label: None,
            },
            sorted,
        )
    }

    /// Indices of bridges (edges whose removal increases the number of components).
    pub fn bridges(&self) -> Vec<usize> {
        let base = self.component_count();
        (0..self.edges.len())
            .filter(|&e| !self.is_tadpole(e) && self.delete(e).map(|g| g.component_count() > base).unwrap_or(false))
            .collect()
    }

    /// True iff the graph has no bridge (every edge lies on a cycle).
    pub fn is_core(&self) -> bool {
        self.bridges().is_empty()
    }

    /// True if some vertex disconnects the graph when removed (with its
    /// tadpoles counted as a separate block), i.e. the graph is a one-vertex
    /// join of two graphs with at least one edge each.
    pub fn is_one_vertex_reducible(&self) -> bool {
        if self.edges.len() < 2 {
            return false;
        }
        for v in 0..self.vertex_count {
            // Split the edges at v into blocks reachable without passing through v.
            let mut ds = DisjointSets::new(self.edges.len());
            // Two edges are in the same block if they share a vertex other than v.
            let mut first_edge_at: Vec<Option<usize>> = vec![None; self.vertex_count];
            let mut touches_v = false;
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                if a == v || b == v {
                    touches_v = true;
                }
                if a == v && b == v {
                    continue; // a tadpole at v is its own block
                }
                for w in [a, b] {
                    if w == v {
                        continue;
                    }
                    match first_edge_at[w] {
                        Some(j) => {
                            ds.union(i, j);
                        }
                        None => first_edge_at[w] = Some(i),
                    }
                }
            }
            if !touches_v {
                continue;
            }
            let mut roots = std::collections::HashSet::new();
            for i in 0..self.edges.len() {
                roots.insert(ds.find(i));
            }
            if roots.len() >= 2 {
                return true;
            }
        }
        false
    }

    /// Signed vertex–edge incidence matrix `∂` (v × e): `+1` at the head,
    /// `−1` at the tail, zero column for a tadpole.
    pub fn incidence(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.edges.len()]; self.vertex_count];
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            if s != t {
                m[t][e] += 1;
                m[s][e] -= 1;
            }
        }
        m
    }

    /// All spanning trees (connected input), each as a sorted edge-index list.
    pub fn spanning_trees(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let need = self.vertex_count - 1;
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(need);
        let candidates: Vec<usize> = (0..self.edges.len()).filter(|&e| !self.is_tadpole(e)).collect();
        self.trees_rec(&candidates, 0, need, &mut chosen, &mut out);
        Ok(out)
    }

    fn trees_rec(&self, cand: &[usize], start: usize, need: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == need {
            out.push(chosen.clone());
            return;
        }
        let remaining = need - chosen.len();
        for idx in start..cand.len() {
            if cand.len() - idx < remaining {
                break;
            }
            let e = cand[idx];
            chosen.push(e);
            if self.is_forest(chosen) {
                self.trees_rec(cand, idx + 1, need, chosen, out);
            }
            chosen.pop();
        }
    }

    fn is_forest(&self, sub: &[usize]) -> bool {
        let mut ds = DisjointSets::new(self.vertex_count);
        sub.iter().all(|&e| {
            let (a, b) = self.edges[e];
            ds.union(a, b)
        })
    }

    /// Greedy spanning tree: scan edges in index order, keep those joining new components.
    pub fn greedy_spanning_tree(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut ds = DisjointSets::new(self.vertex_count);
        Ok((0..self.edges.len())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                ds.union(a, b)
            })
            .collect())
    }

    /// Fundamental cycle basis of the greedy (lowest-index) spanning tree.
    ///
    /// Returns the `e × h` matrix `H` whose column `j` is the cycle closed by
    /// the `j`-th non-tree edge (in increasing index order), traversed in that
    /// edge's direction; entries are the signed traversal counts of each edge.
    pub fn cycle_basis(&self) -> Result<Vec<Vec<i64>>> {
        let tree = self.greedy_spanning_tree()?;
        self.cycle_basis_for_tree(&tree)
    }

    /// Fundamental cycle basis relative to a given spanning tree.
    pub fn cycle_basis_for_tree(&self, tree: &[usize]) -> Result<Vec<Vec<i64>>> {
        let n = self.vertex_count;
        let in_tree: Vec<bool> = (0..self.edges.len()).map(|e| tree.contains(&e)).collect();
        // Root the tree at vertex 0: parent edge and depth by BFS.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &e in tree {
            let (a, b) = self.edges[e];
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        if depth.iter().any(|&d| d == usize::MAX) {
            return Err(Error::Disconnected);
        }
        let non_tree: Vec<usize> = (0..self.edges.len()).filter(|&e| !in_tree[e]).collect();
        let mut h = vec![vec![0i64; non_tree.len()]; self.edges.len()];
        for (col, &f) in non_tree.iter().enumerate() {
            h[f][col] = 1;
            let (s, t) = self.edges[f];
            // Walk from t back to s through the tree: path t -> lca -> s.
            let (mut u, mut w) = (t, s);
            // Edges on the t side are traversed upward (towards the lca) starting at t.
            let mut up_from_t = Vec::new();
            let mut up_from_s = Vec::new();
            while u != w {
                if depth[u] >= depth[w] {
                    let (p, e) = parent[u].unwrap();
                    up_from_t.push((u, p, e));
                    u = p;
                } else {
                    let (p, e) = parent[w].unwrap();
                    up_from_s.push((w, p, e));
                    w = p;
                }
            }
            // Traverse t -> ... -> lca (moving from child to parent).
            for (from, to, e) in up_from_t {
                h[e][col] += self.traversal_sign(e, from, to);
            }
            // Then lca -> ... -> s (moving from parent to child).
            for (child, par, e) in up_from_s {
                h[e][col] += self.traversal_sign(e, par, child);
            }
        }
        Ok(h)
    }

    fn traversal_sign(&self, e: usize, from: usize, to: usize) -> i64 {
        let (s, t) = self.edges[e];
        if s == from && t == to {
            1
        } else {
            debug_assert!(s == to && t == from);
            -1
        }
    }

    /// Applies a vertex permutation (`vperm[old] = new`) and an edge
    /// permutation (`eperm[old] = new position`).
    pub fn relabel(&self, vperm: &[usize], eperm: &[usize]) -> Graph {
        let mut edges = vec![(0, 0); self.edges.len()];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            edges[eperm[i]] = (vperm[a], vperm[b]);
        }
        Graph {
            vertex_count: self.vertex_count,
            edges,
            label: self.label.clone(),
        }
    }

    /// Disjoint union followed by identifying vertex `a` of `self` with vertex `b` of `other`.
    pub fn one_vertex_join(&self, a: usize, other: &Graph, b: usize) -> Graph {
        let offset = self.vertex_count;
        let map = |v: usize| {
            if v == b {
                a
            } else if v < b {
                v + offset
            } else {
                v + offset - 1
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(s, t)| (map(s), map(t))));
        Graph {
            vertex_count: self.vertex_count + other.vertex_count - 1,
            edges,
            label: None,
        }
    }

    /// Replaces edge `e` by two edges in series: `e` becomes `tail -> new`
    /// and a new last edge `new -> head` is appended.
    pub fn subdivide(&self, e: usize) -> Result<Graph> {
        self.check_edge(e)?;
        let (s, t) = self.edges[e];
        let w = self.vertex_count;
        let mut edges = self.edges.clone();
        edges[e] = (s, w);
        edges.push((w, t));
        Ok(Graph {
            vertex_count: w + 1,
            edges,
            label: None,
        })
    }

    /// Appends a copy of edge `e` (parallel doubling).
    pub fn double_edge(&self, e: usize) -> Result<Graph> {
        self.check_edge(e)?;
        let mut edges = self.edges.clone();
        edges.push(self.edges[e]);
        Ok(Graph {
            vertex_count: self.vertex_count,
            edges,
            label: None,
        })
    }

    /// Graphviz DOT rendering (for inspection only).
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for v in 0..self.vertex_count {
            s.push_str(&format!("  v{v};\n"));
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            s.push_str(&format!("  v{a} -> v{b} [label=\"{}\"];\n", i + 1));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    /// Parses the JSON graph format `{"v": n, "edges": [[t,h],...], "label": ...}`.
    pub fn from_json(text: &str) -> Result<Graph> {
        let g: Graph = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let label = g.label.clone();
        let mut checked = Graph::new(g.vertex_count, g.edges)?;
        checked.label = label;
        Ok(checked)
    }
}
