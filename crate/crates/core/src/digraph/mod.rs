//! Finite digraphs with multi-edges and loops.

mod io;
mod morphism;

pub use io::{read_digraph_json, write_digraph_json, DigraphFile};
pub use morphism::{
    check_cover, deck_group, is_galois, quotient_digraph, DeckTransformation, DigraphMorphism,
    GroupAction,
};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A digraph with densely indexed vertices and edges.
///
/// Edge names are optional; unnamed edges render as `e<index>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertex_names: Vec<String>,
    edge_names: Option<Vec<String>>,
    ends: Vec<(usize, usize)>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from named vertices and `(name, origin, target)` edges.
    pub fn new(vertex_names: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<Self> {
        let mut names = HashSet::new();
        for (k, (name, _, _)) in edges.iter().enumerate() {
            if !names.insert(name.as_str()) {
                return Err(Error::MalformedDigraph(format!(
                    "duplicate edge id {name:?} at edge {k}"
                )));
            }
        }
        let ends = edges.iter().map(|(_, o, t)| (*o, *t)).collect();
        let edge_names = edges.into_iter().map(|(n, _, _)| n).collect();
        Self::build(vertex_names, Some(edge_names), ends)
    }

    /// Builds a digraph on `n` vertices named `v0, v1, ...` with anonymous edges.
    pub fn from_edges(n: usize, ends: Vec<(usize, usize)>) -> Result<Self> {
        Self::build((0..n).map(|i| format!("v{i}")).collect(), None, ends)
    }

    pub(crate) fn with_anonymous_edges(
        vertex_names: Vec<String>,
        ends: Vec<(usize, usize)>,
    ) -> Result<Self> {
        Self::build(vertex_names, None, ends)
    }

    fn build(
        vertex_names: Vec<String>,
        edge_names: Option<Vec<String>>,
        ends: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = vertex_names.len();
        let mut seen = HashSet::new();
        for v in &vertex_names {
            if !seen.insert(v.as_str()) {
                return Err(Error::MalformedDigraph(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (e, &(o, t)) in ends.iter().enumerate() {
            if o >= n || t >= n {
                return Err(Error::MalformedDigraph(format!(
                    "edge {e} joins {o} -> {t} but there are only {n} vertices"
                )));
            }
            out_edges[o].push(e);
            in_edges[t].push(e);
        }
        Ok(Digraph {
            vertex_names,
            edge_names,
            ends,
            out_edges,
            in_edges,
        })
    }

    /// One vertex with `k` loops.
    pub fn bouquet(k: usize) -> Self {
        Self::from_edges(1, vec![(0, 0); k]).expect("loops on a single vertex")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn edge_name(&self, e: usize) -> String {
        match &self.edge_names {
            Some(names) => names[e].clone(),
            None => format!("e{e}"),
        }
    }

    pub fn origin(&self, e: usize) -> usize {
        self.ends[e].0
    }

    pub fn target(&self, e: usize) -> usize {
        self.ends[e].1
    }

    pub fn ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// Entry `(i, j)` counts edges from `v_j` to `v_i`.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut counts = vec![0u64; n * n];
        for &(o, t) in &self.ends {
            counts[t * n + o] += 1;
        }
        IntMatrix::new(n, n, counts.into_iter().map(BigInt::from).collect()).unwrap()
    }

    /// Strongly connected components, each sorted, listed by smallest member.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        // first pass: finishing order on the digraph
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for s in 0..n {
            if visited[s] {
                continue;
            }
            visited[s] = true;
            let mut stack = vec![(s, 0usize)];
            while let Some(&mut (v, ref mut k)) = stack.last_mut() {
                if let Some(&e) = self.out_edges[v].get(*k) {
                    *k += 1;
                    let w = self.target(e);
                    if !visited[w] {
                        visited[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        // second pass: reverse digraph in decreasing finishing time
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for &s in order.iter().rev() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &self.in_edges[v] {
                    let w = self.origin(e);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps.sort();
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.vertex_count() > 0 && self.strongly_connected_components().len() == 1
    }
}

/// Number of closed paths of length `m` with a distinguished starting edge.
pub fn count_closed_paths(d: &Digraph, m: usize) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::ZeroLength);
    }
    if m <= 3 {
        return Ok(closed_paths_by_enumeration(d, m));
    }
    let a = d.adjacency_matrix();
    let mut power = a.clone();
    for _ in 1..m {
        power = &power * &a;
    }
    Ok((0..d.vertex_count()).fold(BigInt::zero(), |acc, i| acc + power.get(i, i)))
}

/// Explicit enumeration of closed edge sequences `e_1 ... e_m`.
pub fn closed_paths_by_enumeration(d: &Digraph, m: usize) -> BigInt {
    fn extend(d: &Digraph, start: usize, at: usize, left: usize) -> u64 {
        if left == 0 {
            return u64::from(at == start);
        }
        d.out_edges(at)
            .iter()
            .map(|&e| extend(d, start, d.target(e), left - 1))
            .sum()
    }
    if m == 0 {
        return BigInt::zero();
    }
    let total: u64 = (0..d.edge_count())
        .map(|e| extend(d, d.origin(e), d.target(e), m - 1))
        .sum();
    BigInt::from(total)
}
