//! The half-edge graph model with legs, path machinery, and brute-force
//! prime enumeration.
//!
//! A graph is a set of vertices, a set of half-edges, a root map sending each
//! half-edge to the vertex it is attached to, and an involution pairing
//! half-edges. Orbits of size two under the involution are edges; fixed
//! points are legs. Half-edges are numbered canonically: edge `i` owns
//! half-edges `2i` (rooted at its first endpoint) and `2i+1`, and legs follow
//! after all edge halves in listing order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_labels: Vec<String>,
    root: Vec<usize>,
    involution: Vec<usize>,
    edge_count: usize,
    /// Half-edges rooted at each vertex, ascending.
    at_vertex: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from explicit edge endpoint pairs and leg roots,
    /// assigning half-edge ids canonically. Rejects disconnected input.
    pub fn new(
        vertex_labels: Vec<String>,
        edges: &[(usize, usize)],
        legs: &[usize],
    ) -> Result<Graph> {
        let n = vertex_labels.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have a vertex".into()));
        }
        for (i, a) in vertex_labels.iter().enumerate() {
            if vertex_labels[..i].contains(a) {
                return Err(Error::InvalidGraph(format!("duplicate vertex label {a:?}")));
            }
        }
        let m = edges.len();
        let k = 2 * m + legs.len();
        let mut root = vec![0usize; k];
        let mut involution = vec![0usize; k];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} has endpoint out of range"
                )));
            }
            root[2 * i] = a;
            root[2 * i + 1] = b;
            involution[2 * i] = 2 * i + 1;
            involution[2 * i + 1] = 2 * i;
        }
        for (j, &v) in legs.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidGraph(format!("leg {j} has root out of range")));
            }
            root[2 * m + j] = v;
            involution[2 * m + j] = 2 * m + j;
        }
        let mut at_vertex = vec![Vec::new(); n];
        for (h, &v) in root.iter().enumerate() {
            at_vertex[v].push(h);
        }
        let g = Graph {
            vertex_labels,
            root,
            involution,
            edge_count: m,
            at_vertex,
        };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &h in &self.at_vertex[v] {
                let w = self.root[self.involution[h]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    /// Number of half-edges, `k = 2m + l`.
    pub fn half_edge_count(&self) -> usize {
        self.root.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn leg_count(&self) -> usize {
        self.half_edge_count() - 2 * self.edge_count
    }

    /// First Betti number `b1 = m - n + 1` (legs do not contribute).
    pub fn betti(&self) -> i64 {
        self.edge_count as i64 - self.vertex_count() as i64 + 1
    }

    pub fn root(&self, h: usize) -> usize {
        self.root[h]
    }

    pub fn involution(&self, h: usize) -> usize {
        self.involution[h]
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.involution[h] == h
    }

    pub fn valency(&self, v: usize) -> usize {
        self.at_vertex[v].len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// Half-edges rooted at `v`, ascending.
    pub fn half_edges_at(&self, v: usize) -> &[usize] {
        &self.at_vertex[v]
    }

    /// Half-edges that may follow `h` in a path (those rooted at the far end
    /// of `h`), including the immediate reversal.
    pub fn successors(&self, h: usize) -> &[usize] {
        self.half_edges_at(self.root[self.involution[h]])
    }

    /// Name of a half-edge: `e3` / `e3'` for the two halves of edge 3, `l0`
    /// for the first leg.
    pub fn half_edge_name(&self, h: usize) -> String {
        if h < 2 * self.edge_count {
            if h % 2 == 0 {
                format!("e{}", h / 2)
            } else {
                format!("e{}'", h / 2)
            }
        } else {
            format!("l{}", h - 2 * self.edge_count)
        }
    }

    /// A simple graph (no loops, no parallel edges, no legs, no parallel
    /// leg/loop mixtures) is one where a half-edge is determined by its
    /// ordered endpoint pair; closed paths can then be named by their vertex
    /// sequence.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for h in 0..self.half_edge_count() {
            if self.is_leg(h) || self.root[h] == self.root[self.involution[h]] {
                return false;
            }
            if !seen.insert((self.root[h], self.root[self.involution[h]])) {
                return false;
            }
        }
        true
    }

    /// Adjacency matrix for a graph with legs: the diagonal counts two per
    /// loop plus one per leg.
    pub fn adjacency_matrix(&self) -> Mat<i64> {
        let n = self.vertex_count();
        let mut a = Mat::zeros(n, n);
        for h in 0..self.half_edge_count() {
            let u = self.root[h];
            let v = self.root[self.involution[h]];
            *a.at_mut(u, v) += 1;
        }
        a
    }

    pub fn valency_matrix(&self) -> Mat<i64> {
        let n = self.vertex_count();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                self.valency(i) as i64
            } else {
                0
            }
        })
    }

    pub fn validate_path(&self, path: &HalfEdgePath) -> Result<()> {
        if path.half_edges.is_empty() {
            return Err(Error::InvalidPath("path must be nonempty".into()));
        }
        for &h in &path.half_edges {
            if h >= self.half_edge_count() {
                return Err(Error::InvalidPath(format!("half-edge {h} out of range")));
            }
        }
        for w in path.half_edges.windows(2) {
            if self.root[w[1]] != self.root[self.involution[w[0]]] {
                return Err(Error::InvalidPath(format!(
                    "half-edge {} does not continue {}",
                    w[1], w[0]
                )));
            }
        }
        Ok(())
    }

    pub fn is_closed(&self, path: &HalfEdgePath) -> bool {
        let first = path.half_edges[0];
        let last = *path.half_edges.last().unwrap();
        self.root[first] == self.root[self.involution[last]]
    }

    /// Cyclic reducedness of a closed path: no `h` directly followed by its
    /// involution, indices read modulo the length. This single rule covers
    /// both backtracks and tails.
    pub fn is_cyclically_reduced(&self, path: &HalfEdgePath) -> bool {
        let n = path.half_edges.len();
        (0..n).all(|j| path.half_edges[(j + 1) % n] != self.involution[path.half_edges[j]])
    }

    /// Vertex sequence `v0..vn` of a path.
    pub fn vertex_sequence(&self, path: &HalfEdgePath) -> Vec<usize> {
        let mut out = vec![self.root[path.half_edges[0]]];
        out.extend(
            path.half_edges
                .iter()
                .map(|&h| self.root[self.involution[h]]),
        );
        out
    }

    pub fn reversed(&self, path: &HalfEdgePath) -> HalfEdgePath {
        HalfEdgePath {
            half_edges: path
                .half_edges
                .iter()
                .rev()
                .map(|&h| self.involution[h])
                .collect(),
        }
    }

    /// Human-readable path name: the vertex sequence (final vertex dropped)
    /// when the graph is simple, half-edge names otherwise.
    pub fn path_display(&self, path: &HalfEdgePath) -> String {
        if self.is_simple() {
            let seq = self.vertex_sequence(path);
            seq[..seq.len() - 1]
                .iter()
                .map(|&v| self.vertex_label(v).to_string())
                .collect::<Vec<_>>()
                .join("")
        } else {
            path.half_edges
                .iter()
                .map(|&h| self.half_edge_name(h))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Largest number of continuations of any half-edge; the branching
    /// factor seen by path enumeration.
    pub fn max_branching(&self) -> usize {
        (0..self.half_edge_count())
            .map(|h| self.successors(h).len())
            .max()
            .unwrap_or(0)
    }

    /// Exact number of closed reduced paths of length `n`, by depth-first
    /// enumeration over half-edge sequences with cyclic reducedness.
    pub fn closed_reduced_count(&self, n: usize, allow_big: bool) -> Result<u128> {
        assert!(n >= 1);
        enumeration_guard(n, self.max_branching(), allow_big)?;
        let mut total: u128 = 0;
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        for start in 0..self.half_edge_count() {
            stack.push(start);
            self.count_dfs(n, &mut stack, &mut total);
            stack.pop();
        }
        Ok(total)
    }

    fn count_dfs(&self, n: usize, stack: &mut Vec<usize>, total: &mut u128) {
        let last = *stack.last().unwrap();
        if stack.len() == n {
            let start = stack[0];
            if self.root[start] == self.root[self.involution[last]]
                && start != self.involution[last]
            {
                *total += 1;
            }
            return;
        }
        for &h in self.successors(last) {
            if h == self.involution[last] {
                continue;
            }
            stack.push(h);
            self.count_dfs(n, stack, total);
            stack.pop();
        }
    }

    /// All primes of length at most `max_len`: equivalence classes under
    /// rotation of primitive closed reduced paths, canonicalized and
    /// deduplicated. A prime and its reversal are distinct.
    pub fn enumerate_primes(&self, max_len: usize, allow_big: bool) -> Result<Vec<GraphPrime>> {
        assert!(max_len >= 1);
        enumeration_guard(max_len, self.max_branching(), allow_big)?;
        let mut found = std::collections::BTreeSet::new();
        let mut stack: Vec<usize> = Vec::new();
        for start in 0..self.half_edge_count() {
            stack.push(start);
            self.prime_dfs(max_len, &mut stack, &mut found);
            stack.pop();
        }
        Ok(found
            .into_iter()
            .map(|half_edges| GraphPrime {
                rep: HalfEdgePath { half_edges },
            })
            .collect())
    }

    fn prime_dfs(
        &self,
        max_len: usize,
        stack: &mut Vec<usize>,
        found: &mut std::collections::BTreeSet<Vec<usize>>,
    ) {
        let last = *stack.last().unwrap();
        let start = stack[0];
        if self.root[start] == self.root[self.involution[last]]
            && start != self.involution[last]
            && minimal_period(stack) == stack.len()
        {
            found.insert(canonical_rotation(stack));
        }
        if stack.len() == max_len {
            return;
        }
        for &h in self.successors(last) {
            if h == self.involution[last] {
                continue;
            }
            stack.push(h);
            self.prime_dfs(max_len, stack, found);
            stack.pop();
        }
    }

    // Named small graphs used throughout the examples and tests.

    /// `F_m`: a single vertex with `m` loops.
    pub fn bouquet(m: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..m).map(|_| (0, 0)).collect();
        Graph::new(vec!["v".into()], &edges, &[]).unwrap()
    }

    /// `L_m`: two vertices joined by `m` edges.
    pub fn dipole(m: usize) -> Graph {
        assert!(m >= 1);
        let edges: Vec<(usize, usize)> = (0..m).map(|_| (0, 1)).collect();
        Graph::new(vec!["a".into(), "b".into()], &edges, &[]).unwrap()
    }

    /// Complete graph on `n` vertices labeled `1..n`.
    pub fn complete(n: usize) -> Graph {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(labels, &edges, &[]).unwrap()
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(labels, &edges, &[]).unwrap()
    }

    /// A single vertex carrying `l` legs.
    pub fn star_of_legs(l: usize) -> Graph {
        Graph::new(vec!["v".into()], &[], &vec![0; l]).unwrap()
    }
}

/// Refuses enumerations whose state space is out of desk range unless
/// explicitly overridden.
pub(crate) fn enumeration_guard(len: usize, branching: usize, allow_big: bool) -> Result<()> {
    if allow_big || branching <= 1 {
        return Ok(());
    }
    if len as f64 * (branching as f64).log2() > 40.0 {
        return Err(Error::EnumerationGuard { length: len, branching });
    }
    Ok(())
}

/// Smallest period of a sequence under cyclic shifts; divides the length.
pub(crate) fn minimal_period<T: PartialEq>(seq: &[T]) -> usize {
    let n = seq.len();
    for p in 1..=n {
        if n % p == 0 && (0..n).all(|i| seq[i] == seq[(i + p) % n]) {
            return p;
        }
    }
    n
}

/// Lexicographically least rotation of a sequence.
pub(crate) fn canonical_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let n = seq.len();
    let mut best: Option<Vec<T>> = None;
    for s in 0..n {
        let rot: Vec<T> = (0..n).map(|i| seq[(s + i) % n].clone()).collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// A walk given by its half-edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfEdgePath {
    pub half_edges: Vec<usize>,
}

impl HalfEdgePath {
    pub fn new(half_edges: Vec<usize>) -> HalfEdgePath {
        HalfEdgePath { half_edges }
    }

    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }
}

/// A prime of a graph: the canonical (lexicographically least) rotation of a
/// primitive closed reduced path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphPrime {
    rep: HalfEdgePath,
}

impl GraphPrime {
    /// Canonicalizes a closed reduced primitive path; `None` when the path is
    /// not primitive (or not closed reduced).
    pub fn from_path(graph: &Graph, path: &HalfEdgePath) -> Option<GraphPrime> {
        if !graph.is_closed(path) || !graph.is_cyclically_reduced(path) {
            return None;
        }
        if minimal_period(&path.half_edges) != path.half_edges.len() {
            return None;
        }
        Some(GraphPrime {
            rep: HalfEdgePath {
                half_edges: canonical_rotation(&path.half_edges),
            },
        })
    }

    pub fn representative(&self) -> &HalfEdgePath {
        &self.rep
    }

    pub fn length(&self) -> usize {
        self.rep.half_edges.len()
    }

    /// Display name with the rotation chosen to minimize the printed form.
    pub fn display(&self, graph: &Graph) -> String {
        let n = self.length();
        (0..n)
            .map(|s| {
                let rot = HalfEdgePath::new(
                    (0..n)
                        .map(|i| self.rep.half_edges[(s + i) % n])
                        .collect(),
                );
                graph.path_display(&rot)
            })
            .min()
            .unwrap()
    }
}

/// On-disk description of a graph. Half-edge ids are implied by the listing
/// order: edge `i` gets halves `2i` and `2i+1`, legs follow all edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDescription {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub legs: Vec<String>,
}

impl GraphDescription {
    pub fn to_graph(&self) -> Result<Graph> {
        let index_of = |label: &str| -> Result<usize> {
            self.vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex label {label:?}")))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for (a, b) in &self.edges {
            edges.push((index_of(a)?, index_of(b)?));
        }
        let mut legs = Vec::with_capacity(self.legs.len());
        for v in &self.legs {
            legs.push(index_of(v)?);
        }
        Graph::new(self.vertices.clone(), &edges, &legs)
    }

    pub fn from_graph(graph: &Graph) -> GraphDescription {
        let label = |v: usize| graph.vertex_label(v).to_string();
        GraphDescription {
            vertices: graph.vertex_labels().to_vec(),
            edges: (0..graph.edge_count())
                .map(|i| (label(graph.root(2 * i)), label(graph.root(2 * i + 1))))
                .collect(),
            legs: (2 * graph.edge_count()..graph.half_edge_count())
                .map(|h| label(graph.root(h)))
                .collect(),
        }
    }
}
