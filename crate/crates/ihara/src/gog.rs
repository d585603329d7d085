//! Edge-trivial graphs of groups: charges, the half-edge adjacency matrix
//! `W`, brute-force path and prime enumeration, and the leg-splitting
//! transformation.
//!
//! A path interleaves group elements with half-edges,
//! `P = g0 h1 g1 h2 ... g_{n-1} h_n`, where `g_j` belongs to the group at
//! the vertex between `h_j` and `h_{j+1}`. A closed path is reduced when
//! every immediate reversal is excused by a nontrivial group element, read
//! cyclically. The zeta function only sees the group orders, so a graph of
//! groups may carry abstract charges alone; quotient-derived ones also carry
//! the stabilizer subgroups.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{canonical_rotation, enumeration_guard, minimal_period, Graph};
use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq)]
pub struct GraphOfGroups {
    graph: Graph,
    charges: Vec<i64>,
    /// Stabilizer subgroups (element ids of an ambient action, ascending with
    /// the identity first), present when built as a quotient.
    stabilizers: Option<Vec<Vec<usize>>>,
}

impl GraphOfGroups {
    pub fn new(graph: Graph, charges: Vec<i64>) -> Result<GraphOfGroups> {
        if charges.len() != graph.vertex_count() {
            return Err(Error::InvalidGog(format!(
                "expected {} charges, got {}",
                graph.vertex_count(),
                charges.len()
            )));
        }
        if let Some(c) = charges.iter().find(|&&c| c < 1) {
            return Err(Error::InvalidGog(format!("charge {c} is not positive")));
        }
        Ok(GraphOfGroups {
            graph,
            charges,
            stabilizers: None,
        })
    }

    /// A plain graph viewed as a graph of groups with trivial vertex groups.
    pub fn from_graph(graph: Graph) -> GraphOfGroups {
        let n = graph.vertex_count();
        GraphOfGroups {
            graph,
            charges: vec![1; n],
            stabilizers: None,
        }
    }

    pub(crate) fn with_stabilizers(graph: Graph, stabilizers: Vec<Vec<usize>>) -> GraphOfGroups {
        assert_eq!(stabilizers.len(), graph.vertex_count());
        for s in &stabilizers {
            assert!(s.first() == Some(&0), "stabilizer must contain the identity first");
            assert!(s.windows(2).all(|w| w[0] < w[1]), "stabilizer must be sorted");
        }
        let charges = stabilizers.iter().map(|s| s.len() as i64).collect();
        GraphOfGroups {
            graph,
            charges,
            stabilizers: Some(stabilizers),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn charge(&self, v: usize) -> i64 {
        self.charges[v]
    }

    pub fn charges(&self) -> &[i64] {
        &self.charges
    }

    pub fn stabilizers(&self) -> Option<&[Vec<usize>]> {
        self.stabilizers.as_deref()
    }

    /// Sum of log2(charge) shortcut used by reports: true when all charges are 1.
    pub fn is_trivially_charged(&self) -> bool {
        self.charges.iter().all(|&c| c == 1)
    }

    /// The half-edge adjacency matrix `W`: rows and columns indexed by
    /// half-edges, with `W[h][h'] = c(r(h')) - 1` when `h'` reverses `h`,
    /// `c(r(h'))` when `h'` continues `h` without reversing, and 0 otherwise.
    pub fn half_edge_matrix(&self) -> Mat<i64> {
        let k = self.graph.half_edge_count();
        Mat::from_fn(k, k, |h, hp| {
            let far = self.graph.root(self.graph.involution(h));
            if self.graph.root(hp) != far {
                0
            } else if hp == self.graph.involution(h) {
                self.charges[far] - 1
            } else {
                self.charges[far]
            }
        })
    }

    /// Diagonal charge matrix `C`.
    pub fn charge_matrix(&self) -> Mat<i64> {
        let n = self.graph.vertex_count();
        Mat::from_fn(n, n, |i, j| if i == j { self.charges[i] } else { 0 })
    }

    /// Branching factor of gog path enumeration: the largest row sum of `W`,
    /// i.e. the number of weighted continuations of a half-edge.
    pub fn max_branching(&self) -> usize {
        let w = self.half_edge_matrix();
        (0..w.rows())
            .map(|i| w.row_sum(i).max(0) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn validate_path(&self, path: &GogPath) -> Result<()> {
        self.graph.validate_path(&crate::graph::HalfEdgePath {
            half_edges: path.half_edges.clone(),
        })?;
        if path.group_indices.len() != path.half_edges.len() {
            return Err(Error::InvalidPath(format!(
                "expected {} group elements, got {}",
                path.half_edges.len(),
                path.group_indices.len()
            )));
        }
        for j in 0..path.half_edges.len() {
            let v = self.graph.root(path.half_edges[j]);
            if path.group_indices[j] as i64 >= self.charges[v] {
                return Err(Error::InvalidPath(format!(
                    "group index {} out of range at vertex {}",
                    path.group_indices[j],
                    self.graph.vertex_label(v)
                )));
            }
        }
        Ok(())
    }

    pub fn is_closed(&self, path: &GogPath) -> bool {
        let first = path.half_edges[0];
        let last = *path.half_edges.last().unwrap();
        self.graph.root(first) == self.graph.root(self.graph.involution(last))
    }

    /// Cyclic reducedness of a closed gog path: an immediate reversal
    /// `h_{j+1} = involution(h_j)` is only allowed when the group element
    /// between them is nontrivial.
    pub fn is_cyclically_reduced(&self, path: &GogPath) -> bool {
        let n = path.half_edges.len();
        (0..n).all(|j| {
            path.half_edges[(j + 1) % n] != self.graph.involution(path.half_edges[j])
                || path.group_indices[(j + 1) % n] != 0
        })
    }

    /// Exact count of closed reduced paths of length `n` by depth-first
    /// search over half-edge sequences, multiplying the number of admissible
    /// group elements (`c` or `c - 1`) at each step.
    pub fn closed_reduced_count(&self, n: usize, allow_big: bool) -> Result<BigInt> {
        assert!(n >= 1);
        enumeration_guard(n, self.max_branching(), allow_big)?;
        let mut total: u128 = 0;
        let mut stack = Vec::with_capacity(n);
        for start in 0..self.graph.half_edge_count() {
            stack.push(start);
            self.count_dfs(n, &mut stack, 1, &mut total);
            stack.pop();
        }
        Ok(BigInt::from(total))
    }

    fn count_dfs(&self, n: usize, stack: &mut Vec<usize>, weight: u128, total: &mut u128) {
        let last = *stack.last().unwrap();
        let far = self.graph.root(self.graph.involution(last));
        if stack.len() == n {
            let start = stack[0];
            if self.graph.root(start) == far {
                let c = self.charges[far] as u128;
                let wrap = c - u128::from(start == self.graph.involution(last));
                *total = total
                    .checked_add(weight.checked_mul(wrap).expect("count overflow"))
                    .expect("count overflow");
            }
            return;
        }
        for &h in self.graph.half_edges_at(far) {
            let c = self.charges[far] as u128;
            let mult = c - u128::from(h == self.graph.involution(last));
            if mult == 0 {
                continue;
            }
            stack.push(h);
            self.count_dfs(n, stack, weight.checked_mul(mult).expect("count overflow"), total);
            stack.pop();
        }
    }

    /// Number of primes of each length `1..=max_len`, derived from the
    /// closed reduced path counts: every closed reduced path is a unique
    /// power of a primitive one, so `C_n = sum_{d | n} d * p_d`. The
    /// divisions are asserted exact.
    pub fn prime_length_counts(&self, max_len: usize, allow_big: bool) -> Result<Vec<BigInt>> {
        let mut counts = vec![BigInt::zero()];
        for n in 1..=max_len {
            let mut c = self.closed_reduced_count(n, allow_big)?;
            for d in 1..n {
                if n % d == 0 {
                    c -= BigInt::from(d) * &counts[d];
                }
            }
            let q = &c / n;
            assert!(&q * n == c, "prime counts must divide evenly");
            assert!(q >= BigInt::zero(), "prime counts must be nonnegative");
            counts.push(q);
        }
        Ok(counts)
    }

    /// All primes of length at most `max_len`, with group elements as
    /// abstract indices `0..c(v)` (0 is the identity). On quotient-derived
    /// graphs of groups the indices address the stabilizer lists.
    pub fn enumerate_primes(&self, max_len: usize, allow_big: bool) -> Result<Vec<GogPrime>> {
        assert!(max_len >= 1);
        enumeration_guard(max_len, self.max_branching(), allow_big)?;
        let mut found = std::collections::BTreeSet::new();
        let mut halves = Vec::with_capacity(max_len);
        let mut groups = Vec::with_capacity(max_len);
        for start in 0..self.graph.half_edge_count() {
            halves.push(start);
            self.prime_dfs(max_len, &mut halves, &mut groups, &mut found);
            halves.pop();
        }
        Ok(found
            .into_iter()
            .map(|(half_edges, group_indices)| GogPrime {
                rep: GogPath {
                    group_indices,
                    half_edges,
                },
            })
            .collect())
    }

    fn prime_dfs(
        &self,
        max_len: usize,
        halves: &mut Vec<usize>,
        groups: &mut Vec<usize>,
        found: &mut std::collections::BTreeSet<(Vec<usize>, Vec<usize>)>,
    ) {
        let last = *halves.last().unwrap();
        let far = self.graph.root(self.graph.involution(last));
        let start = halves[0];
        if self.graph.root(start) == far {
            // Close up by choosing g0; a wrap reversal requires g0 != 0.
            let needs_nontrivial = start == self.graph.involution(last);
            for g0 in 0..self.charges[far] as usize {
                if needs_nontrivial && g0 == 0 {
                    continue;
                }
                let mut group_seq = Vec::with_capacity(halves.len());
                group_seq.push(g0);
                group_seq.extend_from_slice(groups);
                self.record_prime(halves, &group_seq, found);
            }
        }
        if halves.len() == max_len {
            return;
        }
        for &h in self.graph.half_edges_at(far) {
            let needs_nontrivial = h == self.graph.involution(last);
            for g in 0..self.charges[far] as usize {
                if needs_nontrivial && g == 0 {
                    continue;
                }
                halves.push(h);
                groups.push(g);
                self.prime_dfs(max_len, halves, groups, found);
                halves.pop();
                groups.pop();
            }
        }
    }

    fn record_prime(
        &self,
        halves: &[usize],
        groups: &[usize],
        found: &mut std::collections::BTreeSet<(Vec<usize>, Vec<usize>)>,
    ) {
        let n = halves.len();
        let paired: Vec<(usize, usize)> = (0..n).map(|i| (halves[i], groups[i])).collect();
        if minimal_period(&paired) != n {
            return;
        }
        let canon = canonical_rotation(&paired);
        let (h, g): (Vec<usize>, Vec<usize>) = canon.into_iter().unzip();
        found.insert((h, g));
    }

    /// Replaces a leg by an edge to a fresh vertex of charge 2. The closed
    /// reduced paths correspond bijectively, reading each leg traversal `l`
    /// as `e g e'` through the new vertex.
    pub fn split_leg(&self, leg: usize) -> Result<GraphOfGroups> {
        if leg >= self.graph.half_edge_count() || !self.graph.is_leg(leg) {
            return Err(Error::NotALeg(leg));
        }
        let n = self.graph.vertex_count();
        let mut labels = self.graph.vertex_labels().to_vec();
        let mut fresh = format!("s{n}");
        while labels.contains(&fresh) {
            fresh.push('\'');
        }
        labels.push(fresh);
        let mut edges: Vec<(usize, usize)> = (0..self.graph.edge_count())
            .map(|i| (self.graph.root(2 * i), self.graph.root(2 * i + 1)))
            .collect();
        edges.push((self.graph.root(leg), n));
        let legs: Vec<usize> = (2 * self.graph.edge_count()..self.graph.half_edge_count())
            .filter(|&h| h != leg)
            .map(|h| self.graph.root(h))
            .collect();
        let graph = Graph::new(labels, &edges, &legs)?;
        let mut charges = self.charges.clone();
        charges.push(2);
        GraphOfGroups::new(graph, charges)
    }
}

/// A path in a graph of groups: `group_indices[j]` is the element before
/// `half_edges[j]`, so the sequence reads `g0 h1 g1 h2 ... g_{n-1} h_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GogPath {
    pub group_indices: Vec<usize>,
    pub half_edges: Vec<usize>,
}

impl GogPath {
    pub fn new(group_indices: Vec<usize>, half_edges: Vec<usize>) -> GogPath {
        assert_eq!(group_indices.len(), half_edges.len());
        GogPath {
            group_indices,
            half_edges,
        }
    }

    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }

    /// Concatenation of `k` copies; meaningful for closed paths.
    pub fn power(&self, k: usize) -> GogPath {
        let mut group_indices = Vec::with_capacity(self.len() * k);
        let mut half_edges = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            group_indices.extend_from_slice(&self.group_indices);
            half_edges.extend_from_slice(&self.half_edges);
        }
        GogPath {
            group_indices,
            half_edges,
        }
    }
}

/// A prime of a graph of groups: canonical rotation of a primitive closed
/// reduced path, the paired `(h, g)` sequence rotated in tandem.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GogPrime {
    rep: GogPath,
}

impl GogPrime {
    pub fn from_path(gog: &GraphOfGroups, path: &GogPath) -> Option<GogPrime> {
        if gog.validate_path(path).is_err()
            || !gog.is_closed(path)
            || !gog.is_cyclically_reduced(path)
        {
            return None;
        }
        let n = path.len();
        let paired: Vec<(usize, usize)> = (0..n)
            .map(|i| (path.half_edges[i], path.group_indices[i]))
            .collect();
        if minimal_period(&paired) != n {
            return None;
        }
        let (h, g): (Vec<usize>, Vec<usize>) = canonical_rotation(&paired).into_iter().unzip();
        Some(GogPrime {
            rep: GogPath {
                group_indices: g,
                half_edges: h,
            },
        })
    }

    pub fn representative(&self) -> &GogPath {
        &self.rep
    }

    pub fn length(&self) -> usize {
        self.rep.len()
    }
}
