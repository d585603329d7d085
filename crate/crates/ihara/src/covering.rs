//! Sheet and Frobenius data for an edge-free quotient, with path lifting,
//! images of closed paths, and prime splitting.
//!
//! Given an edge-free action of `G` on `Y`, the quotient graph of groups
//! carries the stabilizer of a chosen lift of each vertex. A spanning tree of
//! the quotient (avoiding legs) is lifted to `Y`; each quotient half-edge `h`
//! then gets a chosen lift `h^S` rooted on the tree and a Frobenius element
//! `F(h)` measuring the sheet change across it. Half-edges of `Y` partition
//! into sheets indexed by group elements, and the sheet number `N(f)` is the
//! unique element with `N(f)(pi(f)^S) = f`. The Frobenius element of a path
//! is the ordered product `F(P) = g0 F(h1) g1 F(h2) ... g_{n-1} F(h_n)`.

use crate::action::{ActionClass, GroupAction};
use crate::error::{Error, Result};
use crate::gog::{GogPath, GogPrime, GraphOfGroups};
use crate::graph::{GraphPrime, HalfEdgePath};

/// Everything needed to move paths between the cover and the quotient:
/// projections, the spanning tree and its lift, identity-sheet lifts,
/// Frobenius elements, and sheet numbers.
#[derive(Clone, Debug)]
pub struct Covering {
    action: GroupAction,
    quotient: GraphOfGroups,
    vproj: Vec<usize>,
    hproj: Vec<usize>,
    /// Quotient half-edges lying in the spanning tree `T_X`.
    tree_x: Vec<bool>,
    /// Cover half-edges lying in the lifted tree `T`.
    tree_y: Vec<bool>,
    /// Chosen lift `v^T` of each quotient vertex.
    lift_of_vertex: Vec<usize>,
    /// Chosen lift `h^S` of each quotient half-edge, rooted on the tree.
    identity_lift: Vec<usize>,
    /// Frobenius element `F(h)` per quotient half-edge.
    frobenius: Vec<usize>,
    /// Sheet number `N(f)` per cover half-edge.
    sheet_number: Vec<usize>,
    tree_seed: usize,
    choice_seed: u64,
}

/// How one prime of the quotient splits in the cover.
#[derive(Clone, Debug)]
pub struct PrimeSplitting {
    pub base: GogPrime,
    /// A representative Frobenius element of the canonical representative.
    pub frobenius_element: usize,
    /// Conjugacy class index of the Frobenius element (choice-independent).
    pub frobenius_class: usize,
    /// Residual degree `f`: order of the Frobenius element.
    pub residual_degree: usize,
    /// Number of primes above, `g = d / f`.
    pub num_primes_above: usize,
    pub primes_above: Vec<GraphPrime>,
}

impl Covering {
    /// Builds the quotient graph of groups and all covering data. `tree_seed`
    /// selects the spanning-tree root (a quotient vertex index, reduced mod
    /// the vertex count); `choice_seed` rotates every "least candidate"
    /// choice, which must not change any zeta or L-function output.
    pub fn new(action: GroupAction, tree_seed: usize, choice_seed: u64) -> Result<Covering> {
        if action.classify() == ActionClass::NotEdgeFree {
            return Err(action.quotient_graph().unwrap_err());
        }
        let q = action.quotient_graph()?;
        let x = q.quotient;
        let y = action.graph().clone();
        let nx = x.vertex_count();
        let kx = x.half_edge_count();
        let ky = y.half_edge_count();
        let d = action.order();
        let seed = tree_seed % nx;

        // Preference order injected by the choice seed.
        let key = |id: usize, modulus: usize| -> usize {
            (id + choice_seed as usize) % modulus.max(1)
        };
        let pick_min = |candidates: &mut dyn Iterator<Item = usize>, modulus: usize| {
            candidates.min_by_key(|&c| (key(c, modulus), c))
        };

        // Spanning tree of X over edges only (legs never enter).
        let mut tree_x = vec![false; kx];
        let mut parent_half: Vec<Option<usize>> = vec![None; nx];
        let mut visited = vec![false; nx];
        visited[seed] = true;
        let mut bfs_order = vec![seed];
        let mut frontier = 0;
        while frontier < bfs_order.len() {
            let v = bfs_order[frontier];
            frontier += 1;
            let mut hs: Vec<usize> = x
                .half_edges_at(v)
                .iter()
                .copied()
                .filter(|&h| !x.is_leg(h))
                .collect();
            hs.sort_by_key(|&h| (key(h, kx), h));
            for h in hs {
                let w = x.root(x.involution(h));
                if !visited[w] {
                    visited[w] = true;
                    tree_x[h] = true;
                    tree_x[x.involution(h)] = true;
                    parent_half[w] = Some(h);
                    bfs_order.push(w);
                }
            }
        }
        if visited.iter().any(|&v| !v) {
            return Err(Error::InvalidCovering(
                "quotient graph is not connected by edges".into(),
            ));
        }

        // Lift the tree: choose v^T per quotient vertex and the lift of each
        // tree half-edge, then assign lifts and Frobenius elements for
        // non-tree edges and legs.
        let mut lift_of_vertex = vec![usize::MAX; nx];
        let mut identity_lift = vec![usize::MAX; kx];
        let mut frobenius = vec![usize::MAX; kx];
        let mut tree_y = vec![false; ky];

        lift_of_vertex[seed] = pick_min(
            &mut (0..y.vertex_count()).filter(|&vy| q.vproj[vy] == seed),
            y.vertex_count(),
        )
        .expect("projection is onto");
        for &v in &bfs_order[1..] {
            let h = parent_half[v].unwrap();
            let u = x.root(h);
            let base = lift_of_vertex[u];
            debug_assert_ne!(base, usize::MAX);
            let f = pick_min(
                &mut (0..ky).filter(|&f| q.hproj[f] == h && y.root(f) == base),
                ky,
            )
            .ok_or_else(|| Error::InvalidCovering("tree half-edge has no lift".into()))?;
            identity_lift[h] = f;
            identity_lift[x.involution(h)] = y.involution(f);
            frobenius[h] = 0;
            frobenius[x.involution(h)] = 0;
            tree_y[f] = true;
            tree_y[y.involution(f)] = true;
            lift_of_vertex[v] = y.root(y.involution(f));
        }

        for h in 0..kx {
            if tree_x[h] || identity_lift[h] != usize::MAX {
                continue;
            }
            let hbar = x.involution(h);
            if hbar == h {
                // A leg of X, covered either by legs of Y or by flipped edges.
                let base = lift_of_vertex[x.root(h)];
                let f = pick_min(
                    &mut (0..ky).filter(|&f| q.hproj[f] == h && y.root(f) == base),
                    ky,
                )
                .ok_or_else(|| Error::InvalidCovering("leg has no lift".into()))?;
                identity_lift[h] = f;
                if y.is_leg(f) {
                    frobenius[h] = 0;
                } else {
                    let flips: Vec<usize> = (0..d)
                        .filter(|&el| action.apply_half_edge(el, f) == y.involution(f))
                        .collect();
                    if flips.len() != 1 {
                        return Err(Error::InvalidCovering(
                            "flipped edge lacks a unique flipping element".into(),
                        ));
                    }
                    let el = flips[0];
                    if action.mul(el, el) != 0 {
                        return Err(Error::InvalidCovering(
                            "flipping element does not have order 2".into(),
                        ));
                    }
                    frobenius[h] = el;
                }
                continue;
            }
            // A non-tree edge; orient it by the choice key.
            let (h0, h1) = if (key(h, kx), h) <= (key(hbar, kx), hbar) {
                (h, hbar)
            } else {
                (hbar, h)
            };
            let u = x.root(h0);
            let v = x.root(h1);
            let f = pick_min(
                &mut (0..ky).filter(|&f| q.hproj[f] == h0 && y.root(f) == lift_of_vertex[u]),
                ky,
            )
            .ok_or_else(|| Error::InvalidCovering("edge has no lift".into()))?;
            let far = y.root(y.involution(f));
            let el = pick_min(
                &mut (0..d).filter(|&el| action.apply_vertex(el, lift_of_vertex[v]) == far),
                d,
            )
            .ok_or_else(|| Error::InvalidCovering("no element matches the far sheet".into()))?;
            identity_lift[h0] = f;
            frobenius[h0] = el;
            frobenius[h1] = action.inverse_of(el);
            identity_lift[h1] =
                action.apply_half_edge(action.inverse_of(el), y.involution(f));
        }

        // Sheet numbers: N(f) is the unique element carrying pi(f)^S to f.
        let mut sheet_number = vec![usize::MAX; ky];
        for el in 0..d {
            for h in 0..kx {
                let f = action.apply_half_edge(el, identity_lift[h]);
                if sheet_number[f] != usize::MAX {
                    return Err(Error::InvalidCovering(
                        "sheets do not partition the half-edges".into(),
                    ));
                }
                sheet_number[f] = el;
            }
        }
        if sheet_number.contains(&usize::MAX) {
            return Err(Error::InvalidCovering(
                "sheets do not cover all half-edges".into(),
            ));
        }

        // Vertex groups: stabilizers of the tree lifts.
        let stabilizers: Vec<Vec<usize>> =
            (0..nx).map(|v| action.stabilizer(lift_of_vertex[v])).collect();
        let quotient = GraphOfGroups::with_stabilizers(x, stabilizers);

        let cov = Covering {
            action,
            quotient,
            vproj: q.vproj,
            hproj: q.hproj,
            tree_x,
            tree_y,
            lift_of_vertex,
            identity_lift,
            frobenius,
            sheet_number,
            tree_seed: seed,
            choice_seed,
        };
        cov.validate()?;
        Ok(cov)
    }

    /// Checks every structural invariant of the covering data; used both
    /// after construction and when deserialized from a file.
    pub fn validate(&self) -> Result<()> {
        let x = self.quotient.graph();
        let y = self.action.graph();
        let fail = |msg: &str| Err(Error::InvalidCovering(msg.into()));
        if self.vproj.len() != y.vertex_count() || self.hproj.len() != y.half_edge_count() {
            return fail("projection tables have the wrong size");
        }
        // Table sizes and index ranges first, so the structural checks below
        // can index freely.
        if self.tree_x.len() != x.half_edge_count()
            || self.tree_y.len() != y.half_edge_count()
            || self.lift_of_vertex.len() != x.vertex_count()
            || self.identity_lift.len() != x.half_edge_count()
            || self.frobenius.len() != x.half_edge_count()
            || self.sheet_number.len() != y.half_edge_count()
        {
            return fail("covering tables have the wrong size");
        }
        if self.vproj.iter().any(|&v| v >= x.vertex_count())
            || self.lift_of_vertex.iter().any(|&v| v >= y.vertex_count())
            || self.identity_lift.iter().any(|&f| f >= y.half_edge_count())
            || self.frobenius.iter().any(|&el| el >= self.action.order())
            || self.sheet_number.iter().any(|&el| el >= self.action.order())
        {
            return fail("covering table entry out of range");
        }
        for f in 0..y.half_edge_count() {
            if self.hproj[f] >= x.half_edge_count()
                || x.root(self.hproj[f]) != self.vproj[y.root(f)]
                || x.involution(self.hproj[f]) != self.hproj[y.involution(f)]
            {
                return fail("projection does not descend the root and involution");
            }
        }
        for el in 0..self.action.order() {
            for f in 0..y.half_edge_count() {
                if self.hproj[self.action.apply_half_edge(el, f)] != self.hproj[f] {
                    return fail("projection is not equivariant");
                }
            }
        }
        for h in 0..x.half_edge_count() {
            let hs = self.identity_lift[h];
            if self.hproj[hs] != h {
                return fail("identity lift does not project back");
            }
            if y.root(hs) != self.lift_of_vertex[x.root(h)] {
                return fail("identity lift is not rooted on the tree");
            }
            let fb = self.frobenius[h];
            if self.frobenius[x.involution(h)] != self.action.inverse_of(fb) {
                return fail("Frobenius of the reversed half-edge is not the inverse");
            }
            if x.is_leg(h) && self.action.mul(fb, fb) != 0 {
                return fail("Frobenius of a leg must square to the identity");
            }
            // F(h) carries rootY(involution(h^S)) from the tree lift of the far vertex.
            let far = x.root(x.involution(h));
            if self
                .action
                .apply_vertex(fb, self.lift_of_vertex[far])
                != y.root(y.involution(hs))
            {
                return fail("Frobenius element does not match the far sheet");
            }
            if self.tree_x[h] && fb != 0 {
                return fail("tree half-edges must have trivial Frobenius");
            }
        }
        for f in 0..y.half_edge_count() {
            let n = self.sheet_number[f];
            if self.action.apply_half_edge(n, self.identity_lift[self.hproj[f]]) != f {
                return fail("sheet number does not reproduce the half-edge");
            }
            // N(involution(f)) = N(f) F(pi(f)).
            let expect = self.action.mul(n, self.frobenius[self.hproj[f]]);
            if self.sheet_number[y.involution(f)] != expect {
                return fail("sheet numbers are inconsistent across the involution");
            }
        }
        // The marked quotient half-edges must form a spanning tree over edges.
        let tree_halves: Vec<usize> =
            (0..x.half_edge_count()).filter(|&h| self.tree_x[h]).collect();
        if tree_halves.len() != 2 * (x.vertex_count() - 1) {
            return fail("tree does not have n - 1 edges");
        }
        for &h in &tree_halves {
            if x.is_leg(h) || !self.tree_x[x.involution(h)] {
                return fail("tree contains a leg or an unpaired half-edge");
            }
            if !self.tree_y[self.identity_lift[h]] {
                return fail("lifted tree does not contain the tree lifts");
            }
        }
        if self.tree_y.iter().filter(|&&b| b).count() != tree_halves.len() {
            return fail("lifted tree has the wrong size");
        }
        let mut reach = vec![false; x.vertex_count()];
        reach[self.tree_seed % x.vertex_count()] = true;
        let mut stack = vec![self.tree_seed % x.vertex_count()];
        while let Some(v) = stack.pop() {
            for &h in x.half_edges_at(v) {
                if self.tree_x[h] {
                    let w = x.root(x.involution(h));
                    if !reach[w] {
                        reach[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        if reach.iter().any(|&r| !r) {
            return fail("tree does not span the quotient");
        }
        match self.quotient.stabilizers() {
            None => return fail("quotient must carry stabilizer data"),
            Some(stabs) => {
                for (v, stab) in stabs.iter().enumerate() {
                    if *stab != self.action.stabilizer(self.lift_of_vertex[v]) {
                        return fail("stabilizer data does not match the tree lifts");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn quotient(&self) -> &GraphOfGroups {
        &self.quotient
    }

    pub fn cover_graph(&self) -> &crate::graph::Graph {
        self.action.graph()
    }

    pub fn vproj(&self) -> &[usize] {
        &self.vproj
    }

    pub fn hproj(&self) -> &[usize] {
        &self.hproj
    }

    pub fn tree_x(&self) -> &[bool] {
        &self.tree_x
    }

    pub fn tree_y(&self) -> &[bool] {
        &self.tree_y
    }

    pub fn lift_of_vertex(&self) -> &[usize] {
        &self.lift_of_vertex
    }

    pub fn identity_lift(&self) -> &[usize] {
        &self.identity_lift
    }

    pub fn frobenius_of_half_edge(&self, h: usize) -> usize {
        self.frobenius[h]
    }

    pub fn frobenius_table(&self) -> &[usize] {
        &self.frobenius
    }

    pub fn sheet_number(&self, f: usize) -> usize {
        self.sheet_number[f]
    }

    pub fn sheet_numbers(&self) -> &[usize] {
        &self.sheet_number
    }

    pub fn tree_seed(&self) -> usize {
        self.tree_seed
    }

    pub fn choice_seed(&self) -> u64 {
        self.choice_seed
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        action: GroupAction,
        quotient: GraphOfGroups,
        vproj: Vec<usize>,
        hproj: Vec<usize>,
        tree_x: Vec<bool>,
        tree_y: Vec<bool>,
        lift_of_vertex: Vec<usize>,
        identity_lift: Vec<usize>,
        frobenius: Vec<usize>,
        sheet_number: Vec<usize>,
        tree_seed: usize,
        choice_seed: u64,
    ) -> Result<Covering> {
        let cov = Covering {
            action,
            quotient,
            vproj,
            hproj,
            tree_x,
            tree_y,
            lift_of_vertex,
            identity_lift,
            frobenius,
            sheet_number,
            tree_seed,
            choice_seed,
        };
        cov.validate()?;
        Ok(cov)
    }

    /// Group element of an abstract index at a quotient vertex.
    fn stab_element(&self, v: usize, index: usize) -> usize {
        self.quotient.stabilizers().unwrap()[v][index]
    }

    fn stab_index(&self, v: usize, el: usize) -> Result<usize> {
        self.quotient.stabilizers().unwrap()[v]
            .binary_search(&el)
            .map_err(|_| {
                Error::InvalidCovering(format!(
                    "element {} does not stabilize vertex {}",
                    self.action.element_name(el),
                    self.quotient.graph().vertex_label(v)
                ))
            })
    }

    /// `F(P) = g0 F(h1) g1 F(h2) ... g_{n-1} F(h_n)` for a path in the
    /// quotient, evaluated through the stabilizer embeddings.
    pub fn frobenius_of_path(&self, path: &GogPath) -> Result<usize> {
        self.quotient.validate_path(path)?;
        let x = self.quotient.graph();
        let mut acc = 0;
        for j in 0..path.len() {
            let v = x.root(path.half_edges[j]);
            let g = self.stab_element(v, path.group_indices[j]);
            acc = self.action.mul(acc, g);
            acc = self.action.mul(acc, self.frobenius[path.half_edges[j]]);
        }
        Ok(acc)
    }

    /// The lift of a quotient path starting on the given sheet:
    /// `f_j = g gtilde_j h_j^S` where `gtilde_j` is the Frobenius element of
    /// the path prefix before `h_j`.
    pub fn lift_path(&self, path: &GogPath, sheet: usize) -> Result<HalfEdgePath> {
        self.quotient.validate_path(path)?;
        let x = self.quotient.graph();
        let y = self.action.graph();
        let mut gtilde = 0;
        let mut half_edges = Vec::with_capacity(path.len());
        for j in 0..path.len() {
            let h = path.half_edges[j];
            let v = x.root(h);
            let g = self.stab_element(v, path.group_indices[j]);
            gtilde = self.action.mul(gtilde, g);
            let carried = self.action.mul(sheet, gtilde);
            half_edges.push(self.action.apply_half_edge(carried, self.identity_lift[h]));
            gtilde = self.action.mul(gtilde, self.frobenius[h]);
        }
        let lifted = HalfEdgePath { half_edges };
        debug_assert!(y.validate_path(&lifted).is_ok());
        Ok(lifted)
    }

    /// The image of a closed path of the cover, started on its ending sheet
    /// number `N(involution(f_n))`, with
    /// `g_j = F(h_j)^-1 N(f_j)^-1 N(f_{j+1})` read cyclically.
    pub fn image_of_closed_path(&self, path: &HalfEdgePath) -> Result<GogPath> {
        let y = self.action.graph();
        y.validate_path(path)?;
        if !y.is_closed(path) {
            return Err(Error::PathNotClosed);
        }
        let n = path.len();
        let x = self.quotient.graph();
        let mut half_edges = Vec::with_capacity(n);
        let mut group_indices = Vec::with_capacity(n);
        for j in 0..n {
            let f = path.half_edges[j];
            let f_prev = path.half_edges[(j + n - 1) % n];
            let h_prev = self.hproj[f_prev];
            // g_{j-1} sits at the root of h_j; for j = 0 this wraps to g_0 =
            // F(h_n)^-1 N(f_n)^-1 N(f_1).
            let el = self.action.mul(
                self.action.mul(
                    self.action.inverse_of(self.frobenius[h_prev]),
                    self.action.inverse_of(self.sheet_number[f_prev]),
                ),
                self.sheet_number[f],
            );
            let v = x.root(self.hproj[f]);
            group_indices.push(self.stab_index(v, el)?);
            half_edges.push(self.hproj[f]);
        }
        let image = GogPath {
            group_indices,
            half_edges,
        };
        debug_assert!(self.quotient.validate_path(&image).is_ok());
        Ok(image)
    }

    /// Splits a prime of the quotient: the residual degree is the order of
    /// its Frobenius element, the primes above are the lifts of `Q^f` from
    /// all sheets, and their number is `d / f`.
    pub fn split_prime(&self, base: &GogPrime) -> Result<PrimeSplitting> {
        let rep = base.representative();
        let frob = self.frobenius_of_path(rep)?;
        let f = self.action.order_of(frob);
        let d = self.action.order();
        debug_assert_eq!(d % f, 0);
        let power = rep.power(f);
        let y = self.action.graph();
        let mut above = std::collections::BTreeSet::new();
        for sheet in 0..d {
            let lift = self.lift_path(&power, sheet)?;
            debug_assert!(y.is_closed(&lift));
            let prime = GraphPrime::from_path(y, &lift).ok_or_else(|| {
                Error::InvalidCovering("lift of a prime power is not primitive".into())
            })?;
            above.insert(prime);
        }
        let primes_above: Vec<GraphPrime> = above.into_iter().collect();
        if primes_above.len() != d / f {
            return Err(Error::InvalidCovering(format!(
                "expected {} primes above, found {}",
                d / f,
                primes_above.len()
            )));
        }
        Ok(PrimeSplitting {
            base: base.clone(),
            frobenius_element: frob,
            frobenius_class: self.action.conjugacy_class_of(frob),
            residual_degree: f,
            num_primes_above: primes_above.len(),
            primes_above,
        })
    }

    /// Splits every prime of the quotient of length at most `max_base_len`,
    /// in canonical order.
    pub fn full_splitting_table(
        &self,
        max_base_len: usize,
        allow_big: bool,
    ) -> Result<Vec<PrimeSplitting>> {
        let primes = self.quotient.enumerate_primes(max_base_len, allow_big)?;
        let mut rows: Vec<PrimeSplitting> =
            primes.iter().map(|p| self.split_prime(p)).collect::<Result<_>>()?;
        rows.sort_by(|a, b| {
            (a.base.length(), a.base.representative())
                .cmp(&(b.base.length(), b.base.representative()))
        });
        Ok(rows)
    }

    /// Renders a quotient path with element names interleaved with half-edge
    /// names, identity elements omitted: `(234) e0 e1' e0'`.
    pub fn gog_path_display(&self, path: &GogPath) -> String {
        let x = self.quotient.graph();
        let mut tokens = Vec::new();
        for j in 0..path.len() {
            let v = x.root(path.half_edges[j]);
            let el = self.stab_element(v, path.group_indices[j]);
            if el != 0 {
                tokens.push(self.action.element_name(el).to_string());
            }
            tokens.push(x.half_edge_name(path.half_edges[j]));
        }
        tokens.join(" ")
    }
}
