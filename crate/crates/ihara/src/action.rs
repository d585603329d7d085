//! Finite groups acting on graphs: closure from generators, freeness
//! classification, orbits and stabilizers, and the quotient graph.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph automorphism: paired permutations of vertices and half-edges,
/// equivariant with respect to the root map and the involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    vertex_perm: Vec<usize>,
    half_edge_perm: Vec<usize>,
}

impl Automorphism {
    pub fn new(graph: &Graph, vertex_perm: Vec<usize>, half_edge_perm: Vec<usize>) -> Result<Self> {
        let n = graph.vertex_count();
        let k = graph.half_edge_count();
        if vertex_perm.len() != n || !is_permutation(&vertex_perm) {
            return Err(Error::InvalidAutomorphism(
                "vertex map is not a permutation".into(),
            ));
        }
        if half_edge_perm.len() != k || !is_permutation(&half_edge_perm) {
            return Err(Error::InvalidAutomorphism(
                "half-edge map is not a permutation".into(),
            ));
        }
        for h in 0..k {
            if graph.root(half_edge_perm[h]) != vertex_perm[graph.root(h)] {
                return Err(Error::InvalidAutomorphism(format!(
                    "root map is not equivariant at half-edge {h}"
                )));
            }
            if half_edge_perm[graph.involution(h)] != graph.involution(half_edge_perm[h]) {
                return Err(Error::InvalidAutomorphism(format!(
                    "involution is not equivariant at half-edge {h}"
                )));
            }
        }
        Ok(Automorphism {
            vertex_perm,
            half_edge_perm,
        })
    }

    /// Infers the half-edge permutation from a vertex permutation. This is
    /// unambiguous exactly when every half-edge is determined by its ordered
    /// (root, far end) pair; parallel edges, loops, and multiple legs at a
    /// vertex require explicit half-edge data.
    pub fn from_vertex_perm(graph: &Graph, vertex_perm: Vec<usize>) -> Result<Self> {
        let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for h in 0..graph.half_edge_count() {
            by_ends
                .entry((graph.root(h), graph.root(graph.involution(h))))
                .or_default()
                .push(h);
        }
        if by_ends.values().any(|hs| hs.len() > 1) {
            return Err(Error::InvalidAutomorphism(
                "half-edge images are ambiguous (parallel edges, loops, or repeated legs); \
                 supply the half-edge permutation explicitly"
                    .into(),
            ));
        }
        if vertex_perm.len() != graph.vertex_count() || !is_permutation(&vertex_perm) {
            return Err(Error::InvalidAutomorphism(
                "vertex map is not a permutation".into(),
            ));
        }
        let mut half_edge_perm = Vec::with_capacity(graph.half_edge_count());
        for h in 0..graph.half_edge_count() {
            let ends = (
                vertex_perm[graph.root(h)],
                vertex_perm[graph.root(graph.involution(h))],
            );
            let image = by_ends
                .get(&ends)
                .and_then(|hs| hs.first())
                .copied()
                .ok_or_else(|| {
                    Error::InvalidAutomorphism(format!(
                        "vertex map does not extend to half-edge {h}"
                    ))
                })?;
            half_edge_perm.push(image);
        }
        Automorphism::new(graph, vertex_perm, half_edge_perm)
    }

    pub fn identity(graph: &Graph) -> Self {
        Automorphism {
            vertex_perm: (0..graph.vertex_count()).collect(),
            half_edge_perm: (0..graph.half_edge_count()).collect(),
        }
    }

    /// Composition `self . other`: `other` applied first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertex_perm: other.vertex_perm.iter().map(|&v| self.vertex_perm[v]).collect(),
            half_edge_perm: other
                .half_edge_perm
                .iter()
                .map(|&h| self.half_edge_perm[h])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut vertex_perm = vec![0; self.vertex_perm.len()];
        for (i, &v) in self.vertex_perm.iter().enumerate() {
            vertex_perm[v] = i;
        }
        let mut half_edge_perm = vec![0; self.half_edge_perm.len()];
        for (i, &h) in self.half_edge_perm.iter().enumerate() {
            half_edge_perm[h] = i;
        }
        Automorphism {
            vertex_perm,
            half_edge_perm,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_perm.iter().enumerate().all(|(i, &v)| i == v)
            && self.half_edge_perm.iter().enumerate().all(|(i, &h)| i == h)
    }

    pub fn apply_vertex(&self, v: usize) -> usize {
        self.vertex_perm[v]
    }

    pub fn apply_half_edge(&self, h: usize) -> usize {
        self.half_edge_perm[h]
    }

    pub fn vertex_perm(&self) -> &[usize] {
        &self.vertex_perm
    }

    pub fn half_edge_perm(&self) -> &[usize] {
        &self.half_edge_perm
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| {
        if v >= seen.len() || seen[v] {
            false
        } else {
            seen[v] = true;
            true
        }
    })
}

/// Parses cycle notation over the graph's vertex labels, e.g. `(2 3 4)`,
/// `(1 2)(3 4)`, or the compact `(234)` when all labels are single
/// characters. `e`, `()`, and the empty string denote the identity.
pub fn parse_vertex_cycles(labels: &[String], s: &str) -> Result<Vec<usize>> {
    let find = |token: &str| labels.iter().position(|l| l == token);
    let trimmed = s.trim();
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    if trimmed.is_empty() || trimmed == "e" || trimmed == "()" || trimmed == "id" {
        return Ok(perm);
    }
    let mut rest = trimmed;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in cycle string {s:?}")))?;
        if !rest[..open].trim().is_empty() {
            return Err(Error::Parse(format!("unexpected text in cycle string {s:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
        let body = &rest[open + 1..close];
        rest = &rest[close + 1..];
        let tokens: Vec<String> = if body.contains(char::is_whitespace) || body.contains(',') {
            body.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        } else if find(body).is_some() {
            vec![body.to_string()]
        } else {
            // Compact form like (234): split per character.
            body.chars().map(|c| c.to_string()).collect()
        };
        if tokens.len() < 2 {
            continue; // fixed point, e.g. "(1)"
        }
        let ids: Vec<usize> = tokens
            .iter()
            .map(|t| {
                find(t).ok_or_else(|| Error::Parse(format!("unknown vertex {t:?} in cycle {s:?}")))
            })
            .collect::<Result<_>>()?;
        let mut seen = std::collections::BTreeSet::new();
        for &id in &ids {
            if !seen.insert(id) {
                return Err(Error::Parse(format!("repeated vertex in cycle {s:?}")));
            }
        }
        for w in 0..ids.len() {
            let from = ids[w];
            let to = ids[(w + 1) % ids.len()];
            if perm[from] != from {
                return Err(Error::Parse(format!("overlapping cycles in {s:?}")));
            }
            perm[from] = to;
        }
    }
    Ok(perm)
}

/// Renders a vertex permutation in cycle notation; fixed points are dropped
/// and the identity prints as `e`.
pub fn format_vertex_cycles(labels: &[String], perm: &[usize]) -> String {
    let compact = labels.iter().all(|l| l.chars().count() == 1);
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(labels[v].as_str());
            v = perm[v];
        }
        out.push('(');
        out.push_str(&cycle.join(if compact { "" } else { " " }));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// Freeness classification of an action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionClass {
    /// Free on vertices and half-edges, and no edge is flipped.
    Free,
    /// Free on half-edges only.
    EdgeFreeNotFree,
    /// Some nonidentity element fixes a half-edge.
    NotEdgeFree,
}

/// A finite group realized as automorphisms of a fixed graph, closed under
/// composition, with multiplication and inverse tables. Element 0 is the
/// identity. Products follow composition order: `mul(a, b)` applies `b`
/// first.
#[derive(Clone, Debug)]
pub struct GroupAction {
    graph: Graph,
    elements: Vec<Automorphism>,
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl GroupAction {
    /// Closes a generating set under composition.
    pub fn generate(
        graph: Graph,
        generators: Vec<Automorphism>,
        max_order: usize,
    ) -> Result<GroupAction> {
        for g in &generators {
            // Re-validate: generators may have been built against an equal graph.
            Automorphism::new(&graph, g.vertex_perm.clone(), g.half_edge_perm.clone())?;
        }
        let mut elements = vec![Automorphism::identity(&graph)];
        let mut index: HashMap<Automorphism, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            let current = elements[cursor].clone();
            for g in &generators {
                let next = current.compose(g);
                if !index.contains_key(&next) {
                    if elements.len() >= max_order {
                        return Err(Error::ClosureTooLarge { max_order });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            cursor += 1;
        }
        let d = elements.len();
        let mut mul = vec![vec![0; d]; d];
        for a in 0..d {
            for b in 0..d {
                let prod = elements[a].compose(&elements[b]);
                mul[a][b] = *index.get(&prod).ok_or_else(|| {
                    Error::InvalidAutomorphism("element set is not closed under composition".into())
                })?;
            }
        }
        let mut inv = vec![0; d];
        for a in 0..d {
            inv[a] = *index
                .get(&elements[a].inverse())
                .ok_or_else(|| Error::InvalidAutomorphism("element set lacks inverses".into()))?;
        }
        let names = derive_names(&graph, &elements);
        Ok(GroupAction {
            graph,
            elements,
            names,
            mul,
            inv,
        })
    }

    /// Rebuilds an action from a full element list, preserving the given
    /// order (element 0 must be the identity); validates every automorphism
    /// and group closure.
    pub fn from_elements(graph: Graph, elements: Vec<Automorphism>) -> Result<GroupAction> {
        if elements.is_empty() || !elements[0].is_identity() {
            return Err(Error::InvalidAutomorphism(
                "element 0 must be the identity".into(),
            ));
        }
        let mut index: HashMap<Automorphism, usize> = HashMap::new();
        for (i, g) in elements.iter().enumerate() {
            Automorphism::new(&graph, g.vertex_perm.clone(), g.half_edge_perm.clone())?;
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::InvalidAutomorphism(format!(
                    "element {i} is listed twice"
                )));
            }
        }
        let d = elements.len();
        let mut mul = vec![vec![0; d]; d];
        for a in 0..d {
            for b in 0..d {
                let prod = elements[a].compose(&elements[b]);
                mul[a][b] = *index.get(&prod).ok_or_else(|| {
                    Error::InvalidAutomorphism(
                        "element list is not closed under composition".into(),
                    )
                })?;
            }
        }
        let mut inv = vec![0; d];
        for a in 0..d {
            inv[a] = *index.get(&elements[a].inverse()).ok_or_else(|| {
                Error::InvalidAutomorphism("element list lacks inverses".into())
            })?;
        }
        let names = derive_names(&graph, &elements);
        Ok(GroupAction {
            graph,
            elements,
            names,
            mul,
            inv,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Group order, the covering degree `d`.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, id: usize) -> &Automorphism {
        &self.elements[id]
    }

    pub fn element_name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut acc = a;
        let mut n = 1;
        while acc != 0 {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    pub fn apply_vertex(&self, el: usize, v: usize) -> usize {
        self.elements[el].apply_vertex(v)
    }

    pub fn apply_half_edge(&self, el: usize, h: usize) -> usize {
        self.elements[el].apply_half_edge(h)
    }

    pub fn classify(&self) -> ActionClass {
        let k = self.graph.half_edge_count();
        for el in 1..self.order() {
            for h in 0..k {
                if self.apply_half_edge(el, h) == h {
                    return ActionClass::NotEdgeFree;
                }
            }
        }
        let free_on_vertices = (1..self.order())
            .all(|el| (0..self.graph.vertex_count()).all(|v| self.apply_vertex(el, v) != v));
        let no_flips = (0..self.order()).all(|el| {
            (0..k).all(|h| {
                self.graph.involution(h) == h || self.apply_half_edge(el, h) != self.graph.involution(h)
            })
        });
        if free_on_vertices && no_flips {
            ActionClass::Free
        } else {
            ActionClass::EdgeFreeNotFree
        }
    }

    pub fn orbit_of_vertex(&self, v: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = (0..self.order()).map(|el| self.apply_vertex(el, v)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    pub fn orbit_of_half_edge(&self, h: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = (0..self.order())
            .map(|el| self.apply_half_edge(el, h))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// Element ids fixing the vertex `v`, ascending (hence identity first).
    pub fn stabilizer(&self, v: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&el| self.apply_vertex(el, v) == v)
            .collect()
    }

    /// Conjugacy classes, each ascending, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let d = self.order();
        let mut assigned = vec![false; d];
        let mut classes = Vec::new();
        for a in 0..d {
            if assigned[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..d)
                .map(|g| self.mul(self.mul(g, a), self.inv[g]))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Index of the conjugacy class containing `el`.
    pub fn conjugacy_class_of(&self, el: usize) -> usize {
        self.conjugacy_classes()
            .iter()
            .position(|c| c.binary_search(&el).is_ok())
            .expect("element in some class")
    }

    /// The quotient graph together with the vertex and half-edge
    /// projections. Requires an edge-free action; an edge orbit merged with
    /// its involution partner (a flipped edge) becomes a leg.
    pub fn quotient_graph(&self) -> Result<QuotientGraph> {
        if self.classify() == ActionClass::NotEdgeFree {
            let detail = self.not_edge_free_detail();
            return Err(Error::NotEdgeFree(detail));
        }
        let ng = self.graph.vertex_count();
        let kg = self.graph.half_edge_count();

        let mut vproj = vec![usize::MAX; ng];
        let mut vertex_reps = Vec::new();
        for v in 0..ng {
            if vproj[v] != usize::MAX {
                continue;
            }
            let id = vertex_reps.len();
            for w in self.orbit_of_vertex(v) {
                vproj[w] = id;
            }
            vertex_reps.push(v);
        }

        // Half-edge orbits in order of least representative.
        let mut horbit_id = vec![usize::MAX; kg];
        let mut orbit_reps = Vec::new();
        for h in 0..kg {
            if horbit_id[h] != usize::MAX {
                continue;
            }
            let id = orbit_reps.len();
            for f in self.orbit_of_half_edge(h) {
                horbit_id[f] = id;
            }
            orbit_reps.push(h);
        }

        // Pair orbits into quotient edges and legs.
        let mut edges: Vec<(usize, usize)> = Vec::new(); // quotient endpoints
        let mut edge_orbits: Vec<(usize, usize)> = Vec::new(); // orbit ids per half
        let mut legs: Vec<usize> = Vec::new();
        let mut leg_orbits: Vec<usize> = Vec::new();
        let mut used = vec![false; orbit_reps.len()];
        for (oid, &rep) in orbit_reps.iter().enumerate() {
            if used[oid] {
                continue;
            }
            used[oid] = true;
            let partner = horbit_id[self.graph.involution(rep)];
            if partner == oid {
                legs.push(vproj[self.graph.root(rep)]);
                leg_orbits.push(oid);
            } else {
                used[partner] = true;
                edges.push((
                    vproj[self.graph.root(rep)],
                    vproj[self.graph.root(self.graph.involution(rep))],
                ));
                edge_orbits.push((oid, partner));
            }
        }

        let labels: Vec<String> = vertex_reps
            .iter()
            .map(|&v| self.graph.vertex_label(v).to_string())
            .collect();
        let quotient = Graph::new(labels, &edges, &legs)?;

        let mut orbit_to_half = vec![usize::MAX; orbit_reps.len()];
        for (i, &(a, b)) in edge_orbits.iter().enumerate() {
            orbit_to_half[a] = 2 * i;
            orbit_to_half[b] = 2 * i + 1;
        }
        for (j, &o) in leg_orbits.iter().enumerate() {
            orbit_to_half[o] = 2 * edge_orbits.len() + j;
        }
        let hproj: Vec<usize> = (0..kg).map(|h| orbit_to_half[horbit_id[h]]).collect();

        Ok(QuotientGraph {
            quotient,
            vproj,
            hproj,
        })
    }

    fn not_edge_free_detail(&self) -> String {
        for el in 1..self.order() {
            for h in 0..self.graph.half_edge_count() {
                if self.apply_half_edge(el, h) == h {
                    return format!(
                        "element {} fixes half-edge {}",
                        self.names[el],
                        self.graph.half_edge_name(h)
                    );
                }
            }
        }
        "action is edge-free".into()
    }
}

/// Quotient graph of an edge-free action with its projection maps.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub quotient: Graph,
    /// Vertex projection `V(Y) -> V(X)`.
    pub vproj: Vec<usize>,
    /// Half-edge projection `H(Y) -> H(X)`.
    pub hproj: Vec<usize>,
}

fn derive_names(graph: &Graph, elements: &[Automorphism]) -> Vec<String> {
    let labels = graph.vertex_labels();
    let cycle_names: Vec<String> = elements
        .iter()
        .map(|e| format_vertex_cycles(labels, e.vertex_perm()))
        .collect();
    let mut sorted = cycle_names.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() == elements.len() {
        cycle_names
    } else {
        // The vertex action is not faithful; fall back to indexed names.
        (0..elements.len())
            .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_action(gens: &[&str]) -> GroupAction {
        let k4 = Graph::complete(4);
        let autos: Vec<Automorphism> = gens
            .iter()
            .map(|s| {
                let perm = parse_vertex_cycles(k4.vertex_labels(), s).unwrap();
                Automorphism::from_vertex_perm(&k4, perm).unwrap()
            })
            .collect();
        GroupAction::generate(k4, autos, 64).unwrap()
    }

    /// The dipole L_2 with its three nontrivial automorphisms: the rotation
    /// (swap vertices, swap edges), the vertical reflection (swap vertices,
    /// fix edges), and the horizontal reflection (fix vertices, swap edges).
    fn l2_generators() -> (Graph, Automorphism, Automorphism, Automorphism) {
        let l2 = Graph::dipole(2);
        let rot = Automorphism::new(&l2, vec![1, 0], vec![3, 2, 1, 0]).unwrap();
        let vert = Automorphism::new(&l2, vec![1, 0], vec![1, 0, 3, 2]).unwrap();
        let horiz = Automorphism::new(&l2, vec![0, 1], vec![2, 3, 0, 1]).unwrap();
        (l2, rot, vert, horiz)
    }

    #[test]
    fn closure_orders() {
        assert_eq!(k4_action(&["(234)"]).order(), 3);
        assert_eq!(k4_action(&["(234)", "(12)(34)"]).order(), 12);
        let k4 = Graph::complete(4);
        assert_eq!(GroupAction::generate(k4, vec![], 8).unwrap().order(), 1);
    }

    #[test]
    fn closure_guard() {
        let k4 = Graph::complete(4);
        let gen = Automorphism::from_vertex_perm(
            &k4,
            parse_vertex_cycles(k4.vertex_labels(), "(1234)").unwrap(),
        )
        .unwrap();
        assert!(matches!(
            GroupAction::generate(k4, vec![gen], 3),
            Err(Error::ClosureTooLarge { max_order: 3 })
        ));
    }

    #[test]
    fn cycle_notation() {
        let labels: Vec<String> = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_vertex_cycles(&labels, "(2 3 4)").unwrap(), vec![0, 2, 3, 1]);
        assert_eq!(parse_vertex_cycles(&labels, "(234)").unwrap(), vec![0, 2, 3, 1]);
        assert_eq!(
            parse_vertex_cycles(&labels, "(12)(34)").unwrap(),
            vec![1, 0, 3, 2]
        );
        assert_eq!(parse_vertex_cycles(&labels, "e").unwrap(), vec![0, 1, 2, 3]);
        assert!(parse_vertex_cycles(&labels, "(25)").is_err());
        assert!(parse_vertex_cycles(&labels, "(22)").is_err());
        assert_eq!(format_vertex_cycles(&labels, &[0, 2, 3, 1]), "(234)");
        assert_eq!(format_vertex_cycles(&labels, &[0, 1, 2, 3]), "e");
    }

    #[test]
    fn classify_k4_subgroups() {
        assert_eq!(k4_action(&["(234)"]).classify(), ActionClass::EdgeFreeNotFree);
        assert_eq!(
            k4_action(&["(12)(34)", "(13)(24)"]).classify(),
            ActionClass::EdgeFreeNotFree
        );
        // (12) fixes both half-edges of the edge {3,4}, so it is not edge-free.
        assert_eq!(k4_action(&["(12)"]).classify(), ActionClass::NotEdgeFree);
        let err = k4_action(&["(12)"]).quotient_graph();
        assert!(matches!(err, Err(Error::NotEdgeFree(_))));
    }

    #[test]
    fn classify_l2_subgroups() {
        let (l2, rot, vert, horiz) = l2_generators();
        let gen = |a: &Automorphism| {
            GroupAction::generate(l2.clone(), vec![a.clone()], 8).unwrap()
        };
        assert_eq!(gen(&rot).classify(), ActionClass::Free);
        assert_eq!(gen(&vert).classify(), ActionClass::EdgeFreeNotFree);
        assert_eq!(gen(&horiz).classify(), ActionClass::EdgeFreeNotFree);
        let full = GroupAction::generate(l2, vec![rot, vert], 8).unwrap();
        assert_eq!(full.order(), 4);
        assert_eq!(full.classify(), ActionClass::EdgeFreeNotFree);
    }

    #[test]
    fn l2_quotients_match_the_diagram() {
        let (l2, rot, vert, horiz) = l2_generators();
        let quot = |a: &Automorphism| {
            GroupAction::generate(l2.clone(), vec![a.clone()], 8)
                .unwrap()
                .quotient_graph()
                .unwrap()
                .quotient
        };
        // Rotation: quotient is F_1 (one vertex, one loop).
        let f1 = quot(&rot);
        assert_eq!((f1.vertex_count(), f1.edge_count(), f1.leg_count()), (1, 1, 0));
        // Vertical reflection: one vertex with two legs.
        let star = quot(&vert);
        assert_eq!((star.vertex_count(), star.edge_count(), star.leg_count()), (1, 0, 2));
        // Horizontal reflection: the segment, two vertices joined by an edge.
        let seg = quot(&horiz);
        assert_eq!((seg.vertex_count(), seg.edge_count(), seg.leg_count()), (2, 1, 0));
        // Full automorphism group: one vertex with one leg.
        let full = GroupAction::generate(l2, vec![rot, vert], 8).unwrap();
        let q = full.quotient_graph().unwrap().quotient;
        assert_eq!((q.vertex_count(), q.edge_count(), q.leg_count()), (1, 0, 1));
    }

    #[test]
    fn stabilizers_and_orbits() {
        let c3 = k4_action(&["(234)"]);
        assert_eq!(c3.stabilizer(0).len(), 3);
        assert_eq!(c3.stabilizer(1), vec![0]);
        // h23 is half-edge 6 in the canonical K4 numbering; its orbit is
        // {h23, h34, h42} = {6, 10, 9}.
        assert_eq!(c3.orbit_of_half_edge(6), vec![6, 9, 10]);

        let a4 = k4_action(&["(234)", "(12)(34)"]);
        assert_eq!(a4.orbit_of_half_edge(0).len(), 12);

        let trivial = GroupAction::generate(Graph::complete(4), vec![], 2).unwrap();
        assert_eq!(trivial.orbit_of_half_edge(5), vec![5]);
        assert_eq!(trivial.stabilizer(2), vec![0]);
        assert_eq!(trivial.classify(), ActionClass::Free);
    }

    #[test]
    fn orbit_stabilizer_identity() {
        for action in [
            k4_action(&["(234)"]),
            k4_action(&["(1234)"]),
            k4_action(&["(234)", "(12)(34)"]),
        ] {
            for v in 0..action.graph().vertex_count() {
                assert_eq!(
                    action.orbit_of_vertex(v).len() * action.stabilizer(v).len(),
                    action.order()
                );
            }
        }
    }

    #[test]
    fn k4_quotient_shapes() {
        let shape = |action: &GroupAction| {
            let q = action.quotient_graph().unwrap().quotient;
            (q.vertex_count(), q.edge_count(), q.leg_count())
        };
        assert_eq!(shape(&k4_action(&["(12)(34)"])), (2, 2, 2));
        assert_eq!(shape(&k4_action(&["(234)"])), (2, 2, 0));
        assert_eq!(shape(&k4_action(&["(12)(34)", "(13)(24)"])), (1, 0, 3));
        assert_eq!(shape(&k4_action(&["(1234)"])), (1, 1, 1));
        assert_eq!(shape(&k4_action(&["(234)", "(12)(34)"])), (1, 0, 1));
    }

    #[test]
    fn projection_is_equivariant() {
        let action = k4_action(&["(234)"]);
        let q = action.quotient_graph().unwrap();
        for el in 0..action.order() {
            for h in 0..action.graph().half_edge_count() {
                assert_eq!(q.hproj[action.apply_half_edge(el, h)], q.hproj[h]);
            }
            for v in 0..action.graph().vertex_count() {
                assert_eq!(q.vproj[action.apply_vertex(el, v)], q.vproj[v]);
            }
        }
        // Quotient root/involution descend from upstairs.
        for h in 0..action.graph().half_edge_count() {
            let x = &q.quotient;
            assert_eq!(x.root(q.hproj[h]), q.vproj[action.graph().root(h)]);
            assert_eq!(
                x.involution(q.hproj[h]),
                q.hproj[action.graph().involution(h)]
            );
        }
    }

    #[test]
    fn free_quotient_counts() {
        let (l2, rot, _, _) = l2_generators();
        let action = GroupAction::generate(l2, vec![rot], 4).unwrap();
        let q = action.quotient_graph().unwrap().quotient;
        assert_eq!(q.vertex_count(), action.graph().vertex_count() / 2);
        assert_eq!(q.half_edge_count(), action.graph().half_edge_count() / 2);
    }

    #[test]
    fn ambiguous_inference_rejected() {
        let l2 = Graph::dipole(2);
        assert!(matches!(
            Automorphism::from_vertex_perm(&l2, vec![1, 0]),
            Err(Error::InvalidAutomorphism(_))
        ));
    }

    #[test]
    fn equivariance_validated() {
        let k4 = Graph::complete(4);
        // Swap two half-edges without touching vertices: breaks equivariance.
        let mut hperm: Vec<usize> = (0..12).collect();
        hperm.swap(0, 2);
        assert!(Automorphism::new(&k4, (0..4).collect(), hperm).is_err());
    }

    #[test]
    fn element_names_are_cycle_strings() {
        let c3 = k4_action(&["(234)"]);
        let names: Vec<&str> = (0..3).map(|i| c3.element_name(i)).collect();
        assert_eq!(names[0], "e");
        assert!(names.contains(&"(234)"));
        assert!(names.contains(&"(243)"));
    }

    #[test]
    fn conjugacy_classes_of_a4() {
        let a4 = k4_action(&["(234)", "(12)(34)"]);
        let classes = a4.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }
}
