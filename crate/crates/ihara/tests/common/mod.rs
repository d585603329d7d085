//! Shared corpus generators for the integration suites: random graphs of
//! groups with bounded branching, and a zoo of edge-free group actions
//! built from voltage covers, cycle symmetries, and dipole symmetries.

#![allow(dead_code)]

use ihara::action::{parse_vertex_cycles, Automorphism, GroupAction};
use ihara::covering::Covering;
use ihara::gog::GraphOfGroups;
use ihara::graph::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_path(rel: &str) -> String {
    format!("{}/../../data/{}", env!("CARGO_MANIFEST_DIR"), rel)
}

pub fn k4_action(gens: &[&str]) -> GroupAction {
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

pub fn k4_covering(gens: &[&str], tree_seed: usize, choice_seed: u64) -> Covering {
    Covering::new(k4_action(gens), tree_seed, choice_seed).unwrap()
}

/// A connected graph of groups with 2..=5 vertices, at most 7 edges, charges
/// up to 4, and `charge(v) * valency(v) <= 4` everywhere. The last bound
/// keeps the branching of closed-path enumeration at 3, so length-10
/// enumeration stays cheap.
pub fn random_gog(rng: &mut ChaCha8Rng) -> GraphOfGroups {
    loop {
        if let Some(gog) = try_random_gog(rng) {
            return gog;
        }
    }
}

fn try_random_gog(rng: &mut ChaCha8Rng) -> Option<GraphOfGroups> {
    let n = rng.random_range(2..=5);
    let charge_pool = [1, 1, 1, 1, 2, 2, 3, 4];
    let charges: Vec<i64> = (0..n)
        .map(|_| charge_pool[rng.random_range(0..charge_pool.len())])
        .collect();
    let mut budget: Vec<i64> = charges.iter().map(|c| 4 / c).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // Spanning tree first.
    for v in 1..n {
        let candidates: Vec<usize> = (0..v).filter(|&u| budget[u] >= 1).collect();
        if candidates.is_empty() || budget[v] < 1 {
            return None;
        }
        let u = candidates[rng.random_range(0..candidates.len())];
        edges.push((u, v));
        budget[u] -= 1;
        budget[v] -= 1;
    }
    // Optional extra features.
    let mut legs: Vec<usize> = Vec::new();
    for _ in 0..rng.random_range(0..=4) {
        if edges.len() >= 7 {
            break;
        }
        match rng.random_range(0..3) {
            0 => {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| u < v && budget[u] >= 1 && budget[v] >= 1)
                    .collect();
                if let Some(&(u, v)) = pick(rng, &pairs) {
                    edges.push((u, v));
                    budget[u] -= 1;
                    budget[v] -= 1;
                }
            }
            1 => {
                let spots: Vec<usize> = (0..n).filter(|&u| budget[u] >= 2).collect();
                if let Some(&u) = pick(rng, &spots) {
                    edges.push((u, u));
                    budget[u] -= 2;
                }
            }
            _ => {
                let spots: Vec<usize> = (0..n).filter(|&u| budget[u] >= 1).collect();
                if let Some(&u) = pick(rng, &spots) {
                    legs.push(u);
                    budget[u] -= 1;
                }
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let graph = Graph::new(labels, &edges, &legs).ok()?;
    Some(GraphOfGroups::new(graph, charges).unwrap())
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> Option<&'a T> {
    if items.is_empty() {
        None
    } else {
        Some(&items[rng.random_range(0..items.len())])
    }
}

/// A small abstract group given by its multiplication table.
struct SmallGroup {
    order: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl SmallGroup {
    fn cyclic(n: usize) -> SmallGroup {
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        SmallGroup { order: n, mul, inv }
    }

    fn klein4() -> SmallGroup {
        let mul: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        SmallGroup {
            order: 4,
            mul,
            inv: (0..4).collect(),
        }
    }

    /// Closure of permutation generators, for the nonabelian orders.
    fn from_perm_generators(degree: usize, gens: &[Vec<usize>]) -> SmallGroup {
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity];
        let mut cursor = 0;
        while cursor < elements.len() {
            let current = elements[cursor].clone();
            for g in gens {
                let next: Vec<usize> = current.iter().map(|&v| g[v]).collect();
                if !elements.contains(&next) {
                    elements.push(next);
                }
            }
            cursor += 1;
        }
        let order = elements.len();
        let index = |p: &[usize]| elements.iter().position(|q| q == p).unwrap();
        let mul: Vec<Vec<usize>> = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| {
                        let prod: Vec<usize> =
                            elements[b].iter().map(|&v| elements[a][v]).collect();
                        index(&prod)
                    })
                    .collect()
            })
            .collect();
        let inv = (0..order)
            .map(|a| {
                let mut p = vec![0; degree];
                for (i, &v) in elements[a].iter().enumerate() {
                    p[v] = i;
                }
                index(&p)
            })
            .collect();
        SmallGroup { order, mul, inv }
    }

    fn sym3() -> SmallGroup {
        SmallGroup::from_perm_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]])
    }

    fn dihedral4() -> SmallGroup {
        SmallGroup::from_perm_generators(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
    }
}

/// Base data for a voltage cover: a small connected base graph whose edges
/// carry group elements (tree edges implicitly the identity) and whose legs
/// carry elements of order at most 2.
struct VoltageBase {
    vertices: usize,
    edges: Vec<(usize, usize, usize)>, // (u, v, voltage)
    legs: Vec<(usize, usize)>,         // (root, voltage), voltage^2 = 1
}

/// The cover of a voltage base: vertices `(v, g)`, one sheet per group
/// element, with the group acting by left translation. The action is free
/// on half-edges; legs with an order-2 voltage produce flipped edges.
fn voltage_cover(group: &SmallGroup, base: &VoltageBase) -> Option<GroupAction> {
    let d = group.order;
    let nv = base.vertices;
    let vid = |v: usize, g: usize| v * d + g;
    let labels: Vec<String> = (0..nv * d)
        .map(|i| format!("{}.{}", i / d, i % d))
        .collect();

    // Cover half-edge ids for each (base half-edge, sheet).
    let base_half_count = 2 * base.edges.len() + base.legs.len();
    let mut half_id = vec![vec![usize::MAX; d]; base_half_count];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut legs: Vec<usize> = Vec::new();
    for (i, &(u, v, alpha)) in base.edges.iter().enumerate() {
        for g in 0..d {
            let g_far = group.mul[g][alpha];
            let e = edges.len();
            edges.push((vid(u, g), vid(v, g_far)));
            half_id[2 * i][g] = 2 * e;
            half_id[2 * i + 1][g_far] = 2 * e + 1;
        }
    }
    for (j, &(u, beta)) in base.legs.iter().enumerate() {
        let bh = 2 * base.edges.len() + j;
        if beta == 0 {
            for g in 0..d {
                half_id[bh][g] = 2 * edges.len() + legs.len();
                legs.push(vid(u, g));
            }
        } else {
            if group.mul[beta][beta] != 0 {
                return None;
            }
            for g in 0..d {
                let g_far = group.mul[g][beta];
                if half_id[bh][g] != usize::MAX {
                    continue;
                }
                let e = edges.len();
                edges.push((vid(u, g), vid(u, g_far)));
                half_id[bh][g] = 2 * e;
                half_id[bh][g_far] = 2 * e + 1;
            }
        }
    }

    let graph = Graph::new(labels, &edges, &legs).ok()?;
    let elements: Vec<Automorphism> = (0..d)
        .map(|x| {
            let vperm: Vec<usize> = (0..nv * d)
                .map(|i| vid(i / d, group.mul[x][i % d]))
                .collect();
            let mut hperm = vec![usize::MAX; graph.half_edge_count()];
            for bh in 0..base_half_count {
                for g in 0..d {
                    if half_id[bh][g] != usize::MAX {
                        hperm[half_id[bh][g]] = half_id[bh][group.mul[x][g]];
                    }
                }
            }
            Automorphism::new(&graph, vperm, hperm).expect("translation is an automorphism")
        })
        .collect();
    GroupAction::from_elements(graph, elements).ok()
}

fn random_voltage_action(rng: &mut ChaCha8Rng) -> Option<GroupAction> {
    let group = match rng.random_range(0..7) {
        0 => SmallGroup::cyclic(2),
        1 => SmallGroup::cyclic(3),
        2 => SmallGroup::cyclic(4),
        3 => SmallGroup::cyclic(rng.random_range(5..=8)),
        4 => SmallGroup::klein4(),
        5 => SmallGroup::sym3(),
        _ => SmallGroup::dihedral4(),
    };
    let d = group.order;
    let nv = rng.random_range(1..=2);
    let max_edges = (20 / d).clamp(2, 3);
    let n_edges = rng.random_range(2..=max_edges);
    let mut edges = Vec::new();
    if nv == 2 {
        edges.push((0, 1, 0)); // tree edge, trivial voltage
    }
    while edges.len() < n_edges {
        let u = rng.random_range(0..nv);
        let v = rng.random_range(0..nv);
        let alpha = rng.random_range(0..d);
        edges.push((u, v, alpha));
    }
    let mut legs = Vec::new();
    if rng.random_range(0..2) == 1 {
        let involutions: Vec<usize> = (0..d).filter(|&b| group.mul[b][b] == 0).collect();
        let beta = involutions[rng.random_range(0..involutions.len())];
        legs.push((rng.random_range(0..nv), beta));
    }
    voltage_cover(
        &group,
        &VoltageBase {
            vertices: nv,
            edges,
            legs,
        },
    )
}

/// Rotation by one step on the cycle graph.
fn cycle_rotation(n: usize, step: usize) -> Vec<usize> {
    (0..n).map(|v| (v + step) % n).collect()
}

/// Reflection v -> -v on the cycle graph.
fn cycle_reflection(n: usize) -> Vec<usize> {
    (0..n).map(|v| (n - v) % n).collect()
}

fn random_cycle_action(rng: &mut ChaCha8Rng) -> Option<GroupAction> {
    let n = rng.random_range(3..=8);
    let graph = Graph::cycle(n);
    let mut gens: Vec<Automorphism> = Vec::new();
    let divisors: Vec<usize> = (1..=n).filter(|k| n % k == 0 && n / k <= 8).collect();
    let k = divisors[rng.random_range(0..divisors.len())];
    if k < n {
        gens.push(Automorphism::from_vertex_perm(&graph, cycle_rotation(n, k)).unwrap());
    }
    let rotation_order = if k < n { n / k } else { 1 };
    if rng.random_range(0..2) == 1 && 2 * rotation_order <= 8 {
        gens.push(Automorphism::from_vertex_perm(&graph, cycle_reflection(n)).unwrap());
    }
    if gens.is_empty() {
        return None;
    }
    GroupAction::generate(graph, gens, 8).ok()
}

fn random_dipole_action(rng: &mut ChaCha8Rng) -> Option<GroupAction> {
    let m = rng.random_range(2..=4);
    let graph = Graph::dipole(m);
    // Rotation: swap the vertices and cyclically permute edges; its square is
    // a fixed-point-free edge permutation, so the action is edge-free.
    let rotation = {
        let mut hperm = vec![0; 2 * m];
        for i in 0..m {
            let j = (i + 1) % m;
            hperm[2 * i] = 2 * j + 1;
            hperm[2 * i + 1] = 2 * j;
        }
        Automorphism::new(&graph, vec![1, 0], hperm).unwrap()
    };
    // Vertical reflection: swap the vertices, reverse every edge.
    let reflection = {
        let mut hperm = vec![0; 2 * m];
        for i in 0..m {
            hperm[2 * i] = 2 * i + 1;
            hperm[2 * i + 1] = 2 * i;
        }
        Automorphism::new(&graph, vec![1, 0], hperm).unwrap()
    };
    let gens = match rng.random_range(0..3) {
        0 => vec![rotation],
        1 => vec![reflection],
        _ => vec![rotation, reflection],
    };
    GroupAction::generate(graph, gens, 8).ok()
}

/// A random edge-free action with group order at most 8.
pub fn random_edge_free_action(rng: &mut ChaCha8Rng) -> GroupAction {
    loop {
        let action = match rng.random_range(0..4) {
            0 | 1 => random_voltage_action(rng),
            2 => random_cycle_action(rng),
            _ => random_dipole_action(rng),
        };
        if let Some(action) = action {
            assert!(action.order() <= 8);
            if action.classify() != ihara::action::ActionClass::NotEdgeFree {
                return action;
            }
        }
    }
}
