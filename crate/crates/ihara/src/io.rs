//! File formats and report rendering.
//!
//! Everything is JSON with deterministic field order. Graph files follow
//! [`GraphDescription`]; graph-of-groups files add a `charges` map; action
//! files list generators in cycle notation (or full element tables);
//! covering files persist the complete sheet and Frobenius data and are
//! re-validated on load; representation files give matrices on generators,
//! with entries as numbers, `{"re":..,"im":..}` pairs, or strings like
//! `"zeta3^2"`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::action::{parse_vertex_cycles, Automorphism, GroupAction};
use crate::covering::{Covering, PrimeSplitting};
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{Graph, GraphDescription};
use crate::lfunction::Representation;
use crate::matrix::Mat;
use crate::poly::{ComplexPoly, IntPoly};

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_graph(s: &str) -> Result<Graph> {
    let desc: GraphDescription = serde_json::from_str(s).map_err(json_err)?;
    desc.to_graph()
}

pub fn graph_to_json(graph: &Graph) -> String {
    serde_json::to_string_pretty(&GraphDescription::from_graph(graph)).expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct GogFile {
    #[serde(flatten)]
    graph: GraphDescription,
    #[serde(default)]
    charges: BTreeMap<String, i64>,
    /// Stabilizer element names per vertex; informational on load.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    stabilizers: BTreeMap<String, Vec<String>>,
}

/// Parses a graph-of-groups file; vertices missing from `charges` default
/// to charge 1.
pub fn parse_gog(s: &str) -> Result<GraphOfGroups> {
    let file: GogFile = serde_json::from_str(s).map_err(json_err)?;
    let graph = file.graph.to_graph()?;
    for label in file.charges.keys() {
        if !file.graph.vertices.contains(label) {
            return Err(Error::Parse(format!("charge for unknown vertex {label:?}")));
        }
    }
    let charges: Vec<i64> = (0..graph.vertex_count())
        .map(|v| {
            file.charges
                .get(graph.vertex_label(v))
                .copied()
                .unwrap_or(1)
        })
        .collect();
    GraphOfGroups::new(graph, charges)
}

#[derive(Deserialize)]
struct RationalGogFile {
    #[serde(flatten)]
    graph: GraphDescription,
    #[serde(default)]
    charges: BTreeMap<String, serde_json::Value>,
}

/// Parses a graph-of-groups file whose charges may be arbitrary rationals
/// (integers, or strings like `"3/2"` and `"-1"`); used by the extended
/// three-term evaluator. Missing vertices default to charge 1.
pub fn parse_rational_gog(s: &str) -> Result<(Graph, Vec<num_rational::BigRational>)> {
    use num_rational::BigRational;
    let file: RationalGogFile = serde_json::from_str(s).map_err(json_err)?;
    let graph = file.graph.to_graph()?;
    let parse_charge = |v: &serde_json::Value| -> Result<BigRational> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(i.into()))
                .ok_or_else(|| Error::Parse(format!("bad charge {v}"))),
            serde_json::Value::String(s) => {
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s.trim(), "1"),
                };
                let num: num_bigint::BigInt =
                    num.parse().map_err(|_| Error::Parse(format!("bad charge {s:?}")))?;
                let den: num_bigint::BigInt =
                    den.parse().map_err(|_| Error::Parse(format!("bad charge {s:?}")))?;
                if den == 0.into() {
                    return Err(Error::Parse(format!("bad charge {s:?}")));
                }
                Ok(BigRational::new(num, den))
            }
            _ => Err(Error::Parse(format!("bad charge {v}"))),
        }
    };
    for label in file.charges.keys() {
        if !file.graph.vertices.contains(label) {
            return Err(Error::Parse(format!("charge for unknown vertex {label:?}")));
        }
    }
    let charges = (0..graph.vertex_count())
        .map(|v| {
            file.charges
                .get(graph.vertex_label(v))
                .map(parse_charge)
                .unwrap_or_else(|| Ok(BigRational::from_integer(1.into())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((graph, charges))
}

/// Serializes a graph of groups. When the ambient action is supplied,
/// quotient-derived stabilizers are listed by element name.
pub fn gog_to_json(gog: &GraphOfGroups, action: Option<&GroupAction>) -> String {
    let graph = gog.graph();
    let charges: BTreeMap<String, i64> = (0..graph.vertex_count())
        .map(|v| (graph.vertex_label(v).to_string(), gog.charge(v)))
        .collect();
    let stabilizers = match (gog.stabilizers(), action) {
        (Some(stabs), Some(action)) => stabs
            .iter()
            .enumerate()
            .map(|(v, els)| {
                (
                    graph.vertex_label(v).to_string(),
                    els.iter()
                        .map(|&el| action.element_name(el).to_string())
                        .collect(),
                )
            })
            .collect(),
        _ => BTreeMap::new(),
    };
    let file = GogFile {
        graph: GraphDescription::from_graph(graph),
        charges,
        stabilizers,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct GeneratorSpec {
    vertices: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    half_edges: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ElementSpec {
    name: String,
    vertices: Vec<usize>,
    half_edges: Vec<usize>,
}

#[derive(Serialize, Deserialize, Default)]
struct ActionFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    elements: Vec<ElementSpec>,
}

/// Parses an action file against its graph. Generator files are closed
/// under composition (up to `max_order`); element-table files are validated
/// as given.
pub fn parse_action(graph: &Graph, s: &str, max_order: usize) -> Result<GroupAction> {
    let file: ActionFile = serde_json::from_str(s).map_err(json_err)?;
    if !file.elements.is_empty() {
        let elements: Vec<Automorphism> = file
            .elements
            .iter()
            .map(|spec| {
                Automorphism::new(graph, spec.vertices.clone(), spec.half_edges.clone())
            })
            .collect::<Result<_>>()?;
        return GroupAction::from_elements(graph.clone(), elements);
    }
    let generators: Vec<Automorphism> = file
        .generators
        .iter()
        .map(|spec| {
            let vperm = parse_vertex_cycles(graph.vertex_labels(), &spec.vertices)?;
            match &spec.half_edges {
                Some(hperm) => Automorphism::new(graph, vperm, hperm.clone()),
                None => Automorphism::from_vertex_perm(graph, vperm),
            }
        })
        .collect::<Result<_>>()?;
    GroupAction::generate(graph.clone(), generators, max_order)
}

pub fn action_to_json(action: &GroupAction) -> String {
    let file = ActionFile {
        generators: Vec::new(),
        elements: (0..action.order())
            .map(|el| ElementSpec {
                name: action.element_name(el).to_string(),
                vertices: action.element(el).vertex_perm().to_vec(),
                half_edges: action.element(el).half_edge_perm().to_vec(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct CoveringFile {
    graph: GraphDescription,
    elements: Vec<ElementSpec>,
    quotient: GraphDescription,
    /// Stabilizer element ids per quotient vertex, in vertex order.
    stabilizers: Vec<Vec<usize>>,
    vertex_projection: Vec<usize>,
    half_edge_projection: Vec<usize>,
    tree_x: Vec<usize>,
    tree_y: Vec<usize>,
    lift_of_vertex: Vec<usize>,
    identity_lift: Vec<usize>,
    frobenius: Vec<usize>,
    sheet_number: Vec<usize>,
    tree_seed: usize,
    choice_seed: u64,
}

pub fn covering_to_json(cov: &Covering) -> String {
    let x = cov.quotient().graph();
    let file = CoveringFile {
        graph: GraphDescription::from_graph(cov.cover_graph()),
        elements: (0..cov.action().order())
            .map(|el| ElementSpec {
                name: cov.action().element_name(el).to_string(),
                vertices: cov.action().element(el).vertex_perm().to_vec(),
                half_edges: cov.action().element(el).half_edge_perm().to_vec(),
            })
            .collect(),
        quotient: GraphDescription::from_graph(x),
        stabilizers: cov.quotient().stabilizers().unwrap_or(&[]).to_vec(),
        vertex_projection: cov.vproj().to_vec(),
        half_edge_projection: cov.hproj().to_vec(),
        tree_x: (0..x.half_edge_count()).filter(|&h| cov.tree_x()[h]).collect(),
        tree_y: (0..cov.cover_graph().half_edge_count())
            .filter(|&f| cov.tree_y()[f])
            .collect(),
        lift_of_vertex: cov.lift_of_vertex().to_vec(),
        identity_lift: cov.identity_lift().to_vec(),
        frobenius: cov.frobenius_table().to_vec(),
        sheet_number: cov.sheet_numbers().to_vec(),
        tree_seed: cov.tree_seed(),
        choice_seed: cov.choice_seed(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Loads covering data and re-validates every structural invariant.
pub fn parse_covering(s: &str) -> Result<Covering> {
    let file: CoveringFile = serde_json::from_str(s).map_err(json_err)?;
    let graph = file.graph.to_graph()?;
    let elements: Vec<Automorphism> = file
        .elements
        .iter()
        .map(|spec| Automorphism::new(&graph, spec.vertices.clone(), spec.half_edges.clone()))
        .collect::<Result<_>>()?;
    let action = GroupAction::from_elements(graph, elements)?;
    let x = file.quotient.to_graph()?;
    if file.stabilizers.len() != x.vertex_count() {
        return Err(Error::InvalidCovering(
            "stabilizer table does not match the quotient vertices".into(),
        ));
    }
    for stab in &file.stabilizers {
        if stab.first() != Some(&0) || stab.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCovering(
                "stabilizers must be sorted element lists starting at the identity".into(),
            ));
        }
        if stab.iter().any(|&el| el >= action.order()) {
            return Err(Error::InvalidCovering("stabilizer element out of range".into()));
        }
    }
    let quotient = GraphOfGroups::with_stabilizers(x.clone(), file.stabilizers);
    let in_range = |v: &[usize], bound: usize| v.iter().all(|&i| i < bound);
    let kx = x.half_edge_count();
    let ky = action.graph().half_edge_count();
    if !in_range(&file.tree_x, kx) || !in_range(&file.tree_y, ky) {
        return Err(Error::InvalidCovering("tree index out of range".into()));
    }
    let mut tree_x = vec![false; kx];
    for &h in &file.tree_x {
        tree_x[h] = true;
    }
    let mut tree_y = vec![false; ky];
    for &f in &file.tree_y {
        tree_y[f] = true;
    }
    Covering::from_parts(
        action,
        quotient,
        file.vertex_projection,
        file.half_edge_projection,
        tree_x,
        tree_y,
        file.lift_of_vertex,
        file.identity_lift,
        file.frobenius,
        file.sheet_number,
        file.tree_seed,
        file.choice_seed,
    )
}


#[derive(Serialize, Deserialize)]
struct RepFile {
    name: String,
    dim: usize,
    generators: BTreeMap<String, Vec<Vec<serde_json::Value>>>,
}

/// Parses one complex entry: a JSON number, an `{"re":..,"im":..}` object,
/// or a string such as `"1"`, `"-2.5"`, `"i"`, `"-i"`, `"zeta3"`, `"zeta6^5"`.
fn parse_entry(v: &serde_json::Value) -> Result<Complex64> {
    match v {
        serde_json::Value::Number(n) => Ok(Complex64::new(
            n.as_f64().ok_or_else(|| Error::Parse("bad number".into()))?,
            0.0,
        )),
        serde_json::Value::Object(map) => {
            let get = |key: &str| -> Result<f64> {
                match map.get(key) {
                    None => Ok(0.0),
                    Some(serde_json::Value::Number(n)) => n
                        .as_f64()
                        .ok_or_else(|| Error::Parse(format!("bad {key} part"))),
                    Some(_) => Err(Error::Parse(format!("bad {key} part"))),
                }
            };
            Ok(Complex64::new(get("re")?, get("im")?))
        }
        serde_json::Value::String(s) => parse_entry_string(s),
        _ => Err(Error::Parse(format!("bad matrix entry {v}"))),
    }
}

fn parse_entry_string(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let (sign, t) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, t.strip_prefix('+').unwrap_or(t).trim()),
    };
    if t == "i" {
        return Ok(Complex64::new(0.0, sign));
    }
    if let Some(rest) = t.strip_prefix("zeta") {
        let (order, power) = match rest.split_once('^') {
            Some((n, k)) => (n, k),
            None => (rest, "1"),
        };
        let n: u32 = order
            .parse()
            .map_err(|_| Error::Parse(format!("bad root of unity {s:?}")))?;
        let k: u32 = power
            .parse()
            .map_err(|_| Error::Parse(format!("bad root of unity {s:?}")))?;
        if n == 0 {
            return Err(Error::Parse(format!("bad root of unity {s:?}")));
        }
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
        return Ok(z * sign);
    }
    t.parse::<f64>()
        .map(|x| Complex64::new(sign * x, 0.0))
        .map_err(|_| Error::Parse(format!("bad matrix entry {s:?}")))
}

/// Resolves a generator key against the group: first as an exact element
/// name, then as cycle notation over the cover's vertex labels.
fn resolve_element(action: &GroupAction, key: &str) -> Result<usize> {
    if let Some(el) = (0..action.order()).find(|&el| action.element_name(el) == key) {
        return Ok(el);
    }
    let perm = parse_vertex_cycles(action.graph().vertex_labels(), key)?;
    let matches: Vec<usize> = (0..action.order())
        .filter(|&el| action.element(el).vertex_perm() == perm.as_slice())
        .collect();
    match matches.as_slice() {
        [el] => Ok(*el),
        [] => Err(Error::Parse(format!("no group element matches {key:?}"))),
        _ => Err(Error::Parse(format!(
            "vertex permutation {key:?} is ambiguous; use element names"
        ))),
    }
}

pub fn parse_representation(action: &GroupAction, s: &str) -> Result<Representation> {
    let file: RepFile = serde_json::from_str(s).map_err(json_err)?;
    let mut generators = Vec::new();
    for (key, rows) in &file.generators {
        let el = resolve_element(action, key)?;
        if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
            return Err(Error::Parse(format!(
                "matrix for {key:?} is not {dim}x{dim}",
                dim = file.dim
            )));
        }
        let mut data = Vec::with_capacity(file.dim * file.dim);
        for row in rows {
            for v in row {
                data.push(parse_entry(v)?);
            }
        }
        generators.push((el, Mat::new(file.dim, file.dim, data)));
    }
    Representation::from_generator_matrices(action, &generators, file.name)
}

pub fn representation_to_json(action: &GroupAction, rep: &Representation) -> String {
    let generators: BTreeMap<String, Vec<Vec<serde_json::Value>>> = (1..action.order())
        .map(|el| {
            let m = rep.matrix(el);
            let rows: Vec<Vec<serde_json::Value>> = (0..rep.dim())
                .map(|i| {
                    (0..rep.dim())
                        .map(|j| {
                            let c = m.at(i, j);
                            serde_json::json!({ "re": c.re, "im": c.im })
                        })
                        .collect()
                })
                .collect();
            (action.element_name(el).to_string(), rows)
        })
        .collect();
    let file = RepFile {
        name: rep.name().to_string(),
        dim: rep.dim(),
        generators,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

// Report payloads. Text rendering lives beside the JSON forms so the CLI
// output is deterministic in both modes.

pub fn poly_coeff_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn complex_coeff_pairs(p: &ComplexPoly) -> Vec<(f64, f64)> {
    p.coeffs().iter().map(|c| (c.re, c.im)).collect()
}

/// Parses the JSON list form of an integer polynomial: numbers or decimal
/// strings, ascending in degree.
pub fn parse_poly_coeffs(v: &[serde_json::Value]) -> Result<IntPoly> {
    let coeffs = v
        .iter()
        .map(|x| match x {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(num_bigint::BigInt::from)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {x}"))),
            serde_json::Value::String(s) => s
                .parse::<num_bigint::BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))),
            _ => Err(Error::Parse(format!("bad coefficient {x}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

pub fn int_matrix_json(m: &Mat<i64>) -> serde_json::Value {
    serde_json::json!((0..m.rows())
        .map(|i| (0..m.cols()).map(|j| *m.at(i, j)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// One splitting-table row rendered for output.
pub fn splitting_row_json(cov: &Covering, row: &PrimeSplitting) -> serde_json::Value {
    let y = cov.cover_graph();
    serde_json::json!({
        "base": cov.gog_path_display(row.base.representative()),
        "length": row.base.length(),
        "frobenius": cov.action().element_name(row.frobenius_element),
        "frobenius_class": row.frobenius_class,
        "f": row.residual_degree,
        "g": row.num_primes_above,
        "above": row.primes_above.iter().map(|p| p.display(y)).collect::<Vec<_>>(),
    })
}

/// Aligned text table of prime splittings.
pub fn splitting_table_text(cov: &Covering, rows: &[PrimeSplitting]) -> String {
    let y = cov.cover_graph();
    let mut cells: Vec<[String; 5]> = vec![[
        "base".into(),
        "F".into(),
        "f".into(),
        "g".into(),
        "primes above".into(),
    ]];
    for row in rows {
        cells.push([
            cov.gog_path_display(row.base.representative()),
            cov.action().element_name(row.frobenius_element).to_string(),
            row.residual_degree.to_string(),
            row.num_primes_above.to_string(),
            row.primes_above
                .iter()
                .map(|p| p.display(y))
                .collect::<Vec<_>>()
                .join(" . "),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap())
        .collect();
    cells
        .iter()
        .map(|r| {
            (0..5)
                .map(|c| format!("{:width$}", r[c], width = widths[c]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}
