//! JSON, DOT and plain-text renderings of crystals and decompositions.
//! JSON documents carry `"schema": "crystal-forge/1"`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::crystal::{CrystalGraph, Label};
use crate::decompose::Decomposition;
use crate::lspath::LsPath;
use crate::SCHEMA;

/// DOT edge color for vertex `i` of the diagram is `PALETTE[i % PALETTE.len()]`.
pub const PALETTE: [&str; 8] = [
    "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan",
];

fn path_json(p: &LsPath) -> Value {
    Value::Array(
        p.segments()
            .iter()
            .map(|s| {
                Value::Array(
                    s.iter()
                        .map(|x| json!([x.numer(), x.denom()]))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn label_json(label: &Label) -> Option<(&'static str, Value)> {
    match label {
        Label::Plain => None,
        Label::Path(p) => Some(("path", path_json(p))),
        Label::Pair(a, b) => Some(("pair", json!([a, b]))),
        Label::Sl2(v) => Some(("v", json!(v))),
    }
}

/// `{schema, diagram, vertices: [{id, wt, ...}], edges: [{color, from, to}]}`
/// where an edge means `f_color(from) = to`.
pub fn crystal_json(c: &CrystalGraph) -> Value {
    let vertices: Vec<Value> = c
        .vertices()
        .map(|v| {
            let mut obj = Map::new();
            obj.insert("id".into(), json!(v));
            obj.insert("wt".into(), json!(c.weight_slice(v)));
            if let Some((k, val)) = label_json(c.label(v)) {
                obj.insert(k.into(), val);
            }
            Value::Object(obj)
        })
        .collect();
    let mut edges = Vec::new();
    for v in c.vertices() {
        for i in 0..c.rank() {
            if let Some(t) = c.f(i, v) {
                edges.push(json!({"color": i, "from": v, "to": t}));
            }
        }
    }
    json!({
        "schema": SCHEMA,
        "diagram": c.diagram().name(),
        "vertices": vertices,
        "edges": edges,
    })
}

fn weight_text(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Graphviz digraph; edges follow `f_i` and are colored by `i`.
pub fn crystal_dot(c: &CrystalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph crystal {{");
    let _ = writeln!(out, "  // diagram {}", c.diagram().name());
    for v in c.vertices() {
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", weight_text(c.weight_slice(v)));
    }
    for v in c.vertices() {
        for i in 0..c.rank() {
            if let Some(t) = c.f(i, v) {
                let color = PALETTE[i % PALETTE.len()];
                let _ = writeln!(out, "  v{v} -> v{t} [color={color}, label=\"{i}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// One line per vertex: id, weight and the defined `f_i`.
pub fn crystal_table(c: &CrystalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} vertices over {}", c.cardinality(), c.diagram().name());
    for v in c.vertices() {
        let fs: Vec<String> = (0..c.rank())
            .filter_map(|i| c.f(i, v).map(|t| format!("f{i}->{t}")))
            .collect();
        let _ = writeln!(out, "{v}\t{}\t{}", weight_text(c.weight_slice(v)), fs.join(" "));
    }
    out
}

/// `{schema, diagram, summands: [{weight, mult}], assignment: {vertexId: instanceId}}`.
pub fn decomposition_json(d: &Decomposition) -> Value {
    let summands: Vec<Value> = d
        .summands
        .iter()
        .map(|(w, m)| json!({"weight": w, "mult": m}))
        .collect();
    let mut assignment = Map::new();
    for (v, inst) in d.assignment.iter().enumerate() {
        assignment.insert(v.to_string(), json!(inst));
    }
    json!({
        "schema": SCHEMA,
        "diagram": d.diagram.name(),
        "summands": summands,
        "assignment": assignment,
    })
}

pub fn decomposition_table(d: &Decomposition) -> String {
    let mut out = String::new();
    for (w, m) in &d.summands {
        let _ = writeln!(out, "{w}\t{m}");
    }
    out
}
