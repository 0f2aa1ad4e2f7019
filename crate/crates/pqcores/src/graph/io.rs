//! Canonical JSON and DOT serialization. The JSON form is byte-stable:
//! fields in a fixed order, edges as [u,v] with u < v sorted
//! lexicographically, labels rendered through their display form.

use super::{Graph, Label};
use crate::error::{Error, Result};
use serde::Deserialize;

/// Canonical JSON encoding of a graph.
pub fn to_json(g: &Graph) -> String {
    let labels: Vec<String> =
        g.labels().iter().map(|l| serde_json::to_string(&l.to_string()).unwrap()).collect();
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("[{u},{v}]")).collect();
    format!(
        "{{\"n\":{},\"labels\":[{}],\"edges\":[{}]}}",
        g.n(),
        labels.join(","),
        edges.join(",")
    )
}

#[derive(Deserialize)]
struct JsonGraph {
    n: usize,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

/// Parse a graph from the JSON encoding. Labels come back as raw strings.
pub fn from_json(s: &str) -> Result<Graph> {
    let raw: JsonGraph = serde_json::from_str(s)?;
    if raw.labels.len() != raw.n {
        return Err(Error::InvalidParameter(format!(
            "label count {} does not match n = {}",
            raw.labels.len(),
            raw.n
        )));
    }
    let mut g = Graph::with_labels(raw.labels.into_iter().map(Label::Raw).collect());
    for (u, v) in raw.edges {
        if u >= raw.n || v >= raw.n {
            return Err(Error::InvalidParameter(format!("edge ({u},{v}) out of range")));
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

/// DOT encoding for visualization.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {} [label=\"{}\"];\n", v, g.label(v)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
