//! Deterministic DOT and JSON serializations of graphs.

use super::Graph;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

/// `{ "vertices": [label strings], "edges": [[i, j]...] }` with `i < j`,
/// edges sorted.
pub fn to_json(g: &Graph) -> String {
    let doc = JsonGraph {
        vertices: g.labels().iter().map(|l| l.to_string()).collect(),
        edges: g.edges(),
    };
    serde_json::to_string(&doc).expect("graph serialization cannot fail")
}

/// DOT using vertex labels as node names; isolated vertices listed first.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.vertex_count() {
        if g.degree(v) == 0 {
            out.push_str(&format!("  \"{}\";\n", g.label(v)));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", g.label(u), g.label(v)));
    }
    out.push_str("}\n");
    out
}
