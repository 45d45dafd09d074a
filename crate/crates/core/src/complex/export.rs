//! DOT and JSON renderings of a subcomplex.
//!
//! In DOT, type-1 vertices are open circles, type-2 vertices filled discs
//! and type-3 vertices filled squares; each square face is listed as a
//! subgraph named `square_k`.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::field::Field;
use crate::io::{auto_to_json, poly_to_json};

use super::subcomplex::{Orientation, SubComplex};
use super::vertex::Vertex;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of the one-skeleton with square annotations.
pub fn to_dot<F: Field>(s: &SubComplex<F>) -> String {
    let mut out = String::from("graph complex {\n  node [fontsize=9];\n");
    for (i, v) in s.vertices().iter().enumerate() {
        let style = match v.kind() {
            1 => "shape=circle",
            2 => "shape=circle, style=filled, fillcolor=black, fontcolor=white",
            _ => "shape=square, style=filled, fillcolor=gray30, fontcolor=white",
        };
        let orient = match s.orientation(i) {
            Some(Orientation::Horizontal) => ", orientation=\"horizontal\"",
            Some(Orientation::Vertical) => ", orientation=\"vertical\"",
            None => "",
        };
        let _ = writeln!(out, "  v{i} [label=\"{}\", {style}{orient}];", escape(&v.to_string()));
    }
    for &(a, b) in s.edges() {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    for (k, sq) in s.squares().iter().enumerate() {
        let [a, b, c, d] = sq.vertices();
        let _ = writeln!(out, "  subgraph square_{k} {{ v{a}; v{b}; v{c}; v{d}; }}");
    }
    out.push_str("}\n");
    out
}

fn vertex_to_json<F: Field>(i: usize, v: &Vertex<F>, s: &SubComplex<F>) -> Value {
    let data = match v {
        Vertex::T1(t) => json!({ "poly": poly_to_json(t.poly()) }),
        Vertex::T2(t) => json!({ "basis": t.basis().iter().map(poly_to_json).collect::<Vec<_>>() }),
        Vertex::T3(t) => json!({ "representative": auto_to_json(t.rep()) }),
    };
    json!({
        "id": i,
        "type": v.kind(),
        "label": v.to_string(),
        "orientation": s.orientation(i).map(|o| match o {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
        }),
        "data": data,
    })
}

/// Structured dump of vertices, edges and squares. A square is listed as
/// its boundary cycle `[t1, a, t3, b]`.
pub fn to_json<F: Field>(s: &SubComplex<F>) -> Value {
    json!({
        "vertices": s.vertices().iter().enumerate().map(|(i, v)| vertex_to_json(i, v, s)).collect::<Vec<_>>(),
        "edges": s.edges().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "squares": s.squares().iter().map(|sq| json!(sq.vertices())).collect::<Vec<_>>(),
        "orientation_conflicts": s.orientation_conflicts().iter().collect::<Vec<_>>(),
    })
}
