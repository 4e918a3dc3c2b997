//! DOT emitters: the localization graph and the dilated category, with
//! deterministic node and edge order.

use catfrac::dilate::{DilatationResult, PromotedCategory};
use catfrac::zigzag::LocGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The localization graph: one solid edge per morphism, one dashed edge
/// `l_d` per sigma morphism, reversed.
pub fn graph_dot(graph: &LocGraph) -> String {
    let cat = graph.category();
    let mut out = String::from("digraph localization {\n  rankdir=LR;\n");
    for x in cat.object_ids() {
        out.push_str(&format!("  {};\n", quote(cat.object_name(x))));
    }
    for m in cat.morphism_ids() {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(cat.object_name(cat.dom(m))),
            quote(cat.object_name(cat.cod(m))),
            quote(cat.morphism_name(m)),
        ));
    }
    for &d in graph.sigma().morphisms() {
        out.push_str(&format!(
            "  {} -> {} [label={}, style=dashed];\n",
            quote(cat.object_name(cat.cod(d))),
            quote(cat.object_name(cat.dom(d))),
            quote(&format!("l_{}", cat.morphism_name(d))),
        ));
    }
    out.push_str("}\n");
    out
}

/// The dilated category as a diagram: objects and non-identity classes.
pub fn result_dot(result: &DilatationResult, promoted: &PromotedCategory) -> String {
    let cat = &promoted.category;
    let mut out = String::from("digraph dilatation {\n  rankdir=LR;\n");
    for x in cat.object_ids() {
        out.push_str(&format!("  {};\n", quote(cat.object_name(x))));
    }
    for m in cat.morphism_ids() {
        if cat.is_identity(m) {
            continue;
        }
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(cat.object_name(cat.dom(m))),
            quote(cat.object_name(cat.cod(m))),
            quote(cat.morphism_name(m)),
        ));
    }
    let _ = result;
    out.push_str("}\n");
    out
}
