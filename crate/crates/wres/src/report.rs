//! Deterministic rendering of resolution trees and their building blocks.
//!
//! Three formats share one traversal order (chart order, depth first), so a
//! fixed input and configuration always produce byte-identical output:
//!
//! * **text** — an indented tree for terminals;
//! * **JSON** — `{ring, mode, tree}` with every rational serialized as a
//!   `"p/q"` string (integers shorten to `"p"`), re-parseable exactly;
//! * **DOT** — a Graphviz digraph whose node labels carry the maximal
//!   invariant and status.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::algebra::{rat_to_string, Rat};
use crate::blowup::Chart;
use crate::invariant::ReducedCenter;
use crate::resolve::{Mode, ResolutionNode};

/// `(x^(1/3), y^(1/2))`: a reduced center written with reciprocal weights,
/// the exponent convention used for weighted-blowup centers.  A weight of 1
/// prints as the bare parameter; multi-term parameters are parenthesized.
pub fn fractional_center(center: &ReducedCenter) -> String {
    let mut out = String::from("(");
    for (i, (p, w)) in center
        .flag()
        .params()
        .iter()
        .zip(center.weights())
        .enumerate()
    {
        if i > 0 {
            out.push_str(", ");
        }
        if p.num_terms() > 1 {
            let _ = write!(out, "({p})");
        } else {
            let _ = write!(out, "{p}");
        }
        if *w != 1 {
            let _ = write!(out, "^(1/{w})");
        }
    }
    out.push(')');
    out
}

/// The one-parameter subgroup acting on the ambient space: the center's
/// weights on its parameters, zero on the remaining coordinates.
pub fn cocharacter(center: &ReducedCenter) -> Vec<u64> {
    let n = center.flag().ring().nvars();
    let mut v = vec![0u64; n];
    for (&pivot, &w) in center.flag().pivots().iter().zip(center.weights()) {
        v[pivot] = w;
    }
    v
}

/// `(0, -1/2)`: a rational point as a parenthesized tuple.
pub fn point_string(p: &[Rat]) -> String {
    let parts: Vec<String> = p.iter().map(rat_to_string).collect();
    format!("({})", parts.join(", "))
}

/// Indented plain-text rendering of a resolution tree.
pub fn render_text(mode: Mode, root: &ResolutionNode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {mode}");
    let ring = root.ideal().ring();
    let _ = writeln!(out, "ring: {}", ring.vars().join(", "));
    text_node(root, 0, &mut out);
    out
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn text_node(node: &ResolutionNode, depth: usize, out: &mut String) {
    indent(out, depth);
    let _ = writeln!(out, "status: {}", node.status());
    indent(out, depth);
    let _ = writeln!(out, "ideal: {}", node.ideal());
    if let Some(t) = node.ideal().ring().truncation() {
        indent(out, depth);
        let _ = writeln!(out, "jet order: {t}");
    }
    if let Some(inv) = node.maxinv() {
        indent(out, depth);
        let at = node
            .points()
            .first()
            .map(|(p, _)| format!(" at {}", point_string(p)))
            .unwrap_or_default();
        let cert = if node.certified() {
            " [certified]"
        } else {
            " [not certified]"
        };
        let _ = writeln!(out, "maxinv: {inv}{at}{cert}");
    }
    if let Some(center) = node.center() {
        indent(out, depth);
        let weights: Vec<String> = center.weights().iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "center: {}  [weights ({}), l = {}]",
            fractional_center(center),
            weights.join(", "),
            rat_to_string(center.ell())
        );
    }
    if let Some(m) = node.weak_multiplicity() {
        indent(out, depth);
        let _ = writeln!(out, "weak multiplicity: {m}");
    }
    for note in node.notes() {
        indent(out, depth);
        let _ = writeln!(out, "note: {note}");
    }
    for (i, edge) in node.children().iter().enumerate() {
        let chart = edge.chart();
        indent(out, depth);
        let weights: Vec<String> = chart.action_weights().iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "chart {i} [exceptional {}, group mu_{}, action ({})]",
            chart.exceptional_name(),
            chart.group_order(),
            weights.join(", ")
        );
        indent(out, depth + 1);
        let _ = writeln!(out, "substitution: {}", chart.substitution());
        text_node(edge.node(), depth + 1, out);
    }
}

/// JSON rendering: `{ring, mode, tree}`.  Rationals are `"p/q"` strings.
pub fn render_json(mode: Mode, root: &ResolutionNode) -> String {
    let ring = root.ideal().ring();
    let doc = json!({
        "ring": {
            "vars": ring.vars(),
            "truncation": ring.truncation(),
        },
        "mode": mode.to_string(),
        "tree": json_node(root),
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("tree serializes");
    out.push('\n');
    out
}

fn json_rat_vec(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(|r| Value::String(rat_to_string(r))).collect())
}

fn json_center(center: &ReducedCenter) -> Value {
    json!({
        "params": center.flag().params().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "exponents": json_rat_vec(&center.exponents()),
        "weights": center.weights(),
        "l": rat_to_string(center.ell()),
    })
}

fn json_chart(chart: &Chart, child: &ResolutionNode) -> Value {
    json!({
        "substitution": chart.substitution().to_string(),
        "exceptional": chart.exceptional_name(),
        "group_order": chart.group_order(),
        "action_weights": chart.action_weights(),
        "child": json_node(child),
    })
}

/// One tree node as a JSON object (public so tests can inspect subtrees).
pub fn json_node(node: &ResolutionNode) -> Value {
    let points: Vec<Value> = node
        .points()
        .iter()
        .map(|(p, inv)| {
            json!({
                "point": json_rat_vec(p),
                "invariant": json_rat_vec(inv.entries()),
            })
        })
        .collect();
    json!({
        "ideal": node.ideal().gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "truncation": node.ideal().ring().truncation(),
        "point_invariants": points,
        "certified": node.certified(),
        "center": node.center().map(json_center),
        "center_point": node.center_point().map(json_rat_vec),
        "weak_multiplicity": node.weak_multiplicity(),
        "charts": node
            .children()
            .iter()
            .map(|e| json_chart(e.chart(), e.node()))
            .collect::<Vec<_>>(),
        "status": node.status().to_string(),
        "notes": node.notes(),
    })
}

/// Graphviz rendering: one box per node labeled with the maximal invariant
/// and status, edges labeled by the chart's exceptional variable.
pub fn render_dot(root: &ResolutionNode) -> String {
    let mut out = String::from("digraph resolution {\n  node [shape=box];\n");
    let mut counter = 0usize;
    dot_node(root, &mut counter, &mut out);
    out.push_str("}\n");
    out
}

fn dot_node(node: &ResolutionNode, counter: &mut usize, out: &mut String) -> usize {
    let id = *counter;
    *counter += 1;
    let inv = node
        .maxinv()
        .map(|i| i.to_string())
        .unwrap_or_else(|| "-".into());
    let _ = writeln!(out, "  n{id} [label=\"{}\\n{}\"];", inv, node.status());
    for edge in node.children() {
        let child_id = dot_node(edge.node(), counter, out);
        let _ = writeln!(
            out,
            "  n{id} -> n{child_id} [label=\"{}\"];",
            edge.chart().exceptional_name()
        );
    }
    id
}
