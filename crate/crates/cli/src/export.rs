//! DOT and JSON renderings of component and assembled quivers.

use cyclerep::components::{AssembledQuiver, ComponentQuiver, QuiverData, VertexLabel};
use cyclerep::field::Field;
use cyclerep::functor::{vertex_object, vertex_walk};
use cyclerep::quiver::CyclicQuiver;
use serde_json::{json, Value};

fn component_key(v: &VertexLabel) -> &'static str {
    match v {
        VertexLabel::P { .. } => "P",
        VertexLabel::I { .. } => "I",
        VertexLabel::T0 { .. } => "T0",
        VertexLabel::Tinf { .. } => "Tinf",
        VertexLabel::L { .. } => "L",
    }
}

/// DOT digraph with one cluster per component; connecting arrows are
/// dashed. Output order follows the quiver's deterministic vertex and
/// arrow order.
pub fn to_dot(data: &QuiverData, field: &Field, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    // group vertices by component, preserving order
    let mut clusters: Vec<(&'static str, Vec<usize>)> = Vec::new();
    for (i, v) in data.vertices.iter().enumerate() {
        let key = component_key(v);
        match clusters.last_mut() {
            Some((k, ids)) if *k == key => ids.push(i),
            _ => clusters.push((key, vec![i])),
        }
    }
    for (ci, (key, ids)) in clusters.iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{ci} {{\n    label=\"{key}\";\n"));
        for &i in ids {
            let label = data.vertices[i].render(field);
            out.push_str(&format!("    v{i} [label=\"{label}\"];\n"));
        }
        out.push_str("  }\n");
    }
    for a in &data.arrows {
        let style = if a.label.is_connecting() { " [style=dashed, color=red]" } else { "" };
        out.push_str(&format!(
            "  v{} -> v{} [label=\"{}\"]{};\n",
            a.src,
            a.tgt,
            a.label.render(field),
            style
        ));
    }
    out.push_str("}\n");
    out
}

/// JSON listing of vertices and arrows; with `with_objects`, each vertex
/// carries its walk or band label and dimension vector.
pub fn to_json(
    data: &QuiverData,
    k: &CyclicQuiver,
    field: &Field,
    with_objects: bool,
) -> Value {
    let vertices: Vec<Value> = data
        .vertices
        .iter()
        .map(|v| {
            let mut obj = serde_json::Map::new();
            obj.insert("id".into(), Value::String(v.render(field)));
            obj.insert("component".into(), Value::String(component_key(v).into()));
            if with_objects {
                let rep = vertex_object(v, k, *field);
                match vertex_walk(v, k) {
                    Some(w) => {
                        obj.insert("walk".into(), json!({"p": w.p, "q": w.q}));
                    }
                    None => {
                        if let VertexLabel::L { lambda, r } = v {
                            obj.insert(
                                "band".into(),
                                json!({"lambda": field.render(lambda), "d": r}),
                            );
                        }
                    }
                }
                obj.insert("dims".into(), json!(rep.dims));
            }
            Value::Object(obj)
        })
        .collect();
    let arrows: Vec<Value> = data
        .arrows
        .iter()
        .map(|a| {
            json!({
                "name": a.label.render(field),
                "src": data.vertices[a.src].render(field),
                "tgt": data.vertices[a.tgt].render(field),
                "connecting": a.label.is_connecting(),
            })
        })
        .collect();
    json!({"vertices": vertices, "arrows": arrows})
}

pub fn component_dot(cq: &ComponentQuiver, field: &Field) -> String {
    to_dot(&cq.data, field, &format!("{}", cq.component))
}

pub fn assembled_dot(aq: &AssembledQuiver) -> String {
    to_dot(&aq.data, &aq.field, &format!("Q_{}", aq.m))
}

