//! Exact, language-neutral serialization of representations and morphisms.
//!
//! Matrix entries are decimal strings (`"a/b"` for rationals) so files are
//! diff-friendly and independent of any binary float format. Keys are
//! emitted in sorted order, making serialize -> parse -> serialize the
//! identity on bytes.

use cyclerep::field::Field;
use cyclerep::matrix::Mat;
use cyclerep::quiver::CyclicQuiver;
use cyclerep::rep::{Morphism, Representation};
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub struct IoError(pub String);

impl std::fmt::Display for IoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for IoError {}

fn err(msg: impl Into<String>) -> IoError {
    IoError(msg.into())
}

pub fn field_to_json(field: &Field) -> Value {
    match field {
        Field::Prime(p) => json!({"kind": "fp", "p": p}),
        Field::Rational => json!({"kind": "q"}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field, IoError> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| err("field.kind missing"))?;
    match kind {
        "fp" => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| err("field.p missing"))?;
            Field::prime(p).map_err(|e| err(e.to_string()))
        }
        "q" => Ok(Field::Rational),
        other => Err(err(format!("unknown field kind `{other}`"))),
    }
}

fn mat_to_json(m: &Mat, field: &Field) -> Value {
    let entries: Vec<Value> = m
        .entries()
        .iter()
        .map(|e| Value::String(field.render(e)))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn mat_from_json(v: &Value, field: &Field) -> Result<Mat, IoError> {
    let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| err("matrix.rows"))? as usize;
    let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| err("matrix.cols"))? as usize;
    let raw = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| err("matrix.entries"))?;
    if raw.len() != rows * cols {
        return Err(err("matrix entry count does not match the shape"));
    }
    let entries = raw
        .iter()
        .map(|e| {
            let s = e.as_str().ok_or_else(|| err("matrix entry must be a string"))?;
            field.parse(s).map_err(|e| err(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_entries(*field, rows, cols, entries))
}

pub fn rep_to_json(rep: &Representation) -> Value {
    let mut maps = Map::new();
    for (arrow, mat) in rep.quiver.arrows().iter().zip(&rep.maps) {
        maps.insert(arrow.name.to_string(), mat_to_json(mat, &rep.field));
    }
    json!({
        "g": rep.quiver.g(),
        "h": rep.quiver.h(),
        "field": field_to_json(&rep.field),
        "dims": rep.dims,
        "maps": Value::Object(maps),
    })
}

pub fn rep_from_json(v: &Value) -> Result<Representation, IoError> {
    let g = v.get("g").and_then(Value::as_u64).ok_or_else(|| err("g missing"))? as usize;
    let h = v.get("h").and_then(Value::as_u64).ok_or_else(|| err("h missing"))? as usize;
    let quiver = CyclicQuiver::new(g, h).map_err(|e| err(e.to_string()))?;
    let field = field_from_json(v.get("field").ok_or_else(|| err("field missing"))?)?;
    let dims: Vec<usize> = v
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| err("dims missing"))?
        .iter()
        .map(|d| d.as_u64().map(|x| x as usize).ok_or_else(|| err("bad dim")))
        .collect::<Result<Vec<_>, _>>()?;
    if dims.len() != quiver.vertex_count() {
        return Err(err("dims length does not match the vertex count"));
    }
    let maps_json = v
        .get("maps")
        .and_then(Value::as_object)
        .ok_or_else(|| err("maps missing"))?;
    let mut maps = Vec::new();
    for arrow in quiver.arrows() {
        let mv = maps_json
            .get(&arrow.name.to_string())
            .ok_or_else(|| err(format!("map for {} missing", arrow.name)))?;
        let mat = mat_from_json(mv, &field)?;
        if (mat.rows(), mat.cols()) != (dims[arrow.tgt], dims[arrow.src]) {
            return Err(err(format!("map for {} has the wrong shape", arrow.name)));
        }
        maps.push(mat);
    }
    Ok(Representation { quiver, field, dims, maps, labels: None })
}

pub fn rep_to_string(rep: &Representation) -> String {
    serde_json::to_string_pretty(&rep_to_json(rep)).expect("serializable")
}

pub fn rep_from_str(s: &str) -> Result<Representation, IoError> {
    let v: Value = serde_json::from_str(s).map_err(|e| err(e.to_string()))?;
    rep_from_json(&v)
}

pub fn morphism_to_json(m: &Morphism) -> Value {
    let field = m.source.field;
    let comps: Vec<Value> = m.comps.iter().map(|c| mat_to_json(c, &field)).collect();
    json!({"comps": comps})
}
