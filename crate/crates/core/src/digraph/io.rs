use serde_json::{json, Map, Value};

use super::Digraph;
use crate::error::{Error, Result};

/// A digraph read from JSON together with any edge voltages it carried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphFile {
    pub digraph: Digraph,
    pub voltages: Vec<Option<Vec<i64>>>,
}

fn parse_err(position: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        position: position.into(),
        message: message.into(),
    }
}

fn string_at<'a>(obj: &'a Map<String, Value>, key: &str, pos: &str) -> Result<&'a str> {
    match obj.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(parse_err(format!("{pos}.{key}"), "expected a string")),
        None => Err(parse_err(format!("{pos}.{key}"), "missing field")),
    }
}

/// Parses `{"vertices": [...], "edges": [{"id", "from", "to", "voltage"?}, ...]}`.
pub fn read_digraph_json(text: &str) -> Result<DigraphFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let root = root
        .as_object()
        .ok_or_else(|| parse_err("$", "expected an object"))?;
    let vertices = root
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("vertices", "expected an array of vertex ids"))?;
    let mut names = Vec::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        let s = v
            .as_str()
            .ok_or_else(|| parse_err(format!("vertices[{i}]"), "expected a string"))?;
        if names.iter().any(|n: &String| n == s) {
            return Err(parse_err(format!("vertices[{i}]"), format!("duplicate vertex id {s:?}")));
        }
        names.push(s.to_string());
    }
    let edges = root
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("edges", "expected an array of edges"))?;
    let mut out = Vec::with_capacity(edges.len());
    let mut voltages = Vec::with_capacity(edges.len());
    for (k, e) in edges.iter().enumerate() {
        let pos = format!("edges[{k}]");
        let obj = e
            .as_object()
            .ok_or_else(|| parse_err(pos.clone(), "expected an object"))?;
        let id = string_at(obj, "id", &pos)?;
        if out.iter().any(|(n, _, _): &(String, usize, usize)| n == id) {
            return Err(parse_err(format!("{pos}.id"), format!("duplicate edge id {id:?}")));
        }
        let mut ends = [0usize; 2];
        for (slot, key) in ends.iter_mut().zip(["from", "to"]) {
            let v = string_at(obj, key, &pos)?;
            *slot = names.iter().position(|n| n == v).ok_or_else(|| {
                parse_err(format!("{pos}.{key}"), format!("unknown vertex {v:?}"))
            })?;
        }
        let voltage = match obj.get("voltage") {
            None | Some(Value::Null) => None,
            Some(Value::Array(xs)) => {
                let mut coords = Vec::with_capacity(xs.len());
                for (c, x) in xs.iter().enumerate() {
                    coords.push(x.as_i64().ok_or_else(|| {
                        parse_err(format!("{pos}.voltage[{c}]"), "expected an integer")
                    })?);
                }
                Some(coords)
            }
            Some(_) => return Err(parse_err(format!("{pos}.voltage"), "expected an integer array")),
        };
        out.push((id.to_string(), ends[0], ends[1]));
        voltages.push(voltage);
    }
    Ok(DigraphFile {
        digraph: Digraph::new(names, out)?,
        voltages,
    })
}

pub fn write_digraph_json(d: &Digraph, voltages: Option<&[Vec<i64>]>) -> Value {
    let edges: Vec<Value> = (0..d.edge_count())
        .map(|e| {
            let mut obj = json!({
                "id": d.edge_name(e),
                "from": d.vertex_name(d.origin(e)),
                "to": d.vertex_name(d.target(e)),
            });
            if let Some(vs) = voltages {
                obj["voltage"] = json!(vs[e]);
            }
            obj
        })
        .collect();
    json!({ "vertices": d.vertex_names(), "edges": edges })
}
