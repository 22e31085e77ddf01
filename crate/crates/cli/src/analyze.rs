use std::sync::Arc;

use serde_json::{json, Value};
use stickelgraph::bowen_franks::{bf_operator, r_invariant_of_operator, zeta_report};
use stickelgraph::digraph::{read_digraph_json, Digraph};
use stickelgraph::group::Subgroup;
use stickelgraph::stickelberger::stickelberger_cover_with;
use stickelgraph::voltage::intermediate_quotient;

use crate::Failure;

fn parse_prime(s: &str, target: &str) -> Result<u64, Failure> {
    s.parse()
        .map_err(|_| Failure::Parse(format!("{target:?}: {s:?} is not an integer")))
}

/// Resolves a builtin name or reads a digraph file.
fn load(target: &str, cap: u64) -> Result<Arc<Digraph>, Failure> {
    if target == "example:2.4" {
        let d = Digraph::from_edges(2, vec![(0, 0), (0, 0), (1, 1), (1, 1), (0, 1), (1, 0)])?;
        return Ok(Arc::new(d));
    }
    if let Some(p) = target.strip_prefix("stickelberger:") {
        let cover = stickelberger_cover_with(parse_prime(p, target)?, None, cap)?;
        return Ok(cover.digraph().clone());
    }
    if let Some(p) = target.strip_prefix("plus:") {
        let cover = stickelberger_cover_with(parse_prime(p, target)?, None, cap)?;
        let j = Subgroup::generated_by(&cover.group, &[cover.dlog.complex_conjugation()]);
        return Ok(intermediate_quotient(&cover.voltage, &j)?.digraph);
    }
    if target.contains(':') && !std::path::Path::new(target).exists() {
        return Err(Failure::Parse(format!("unknown builtin {target:?}")));
    }
    let text = std::fs::read_to_string(target)
        .map_err(|e| Failure::Parse(format!("cannot read {target:?}: {e}")))?;
    Ok(Arc::new(read_digraph_json(&text)?.digraph))
}

pub fn analyze(target: &str, dump_matrices: bool, cap: u64) -> Result<Value, Failure> {
    let d = load(target, cap)?;
    let report = zeta_report(&d)?;
    let b = bf_operator(&d);
    let mut out = json!({
        "target": target,
        "vertices": d.vertex_count(),
        "edges": d.edge_count(),
    });
    let obj = out.as_object_mut().unwrap();
    for (k, v) in report.to_json().as_object().unwrap() {
        obj.insert(k.clone(), v.clone());
    }
    if report.delta == 0 {
        let index = r_invariant_of_operator(&b)?;
        obj.insert("r_invariant".into(), stickelgraph::json::big(&index));
    }
    if dump_matrices {
        obj.insert("adjacency".into(), d.adjacency_matrix().to_json());
        obj.insert("bf_operator".into(), b.to_json());
    }
    Ok(out)
}
