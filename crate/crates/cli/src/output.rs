use dihomotopy::abelian::{FgAbGroup, GroupHom};
use dihomotopy::constructions::ConstructionResult;
use dihomotopy::homotopy::Homotopy;
use dihomotopy::io::{DigraphDoc, HomotopyDoc};
use serde_json::{json, Value};

/// Pretty JSON with `indent` spaces, or one line when `indent` is zero.
pub fn render(value: &Value, indent: usize) -> String {
    if indent == 0 {
        return value.to_string();
    }
    let pretty = serde_json::to_string_pretty(value).expect("values serialize");
    if indent == 2 {
        return pretty;
    }
    // Escaped JSON strings hold no raw newlines, so leading spaces are all indentation.
    pretty
        .lines()
        .map(|line| {
            let body = line.trim_start_matches(' ');
            format!("{}{body}", " ".repeat((line.len() - body.len()) / 2 * indent))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn construction_json(c: &ConstructionResult) -> Value {
    let maps: serde_json::Map<String, Value> =
        c.maps.iter().map(|(name, m)| (name.clone(), json!(m.to_label_map()))).collect();
    let mut doc = json!({ "digraph": DigraphDoc::from(c.digraph.as_ref()), "maps": maps });
    if !c.sections.is_empty() {
        doc["sections"] = json!(c.sections);
    }
    doc
}

pub fn homotopy_json(h: &Homotopy) -> Value {
    serde_json::to_value(HomotopyDoc::from(h)).expect("homotopy documents serialize")
}

/// Integers that fit in `i64` as numbers, larger ones as strings.
pub fn integer(x: &impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map_or(Value::String(s), Value::from)
}

pub fn group_json(g: &FgAbGroup) -> Value {
    json!({ "rank": g.rank(), "torsion": g.torsion().iter().map(integer).collect::<Vec<_>>() })
}

pub fn hom_json(degree: usize, h: &GroupHom) -> Value {
    let matrix: Vec<Vec<Value>> = h.matrix().row_vecs().iter().map(|r| r.iter().map(integer).collect()).collect();
    json!({
        "degree": degree,
        "source": group_json(h.source()),
        "target": group_json(h.target()),
        "matrix": matrix,
    })
}
