//! The worked examples of the two figures, regenerated from scratch.

use std::collections::BTreeMap;
use std::sync::Arc;

use dihomotopy::constructions::{
    mapping_tube, modified_cone, modified_mapping_cone, modified_mapping_cylinder, EMBED_CONE, EMBED_CYLINDER,
};
use dihomotopy::io::{DigraphDoc, MapDoc};
use dihomotopy::{Digraph, DigraphMap, Result};
use serde_json::{json, Value};

use crate::output::construction_json;

fn path_abc() -> Arc<Digraph> {
    Arc::new(Digraph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).expect("fixed digraph"))
}

fn four_cycle() -> Arc<Digraph> {
    Arc::new(Digraph::new(["0", "1", "2", "3"], [("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")]).expect("fixed digraph"))
}

/// `a ↦ 0, b ↦ 1, c ↦ 1`.
pub fn figure_one_map() -> DigraphMap {
    DigraphMap::from_pairs(path_abc(), four_cycle(), &[("a", "0"), ("b", "1"), ("c", "1")]).expect("fixed map")
}

/// `a ↦ 1, b ↦ 2, c ↦ 2`.
pub fn figure_two_second_map() -> DigraphMap {
    DigraphMap::from_pairs(path_abc(), four_cycle(), &[("a", "1"), ("b", "2"), ("c", "2")]).expect("fixed map")
}

/// The drawn choice `g_1 = c`.
pub fn figure_one_sections() -> BTreeMap<String, String> {
    BTreeMap::from([("1".to_string(), "c".to_string())])
}

/// File name and document for every fixture, in a fixed order.
pub fn fixtures() -> Result<Vec<(&'static str, Value)>> {
    let f = figure_one_map();
    let g = figure_two_second_map();
    let sections = figure_one_sections();
    let cone = modified_mapping_cone(&f, Some(&sections))?;
    let meet = cone.map(EMBED_CONE).image().intersection(&cone.map(EMBED_CYLINDER).image());
    Ok(vec![
        ("fig1_map.json", serde_json::to_value(MapDoc::from(&f)).expect("map documents serialize")),
        ("fig1_sections.json", json!(sections)),
        ("fig1_modified_cylinder.json", construction_json(&modified_mapping_cylinder(&f))),
        ("fig1_modified_cone.json", construction_json(&modified_cone(&f, Some(&sections))?)),
        ("fig1_mapping_cone.json", construction_json(&cone)),
        ("fig1_intersection.json", json!({ "digraph": DigraphDoc::from(&meet) })),
        ("fig2_second_map.json", serde_json::to_value(MapDoc::from(&g)).expect("map documents serialize")),
        ("fig2_tube.json", construction_json(&mapping_tube(&f, &g)?)),
    ])
}
