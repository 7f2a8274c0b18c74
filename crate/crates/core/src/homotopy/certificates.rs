//! Closed-form homotopies for the standard constructions.

use std::collections::BTreeMap;

use super::Homotopy;
use crate::constructions::{
    ConstructionResult, SDigraph, EMBED_G, EMBED_G_PRIME, EMBED_H, INCLUSION, RETRACTION,
};
use crate::digraph::{DigraphMap, LineDigraph};
use crate::error::Result;
use crate::label::{self, APEX};

fn frame(result: &ConstructionResult, source: &DigraphMap, rename: impl Fn(&str) -> String) -> Result<DigraphMap> {
    let pairs: BTreeMap<String, String> = source.domain().labels().iter().map(|x| (x.clone(), rename(x))).collect();
    DigraphMap::from_labels(source.domain().clone(), result.digraph.clone(), &pairs)
}

/// `G □ I₂ → C(f)` from `i_H ∘ f` through the embedding of `G` to the
/// constant map at the apex, over `0 ← 1 → 2`.
pub fn mapping_cone_homotopy(f: &DigraphMap, cone: &ConstructionResult) -> Result<Homotopy> {
    let start = f.then(cone.map(EMBED_H))?;
    let middle = cone.map(EMBED_G).clone();
    let end = frame(cone, f, |_| APEX.to_string())?;
    Homotopy::new(f.domain().clone(), cone.digraph.clone(), LineDigraph::parse("-+")?, vec![start, middle, end])
}

/// `id ≃ i ∘ r` on a (modified) mapping cylinder over `I⁺`.
pub fn crushing_homotopy(cylinder: &ConstructionResult) -> Result<Homotopy> {
    let id = DigraphMap::identity(cylinder.digraph.clone());
    let crushed = cylinder.map(RETRACTION).then(cylinder.map(EMBED_H))?;
    Homotopy::new(cylinder.digraph.clone(), cylinder.digraph.clone(), LineDigraph::parse("+")?, vec![id, crushed])
}

/// Contraction of a modified cone over `0 ← 1 ← 2`: the middle frame moves
/// each `h` with a chosen section `g_h` to `(g_h,0)`.
pub fn modified_cone_contraction(cone: &ConstructionResult) -> Result<Homotopy> {
    let d = &cone.digraph;
    let id = DigraphMap::identity(d.clone());
    let moved: BTreeMap<String, String> = cone
        .sections
        .iter()
        .map(|(h, g)| (label::codomain(h), label::level(g, 0)))
        .collect();
    let middle = frame(cone, &id, |x| moved.get(x).cloned().unwrap_or_else(|| x.to_string()))?;
    let end = DigraphMap::constant(d.clone(), d.clone(), APEX)?;
    Homotopy::new(d.clone(), d.clone(), LineDigraph::parse("--")?, vec![id, middle, end])
}

/// `i ∘ f ≃ i ∘ g` in the mapping tube over `0 ← 1 → 2 → 3`.
pub fn tube_homotopy(f: &DigraphMap, g: &DigraphMap, tube: &ConstructionResult) -> Result<Homotopy> {
    let frames = vec![
        f.then(tube.map(EMBED_H))?,
        tube.map(EMBED_G).clone(),
        tube.map(EMBED_G_PRIME).clone(),
        g.then(tube.map(EMBED_H))?,
    ];
    Homotopy::new(f.domain().clone(), tube.digraph.clone(), LineDigraph::parse("-++")?, frames)
}

/// `id ≃ j ∘ r` on `C(f)` for the S-digraph, over `0 ← 1 ← 2`.
///
/// The middle frame sends each `H:x` with `x` outside `G ∩ H` to its copy
/// in the cone slice.
pub fn s_digraph_homotopy(s: &SDigraph) -> Result<Homotopy> {
    let cf = &s.mapping_cone;
    let id = DigraphMap::identity(cf.digraph.clone());
    let kept = &s.s.digraph;
    let middle = frame(cf, &id, |x| match label::untag(label::CODOMAIN, x) {
        Some(v) if !kept.contains_vertex(x) => {
            let in_g = label::tag(label::LEFT, v);
            let tagged = if s.f.domain().contains_vertex(&in_g) { in_g } else { label::tag(label::RIGHT, v) };
            label::level(&tagged, 1)
        }
        _ => x.to_string(),
    })?;
    let end = s.s.map(RETRACTION).then(s.s.map(INCLUSION))?;
    Homotopy::new(cf.digraph.clone(), cf.digraph.clone(), LineDigraph::parse("--")?, vec![id, middle, end])
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::{
        mapping_tube, modified_cone, modified_mapping_cone, modified_mapping_cylinder, s_digraph,
    };
    use crate::digraph::Digraph;
    use crate::homotopy::{check_equivalence, decide_homotopic, is_contractible, DEFAULT_BUDGET};

    fn digraph(vertices: &[&str], edges: &[(&str, &str)]) -> Arc<Digraph> {
        Arc::new(Digraph::new(vertices.iter().copied(), edges.iter().copied()).unwrap())
    }

    fn figure_data() -> (DigraphMap, DigraphMap) {
        let g = digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let h = digraph(&["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")]);
        let f = DigraphMap::from_pairs(g.clone(), h.clone(), &[("a", "0"), ("b", "1"), ("c", "1")]).unwrap();
        let k = DigraphMap::from_pairs(g, h, &[("a", "1"), ("b", "2"), ("c", "2")]).unwrap();
        (f, k)
    }

    fn assert_certificate(h: &Homotopy, start: &DigraphMap, end: &DigraphMap) {
        assert!(h.verify(), "failed at step {:?}", h.first_failure());
        assert!(h.assemble().is_ok());
        assert_eq!(h.start(), start);
        assert_eq!(h.end(), end);
    }

    #[test]
    fn mapping_cone_example() {
        let (f, _) = figure_data();
        let cf = modified_mapping_cone(&f, None).unwrap();
        let h = mapping_cone_homotopy(&f, &cf).unwrap();
        let apex = DigraphMap::constant(f.domain().clone(), cf.digraph.clone(), APEX).unwrap();
        assert_certificate(&h, &f.then(cf.map(EMBED_H)).unwrap(), &apex);
    }

    #[test]
    fn crushing() {
        let (f, _) = figure_data();
        let m = modified_mapping_cylinder(&f);
        let h = crushing_homotopy(&m).unwrap();
        let crushed = m.map(RETRACTION).then(m.map(EMBED_H)).unwrap();
        assert_certificate(&h, &DigraphMap::identity(m.digraph.clone()), &crushed);
        assert_eq!(m.map(EMBED_H).then(m.map(RETRACTION)).unwrap(), DigraphMap::identity(f.codomain().clone()));
        let verdict = check_equivalence(m.map(RETRACTION), m.map(EMBED_H), DEFAULT_BUDGET).unwrap();
        assert!(verdict.is_equivalent());
    }

    #[test]
    fn modified_cone_contracts() {
        let (f, k) = figure_data();
        for map in [&f, &k] {
            let c = modified_cone(map, None).unwrap();
            let h = modified_cone_contraction(&c).unwrap();
            let d = c.digraph.clone();
            assert_certificate(&h, &DigraphMap::identity(d.clone()), &DigraphMap::constant(d.clone(), d.clone(), APEX).unwrap());
            assert!(is_contractible(&d, DEFAULT_BUDGET).unwrap().is_homotopic());
        }
        let choice = BTreeMap::from([("1".to_string(), "c".to_string())]);
        let c = modified_cone(&f, Some(&choice)).unwrap();
        assert!(modified_cone_contraction(&c).unwrap().verify());
    }

    #[test]
    fn tube() {
        let (f, k) = figure_data();
        let t = mapping_tube(&f, &k).unwrap();
        let h = tube_homotopy(&f, &k, &t).unwrap();
        let (start, end) = (f.then(t.map(EMBED_H)).unwrap(), k.then(t.map(EMBED_H)).unwrap());
        assert_certificate(&h, &start, &end);
        let found = decide_homotopic(&start, &end, DEFAULT_BUDGET).unwrap();
        assert!(found.certificate().unwrap().verify());
        assert!(found.certificate().unwrap().line().steps() <= 3);
    }

    #[test]
    fn s_digraph_retraction() {
        let g = digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let h = digraph(&["b", "c", "d"], &[("b", "c"), ("c", "d")]);
        let s = s_digraph(&g, &h).unwrap();
        let hom = s_digraph_homotopy(&s).unwrap();
        let jr = s.s.map(RETRACTION).then(s.s.map(INCLUSION)).unwrap();
        assert_certificate(&hom, &DigraphMap::identity(s.mapping_cone.digraph.clone()), &jr);
    }
}
