//! Cones, mapping cylinders, modified cones, modified mapping cones, mapping
//! tubes and the S-digraph.
//!
//! Every construction is a quotient of products and disjoint unions. Rather
//! than naming quotient classes by their least member, each construction
//! builds its result directly with stable, readable labels:
//!
//! | construction | vertices |
//! |---|---|
//! | cone `CG` | `(g,0)`, `*` |
//! | mapping cylinder `M_f`, modified cylinder `M̂_f` | `H:h`, `(g,1)` |
//! | modified cone `Ĉ_fG` | `(g,0)`, `*`, `H:h` for `h ∈ V₁′ ∪ V₁″` |
//! | modified mapping cone `C(f)` | `H:h`, `(g,1)`, `*` |
//! | mapping tube `MT_{f,g}` | `H:h`, `(x,1)`, `(x,2)` |
//!
//! In `C(f)` the cone slice `(g,0)` is glued to the cylinder slice `(g,1)`
//! and keeps the latter's label. The test suite checks each construction
//! against the generic product, disjoint-union and quotient operations.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::digraph::{Digraph, DigraphMap, DisjointUnion};
use crate::error::{Error, Result};
use crate::label::{self, APEX};

pub const EMBED_G: &str = "embed_G";
pub const EMBED_G_PRIME: &str = "embed_G_prime";
pub const EMBED_H: &str = "embed_H";
pub const APEX_MAP: &str = "apex";
pub const RETRACTION: &str = "retraction";
pub const INCLUSION: &str = "inclusion";
pub const EMBED_CONE: &str = "embed_cone";
pub const EMBED_CYLINDER: &str = "embed_cylinder";

/// A constructed digraph with its canonical maps.
#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub digraph: Arc<Digraph>,
    /// Named embeddings, projections and retractions.
    pub maps: BTreeMap<String, DigraphMap>,
    /// The chosen preimage `g_h` for each `h ∈ V₁′ ∪ V₁″`, by label.
    pub sections: BTreeMap<String, String>,
}

impl ConstructionResult {
    /// A canonical map by name; panics on names the construction does not produce.
    pub fn map(&self, name: &str) -> &DigraphMap {
        self.maps.get(name).unwrap_or_else(|| panic!("construction has no map named `{name}`"))
    }
}

#[derive(Default)]
struct Builder {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
}

impl Builder {
    fn vertex(&mut self, v: String) {
        self.vertices.insert(v);
    }

    fn edge(&mut self, a: String, b: String) {
        self.edges.insert((a, b));
    }

    fn finish(self) -> Arc<Digraph> {
        Arc::new(Digraph::from_label_sets(self.vertices, self.edges).expect("construction yields a digraph"))
    }
}

/// The map `domain → codomain` sending each label `x` to `rename(x)`.
fn by_label(domain: &Arc<Digraph>, codomain: &Arc<Digraph>, rename: impl Fn(&str) -> String) -> Result<DigraphMap> {
    let assignment = domain
        .labels()
        .iter()
        .map(|l| {
            let target = rename(l);
            codomain.index_of(&target).ok_or(Error::UnknownVertex(target))
        })
        .collect::<Result<Vec<_>>>()?;
    DigraphMap::new(domain.clone(), codomain.clone(), assignment)
}

fn apex_map(codomain: &Arc<Digraph>) -> Result<DigraphMap> {
    DigraphMap::constant(Arc::new(Digraph::point(APEX)), codomain.clone(), APEX)
}

fn slice(g: &str, level: usize) -> String {
    label::level(g, level)
}

fn hv(h: &str) -> String {
    label::codomain(h)
}

/// `(G □ I⁻ ⊔ ∗) / ((g,1) ∼ ∗)`.
pub fn cone(g: &Arc<Digraph>) -> ConstructionResult {
    let mut b = Builder::default();
    b.vertex(APEX.to_string());
    for x in g.labels() {
        b.vertex(slice(x, 0));
        b.edge(APEX.to_string(), slice(x, 0));
    }
    for (x, y) in g.edge_labels() {
        b.edge(slice(x, 0), slice(y, 0));
    }
    let digraph = b.finish();
    let maps = BTreeMap::from([
        (EMBED_G.to_string(), by_label(g, &digraph, |x| slice(x, 0)).expect("level-0 slice")),
        (APEX_MAP.to_string(), apex_map(&digraph).expect("apex")),
    ]);
    ConstructionResult { digraph, maps, sections: BTreeMap::new() }
}

/// The sets `image₂(f)` and `E_image(f)` in codomain indices.
struct ImageData {
    twice: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl ImageData {
    fn of(f: &DigraphMap) -> Self {
        let h = f.codomain();
        let twice = f.image_2().iter().map(|l| h.index_of(l).expect("image vertex")).collect();
        let edges = f
            .domain()
            .edges()
            .map(|(x, y)| (f.apply(x), f.apply(y)))
            .filter(|(a, b)| a != b)
            .collect();
        Self { twice, edges }
    }

    /// `V₁′`: targets in `image₂` of image edges leaving `image₂`'s complement.
    fn v1_prime(&self) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter(|(a, b)| !self.twice.contains(a) && self.twice.contains(b))
            .map(|&(_, b)| b)
            .collect()
    }

    /// `V₁″`: sources in `image₂` of image edges entering the complement.
    fn v1_double_prime(&self) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter(|(a, b)| self.twice.contains(a) && !self.twice.contains(b))
            .map(|&(a, _)| a)
            .collect()
    }
}

fn cylinder_builder(f: &DigraphMap) -> Builder {
    let (g, h) = (f.domain(), f.codomain());
    let mut b = Builder::default();
    for y in h.labels() {
        b.vertex(hv(y));
    }
    for (y, z) in h.edge_labels() {
        b.edge(hv(y), hv(z));
    }
    for (x, &fx) in g.labels().iter().zip(f.assignment()) {
        b.vertex(slice(x, 1));
        b.edge(slice(x, 1), hv(h.label(fx)));
    }
    for (x, y) in g.edge_labels() {
        b.edge(slice(x, 1), slice(y, 1));
    }
    b
}

fn cylinder_result(f: &DigraphMap, digraph: Arc<Digraph>) -> ConstructionResult {
    let (g, h) = (f.domain(), f.codomain());
    let retraction_assignment = digraph
        .labels()
        .iter()
        .map(|l| match label::untag(label::CODOMAIN, l) {
            Some(y) => h.index_of(y).expect("codomain vertex"),
            None => {
                let (x, _) = label::split_pair(l).expect("slice vertex");
                f.apply(g.index_of(&x).expect("domain vertex"))
            }
        })
        .collect();
    let maps = BTreeMap::from([
        (EMBED_H.to_string(), by_label(h, &digraph, hv).expect("codomain embedding")),
        (EMBED_G.to_string(), by_label(g, &digraph, |x| slice(x, 1)).expect("level-1 slice")),
        (
            RETRACTION.to_string(),
            DigraphMap::new(digraph.clone(), h.clone(), retraction_assignment).expect("cylinder retraction"),
        ),
    ]);
    ConstructionResult { digraph, maps, sections: BTreeMap::new() }
}

/// `(G □ I⁻ ⊔ H) / ((g,0) ∼ f(g))`.
pub fn mapping_cylinder(f: &DigraphMap) -> ConstructionResult {
    let digraph = cylinder_builder(f).finish();
    cylinder_result(f, digraph)
}

/// `M_f` with the bridging edges `Ė` and `Ë` through `image₂(f)`.
pub fn modified_mapping_cylinder(f: &DigraphMap) -> ConstructionResult {
    let (g, h) = (f.domain(), f.codomain());
    let image = ImageData::of(f);
    let mut b = cylinder_builder(f);
    for (x, &fx) in g.labels().iter().zip(f.assignment()) {
        if image.twice.contains(&fx) {
            continue;
        }
        for &(a, c) in &image.edges {
            if a == fx && image.twice.contains(&c) {
                b.edge(slice(x, 1), hv(h.label(c)));
            }
            if c == fx && image.twice.contains(&a) {
                b.edge(hv(h.label(a)), slice(x, 1));
            }
        }
    }
    let digraph = b.finish();
    cylinder_result(f, digraph)
}

/// Chooses `g_h` for every `h ∈ V₁′ ∪ V₁″`: the least preimage unless overridden.
fn choose_sections(
    f: &DigraphMap,
    targets: &BTreeSet<usize>,
    overrides: Option<&BTreeMap<String, String>>,
) -> Result<BTreeMap<usize, usize>> {
    let (g, h) = (f.domain(), f.codomain());
    let mut sections = BTreeMap::new();
    for &t in targets {
        let least = (0..g.vertex_count()).find(|&x| f.apply(x) == t).expect("image₂ vertices have preimages");
        sections.insert(t, least);
    }
    for (vertex, section) in overrides.into_iter().flatten() {
        let t = h
            .index_of(vertex)
            .filter(|t| targets.contains(t))
            .ok_or_else(|| Error::UnknownVertex(format!("{vertex} (no section is chosen there)")))?;
        let x = g
            .index_of(section)
            .filter(|&x| f.apply(x) == t)
            .ok_or_else(|| Error::InvalidSection { vertex: vertex.clone(), section: section.clone() })?;
        sections.insert(t, x);
    }
    Ok(sections)
}

/// The modified cone `Ĉ_fG`.
///
/// `overrides` replaces the default choice of `g_h` (the least preimage)
/// for selected `h`; each override must be a preimage of its vertex.
pub fn modified_cone(f: &DigraphMap, overrides: Option<&BTreeMap<String, String>>) -> Result<ConstructionResult> {
    let (g, h) = (f.domain(), f.codomain());
    let image = ImageData::of(f);
    let v1p = image.v1_prime();
    let v1pp = image.v1_double_prime();
    let targets: BTreeSet<usize> = v1p.union(&v1pp).copied().collect();
    let sections = choose_sections(f, &targets, overrides)?;

    let mut b = Builder::default();
    b.vertex(APEX.to_string());
    for x in g.labels() {
        b.vertex(slice(x, 0));
        b.edge(APEX.to_string(), slice(x, 0));
        b.edge(slice(x, 0), APEX.to_string());
    }
    for (x, y) in g.edge_labels() {
        b.edge(slice(x, 0), slice(y, 0));
    }
    for &t in &targets {
        b.vertex(hv(h.label(t)));
    }
    for &t in &v1p {
        b.edge(APEX.to_string(), hv(h.label(t)));
    }
    for &t in &v1pp {
        b.edge(hv(h.label(t)), APEX.to_string());
    }
    for (&t, &x) in &sections {
        b.edge(slice(g.label(x), 0), hv(h.label(t)));
    }
    let digraph = b.finish();
    let maps = BTreeMap::from([
        (EMBED_G.to_string(), by_label(g, &digraph, |x| slice(x, 0))?),
        (APEX_MAP.to_string(), apex_map(&digraph)?),
    ]);
    let sections = sections
        .iter()
        .map(|(&t, &x)| (h.label(t).to_string(), g.label(x).to_string()))
        .collect();
    Ok(ConstructionResult { digraph, maps, sections })
}

/// Label in `C(f)` of a vertex of `Ĉ_fG`.
fn cone_vertex_in_mapping_cone(l: &str) -> String {
    match label::split_pair(l) {
        Some((x, _)) => slice(&x, 1),
        None => l.to_string(),
    }
}

/// The modified mapping cone `C(f) = (Ĉ_fG ⊔ M̂_f) / ∼`.
pub fn modified_mapping_cone(f: &DigraphMap, overrides: Option<&BTreeMap<String, String>>) -> Result<ConstructionResult> {
    let (g, h) = (f.domain(), f.codomain());
    let cylinder = modified_mapping_cylinder(f);
    let cone = modified_cone(f, overrides)?;
    let mut b = Builder::default();
    for l in cylinder.digraph.labels() {
        b.vertex(l.clone());
    }
    for (x, y) in cylinder.digraph.edge_labels() {
        b.edge(x.to_string(), y.to_string());
    }
    for l in cone.digraph.labels() {
        b.vertex(cone_vertex_in_mapping_cone(l));
    }
    for (x, y) in cone.digraph.edge_labels() {
        b.edge(cone_vertex_in_mapping_cone(x), cone_vertex_in_mapping_cone(y));
    }
    let digraph = b.finish();
    let maps = BTreeMap::from([
        (EMBED_H.to_string(), by_label(h, &digraph, hv)?),
        (EMBED_G.to_string(), by_label(g, &digraph, |x| slice(x, 1))?),
        (APEX_MAP.to_string(), apex_map(&digraph)?),
        (EMBED_CONE.to_string(), by_label(&cone.digraph, &digraph, cone_vertex_in_mapping_cone)?),
        (EMBED_CYLINDER.to_string(), by_label(&cylinder.digraph, &digraph, str::to_string)?),
    ]);
    Ok(ConstructionResult { digraph, maps, sections: cone.sections })
}

fn check_parallel(f: &DigraphMap, g: &DigraphMap) -> Result<()> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::DomainMismatch);
    }
    Ok(())
}

/// Vertices and edges of the tube shared by both parts of its decomposition.
fn tube_middle(b: &mut Builder, g: &Digraph) {
    for x in g.labels() {
        b.vertex(slice(x, 1));
        b.vertex(slice(x, 2));
    }
    for (x, y) in g.edge_labels() {
        b.edge(slice(x, 1), slice(y, 1));
        b.edge(slice(x, 2), slice(y, 2));
    }
}

/// Codomain and the legs `(x,1) → f(x)`, `(x,2) → g(x)`.
fn tube_legs(b: &mut Builder, f: &DigraphMap, g: &DigraphMap) {
    let (domain, h) = (f.domain(), f.codomain());
    for y in h.labels() {
        b.vertex(hv(y));
    }
    for (y, z) in h.edge_labels() {
        b.edge(hv(y), hv(z));
    }
    for (i, x) in domain.labels().iter().enumerate() {
        b.edge(slice(x, 1), hv(h.label(f.apply(i))));
        b.edge(slice(x, 2), hv(h.label(g.apply(i))));
    }
}

/// `((G □ I₃) ⊔ H) / ((x,0) ∼ f(x), (x,3) ∼ g(x))` with `I₃ = 0 ← 1 → 2 → 3`.
pub fn mapping_tube(f: &DigraphMap, g: &DigraphMap) -> Result<ConstructionResult> {
    check_parallel(f, g)?;
    let (domain, h) = (f.domain(), f.codomain());
    let mut b = Builder::default();
    tube_middle(&mut b, domain);
    tube_legs(&mut b, f, g);
    for x in domain.labels() {
        b.edge(slice(x, 1), slice(x, 2));
    }
    let digraph = b.finish();
    let maps = BTreeMap::from([
        (EMBED_H.to_string(), by_label(h, &digraph, hv)?),
        (EMBED_G.to_string(), by_label(domain, &digraph, |x| slice(x, 1))?),
        (EMBED_G_PRIME.to_string(), by_label(domain, &digraph, |x| slice(x, 2))?),
    ]);
    Ok(ConstructionResult { digraph, maps, sections: BTreeMap::new() })
}

/// `MT_{f,g} = M_{f⊔g} ∪ (G □ I⁺)` inside the tube's labels.
#[derive(Clone, Debug)]
pub struct TubeDecomposition {
    pub tube: ConstructionResult,
    pub cylinder_part: Arc<Digraph>,
    pub product_part: Arc<Digraph>,
    pub intersection: Arc<Digraph>,
    /// `M_{f⊔g} → cylinder_part`, an isomorphism.
    pub cylinder_witness: DigraphMap,
    /// `G □ I⁺ → product_part`, an isomorphism.
    pub product_witness: DigraphMap,
    /// `G ⊔ G` with `f ⊔ g` defined on it.
    pub sum: DisjointUnion,
    pub copair: DigraphMap,
}

pub fn tube_decomposition(f: &DigraphMap, g: &DigraphMap) -> Result<TubeDecomposition> {
    let tube = mapping_tube(f, g)?;
    let domain = f.domain();

    let mut cyl = Builder::default();
    tube_middle(&mut cyl, domain);
    tube_legs(&mut cyl, f, g);
    let cylinder_part = cyl.finish();

    let mut prod = Builder::default();
    tube_middle(&mut prod, domain);
    for x in domain.labels() {
        prod.edge(slice(x, 1), slice(x, 2));
    }
    let product_part = prod.finish();

    let mut mid = Builder::default();
    tube_middle(&mut mid, domain);
    let intersection = mid.finish();

    let sum = domain.disjoint_union(domain);
    let copair = f.copair(g, &sum)?;
    let generic_cylinder = mapping_cylinder(&copair);
    let cylinder_witness = by_label(&generic_cylinder.digraph, &cylinder_part, |l| {
        if label::untag(label::CODOMAIN, l).is_some() {
            return l.to_string();
        }
        let (tagged, _) = label::split_pair(l).expect("slice vertex");
        match label::untag(label::LEFT, &tagged) {
            Some(x) => slice(x, 1),
            None => slice(label::untag(label::RIGHT, &tagged).expect("tagged vertex"), 2),
        }
    })?;
    let line = Arc::new(crate::digraph::LineDigraph::parse("+")?.to_digraph());
    let generic_product = Arc::new(domain.box_product(&line));
    let product_witness = by_label(&generic_product, &product_part, |l| {
        let (x, level) = label::split_pair(l).expect("product vertex");
        slice(&x, if level == "0" { 1 } else { 2 })
    })?;
    Ok(TubeDecomposition {
        tube,
        cylinder_part,
        product_part,
        intersection,
        cylinder_witness,
        product_witness,
        sum,
        copair,
    })
}

/// The S-digraph of `G` and `H` with the data it is built from.
#[derive(Clone, Debug)]
pub struct SDigraph {
    /// `S` with maps `inclusion` (`j: S → C(f)`), `retraction` (`r`) and `apex`.
    pub s: ConstructionResult,
    /// `C(f)` for the canonical map `f: G ⊔ H → G ∪ H`.
    pub mapping_cone: ConstructionResult,
    pub sum: DisjointUnion,
    pub union: Arc<Digraph>,
    pub f: DigraphMap,
}

/// The part of `C(f)` over `G ∩ H` for `f: G ⊔ H → G ∪ H`.
pub fn s_digraph(g: &Arc<Digraph>, h: &Arc<Digraph>) -> Result<SDigraph> {
    let union = Arc::new(g.union(h));
    let common = g.intersection(h);
    let sum = g.disjoint_union(h);
    let f = DigraphMap::inclusion(g.clone(), union.clone())?.copair(&DigraphMap::inclusion(h.clone(), union.clone())?, &sum)?;
    let cone = modified_mapping_cone(&f, None)?;
    let mut keep = vec![APEX.to_string()];
    for x in common.labels() {
        keep.push(hv(x));
        keep.push(slice(&label::tag(label::LEFT, x), 1));
        keep.push(slice(&label::tag(label::RIGHT, x), 1));
    }
    let s = Arc::new(cone.digraph.induced_subdigraph(&keep)?);
    let inclusion = DigraphMap::inclusion(s.clone(), cone.digraph.clone())?;
    let apex = s.index_of(APEX).expect("apex is kept");
    let r = cone.digraph.labels().iter().map(|l| s.index_of(l).unwrap_or(apex)).collect();
    let retraction = DigraphMap::new(cone.digraph.clone(), s.clone(), r)?;
    let maps = BTreeMap::from([
        (INCLUSION.to_string(), inclusion),
        (RETRACTION.to_string(), retraction),
        (APEX_MAP.to_string(), apex_map(&s)?),
    ]);
    Ok(SDigraph {
        s: ConstructionResult { digraph: s, maps, sections: BTreeMap::new() },
        mapping_cone: cone,
        sum,
        union,
        f,
    })
}
