//! Mechanical checks of the Brown-functor properties of path cohomology on
//! finite instances, with seeded random suites.
//!
//! All checks run in degree one by default. [`BrownChecks::degree`] can be
//! raised to gather evidence in higher degrees, where the Mayer-Vietoris
//! property is not known to hold; such runs are experimental.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::abelian::{fiber_product, integer_kernel, GroupHom, IntMatrix, Lattice, Subgroup};
use crate::constructions::{mapping_tube, modified_mapping_cone, s_digraph, EMBED_G, EMBED_H};
use crate::digraph::{Digraph, DigraphMap};
use crate::error::{Error, Result};
use crate::io::{DigraphDoc, MapDoc};
use crate::path_homology::{
    cohomology_with_cap, induced_cochain_map, pushforward, CohomologyResult, GroupRecord, PathComplex,
    DEFAULT_PATH_CAP,
};
use crate::random::{
    instance_rng, random_decomposition, random_digraph_sized, random_map, random_overlapping_pair,
};

/// Outcome of one check on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    /// SHA-256 of the canonical JSON of the instance.
    pub digest: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    pub instance: Value,
    pub witness: Value,
}

impl CheckReport {
    fn new(check: &str, instance: Value, passed: bool, witness: Value) -> Self {
        let digest = Sha256::digest(instance.to_string().as_bytes());
        Self {
            check: check.to_string(),
            digest: digest.iter().map(|b| format!("{b:02x}")).collect(),
            passed,
            seed: None,
            index: None,
            instance,
            witness,
        }
    }

    fn seeded(mut self, seed: u64, index: u64) -> Self {
        self.seed = Some(seed);
        self.index = Some(index);
        self
    }
}

fn doc(g: &Digraph) -> Value {
    serde_json::to_value(DigraphDoc::from(g)).expect("digraph documents serialize")
}

fn map_doc(f: &DigraphMap) -> Value {
    serde_json::to_value(MapDoc::from(f)).expect("map documents serialize")
}

fn record(c: &CohomologyResult, p: usize) -> GroupRecord {
    c.records().swap_remove(p)
}

fn vectors(m: &IntMatrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

/// `G = G₁ ∪ G₂` with the inclusions `iₖ: Gₖ → G` and `jₖ: G₁ ∩ G₂ → Gₖ`.
#[derive(Clone, Debug)]
pub struct MvInstance {
    pub g: Arc<Digraph>,
    pub g1: Arc<Digraph>,
    pub g2: Arc<Digraph>,
    pub g12: Arc<Digraph>,
    pub i1: DigraphMap,
    pub i2: DigraphMap,
    pub j1: DigraphMap,
    pub j2: DigraphMap,
}

impl MvInstance {
    /// Fails unless `G₁` and `G₂` are subdigraphs whose union is exactly `G`.
    pub fn new(g: Arc<Digraph>, g1: Arc<Digraph>, g2: Arc<Digraph>) -> Result<Self> {
        if g1.union(&g2) != *g {
            return Err(Error::BadPartition("the two pieces do not cover the digraph exactly".into()));
        }
        let g12 = Arc::new(g1.intersection(&g2));
        Ok(Self {
            i1: DigraphMap::inclusion(g1.clone(), g.clone())?,
            i2: DigraphMap::inclusion(g2.clone(), g.clone())?,
            j1: DigraphMap::inclusion(g12.clone(), g1.clone())?,
            j2: DigraphMap::inclusion(g12.clone(), g2.clone())?,
            g,
            g1,
            g2,
            g12,
        })
    }

    fn describe(&self) -> Value {
        json!({ "g": doc(&self.g), "g1": doc(&self.g1), "g2": doc(&self.g2) })
    }
}

/// Check configuration: the cohomological degree and the path cap.
#[derive(Clone, Copy, Debug)]
pub struct BrownChecks {
    pub degree: usize,
    pub cap: usize,
}

impl Default for BrownChecks {
    fn default() -> Self {
        Self { degree: 1, cap: DEFAULT_PATH_CAP }
    }
}

impl BrownChecks {
    pub fn at_degree(degree: usize) -> Self {
        Self { degree, ..Self::default() }
    }

    fn cohomology(&self, g: &Arc<Digraph>) -> Result<CohomologyResult> {
        cohomology_with_cap(g.clone(), self.degree, self.cap)
    }

    /// `f^*` in the configured degree.
    fn pullback(&self, f: &DigraphMap, codomain: &CohomologyResult, domain: &CohomologyResult) -> Result<GroupHom> {
        Ok(induced_cochain_map(f, codomain, domain)?.swap_remove(self.degree))
    }

    /// `H(∗) = 0`.
    pub fn triviality(&self) -> Result<CheckReport> {
        let point = Arc::new(Digraph::point("*"));
        let c = self.cohomology(&point)?;
        let passed = c.group(self.degree).is_trivial();
        Ok(CheckReport::new("triviality", json!({ "g": doc(&point), "degree": self.degree }), passed, json!({ "group": record(&c, self.degree) })))
    }

    /// The injections induce `H(G ⊔ H) ≅ H(G) × H(H)`.
    pub fn additivity(&self, g: &Arc<Digraph>, h: &Arc<Digraph>) -> Result<CheckReport> {
        let sum = g.disjoint_union(h);
        let cs = self.cohomology(&sum.digraph)?;
        let (cg, ch) = (self.cohomology(g)?, self.cohomology(h)?);
        let theta = self.pullback(&sum.left, &cs, &cg)?.pair(&self.pullback(&sum.right, &cs, &ch)?)?;
        let passed = theta.is_isomorphism();
        let witness = json!({
            "sum": record(&cs, self.degree),
            "left": record(&cg, self.degree),
            "right": record(&ch, self.degree),
            "injective": theta.is_injective(),
            "surjective": theta.is_surjective(),
            "matrix": vectors(theta.matrix()),
        });
        Ok(CheckReport::new("additivity", json!({ "g": doc(g), "h": doc(h), "degree": self.degree }), passed, witness))
    }

    /// `H(G) → H(G₁) ×_{H(G₁∩G₂)} H(G₂)` is onto, tested as equality of
    /// its image with the fiber product inside `H(G₁) ⊕ H(G₂)`.
    pub fn mv_surjectivity(&self, inst: &MvInstance) -> Result<CheckReport> {
        let c = self.cohomology(&inst.g)?;
        let (c1, c2, c12) = (self.cohomology(&inst.g1)?, self.cohomology(&inst.g2)?, self.cohomology(&inst.g12)?);
        let theta = self.pullback(&inst.i1, &c, &c1)?.pair(&self.pullback(&inst.i2, &c, &c2)?)?;
        let phi = self.pullback(&inst.j1, &c1, &c12)?;
        let psi = self.pullback(&inst.j2, &c2, &c12)?;
        let fp = fiber_product(&phi, &psi)?;
        let image = theta.image();
        let lands = fp.subgroup.contains_subgroup(&image);
        let passed = lands && image == fp.subgroup;
        let mut witness = json!({
            "g": record(&c, self.degree),
            "g1": record(&c1, self.degree),
            "g2": record(&c2, self.degree),
            "g12": record(&c12, self.degree),
            "fiber_product": { "rank": fp.group.rank(), "torsion": fp.group.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>() },
            "image_in_fiber_product": lands,
        });
        if !passed {
            witness["image_basis"] = vectors(image.lattice().basis());
            witness["fiber_product_basis"] = vectors(fp.subgroup.lattice().basis());
        }
        Ok(CheckReport::new("mv", inst.describe(), passed, witness))
    }

    /// Exactness of `Ω¹(G) → Ω¹(G₁) ⊕ Ω¹(G₂) → Ω¹(G₁∩G₂)` in the middle and
    /// surjectivity of `Ω⁰(G₁) ⊕ Ω⁰(G₂) → Ω⁰(G₁∩G₂)`, on cochains.
    pub fn cochain_lemmas(&self, inst: &MvInstance) -> Result<CheckReport> {
        let complex = |g: &Arc<Digraph>| PathComplex::new(g.clone(), 1, self.cap).map(Arc::new);
        let (c, c1, c2, c12) = (complex(&inst.g)?, complex(&inst.g1)?, complex(&inst.g2)?, complex(&inst.g12)?);
        // Restriction of cochains is the transpose of the pushforward of chains.
        let restrict = |f: &DigraphMap, src: &PathComplex, tgt: &PathComplex, p: usize| {
            pushforward(f, src, tgt, p).map(|m| m.transpose())
        };
        let mut results = BTreeMap::new();
        for p in 0..=1 {
            let i = restrict(&inst.i1, &c1, &c, p)?.vstack(&restrict(&inst.i2, &c2, &c, p)?)?;
            let j = restrict(&inst.j1, &c12, &c1, p)?.hstack(&restrict(&inst.j2, &c12, &c2, p)?.negate())?;
            let composite_zero = (&j * &i).is_zero();
            let kernel = Lattice::from_generators(&integer_kernel(&j));
            let image = Lattice::from_generators(&i.transpose());
            let onto = Lattice::from_generators(&j.transpose()) == Lattice::full(j.rows());
            results.insert(p, (composite_zero, kernel == image, onto));
        }
        let (zero1, exact1, _) = results[&1];
        let (_, _, onto0) = results[&0];
        let passed = zero1 && exact1 && onto0;
        let witness = json!({
            "degree_one": { "composite_zero": zero1, "exact": exact1 },
            "degree_zero": { "surjective": onto0 },
        });
        Ok(CheckReport::new("cochain-lemmas", inst.describe(), passed, witness))
    }

    /// Exactness of `H(C(f)) → H(H) → H(G)` at `H(H)`.
    pub fn cone_exactness(&self, f: &DigraphMap) -> Result<CheckReport> {
        let (witness, passed) = self.cone_exactness_witness(f)?;
        Ok(CheckReport::new("cone", json!({ "f": map_doc(f), "degree": self.degree }), passed, witness))
    }

    fn cone_exactness_witness(&self, f: &DigraphMap) -> Result<(Value, bool)> {
        let cone = modified_mapping_cone(f, None)?;
        let i = cone.map(EMBED_H);
        let (cc, ch, cg) = (self.cohomology(&cone.digraph)?, self.cohomology(f.codomain())?, self.cohomology(f.domain())?);
        let i_star = self.pullback(i, &cc, &ch)?;
        let f_star = self.pullback(f, &ch, &cg)?;
        let composite_zero = i_star.then(&f_star)?.is_zero();
        let mut witness = json!({
            "cone": { "vertices": cone.digraph.vertex_count(), "edges": cone.digraph.edge_count(), "group": record(&cc, self.degree) },
            "codomain": record(&ch, self.degree),
            "domain": record(&cg, self.degree),
            "composite_zero": composite_zero,
        });
        if !composite_zero {
            return Ok((witness, false));
        }
        let image: Subgroup = i_star.image();
        let kernel: Subgroup = f_star.kernel();
        let passed = image == kernel;
        witness["exact"] = json!(passed);
        if !passed {
            witness["image_basis"] = vectors(image.lattice().basis());
            witness["kernel_basis"] = vectors(kernel.lattice().basis());
        }
        Ok((witness, passed))
    }

    /// The sequence `H(C(g)) → H(C(f)) → H(G ∪ H) → H(G ⊔ H)` for the
    /// canonical `f: G ⊔ H → G ∪ H` and `g: G ∪ H → C(f)`, exact at both
    /// middle terms.
    pub fn four_term(&self, g: &Arc<Digraph>, h: &Arc<Digraph>) -> Result<CheckReport> {
        let s = s_digraph(g, h)?;
        let into_cone = s.mapping_cone.map(EMBED_H).clone();
        let (first, first_ok) = self.cone_exactness_witness(&s.f)?;
        let (second, second_ok) = self.cone_exactness_witness(&into_cone)?;
        let witness = json!({ "at_union": first, "at_mapping_cone": second });
        Ok(CheckReport::new("four-term", json!({ "g": doc(g), "h": doc(h), "degree": self.degree }), first_ok && second_ok, witness))
    }

    /// `H(MT_{f,g}) → H(G) ×_{H(G)⊕H(G)} H(H)`, `x ↦ (j^*x, i^*x)`, is onto,
    /// with the diagonal and `(f^*, g^*)` as structure maps.
    pub fn tube_surjectivity(&self, f: &DigraphMap, g: &DigraphMap) -> Result<CheckReport> {
        let tube = mapping_tube(f, g)?;
        let (ct, cg, ch) = (self.cohomology(&tube.digraph)?, self.cohomology(f.domain())?, self.cohomology(f.codomain())?);
        let j_star = self.pullback(tube.map(EMBED_G), &ct, &cg)?;
        let i_star = self.pullback(tube.map(EMBED_H), &ct, &ch)?;
        let identity = GroupHom::identity(cg.group(self.degree));
        let diagonal = identity.pair(&identity)?;
        let fg = self.pullback(f, &ch, &cg)?.pair(&self.pullback(g, &ch, &cg)?)?;
        let fp = fiber_product(&diagonal, &fg)?;
        let theta = j_star.pair(&i_star)?;
        let image = theta.image();
        let lands = fp.subgroup.contains_subgroup(&image);
        let passed = lands && image == fp.subgroup;
        let mut witness = json!({
            "tube": record(&ct, self.degree),
            "domain": record(&cg, self.degree),
            "codomain": record(&ch, self.degree),
            "image_in_fiber_product": lands,
        });
        if !passed {
            witness["image_basis"] = vectors(image.lattice().basis());
            witness["fiber_product_basis"] = vectors(fp.subgroup.lattice().basis());
        }
        Ok(CheckReport::new("tube", json!({ "f": map_doc(f), "g": map_doc(g), "degree": self.degree }), passed, witness))
    }
}

pub fn check_triviality() -> Result<CheckReport> {
    BrownChecks::default().triviality()
}

pub fn check_additivity(g: &Arc<Digraph>, h: &Arc<Digraph>) -> Result<CheckReport> {
    BrownChecks::default().additivity(g, h)
}

pub fn check_mv_surjectivity(inst: &MvInstance) -> Result<CheckReport> {
    BrownChecks::default().mv_surjectivity(inst)
}

pub fn check_cochain_lemmas(inst: &MvInstance) -> Result<CheckReport> {
    BrownChecks::default().cochain_lemmas(inst)
}

pub fn check_cone_exactness(f: &DigraphMap) -> Result<CheckReport> {
    BrownChecks::default().cone_exactness(f)
}

pub fn check_four_term(g: &Arc<Digraph>, h: &Arc<Digraph>) -> Result<CheckReport> {
    BrownChecks::default().four_term(g, h)
}

pub fn check_tube_surjectivity(f: &DigraphMap, g: &DigraphMap) -> Result<CheckReport> {
    BrownChecks::default().tube_surjectivity(f, g)
}

/// The randomized suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Triviality,
    Additivity,
    Mv,
    CochainLemmas,
    Cone,
    FourTerm,
    Tube,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Triviality, Suite::Additivity, Suite::Mv, Suite::CochainLemmas, Suite::Cone, Suite::FourTerm, Suite::Tube];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Triviality => "triviality",
            Suite::Additivity => "additivity",
            Suite::Mv => "mv",
            Suite::CochainLemmas => "cochain-lemmas",
            Suite::Cone => "cone",
            Suite::FourTerm => "four-term",
            Suite::Tube => "tube",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Largest instance size each suite uses by default.
    pub fn default_size(self) -> usize {
        match self {
            Suite::Triviality => 1,
            Suite::Additivity | Suite::Mv | Suite::CochainLemmas => 6,
            Suite::Cone | Suite::Tube => 5,
            Suite::FourTerm => 4,
        }
    }

    /// Stream offset keeping the suites' instances independent under one seed.
    fn stream(self) -> u64 {
        (self as u64) << 32
    }
}

/// Runs instance `index` of `suite` with instance size at most `size`.
pub fn run_instance(checks: &BrownChecks, suite: Suite, seed: u64, index: u64, size: usize) -> CheckReport {
    let mut rng = instance_rng(seed, suite.stream() + index);
    let size = size.max(1);
    let small = |rng: &mut rand_chacha::ChaCha8Rng| Arc::new(random_digraph_sized(rng, 1, size.clamp(1, 4)));
    let outcome = match suite {
        Suite::Triviality => checks.triviality(),
        Suite::Additivity => {
            let g = Arc::new(random_digraph_sized(&mut rng, 1, size.min(4)));
            let h = Arc::new(random_digraph_sized(&mut rng, 1, size.min(4)));
            checks.additivity(&g, &h)
        }
        Suite::Mv | Suite::CochainLemmas => {
            let g = random_digraph_sized(&mut rng, 3.min(size), size);
            let (g1, g2) = random_decomposition(&mut rng, &g);
            MvInstance::new(Arc::new(g), Arc::new(g1), Arc::new(g2)).and_then(|inst| match suite {
                Suite::Mv => checks.mv_surjectivity(&inst),
                _ => checks.cochain_lemmas(&inst),
            })
        }
        Suite::Cone => {
            let g = Arc::new(random_digraph_sized(&mut rng, 1, size));
            let h = Arc::new(random_digraph_sized(&mut rng, 1, size));
            let f = random_map(&mut rng, &g, &h).expect("nonempty codomain");
            checks.cone_exactness(&f)
        }
        Suite::FourTerm => {
            let (g, h) = random_overlapping_pair(&mut rng, size);
            checks.four_term(&Arc::new(g), &Arc::new(h))
        }
        Suite::Tube => {
            let g = small(&mut rng);
            let h = Arc::new(random_digraph_sized(&mut rng, 1, size));
            let f = random_map(&mut rng, &g, &h).expect("nonempty codomain");
            let k = random_map(&mut rng, &g, &h).expect("nonempty codomain");
            checks.tube_surjectivity(&f, &k)
        }
    };
    outcome
        .unwrap_or_else(|e| {
            CheckReport::new(suite.name(), json!({ "seed": seed, "index": index }), false, json!({ "error": e.to_string() }))
        })
        .seeded(seed, index)
}

/// Runs `count` instances in parallel; reports come back in index order.
pub fn run_suite(checks: &BrownChecks, suite: Suite, seed: u64, count: u64, size: usize) -> Vec<CheckReport> {
    (0..count).into_par_iter().map(|i| run_instance(checks, suite, seed, i, size)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digraph(vertices: &[&str], edges: &[(&str, &str)]) -> Arc<Digraph> {
        Arc::new(Digraph::new(vertices.iter().copied(), edges.iter().copied()).unwrap())
    }

    fn four_cycle() -> Arc<Digraph> {
        digraph(&["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")])
    }

    #[test]
    fn triviality_and_additivity() {
        assert!(check_triviality().unwrap().passed);
        let tri = digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let r = check_additivity(&four_cycle(), &tri).unwrap();
        assert!(r.passed);
        assert_eq!(r.witness["sum"]["rank"], 1);
        assert!(check_additivity(&four_cycle(), &Arc::new(Digraph::empty())).unwrap().passed);
        let point = Arc::new(Digraph::point("p"));
        assert!(check_additivity(&point, &point).unwrap().passed);
    }

    #[test]
    fn four_cycle_halves() {
        let c4 = four_cycle();
        let g1 = digraph(&["0", "1", "2"], &[("0", "1"), ("1", "2")]);
        let g2 = digraph(&["2", "3", "0"], &[("2", "3"), ("3", "0")]);
        let inst = MvInstance::new(c4.clone(), g1, g2).unwrap();
        let r = check_mv_surjectivity(&inst).unwrap();
        assert!(r.passed, "{}", r.witness);
        assert_eq!(r.digest.len(), 64);
        assert!(check_cochain_lemmas(&inst).unwrap().passed);
        let whole = MvInstance::new(c4.clone(), c4.clone(), Arc::new(Digraph::empty())).unwrap();
        assert!(check_mv_surjectivity(&whole).unwrap().passed);
        let same = MvInstance::new(c4.clone(), c4.clone(), c4.clone()).unwrap();
        assert!(check_cochain_lemmas(&same).unwrap().passed);
        let missing = MvInstance::new(c4, digraph(&["0"], &[]), digraph(&["1"], &[]));
        assert!(matches!(missing, Err(Error::BadPartition(_))));
    }

    #[test]
    fn cone_four_term_and_tube_on_figures() {
        let g = digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let h = four_cycle();
        let f = DigraphMap::from_pairs(g.clone(), h.clone(), &[("a", "0"), ("b", "1"), ("c", "1")]).unwrap();
        let k = DigraphMap::from_pairs(g.clone(), h.clone(), &[("a", "1"), ("b", "2"), ("c", "2")]).unwrap();
        let cone = check_cone_exactness(&f).unwrap();
        assert!(cone.passed, "{}", cone.witness);
        assert_eq!(cone.witness["composite_zero"], true);
        assert!(check_cone_exactness(&DigraphMap::identity(h.clone())).unwrap().passed);
        assert!(check_tube_surjectivity(&f, &k).unwrap().passed);
        assert!(check_tube_surjectivity(&f, &f).unwrap().passed);
        let other = digraph(&["b", "c", "d"], &[("b", "c"), ("c", "d")]);
        let four = check_four_term(&g, &other).unwrap();
        assert!(four.passed, "{}", four.witness);
        assert!(check_four_term(&g, &Arc::new(Digraph::empty())).unwrap().passed);
    }

    #[test]
    fn suites_replay() {
        let checks = BrownChecks::default();
        for suite in Suite::ALL {
            let a = run_suite(&checks, suite, 11, 3, suite.default_size().min(4));
            let b = run_suite(&checks, suite, 11, 3, suite.default_size().min(4));
            assert!(a.iter().all(|r| r.passed), "{suite:?}: {:?}", a.iter().find(|r| !r.passed));
            let digests = |rs: &[CheckReport]| rs.iter().map(|r| r.digest.clone()).collect::<Vec<_>>();
            assert_eq!(digests(&a), digests(&b));
        }
    }
}
