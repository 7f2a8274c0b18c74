mod common;

use std::sync::Arc;

use dihomotopy::abelian::{smith_normal_form, IntMatrix};
use dihomotopy::brown::{BrownChecks, MvInstance};
use dihomotopy::constructions::{cone, mapping_cylinder, modified_mapping_cone, EMBED_H, RETRACTION};
use dihomotopy::homotopy::{is_contractible, HomotopyStatus, DEFAULT_BUDGET};
use dihomotopy::io::{digraph_json, parse_digraph_json, parse_dot, to_dot};
use dihomotopy::path_homology::{cohomology, homology, induced_maps};
use dihomotopy::random::{instance_rng, random_decomposition, random_map, random_walk};
use dihomotopy::{Digraph, DigraphMap, LineDigraph};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;

fn arb_digraph(max: usize) -> impl Strategy<Value = Arc<Digraph>> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(&str, &str)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && bits[i * n + j])
                .map(|(i, j)| (labels[i].as_str(), labels[j].as_str()))
                .collect();
            Arc::new(Digraph::new(labels.iter().map(String::as_str), edges).unwrap())
        })
    })
}

fn arb_map(max_g: usize, max_h: usize) -> impl Strategy<Value = DigraphMap> {
    (arb_digraph(max_g), arb_digraph(max_h), any::<u64>())
        .prop_map(|(g, h, seed)| random_map(&mut instance_rng(seed, 0), &g, &h).expect("constant maps always exist"))
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-12i64..=12, c), r))
}

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_equivalent(rows in arb_matrix()) {
        let b = big(&rows);
        let a = IntMatrix::from_rows(rows[0].len(), b.clone()).unwrap();
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&snf.u * &a) * &snf.v, snf.s.clone());
        prop_assert_eq!(snf.rank, rank(&b));
    }

    #[test]
    fn betti_numbers_match_rational_oracle(g in arb_digraph(5)) {
        let oracle = rational_betti(&g, 2);
        let h = homology(g.clone(), 2).unwrap();
        let c = cohomology(g.clone(), 2).unwrap();
        for (p, &b) in oracle.iter().enumerate() {
            prop_assert_eq!(h.group(p).rank(), b);
            prop_assert_eq!(c.group(p).rank(), b);
        }
        prop_assert!(c.group(1).torsion().is_empty());
    }

    #[test]
    fn box_product_counts(g in arb_digraph(4), h in arb_digraph(4)) {
        let p = g.box_product(&h);
        prop_assert_eq!(p.vertex_count(), g.vertex_count() * h.vertex_count());
        prop_assert_eq!(p.edge_count(), g.edge_count() * h.vertex_count() + h.edge_count() * g.vertex_count());
    }

    #[test]
    fn disjoint_union_injections_cover(g in arb_digraph(4), h in arb_digraph(4)) {
        let sum = g.disjoint_union(&h);
        let mut hit = vec![false; sum.digraph.vertex_count()];
        for m in [&sum.left, &sum.right] {
            prop_assert!(m.is_injective());
            for &v in m.assignment() {
                hit[v] = true;
            }
        }
        prop_assert!(hit.into_iter().all(|x| x));
        prop_assert_eq!(sum.digraph.edge_count(), g.edge_count() + h.edge_count());
    }

    #[test]
    fn serialisations_round_trip(g in arb_digraph(6)) {
        prop_assert_eq!(&parse_digraph_json(&digraph_json(&g)).unwrap(), &*g);
        prop_assert_eq!(&parse_dot(&to_dot(&g)).unwrap(), &*g);
    }

    #[test]
    fn walks_reverse_and_concatenate(f in arb_map(3, 4), seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 0);
        let walk = random_walk(&mut rng, &f, 3);
        prop_assert!(walk.verify());
        let back = walk.reverse();
        prop_assert!(back.verify());
        let round = walk.concat(&back).unwrap();
        prop_assert!(round.verify());
        prop_assert_eq!(round.start(), round.end());
        prop_assert!(walk.assemble().is_ok());
    }

    #[test]
    fn homotopic_maps_induce_equal_maps(f in arb_map(3, 4), seed in any::<u64>()) {
        let walk = random_walk(&mut instance_rng(seed, 1), &f, 2);
        prop_assert_eq!(induced_maps(walk.start(), 1).unwrap(), induced_maps(walk.end(), 1).unwrap());
    }

    #[test]
    fn induced_maps_are_functorial(f in arb_map(3, 3), seed in any::<u64>()) {
        let k = Arc::new(Digraph::new(["x", "y", "z"], [("x", "y"), ("y", "z")]).unwrap());
        let g = random_map(&mut instance_rng(seed, 2), f.codomain(), &k).unwrap();
        let gf = f.then(&g).unwrap();
        let (fs, gs, gfs) = (induced_maps(&f, 1).unwrap(), induced_maps(&g, 1).unwrap(), induced_maps(&gf, 1).unwrap());
        for p in 0..=1 {
            prop_assert_eq!(gs[p].then(&fs[p]).unwrap(), gfs[p].clone());
        }
        let id = DigraphMap::identity(f.domain().clone());
        for (p, m) in induced_maps(&id, 1).unwrap().iter().enumerate() {
            prop_assert!(m.is_isomorphism(), "identity not an isomorphism in degree {}", p);
        }
    }

    #[test]
    fn cones_are_contractible(g in arb_digraph(3)) {
        let c = cone(&g);
        let verdict = is_contractible(&c.digraph, DEFAULT_BUDGET).unwrap();
        prop_assert!(verdict.is_homotopic());
        prop_assert!(cohomology(c.digraph.clone(), 1).unwrap().group(1).is_trivial());
    }

    #[test]
    fn cylinder_retraction_is_a_map(f in arb_map(4, 4)) {
        let cyl = mapping_cylinder(&f);
        let back = cyl.map(EMBED_H).then(cyl.map(RETRACTION)).unwrap();
        prop_assert_eq!(back, DigraphMap::identity(f.codomain().clone()));
    }

    #[test]
    fn mapping_cone_builds_for_any_map(f in arb_map(4, 4)) {
        let c = modified_mapping_cone(&f, None).unwrap();
        prop_assert!(f.then(c.map(EMBED_H)).is_ok());
        prop_assert!(c.digraph.vertex_count() <= f.domain().vertex_count() + f.codomain().vertex_count() + 1);
    }

    #[test]
    fn cochain_lemmas_hold(g in arb_digraph(5), seed in any::<u64>()) {
        let (g1, g2) = random_decomposition(&mut instance_rng(seed, 3), &g);
        let inst = MvInstance::new(g, Arc::new(g1), Arc::new(g2)).unwrap();
        prop_assert!(BrownChecks::default().cochain_lemmas(&inst).unwrap().passed);
    }

    #[test]
    fn disjoint_mv_matches_additivity(g in arb_digraph(3), h in arb_digraph(3)) {
        let h = Arc::new(h.relabel(|l| format!("w{l}")).unwrap());
        let union = Arc::new(g.union(&h));
        let checks = BrownChecks::default();
        let mv = checks.mv_surjectivity(&MvInstance::new(union, g.clone(), h.clone()).unwrap()).unwrap();
        let add = checks.additivity(&g, &h).unwrap();
        prop_assert!(mv.passed);
        prop_assert_eq!(mv.passed, add.passed);
    }

    #[test]
    fn engine_agrees_with_exhaustive_components(f in arb_map(3, 3), k_seed in any::<u64>()) {
        let k = random_map(&mut instance_rng(k_seed, 4), f.domain(), f.codomain()).unwrap();
        let (maps, roots) = homotopy_components(f.domain(), f.codomain());
        let idx = |m: &DigraphMap| maps.iter().position(|a| a.as_slice() == m.assignment()).unwrap();
        let same = roots[idx(&f)] == roots[idx(&k)];
        let verdict = dihomotopy::homotopy::decide_homotopic(&f, &k, DEFAULT_BUDGET).unwrap();
        match verdict.status {
            HomotopyStatus::Homotopic(h) => {
                prop_assert!(same && h.verify());
                prop_assert_eq!(h.start(), &f);
                prop_assert_eq!(h.end(), &k);
            }
            HomotopyStatus::NotHomotopic => prop_assert!(!same),
            HomotopyStatus::BudgetExceeded => prop_assert!(false, "budget exceeded on a tiny instance"),
        }
    }
}

#[test]
fn line_digraph_words_round_trip() {
    for word in ["", "+", "-", "+-", "-++", "--+-"] {
        let line = LineDigraph::parse(word).unwrap();
        assert_eq!(line.to_string(), word);
        assert_eq!(line.to_digraph().vertex_count(), word.len() + 1);
        assert_eq!(line.to_digraph().edge_count(), word.len());
    }
    assert!(LineDigraph::parse("+x").is_err());
}
