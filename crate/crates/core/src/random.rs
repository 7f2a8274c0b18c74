//! Seeded generators of small random instances.
//!
//! Every generator takes an explicit RNG; [`instance_rng`] derives the RNG
//! for the `index`-th instance of a run, so any instance can be replayed
//! from `(seed, index)` alone.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, DigraphMap, LineDigraph, Orientation};
use crate::homotopy::{for_each_map, step_neighbours, Homotopy};

/// The RNG for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Vertex labels `a`, `b`, … for small digraphs.
pub fn vertex_label(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("v{i}")
    }
}

/// Each ordered pair of distinct labels becomes an edge with probability `p`.
pub fn random_digraph_on<R: Rng>(rng: &mut R, labels: &[String], p: f64) -> Digraph {
    let mut edges = Vec::new();
    for a in labels {
        for b in labels {
            if a != b && rng.gen_bool(p) {
                edges.push((a.as_str(), b.as_str()));
            }
        }
    }
    Digraph::new(labels.iter().map(String::as_str), edges).expect("random digraph")
}

/// A digraph on `n` vertices with edge probability 0.3 or 0.5.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    let p = if rng.gen_bool(0.5) { 0.3 } else { 0.5 };
    let labels: Vec<String> = (0..n).map(vertex_label).collect();
    random_digraph_on(rng, &labels, p)
}

/// A digraph with a vertex count drawn from `min..=max`.
pub fn random_digraph_sized<R: Rng>(rng: &mut R, min: usize, max: usize) -> Digraph {
    let n = rng.gen_range(min..=max);
    random_digraph(rng, n)
}

/// A uniformly random digraph map `g → h`; `None` when there is none.
pub fn random_map<R: Rng>(rng: &mut R, g: &Arc<Digraph>, h: &Arc<Digraph>) -> Option<DigraphMap> {
    let mut all = Vec::new();
    let _ = for_each_map::<()>(g, h, |a| {
        all.push(a.to_vec());
        ControlFlow::Continue(())
    });
    let chosen = all.choose(rng)?.clone();
    Some(DigraphMap::new(g.clone(), h.clone(), chosen).expect("enumerated maps are valid"))
}

type Side = (BTreeSet<String>, Vec<(String, String)>);

/// Subdigraphs `G₁`, `G₂` with `G₁ ∪ G₂ = G`, from a random edge colouring.
///
/// Each edge goes to `G₁`, `G₂` or both; vertices follow their edges, and
/// every vertex is also added to a random side so none is lost.
pub fn random_decomposition<R: Rng>(rng: &mut R, g: &Digraph) -> (Digraph, Digraph) {
    let mut sides: [Side; 2] = Default::default();
    for (a, b) in g.edge_labels() {
        let colour = rng.gen_range(0..5);
        for (side, set) in sides.iter_mut().enumerate() {
            if colour == 4 || colour % 2 == side {
                set.0.insert(a.to_string());
                set.0.insert(b.to_string());
                set.1.push((a.to_string(), b.to_string()));
            }
        }
    }
    for v in g.labels() {
        let covered = sides.iter().any(|s| s.0.contains(v));
        if !covered || rng.gen_bool(0.25) {
            sides[rng.gen_range(0..2)].0.insert(v.clone());
        }
    }
    let [(v1, e1), (v2, e2)] = sides;
    (
        Digraph::new(v1, e1.iter().map(|(a, b)| (a, b))).expect("subdigraph"),
        Digraph::new(v2, e2.iter().map(|(a, b)| (a, b))).expect("subdigraph"),
    )
}

/// Two digraphs on overlapping label sets drawn from a pool of `pool` labels.
///
/// Shared edges are drawn once so that `G ∩ H` is not always edgeless.
pub fn random_overlapping_pair<R: Rng>(rng: &mut R, pool: usize) -> (Digraph, Digraph) {
    let labels: Vec<String> = (0..pool).map(vertex_label).collect();
    loop {
        let in_g: Vec<bool> = labels.iter().map(|_| rng.gen_bool(0.7)).collect();
        let in_h: Vec<bool> = labels.iter().map(|_| rng.gen_bool(0.7)).collect();
        if !in_g.iter().zip(&in_h).any(|(a, b)| *a && *b) {
            continue;
        }
        let mut ge = Vec::new();
        let mut he = Vec::new();
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                if i == j || !rng.gen_bool(0.35) {
                    continue;
                }
                let (g_ok, h_ok) = (in_g[i] && in_g[j], in_h[i] && in_h[j]);
                match (g_ok, h_ok) {
                    (true, true) => match rng.gen_range(0..3) {
                        0 => ge.push((a, b)),
                        1 => he.push((a, b)),
                        _ => {
                            ge.push((a, b));
                            he.push((a, b));
                        }
                    },
                    (true, false) => ge.push((a, b)),
                    (false, true) => he.push((a, b)),
                    (false, false) => {}
                }
            }
        }
        let pick = |mask: &[bool]| labels.iter().zip(mask).filter(|(_, &m)| m).map(|(l, _)| l.clone()).collect::<Vec<_>>();
        let g = Digraph::new(pick(&in_g), ge.iter().map(|(a, b)| (a.as_str(), b.as_str()))).expect("random digraph");
        let h = Digraph::new(pick(&in_h), he.iter().map(|(a, b)| (a.as_str(), b.as_str()))).expect("random digraph");
        return (g, h);
    }
}

/// A random walk of `steps` one-step moves from `f`, as a homotopy.
///
/// Each step picks an orientation and a neighbour different from the
/// current map when one exists.
pub fn random_walk<R: Rng>(rng: &mut R, f: &DigraphMap, steps: usize) -> Homotopy {
    let mut frames = vec![f.clone()];
    let mut word = Vec::with_capacity(steps);
    for _ in 0..steps {
        let orientation = if rng.gen_bool(0.5) { Orientation::Forward } else { Orientation::Backward };
        let current = frames.last().expect("frames");
        let moves: Vec<DigraphMap> = step_neighbours(current, orientation).into_iter().filter(|m| m != current).collect();
        let next = moves.choose(rng).cloned().unwrap_or_else(|| current.clone());
        frames.push(next);
        word.push(orientation);
    }
    Homotopy::new(f.domain().clone(), f.codomain().clone(), LineDigraph::new(word), frames).expect("walk frames")
}
