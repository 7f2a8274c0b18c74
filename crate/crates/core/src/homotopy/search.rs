use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::{step_holds, Homotopy};
use crate::digraph::{Digraph, DigraphMap, LineDigraph, Orientation};
use crate::error::{Error, Result};

/// Default cap on the number of maps a search may visit.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub enum HomotopyStatus {
    Homotopic(Homotopy),
    /// The whole homotopy class of the source was exhausted.
    NotHomotopic,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct HomotopyVerdict {
    pub status: HomotopyStatus,
    /// Maps visited.
    pub explored: usize,
}

impl HomotopyVerdict {
    pub fn is_homotopic(&self) -> bool {
        matches!(self.status, HomotopyStatus::Homotopic(_))
    }

    pub fn certificate(&self) -> Option<&Homotopy> {
        match &self.status {
            HomotopyStatus::Homotopic(h) => Some(h),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.status {
            HomotopyStatus::Homotopic(_) => "homotopic",
            HomotopyStatus::NotHomotopic => "not_homotopic",
            HomotopyStatus::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// For each vertex, the neighbours that precede it in index order, with
/// `true` when the edge points from the neighbour to the vertex.
fn earlier_neighbours(g: &Digraph) -> Vec<Vec<(usize, bool)>> {
    (0..g.vertex_count())
        .map(|x| {
            let incoming = g.predecessors(x).iter().filter(|&&y| y < x).map(|&y| (y, true));
            let outgoing = g.successors(x).iter().filter(|&&y| y < x).map(|&y| (y, false));
            incoming.chain(outgoing).collect()
        })
        .collect()
}

fn compatible(h: &Digraph, partial: &[usize], constraints: &[(usize, bool)], value: usize) -> bool {
    constraints.iter().all(|&(y, into)| {
        let other = partial[y];
        other == value || if into { h.has_edge(other, value) } else { h.has_edge(value, other) }
    })
}

/// Calls `visit` on every digraph map `g → h`, as an index assignment,
/// until it breaks.
pub fn for_each_map<B>(g: &Digraph, h: &Digraph, mut visit: impl FnMut(&[usize]) -> ControlFlow<B>) -> ControlFlow<B> {
    let constraints = earlier_neighbours(g);
    let choices: Vec<usize> = (0..h.vertex_count()).collect();
    let mut partial = vec![0; g.vertex_count()];
    assign(h, &constraints, &|_| &choices[..], &mut partial, 0, &mut visit)
}

fn assign<'a, B>(
    h: &Digraph,
    constraints: &[Vec<(usize, bool)>],
    choices: &dyn Fn(usize) -> &'a [usize],
    partial: &mut Vec<usize>,
    x: usize,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if x == partial.len() {
        return visit(partial);
    }
    for &value in choices(x) {
        if compatible(h, partial, &constraints[x], value) {
            partial[x] = value;
            assign(h, constraints, choices, partial, x + 1, visit)?;
        }
    }
    ControlFlow::Continue(())
}

/// Every map one step away from `f` in direction `orientation`.
fn neighbours(
    h: &Digraph,
    constraints: &[Vec<(usize, bool)>],
    f: &[usize],
    orientation: Orientation,
    mut visit: impl FnMut(&[usize]),
) {
    let options: Vec<Vec<usize>> = f
        .iter()
        .map(|&a| {
            let moves = match orientation {
                Orientation::Forward => h.successors(a),
                Orientation::Backward => h.predecessors(a),
            };
            std::iter::once(a).chain(moves.iter().copied()).collect()
        })
        .collect();
    let mut partial = vec![0; f.len()];
    let _ = assign::<()>(h, constraints, &|x| &options[x][..], &mut partial, 0, &mut |a| {
        visit(a);
        ControlFlow::Continue(())
    });
}

/// All maps `g` with `f → g` a valid step in direction `orientation`,
/// including `f` itself.
pub fn step_neighbours(f: &DigraphMap, orientation: Orientation) -> Vec<DigraphMap> {
    let (g, h) = (f.domain(), f.codomain());
    let mut out = Vec::new();
    neighbours(h, &earlier_neighbours(g), f.assignment(), orientation, |a| {
        out.push(DigraphMap::from_parts(g.clone(), h.clone(), a.to_vec()));
    });
    out
}

/// Breadth-first search from `f` for a map satisfying `is_target`.
fn search(f: &DigraphMap, budget: usize, is_target: impl Fn(&[usize]) -> bool) -> HomotopyVerdict {
    let (g, h) = (f.domain(), f.codomain());
    let constraints = earlier_neighbours(g);
    let mut states: Vec<Vec<usize>> = vec![f.assignment().to_vec()];
    let mut parent: Vec<Option<(usize, Orientation)>> = vec![None];
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(f.assignment().to_vec(), 0)]);
    let certificate = |states: &[Vec<usize>], parent: &[Option<(usize, Orientation)>], mut at: usize| {
        let mut chain = vec![at];
        let mut word = Vec::new();
        while let Some((p, o)) = parent[at] {
            chain.push(p);
            word.push(o);
            at = p;
        }
        chain.reverse();
        word.reverse();
        let frames = chain.iter().map(|&i| DigraphMap::from_parts(g.clone(), h.clone(), states[i].clone())).collect();
        Homotopy::new(g.clone(), h.clone(), LineDigraph::new(word), frames).expect("search frames")
    };
    if is_target(f.assignment()) {
        return HomotopyVerdict { status: HomotopyStatus::Homotopic(Homotopy::trivial(f)), explored: 1 };
    }
    let mut head = 0;
    while head < states.len() {
        let current = states[head].clone();
        let mut found = None;
        let mut over_budget = false;
        for orientation in [Orientation::Forward, Orientation::Backward] {
            neighbours(h, &constraints, &current, orientation, |next| {
                if found.is_some() || over_budget {
                    return;
                }
                if let Entry::Vacant(slot) = seen.entry(next.to_vec()) {
                    if states.len() >= budget {
                        over_budget = true;
                        return;
                    }
                    slot.insert(states.len());
                    states.push(next.to_vec());
                    parent.push(Some((head, orientation)));
                    if is_target(next) {
                        found = Some(states.len() - 1);
                    }
                }
            });
        }
        if let Some(at) = found {
            let cert = certificate(&states, &parent, at);
            return HomotopyVerdict { status: HomotopyStatus::Homotopic(cert), explored: states.len() };
        }
        if over_budget {
            return HomotopyVerdict { status: HomotopyStatus::BudgetExceeded, explored: states.len() };
        }
        head += 1;
    }
    HomotopyVerdict { status: HomotopyStatus::NotHomotopic, explored: states.len() }
}

/// Decides `f ≃ g` exactly by exploring the homotopy class of `f`.
///
/// Certificates have the fewest possible steps.
pub fn decide_homotopic(f: &DigraphMap, g: &DigraphMap, budget: usize) -> Result<HomotopyVerdict> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::DomainMismatch);
    }
    let target = g.assignment().to_vec();
    let mut verdict = search(f, budget, |a| a == target);
    if let HomotopyStatus::Homotopic(cert) = &mut verdict.status {
        *cert.frames.last_mut().expect("frames") = g.clone();
    }
    Ok(verdict)
}

/// Whether `id_G` is homotopic to some constant map.
pub fn is_contractible(g: &Arc<Digraph>, budget: usize) -> Result<HomotopyVerdict> {
    if g.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let id = DigraphMap::identity(g.clone());
    Ok(search(&id, budget, |a| a.iter().all(|&v| v == a[0])))
}

/// Partitions `maps` into homotopy classes; `None` if some pair is undecided.
pub fn homotopy_classes(maps: &[DigraphMap], budget: usize) -> Result<Option<Vec<Vec<usize>>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'maps: for (i, f) in maps.iter().enumerate() {
        for class in &mut classes {
            match decide_homotopic(&maps[class[0]], f, budget)?.status {
                HomotopyStatus::Homotopic(_) => {
                    class.push(i);
                    continue 'maps;
                }
                HomotopyStatus::NotHomotopic => {}
                HomotopyStatus::BudgetExceeded => return Ok(None),
            }
        }
        classes.push(vec![i]);
    }
    Ok(Some(classes))
}

#[derive(Clone, Debug)]
pub enum EquivalenceStatus {
    Equivalent {
        forward: DigraphMap,
        backward: DigraphMap,
        /// `backward ∘ forward ≃ id`.
        left: Box<Homotopy>,
        /// `forward ∘ backward ≃ id`.
        right: Box<Homotopy>,
    },
    NotEquivalent,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct EquivalenceVerdict {
    pub status: EquivalenceStatus,
    pub explored: usize,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self.status, EquivalenceStatus::Equivalent { .. })
    }

    pub fn label(&self) -> &'static str {
        match self.status {
            EquivalenceStatus::Equivalent { .. } => "equivalent",
            EquivalenceStatus::NotEquivalent => "not_equivalent",
            EquivalenceStatus::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// Decides whether the given pair is a homotopy equivalence.
pub fn check_equivalence(forward: &DigraphMap, backward: &DigraphMap, budget: usize) -> Result<EquivalenceVerdict> {
    let left_map = forward.then(backward)?;
    let right_map = backward.then(forward)?;
    let left = decide_homotopic(&left_map, &DigraphMap::identity(forward.domain().clone()), budget)?;
    let right = decide_homotopic(&right_map, &DigraphMap::identity(forward.codomain().clone()), budget)?;
    let explored = left.explored + right.explored;
    let status = match (left.status, right.status) {
        (HomotopyStatus::Homotopic(left), HomotopyStatus::Homotopic(right)) => {
            EquivalenceStatus::Equivalent { forward: forward.clone(), backward: backward.clone(), left: Box::new(left), right: Box::new(right) }
        }
        (HomotopyStatus::NotHomotopic, _) | (_, HomotopyStatus::NotHomotopic) => EquivalenceStatus::NotEquivalent,
        _ => EquivalenceStatus::BudgetExceeded,
    };
    Ok(EquivalenceVerdict { status, explored })
}

/// Searches all pairs `G → H → G` for a homotopy equivalence.
///
/// The pair space grows as `|V_H|^|V_G| · |V_G|^|V_H|`, so this is only
/// practical for digraphs with a handful of vertices; `budget` bounds the
/// total work and exhausting it gives an inconclusive verdict.
pub fn homotopy_equivalent(g: &Arc<Digraph>, h: &Arc<Digraph>, budget: usize) -> Result<EquivalenceVerdict> {
    let collect = |a: &Arc<Digraph>, b: &Arc<Digraph>, limit: usize| {
        let mut out = Vec::new();
        let flow = for_each_map(a, b, |m| {
            if out.len() >= limit {
                return ControlFlow::Break(());
            }
            out.push(DigraphMap::from_parts(a.clone(), b.clone(), m.to_vec()));
            ControlFlow::Continue(())
        });
        (out, flow.is_break())
    };
    let (forwards, cut_f) = collect(g, h, budget);
    let (backwards, cut_b) = collect(h, g, budget);
    let mut explored = forwards.len() + backwards.len();
    if cut_f || cut_b {
        return Ok(EquivalenceVerdict { status: EquivalenceStatus::BudgetExceeded, explored });
    }
    let mut inconclusive = false;
    for forward in &forwards {
        for backward in &backwards {
            if explored >= budget {
                return Ok(EquivalenceVerdict { status: EquivalenceStatus::BudgetExceeded, explored });
            }
            let verdict = check_equivalence(forward, backward, budget - explored)?;
            explored += verdict.explored;
            match verdict.status {
                EquivalenceStatus::Equivalent { .. } => return Ok(EquivalenceVerdict { explored, ..verdict }),
                EquivalenceStatus::BudgetExceeded => inconclusive = true,
                EquivalenceStatus::NotEquivalent => {}
            }
        }
    }
    let status = if inconclusive { EquivalenceStatus::BudgetExceeded } else { EquivalenceStatus::NotEquivalent };
    Ok(EquivalenceVerdict { status, explored })
}

/// Result of a homotopy-extension search.
#[derive(Clone, Debug, Serialize)]
pub struct HepOutcome {
    #[serde(skip)]
    pub extension: Option<Homotopy>,
    /// Values tried for vertices outside the subdigraph, over all frames.
    pub candidates: usize,
}

/// Searches for `F̂: G □ Iₙ → H` with `F̂(-,0) = f` extending `partial` on `X`.
///
/// Vertices outside `X` range over every vertex of `H` in each frame,
/// so the search is exhaustive.
pub fn hep_extension_search(f: &DigraphMap, partial: &Homotopy) -> Result<HepOutcome> {
    let (g, h) = (f.domain(), f.codomain());
    let x = partial.domain();
    if !x.is_subdigraph_of(g) || partial.codomain() != h {
        return Err(Error::InvalidRestriction("homotopy is not defined on a subdigraph with the same codomain".into()));
    }
    if !partial.verify() {
        return Err(Error::MalformedHomotopy("the partial homotopy fails a step condition".into()));
    }
    let restricted = f.restrict(x)?;
    if restricted.assignment() != partial.start().assignment() {
        return Err(Error::InvalidRestriction("the homotopy does not start at the restriction of the map".into()));
    }

    let in_x: Vec<Option<usize>> = g.labels().iter().map(|l| x.index_of(l)).collect();
    let fixed: Vec<Vec<Option<usize>>> = partial
        .frames()
        .iter()
        .map(|frame| in_x.iter().map(|i| i.map(|i| frame.apply(i))).collect())
        .collect();
    let mut search = HepSearch {
        g,
        h,
        constraints: earlier_or_fixed(g, &in_x),
        word: partial.line().word(),
        fixed: &fixed,
        frames: vec![f.assignment().to_vec()],
        candidates: 0,
    };
    let found = search.frame(1);
    let candidates = search.candidates;
    let extension = found.then(|| {
        let frames = search
            .frames
            .into_iter()
            .map(|a| DigraphMap::from_parts(g.clone(), h.clone(), a))
            .collect();
        Homotopy::new(g.clone(), h.clone(), partial.line().clone(), frames).expect("extension frames")
    });
    Ok(HepOutcome { extension, candidates })
}

/// Like [`earlier_neighbours`], but every vertex of `X` counts as earlier.
fn earlier_or_fixed(g: &Digraph, in_x: &[Option<usize>]) -> Vec<Vec<(usize, bool)>> {
    let before = |y: usize, x: usize| in_x[y].is_some() || y < x;
    (0..g.vertex_count())
        .map(|x| {
            let incoming = g.predecessors(x).iter().filter(|&&y| before(y, x)).map(|&y| (y, true));
            let outgoing = g.successors(x).iter().filter(|&&y| before(y, x)).map(|&y| (y, false));
            incoming.chain(outgoing).collect()
        })
        .collect()
}

struct HepSearch<'a> {
    g: &'a Digraph,
    h: &'a Digraph,
    constraints: Vec<Vec<(usize, bool)>>,
    word: &'a [Orientation],
    fixed: &'a [Vec<Option<usize>>],
    frames: Vec<Vec<usize>>,
    candidates: usize,
}

impl HepSearch<'_> {
    fn frame(&mut self, i: usize) -> bool {
        if i > self.word.len() {
            return true;
        }
        let mut partial: Vec<usize> = self.fixed[i].iter().map(|v| v.unwrap_or(0)).collect();
        // Edges of G between two vertices of X must hold in the given frame.
        let x_edges_hold = self.g.edges().all(|(a, b)| match (self.fixed[i][a], self.fixed[i][b]) {
            (Some(fa), Some(fb)) => fa == fb || self.h.has_edge(fa, fb),
            _ => true,
        });
        x_edges_hold && self.vertex(i, 0, &mut partial)
    }

    fn vertex(&mut self, i: usize, x: usize, partial: &mut Vec<usize>) -> bool {
        if x == partial.len() {
            self.frames.push(partial.clone());
            if self.frame(i + 1) {
                return true;
            }
            self.frames.pop();
            return false;
        }
        if self.fixed[i][x].is_some() {
            return self.vertex(i, x + 1, partial);
        }
        let previous = self.frames[i - 1][x];
        for value in 0..self.h.vertex_count() {
            self.candidates += 1;
            let step_ok = step_holds(self.h, &[previous], &[value], self.word[i - 1]);
            if step_ok && compatible(self.h, partial, &self.constraints[x], value) {
                partial[x] = value;
                if self.vertex(i, x + 1, partial) {
                    return true;
                }
            }
        }
        false
    }
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

    fn triangle() -> Arc<Digraph> {
        digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
    }

    #[test]
    fn counts_all_maps() {
        let c4 = four_cycle();
        let mut n = 0;
        let _ = for_each_map::<()>(&c4, &c4, |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        // Each of the 4 edges lands on a vertex or an edge: closed walks of
        // length 4 with lazy steps, counted by trace((I + A)^4) = 4 + 4.
        assert_eq!(n, 8);
    }

    #[test]
    fn four_cycle_identity_is_not_constant() {
        let c4 = four_cycle();
        let id = DigraphMap::identity(c4.clone());
        let c = DigraphMap::constant(c4.clone(), c4.clone(), "0").unwrap();
        let v = decide_homotopic(&id, &c, DEFAULT_BUDGET).unwrap();
        assert!(matches!(v.status, HomotopyStatus::NotHomotopic));
        assert!(matches!(is_contractible(&c4, DEFAULT_BUDGET).unwrap().status, HomotopyStatus::NotHomotopic));
        let same = decide_homotopic(&id, &id, DEFAULT_BUDGET).unwrap();
        assert_eq!(same.certificate().unwrap().line().steps(), 0);
    }

    #[test]
    fn transitive_triangle_is_contractible() {
        let tri = digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let v = is_contractible(&tri, DEFAULT_BUDGET).unwrap();
        let cert = v.certificate().unwrap();
        assert!(cert.verify());
        assert_eq!(*cert.start(), DigraphMap::identity(tri));
        assert!(is_contractible(&Arc::new(Digraph::point("x")), 10).unwrap().is_homotopic());
        assert!(matches!(is_contractible(&Arc::new(Digraph::empty()), 10), Err(Error::EmptyDigraph)));
        // The cyclic triangle only moves by rotations.
        let cyclic = is_contractible(&triangle(), DEFAULT_BUDGET).unwrap();
        assert!(matches!(cyclic.status, HomotopyStatus::NotHomotopic));
        assert_eq!(cyclic.explored, 3);
    }

    #[test]
    fn budget_is_reported() {
        let c4 = four_cycle();
        let path = digraph(&["a", "b", "c", "d", "e"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")]);
        let f = DigraphMap::constant(c4.clone(), path.clone(), "a").unwrap();
        let g = DigraphMap::constant(c4, path, "e").unwrap();
        assert!(matches!(decide_homotopic(&f, &g, 2).unwrap().status, HomotopyStatus::BudgetExceeded));
        assert!(decide_homotopic(&f, &g, DEFAULT_BUDGET).unwrap().certificate().unwrap().verify());
    }

    #[test]
    fn equivalences() {
        let tri = digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let point = Arc::new(Digraph::point("p"));
        assert!(homotopy_equivalent(&tri, &point, DEFAULT_BUDGET).unwrap().is_equivalent());
        let c4 = four_cycle();
        assert!(matches!(homotopy_equivalent(&c4, &point, DEFAULT_BUDGET).unwrap().status, EquivalenceStatus::NotEquivalent));
        assert!(homotopy_equivalent(&c4, &c4, DEFAULT_BUDGET).unwrap().is_equivalent());
    }

    #[test]
    fn classes_of_maps_into_the_four_cycle() {
        let c4 = four_cycle();
        let point = Arc::new(Digraph::point("p"));
        let maps: Vec<DigraphMap> =
            c4.labels().iter().map(|v| DigraphMap::constant(point.clone(), c4.clone(), v).unwrap()).collect();
        assert_eq!(homotopy_classes(&maps, DEFAULT_BUDGET).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn triangle_has_no_extension() {
        let tri = triangle();
        let x = digraph(&["a", "b"], &[("a", "b")]);
        let id = DigraphMap::identity(tri.clone());
        let start = DigraphMap::inclusion(x.clone(), tri.clone()).unwrap();
        let collapse = DigraphMap::constant(x.clone(), tri.clone(), "b").unwrap();
        let partial = Homotopy::new(x.clone(), tri.clone(), LineDigraph::parse("+").unwrap(), vec![start, collapse]).unwrap();
        assert!(partial.verify());
        let outcome = hep_extension_search(&id, &partial).unwrap();
        assert!(outcome.extension.is_none());
        assert_eq!(outcome.candidates, 3);

        let full = Homotopy::constant(&id, LineDigraph::parse("+-").unwrap());
        let extended = hep_extension_search(&id, &full).unwrap().extension.unwrap();
        assert_eq!(extended, full);

        let still = Homotopy::constant(&id.restrict(&x).unwrap(), LineDigraph::parse("+").unwrap());
        let ext = hep_extension_search(&id, &still).unwrap().extension.unwrap();
        assert!(ext.verify());
        assert_eq!(*ext.start(), id);

        let wrong_start = Homotopy::constant(&DigraphMap::constant(x, tri, "c").unwrap(), LineDigraph::parse("+").unwrap());
        assert!(matches!(hep_extension_search(&id, &wrong_start), Err(Error::InvalidRestriction(_))));
    }
}
