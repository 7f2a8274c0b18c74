//! Finite digraphs, digraph maps and line digraphs.
//!
//! A [`Digraph`] has no loops and no parallel edges. Vertices carry opaque
//! string labels and are stored in lexicographic label order, so vertex
//! indices, path enumerations and every canonical choice downstream are
//! reproducible. Digraphs are immutable values compared structurally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Digraph {
    labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("vertices", &self.labels)
            .field("edges", &self.edge_labels().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// Validates raw vertex and edge lists.
    ///
    /// Vertex labels must be unique, edge endpoints must be vertices, and
    /// edges may not be loops or repeat.
    pub fn new<V, E, A, B>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut seen = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateVertexLabel(v));
            }
        }
        let labels: Vec<String> = seen.into_iter().collect();
        let index = index_of_labels(&labels);
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let &u = index.get(a).ok_or_else(|| Error::UnknownEndpoint(a.to_string()))?;
            let &v = index.get(b).ok_or_else(|| Error::UnknownEndpoint(b.to_string()))?;
            if u == v {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if !edge_set.insert((u, v)) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
        }
        Ok(Self::from_indexed(labels, edge_set))
    }

    /// Builds a digraph from label sets, silently merging repeated edges.
    pub(crate) fn from_label_sets(
        vertices: BTreeSet<String>,
        edges: BTreeSet<(String, String)>,
    ) -> Result<Self> {
        let labels: Vec<String> = vertices.into_iter().collect();
        let index = index_of_labels(&labels);
        let mut edge_set = BTreeSet::new();
        for (a, b) in &edges {
            let &u = index.get(a.as_str()).ok_or_else(|| Error::UnknownEndpoint(a.clone()))?;
            let &v = index.get(b.as_str()).ok_or_else(|| Error::UnknownEndpoint(b.clone()))?;
            if u == v {
                return Err(Error::SelfLoop(a.clone()));
            }
            edge_set.insert((u, v));
        }
        Ok(Self::from_indexed(labels, edge_set))
    }

    /// `labels` must be sorted and unique; edges index into it.
    fn from_indexed(labels: Vec<String>, edges: BTreeSet<(usize, usize)>) -> Self {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v) in &edges {
            succ[u].push(v);
            pred[v].push(u);
        }
        Self { labels, edges, succ, pred }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-vertex digraph `∗` with the given label.
    pub fn point(label: &str) -> Self {
        Self::from_indexed(vec![label.to_string()], BTreeSet::new())
    }

    /// Digraph with the given vertices and no edges.
    pub fn edgeless<I>(labels: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        Self::new(labels, std::iter::empty::<(&str, &str)>())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn contains_vertex(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn has_edge_labels(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(u), Some(v)) => self.has_edge(u, v),
            _ => false,
        }
    }

    /// Edges as index pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (self.labels[u].as_str(), self.labels[v].as_str()))
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    fn label_sets(&self) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
        let vertices = self.labels.iter().cloned().collect();
        let edges = self
            .edge_labels()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        (vertices, edges)
    }

    /// `V₁ ∪ V₂`, `E₁ ∪ E₂`; shared labels denote the same vertex.
    pub fn union(&self, other: &Digraph) -> Digraph {
        let (mut vertices, mut edges) = self.label_sets();
        let (v2, e2) = other.label_sets();
        vertices.extend(v2);
        edges.extend(e2);
        Digraph::from_label_sets(vertices, edges).expect("union of digraphs is a digraph")
    }

    /// `V₁ ∩ V₂`, `E₁ ∩ E₂`; the result need not be induced in either input.
    pub fn intersection(&self, other: &Digraph) -> Digraph {
        let (v1, e1) = self.label_sets();
        let (v2, e2) = other.label_sets();
        let vertices = v1.intersection(&v2).cloned().collect();
        let edges = e1.intersection(&e2).cloned().collect();
        Digraph::from_label_sets(vertices, edges).expect("intersection of digraphs is a digraph")
    }

    /// Coproduct `G ⊔ H` with vertices tagged `L:` and `R:`.
    pub fn disjoint_union(self: &Arc<Self>, other: &Arc<Digraph>) -> DisjointUnion {
        let tagged = |g: &Digraph, tag: &str, vs: &mut BTreeSet<String>, es: &mut BTreeSet<(String, String)>| {
            vs.extend(g.labels.iter().map(|l| label::tag(tag, l)));
            es.extend(g.edge_labels().map(|(a, b)| (label::tag(tag, a), label::tag(tag, b))));
        };
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        tagged(self, label::LEFT, &mut vertices, &mut edges);
        tagged(other, label::RIGHT, &mut vertices, &mut edges);
        let sum = Arc::new(Digraph::from_label_sets(vertices, edges).expect("tagged labels are disjoint"));
        let inject = |g: &Arc<Digraph>, tag: &str| {
            let assignment = g
                .labels
                .iter()
                .map(|l| sum.index_of(&label::tag(tag, l)).expect("tagged vertex"))
                .collect();
            DigraphMap::from_parts(g.clone(), sum.clone(), assignment)
        };
        DisjointUnion {
            left: inject(self, label::LEFT),
            right: inject(other, label::RIGHT),
            digraph: sum,
        }
    }

    /// Box product `G □ H` with vertices `(u,v)`.
    pub fn box_product(&self, other: &Digraph) -> Digraph {
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for u in &self.labels {
            for v in &other.labels {
                vertices.insert(label::pair(u, v));
            }
            for (a, b) in other.edge_labels() {
                edges.insert((label::pair(u, a), label::pair(u, b)));
            }
        }
        for (a, b) in self.edge_labels() {
            for v in &other.labels {
                edges.insert((label::pair(a, v), label::pair(b, v)));
            }
        }
        Digraph::from_label_sets(vertices, edges).expect("box product is a digraph")
    }

    /// Quotient by a partition of the vertex set.
    ///
    /// Each class is named by its minimal member. Edges between distinct
    /// classes survive; edges inside a class are dropped.
    pub fn quotient<C, S>(self: &Arc<Self>, classes: C) -> Result<Quotient>
    where
        C: IntoIterator<Item = S>,
        S: IntoIterator,
        S::Item: AsRef<str>,
    {
        let mut class_of = vec![usize::MAX; self.vertex_count()];
        let mut names = Vec::new();
        for (c, class) in classes.into_iter().enumerate() {
            let mut name: Option<&str> = None;
            for member in class {
                let member = member.as_ref();
                let v = self
                    .index_of(member)
                    .ok_or_else(|| Error::BadPartition(format!("`{member}` is not a vertex")))?;
                if class_of[v] != usize::MAX {
                    return Err(Error::BadPartition(format!("`{member}` lies in two classes")));
                }
                class_of[v] = c;
                let l = self.label(v);
                if name.is_none_or(|n| l < n) {
                    name = Some(l);
                }
            }
            let name = name.ok_or_else(|| Error::BadPartition(format!("class {c} is empty")))?;
            names.push(name.to_string());
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::BadPartition(format!("`{}` is in no class", self.label(v))));
        }
        let vertices: BTreeSet<String> = names.iter().cloned().collect();
        let edges = self
            .edges()
            .filter(|&(u, v)| class_of[u] != class_of[v])
            .map(|(u, v)| (names[class_of[u]].clone(), names[class_of[v]].clone()))
            .collect();
        let digraph = Arc::new(Digraph::from_label_sets(vertices, edges)?);
        let assignment = class_of
            .iter()
            .map(|&c| digraph.index_of(&names[c]).expect("class name"))
            .collect();
        Ok(Quotient {
            projection: DigraphMap::from_parts(self.clone(), digraph.clone(), assignment),
            digraph,
        })
    }

    /// `G/X`: the vertices of `X` are identified with an added point.
    pub fn collapse(self: &Arc<Self>, sub: &Digraph) -> Result<Quotient> {
        for l in &sub.labels {
            if !self.contains_vertex(l) {
                return Err(Error::UnknownVertex(l.clone()));
            }
        }
        let sum = self.disjoint_union(&Arc::new(Digraph::point(label::APEX)));
        let mut collapsed: Vec<String> = sub.labels.iter().map(|l| label::tag(label::LEFT, l)).collect();
        collapsed.push(label::tag(label::RIGHT, label::APEX));
        let mut classes = vec![collapsed];
        for l in &self.labels {
            if !sub.contains_vertex(l) {
                classes.push(vec![label::tag(label::LEFT, l)]);
            }
        }
        sum.digraph.quotient(classes)
    }

    /// Induced subdigraph on `subset`.
    pub fn induced_subdigraph<I>(&self, subset: I) -> Result<Digraph>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let mut keep = vec![false; self.vertex_count()];
        for l in subset {
            let l = l.as_ref();
            let v = self.index_of(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))?;
            keep[v] = true;
        }
        let vertices = self
            .labels
            .iter()
            .enumerate()
            .filter(|(v, _)| keep[*v])
            .map(|(_, l)| l.clone())
            .collect();
        let edges = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect();
        Digraph::from_label_sets(vertices, edges)
    }

    /// Renames every vertex; fails if two vertices receive the same label.
    pub fn relabel<F: Fn(&str) -> String>(&self, rename: F) -> Result<Digraph> {
        let labels: Vec<String> = self.labels.iter().map(|l| rename(l)).collect();
        let edges = self.edges().map(|(u, v)| (&labels[u], &labels[v])).collect::<Vec<_>>();
        Digraph::new(labels.iter().cloned(), edges)
    }

    /// Whether every vertex and edge of `self` is a vertex or edge of `other`.
    pub fn is_subdigraph_of(&self, other: &Digraph) -> bool {
        self.labels.iter().all(|l| other.contains_vertex(l))
            && self.edge_labels().all(|(a, b)| other.has_edge_labels(a, b))
    }

    /// Weakly connected components, each sorted, in order of least vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in self.succ[v].iter().chain(&self.pred[v]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

fn index_of_labels(labels: &[String]) -> BTreeMap<&str, usize> {
    labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
}

/// Validates raw vertex and edge label lists into a [`Digraph`].
pub fn validate_digraph(vertices: &[String], edges: &[(String, String)]) -> Result<Digraph> {
    Digraph::new(vertices.iter().cloned(), edges.iter().map(|(a, b)| (a, b)))
}

/// `G ⊔ H` together with its two injections.
#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub digraph: Arc<Digraph>,
    pub left: DigraphMap,
    pub right: DigraphMap,
}

/// A quotient digraph together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub digraph: Arc<Digraph>,
    pub projection: DigraphMap,
}

/// Orientation of one step of a line digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Edge `(i, i+1)`.
    Forward,
    /// Edge `(i+1, i)`.
    Backward,
}

impl Orientation {
    pub fn symbol(self) -> char {
        match self {
            Orientation::Forward => '+',
            Orientation::Backward => '-',
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// An `n`-step line digraph `0 – 1 – … – n` with one oriented edge per step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LineDigraph {
    word: Vec<Orientation>,
}

impl LineDigraph {
    pub fn new(word: Vec<Orientation>) -> Self {
        Self { word }
    }

    /// Parses a word over `+` and `-` (the Unicode minus `−` is accepted).
    pub fn parse(word: &str) -> Result<Self> {
        word.chars()
            .map(|c| match c {
                '+' => Ok(Orientation::Forward),
                '-' | '−' => Ok(Orientation::Backward),
                other => Err(Error::MalformedHomotopy(format!("`{other}` is not an orientation"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn steps(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[Orientation] {
        &self.word
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.word.iter().rev().map(|o| o.flip()).collect())
    }

    pub fn concat(&self, other: &LineDigraph) -> Self {
        Self::new(self.word.iter().chain(&other.word).copied().collect())
    }

    /// The line digraph itself, with vertices labeled `0..=n`.
    pub fn to_digraph(&self) -> Digraph {
        let vertices = (0..=self.steps()).map(|i| i.to_string()).collect();
        let edges = self
            .word
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let (a, b) = (i.to_string(), (i + 1).to_string());
                match o {
                    Orientation::Forward => (a, b),
                    Orientation::Backward => (b, a),
                }
            })
            .collect();
        Digraph::from_label_sets(vertices, edges).expect("line digraph is a digraph")
    }
}

impl fmt::Display for LineDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.iter().try_for_each(|o| write!(f, "{}", o.symbol()))
    }
}

/// A digraph map: a vertex function that collapses or preserves every edge.
#[derive(Clone)]
pub struct DigraphMap {
    domain: Arc<Digraph>,
    codomain: Arc<Digraph>,
    assignment: Vec<usize>,
}

impl PartialEq for DigraphMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && (Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain)
            && (Arc::ptr_eq(&self.codomain, &other.codomain) || self.codomain == other.codomain)
    }
}

impl Eq for DigraphMap {}

impl fmt::Debug for DigraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.label_pairs()).finish()
    }
}

/// First edge of `domain` that `assignment` neither collapses nor preserves.
pub(crate) fn edge_violation(domain: &Digraph, codomain: &Digraph, assignment: &[usize]) -> Option<(usize, usize)> {
    domain.edges().find(|&(x, y)| {
        let (fx, fy) = (assignment[x], assignment[y]);
        fx != fy && !codomain.has_edge(fx, fy)
    })
}

impl DigraphMap {
    /// Checks the edge condition on an index assignment.
    pub fn new(domain: Arc<Digraph>, codomain: Arc<Digraph>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "assignment has {} entries for {} vertices",
                assignment.len(),
                domain.vertex_count()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&h| h >= codomain.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        if let Some((x, y)) = edge_violation(&domain, &codomain, &assignment) {
            return Err(Error::EdgeViolation(domain.label(x).into(), domain.label(y).into()));
        }
        Ok(Self::from_parts(domain, codomain, assignment))
    }

    pub(crate) fn from_parts(domain: Arc<Digraph>, codomain: Arc<Digraph>, assignment: Vec<usize>) -> Self {
        debug_assert!(edge_violation(&domain, &codomain, &assignment).is_none());
        Self { domain, codomain, assignment }
    }

    /// Validates a label-level assignment.
    pub fn from_labels<K, V>(
        domain: Arc<Digraph>,
        codomain: Arc<Digraph>,
        raw: &BTreeMap<K, V>,
    ) -> Result<Self>
    where
        K: AsRef<str> + Ord,
        V: AsRef<str>,
    {
        let mut assignment = vec![usize::MAX; domain.vertex_count()];
        for (k, v) in raw {
            let x = domain
                .index_of(k.as_ref())
                .ok_or_else(|| Error::UnknownVertex(k.as_ref().to_string()))?;
            let h = codomain
                .index_of(v.as_ref())
                .ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))?;
            assignment[x] = h;
        }
        if let Some(x) = assignment.iter().position(|&h| h == usize::MAX) {
            return Err(Error::NotTotal(domain.label(x).to_string()));
        }
        Self::new(domain, codomain, assignment)
    }

    /// Convenience wrapper over [`DigraphMap::from_labels`] for literal pairs.
    pub fn from_pairs(domain: Arc<Digraph>, codomain: Arc<Digraph>, pairs: &[(&str, &str)]) -> Result<Self> {
        let raw: BTreeMap<&str, &str> = pairs.iter().copied().collect();
        Self::from_labels(domain, codomain, &raw)
    }

    pub fn identity(g: Arc<Digraph>) -> Self {
        let assignment = (0..g.vertex_count()).collect();
        Self::from_parts(g.clone(), g, assignment)
    }

    pub fn constant(domain: Arc<Digraph>, codomain: Arc<Digraph>, value: &str) -> Result<Self> {
        let h = codomain
            .index_of(value)
            .ok_or_else(|| Error::UnknownVertex(value.to_string()))?;
        let assignment = vec![h; domain.vertex_count()];
        Ok(Self::from_parts(domain, codomain, assignment))
    }

    /// Inclusion of a subdigraph, matching vertices by label.
    pub fn inclusion(sub: Arc<Digraph>, sup: Arc<Digraph>) -> Result<Self> {
        let assignment = sub
            .labels()
            .iter()
            .map(|l| sup.index_of(l).ok_or_else(|| Error::UnknownVertex(l.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sub, sup, assignment)
    }

    /// The map `G ⊔ G' → H` restricting to `self` and `other`.
    pub fn copair(&self, other: &DigraphMap, sum: &DisjointUnion) -> Result<Self> {
        if self.codomain != other.codomain {
            return Err(Error::DomainMismatch);
        }
        if self.domain != sum.left.domain || other.domain != sum.right.domain {
            return Err(Error::DomainMismatch);
        }
        let mut assignment = vec![0; sum.digraph.vertex_count()];
        for (x, &s) in sum.left.assignment.iter().enumerate() {
            assignment[s] = self.assignment[x];
        }
        for (x, &s) in sum.right.assignment.iter().enumerate() {
            assignment[s] = other.assignment[x];
        }
        Self::new(sum.digraph.clone(), self.codomain.clone(), assignment)
    }

    pub fn domain(&self) -> &Arc<Digraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Digraph> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// Image of a domain label, if the label exists.
    pub fn apply_label(&self, label: &str) -> Option<&str> {
        let x = self.domain.index_of(label)?;
        Some(self.codomain.label(self.assignment[x]))
    }

    pub fn label_pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .map(|(x, &h)| (self.domain.label(x), self.codomain.label(h)))
    }

    pub fn to_label_map(&self) -> BTreeMap<String, String> {
        self.label_pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &DigraphMap) -> Result<Self> {
        if !(Arc::ptr_eq(&self.codomain, &after.domain) || self.codomain == after.domain) {
            return Err(Error::DomainMismatch);
        }
        let assignment = self.assignment.iter().map(|&h| after.assignment[h]).collect();
        Ok(Self::from_parts(self.domain.clone(), after.codomain.clone(), assignment))
    }

    /// Restriction to a subdigraph of the domain.
    pub fn restrict(&self, sub: &Arc<Digraph>) -> Result<Self> {
        let inclusion = DigraphMap::inclusion(sub.clone(), self.domain.clone())?;
        inclusion.then(self)
    }

    /// The same vertex function into another digraph, matching images by label.
    pub fn with_codomain(&self, codomain: Arc<Digraph>) -> Result<Self> {
        let assignment = self
            .assignment
            .iter()
            .map(|&h| {
                let l = self.codomain.label(h);
                codomain.index_of(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.domain.clone(), codomain, assignment)
    }

    /// The image digraph: vertices `f(V)` and the non-collapsed edges `f(E)`.
    pub fn image(&self) -> Digraph {
        let vertices = self.assignment.iter().map(|&h| self.codomain.label(h).to_string()).collect();
        let edges = self
            .domain
            .edges()
            .map(|(x, y)| (self.assignment[x], self.assignment[y]))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (self.codomain.label(a).to_string(), self.codomain.label(b).to_string()))
            .collect();
        Digraph::from_label_sets(vertices, edges).expect("image of a map is a digraph")
    }

    /// Codomain vertices with at least two preimages.
    pub fn image_2(&self) -> BTreeSet<String> {
        let mut count = vec![0usize; self.codomain.vertex_count()];
        for &h in &self.assignment {
            count[h] += 1;
        }
        count
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= 2)
            .map(|(h, _)| self.codomain.label(h).to_string())
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.vertex_count()];
        self.assignment.iter().all(|&h| !std::mem::replace(&mut seen[h], true))
    }

    /// Whether the map is injective on vertices and on edges and hits every
    /// vertex and edge of the codomain.
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective()
            && self.domain.vertex_count() == self.codomain.vertex_count()
            && self.image().edge_count() == self.codomain.edge_count()
            && self.domain.edge_count() == self.codomain.edge_count()
    }
}

/// Validates a raw label assignment `f` from `G` to `H`.
pub fn validate_map(
    raw: &BTreeMap<String, String>,
    domain: Arc<Digraph>,
    codomain: Arc<Digraph>,
) -> Result<DigraphMap> {
    DigraphMap::from_labels(domain, codomain, raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_abc() -> Arc<Digraph> {
        Arc::new(Digraph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap())
    }

    fn four_cycle() -> Arc<Digraph> {
        Arc::new(Digraph::new(["0", "1", "2", "3"], [("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")]).unwrap())
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(Digraph::new(["a"], [("a", "a")]), Err(Error::SelfLoop(_))));
        assert!(matches!(Digraph::new(["a"], [("a", "b")]), Err(Error::UnknownEndpoint(_))));
        assert!(matches!(
            Digraph::new(["a", "a"], std::iter::empty::<(&str, &str)>()),
            Err(Error::DuplicateVertexLabel(_))
        ));
        assert!(matches!(
            Digraph::new(["a", "b"], [("a", "b"), ("a", "b")]),
            Err(Error::DuplicateEdge(..))
        ));
        let empty = Digraph::new(Vec::<String>::new(), std::iter::empty::<(&str, &str)>()).unwrap();
        assert!(empty.is_empty());
        let g = path_abc();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
    }

    #[test]
    fn map_validation() {
        let g = path_abc();
        let h = four_cycle();
        let f = DigraphMap::from_pairs(g.clone(), h.clone(), &[("a", "0"), ("b", "1"), ("c", "1")]).unwrap();
        assert_eq!(f.image_2(), BTreeSet::from(["1".to_string()]));
        assert!(DigraphMap::identity(g.clone()).is_injective());
        assert!(matches!(
            DigraphMap::from_pairs(g.clone(), h.clone(), &[("a", "0"), ("b", "1")]),
            Err(Error::NotTotal(v)) if v == "c"
        ));
        let ab = Arc::new(Digraph::new(["a", "b"], [("a", "b")]).unwrap());
        let line = Arc::new(Digraph::new(["0", "1"], [("0", "1")]).unwrap());
        assert!(matches!(
            DigraphMap::from_pairs(ab, line, &[("a", "1"), ("b", "0")]),
            Err(Error::EdgeViolation(x, y)) if x == "a" && y == "b"
        ));
    }

    #[test]
    fn set_operations() {
        let ab = Digraph::new(["a", "b"], [("a", "b")]).unwrap();
        let bc = Digraph::new(["b", "c"], [("b", "c")]).unwrap();
        assert_eq!(ab.union(&bc), *path_abc());
        let g = path_abc();
        assert_eq!(g.union(&g), *g);
        assert_eq!(g.intersection(&g), *g);
        let bcd = Digraph::new(["b", "c", "d"], [("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(g.intersection(&bcd), bc);
        let ba = Digraph::new(["a", "b"], [("b", "a")]).unwrap();
        assert_eq!(ab.union(&ba).edge_count(), 2);
        assert_eq!(ab.intersection(&ba).edge_count(), 0);
        assert_eq!(ab.intersection(&ba).vertex_count(), 2);
    }

    #[test]
    fn disjoint_union_tags() {
        let ab = Arc::new(Digraph::new(["a", "b"], [("a", "b")]).unwrap());
        let sum = ab.disjoint_union(&ab);
        assert_eq!((sum.digraph.vertex_count(), sum.digraph.edge_count()), (4, 2));
        assert_eq!(sum.left.apply_label("a"), Some("L:a"));
        assert_eq!(sum.right.apply_label("b"), Some("R:b"));
        let with_empty = ab.disjoint_union(&Arc::new(Digraph::empty()));
        assert_eq!(with_empty.digraph.labels(), ["L:a", "L:b"]);
    }

    #[test]
    fn box_products() {
        let ab = Digraph::new(["a", "b"], [("a", "b")]).unwrap();
        let plus = LineDigraph::parse("+").unwrap().to_digraph();
        let sq = ab.box_product(&plus);
        assert_eq!((sq.vertex_count(), sq.edge_count()), (4, 4));
        let tri = Digraph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let prism = tri.box_product(&plus);
        assert_eq!((prism.vertex_count(), prism.edge_count()), (6, 9));
        let slice = tri.box_product(&Digraph::point("0"));
        assert_eq!((slice.vertex_count(), slice.edge_count()), (3, 3));
    }

    #[test]
    fn quotients() {
        let g = path_abc();
        let q = g.quotient([vec!["a", "b"], vec!["c"]]).unwrap();
        assert_eq!(q.digraph.labels(), ["a", "c"]);
        assert_eq!(q.digraph.edge_count(), 1);
        assert!(q.digraph.has_edge_labels("a", "c"));
        let trivial = g.quotient([["a"], ["b"], ["c"]]).unwrap();
        assert_eq!(*trivial.digraph, *g);
        assert!(matches!(g.quotient([vec!["a", "b"]]), Err(Error::BadPartition(_))));
        assert!(matches!(g.quotient([vec!["a", "b"], vec!["b", "c"]]), Err(Error::BadPartition(_))));
        let point = g.collapse(&g).unwrap();
        assert_eq!(point.digraph.vertex_count(), 1);
        let wedge = g.collapse(&Digraph::new(["a", "c"], std::iter::empty::<(&str, &str)>()).unwrap()).unwrap();
        assert_eq!((wedge.digraph.vertex_count(), wedge.digraph.edge_count()), (2, 2));
    }

    #[test]
    fn induced_subdigraphs() {
        let g = path_abc();
        let bc = g.induced_subdigraph(["b", "c"]).unwrap();
        assert_eq!(bc, Digraph::new(["b", "c"], [("b", "c")]).unwrap());
        assert_eq!(g.induced_subdigraph(g.labels()).unwrap(), *g);
        assert!(g.induced_subdigraph(Vec::<String>::new()).unwrap().is_empty());
        assert!(matches!(g.induced_subdigraph(["z"]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn line_digraphs() {
        let line = LineDigraph::parse("-++").unwrap();
        let d = line.to_digraph();
        assert!(d.has_edge_labels("1", "0"));
        assert!(d.has_edge_labels("1", "2"));
        assert!(d.has_edge_labels("2", "3"));
        assert_eq!(line.reversed().to_string(), "--+");
        assert!(LineDigraph::parse("+x").is_err());
    }
}
