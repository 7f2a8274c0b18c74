//! Homotopies of digraph maps as frame sequences, and exact searches over
//! the finite space of maps.

mod certificates;
mod search;

use std::sync::Arc;

use crate::digraph::{Digraph, DigraphMap, LineDigraph, Orientation};
use crate::error::{Error, Result};
use crate::label;

pub use certificates::{
    crushing_homotopy, mapping_cone_homotopy, modified_cone_contraction, s_digraph_homotopy, tube_homotopy,
};
pub use search::{
    decide_homotopic, for_each_map, hep_extension_search, homotopy_classes, homotopy_equivalent, is_contractible,
    check_equivalence, step_neighbours, EquivalenceStatus, EquivalenceVerdict, HepOutcome, HomotopyStatus, HomotopyVerdict,
    DEFAULT_BUDGET,
};

/// `F: G □ Iₙ → H` stored as its restrictions `f₀, …, fₙ` to the slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    domain: Arc<Digraph>,
    codomain: Arc<Digraph>,
    line: LineDigraph,
    frames: Vec<DigraphMap>,
}

impl Homotopy {
    /// Checks that there are `n + 1` frames, all `domain → codomain`.
    ///
    /// The step conditions are not checked here; see [`Homotopy::verify`].
    pub fn new(domain: Arc<Digraph>, codomain: Arc<Digraph>, line: LineDigraph, frames: Vec<DigraphMap>) -> Result<Self> {
        if frames.len() != line.steps() + 1 {
            return Err(Error::MalformedHomotopy(format!(
                "{} frames for a line digraph with {} steps",
                frames.len(),
                line.steps()
            )));
        }
        if let Some(i) = frames.iter().position(|f| **f.domain() != *domain || **f.codomain() != *codomain) {
            return Err(Error::MalformedHomotopy(format!("frame {i} has the wrong domain or codomain")));
        }
        Ok(Self { domain, codomain, line, frames })
    }

    /// Builds frames from a word and label assignments, failing on invalid frames.
    pub fn from_labels(
        domain: Arc<Digraph>,
        codomain: Arc<Digraph>,
        word: &str,
        frames: &[std::collections::BTreeMap<String, String>],
    ) -> Result<Self> {
        let frames = frames
            .iter()
            .map(|m| DigraphMap::from_labels(domain.clone(), codomain.clone(), m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, LineDigraph::parse(word)?, frames)
    }

    /// The homotopy `f ≃ f` over `line` with every frame equal to `f`.
    pub fn constant(f: &DigraphMap, line: LineDigraph) -> Self {
        let frames = vec![f.clone(); line.steps() + 1];
        Self { domain: f.domain().clone(), codomain: f.codomain().clone(), line, frames }
    }

    /// The zero-step homotopy `f ≃ f`.
    pub fn trivial(f: &DigraphMap) -> Self {
        Self::constant(f, LineDigraph::default())
    }

    pub fn domain(&self) -> &Arc<Digraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Digraph> {
        &self.codomain
    }

    pub fn line(&self) -> &LineDigraph {
        &self.line
    }

    pub fn frames(&self) -> &[DigraphMap] {
        &self.frames
    }

    pub fn start(&self) -> &DigraphMap {
        &self.frames[0]
    }

    pub fn end(&self) -> &DigraphMap {
        self.frames.last().expect("at least one frame")
    }

    /// True when every step satisfies its one-step condition.
    pub fn verify(&self) -> bool {
        self.line
            .word()
            .iter()
            .zip(self.frames.windows(2))
            .all(|(&o, pair)| step_holds(&self.codomain, pair[0].assignment(), pair[1].assignment(), o))
    }

    /// Index of the first step that fails, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.line
            .word()
            .iter()
            .zip(self.frames.windows(2))
            .position(|(&o, pair)| !step_holds(&self.codomain, pair[0].assignment(), pair[1].assignment(), o))
    }

    /// `g ≃ f` from `f ≃ g`.
    pub fn reverse(&self) -> Self {
        let mut frames = self.frames.clone();
        frames.reverse();
        Self { domain: self.domain.clone(), codomain: self.codomain.clone(), line: self.line.reversed(), frames }
    }

    /// `f ≃ h` from `f ≃ g` and `g ≃ h`.
    pub fn concat(&self, other: &Homotopy) -> Result<Self> {
        if self.end() != other.start() {
            return Err(Error::MalformedHomotopy("end of the first homotopy is not the start of the second".into()));
        }
        let mut frames = self.frames.clone();
        frames.extend(other.frames.iter().skip(1).cloned());
        Ok(Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            line: self.line.concat(&other.line),
            frames,
        })
    }

    /// `k ∘ F` for a map `k` out of the codomain.
    pub fn then(&self, k: &DigraphMap) -> Result<Self> {
        let frames = self.frames.iter().map(|f| f.then(k)).collect::<Result<Vec<_>>>()?;
        Ok(Self { domain: self.domain.clone(), codomain: k.codomain().clone(), line: self.line.clone(), frames })
    }

    /// `F ∘ (k □ id)` for a map `k` into the domain.
    pub fn precompose(&self, k: &DigraphMap) -> Result<Self> {
        let frames = self.frames.iter().map(|f| k.then(f)).collect::<Result<Vec<_>>>()?;
        Ok(Self { domain: k.domain().clone(), codomain: self.codomain.clone(), line: self.line.clone(), frames })
    }

    /// The map `G □ Iₙ → H` itself, validated as a digraph map.
    pub fn assemble(&self) -> Result<DigraphMap> {
        let line = self.line.to_digraph();
        let product = Arc::new(self.domain.box_product(&line));
        let pairs: std::collections::BTreeMap<String, String> = self
            .frames
            .iter()
            .enumerate()
            .flat_map(|(i, f)| {
                f.label_pairs()
                    .map(move |(x, y)| (label::level(x, i), y.to_string()))
                    .collect::<Vec<_>>()
            })
            .collect();
        DigraphMap::from_labels(product, self.codomain.clone(), &pairs)
    }
}

/// `verify` as a free function.
pub fn verify_homotopy(h: &Homotopy) -> bool {
    h.verify()
}

/// The condition on consecutive frames: for `+`, each `f(x) = g(x)` or
/// `f(x) → g(x)`; for `−`, each `f(x) = g(x)` or `g(x) → f(x)`.
pub fn one_step(f: &DigraphMap, g: &DigraphMap, orientation: Orientation) -> Result<bool> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::DomainMismatch);
    }
    Ok(step_holds(f.codomain(), f.assignment(), g.assignment(), orientation))
}

pub(crate) fn step_holds(h: &Digraph, f: &[usize], g: &[usize], orientation: Orientation) -> bool {
    f.iter().zip(g).all(|(&a, &b)| {
        a == b
            || match orientation {
                Orientation::Forward => h.has_edge(a, b),
                Orientation::Backward => h.has_edge(b, a),
            }
    })
}
