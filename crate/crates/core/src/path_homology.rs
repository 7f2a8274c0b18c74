//! Path homology and path cohomology of digraphs over the integers.
//!
//! An allowed `p`-path is a vertex sequence `i₀ … i_p` whose consecutive
//! pairs are edges. The boundary `∂e_{i₀…i_p} = Σ (−1)ᵏ e_{i₀…îₖ…i_p}` is
//! taken modulo non-regular sequences (equal consecutive vertices), so an
//! interior deletion with `i_{k−1} = i_{k+1}` contributes nothing. Interior
//! deletions that skip a non-edge land outside the allowed paths;
//! `Ω_p` is the sublattice of allowed chains whose boundary avoids them.
//!
//! `Ω_p` is computed as an integer kernel, one block at a time: two allowed
//! paths share a block when they hit a common non-allowed sequence. The
//! union of the blockwise Hermite bases is the global Hermite basis, so the
//! boundary matrices `D_p` are canonical.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::{hom_induced, integer_kernel, FgAbGroup, GroupHom, IntMatrix, Subquotient};
use crate::digraph::{Digraph, DigraphMap};
use crate::error::{Error, Result};

pub const DEFAULT_PATH_CAP: usize = 200_000;
pub const DEFAULT_P_MAX: usize = 3;

type Chain = BTreeMap<usize, BigInt>;

/// Allowed paths of each degree in lexicographic order of vertex indices.
#[derive(Clone, Debug)]
pub struct AllowedPaths {
    degrees: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl AllowedPaths {
    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn paths(&self, p: usize) -> &[Vec<usize>] {
        &self.degrees[p]
    }

    pub fn count(&self, p: usize) -> usize {
        self.degrees[p].len()
    }

    pub fn position(&self, path: &[usize]) -> Option<usize> {
        self.index.get(path.len().checked_sub(1)?)?.get(path).copied()
    }
}

/// Allowed paths of degrees `0..=top`, failing once a degree exceeds `cap`.
pub fn enumerate_allowed_paths(g: &Digraph, top: usize, cap: usize) -> Result<AllowedPaths> {
    let mut degrees: Vec<Vec<Vec<usize>>> = vec![(0..g.vertex_count()).map(|v| vec![v]).collect()];
    for p in 1..=top {
        let mut next = Vec::new();
        for path in &degrees[p - 1] {
            let last = *path.last().expect("paths are nonempty");
            for &w in g.successors(last) {
                if next.len() == cap {
                    let count = next.len() + 1;
                    return Err(Error::PathExplosion { degree: p, count, cap });
                }
                let mut extended = path.clone();
                extended.push(w);
                next.push(extended);
            }
        }
        degrees.push(next);
    }
    if degrees[0].len() > cap {
        return Err(Error::PathExplosion { degree: 0, count: degrees[0].len(), cap });
    }
    let index = degrees
        .iter()
        .map(|paths| paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
        .collect();
    Ok(AllowedPaths { degrees, index })
}

/// A single boundary term of an allowed path.
enum Face {
    Allowed(usize),
    NonAllowed(Vec<usize>),
}

/// Regular faces of `path` with their signs.
fn faces(g: &Digraph, paths: &AllowedPaths, path: &[usize]) -> Vec<(Face, i64)> {
    let p = path.len() - 1;
    let mut out = Vec::with_capacity(p + 1);
    for k in 0..=p {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if 0 < k && k < p {
            let (a, b) = (path[k - 1], path[k + 1]);
            if a == b {
                continue;
            }
            let mut face = path.to_vec();
            face.remove(k);
            if g.has_edge(a, b) {
                out.push((Face::Allowed(paths.position(&face).expect("allowed face is enumerated")), sign));
            } else {
                out.push((Face::NonAllowed(face), sign));
            }
        } else {
            let face = if k == 0 { &path[1..] } else { &path[..p] };
            out.push((Face::Allowed(paths.position(face).expect("allowed face is enumerated")), sign));
        }
    }
    out
}

/// The boundary `∂: 𝒜_p → 𝒜_{p−1} ⊕ (non-allowed)` as two dense blocks.
#[derive(Clone, Debug)]
pub struct BoundaryBlocks {
    /// `|𝒜_{p−1}| × |𝒜_p|`.
    pub allowed: IntMatrix,
    /// `|non_allowed_paths| × |𝒜_p|`.
    pub non_allowed: IntMatrix,
    /// Non-allowed regular sequences hit by some face, sorted.
    pub non_allowed_paths: Vec<Vec<usize>>,
}

pub fn boundary_on_allowed(g: &Digraph, paths: &AllowedPaths, p: usize) -> BoundaryBlocks {
    assert!(p >= 1 && p <= paths.top(), "degree out of range");
    let cols = paths.count(p);
    let mut allowed = IntMatrix::zeros(paths.count(p - 1), cols);
    let mut bad: BTreeMap<Vec<usize>, Vec<(usize, i64)>> = BTreeMap::new();
    for (j, path) in paths.paths(p).iter().enumerate() {
        for (face, sign) in faces(g, paths, path) {
            match face {
                Face::Allowed(i) => allowed[(i, j)] += sign,
                Face::NonAllowed(seq) => bad.entry(seq).or_default().push((j, sign)),
            }
        }
    }
    let mut non_allowed = IntMatrix::zeros(bad.len(), cols);
    for (i, entries) in bad.values().enumerate() {
        for &(j, sign) in entries {
            non_allowed[(i, j)] += sign;
        }
    }
    BoundaryBlocks { allowed, non_allowed, non_allowed_paths: bad.into_keys().collect() }
}

/// A basis of `Ω_p` in allowed-path coordinates, sorted by pivot.
#[derive(Clone, Debug, Default)]
pub struct OmegaSpace {
    basis: Vec<Chain>,
}

impl OmegaSpace {
    fn units(n: usize) -> Self {
        Self { basis: (0..n).map(|i| Chain::from([(i, BigInt::one())])).collect() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as rows over the allowed paths.
    pub fn basis_matrix(&self, allowed_count: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.basis.len(), allowed_count);
        for (i, chain) in self.basis.iter().enumerate() {
            for (&j, c) in chain {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    /// Coordinates of an allowed chain in this basis.
    fn express(&self, mut chain: Chain) -> Option<Vec<BigInt>> {
        chain.retain(|_, c| !c.is_zero());
        let mut out = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let (&pivot, lead) = b.first_key_value().expect("basis vectors are nonzero");
            let coefficient = match chain.get(&pivot) {
                None => BigInt::zero(),
                Some(x) => {
                    let (q, r) = x.div_rem(lead);
                    if !r.is_zero() {
                        return None;
                    }
                    q
                }
            };
            if !coefficient.is_zero() {
                for (&j, c) in b {
                    let entry = chain.entry(j).or_default();
                    *entry -= &coefficient * c;
                    if entry.is_zero() {
                        chain.remove(&j);
                    }
                }
            }
            out.push(coefficient);
        }
        chain.is_empty().then_some(out)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn omega_space(g: &Digraph, paths: &AllowedPaths, p: usize) -> OmegaSpace {
    if p <= 1 {
        return OmegaSpace::units(paths.count(p));
    }
    let n = paths.count(p);
    let mut target_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut incidences: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (j, path) in paths.paths(p).iter().enumerate() {
        for (face, sign) in faces(g, paths, path) {
            if let Face::NonAllowed(seq) = face {
                let next = target_ids.len();
                let t = *target_ids.entry(seq).or_insert(next);
                incidences[j].push((t, sign));
            }
        }
    }
    let targets = target_ids.len();
    let mut parent: Vec<usize> = (0..n + targets).collect();
    for (j, inc) in incidences.iter().enumerate() {
        for &(t, _) in inc {
            let (a, b) = (find(&mut parent, j), find(&mut parent, n + t));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        let root = find(&mut parent, j);
        blocks.entry(root).or_default().push(j);
    }
    let mut basis = Vec::new();
    for columns in blocks.values() {
        if incidences[columns[0]].is_empty() {
            basis.push(Chain::from([(columns[0], BigInt::one())]));
            continue;
        }
        let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
        for &j in columns {
            for &(t, _) in &incidences[j] {
                let next = rows.len();
                rows.entry(t).or_insert(next);
            }
        }
        let mut local = IntMatrix::zeros(rows.len(), columns.len());
        for (c, &j) in columns.iter().enumerate() {
            for &(t, sign) in &incidences[j] {
                local[(rows[&t], c)] += sign;
            }
        }
        for row in integer_kernel(&local).row_vecs() {
            let chain: Chain = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (columns[c], x.clone()))
                .collect();
            basis.push(chain);
        }
    }
    basis.sort_by_key(|b| *b.first_key_value().expect("kernel vectors are nonzero").0);
    OmegaSpace { basis }
}

/// Allowed boundary of an allowed chain; non-allowed faces must cancel.
fn boundary_chain(g: &Digraph, paths: &AllowedPaths, p: usize, chain: &Chain) -> Option<Chain> {
    let mut allowed = Chain::new();
    let mut stray: HashMap<Vec<usize>, BigInt> = HashMap::new();
    for (&j, c) in chain {
        for (face, sign) in faces(g, paths, &paths.paths(p)[j]) {
            let delta = c * sign;
            match face {
                Face::Allowed(i) => *allowed.entry(i).or_default() += delta,
                Face::NonAllowed(seq) => *stray.entry(seq).or_default() += delta,
            }
        }
    }
    allowed.retain(|_, c| !c.is_zero());
    stray.values().all(Zero::is_zero).then_some(allowed)
}

/// The path chain complex `Ω_•` in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct PathComplex {
    digraph: Arc<Digraph>,
    paths: AllowedPaths,
    omega: Vec<OmegaSpace>,
    boundary: Vec<IntMatrix>,
}

impl PathComplex {
    pub fn new(g: Arc<Digraph>, top: usize, cap: usize) -> Result<Self> {
        let paths = enumerate_allowed_paths(&g, top, cap)?;
        let omega: Vec<OmegaSpace> = (0..=top).map(|p| omega_space(&g, &paths, p)).collect();
        let mut boundary = vec![IntMatrix::zeros(0, omega[0].rank())];
        for p in 1..=top {
            let mut columns = Vec::with_capacity(omega[p].rank());
            for (k, b) in omega[p].basis.iter().enumerate() {
                let image = boundary_chain(&g, &paths, p, b).ok_or_else(|| {
                    Error::ChainMapViolation(format!("Ω_{p} basis vector {k} has a non-allowed boundary"))
                })?;
                let coords = omega[p - 1].express(image).ok_or_else(|| {
                    Error::ChainMapViolation(format!("boundary of Ω_{p} basis vector {k} is not in Ω_{}", p - 1))
                })?;
                columns.push(coords);
            }
            boundary.push(IntMatrix::from_rows(omega[p - 1].rank(), columns)?.transpose());
        }
        Ok(Self { digraph: g, paths, omega, boundary })
    }

    pub fn digraph(&self) -> &Arc<Digraph> {
        &self.digraph
    }

    pub fn top(&self) -> usize {
        self.omega.len() - 1
    }

    pub fn paths(&self) -> &AllowedPaths {
        &self.paths
    }

    pub fn omega(&self, p: usize) -> &OmegaSpace {
        &self.omega[p]
    }

    pub fn omega_rank(&self, p: usize) -> usize {
        self.omega[p].rank()
    }

    /// Basis of `Ω_p` as rows over the allowed `p`-paths.
    pub fn omega_basis(&self, p: usize) -> IntMatrix {
        self.omega[p].basis_matrix(self.paths.count(p))
    }

    /// `D_p: Ω_p → Ω_{p−1}` as an `ω_{p−1} × ω_p` matrix; `D_0` is `0 × ω_0`.
    pub fn boundary(&self, p: usize) -> &IntMatrix {
        &self.boundary[p]
    }

    /// Labels of an allowed path, e.g. `["a", "b", "c"]`.
    pub fn path_labels(&self, p: usize, i: usize) -> Vec<&str> {
        self.paths.paths(p)[i].iter().map(|&v| self.digraph.label(v)).collect()
    }
}

/// Rank and torsion of one (co)homology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRecord {
    pub degree: usize,
    pub rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| {
        i64::try_from(x).map_or_else(|_| serde_json::Value::String(x.to_string()), serde_json::Value::from)
    }))
}

/// Groups of degrees `0..=p_max` together with the complex they came from.
#[derive(Clone, Debug)]
pub struct GradedGroups {
    complex: Arc<PathComplex>,
    groups: Vec<Subquotient>,
}

impl GradedGroups {
    pub fn complex(&self) -> &Arc<PathComplex> {
        &self.complex
    }

    pub fn digraph(&self) -> &Arc<Digraph> {
        self.complex.digraph()
    }

    pub fn p_max(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, p: usize) -> &FgAbGroup {
        self.groups[p].group()
    }

    pub fn presentation(&self, p: usize) -> &Subquotient {
        &self.groups[p]
    }

    pub fn records(&self) -> Vec<GroupRecord> {
        (0..self.groups.len())
            .map(|p| GroupRecord { degree: p, rank: self.group(p).rank(), torsion: self.group(p).torsion() })
            .collect()
    }
}

pub type HomologyResult = GradedGroups;
pub type CohomologyResult = GradedGroups;

fn complex_for(g: Arc<Digraph>, p_max: usize, cap: usize) -> Result<Arc<PathComplex>> {
    Ok(Arc::new(PathComplex::new(g, p_max + 1, cap)?))
}

/// `H_p = ker D_p / im D_{p+1}` for `p ≤ p_max`.
pub fn homology_of(complex: Arc<PathComplex>, p_max: usize) -> Result<HomologyResult> {
    assert!(p_max < complex.top(), "complex must reach degree p_max + 1");
    let groups = (0..=p_max)
        .map(|p| {
            let cycles = integer_kernel(complex.boundary(p));
            let boundaries = complex.boundary(p + 1).transpose();
            Subquotient::new(&cycles, &boundaries)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedGroups { complex, groups })
}

/// `H^p = ker d^p / im d^{p−1}` for `p ≤ p_max`, where `d^p = D_{p+1}ᵀ`.
pub fn cohomology_of(complex: Arc<PathComplex>, p_max: usize) -> Result<CohomologyResult> {
    assert!(p_max < complex.top(), "complex must reach degree p_max + 1");
    let groups = (0..=p_max)
        .map(|p| {
            let cocycles = integer_kernel(&complex.boundary(p + 1).transpose());
            Subquotient::new(&cocycles, complex.boundary(p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedGroups { complex, groups })
}

pub fn homology(g: Arc<Digraph>, p_max: usize) -> Result<HomologyResult> {
    homology_of(complex_for(g, p_max, DEFAULT_PATH_CAP)?, p_max)
}

pub fn cohomology(g: Arc<Digraph>, p_max: usize) -> Result<CohomologyResult> {
    cohomology_of(complex_for(g, p_max, DEFAULT_PATH_CAP)?, p_max)
}

pub fn cohomology_with_cap(g: Arc<Digraph>, p_max: usize, cap: usize) -> Result<CohomologyResult> {
    cohomology_of(complex_for(g, p_max, cap)?, p_max)
}

/// `f_#: Ω_p(G) → Ω_p(H)` in Ω coordinates, an `ω_p(H) × ω_p(G)` matrix.
pub fn pushforward(f: &DigraphMap, src: &PathComplex, tgt: &PathComplex, p: usize) -> Result<IntMatrix> {
    let mut columns = Vec::with_capacity(src.omega_rank(p));
    for (k, b) in src.omega[p].basis.iter().enumerate() {
        let mut image = Chain::new();
        for (&j, c) in b {
            let mapped: Vec<usize> = src.paths.paths(p)[j].iter().map(|&v| f.apply(v)).collect();
            if mapped.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let i = tgt.paths.position(&mapped).ok_or_else(|| {
                Error::ChainMapViolation(format!("image of an allowed {p}-path is not allowed"))
            })?;
            *image.entry(i).or_default() += c;
        }
        let coords = tgt.omega[p]
            .express(image)
            .ok_or_else(|| Error::ChainMapViolation(format!("image of Ω_{p} basis vector {k} is not in Ω_{p}")))?;
        columns.push(coords);
    }
    Ok(IntMatrix::from_rows(tgt.omega_rank(p), columns)?.transpose())
}

fn same_digraph(a: &Arc<Digraph>, b: &Arc<Digraph>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `f^*: H^p(H) → H^p(G)` for `p ≤ min(p_max)`, from cohomology of the
/// codomain (`src`) and of the domain (`tgt`).
pub fn induced_cochain_map(f: &DigraphMap, src: &CohomologyResult, tgt: &CohomologyResult) -> Result<Vec<GroupHom>> {
    if !same_digraph(f.codomain(), src.digraph()) || !same_digraph(f.domain(), tgt.digraph()) {
        return Err(Error::DomainMismatch);
    }
    let p_max = src.p_max().min(tgt.p_max());
    let (cg, ch) = (tgt.complex(), src.complex());
    let chain_maps = (0..=p_max + 1).map(|p| pushforward(f, cg, ch, p)).collect::<Result<Vec<_>>>()?;
    for p in 1..=p_max + 1 {
        let left = ch.boundary(p) * &chain_maps[p];
        let right = &chain_maps[p - 1] * cg.boundary(p);
        if left != right {
            return Err(Error::ChainMapViolation(format!("pushforward does not commute with ∂ in degree {p}")));
        }
    }
    (0..=p_max)
        .map(|p| hom_induced(&chain_maps[p].transpose(), src.presentation(p), tgt.presentation(p)))
        .collect()
}

/// Convenience wrapper computing both cohomologies first.
pub fn induced_maps(f: &DigraphMap, p_max: usize) -> Result<Vec<GroupHom>> {
    let src = cohomology(f.codomain().clone(), p_max)?;
    let tgt = cohomology(f.domain().clone(), p_max)?;
    induced_cochain_map(f, &src, &tgt)
}
