//! Finitely generated abelian groups, homomorphisms, subgroups and
//! subquotient presentations.
//!
//! A [`FgAbGroup`] is `ℤ/d₁ ⊕ … ⊕ ℤ/dᵣ` in explicit coordinates, where a
//! modulus of zero stands for a copy of `ℤ`. Elements are coordinate vectors
//! reduced into `[0, dᵢ)` on torsion coordinates, so equal elements have
//! equal vectors and homomorphisms can be compared entrywise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use super::normal_form::{integer_kernel, smith_normal_form};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    moduli: Vec<BigInt>,
}

impl FgAbGroup {
    /// Moduli must be nonnegative; zero means `ℤ`.
    pub fn from_moduli(moduli: Vec<BigInt>) -> Self {
        assert!(moduli.iter().all(|d| d >= &BigInt::zero()), "moduli are nonnegative");
        Self { moduli }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self::from_moduli(vec![BigInt::zero(); rank])
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_moduli(vec![BigInt::from(order)])
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// Number of `ℤ` summands.
    pub fn rank(&self) -> usize {
        self.moduli.iter().filter(|d| d.is_zero()).count()
    }

    /// Torsion invariant factors `d₁ | d₂ | …`, all greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        let torsion: Vec<BigInt> = self.moduli.iter().filter(|d| !d.is_zero()).cloned().collect();
        smith_normal_form(&IntMatrix::diagonal(&torsion))
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0 && self.torsion().is_empty()
    }

    /// Isomorphism of abstract groups: same rank and torsion.
    pub fn isomorphic(&self, other: &FgAbGroup) -> bool {
        self.rank() == other.rank() && self.torsion() == other.torsion()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.len()]
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn reduce(&self, x: &mut [BigInt]) {
        assert_eq!(x.len(), self.len(), "element length");
        for (v, d) in x.iter_mut().zip(&self.moduli) {
            if !d.is_zero() {
                *v = v.mod_floor(d);
            }
        }
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter()
            .zip(&self.moduli)
            .all(|(v, d)| if d.is_zero() { v.is_zero() } else { v.is_multiple_of(d) })
    }

    /// The relation lattice `⊕ dᵢℤ` inside `ℤʳ`.
    pub fn relations(&self) -> Lattice {
        let rows = self
            .moduli
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut row = vec![BigInt::zero(); self.len()];
                row[i] = d.clone();
                row
            })
            .collect();
        Lattice::from_vectors(self.len(), rows)
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        Self::from_moduli(self.moduli.iter().chain(&other.moduli).cloned().collect())
    }
}

/// A homomorphism given by its matrix on coordinates: `φ(x) = M·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks that the matrix respects the relations of the source.
    pub fn new(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map from {} to {} coordinates",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        for (i, t) in target.moduli.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for j in 0..matrix.cols() {
                matrix[(i, j)] = matrix[(i, j)].mod_floor(t);
            }
        }
        for (j, d) in source.moduli.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let image: Vec<BigInt> = matrix.column(j).iter().map(|x| x * d).collect();
            if !target.is_zero_element(&image) {
                return Err(Error::IllDefined(format!("generator {j} of order {d} maps to an element of other order")));
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        Self::new(group.clone(), group.clone(), IntMatrix::identity(group.len())).expect("identity is well defined")
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Self::new(source.clone(), target.clone(), IntMatrix::zeros(target.len(), source.len()))
            .expect("zero is well defined")
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.apply(x);
        self.target.reduce(&mut y);
        y
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &GroupHom) -> Result<GroupHom> {
        if self.target != after.source {
            return Err(Error::TargetMismatch);
        }
        GroupHom::new(self.source.clone(), after.target.clone(), &after.matrix * &self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `x ↦ (self(x), other(x))` into the direct sum of the targets.
    pub fn pair(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source {
            return Err(Error::DimensionMismatch("paired maps need a common source".into()));
        }
        GroupHom::new(
            self.source.clone(),
            self.target.direct_sum(&other.target),
            self.matrix.vstack(&other.matrix)?,
        )
    }

    /// `(x, y) ↦ self(x) + other(y)` out of the direct sum of the sources.
    pub fn copair(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.target {
            return Err(Error::TargetMismatch);
        }
        GroupHom::new(
            self.source.direct_sum(&other.source),
            self.target.clone(),
            self.matrix.hstack(&other.matrix)?,
        )
    }

    pub fn negate(&self) -> GroupHom {
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.negate()).expect("negation is well defined")
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated_by(&self.target, self.matrix.transpose().into_rows())
    }

    pub fn kernel(&self) -> Subgroup {
        let (s, t) = (self.source.len(), self.target.len());
        let relations = IntMatrix::diagonal(&self.target.moduli);
        let system = self.matrix.hstack(&relations).expect("same row count");
        let kernel = integer_kernel(&system);
        let projected: Vec<Vec<BigInt>> = kernel.row_vecs().iter().map(|r| r[..s].to_vec()).collect();
        debug_assert_eq!(kernel.cols(), s + t);
        Subgroup::generated_by(&self.source, projected)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// A subgroup, stored as the lattice of coordinate vectors that represent
/// its elements. The lattice always contains the relations of the ambient
/// group, so equality of subgroups is equality of lattices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: FgAbGroup,
    lattice: Lattice,
}

impl Subgroup {
    pub fn generated_by(ambient: &FgAbGroup, generators: Vec<Vec<BigInt>>) -> Self {
        let spanned = Lattice::from_vectors(ambient.len(), generators);
        Self { ambient: ambient.clone(), lattice: spanned.join(&ambient.relations()) }
    }

    pub fn whole(ambient: &FgAbGroup) -> Self {
        Self { ambient: ambient.clone(), lattice: Lattice::full(ambient.len()) }
    }

    pub fn zero(ambient: &FgAbGroup) -> Self {
        Self { ambient: ambient.clone(), lattice: ambient.relations() }
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.lattice.contains(x)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.lattice.contains_lattice(&other.lattice)
    }

    pub fn is_whole(&self) -> bool {
        self.lattice == Lattice::full(self.ambient.len())
    }

    pub fn is_zero(&self) -> bool {
        self.lattice == self.ambient.relations()
    }

    /// The subgroup as an abstract group together with its inclusion.
    pub fn as_group(&self) -> (FgAbGroup, GroupHom) {
        let presentation = Subquotient::new(self.lattice.basis(), self.ambient.relations().basis())
            .expect("relations lie in every subgroup");
        let group = presentation.group().clone();
        let columns: Vec<Vec<BigInt>> = (0..group.len()).map(|i| presentation.lift(i)).collect();
        let matrix = IntMatrix::from_rows(self.ambient.len(), columns).expect("lift length").transpose();
        let inclusion = GroupHom::new(group.clone(), self.ambient.clone(), matrix).expect("inclusion is well defined");
        (group, inclusion)
    }
}

/// `ker / im` presented inside a free ambient lattice `ℤⁿ`.
///
/// The quotient is diagonalised by a Smith normal form of the boundary
/// generators written in a basis of the cycles. Components with invariant
/// factor one vanish; the remaining ones are the coordinates of [`group`].
///
/// [`group`]: Subquotient::group
#[derive(Clone, Debug)]
pub struct Subquotient {
    cycles: Lattice,
    boundaries: Lattice,
    /// Cycle coordinates `x` become diagonal coordinates `x · V`.
    v: IntMatrix,
    v_inv: IntMatrix,
    diagonal: Vec<BigInt>,
    visible: Vec<usize>,
    group: FgAbGroup,
}

impl Subquotient {
    /// Rows of `kernel_gens` span the cycles, rows of `image_gens` the
    /// boundaries, which must lie among the cycles.
    pub fn new(kernel_gens: &IntMatrix, image_gens: &IntMatrix) -> Result<Self> {
        if kernel_gens.cols() != image_gens.cols() {
            return Err(Error::DimensionMismatch(format!(
                "cycles in ℤ^{} and boundaries in ℤ^{}",
                kernel_gens.cols(),
                image_gens.cols()
            )));
        }
        let cycles = Lattice::from_generators(kernel_gens);
        let boundaries = Lattice::from_generators(image_gens);
        let k = cycles.rank();
        let coords = boundaries
            .basis()
            .row_vecs()
            .iter()
            .map(|b| cycles.coords(b).ok_or(Error::NotASubgroup))
            .collect::<Result<Vec<_>>>()?;
        let relation_matrix = IntMatrix::from_rows(k, coords).expect("coordinate length");
        let smith = smith_normal_form(&relation_matrix);
        let diagonal: Vec<BigInt> = (0..k).map(|i| smith.diagonal(i)).collect();
        let visible: Vec<usize> = (0..k).filter(|&i| !diagonal[i].is_one()).collect();
        let group = FgAbGroup::from_moduli(visible.iter().map(|&i| diagonal[i].clone()).collect());
        Ok(Self { cycles, boundaries, v: smith.v, v_inv: smith.v_inv, diagonal, visible, group })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn cycles(&self) -> &Lattice {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Lattice {
        &self.boundaries
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.dim()
    }

    fn diagonal_coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = self.cycles.coords(v)?;
        let k = self.cycles.rank();
        Some(
            (0..k)
                .map(|j| (0..k).filter(|&i| !x[i].is_zero()).map(|i| &x[i] * &self.v[(i, j)]).sum())
                .collect(),
        )
    }

    /// Class of a cycle, or `None` if `v` is not a cycle.
    pub fn class_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.diagonal_coords(v)?;
        let mut out: Vec<BigInt> = self.visible.iter().map(|&i| y[i].clone()).collect();
        self.group.reduce(&mut out);
        Some(out)
    }

    /// Whether a cycle is a boundary.
    pub fn is_boundary(&self, v: &[BigInt]) -> bool {
        self.boundaries.contains(v)
    }

    fn lift_component(&self, component: usize) -> Vec<BigInt> {
        self.cycles.combine(self.v_inv.row(component))
    }

    /// A cycle representing generator `i` of [`Subquotient::group`].
    pub fn lift(&self, i: usize) -> Vec<BigInt> {
        self.lift_component(self.visible[i])
    }
}

/// The homomorphism `src → tgt` induced by an ambient matrix `lift`
/// (`n_tgt × n_src`, acting on column vectors).
///
/// Fails with [`Error::IllDefined`] unless `lift` maps cycles to cycles and
/// boundaries to boundaries.
pub fn hom_induced(lift: &IntMatrix, src: &Subquotient, tgt: &Subquotient) -> Result<GroupHom> {
    if lift.cols() != src.ambient_dim() || lift.rows() != tgt.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} lift between ambients ℤ^{} and ℤ^{}",
            lift.rows(),
            lift.cols(),
            src.ambient_dim(),
            tgt.ambient_dim()
        )));
    }
    let mut columns = Vec::with_capacity(src.group.len());
    for component in 0..src.cycles.rank() {
        let image = lift.apply(&src.lift_component(component));
        let class = tgt
            .class_of(&image)
            .ok_or_else(|| Error::IllDefined(format!("cycle {component} maps outside the target cycles")))?;
        if src.diagonal[component].is_one() {
            if !tgt.group.is_zero_element(&class) {
                return Err(Error::IllDefined(format!("boundary component {component} maps to a nonzero class")));
            }
        } else {
            columns.push(class);
        }
    }
    let matrix = IntMatrix::from_rows(tgt.group.len(), columns)?.transpose();
    GroupHom::new(src.group.clone(), tgt.group.clone(), matrix)
}

/// `B ×_A C` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub group: FgAbGroup,
    /// The fiber product as a subgroup of `B ⊕ C`.
    pub subgroup: Subgroup,
    pub pr1: GroupHom,
    pub pr2: GroupHom,
}

/// `{(b, c) : φ(b) = ψ(c)}` for `φ: B → A` and `ψ: C → A`.
pub fn fiber_product(phi: &GroupHom, psi: &GroupHom) -> Result<FiberProduct> {
    if phi.target != psi.target {
        return Err(Error::TargetMismatch);
    }
    let difference = phi.copair(&psi.negate())?;
    let subgroup = difference.kernel();
    let (group, inclusion) = subgroup.as_group();
    let nb = phi.source.len();
    let nc = psi.source.len();
    let rows = inclusion.matrix().row_vecs();
    let top = IntMatrix::from_rows(group.len(), rows[..nb].to_vec())?;
    let bottom = IntMatrix::from_rows(group.len(), rows[nb..nb + nc].to_vec())?;
    Ok(FiberProduct {
        pr1: GroupHom::new(group.clone(), phi.source.clone(), top)?,
        pr2: GroupHom::new(group.clone(), psi.source.clone(), bottom)?,
        group,
        subgroup,
    })
}
