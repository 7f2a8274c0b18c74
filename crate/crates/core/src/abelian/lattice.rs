use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::normal_form::hermite_basis;

/// A subgroup of `ℤⁿ`, kept as its Hermite-normal-form basis.
///
/// The basis is canonical, so two lattices are equal exactly when their
/// bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The lattice spanned by the rows of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let (basis, pivots) = hermite_basis(generators);
        Self { dim: generators.cols(), basis, pivots }
    }

    pub fn from_vectors(dim: usize, vectors: Vec<Vec<BigInt>>) -> Self {
        Self::from_generators(&IntMatrix::from_rows(dim, vectors).expect("vectors of the lattice dimension"))
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: IntMatrix::zeros(0, dim), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self { dim, basis: IntMatrix::identity(dim), pivots: (0..dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis vectors as rows.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is not in the lattice.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        for (i, &p) in self.pivots.iter().enumerate() {
            let (q, r) = rest[p].div_rem(&self.basis[(i, p)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(self.basis.row(i)).skip(p) {
                    if !b.is_zero() {
                        *x -= &q * b;
                    }
                }
            }
            out.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(out)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        self.dim == other.dim && other.basis.row_vecs().iter().all(|r| self.contains(r))
    }

    /// The vector with the given basis coordinates.
    pub fn combine(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.rank(), "coordinate length");
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, row) in coords.iter().zip(self.basis.row_vecs()) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x += c * b;
                }
            }
        }
        out
    }

    /// `self + other`.
    pub fn join(&self, other: &Lattice) -> Lattice {
        let stacked = self.basis.vstack(&other.basis).expect("lattices of equal dimension");
        Lattice::from_generators(&stacked)
    }

    /// `self ⊕ other` inside `ℤ^{m+n}`.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_generators(&self.basis.block_diagonal(&other.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn membership_and_coordinates() {
        let l = Lattice::from_generators(&IntMatrix::from_i64(&[&[2, 2], &[0, 3]]));
        assert!(l.contains(&v(&[2, 5])));
        assert!(!l.contains(&v(&[1, 1])));
        let c = l.coords(&v(&[4, 1])).unwrap();
        assert_eq!(l.combine(&c), v(&[4, 1]));
        assert_eq!(Lattice::from_generators(&IntMatrix::from_i64(&[&[1, 1], &[2, 2]])).rank(), 1);
    }

    #[test]
    fn equality_is_canonical() {
        let a = Lattice::from_generators(&IntMatrix::from_i64(&[&[1, 1], &[1, -1]]));
        let b = Lattice::from_generators(&IntMatrix::from_i64(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(a, b);
        assert!(Lattice::full(2).contains_lattice(&a));
        assert!(!a.contains_lattice(&Lattice::full(2)));
        assert_eq!(a.join(&Lattice::full(2)), Lattice::full(2));
        assert_eq!(Lattice::zero(1).direct_sum(&Lattice::full(1)).rank(), 1);
    }
}
