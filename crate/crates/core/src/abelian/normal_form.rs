//! Hermite and Smith normal forms with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form `U · A = H`.
///
/// `H` is in row echelon form, each pivot is positive, and entries above a
/// pivot lie in `[0, pivot)`. The nonzero rows of `H` come first.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> Hermite {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let pivots = hermite_in_place(&mut h, Some(&mut u));
    Hermite { h, u, pivots }
}

/// Nonzero rows of the Hermite normal form and their pivot columns.
pub fn hermite_basis(a: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut h = a.clone();
    let pivots = hermite_in_place(&mut h, None);
    let rows = h.into_rows().into_iter().take(pivots.len()).collect();
    (IntMatrix::from_rows(a.cols(), rows).expect("rows of equal length"), pivots)
}

fn hermite_in_place(h: &mut IntMatrix, mut u: Option<&mut IntMatrix>) -> Vec<usize> {
    let (m, n) = (h.rows(), h.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        loop {
            let best = (row..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &j| h[(i, col)].abs().cmp(&h[(j, col)].abs()).then(i.cmp(&j)));
            let Some(best) = best else { break };
            if best != row {
                h.swap_rows(best, row);
                if let Some(u) = u.as_deref_mut() {
                    u.swap_rows(best, row);
                }
            }
            let mut clean = true;
            for i in row + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, row, &q);
                }
                clean &= h[(i, col)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(row);
            }
        }
        for i in 0..row {
            let q = -h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &q);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(i, row, &q);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Smith normal form `U · A · V = S`, with `V⁻¹` kept for coordinate changes.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Diagonal entry `i`, zero past the rank or the matrix edge.
    pub fn diagonal(&self, i: usize) -> BigInt {
        if i < self.rank {
            self.s[(i, i)].clone()
        } else {
            BigInt::zero()
        }
    }
}

/// Entry of least nonzero magnitude in the block `[t.., t..]`, ties broken by
/// lowest row and then lowest column.
fn least_entry(a: &IntMatrix, t: usize, rows: impl Iterator<Item = usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.magnitude() < a[(bi, bj)].magnitude()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut t = 0;

    let move_to_pivot = |s: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, (i, j): (usize, usize), t: usize| {
        if i != t {
            s.swap_rows(i, t);
            u.swap_rows(i, t);
        }
        if j != t {
            s.swap_cols(j, t);
            v.swap_cols(j, t);
            v_inv.swap_rows(j, t);
        }
    };

    while t < m.min(n) {
        let Some(pivot) = least_entry(&s, t, t..m) else { break };
        move_to_pivot(&mut s, &mut u, &mut v, &mut v_inv, pivot, t);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                v_inv.add_row_multiple(t, j, &-&q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                // A remainder is now smaller than the pivot; promote the least
                // entry of the pivot row and column.
                let cross = (t..m)
                    .map(|i| (i, t))
                    .chain((t + 1..n).map(|j| (t, j)))
                    .filter(|&p| !s[p].is_zero())
                    .min_by(|&p, &q| s[p].magnitude().cmp(s[q].magnitude()).then(p.cmp(&q)))
                    .expect("pivot row or column is nonzero");
                move_to_pivot(&mut s, &mut u, &mut v, &mut v_inv, cross, t);
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { u, s, v, v_inv, rank: t }
}

/// Basis of `{x ∈ ℤⁿ : A·x = 0}` as the rows of the returned matrix.
///
/// The rows are in Hermite normal form, so the basis is canonical. The
/// kernel of an integer matrix is saturated, and so is this basis.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let hermite = hermite_normal_form(&a.transpose());
    let rank = hermite.rank();
    let rows: Vec<Vec<BigInt>> = hermite.u.into_rows().into_iter().skip(rank).collect();
    let raw = IntMatrix::from_rows(a.cols(), rows).expect("rows of equal length");
    hermite_basis(&raw).0
}
