use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Dense matrix over arbitrary-precision integers, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        Ok(Self { rows: rows.len(), cols, data: rows })
    }

    /// Builds a matrix from small integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, data).expect("ragged literal matrix")
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m.data[i][i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.push(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.data[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.data[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.data.iter().map(|row| dot(row, v)).collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diagonal(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for (i, row) in self.data.iter().enumerate() {
            out.data[i][..self.cols].clone_from_slice(row);
        }
        for (i, row) in other.data.iter().enumerate() {
            out.data[self.rows + i][self.cols..].clone_from_slice(row);
        }
        out
    }

    /// Columns `range` of every row.
    pub fn column_slice(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let data = self.data.iter().map(|r| r[range.clone()].to_vec()).collect();
        Self { rows: self.rows, cols: range.len(), data }
    }

    pub fn negate(&self) -> IntMatrix {
        let data = self.data.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().flatten().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.data {
            row.swap(i, j);
        }
    }

    /// Row `target += k · row source`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let (t, s) = two_rows(&mut self.data, target, source);
        for (a, b) in t.iter_mut().zip(s.iter()) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    /// Column `target += k · column source`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in &mut self.data {
            if !row[source].is_zero() {
                let delta = k * &row[source];
                row[target] += delta;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -std::mem::take(x);
        }
    }
}

fn two_rows<T>(data: &mut [T], target: usize, source: usize) -> (&mut T, &T) {
    assert_ne!(target, source);
    if target < source {
        let (lo, hi) = data.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = data.split_at_mut(target);
        (&mut hi[0], &lo[source])
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i][j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i][j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix::mul(self, rhs).expect("matrix dimensions")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Serializes as nested arrays of decimal strings, so large entries survive.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for row in &self.data {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_stacking() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), IntMatrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.hstack(&b).unwrap().cols(), 4);
        assert_eq!(a.vstack(&b).unwrap().rows(), 4);
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_err());
        let v = a.apply(&[BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(v, vec![BigInt::from(-1), BigInt::from(-1)]);
    }

    #[test]
    fn elementary_operations() {
        let mut m = IntMatrix::identity(2);
        m.add_row_multiple(0, 1, &BigInt::from(3));
        assert_eq!(m, IntMatrix::from_i64(&[&[1, 3], &[0, 1]]));
        m.add_col_multiple(0, 1, &BigInt::from(-2));
        assert_eq!(m, IntMatrix::from_i64(&[&[-5, 3], &[-2, 1]]));
        m.negate_row(1);
        m.swap_cols(0, 1);
        assert_eq!(m, IntMatrix::from_i64(&[&[3, -5], &[-1, 2]]));
    }

    #[test]
    fn serializes_as_strings() {
        let m = IntMatrix::from_i64(&[&[1, -2]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["1","-2"]]"#);
    }
}
