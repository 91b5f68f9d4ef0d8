//! Dense exact matrices over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{dim_err, Result};
use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>, // row-major
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_scalar).collect())
            .collect();
        write!(f, "ScalarMatrix{rows:?}")
    }
}

impl ScalarMatrix {
    /// Zero matrix. Zero-sized shapes are allowed and stand for maps into or
    /// out of the zero space.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return dim_err("ragged rows");
        }
        Ok(ScalarMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| crate::scalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return dim_err(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return dim_err(format!("vector of length {} against {} columns", v.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Transforms to reduced row echelon form in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.entries.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.get(row, col).recip();
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col).clone();
                for j in col..self.cols {
                    if self.get(row, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &factor * self.get(row, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut r = self.clone();
        let pivots = r.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(i, f).clone();
                }
                x
            })
            .collect()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(k, j, self.get(i, j).clone());
            }
        }
        out
    }
}

pub fn matrix_rank(m: &ScalarMatrix) -> usize {
    m.clone().row_reduce().len()
}

pub fn matrix_trace(m: &ScalarMatrix) -> Result<Scalar> {
    if !m.is_square() {
        return dim_err(format!("trace of non-square {}x{} matrix", m.rows, m.cols));
    }
    Ok((0..m.rows).fold(Scalar::zero(), |acc, i| acc + m.get(i, i)))
}

pub fn matrix_product(a: &ScalarMatrix, b: &ScalarMatrix) -> Result<ScalarMatrix> {
    if a.cols != b.rows {
        return dim_err(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        ));
    }
    let mut out = ScalarMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if bkj.is_zero() {
                    continue;
                }
                let v = out.get(i, j) + aik * bkj;
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// Incrementally maintained row-echelon basis of a subspace of `Q^n`.
///
/// Used to track spans of vectorised matrices without re-reducing from
/// scratch on every insertion.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<(usize, Vec<Scalar>)>, // (pivot, normalised row)
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*pivot) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.len, "vector length does not match basis");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pivot) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pivot].recip();
        for x in w.iter_mut().skip(pivot) {
            *x *= &inv;
        }
        // Keep existing rows reduced against the new pivot so that reduction
        // stays a single pass.
        for (_, row) in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, r) in row.iter_mut().zip(&w).skip(pivot) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn rank_examples() {
        assert_eq!(matrix_rank(&ScalarMatrix::identity(3)), 3);
        assert_eq!(matrix_rank(&ScalarMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap()), 1);
        assert_eq!(matrix_rank(&ScalarMatrix::zeros(2, 3)), 0);
        assert_eq!(matrix_rank(&ScalarMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(matrix_trace(&ScalarMatrix::zeros(4, 4)).unwrap(), int(0));
        assert_eq!(matrix_trace(&ScalarMatrix::identity(3)).unwrap(), int(3));
        assert!(matrix_trace(&ScalarMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn product_shapes() {
        let a = ScalarMatrix::from_i64(&[&[1, 2, 3]]).unwrap();
        let b = ScalarMatrix::from_i64(&[&[1], &[1], &[1]]).unwrap();
        assert_eq!(matrix_product(&a, &b).unwrap(), ScalarMatrix::from_i64(&[&[6]]).unwrap());
        assert!(matrix_product(&a, &a).is_err());
    }

    #[test]
    fn nullspace_and_inverse() {
        let m = ScalarMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![int(-2), int(1)]]);
        assert!(m.inverse().is_none());
        let a = ScalarMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(matrix_product(&a, &inv).unwrap(), ScalarMatrix::identity(2));
        let h = ScalarMatrix::from_rows(vec![vec![ratio(1, 2), int(0)], vec![int(0), int(3)]]).unwrap();
        assert_eq!(h.inverse().unwrap().get(0, 0), &int(2));
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&[int(1), int(1), int(0)]));
        assert!(b.insert(&[int(0), int(1), int(1)]));
        assert!(!b.insert(&[int(1), int(2), int(1)]));
        assert!(b.contains(&[int(2), int(0), int(-2)]));
        assert!(!b.contains(&[int(0), int(0), int(1)]));
        assert_eq!(b.dim(), 2);
    }
}
