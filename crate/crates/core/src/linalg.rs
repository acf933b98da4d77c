//! Exact Gaussian elimination over `Rational` and `GaussianRational`.
//!
//! Every geometric predicate in the crate reduces to a rank, kernel, or
//! solve call here. Matrices are tiny (at most about 8x8), so rows are plain
//! `Vec`s and elimination clones freely.

use crate::error::{Error, Result};
use crate::scalar::{Field, GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    cols: usize,
    rows: Vec<Vec<T>>,
}

pub type RealMatrix = Matrix<Rational>;
pub type ComplexMatrix = Matrix<GaussianRational>;

impl<T: Field> Matrix<T> {
    /// Builds a matrix whose rows all have `cols` entries.
    pub fn new(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Infers the column count from the first row. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::new(cols, rows).expect("ragged matrix rows")
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Self { cols: n, rows }
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self {
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows.len());
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .zip(&self.rows)
                    .fold(T::zero(), |acc, (a, r)| acc + a.clone() * r[j].clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows.len());
        let rows = self.rows.iter().map(|r| other.vec_mul(r)).collect();
        Self {
            cols: other.cols,
            rows,
        }
    }

    /// Stacks the rows of `other` under `self`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self {
            cols: self.cols,
            rows,
        }
    }

    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self) -> (Vec<Vec<T>>, Vec<usize>) {
        let mut a = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let pv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = x.clone() / pv.clone();
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let factor = a[i][c].clone();
                    let pivot_row = a[r].clone();
                    for (x, p) in a[i].iter_mut().zip(pivot_row).skip(c) {
                        *x = x.clone() - factor.clone() * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, each vector scaled so its first nonzero
    /// entry is one.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (reduced, pivots) = self.rref();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            normalize_leading(v)
        })
        .collect()
    }

    /// One exact solution of `M x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(rhs.len(), self.rows.len());
        let augmented = Matrix {
            cols: self.cols + 1,
            rows: self
                .rows
                .iter()
                .zip(rhs)
                .map(|(r, b)| {
                    let mut r = r.clone();
                    r.push(b.clone());
                    r
                })
                .collect(),
        };
        let (reduced, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (row, &pc) in reduced.iter().zip(&pivots) {
            x[pc] = row[self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.cols;
        if self.rows.len() != n {
            return None;
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<T> = (0..n)
                .map(|i| if i == j { T::one() } else { T::zero() })
                .collect();
            cols.push(self.solve(&e)?);
        }
        Some(
            Matrix {
                cols: n,
                rows: cols,
            }
            .transpose(),
        )
    }

    /// Canonical basis of the row span (its RREF), suitable for equality.
    pub fn row_space(&self) -> Vec<Vec<T>> {
        self.rref().0
    }
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Scales `v` so that its first nonzero entry is one. Zero vectors pass through.
pub fn normalize_leading<T: Field>(v: Vec<T>) -> Vec<T> {
    match v.iter().find(|x| !x.is_zero()).cloned() {
        Some(lead) => v.into_iter().map(|x| x / lead.clone()).collect(),
        None => v,
    }
}

pub fn rank_real(m: &RealMatrix) -> usize {
    m.rank()
}

pub fn kernel_complex(m: &ComplexMatrix) -> Vec<Vec<GaussianRational>> {
    m.kernel()
}

pub fn solve_complex(m: &ComplexMatrix, rhs: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    m.solve(rhs)
}

/// Basis of the Euclidean orthogonal complement of the row span of `m`.
pub fn orthogonal_complement(m: &RealMatrix) -> RealMatrix {
    Matrix {
        cols: m.cols,
        rows: m.kernel(),
    }
}

/// True when the row spans of `a` and `b` coincide.
pub fn same_span<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> bool {
    let ra = a.rank();
    ra == b.rank() && a.stack(b).rank() == ra
}
