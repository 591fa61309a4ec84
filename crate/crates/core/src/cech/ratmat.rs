//! Dense matrices over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: BigRational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| rat(*x, 1)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// The `size x size` block at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> RatMatrix {
        Self::from_fn(size, size, |i, j| self[(bi * size + i, bj * size + j)].clone())
    }

    /// Assembles a matrix from equally sized square blocks.
    pub fn from_blocks(blocks: &[Vec<RatMatrix>], size: usize) -> RatMatrix {
        let br = blocks.len();
        let bc = blocks.first().map_or(0, |r| r.len());
        Self::from_fn(br * size, bc * size, |i, j| {
            blocks[i / size][j / size][(i % size, j % size)].clone()
        })
    }

    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column_range(&self, start: usize, end: usize) -> RatMatrix {
        Self::from_fn(self.rows, end - start, |i, j| self[(i, start + j)].clone())
    }

    pub fn row_range(&self, start: usize, end: usize) -> RatMatrix {
        Self::from_fn(end - start, self.cols, |i, j| self[(start + i, j)].clone())
    }

    // Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].recip();
            for j in 0..self.cols {
                let x = &self[(row, j)] * &inv;
                self[(row, j)] = x;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let f = self[(r, col)].clone();
                    for j in 0..self.cols {
                        let x = &self[(r, j)] - &(&f * &self[(row, j)]);
                        self[(r, j)] = x;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Indices of a maximal independent set of columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.clone().rref()
    }

    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n));
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix(format!("{n}x{n} matrix")));
        }
        Ok(aug.column_range(n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Solves `self * X = rhs`, requiring a unique solution.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("solve: row counts differ".into()));
        }
        let n = self.cols;
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(Error::InconsistentSystem);
        }
        if pivots.len() < n {
            return Err(Error::NotABasis("solution is not unique".into()));
        }
        Ok(aug.row_range(0, n).column_range(n, n + rhs.cols))
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "matrix product dimensions");
        RatMatrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(BigRational::zero(), |acc, k| acc + &self[(i, k)] * &o[(k, j)])
        })
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &o[(i, j)])
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, o: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &o[(i, j)])
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_rows() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(2));
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[0, 2], &[1, 1]]);
        let b = RatMatrix::from_i64(&[&[1], &[4], &[3]]);
        assert_eq!(a.solve(&b).unwrap(), RatMatrix::from_i64(&[&[1], &[2]]));
        let bad = RatMatrix::from_i64(&[&[1], &[4], &[0]]);
        assert_eq!(a.solve(&bad), Err(Error::InconsistentSystem));
    }

    #[test]
    fn blocks() {
        let m = RatMatrix::from_i64(&[&[1, 2, 3, 4], &[5, 6, 7, 8], &[9, 10, 11, 12], &[13, 14, 15, 16]]);
        let b = m.block(1, 0, 2);
        assert_eq!(b, RatMatrix::from_i64(&[&[9, 10], &[13, 14]]));
        let blocks = vec![
            vec![m.block(0, 0, 2), m.block(0, 1, 2)],
            vec![m.block(1, 0, 2), m.block(1, 1, 2)],
        ];
        assert_eq!(RatMatrix::from_blocks(&blocks, 2), m);
    }
}
