//! Dense matrices over the base field GF(q) and exact elimination.

use std::fmt;

use crate::error::{shape_err, Result};
use crate::gf::BaseField;

/// Row-major matrix with entries in GF(q) (`u8` values below q).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(shape_err(rows * cols, data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(shape_err(cols, r.len()));
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(shape_err(format!("{} rows", self.rows), format!("{} rows", other.rows)));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            out.row_mut(i)[self.cols..].copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(shape_err(format!("{} cols", self.cols), format!("{} cols", other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(shape_err(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix, gf: &BaseField) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        gf.axpy(&mut out.data, 1, &other.data);
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix, gf: &BaseField) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        gf.axpy(&mut out.data, gf.neg(1), &other.data);
        Ok(out)
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, c: u8, other: &Matrix, gf: &BaseField) {
        debug_assert_eq!(self.shape(), other.shape());
        gf.axpy(&mut self.data, c, &other.data);
    }

    pub fn mul(&self, other: &Matrix, gf: &BaseField) -> Result<Self> {
        if self.cols != other.rows {
            return Err(shape_err(format!("{} rows", self.cols), format!("{} rows", other.rows)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let c = self.get(i, k);
                if c != 0 {
                    let (dst, src) = (i * other.cols, k * other.cols);
                    gf.axpy(
                        &mut out.data[dst..dst + other.cols],
                        c,
                        &other.data[src..src + other.cols],
                    );
                }
            }
        }
        Ok(out)
    }

    /// Rank over GF(q) by exact elimination (bit-packed when q = 2).
    pub fn rank(&self, gf: &BaseField) -> usize {
        if gf.order() == 2 {
            rank_gf2(self)
        } else {
            self.rref(gf).1.len()
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self, gf: &BaseField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(gf, |_| true);
        (m, pivots)
    }

    /// Row-reduces in place, choosing pivots only in columns accepted by
    /// `allowed` (scanned left to right). Rows with no allowed pivot are left
    /// below the pivot rows, reduced against them. Returns the pivot columns.
    pub fn rref_in_place(&mut self, gf: &BaseField, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            if !allowed(c) {
                continue;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = gf.inv(self.get(r, c));
            if inv != 1 {
                for v in self.row_mut(r) {
                    *v = gf.mul(*v, inv);
                }
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if f != 0 {
                        gf.axpy(self.row_mut(i), gf.neg(f), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced column echelon form with zero columns removed: a canonical
    /// basis matrix for the column space.
    pub fn rcef(&self, gf: &BaseField) -> Matrix {
        let (r, pivots) = self.transpose().rref(gf);
        r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
    }
}

fn rank_gf2(m: &Matrix) -> usize {
    let words = m.cols.div_ceil(64).max(1);
    let mut rows: Vec<u64> = vec![0; m.rows * words];
    for i in 0..m.rows {
        for j in 0..m.cols {
            if m.get(i, j) & 1 == 1 {
                rows[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut rank = 0;
    for c in 0..m.cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..m.rows).find(|&i| rows[i * words + w] & bit != 0) else {
            continue;
        };
        if p != rank {
            for k in 0..words {
                rows.swap(p * words + k, rank * words + k);
            }
        }
        for i in rank + 1..m.rows {
            if rows[i * words + w] & bit != 0 {
                for k in 0..words {
                    rows[i * words + k] ^= rows[rank * words + k];
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}
