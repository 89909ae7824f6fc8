//! Dense matrices over a [`Scalar`] field and over Q[t].

mod polymat;

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::quat2::Mat2;

#[cfg(test)]
pub(crate) use polymat::combinations;
pub use polymat::{bareiss_det, cofactor_det, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}

/// A row-major matrix whose entries all live in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        if rows.iter().flatten().any(|e| e.field() != field) {
            return Err(LinalgError::Shape("entry outside the matrix field".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular")
    }

    /// The block matrix `[[a, b], [c, d]]` of 2×2 blocks.
    pub fn from_blocks(blocks: &[&[&Mat2]]) -> Matrix {
        let field = blocks[0][0].field();
        let br = blocks.len();
        let bc = blocks[0].len();
        let mut m = Matrix::zeros(field, 2 * br, 2 * bc);
        for (i, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), bc, "ragged block rows");
            for (j, b) in row.iter().enumerate() {
                m.set_block(2 * i, 2 * j, b);
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_submatrix(0, 0, self);
        m.set_submatrix(self.rows, self.cols, other);
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn set_block(&mut self, i: usize, j: usize, b: &Mat2) {
        self.set(i, j, b.e11.clone());
        self.set(i, j + 1, b.e12.clone());
        self.set(i + 1, j, b.e21.clone());
        self.set(i + 1, j + 1, b.e22.clone());
    }

    /// Adds `b` into the 2×2 block at `(i, j)`.
    pub fn add_block(&mut self, i: usize, j: usize, b: &Mat2) {
        for (di, dj, e) in [
            (0, 0, &b.e11),
            (0, 1, &b.e12),
            (1, 0, &b.e21),
            (1, 1, &b.e22),
        ] {
            let v = self.get(i + di, j + dj) + e;
            self.set(i + di, j + dj, v);
        }
    }

    pub fn block(&self, i: usize, j: usize) -> Mat2 {
        Mat2 {
            e11: self.get(i, j).clone(),
            e12: self.get(i, j + 1).clone(),
            e21: self.get(i + 1, j).clone(),
            e22: self.get(i + 1, j + 1).clone(),
        }
    }

    pub fn set_submatrix(&mut self, i: usize, j: usize, m: &Matrix) {
        for r in 0..m.rows {
            for c in 0..m.cols {
                self.set(i + r, j + c, m.get(r, c).clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(LinalgError::Shape("difference of unequal shapes".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Repeatedly pivots on an entry accepted by `is_unit`, deleting its row
    /// and column and replacing the rest by the Schur complement. Returns
    /// the remaining matrix and the number of pivots used. When `is_unit`
    /// picks out units of a ring containing every entry, this is a Tietze
    /// move over that ring: `D_k(self) = D_(k - used)(rest)`. Pivots in
    /// sparse lines go first to limit fill-in.
    pub fn eliminate_units(&self, is_unit: impl Fn(&Scalar) -> bool) -> (Matrix, usize) {
        let mut m = self.clone();
        let mut used = 0;
        loop {
            let row_fill: Vec<usize> = (0..m.rows)
                .map(|i| m.row(i).iter().filter(|e| !e.is_zero()).count())
                .collect();
            let col_fill: Vec<usize> = (0..m.cols)
                .map(|j| (0..m.rows).filter(|&i| !m.get(i, j).is_zero()).count())
                .collect();
            let Some((pi, pj)) = (0..m.rows)
                .flat_map(|i| (0..m.cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m.get(i, j).is_zero() && is_unit(m.get(i, j)))
                .min_by_key(|&(i, j)| ((row_fill[i] - 1) * (col_fill[j] - 1), i, j))
            else {
                return (m, used);
            };
            let inv = m.get(pi, pj).inv().expect("nonzero pivot");
            let rows: Vec<usize> = (0..m.rows).filter(|&i| i != pi).collect();
            let cols: Vec<usize> = (0..m.cols).filter(|&j| j != pj).collect();
            let mut next = Matrix::zeros(m.field, rows.len(), cols.len());
            for (a, &i) in rows.iter().enumerate() {
                let factor = m.get(i, pj) * &inv;
                for (b, &j) in cols.iter().enumerate() {
                    let mut v = m.get(i, j).clone();
                    if !factor.is_zero() && !m.get(pi, j).is_zero() {
                        v = &v - &(&factor * m.get(pi, j));
                    }
                    next.set(a, b, v);
                }
            }
            m = next;
            used += 1;
        }
    }

    /// Row echelon form by Gaussian elimination; returns the pivot columns
    /// and the sign of the row permutation.
    fn echelon(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                self.swap_rows(p, r);
                odd = !odd;
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for i in (r + 1)..self.rows {
                if self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c) * &inv;
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, odd)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0.len()
    }

    /// `cols - rank`, the dimension of the solution space of `M x = 0`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn det(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let (pivots, odd) = m.echelon();
        if pivots.len() < self.rows {
            return Ok(self.field.zero());
        }
        let mut d = self.field.one();
        for i in 0..self.rows {
            d = d * m.get(i, i);
        }
        Ok(if odd { -d } else { d })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        aug.set_submatrix(0, 0, self);
        aug.set_submatrix(0, n, &Matrix::identity(self.field, n));
        let (pivots, _) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        for r in (0..n).rev() {
            let inv = aug.get(r, r).inv().expect("nonzero pivot");
            for j in r..2 * n {
                let v = aug.get(r, j) * &inv;
                aug.set(r, j, v);
            }
            for i in 0..r {
                if aug.get(i, r).is_zero() {
                    continue;
                }
                let f = aug.get(i, r).clone();
                for j in r..2 * n {
                    let v = aug.get(i, j) - &(&f * aug.get(r, j));
                    aug.set(i, j, v);
                }
            }
        }
        let mut out = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
