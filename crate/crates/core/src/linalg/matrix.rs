use std::fmt;

use super::{LinalgError, PrimeField, SubspaceBasis};

/// Dense row-major matrix over a prime field.
///
/// `rows` is the codomain dimension and `cols` the domain dimension, so a
/// matrix acts on column vectors. Zero-row and zero-column matrices are
/// ordinary values: they are the maps into and out of the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from row-major residues, checking the entry count and range.
    pub fn from_vec(
        field: PrimeField,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                found: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&e| !field.contains(e)) {
            return Err(LinalgError::EntryOutOfRange {
                value: bad as i64,
                p: field.modulus(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Build from nested rows of integers, reducing every entry mod p.
    ///
    /// `cols` is needed explicitly because an empty row list does not
    /// determine the domain dimension.
    pub fn from_rows_reduced(
        field: PrimeField,
        cols: usize,
        rows: &[Vec<i64>],
    ) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::EntryCount {
                    rows: rows.len(),
                    cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&v| field.reduce(v)));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from column vectors of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Matrix::zeros(field, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &v) in col.iter().enumerate() {
                m.data[r * cols + c] = v % field.modulus();
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_nested(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    /// Matrix product `self · rhs`, i.e. apply `rhs` first.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(LinalgError::Shape {
                op: "mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let f = self.field;
        let p = f.modulus() as u64;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u64 * rhs.get(k, j) as u64) % p;
                }
                out.data[i * rhs.cols + j] = acc as u32;
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.field.modulus() as u64;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(rhs, "add", |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(rhs, "sub", |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        rhs: &Matrix,
        op: &'static str,
        g: impl Fn(PrimeField, u32, u32) -> u32,
    ) -> Result<Matrix, LinalgError> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(LinalgError::Shape {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let f = self.field;
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| g(f, a, b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Side-by-side concatenation; all parts share the row count.
    pub fn hstack(field: PrimeField, rows: usize, parts: &[&Matrix]) -> Result<Matrix, LinalgError> {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for m in parts {
            if m.field != field {
                return Err(LinalgError::FieldMismatch {
                    left: field.modulus(),
                    right: m.field.modulus(),
                });
            }
            if m.rows != rows {
                return Err(LinalgError::Shape {
                    op: "hstack",
                    left: (rows, offset),
                    right: m.shape(),
                });
            }
            for r in 0..rows {
                for c in 0..m.cols {
                    out.data[r * cols + offset + c] = m.get(r, c);
                }
            }
            offset += m.cols;
        }
        Ok(out)
    }

    /// Stacked concatenation; all parts share the column count.
    pub fn vstack(field: PrimeField, cols: usize, parts: &[&Matrix]) -> Result<Matrix, LinalgError> {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            if m.field != field {
                return Err(LinalgError::FieldMismatch {
                    left: field.modulus(),
                    right: m.field.modulus(),
                });
            }
            if m.cols != cols {
                return Err(LinalgError::Shape {
                    op: "vstack",
                    left: (rows, cols),
                    right: m.shape(),
                });
            }
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Rows `[start, start + len)` as a new matrix.
    pub fn row_block(&self, start: usize, len: usize) -> Matrix {
        assert!(start + len <= self.rows);
        Matrix {
            field: self.field,
            rows: len,
            cols: self.cols,
            data: self.data[start * self.cols..(start + len) * self.cols].to_vec(),
        }
    }

    /// Columns `[start, start + len)` as a new matrix.
    pub fn col_block(&self, start: usize, len: usize) -> Matrix {
        assert!(start + len <= self.cols);
        let mut out = Matrix::zeros(self.field, self.rows, len);
        for r in 0..self.rows {
            for c in 0..len {
                out.data[r * len + c] = self.get(r, start + c);
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn row_reduce(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = f.inv(m.get(lead, c));
            for k in c..m.cols {
                let v = m.get(lead, k);
                m.set(lead, k, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for k in c..m.cols {
                    let v = f.sub(m.get(r, k), f.mul(factor, m.get(lead, k)));
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.row_reduce().1.len()
    }

    /// Canonical basis of `{x : self · x = 0}`.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let f = self.field;
        let (rref, pivots) = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let vectors: Vec<Vec<u32>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(rref.get(i, free));
                }
                v
            })
            .collect();
        SubspaceBasis::from_vectors(f, self.cols, &vectors)
    }

    /// Canonical basis of the column span.
    pub fn image_basis(&self) -> SubspaceBasis {
        let cols: Vec<Vec<u32>> = (0..self.cols).map(|c| self.column(c)).collect();
        SubspaceBasis::from_vectors(self.field, self.rows, &cols)
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let bcol = Matrix::from_columns(f, self.rows, &[b.to_vec()]);
        let aug = Matrix::hstack(f, self.rows, &[self, &bcol]).ok()?;
        let (rref, pivots) = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(i, self.cols);
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let aug = Matrix::hstack(f, n, &[self, &Matrix::identity(f, n)]).ok()?;
        let (rref, pivots) = aug.row_reduce();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(rref.col_block(n, n))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]{:?}", self.rows, self.cols, self.field, self.to_nested())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u32, rows: &[&[i64]], cols: usize) -> Matrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows_reduced(gf(p), cols, &rows).unwrap()
    }

    #[test]
    fn mul_examples() {
        let i2 = Matrix::identity(gf(2), 2);
        assert_eq!(i2.mul(&i2).unwrap(), i2);
        let a = m(2, &[&[1, 1]], 2);
        let b = m(2, &[&[1], &[1]], 1);
        assert_eq!(a.mul(&b).unwrap(), m(2, &[&[0]], 1));
        let a = m(5, &[&[2]], 1);
        let b = m(5, &[&[3]], 1);
        assert_eq!(a.mul(&b).unwrap(), m(5, &[&[1]], 1));
    }

    #[test]
    fn mul_shape_and_field_errors() {
        let a = Matrix::zeros(gf(2), 2, 3);
        assert!(matches!(a.mul(&a), Err(LinalgError::Shape { .. })));
        let b = Matrix::zeros(gf(3), 3, 1);
        assert!(matches!(a.mul(&b), Err(LinalgError::FieldMismatch { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(gf(7), 3).rank(), 3);
        assert_eq!(Matrix::zeros(gf(2), 2, 2).rank(), 0);
        assert_eq!(m(2, &[&[1, 0], &[1, 0]], 2).rank(), 1);
        assert_eq!(Matrix::zeros(gf(2), 0, 4).rank(), 0);
        assert_eq!(Matrix::zeros(gf(2), 4, 0).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(gf(2), 2).kernel_basis().dim(), 0);
        let k = m(2, &[&[1, 1]], 2).kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().column(0), vec![1, 1]);
        let k = Matrix::zeros(gf(3), 0, 3).kernel_basis();
        assert_eq!(k, SubspaceBasis::full(gf(3), 3));
    }

    #[test]
    fn image_examples() {
        assert_eq!(Matrix::identity(gf(2), 2).image_basis(), SubspaceBasis::full(gf(2), 2));
        assert_eq!(Matrix::zeros(gf(2), 2, 3).image_basis().dim(), 0);
        let im = m(2, &[&[1], &[1]], 1).image_basis();
        assert_eq!(im.basis().column(0), vec![1, 1]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(5, &[&[1, 2], &[3, 4]], 2);
        let x = a.solve(&[1, 0]).unwrap();
        assert_eq!(a.apply(&x), vec![1, 0]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(gf(5), 2));
        let singular = m(5, &[&[1, 2], &[2, 4]], 2);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[1, 0]).is_none());
        assert_eq!(Matrix::identity(gf(2), 0).inverse().unwrap().shape(), (0, 0));
    }
}
