use super::{LinalgError, Matrix, PrimeField};

/// A subspace of `GF(p)^ambient_dim`, stored in reduced column echelon form.
///
/// Column `i` of the basis has a 1 in row `pivots[i]` and every other basis
/// column is 0 there; pivots increase strictly. Two values are equal exactly
/// when they span the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        SubspaceBasis {
            basis: Matrix::zeros(field, ambient_dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        SubspaceBasis {
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(field: PrimeField, ambient_dim: usize, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * ambient_dim);
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
            data.extend(v.iter().map(|&e| e % field.modulus()));
        }
        let rows = Matrix::from_vec(field, vectors.len(), ambient_dim, data)
            .expect("entries reduced above");
        Self::from_row_matrix(&rows)
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::from_row_matrix(&m.transpose())
    }

    fn from_row_matrix(rows: &Matrix) -> Self {
        let (rref, pivots) = rows.row_reduce();
        let basis = rref.row_block(0, pivots.len()).transpose();
        SubspaceBasis { basis, pivots }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as the columns of an `ambient_dim × dim` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|c| self.basis.column(c)).collect()
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient_dim(), "vector length mismatch");
        let coords: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        let recon = self.basis.apply(&coords);
        (recon == v).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch {
                left: self.field().modulus(),
                right: other.field().modulus(),
            });
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::Shape {
                op: "subspace_sum",
                left: self.basis.shape(),
                right: other.basis.shape(),
            });
        }
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Ok(SubspaceBasis::from_vectors(self.field(), self.ambient_dim(), &vs))
    }

    /// Surjection onto `GF(p)^(ambient - dim)` whose kernel is exactly this
    /// subspace.
    ///
    /// The basis is extended by unit vectors on the non-pivot coordinates;
    /// the returned rows are the complement rows of the inverse change of
    /// basis. Because the basis is reduced, that inverse has the closed form
    /// `q(x)_c = x_c - Σ_i x_{pivot_i} · w_i[c]` for each non-pivot `c`.
    pub fn quotient_map(&self) -> Matrix {
        let f = self.field();
        let n = self.ambient_dim();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut q = Matrix::zeros(f, free.len(), n);
        for (row, &c) in free.iter().enumerate() {
            q.set(row, c, 1);
            for (i, &p) in self.pivots.iter().enumerate() {
                q.set(row, p, f.neg(self.basis.get(c, i)));
            }
        }
        q
    }
}

/// `B → B/W` for a subspace `W` of `B = GF(p)^ambient_dim`.
pub fn quotient_map(ambient_dim: usize, w: &SubspaceBasis) -> Result<Matrix, LinalgError> {
    if w.ambient_dim() != ambient_dim {
        return Err(LinalgError::Shape {
            op: "quotient_map",
            left: (ambient_dim, ambient_dim),
            right: w.basis().shape(),
        });
    }
    Ok(w.quotient_map())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let f = gf(2);
        let w = SubspaceBasis::from_vectors(f, 2, &[vec![1, 1]]);
        let q = quotient_map(2, &w).unwrap();
        assert_eq!(q.to_nested(), vec![vec![1, 1]]);
        assert_eq!(q.kernel_basis(), w);

        let q = quotient_map(2, &SubspaceBasis::zero(f, 2)).unwrap();
        assert_eq!(q, Matrix::identity(f, 2));

        let q = quotient_map(2, &SubspaceBasis::full(f, 2)).unwrap();
        assert_eq!(q.shape(), (0, 2));
    }

    #[test]
    fn quotient_ambient_mismatch() {
        let w = SubspaceBasis::zero(gf(2), 3);
        assert!(quotient_map(2, &w).is_err());
    }

    #[test]
    fn sum_examples() {
        let f = gf(2);
        let x = SubspaceBasis::from_vectors(f, 2, &[vec![1, 0]]);
        let y = SubspaceBasis::from_vectors(f, 2, &[vec![0, 1]]);
        assert_eq!(x.sum(&y).unwrap(), SubspaceBasis::full(f, 2));
        assert_eq!(x.sum(&x).unwrap(), x);
        let d = SubspaceBasis::from_vectors(f, 2, &[vec![1, 1]]);
        assert_eq!(d.sum(&x).unwrap(), SubspaceBasis::full(f, 2));
        assert!(x.sum(&SubspaceBasis::zero(f, 3)).is_err());
    }

    #[test]
    fn membership_examples() {
        let f = gf(2);
        let d = SubspaceBasis::from_vectors(f, 2, &[vec![1, 1]]);
        assert!(d.contains(&[1, 1]));
        assert!(!d.contains(&[1, 0]));
        assert!(d.contains(&[0, 0]));
        assert!(SubspaceBasis::zero(f, 2).contains(&[0, 0]));
    }

    #[test]
    fn canonical_form_ignores_generating_set() {
        let f = gf(5);
        let a = SubspaceBasis::from_vectors(f, 3, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let b = SubspaceBasis::from_vectors(f, 3, &[vec![1, 3, 2], vec![2, 4, 1], vec![3, 2, 3]]);
        // second set: (1,3,2) = (1,2,3)+(0,1,4); (2,4,1) = 2·(1,2,3); third is dependent
        assert_eq!(a, b);
    }
}
