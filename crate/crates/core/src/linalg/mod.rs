//! Exact linear algebra over prime fields.

mod field;
mod matrix;
mod subspace;

pub use field::PrimeField;
pub use matrix::Matrix;
pub use subspace::{quotient_map, SubspaceBasis};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("expected {rows}x{cols} entries, found {found}")]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("entry {value} is not a residue mod {p}")]
    EntryOutOfRange { value: i64, p: u32 },
}

/// Rank of `a` over its field.
pub fn rank(a: &Matrix) -> usize {
    a.rank()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    a.mul(b)
}

pub fn kernel_basis(a: &Matrix) -> SubspaceBasis {
    a.kernel_basis()
}

pub fn image_basis(a: &Matrix) -> SubspaceBasis {
    a.image_basis()
}

pub fn subspace_sum(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
    a.sum(b)
}

pub fn solve_membership(w: &SubspaceBasis, v: &[u32]) -> bool {
    w.contains(v)
}
