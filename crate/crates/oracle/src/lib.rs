//! Exponential-time reference implementations for testing `persilat` at
//! desk scale, plus random generators of valid inputs.
//!
//! Everything here works by enumerating vectors, bases or subspaces and
//! relies on `persilat` only for the input types.

mod enumerate;
mod generate;
mod lattice;
mod persistence;
mod universal;
mod zigzag;

use thiserror::Error;

pub use enumerate::{all_subspaces, all_vectors, gaussian_binomial_total, span_set, EnumeratedSubspaceSet};
pub use generate::{
    random_diagram, random_filtration, random_grid, random_matrix, random_subquotient, random_zigzag, Poset,
};
pub use lattice::{random_expr, table_leq, term_truth_table, truth_table, upsets, Expr};
pub use persistence::{brute_rank, standard_persistence_ranks};
pub use universal::{
    check_coequalizer_universal, check_equalizer_universal, check_lower_bound, equalizer_set,
};
pub use zigzag::{interval_rank, tiny_zigzag_intervals, Interval};

/// Largest number of ambient vectors an oracle will enumerate.
pub const VECTOR_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {needed} vectors, budget is {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("input outside the oracle's range: {0}")]
    Unsupported(String),
}

pub(crate) fn check_budget(p: u32, dim: usize) -> Result<(), OracleError> {
    let needed = (p as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if needed > VECTOR_BUDGET {
        return Err(OracleError::Budget {
            needed,
            budget: VECTOR_BUDGET,
        });
    }
    Ok(())
}

/// Naive `m · x` over `GF(p)` on row lists.
pub(crate) fn mat_vec(p: u32, rows: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(x)
                .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p as u64) as u32
        })
        .collect()
}
