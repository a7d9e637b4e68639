use std::collections::BTreeSet;

use persilat::diagram::Shape;
use persilat::{Diagram, PrimeField};

use crate::enumerate::all_vectors;
use crate::{mat_vec, OracleError};

/// Rank of a row-list matrix with `cols` columns, as `log_p` of the size of
/// its enumerated image.
pub fn brute_rank(field: PrimeField, m: &[Vec<u32>], cols: usize) -> Result<usize, OracleError> {
    let p = field.modulus();
    let image: BTreeSet<Vec<u32>> = all_vectors(field, cols)?.iter().map(|x| mat_vec(p, m, x)).collect();
    let mut size = image.len() as u64;
    let mut r = 0;
    while size > 1 {
        size /= p as u64;
        r += 1;
    }
    Ok(r)
}

/// `r(i, j)` for `i ≤ j` along a filtration-tagged diagram, from the matrix
/// product of the consecutive edges; zero below the diagonal.
pub fn standard_persistence_ranks(d: &Diagram) -> Result<Vec<Vec<usize>>, OracleError> {
    let order = match d.shape() {
        Shape::Filtration { order } => order.clone(),
        _ => return Err(OracleError::Unsupported("not a filtration".into())),
    };
    let f = d.field();
    let p = f.modulus();
    let n = order.len();
    let mut r = vec![vec![0; n]; n];
    for i in 0..n {
        let di = d.dim(order[i]);
        // columns of the running composite X_i -> X_j as images of unit vectors
        let mut cols: Vec<Vec<u32>> = (0..di).map(|k| (0..di).map(|c| u32::from(c == k)).collect()).collect();
        for j in i..n {
            if j > i {
                let edge = d.edge(order[j - 1], order[j]).expect("consecutive filtration nodes are joined").to_nested();
                cols = cols.iter().map(|c| mat_vec(p, &edge, c)).collect();
            }
            let rows: Vec<Vec<u32>> = (0..d.dim(order[j])).map(|row| cols.iter().map(|c| c[row]).collect()).collect();
            r[i][j] = brute_rank(f, &rows, di)?;
        }
    }
    Ok(r)
}
