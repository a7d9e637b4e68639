use std::collections::BTreeSet;

use persilat::PrimeField;

use crate::{check_budget, OracleError};

/// Every vector of `GF(p)^n`, in lexicographic order.
pub fn all_vectors(field: PrimeField, n: usize) -> Result<Vec<Vec<u32>>, OracleError> {
    let p = field.modulus();
    check_budget(p, n)?;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    Ok(out)
}

/// The span of `gens` as an explicit set of vectors.
pub fn span_set(field: PrimeField, n: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let p = field.modulus();
    let mut span: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; n]]);
    for g in gens {
        if span.contains(g) {
            continue;
        }
        let mut next = BTreeSet::new();
        for s in &span {
            for c in 0..p {
                next.insert(s.iter().zip(g).map(|(&a, &b)| (a + c * b) % p).collect());
            }
        }
        span = next;
    }
    span
}

/// All subspaces of a small ambient space as explicit vector sets.
#[derive(Clone, Debug)]
pub struct EnumeratedSubspaceSet {
    pub field: PrimeField,
    pub ambient_dim: usize,
    pub subspaces: Vec<BTreeSet<Vec<u32>>>,
}

pub fn all_subspaces(field: PrimeField, n: usize) -> Result<EnumeratedSubspaceSet, OracleError> {
    let vectors = all_vectors(field, n)?;
    let mut seen: BTreeSet<BTreeSet<Vec<u32>>> = BTreeSet::new();
    let mut frontier = vec![span_set(field, n, &[])];
    seen.insert(frontier[0].clone());
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut gens: Vec<Vec<u32>> = s.iter().cloned().collect();
            gens.push(v.clone());
            let t = span_set(field, n, &gens);
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    Ok(EnumeratedSubspaceSet {
        field,
        ambient_dim: n,
        subspaces: seen.into_iter().collect(),
    })
}

/// Number of subspaces of `GF(p)^n`: the sum of Gaussian binomials.
pub fn gaussian_binomial_total(p: u64, n: u32) -> u64 {
    (0..=n)
        .map(|k| {
            let mut num = 1u64;
            let mut den = 1u64;
            for i in 0..k {
                num *= p.pow(n - i) - 1;
                den *= p.pow(i + 1) - 1;
            }
            num / den
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        let f2 = PrimeField::gf2();
        for n in 0..=4 {
            assert_eq!(all_subspaces(f2, n).unwrap().subspaces.len() as u64, gaussian_binomial_total(2, n as u32));
        }
        assert_eq!(all_subspaces(f2, 2).unwrap().subspaces.len(), 5);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(all_subspaces(f3, 2).unwrap().subspaces.len(), 6);
    }

    #[test]
    fn spans() {
        let f2 = PrimeField::gf2();
        assert_eq!(span_set(f2, 2, &[vec![1, 1], vec![1, 1]]).len(), 2);
        assert_eq!(all_vectors(f2, 3).unwrap().len(), 8);
    }
}
