//! Exact linear algebra of the library against brute-force enumeration.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use persilat::{PrimeField, SubspaceBasis};
use persilat_oracle::{all_subspaces, all_vectors, brute_rank, gaussian_binomial_total, random_matrix, span_set};

fn log_p(size: usize, p: u32) -> usize {
    let (mut s, mut k) = (size, 0);
    while s > 1 {
        s /= p as usize;
        k += 1;
    }
    k
}

#[test]
fn every_subspace_has_one_canonical_basis() {
    for (p, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let f = PrimeField::new(p).unwrap();
        let all = all_subspaces(f, n).unwrap();
        assert_eq!(all.subspaces.len() as u64, gaussian_binomial_total(p as u64, n as u32));
        let mut canonical = BTreeSet::new();
        for w in &all.subspaces {
            let gens: Vec<Vec<u32>> = w.iter().cloned().collect();
            let b = SubspaceBasis::from_vectors(f, n, &gens);
            assert_eq!(b.dim(), log_p(w.len(), p));
            assert_eq!(&span_set(f, n, &b.vectors()), w);
            // a redundant generating set in another order lands on the same basis
            let rev: Vec<Vec<u32>> = gens.iter().rev().cloned().collect();
            assert_eq!(SubspaceBasis::from_vectors(f, n, &rev), b);
            canonical.insert(format!("{:?}", b.vectors()));
            let q = b.quotient_map();
            assert_eq!(q.rows(), n - b.dim());
            let kernel: BTreeSet<Vec<u32>> = all_vectors(f, n)
                .unwrap()
                .into_iter()
                .filter(|v| q.apply(v).iter().all(|&c| c == 0))
                .collect();
            assert_eq!(&kernel, w);
        }
        assert_eq!(canonical.len(), all.subspaces.len());
    }
}

#[test]
fn rank_kernel_and_solve_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let p = [2u32, 3, 5, 7][rng.gen_range(0..4)];
        let f = PrimeField::new(p).unwrap();
        let (rows, cols) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let m = random_matrix(&mut rng, f, rows, cols);
        assert_eq!(m.rank(), brute_rank(f, &m.to_nested(), cols).unwrap());
        let domain = all_vectors(f, cols).unwrap();
        let kernel: BTreeSet<Vec<u32>> = domain.iter().filter(|v| m.apply(v).iter().all(|&c| c == 0)).cloned().collect();
        assert_eq!(span_set(f, cols, &m.kernel_basis().vectors()), kernel);
        let image: BTreeSet<Vec<u32>> = domain.iter().map(|v| m.apply(v)).collect();
        assert_eq!(span_set(f, rows, &m.image_basis().vectors()), image);
        for b in all_vectors(f, rows).unwrap() {
            match m.solve(&b) {
                Some(x) => assert_eq!(m.apply(&x), b),
                None => assert!(!image.contains(&b)),
            }
        }
    }
}

#[test]
fn subspace_sum_is_the_span_of_the_union() {
    let f = PrimeField::new(3).unwrap();
    let all = all_subspaces(f, 2).unwrap();
    for a in &all.subspaces {
        for b in &all.subspaces {
            let ba = SubspaceBasis::from_vectors(f, 2, &a.iter().cloned().collect::<Vec<_>>());
            let bb = SubspaceBasis::from_vectors(f, 2, &b.iter().cloned().collect::<Vec<_>>());
            let union: Vec<Vec<u32>> = a.union(b).cloned().collect();
            assert_eq!(span_set(f, 2, &ba.sum(&bb).unwrap().vectors()), span_set(f, 2, &union));
            assert_eq!(ba.contains_subspace(&bb), b.is_subset(a));
        }
    }
}
