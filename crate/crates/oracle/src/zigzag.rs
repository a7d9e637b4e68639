//! Interval decomposition of tiny GF(2) zig-zags by exhaustive change of
//! basis.
//!
//! A basis choice at every position makes each arrow a partial matching
//! exactly when the module splits into intervals along those bases; the
//! intervals are then the connected components of the matching graph.

use persilat::zigzag::ZigZag;

use crate::OracleError;

/// Closed interval of positions `[start, end]`.
pub type Interval = (usize, usize);

type Mat = Vec<Vec<u32>>;

fn mul2(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(0, |acc, k| acc ^ (row[k] & b[k][c])))
                .collect()
        })
        .collect()
}

/// Every invertible `d × d` matrix over GF(2) with its inverse.
fn general_linear(d: usize) -> Vec<(Mat, Mat)> {
    let cells = d * d;
    let unpack = |bits: u32| -> Mat { (0..d).map(|r| (0..d).map(|c| (bits >> (r * d + c)) & 1).collect()).collect() };
    let all: Vec<Mat> = (0..1u32 << cells).map(unpack).collect();
    let identity: Mat = (0..d).map(|r| (0..d).map(|c| u32::from(r == c)).collect()).collect();
    all.iter()
        .filter_map(|m| {
            all.iter()
                .find(|inv| mul2(m, inv, d, d) == identity)
                .map(|inv| (m.clone(), inv.clone()))
        })
        .collect()
}

fn is_partial_matching(m: &Mat, rows: usize, cols: usize) -> bool {
    (0..rows).all(|r| m[r].iter().filter(|&&x| x != 0).count() <= 1)
        && (0..cols).all(|c| (0..rows).filter(|&r| m[r][c] != 0).count() <= 1)
}

/// Interval summands of `z` (at most 5 positions, dims at most 2, GF(2)).
pub fn tiny_zigzag_intervals(z: &ZigZag) -> Result<Vec<Interval>, OracleError> {
    if z.field().modulus() != 2 || z.len() > 5 || z.dims().iter().any(|&k| k > 2) {
        return Err(OracleError::Unsupported("needs GF(2), at most 5 spaces and dims at most 2".into()));
    }
    let dims = z.dims().to_vec();
    let arrows: Vec<Mat> = z.arrows().iter().map(|a| a.to_nested()).collect();
    let groups: Vec<Vec<(Mat, Mat)>> = dims.iter().map(|&d| general_linear(d)).collect();
    let mut choice = vec![0usize; dims.len()];
    let found = search(&dims, &arrows, &groups, &mut choice, 0)
        .ok_or_else(|| OracleError::Unsupported("no interval basis found".into()))?;
    Ok(components(&dims, &found))
}

/// Arrow `i` in the chosen bases: `P_odd⁻¹ · A · P_even`.
fn transformed(dims: &[usize], arrows: &[Mat], groups: &[Vec<(Mat, Mat)>], choice: &[usize], i: usize) -> Mat {
    let (even, odd) = if i.is_multiple_of(2) { (i, i + 1) } else { (i + 1, i) };
    let p_even = &groups[even][choice[even]].0;
    let p_odd_inv = &groups[odd][choice[odd]].1;
    let a_p = mul2(&arrows[i], p_even, dims[even], dims[even]);
    mul2(p_odd_inv, &a_p, dims[odd], dims[even])
}

fn search(
    dims: &[usize],
    arrows: &[Mat],
    groups: &[Vec<(Mat, Mat)>],
    choice: &mut Vec<usize>,
    pos: usize,
) -> Option<Vec<Mat>> {
    if pos == dims.len() {
        return Some((0..arrows.len()).map(|i| transformed(dims, arrows, groups, choice, i)).collect());
    }
    for g in 0..groups[pos].len() {
        choice[pos] = g;
        if pos > 0 {
            let i = pos - 1;
            let (even, odd) = if i.is_multiple_of(2) { (i, i + 1) } else { (i + 1, i) };
            let t = transformed(dims, arrows, groups, choice, i);
            if !is_partial_matching(&t, dims[odd], dims[even]) {
                continue;
            }
        }
        if let Some(done) = search(dims, arrows, groups, choice, pos + 1) {
            return Some(done);
        }
    }
    None
}

fn components(dims: &[usize], arrows: &[Mat]) -> Vec<Interval> {
    // basis vector k at position i; link across each nonzero entry
    let mut ids = Vec::new();
    let mut index = vec![Vec::new(); dims.len()];
    for (i, &d) in dims.iter().enumerate() {
        for _ in 0..d {
            index[i].push(ids.len());
            ids.push(i);
        }
    }
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (i, a) in arrows.iter().enumerate() {
        let (even, odd) = if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) };
        for (r, row) in a.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x != 0 {
                    let (u, v) = (find(&mut parent, index[odd][r]), find(&mut parent, index[even][c]));
                    parent[u] = v;
                }
            }
        }
    }
    let mut spans: std::collections::BTreeMap<usize, (usize, usize, usize)> = Default::default();
    for (k, &pos) in ids.iter().enumerate() {
        let root = find(&mut parent, k);
        let e = spans.entry(root).or_insert((pos, pos, 0));
        e.0 = e.0.min(pos);
        e.1 = e.1.max(pos);
        e.2 += 1;
    }
    let mut out: Vec<Interval> = spans
        .into_values()
        .map(|(a, b, count)| {
            assert_eq!(count, b - a + 1, "component is not an interval");
            (a, b)
        })
        .collect();
    out.sort_unstable();
    out
}

/// Number of intervals containing `[i, j]`.
pub fn interval_rank(intervals: &[Interval], i: usize, j: usize) -> usize {
    intervals.iter().filter(|&&(a, b)| a <= i && j <= b).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use persilat::{Matrix, PrimeField};

    fn scalar(v: u32) -> Matrix {
        Matrix::from_vec(PrimeField::gf2(), 1, 1, vec![v]).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(general_linear(0).len(), 1);
        assert_eq!(general_linear(1).len(), 1);
        assert_eq!(general_linear(2).len(), 6);
    }

    #[test]
    fn identity_wedge() {
        let z = ZigZag::new(PrimeField::gf2(), vec![1, 1, 1], vec![scalar(1), scalar(1)]).unwrap();
        assert_eq!(tiny_zigzag_intervals(&z).unwrap(), vec![(0, 2)]);
    }

    #[test]
    fn zero_left_arrow() {
        let z = ZigZag::new(PrimeField::gf2(), vec![1, 1, 1], vec![scalar(0), scalar(1)]).unwrap();
        assert_eq!(tiny_zigzag_intervals(&z).unwrap(), vec![(0, 0), (1, 2)]);
        assert_eq!(interval_rank(&[(0, 0), (1, 2)], 0, 2), 0);
    }

    #[test]
    fn zero_spaces() {
        let f = PrimeField::gf2();
        let z = ZigZag::new(f, vec![0, 0, 0], vec![Matrix::zeros(f, 0, 0), Matrix::zeros(f, 0, 0)]).unwrap();
        assert!(tiny_zigzag_intervals(&z).unwrap().is_empty());
    }

    #[test]
    fn two_dimensional_middle() {
        // X0 -> X1 = k² <- X2 with independent images: two intervals
        let f = PrimeField::gf2();
        let a = Matrix::from_vec(f, 2, 1, vec![1, 1]).unwrap();
        let b = Matrix::from_vec(f, 2, 1, vec![0, 1]).unwrap();
        let z = ZigZag::new(f, vec![1, 2, 1], vec![a, b]).unwrap();
        assert_eq!(tiny_zigzag_intervals(&z).unwrap(), vec![(0, 1), (1, 2)]);
    }
}
