//! Filtration barcodes from the rank function by inclusion-exclusion.

use serde::Serialize;

/// A bar `[birth, death)`; `death == None` means the class never dies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BarcodeEntry {
    pub birth: usize,
    pub death: Option<usize>,
    pub multiplicity: usize,
}

impl BarcodeEntry {
    /// Does the bar cover both `i` and `j`?
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.birth <= i && self.death.is_none_or(|d| d > j)
    }
}

/// Bars of a filtration of length `n` with rank function `rank(i, j)`,
/// `i ≤ j < n`.
pub fn barcode(n: usize, rank: impl Fn(usize, usize) -> usize) -> Vec<BarcodeEntry> {
    // r(i, j) with zero outside 0 ≤ i ≤ j < n
    let r = |i: isize, j: isize| -> i64 {
        if i < 0 || j < i || j as usize >= n {
            0
        } else {
            rank(i as usize, j as usize) as i64
        }
    };
    let mut out = Vec::new();
    for i in 0..n as isize {
        for j in i + 1..=n as isize {
            let mu = r(i, j - 1) - r(i, j) - r(i - 1, j - 1) + r(i - 1, j);
            assert!(mu >= 0, "rank function is not a persistence rank function");
            if mu > 0 {
                out.push(BarcodeEntry {
                    birth: i as usize,
                    death: (j < n as isize).then_some(j as usize),
                    multiplicity: mu as usize,
                });
            }
        }
    }
    out
}

/// Total multiplicity of bars covering `[i, j]`.
pub fn covering_count(bars: &[BarcodeEntry], i: usize, j: usize) -> usize {
    bars.iter().filter(|b| b.contains(i, j)).map(|b| b.multiplicity).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table<'a>(t: &'a [&'a [usize]]) -> impl Fn(usize, usize) -> usize + 'a {
        move |i, j| t[i][j]
    }

    #[test]
    fn class_dying_in_zero_space() {
        let t: &[&[usize]] = &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 0]];
        let bars = barcode(3, table(t));
        assert_eq!(
            bars,
            vec![BarcodeEntry {
                birth: 0,
                death: Some(2),
                multiplicity: 1
            }]
        );
    }

    #[test]
    fn identity_chain_never_dies() {
        let t: &[&[usize]] = &[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]];
        let bars = barcode(3, table(t));
        assert_eq!(bars.len(), 1);
        assert_eq!(bars[0].death, None);
    }

    #[test]
    fn inclusion_then_projection() {
        // dims [1,2,1]: new class born at 1 is killed at 2
        let t: &[&[usize]] = &[&[1, 1, 1], &[0, 2, 1], &[0, 0, 1]];
        let bars = barcode(3, table(t));
        assert_eq!(
            bars,
            vec![
                BarcodeEntry { birth: 0, death: None, multiplicity: 1 },
                BarcodeEntry { birth: 1, death: Some(2), multiplicity: 1 },
            ]
        );
        for i in 0..3 {
            for j in i..3 {
                assert_eq!(covering_count(&bars, i, j), t[i][j]);
            }
        }
    }
}
