use serde::Serialize;

use super::{rank_invariant, RealizeError};
use crate::diagram::{Diagram, NodeIx, Shape};

fn cell(d: &Diagram, p: (usize, usize)) -> Result<NodeIx, RealizeError> {
    match d.shape() {
        Shape::Grid { cells, .. } => cells
            .get(&p)
            .copied()
            .ok_or(RealizeError::GridPosition(p.0, p.1)),
        _ => Err(RealizeError::NotAGrid),
    }
}

/// Rank of the corner-to-corner composite: the rank invariant of the grid
/// ordered componentwise, where the meet is the componentwise minimum and
/// the join the componentwise maximum.
pub fn grid_coarse_rank(
    d: &Diagram,
    p1: (usize, usize),
    p2: (usize, usize),
) -> Result<usize, RealizeError> {
    cell(d, p1)?;
    cell(d, p2)?;
    let lo = cell(d, (p1.0.min(p2.0), p1.1.min(p2.1)))?;
    let hi = cell(d, (p1.0.max(p2.0), p1.1.max(p2.1)))?;
    Ok(d
        .composite(lo, hi)
        .expect("grid corners are comparable")
        .rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionsReport {
    /// Corner-to-corner rank.
    pub coarse: usize,
    /// Rank through the realized meet and join of the two cells.
    pub fine: usize,
}

pub fn sections_report(
    d: &Diagram,
    p1: (usize, usize),
    p2: (usize, usize),
) -> Result<SectionsReport, RealizeError> {
    let coarse = grid_coarse_rank(d, p1, p2)?;
    let fine = rank_invariant(d, cell(d, p1)?, cell(d, p2)?)?.rank;
    Ok(SectionsReport { coarse, fine })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{EdgeSpec, NodeSpec, ShapeSpec};
    use crate::linalg::{Matrix, PrimeField};
    use std::collections::BTreeMap;

    /// 2x2 grid over GF(2) with the given corner dim and identity maps
    /// between the three upper cells.
    fn grid2(corner: usize) -> Diagram {
        let f = PrimeField::gf2();
        let one = Matrix::identity(f, 1);
        let from_corner = if corner == 0 { Matrix::zeros(f, 1, 0) } else { one.clone() };
        let d = Diagram::new(
            f,
            vec![
                NodeSpec::new("X00", corner),
                NodeSpec::new("X01", 1),
                NodeSpec::new("X10", 1),
                NodeSpec::new("X11", 1),
            ],
            vec![
                EdgeSpec::new("X00", "X01", from_corner.clone()),
                EdgeSpec::new("X00", "X10", from_corner),
                EdgeSpec::new("X01", "X11", one.clone()),
                EdgeSpec::new("X10", "X11", one),
            ],
        )
        .unwrap();
        let positions: BTreeMap<String, (usize, usize)> = [("X00", (0, 0)), ("X01", (0, 1)), ("X10", (1, 0)), ("X11", (1, 1))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        d.with_shape(&ShapeSpec::Grid {
            width: 2,
            height: 2,
            positions,
        })
        .unwrap()
    }

    #[test]
    fn identity_grid_antidiagonal() {
        let d = grid2(1);
        let r = sections_report(&d, (0, 1), (1, 0)).unwrap();
        assert_eq!(r, SectionsReport { coarse: 1, fine: 1 });
        assert_eq!(grid_coarse_rank(&d, (0, 0), (1, 1)).unwrap(), 1);
    }

    #[test]
    fn section_invisible_to_corner_rank() {
        let d = grid2(0);
        let r = sections_report(&d, (0, 1), (1, 0)).unwrap();
        assert_eq!(r.coarse, 0);
        assert!(r.fine >= 1);
        assert_eq!(r.fine, 1);
    }

    #[test]
    fn comparable_cells_agree() {
        let d = grid2(1);
        let r = sections_report(&d, (0, 0), (1, 1)).unwrap();
        assert_eq!(r.coarse, r.fine);
    }

    #[test]
    fn untagged_diagram_is_rejected() {
        let d = grid2(1).with_shape(&ShapeSpec::Generic).unwrap();
        assert_eq!(grid_coarse_rank(&d, (0, 0), (1, 1)), Err(RealizeError::NotAGrid));
        assert_eq!(
            grid_coarse_rank(&grid2(1), (0, 0), (2, 1)),
            Err(RealizeError::GridPosition(2, 1))
        );
    }
}
