//! Structural cross-checks of the equalizer and coequalizer constructions.

use super::{realize_join_with, realize_meet_with, RealizeError, Selection};
use crate::diagram::{Diagram, NodeIx};
use crate::linalg::{LinalgError, Matrix, SubspaceBasis};

/// Constraints through the nearest common targets (and relations from the
/// nearest common sources) already determine the meet (and join).
///
/// Commutativity makes a constraint at a higher target the image of one at
/// a lower target, so only the minimal common targets matter; dually only
/// the maximal common sources.
pub fn chain_restriction_check(d: &Diagram, nodes: &[NodeIx]) -> Result<bool, RealizeError> {
    let meet_all = realize_meet_with(d, nodes, Selection::All)?;
    let meet_near = realize_meet_with(d, nodes, Selection::Nearest)?;
    let join_all = realize_join_with(d, nodes, Selection::All)?;
    let join_near = realize_join_with(d, nodes, Selection::Nearest)?;
    Ok(meet_all.space() == meet_near.space() && join_all.relations() == join_near.relations())
}

/// Pullback of `f: X → Z` and `g: Y → Z` as the equalizer of `f∘π₁` and
/// `g∘π₂` on `X ⊕ Y`.
pub fn pullback_via_product(f: &Matrix, g: &Matrix) -> Result<SubspaceBasis, LinalgError> {
    if f.rows() != g.rows() {
        return Err(LinalgError::Shape {
            op: "pullback",
            left: f.shape(),
            right: g.shape(),
        });
    }
    let field = f.field();
    let (x, y) = (f.cols(), g.cols());
    let pi1 = Matrix::hstack(field, x, &[&Matrix::identity(field, x), &Matrix::zeros(field, x, y)])?;
    let pi2 = Matrix::hstack(field, y, &[&Matrix::zeros(field, y, x), &Matrix::identity(field, y)])?;
    let diff = f.mul(&pi1)?.sub(&g.mul(&pi2)?)?;
    Ok(diff.kernel_basis())
}

/// Pullback built from preimages: every `x` with `f(x) ∈ im g`, paired with
/// one solution `y` of `g(y) = f(x)`, plus `0 ⊕ ker g`.
pub fn pullback_via_preimage(f: &Matrix, g: &Matrix) -> Result<SubspaceBasis, LinalgError> {
    if f.rows() != g.rows() {
        return Err(LinalgError::Shape {
            op: "pullback",
            left: f.shape(),
            right: g.shape(),
        });
    }
    let field = f.field();
    let (x, y) = (f.cols(), g.cols());
    let to_coker = g.image_basis().quotient_map();
    let preimage = to_coker.mul(f)?.kernel_basis();
    let mut vectors = Vec::new();
    for xv in preimage.vectors() {
        let target = f.apply(&xv);
        let yv = g.solve(&target).expect("f(x) lies in im g");
        let mut v = xv;
        v.extend(yv);
        vectors.push(v);
    }
    for kv in g.kernel_basis().vectors() {
        let mut v = vec![0; x];
        v.extend(kv);
        vectors.push(v);
    }
    Ok(SubspaceBasis::from_vectors(field, x + y, &vectors))
}

/// Both pullback constructions give bit-identical canonical bases.
pub fn pullback_equivalence_check(f: &Matrix, g: &Matrix) -> Result<bool, LinalgError> {
    Ok(pullback_via_product(f, g)? == pullback_via_preimage(f, g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{EdgeSpec, NodeSpec};
    use crate::linalg::PrimeField;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    #[test]
    fn pullback_examples() {
        let i = Matrix::identity(gf2(), 1);
        let z = Matrix::zeros(gf2(), 1, 1);
        assert!(pullback_equivalence_check(&i, &i).unwrap());
        assert_eq!(pullback_via_product(&i, &i).unwrap().vectors(), vec![vec![1, 1]]);
        assert!(pullback_equivalence_check(&z, &i).unwrap());
        assert_eq!(pullback_via_product(&z, &i).unwrap().vectors(), vec![vec![1, 0]]);
        assert!(pullback_equivalence_check(&i, &Matrix::zeros(gf2(), 2, 1)).is_err());
    }

    #[test]
    fn chain_of_targets() {
        // A, B -> C1 -> C2 with C1 -> C2 the zero map: constraints through C2
        // alone would lose the diagonal; the nearest target keeps it.
        let f = gf2();
        let one = Matrix::identity(f, 1);
        let d = Diagram::new(
            f,
            vec![NodeSpec::new("A", 1), NodeSpec::new("B", 1), NodeSpec::new("C1", 1), NodeSpec::new("C2", 1)],
            vec![
                EdgeSpec::new("A", "C1", one.clone()),
                EdgeSpec::new("B", "C1", one),
                EdgeSpec::new("C1", "C2", Matrix::zeros(f, 1, 1)),
            ],
        )
        .unwrap();
        let pair = [d.node("A").unwrap(), d.node("B").unwrap()];
        assert!(chain_restriction_check(&d, &pair).unwrap());
        let far = realize_meet_with(&d, &pair, Selection::Farthest).unwrap();
        let all = realize_meet_with(&d, &pair, Selection::All).unwrap();
        assert_eq!((far.dim(), all.dim()), (2, 1));
    }

    #[test]
    fn single_common_target() {
        let f = gf2();
        let one = Matrix::identity(f, 1);
        let d = Diagram::new(
            f,
            vec![NodeSpec::new("A", 1), NodeSpec::new("B", 1), NodeSpec::new("C", 1)],
            vec![EdgeSpec::new("A", "C", one.clone()), EdgeSpec::new("B", "C", one)],
        )
        .unwrap();
        assert!(chain_restriction_check(&d, &[d.node("A").unwrap(), d.node("B").unwrap()]).unwrap());
    }
}
