//! Vector-space realization of meets and joins.
//!
//! The meet of an ordered list of nodes `S` is the equalizer subspace of
//! `⊕_{v∈S} V_v`: tuples whose components agree after mapping into every
//! common target of every pair in `S`. The join is the quotient of the same
//! direct sum by the span of relations `G_{σ,u}(x) ⊖ G_{σ,v}(x)` from
//! common sources σ, optionally together with the relations
//! `π_u(m) ⊖ π_v(m)` coming from the meet itself. All relation vectors use
//! the difference sign (`block u` minus `block v`).

mod checks;
mod fold;
mod grid;
mod injective;
mod layout;

pub use checks::{chain_restriction_check, pullback_equivalence_check, pullback_via_preimage, pullback_via_product};
pub use fold::{fold_meet_join, merge_joins, merge_meets, Association, MergeTree, PartialJoin, PartialMeet};
pub use grid::{grid_coarse_rank, sections_report, SectionsReport};
pub use injective::{largest_injective, LargestInjective};
pub use layout::BlockLayout;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, NodeIx};
use crate::linalg::{LinalgError, Matrix, SubspaceBasis};

/// The stabilization procedure must reach its fixpoint within this many
/// rounds.
pub const MAX_STABILIZATION_ROUNDS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("empty node set")]
    EmptyNodeSet,
    #[error("empty diagram")]
    EmptyDiagram,
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("stabilization did not reach a fixpoint after {iterations} rounds (meet dims {dims_history:?})")]
    Stabilization {
        iterations: usize,
        dims_history: Vec<usize>,
    },
    #[error("diagram is not tagged as a grid")]
    NotAGrid,
    #[error("grid position ({0}, {1}) is out of range")]
    GridPosition(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which common targets (for meets) or common sources (for joins) feed the
/// constraint system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// Every common target / source of the pair.
    All,
    /// Only the ones closest to the pair: minimal common targets and
    /// maximal common sources.
    Nearest,
    /// Only the ones farthest from the pair: maximal common targets and
    /// minimal common sources.
    Farthest,
}

fn extremal(d: &Diagram, set: Vec<NodeIx>, minimal: bool) -> Vec<NodeIx> {
    set.iter()
        .copied()
        .filter(|&a| {
            !set.iter().any(|&b| {
                b != a && if minimal { d.leq(b, a) } else { d.leq(a, b) }
            })
        })
        .collect()
}

pub(crate) fn pair_targets(d: &Diagram, u: NodeIx, v: NodeIx, sel: Selection) -> Vec<NodeIx> {
    let ct = d.common_targets(&[u, v]);
    match sel {
        Selection::All => ct,
        Selection::Nearest => extremal(d, ct, true),
        Selection::Farthest => extremal(d, ct, false),
    }
}

pub(crate) fn pair_sources(d: &Diagram, u: NodeIx, v: NodeIx, sel: Selection) -> Vec<NodeIx> {
    let cs = d.common_sources(&[u, v]);
    match sel {
        Selection::All => cs,
        Selection::Nearest => extremal(d, cs, false),
        Selection::Farthest => extremal(d, cs, true),
    }
}

/// Rows `F_{u,t}·x_u - F_{v,t}·x_v` for block pairs `(i, j)` with `i` in
/// `left_blocks` and `j` in `right_blocks`, `i < j`.
pub(crate) fn meet_constraints(
    d: &Diagram,
    layout: &BlockLayout,
    pairs: impl Iterator<Item = (usize, usize)>,
    sel: Selection,
) -> Matrix {
    let f = d.field();
    let mut rows: Vec<Matrix> = Vec::new();
    for (i, j) in pairs {
        let (u, v) = (layout.nodes()[i], layout.nodes()[j]);
        for t in pair_targets(d, u, v, sel) {
            let fu = d.composite(u, t).expect("t above u");
            let fv = d.composite(v, t).expect("t above v");
            rows.push(layout.constraint(i, fu, j, fv));
        }
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    Matrix::vstack(f, layout.total(), &refs).expect("uniform width")
}

/// Relation columns `G_{σ,u}(x) ⊖ G_{σ,v}(x)` for the given block pairs.
pub(crate) fn source_relations(
    d: &Diagram,
    layout: &BlockLayout,
    pairs: impl Iterator<Item = (usize, usize)>,
    sel: Selection,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for (i, j) in pairs {
        let (u, v) = (layout.nodes()[i], layout.nodes()[j]);
        for s in pair_sources(d, u, v, sel) {
            let gu = d.composite(s, u).expect("s below u");
            let gv = d.composite(s, v).expect("s below v");
            let m = layout.difference(i, gu, j, gv);
            out.extend((0..m.cols()).map(|c| m.column(c)));
        }
    }
    out
}

/// Relation columns `π_i(m) ⊖ π_j(m)` for each meet basis vector `m`.
pub(crate) fn meet_relations(
    layout: &BlockLayout,
    legs: &[Matrix],
    pairs: impl Iterator<Item = (usize, usize)>,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for (i, j) in pairs {
        let m = layout.difference(i, &legs[i], j, &legs[j]);
        out.extend((0..m.cols()).map(|c| m.column(c)));
    }
    out
}

pub(crate) fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// A realized meet: subspace of the direct sum plus its leg maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedMeet {
    layout: BlockLayout,
    space: SubspaceBasis,
    legs: Vec<Matrix>,
}

impl RealizedMeet {
    pub(crate) fn from_space(layout: BlockLayout, space: SubspaceBasis) -> Self {
        let legs = (0..layout.len())
            .map(|b| {
                space
                    .basis()
                    .row_block(layout.offset(b), layout.block_dim(b))
            })
            .collect();
        RealizedMeet { layout, space, legs }
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn nodes(&self) -> &[NodeIx] {
        self.layout.nodes()
    }

    pub fn space(&self) -> &SubspaceBasis {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `π_b`: meet coordinates → `V_b`.
    pub fn leg(&self, block: usize) -> &Matrix {
        &self.legs[block]
    }

    pub fn legs(&self) -> &[Matrix] {
        &self.legs
    }
}

/// A realized join: quotient of the direct sum plus its leg maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedJoin {
    layout: BlockLayout,
    relations: SubspaceBasis,
    quotient: Matrix,
    legs: Vec<Matrix>,
}

impl RealizedJoin {
    pub(crate) fn from_relations(layout: BlockLayout, relations: SubspaceBasis) -> Self {
        let quotient = relations.quotient_map();
        let legs = (0..layout.len())
            .map(|b| quotient.col_block(layout.offset(b), layout.block_dim(b)))
            .collect();
        RealizedJoin {
            layout,
            relations,
            quotient,
            legs,
        }
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn nodes(&self) -> &[NodeIx] {
        self.layout.nodes()
    }

    pub fn relations(&self) -> &SubspaceBasis {
        &self.relations
    }

    /// `Q: ⊕ V → join`.
    pub fn quotient(&self) -> &Matrix {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.quotient.rows()
    }

    /// `ι_b`: `V_b` → join coordinates.
    pub fn leg(&self, block: usize) -> &Matrix {
        &self.legs[block]
    }

    pub fn legs(&self) -> &[Matrix] {
        &self.legs
    }
}

/// Equalizer of all pairwise common-target maps.
pub fn realize_meet(d: &Diagram, nodes: &[NodeIx]) -> Result<RealizedMeet, RealizeError> {
    realize_meet_with(d, nodes, Selection::All)
}

pub fn realize_meet_with(
    d: &Diagram,
    nodes: &[NodeIx],
    sel: Selection,
) -> Result<RealizedMeet, RealizeError> {
    if nodes.is_empty() {
        return Err(RealizeError::EmptyNodeSet);
    }
    let layout = BlockLayout::new(d, nodes);
    let c = meet_constraints(d, &layout, all_pairs(nodes.len()), sel);
    let space = c.kernel_basis();
    Ok(RealizedMeet::from_space(layout, space))
}

/// Coequalizer of all pairwise common-source maps, optionally also
/// identifying the legs of the realized meet.
pub fn realize_join(
    d: &Diagram,
    nodes: &[NodeIx],
    include_meet_relations: bool,
) -> Result<RealizedJoin, RealizeError> {
    if include_meet_relations {
        let meet = realize_meet(d, nodes)?;
        Ok(join_over_meet(d, &meet, Selection::All))
    } else {
        realize_join_with(d, nodes, Selection::All)
    }
}

pub fn realize_join_with(
    d: &Diagram,
    nodes: &[NodeIx],
    sel: Selection,
) -> Result<RealizedJoin, RealizeError> {
    if nodes.is_empty() {
        return Err(RealizeError::EmptyNodeSet);
    }
    let layout = BlockLayout::new(d, nodes);
    let rel = source_relations(d, &layout, all_pairs(nodes.len()), sel);
    let relations = SubspaceBasis::from_vectors(d.field(), layout.total(), &rel);
    Ok(RealizedJoin::from_relations(layout, relations))
}

/// Join over the meet's node list with the meet adjoined as a source.
pub(crate) fn join_over_meet(d: &Diagram, meet: &RealizedMeet, sel: Selection) -> RealizedJoin {
    let layout = meet.layout.clone();
    let n = layout.len();
    let mut rel = source_relations(d, &layout, all_pairs(n), sel);
    rel.extend(meet_relations(&layout, &meet.legs, all_pairs(n)));
    let relations = SubspaceBasis::from_vectors(d.field(), layout.total(), &rel);
    RealizedJoin::from_relations(layout, relations)
}

/// Intersect the meet with the constraint that all join legs agree.
fn refine_meet(d: &Diagram, meet: &RealizedMeet, join: &RealizedJoin) -> RealizedMeet {
    let layout = &meet.layout;
    let n = layout.len();
    let mut rows = Vec::new();
    for (i, j) in all_pairs(n) {
        rows.push(layout.constraint(i, join.leg(i), j, join.leg(j)));
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    let c = Matrix::vstack(d.field(), layout.total(), &refs).expect("uniform width");
    let b = meet.space.basis();
    let k = c.mul(b).expect("shapes agree").kernel_basis();
    let space = SubspaceBasis::column_span(&b.mul(k.basis()).expect("shapes agree"));
    RealizedMeet::from_space(layout.clone(), space)
}

/// Fixpoint of the meet/join refinement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized {
    pub meet: RealizedMeet,
    pub join: RealizedJoin,
    /// Round in which the fixpoint was confirmed (1 = first recomputation
    /// changed nothing).
    pub iterations: usize,
}

/// Meet, then join with the meet adjoined as a source, then the meet again
/// with the join legs as an extra target; repeat until nothing changes.
pub fn stabilize(d: &Diagram, nodes: &[NodeIx]) -> Result<Stabilized, RealizeError> {
    let mut meet = realize_meet(d, nodes)?;
    let mut history = vec![meet.dim()];
    for round in 1..=MAX_STABILIZATION_ROUNDS {
        let join = join_over_meet(d, &meet, Selection::All);
        let refined = refine_meet(d, &meet, &join);
        if refined.space == meet.space {
            let again = join_over_meet(d, &refined, Selection::All);
            if again.relations == join.relations {
                return Ok(Stabilized {
                    meet,
                    join,
                    iterations: round,
                });
            }
        }
        history.push(refined.dim());
        meet = refined;
    }
    Err(RealizeError::Stabilization {
        iterations: MAX_STABILIZATION_ROUNDS,
        dims_history: history,
    })
}

/// Rank of the canonical map from the meet to the join of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub a: String,
    pub b: String,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_meet: usize,
    pub dim_join: usize,
    pub rank: usize,
    pub leg_agreement: bool,
    pub ses_ok: bool,
    pub iterations: usize,
}

/// The persistence map `ι_a·π_a` of a stabilized pair.
pub fn persistence_map(s: &Stabilized, block: usize) -> Matrix {
    s.join
        .leg(block)
        .mul(s.meet.leg(block))
        .expect("legs compose")
}

pub fn rank_invariant(d: &Diagram, a: NodeIx, b: NodeIx) -> Result<RankReport, RealizeError> {
    let s = stabilize(d, &[a, b])?;
    let phi_a = persistence_map(&s, 0);
    let phi_b = persistence_map(&s, 1);
    Ok(RankReport {
        a: d.id(a).to_string(),
        b: d.id(b).to_string(),
        dim_a: d.dim(a),
        dim_b: d.dim(b),
        dim_meet: s.meet.dim(),
        dim_join: s.join.dim(),
        rank: phi_a.rank(),
        leg_agreement: phi_a == phi_b,
        ses_ok: ses_holds(d, &s),
        iterations: s.iterations,
    })
}

/// Rank invariant by node ids.
pub fn rank_invariant_by_id(d: &Diagram, a: &str, b: &str) -> Result<RankReport, RealizeError> {
    let a = d.node(a).map_err(|_| RealizeError::UnknownNode(a.to_string()))?;
    let b = d.node(b).map_err(|_| RealizeError::UnknownNode(b.to_string()))?;
    rank_invariant(d, a, b)
}

/// Image of the meet under the twisted inclusion `m ↦ (π_a m, -π_b m)`.
pub fn twisted_image(meet: &RealizedMeet) -> SubspaceBasis {
    let layout = &meet.layout;
    let m = layout.difference(0, meet.leg(0), 1, meet.leg(1));
    SubspaceBasis::column_span(&m)
}

fn ses_holds(d: &Diagram, s: &Stabilized) -> bool {
    let layout = s.meet.layout();
    let (a, b) = (layout.nodes()[0], layout.nodes()[1]);
    let dims_ok = s.meet.dim() + s.join.dim() == d.dim(a) + d.dim(b);
    let inclusion_injective = twisted_image(&s.meet).dim() == s.meet.dim();
    let exact = s.join.quotient().kernel_basis() == twisted_image(&s.meet);
    dims_ok && inclusion_injective && exact
}

/// `meet → a ⊕ b → join` is short exact.
pub fn ses_check(d: &Diagram, a: NodeIx, b: NodeIx) -> Result<bool, RealizeError> {
    let s = stabilize(d, &[a, b])?;
    Ok(ses_holds(d, &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{EdgeSpec, NodeSpec};
    use crate::linalg::PrimeField;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    fn scalar(v: i64) -> Matrix {
        Matrix::from_rows_reduced(gf2(), 1, &[vec![v]]).unwrap()
    }

    fn diagram(nodes: &[(&str, usize)], edges: Vec<(&str, &str, Matrix)>) -> Diagram {
        Diagram::new(
            gf2(),
            nodes.iter().map(|&(id, k)| NodeSpec::new(id, k)).collect(),
            edges
                .into_iter()
                .map(|(a, b, m)| EdgeSpec::new(a, b, m))
                .collect(),
        )
        .unwrap()
    }

    fn v_shape(fa: i64, fb: i64) -> Diagram {
        diagram(
            &[("A", 1), ("B", 1), ("C", 1)],
            vec![("A", "C", scalar(fa)), ("B", "C", scalar(fb))],
        )
    }

    fn ix(d: &Diagram, id: &str) -> NodeIx {
        d.node(id).unwrap()
    }

    #[test]
    fn meet_of_identity_v_is_diagonal() {
        let d = v_shape(1, 1);
        let m = realize_meet(&d, &[ix(&d, "A"), ix(&d, "B")]).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.space().vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn meet_with_zero_leg() {
        let d = v_shape(0, 1);
        let m = realize_meet(&d, &[ix(&d, "A"), ix(&d, "B")]).unwrap();
        assert_eq!(m.space().vectors(), vec![vec![1, 0]]);
        let r = rank_invariant(&d, ix(&d, "A"), ix(&d, "B")).unwrap();
        assert_eq!((r.dim_meet, r.dim_join, r.rank), (1, 1, 0));
        assert!(r.ses_ok && r.leg_agreement);
    }

    #[test]
    fn chain_pair_is_graph_and_codomain() {
        let f = Matrix::from_rows_reduced(gf2(), 2, &[vec![1, 0], vec![1, 0], vec![0, 0]]).unwrap();
        let d = diagram(&[("X0", 2), ("X1", 3)], vec![("X0", "X1", f.clone())]);
        let (a, b) = (ix(&d, "X0"), ix(&d, "X1"));
        let m = realize_meet(&d, &[a, b]).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.leg(1), &f.mul(m.leg(0)).unwrap());
        let j = realize_join(&d, &[a, b], false).unwrap();
        assert_eq!(j.dim(), 3);
        let r = rank_invariant(&d, a, b).unwrap();
        assert_eq!(r.rank, f.rank());
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn joins_of_sources_and_targets() {
        let d = v_shape(1, 1);
        let pair = [ix(&d, "A"), ix(&d, "B")];
        assert_eq!(realize_join(&d, &pair, false).unwrap().dim(), 2);
        assert_eq!(realize_join(&d, &pair, true).unwrap().dim(), 1);

        let lam = diagram(
            &[("A", 1), ("B", 1), ("D", 1)],
            vec![("D", "A", scalar(1)), ("D", "B", scalar(1))],
        );
        let j = realize_join(&lam, &[ix(&lam, "A"), ix(&lam, "B")], false).unwrap();
        assert_eq!(j.dim(), 1);
        assert_eq!(j.relations().vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn singleton_and_reflexive_pair() {
        let d = v_shape(1, 1);
        let a = ix(&d, "A");
        let s = stabilize(&d, &[a]).unwrap();
        assert_eq!((s.meet.dim(), s.join.dim(), s.iterations), (1, 1, 1));
        let r = rank_invariant(&d, a, a).unwrap();
        assert_eq!((r.dim_meet, r.dim_join, r.rank), (1, 1, 1));
        assert!(r.ses_ok);
    }

    #[test]
    fn disconnected_pair_uses_direct_sums() {
        let d = diagram(&[("A", 2), ("B", 1)], vec![]);
        let pair = [ix(&d, "A"), ix(&d, "B")];
        assert_eq!(realize_meet(&d, &pair).unwrap().dim(), 3);
        assert_eq!(realize_join(&d, &pair, false).unwrap().dim(), 3);
        let r = rank_invariant(&d, pair[0], pair[1]).unwrap();
        assert_eq!((r.dim_meet, r.dim_join, r.rank), (3, 0, 0));
        assert!(r.ses_ok);
    }

    #[test]
    fn empty_node_set() {
        let d = v_shape(1, 1);
        assert_eq!(realize_meet(&d, &[]).unwrap_err(), RealizeError::EmptyNodeSet);
        assert_eq!(realize_join(&d, &[], true).unwrap_err(), RealizeError::EmptyNodeSet);
    }

    #[test]
    fn zero_dimensional_nodes() {
        let d = diagram(
            &[("A", 0), ("B", 2), ("C", 0)],
            vec![
                ("A", "B", Matrix::zeros(gf2(), 2, 0)),
                ("B", "C", Matrix::zeros(gf2(), 0, 2)),
            ],
        );
        let r = rank_invariant(&d, ix(&d, "A"), ix(&d, "C")).unwrap();
        assert_eq!((r.dim_meet, r.dim_join, r.rank), (0, 0, 0));
        let r = rank_invariant(&d, ix(&d, "A"), ix(&d, "B")).unwrap();
        assert_eq!((r.dim_meet, r.dim_join, r.rank), (0, 2, 0));
        assert!(r.ses_ok);
    }

    #[test]
    fn gf5_sign_convention() {
        let f5 = PrimeField::new(5).unwrap();
        let two = Matrix::from_rows_reduced(f5, 1, &[vec![2]]).unwrap();
        let one = Matrix::identity(f5, 1);
        let d = Diagram::new(
            f5,
            vec![NodeSpec::new("A", 1), NodeSpec::new("B", 1), NodeSpec::new("D", 1)],
            vec![EdgeSpec::new("D", "A", two), EdgeSpec::new("D", "B", one)],
        )
        .unwrap();
        let r = rank_invariant(&d, d.node("A").unwrap(), d.node("B").unwrap()).unwrap();
        assert!(r.ses_ok && r.leg_agreement);
        assert_eq!(r.dim_meet + r.dim_join, 2);
    }
}
