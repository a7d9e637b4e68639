//! Binary merges of partial meets and joins, and the association orders
//! (left fold, right fold, balanced tree) used to combine them.

use super::layout::block_diag;
use super::{meet_constraints, meet_relations, source_relations, BlockLayout, RealizeError, RealizedJoin, RealizedMeet, Selection};
use crate::diagram::{Diagram, NodeIx};
use crate::linalg::SubspaceBasis;

/// Meet over a contiguous run of nodes, as a subspace of their direct sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMeet {
    layout: BlockLayout,
    space: SubspaceBasis,
}

impl PartialMeet {
    pub fn leaf(d: &Diagram, v: NodeIx) -> Self {
        let layout = BlockLayout::new(d, &[v]);
        let space = SubspaceBasis::full(d.field(), layout.total());
        PartialMeet { layout, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn realized(&self) -> RealizedMeet {
        RealizedMeet::from_space(self.layout.clone(), self.space.clone())
    }
}

/// Join over a contiguous run of nodes, as a relation subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialJoin {
    layout: BlockLayout,
    relations: SubspaceBasis,
}

impl PartialJoin {
    pub fn leaf(d: &Diagram, v: NodeIx) -> Self {
        let layout = BlockLayout::new(d, &[v]);
        let relations = SubspaceBasis::zero(d.field(), layout.total());
        PartialJoin { layout, relations }
    }

    pub fn relations(&self) -> &SubspaceBasis {
        &self.relations
    }

    pub fn realized(&self) -> RealizedJoin {
        RealizedJoin::from_relations(self.layout.clone(), self.relations.clone())
    }
}

fn cross_pairs(left: usize, right: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..left).flat_map(move |i| (left..left + right).map(move |j| (i, j)))
}

/// Meet of two partial meets: impose the constraints between the two sides
/// on `left ⊕ right`.
pub fn merge_meets(d: &Diagram, left: &PartialMeet, right: &PartialMeet) -> PartialMeet {
    let layout = left.layout.concat(&right.layout);
    let basis = block_diag(left.space.basis(), right.space.basis());
    let c = meet_constraints(
        d,
        &layout,
        cross_pairs(left.layout.len(), right.layout.len()),
        Selection::All,
    );
    let k = c.mul(&basis).expect("shapes agree").kernel_basis();
    let space = SubspaceBasis::column_span(&basis.mul(k.basis()).expect("shapes agree"));
    PartialMeet { layout, space }
}

/// Join of two partial joins. Cross-side source relations are added, and
/// when `meet` (the merged meet over the same nodes) is given, its cross
/// legs are identified as well.
pub fn merge_joins(
    d: &Diagram,
    left: &PartialJoin,
    right: &PartialJoin,
    meet: Option<&PartialMeet>,
) -> PartialJoin {
    let layout = left.layout.concat(&right.layout);
    let pairs = || cross_pairs(left.layout.len(), right.layout.len());
    let mut rel: Vec<Vec<u32>> = Vec::new();
    let l_tot = left.layout.total();
    let r_tot = right.layout.total();
    for v in left.relations.vectors() {
        let mut w = v;
        w.resize(l_tot + r_tot, 0);
        rel.push(w);
    }
    for v in right.relations.vectors() {
        let mut w = vec![0; l_tot];
        w.extend(v);
        rel.push(w);
    }
    rel.extend(source_relations(d, &layout, pairs(), Selection::All));
    if let Some(m) = meet {
        debug_assert_eq!(m.layout, layout);
        let realized = m.realized();
        rel.extend(meet_relations(&layout, realized.legs(), pairs()));
    }
    let relations = SubspaceBasis::from_vectors(d.field(), layout.total(), &rel);
    PartialJoin { layout, relations }
}

/// A binary merge schedule over leaves `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeTree {
    Leaf(usize),
    Merge(Box<MergeTree>, Box<MergeTree>),
}

/// Association order for n-ary folds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Association {
    LeftFold,
    RightFold,
    Balanced,
}

impl MergeTree {
    pub fn build(n: usize, assoc: Association) -> MergeTree {
        assert!(n >= 1, "merge tree needs at least one leaf");
        match assoc {
            Association::LeftFold => (1..n).fold(MergeTree::Leaf(0), |acc, i| {
                MergeTree::Merge(Box::new(acc), Box::new(MergeTree::Leaf(i)))
            }),
            Association::RightFold => (0..n - 1).rev().fold(MergeTree::Leaf(n - 1), |acc, i| {
                MergeTree::Merge(Box::new(MergeTree::Leaf(i)), Box::new(acc))
            }),
            Association::Balanced => MergeTree::balanced(n),
        }
    }

    /// Pair adjacent subtrees level by level; an odd one out is carried up.
    pub fn balanced(n: usize) -> MergeTree {
        assert!(n >= 1, "merge tree needs at least one leaf");
        let mut level: Vec<MergeTree> = (0..n).map(MergeTree::Leaf).collect();
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(MergeTree::Merge(Box::new(a), Box::new(b))),
                    None => next.push(a),
                }
            }
            level = next;
        }
        level.pop().unwrap()
    }

    pub fn depth(&self) -> usize {
        match self {
            MergeTree::Leaf(_) => 0,
            MergeTree::Merge(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn merges(&self) -> usize {
        match self {
            MergeTree::Leaf(_) => 0,
            MergeTree::Merge(a, b) => 1 + a.merges() + b.merges(),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            MergeTree::Leaf(i) => vec![*i],
            MergeTree::Merge(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    /// Merge steps grouped by level, bottom-up: each entry is
    /// `(left leaves, right leaves)`. Steps within one level touch disjoint
    /// leaves and may run concurrently.
    pub fn levels(&self) -> Vec<Vec<(Vec<usize>, Vec<usize>)>> {
        fn walk(t: &MergeTree, out: &mut Vec<Vec<(Vec<usize>, Vec<usize>)>>) -> usize {
            match t {
                MergeTree::Leaf(_) => 0,
                MergeTree::Merge(a, b) => {
                    let h = 1 + walk(a, out).max(walk(b, out));
                    if out.len() < h {
                        out.resize(h, Vec::new());
                    }
                    out[h - 1].push((a.leaves(), b.leaves()));
                    h
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// Evaluate meet and join over `nodes` following `tree`. Returns the meet,
/// the join (with meet relations when `with_meet_relations`), and the number
/// of binary merge steps performed.
pub fn fold_meet_join(
    d: &Diagram,
    nodes: &[NodeIx],
    tree: &MergeTree,
    with_meet_relations: bool,
    parallel: bool,
) -> Result<(PartialMeet, PartialJoin, usize), RealizeError> {
    if nodes.is_empty() {
        return Err(RealizeError::EmptyNodeSet);
    }
    assert_eq!(tree.leaves(), (0..nodes.len()).collect::<Vec<_>>(), "tree must cover the nodes in order");
    if parallel {
        return Ok(eval_levels(d, nodes, tree, with_meet_relations));
    }
    Ok(eval(d, nodes, tree, with_meet_relations))
}

fn eval(
    d: &Diagram,
    nodes: &[NodeIx],
    tree: &MergeTree,
    rel: bool,
) -> (PartialMeet, PartialJoin, usize) {
    match tree {
        MergeTree::Leaf(i) => (PartialMeet::leaf(d, nodes[*i]), PartialJoin::leaf(d, nodes[*i]), 0),
        MergeTree::Merge(a, b) => {
            let (ma, ja, sa) = eval(d, nodes, a, rel);
            let (mb, jb, sb) = eval(d, nodes, b, rel);
            let m = merge_meets(d, &ma, &mb);
            let j = merge_joins(d, &ja, &jb, rel.then_some(&m));
            (m, j, sa + sb + 1)
        }
    }
}

/// Level-synchronous evaluation: every merge of a level runs on its own
/// scoped thread and reads only its two children's finished results.
fn eval_levels(
    d: &Diagram,
    nodes: &[NodeIx],
    tree: &MergeTree,
    rel: bool,
) -> (PartialMeet, PartialJoin, usize) {
    use std::collections::BTreeMap;
    // results keyed by the first leaf of the subtree they cover
    let mut done: BTreeMap<usize, (PartialMeet, PartialJoin)> = nodes
        .iter()
        .enumerate()
        .map(|(i, &v)| (i, (PartialMeet::leaf(d, v), PartialJoin::leaf(d, v))))
        .collect();
    let mut steps = 0;
    for level in tree.levels() {
        let inputs: Vec<_> = level
            .iter()
            .map(|(l, r)| {
                let a = done.remove(&l[0]).expect("left child finished");
                let b = done.remove(&r[0]).expect("right child finished");
                (l[0], a, b)
            })
            .collect();
        let outputs: Vec<(usize, (PartialMeet, PartialJoin))> = std::thread::scope(|scope| {
            let handles: Vec<_> = inputs
                .iter()
                .map(|(key, (ma, ja), (mb, jb))| {
                    scope.spawn(move || {
                        let m = merge_meets(d, ma, mb);
                        let j = merge_joins(d, ja, jb, rel.then_some(&m));
                        (*key, (m, j))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("merge thread")).collect()
        });
        steps += outputs.len();
        done.extend(outputs);
    }
    let (m, j) = done.remove(&0).expect("root result");
    (m, j, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_shapes() {
        let t = MergeTree::balanced(2);
        assert_eq!(t.merges(), 1);
        assert_eq!(t.depth(), 1);

        let t = MergeTree::balanced(4);
        let expected = MergeTree::Merge(
            Box::new(MergeTree::Merge(Box::new(MergeTree::Leaf(0)), Box::new(MergeTree::Leaf(1)))),
            Box::new(MergeTree::Merge(Box::new(MergeTree::Leaf(2)), Box::new(MergeTree::Leaf(3)))),
        );
        assert_eq!(t, expected);
        assert_eq!(t.depth(), 2);

        assert_eq!(MergeTree::balanced(7).depth(), 3);
        assert_eq!(MergeTree::balanced(1).depth(), 0);
        assert_eq!(MergeTree::build(5, Association::LeftFold).depth(), 4);
        assert_eq!(MergeTree::build(5, Association::RightFold).leaves(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn levels_are_disjoint() {
        for n in 1..12 {
            let t = MergeTree::balanced(n);
            let levels = t.levels();
            assert_eq!(levels.len(), t.depth());
            for level in levels {
                let mut seen = std::collections::BTreeSet::new();
                for (l, r) in level {
                    for leaf in l.into_iter().chain(r) {
                        assert!(seen.insert(leaf));
                    }
                }
            }
        }
    }
}
