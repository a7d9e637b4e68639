use serde::Serialize;

use super::fold::{merge_joins, merge_meets, PartialJoin, PartialMeet};
use super::RealizeError;
use crate::diagram::{Diagram, NodeIx};
use crate::linalg::{Matrix, SubspaceBasis};

/// Rank of the map from the meet of all sources to the join of all targets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LargestInjective {
    pub sources: Vec<String>,
    pub targets: Vec<String>,
    pub dim_meet: usize,
    pub dim_join: usize,
    pub rank: usize,
    /// Every source-to-target route induces the same map.
    pub leg_agreement: bool,
    /// Binary meet and join merges, the adjunction of the meet, and the
    /// edges walked to build the map.
    pub steps: usize,
    /// `n + m + k`: sources, targets and nodes on a longest chain.
    pub step_bound: usize,
}

pub fn largest_injective(d: &Diagram) -> Result<LargestInjective, RealizeError> {
    if d.is_empty() {
        return Err(RealizeError::EmptyDiagram);
    }
    let f = d.field();
    let sources = d.sources();
    let targets = d.targets();
    let mut steps = 0;

    let mut meet = PartialMeet::leaf(d, sources[0]);
    for &s in &sources[1..] {
        meet = merge_meets(d, &meet, &PartialMeet::leaf(d, s));
        steps += 1;
    }
    let meet = meet.realized();

    let mut join = PartialJoin::leaf(d, targets[0]);
    for &t in &targets[1..] {
        join = merge_joins(d, &join, &PartialJoin::leaf(d, t), None);
        steps += 1;
    }

    // leg M -> V_t through the first source below t
    let leg = |t: NodeIx| -> (usize, Matrix) {
        let b = sources.iter().position(|&s| d.leq(s, t)).expect("every node lies above a source");
        let c = d.composite(sources[b], t).expect("reachable");
        (b, c.mul(meet.leg(b)).expect("legs compose"))
    };
    let legs: Vec<Matrix> = targets.iter().map(|&t| leg(t).1).collect();

    // adjoin the meet as one more source of the targets
    let layout = join.realized().layout().clone();
    let mut rel = join.relations().vectors();
    for j in 1..targets.len() {
        let m = layout.difference(0, &legs[0], j, &legs[j]);
        rel.extend((0..m.cols()).map(|c| m.column(c)));
    }
    steps += 1;
    let relations = SubspaceBasis::from_vectors(f, layout.total(), &rel);
    let q = relations.quotient_map();
    let iota = |j: usize| q.col_block(layout.offset(j), layout.block_dim(j));

    // walk one path edge by edge for the reported map
    let (b0, _) = leg(targets[0]);
    let path = d.path(sources[b0], targets[0]).expect("reachable");
    let mut walked = meet.leg(b0).clone();
    for w in path.windows(2) {
        walked = d.edge(w[0], w[1]).expect("path edge").mul(&walked).expect("edges compose");
        steps += 1;
    }
    let phi = iota(0).mul(&walked).expect("legs compose");

    let mut leg_agreement = walked == legs[0];
    for (j, &t) in targets.iter().enumerate() {
        for (b, &s) in sources.iter().enumerate() {
            if let Some(c) = d.composite(s, t) {
                let route = iota(j).mul(&c.mul(meet.leg(b)).expect("compose")).expect("compose");
                leg_agreement &= route == phi;
            }
        }
    }

    Ok(LargestInjective {
        sources: sources.iter().map(|&v| d.id(v).to_string()).collect(),
        targets: targets.iter().map(|&v| d.id(v).to_string()).collect(),
        dim_meet: meet.dim(),
        dim_join: q.rows(),
        rank: phi.rank(),
        leg_agreement,
        steps,
        step_bound: sources.len() + targets.len() + d.longest_chain(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{EdgeSpec, NodeSpec};
    use crate::linalg::PrimeField;

    fn chain(maps: &[u32]) -> Diagram {
        let f = PrimeField::gf2();
        let nodes = (0..=maps.len()).map(|i| NodeSpec::new(format!("X{i}"), 1)).collect();
        let edges = maps
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                EdgeSpec::new(format!("X{i}"), format!("X{}", i + 1), Matrix::from_vec(f, 1, 1, vec![m]).unwrap())
            })
            .collect();
        Diagram::new(f, nodes, edges).unwrap()
    }

    #[test]
    fn identity_chain() {
        let r = largest_injective(&chain(&[1, 1])).unwrap();
        assert_eq!(r.rank, 1);
        assert!(r.leg_agreement);
        assert!(r.steps <= r.step_bound);
        assert_eq!((r.sources.clone(), r.targets.clone()), (vec!["X0".to_string()], vec!["X2".to_string()]));
    }

    #[test]
    fn zero_in_the_middle() {
        assert_eq!(largest_injective(&chain(&[1, 0, 1])).unwrap().rank, 0);
    }

    #[test]
    fn identity_diamond() {
        let f = PrimeField::gf2();
        let one = Matrix::identity(f, 1);
        let d = Diagram::new(
            f,
            ["A", "B", "C", "D"].iter().map(|&n| NodeSpec::new(n, 1)).collect(),
            vec![
                EdgeSpec::new("A", "B", one.clone()),
                EdgeSpec::new("A", "C", one.clone()),
                EdgeSpec::new("B", "D", one.clone()),
                EdgeSpec::new("C", "D", one),
            ],
        )
        .unwrap();
        let r = largest_injective(&d).unwrap();
        assert_eq!((r.dim_meet, r.dim_join, r.rank), (1, 1, 1));
        assert!(r.leg_agreement && r.steps <= r.step_bound);
    }

    #[test]
    fn two_sources_two_targets() {
        // A, B -> C by identities, C -> D, E by identities
        let f = PrimeField::gf2();
        let one = Matrix::identity(f, 1);
        let d = Diagram::new(
            f,
            ["A", "B", "C", "D", "E"].iter().map(|&n| NodeSpec::new(n, 1)).collect(),
            vec![
                EdgeSpec::new("A", "C", one.clone()),
                EdgeSpec::new("B", "C", one.clone()),
                EdgeSpec::new("C", "D", one.clone()),
                EdgeSpec::new("C", "E", one),
            ],
        )
        .unwrap();
        let r = largest_injective(&d).unwrap();
        assert_eq!((r.dim_meet, r.dim_join, r.rank), (1, 1, 1));
        assert!(r.leg_agreement);
        assert!(r.steps <= r.step_bound);
    }

    #[test]
    fn empty_diagram() {
        let d = Diagram::new(PrimeField::gf2(), vec![], vec![]).unwrap();
        assert_eq!(largest_injective(&d), Err(RealizeError::EmptyDiagram));
    }
}
