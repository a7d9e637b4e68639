//! Zig-zag modules `X0 → X1 ← X2 → X3 ← …`: even positions map into the
//! neighbouring odd positions.

use thiserror::Error;

use crate::diagram::{Diagram, EdgeSpec, InvalidDiagram, NodeIx, NodeSpec, Shape};
use crate::linalg::{Matrix, PrimeField, SubspaceBasis};
use crate::realize::{
    fold_meet_join, Association, MergeTree, PartialJoin, PartialMeet, RealizeError, RealizedJoin, RealizedMeet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZigZagError {
    #[error("a zig-zag needs at least one space")]
    Empty,
    #[error("a zig-zag must have an odd number of spaces, found {0}")]
    EvenLength(usize),
    #[error("arrow {index} has shape {found:?}, expected {expected:?}")]
    ArrowShape {
        index: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {expected} arrows, found {found}")]
    ArrowCount { expected: usize, found: usize },
    #[error("index {0} is odd; zig-zag ranks are taken between even positions")]
    OddIndex(usize),
    #[error("index {index} is out of range for {len} spaces")]
    OutOfRange { index: usize, len: usize },
    #[error("indices out of order: {0} > {1}")]
    Order(usize, usize),
    #[error("diagram is not a zig-zag: {0}")]
    NotAZigZag(String),
    #[error(transparent)]
    Diagram(#[from] InvalidDiagram),
    #[error(transparent)]
    Realize(#[from] RealizeError),
}

/// Direction of an arrow between consecutive spaces of an irregular
/// sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arrow {
    /// `X_k → X_{k+1}`.
    Forward(Matrix),
    /// `X_{k+1} → X_k`.
    Backward(Matrix),
}

#[derive(Clone, Debug)]
pub struct ZigZag {
    field: PrimeField,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
    diagram: Diagram,
    nodes: Vec<NodeIx>,
}

impl ZigZag {
    /// `arrows[i]` joins positions `i` and `i + 1`, pointing from the even
    /// one to the odd one.
    pub fn new(field: PrimeField, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self, ZigZagError> {
        if dims.is_empty() {
            return Err(ZigZagError::Empty);
        }
        if dims.len().is_multiple_of(2) {
            return Err(ZigZagError::EvenLength(dims.len()));
        }
        if arrows.len() != dims.len() - 1 {
            return Err(ZigZagError::ArrowCount {
                expected: dims.len() - 1,
                found: arrows.len(),
            });
        }
        let width = (dims.len() - 1).to_string().len();
        let name = |i: usize| format!("X{i:0width$}");
        let mut edges = Vec::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            let (even, odd) = if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) };
            let expected = (dims[odd], dims[even]);
            if a.shape() != expected {
                return Err(ZigZagError::ArrowShape {
                    index: i,
                    expected,
                    found: a.shape(),
                });
            }
            edges.push(EdgeSpec::new(name(even), name(odd), a.clone()));
        }
        let specs = dims.iter().enumerate().map(|(i, &k)| NodeSpec::new(name(i), k)).collect();
        let diagram = Diagram::new(field, specs, edges)?;
        let nodes = (0..dims.len())
            .map(|i| diagram.node(&name(i)).expect("node was declared"))
            .collect();
        Ok(ZigZag {
            field,
            dims,
            arrows,
            diagram,
            nodes,
        })
    }

    /// Normalize an arbitrary sequence of arrows into the alternating shape
    /// by inserting identity copies of spaces. Returns the zig-zag and the
    /// position of each original space in it.
    pub fn from_sequence(
        field: PrimeField,
        dims: &[usize],
        arrows: Vec<Arrow>,
    ) -> Result<(ZigZag, Vec<usize>), ZigZagError> {
        if dims.is_empty() {
            return Err(ZigZagError::Empty);
        }
        if arrows.len() != dims.len() - 1 {
            return Err(ZigZagError::ArrowCount {
                expected: dims.len() - 1,
                found: arrows.len(),
            });
        }
        let mut out_dims = vec![dims[0]];
        let mut out_arrows = Vec::new();
        let mut positions = vec![0];
        for (k, arrow) in arrows.into_iter().enumerate() {
            let here = out_dims.len() - 1;
            let even = here % 2 == 0;
            let (map, forward) = match arrow {
                Arrow::Forward(m) => (m, true),
                Arrow::Backward(m) => (m, false),
            };
            // the arrow after an even position must point forward, after an
            // odd one backward; otherwise repeat the current space first
            if even != forward {
                out_dims.push(dims[k]);
                out_arrows.push(Matrix::identity(field, dims[k]));
            }
            out_dims.push(dims[k + 1]);
            out_arrows.push(map);
            positions.push(out_dims.len() - 1);
        }
        if out_dims.len() % 2 == 0 {
            let last = *out_dims.last().expect("nonempty");
            out_dims.push(last);
            out_arrows.push(Matrix::identity(field, last));
        }
        Ok((ZigZag::new(field, out_dims, out_arrows)?, positions))
    }

    /// Read a zig-zag from a diagram tagged with a zig-zag order.
    pub fn from_diagram(d: &Diagram) -> Result<(ZigZag, Vec<usize>), ZigZagError> {
        let order = match d.shape() {
            Shape::ZigZag { order } => order.clone(),
            _ => return Err(ZigZagError::NotAZigZag("diagram has no zig-zag order".into())),
        };
        if order.len() != d.len() || d.edge_count() + 1 != d.len() {
            return Err(ZigZagError::NotAZigZag(
                "order must list every node once and edges must join consecutive nodes".into(),
            ));
        }
        let dims: Vec<usize> = order.iter().map(|&v| d.dim(v)).collect();
        let mut arrows = Vec::new();
        for w in order.windows(2) {
            let arrow = match (d.edge(w[0], w[1]), d.edge(w[1], w[0])) {
                (Some(m), None) => Arrow::Forward(m.clone()),
                (None, Some(m)) => Arrow::Backward(m.clone()),
                _ => {
                    return Err(ZigZagError::NotAZigZag(format!(
                        "no single edge between `{}` and `{}`",
                        d.id(w[0]),
                        d.id(w[1])
                    )))
                }
            };
            arrows.push(arrow);
        }
        ZigZag::from_sequence(d.field(), &dims, arrows)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.arrows
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    fn evens(&self, i: usize, j: usize) -> Result<Vec<NodeIx>, ZigZagError> {
        for x in [i, j] {
            if x >= self.len() {
                return Err(ZigZagError::OutOfRange { index: x, len: self.len() });
            }
            if x % 2 == 1 {
                return Err(ZigZagError::OddIndex(x));
            }
        }
        if i > j {
            return Err(ZigZagError::Order(i, j));
        }
        Ok((i..=j).step_by(2).map(|p| self.nodes[p]).collect())
    }

    fn fold(
        &self,
        i: usize,
        j: usize,
        assoc: Association,
        parallel: bool,
    ) -> Result<(PartialMeet, PartialJoin), ZigZagError> {
        let nodes = self.evens(i, j)?;
        let tree = MergeTree::build(nodes.len(), assoc);
        let (m, jn, _) = fold_meet_join(&self.diagram, &nodes, &tree, true, parallel)?;
        Ok((m, jn))
    }

    /// Iterated pullback `X_i ∧ X_{i+2} ∧ … ∧ X_j`.
    pub fn zz_meet(&self, i: usize, j: usize) -> Result<RealizedMeet, ZigZagError> {
        Ok(self.fold(i, j, Association::LeftFold, false)?.0.realized())
    }

    /// Iterated pushout over the meet relations.
    pub fn zz_join(&self, i: usize, j: usize) -> Result<RealizedJoin, ZigZagError> {
        Ok(self.fold(i, j, Association::LeftFold, false)?.1.realized())
    }

    pub fn zz_rank(&self, i: usize, j: usize) -> Result<usize, ZigZagError> {
        self.zz_rank_with(i, j, Association::LeftFold, false)
    }

    /// Rank of the canonical map from the meet to the join, folding in the
    /// given association order.
    pub fn zz_rank_with(
        &self,
        i: usize,
        j: usize,
        assoc: Association,
        parallel: bool,
    ) -> Result<usize, ZigZagError> {
        let (m, jn) = self.fold(i, j, assoc, parallel)?;
        let (m, jn) = (m.realized(), jn.realized());
        let phi = jn.leg(0).mul(m.leg(0)).expect("legs compose");
        Ok(phi.rank())
    }

    /// Same rank without building the quotient: the dimension the image of
    /// the meet adds on top of the relations.
    pub fn zz_rank_meets_only(&self, i: usize, j: usize) -> Result<usize, ZigZagError> {
        let (m, jn) = self.fold(i, j, Association::LeftFold, false)?;
        let m = m.realized();
        let w = jn.relations();
        let lifted = m.layout().inclusion(0).mul(m.leg(0)).expect("legs compose");
        let both = Matrix::hstack(self.field, w.ambient_dim(), &[w.basis(), &lifted]).expect("same height");
        Ok(SubspaceBasis::column_span(&both).dim() - w.dim())
    }

    /// `zz_rank(i, j)` for all even `i ≤ j`, indexed by `(i/2, j/2)`.
    pub fn rank_matrix(&self) -> Result<Vec<Vec<Option<usize>>>, ZigZagError> {
        let n = self.len().div_ceil(2);
        let mut out = vec![vec![None; n]; n];
        for a in 0..n {
            for b in a..n {
                out[a][b] = Some(self.zz_rank(2 * a, 2 * b)?);
            }
        }
        Ok(out)
    }
}

/// Balanced merge schedule over `n` even-indexed spaces.
pub fn reduction_schedule(n: usize) -> MergeTree {
    MergeTree::balanced(n)
}
