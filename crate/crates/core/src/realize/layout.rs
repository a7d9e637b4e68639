use std::ops::Range;

use crate::diagram::{Diagram, NodeIx};
use crate::linalg::{Matrix, PrimeField};

/// Direct-sum layout `⊕ V_v` over an ordered list of node occurrences.
///
/// The same node may occur more than once (e.g. the pair `(a, a)`); each
/// occurrence gets its own block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    field: PrimeField,
    nodes: Vec<NodeIx>,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    total: usize,
}

impl BlockLayout {
    pub fn new(d: &Diagram, nodes: &[NodeIx]) -> Self {
        let dims: Vec<usize> = nodes.iter().map(|&v| d.dim(v)).collect();
        let mut offsets = Vec::with_capacity(nodes.len());
        let mut total = 0;
        for &k in &dims {
            offsets.push(total);
            total += k;
        }
        BlockLayout {
            field: d.field(),
            nodes: nodes.to_vec(),
            offsets,
            dims,
            total,
        }
    }

    /// Concatenation: blocks of `self` followed by blocks of `other`.
    pub fn concat(&self, other: &BlockLayout) -> BlockLayout {
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes);
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut offsets = self.offsets.clone();
        offsets.extend(other.offsets.iter().map(|o| o + self.total));
        BlockLayout {
            field: self.field,
            nodes,
            offsets,
            dims,
            total: self.total + other.total,
        }
    }

    pub fn nodes(&self) -> &[NodeIx] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn block_dim(&self, block: usize) -> usize {
        self.dims[block]
    }

    pub fn block_range(&self, block: usize) -> Range<usize> {
        self.offsets[block]..self.offsets[block] + self.dims[block]
    }

    /// `V_block → ⊕ V`.
    pub fn inclusion(&self, block: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.total, self.dims[block]);
        for k in 0..self.dims[block] {
            m.set(self.offsets[block] + k, k, 1);
        }
        m
    }

    /// `⊕ V → V_block`.
    pub fn projection(&self, block: usize) -> Matrix {
        self.inclusion(block).transpose()
    }

    /// Matrix `total × cols` that places `left` in block `i` and `-right`
    /// in block `j`.
    pub fn difference(&self, i: usize, left: &Matrix, j: usize, right: &Matrix) -> Matrix {
        let f = self.field;
        assert_eq!(left.cols(), right.cols());
        let mut m = Matrix::zeros(f, self.total, left.cols());
        for r in 0..left.rows() {
            for c in 0..left.cols() {
                let at = self.offsets[i] + r;
                m.set(at, c, f.add(m.get(at, c), left.get(r, c)));
            }
        }
        for r in 0..right.rows() {
            for c in 0..right.cols() {
                let at = self.offsets[j] + r;
                m.set(at, c, f.sub(m.get(at, c), right.get(r, c)));
            }
        }
        m
    }

    /// Constraint rows `rows × total`: `left · x_i - right · x_j`.
    pub fn constraint(&self, i: usize, left: &Matrix, j: usize, right: &Matrix) -> Matrix {
        let f = self.field;
        assert_eq!(left.rows(), right.rows());
        let mut m = Matrix::zeros(f, left.rows(), self.total);
        for r in 0..left.rows() {
            for c in 0..left.cols() {
                let at = self.offsets[i] + c;
                m.set(r, at, f.add(m.get(r, at), left.get(r, c)));
            }
            for c in 0..right.cols() {
                let at = self.offsets[j] + c;
                m.set(r, at, f.sub(m.get(r, at), right.get(r, c)));
            }
        }
        m
    }
}

/// Block-diagonal `[a 0; 0 b]`.
pub(crate) fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let mut m = Matrix::zeros(f, a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c));
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c));
        }
    }
    m
}
