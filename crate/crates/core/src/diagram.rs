//! Commutative diagrams of finite-dimensional vector spaces.
//!
//! A [`Diagram`] is only ever constructed through validation: edge shapes
//! match node dimensions, the edge relation is acyclic, and every pair of
//! directed paths between the same two nodes composes to the same matrix.
//! The unique composites are kept in a [`CompositeTable`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::linalg::{Matrix, PrimeField};

/// Index of a node inside a validated [`Diagram`]. Nodes are indexed in
/// lexicographic order of their ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeIx(pub(crate) usize);

impl NodeIx {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSpec {
    pub id: String,
    pub dim: usize,
}

impl NodeSpec {
    pub fn new(id: impl Into<String>, dim: usize) -> Self {
        NodeSpec { id: id.into(), dim }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    pub map: Matrix,
}

impl EdgeSpec {
    pub fn new(from: impl Into<String>, to: impl Into<String>, map: Matrix) -> Self {
        EdgeSpec {
            from: from.into(),
            to: to.into(),
            map,
        }
    }
}

/// Optional structural tag carried alongside a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum ShapeSpec {
    #[default]
    Generic,
    Filtration,
    Grid {
        width: usize,
        height: usize,
        /// node id -> (i, j), `i < width`, `j < height`
        positions: BTreeMap<String, (usize, usize)>,
    },
    /// Node ids in zig-zag order; evens map into odds.
    ZigZag { order: Vec<String> },
}

/// Validated shape tag, in node indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Shape {
    #[default]
    Generic,
    /// Nodes in increasing order.
    Filtration { order: Vec<NodeIx> },
    Grid {
        width: usize,
        height: usize,
        cells: BTreeMap<(usize, usize), NodeIx>,
    },
    ZigZag { order: Vec<NodeIx> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("edge {from}->{to} has a {found:?} matrix, expected {expected:?} (rows = dim {to}, cols = dim {from})")]
    Shape {
        from: String,
        to: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("edge {from}->{to} is over GF({found}), diagram is over GF({expected})")]
    FieldMismatch {
        from: String,
        to: String,
        expected: u32,
        found: u32,
    },
    #[error("duplicate edge {from}->{to}")]
    DuplicateEdge { from: String, to: String },
    #[error("edges form a cycle through {nodes:?}")]
    Cycle { nodes: Vec<String> },
    #[error("diagram does not commute from {from} to {to}: path {path_a:?} differs from path {path_b:?}")]
    Commutativity {
        from: String,
        to: String,
        path_a: Vec<String>,
        path_b: Vec<String>,
    },
    #[error("shape tag does not fit the diagram: {0}")]
    ShapeTag(String),
}

impl DiagramError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            DiagramError::DuplicateNode(_) => "duplicate_node",
            DiagramError::UnknownNode(_) => "unknown_node",
            DiagramError::Shape { .. } => "shape",
            DiagramError::FieldMismatch { .. } => "field_mismatch",
            DiagramError::DuplicateEdge { .. } => "duplicate_edge",
            DiagramError::Cycle { .. } => "cycle",
            DiagramError::Commutativity { .. } => "commutativity",
            DiagramError::ShapeTag(_) => "shape_tag",
        }
    }
}

/// Every violation found while validating a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct InvalidDiagram {
    pub errors: Vec<DiagramError>,
}

impl fmt::Display for InvalidDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<String> = self.errors.iter().map(|e| e.to_string()).collect();
        write!(f, "invalid diagram: {}", msgs.join("; "))
    }
}

impl From<DiagramError> for InvalidDiagram {
    fn from(e: DiagramError) -> Self {
        InvalidDiagram { errors: vec![e] }
    }
}

/// The unique composite for every reachable ordered pair, identity on the
/// diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeTable {
    maps: BTreeMap<(NodeIx, NodeIx), Matrix>,
}

impl CompositeTable {
    pub fn get(&self, from: NodeIx, to: NodeIx) -> Option<&Matrix> {
        self.maps.get(&(from, to))
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(NodeIx, NodeIx), &Matrix)> {
        self.maps.iter()
    }
}

/// A validated commutative diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    field: PrimeField,
    ids: Vec<String>,
    dims: Vec<usize>,
    edges: BTreeMap<(NodeIx, NodeIx), Matrix>,
    succ: Vec<Vec<NodeIx>>,
    pred: Vec<Vec<NodeIx>>,
    topo: Vec<NodeIx>,
    reach: Vec<Vec<bool>>,
    composites: CompositeTable,
    shape: Shape,
}

impl Diagram {
    /// Validate and build. All structural violations are reported together;
    /// a cycle stops validation before commutativity is checked.
    pub fn new(
        field: PrimeField,
        nodes: Vec<NodeSpec>,
        edges: Vec<EdgeSpec>,
    ) -> Result<Diagram, InvalidDiagram> {
        let mut errors = Vec::new();
        let mut sorted: Vec<NodeSpec> = nodes;
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        for w in sorted.windows(2) {
            if w[0].id == w[1].id {
                errors.push(DiagramError::DuplicateNode(w[0].id.clone()));
            }
        }
        sorted.dedup_by(|a, b| a.id == b.id);
        let ids: Vec<String> = sorted.iter().map(|n| n.id.clone()).collect();
        let dims: Vec<usize> = sorted.iter().map(|n| n.dim).collect();
        let lookup = |id: &str| ids.binary_search_by(|x| x.as_str().cmp(id)).ok().map(NodeIx);

        let mut edge_map: BTreeMap<(NodeIx, NodeIx), Matrix> = BTreeMap::new();
        for e in edges {
            let (from, to) = match (lookup(&e.from), lookup(&e.to)) {
                (Some(a), Some(b)) => (a, b),
                (a, b) => {
                    if a.is_none() {
                        errors.push(DiagramError::UnknownNode(e.from.clone()));
                    }
                    if b.is_none() {
                        errors.push(DiagramError::UnknownNode(e.to.clone()));
                    }
                    continue;
                }
            };
            if e.map.field() != field {
                errors.push(DiagramError::FieldMismatch {
                    from: e.from,
                    to: e.to,
                    expected: field.modulus(),
                    found: e.map.field().modulus(),
                });
                continue;
            }
            let expected = (dims[to.0], dims[from.0]);
            if e.map.shape() != expected {
                errors.push(DiagramError::Shape {
                    from: e.from,
                    to: e.to,
                    expected,
                    found: e.map.shape(),
                });
                continue;
            }
            if edge_map.contains_key(&(from, to)) {
                errors.push(DiagramError::DuplicateEdge {
                    from: e.from,
                    to: e.to,
                });
                continue;
            }
            edge_map.insert((from, to), e.map);
        }

        let n = ids.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(a, b) in edge_map.keys() {
            succ[a.0].push(b);
            pred[b.0].push(a);
        }

        let topo = match topological_order(&succ, &pred) {
            Ok(t) => t,
            Err(cycle) => {
                errors.push(DiagramError::Cycle {
                    nodes: cycle.iter().map(|v| ids[v.0].clone()).collect(),
                });
                return Err(InvalidDiagram { errors });
            }
        };
        if !errors.is_empty() {
            return Err(InvalidDiagram { errors });
        }

        let mut d = Diagram {
            field,
            ids,
            dims,
            edges: edge_map,
            succ,
            pred,
            topo,
            reach: Vec::new(),
            composites: CompositeTable {
                maps: BTreeMap::new(),
            },
            shape: Shape::Generic,
        };
        d.composites = d.propagate_composites()?;
        d.reach = vec![vec![false; n]; n];
        for &(a, b) in d.composites.maps.keys() {
            d.reach[a.0][b.0] = true;
        }
        Ok(d)
    }

    /// Attach and check a shape tag.
    pub fn with_shape(mut self, spec: &ShapeSpec) -> Result<Diagram, DiagramError> {
        self.shape = self.resolve_shape(spec)?;
        Ok(self)
    }

    fn propagate_composites(&self) -> Result<CompositeTable, DiagramError> {
        let n = self.ids.len();
        let mut maps = BTreeMap::new();
        // position of each node in the topological order
        let mut pos = vec![0; n];
        for (i, v) in self.topo.iter().enumerate() {
            pos[v.0] = i;
        }
        for &u in &self.topo {
            let mut comp: Vec<Option<(Matrix, Vec<NodeIx>)>> = vec![None; n];
            comp[u.0] = Some((Matrix::identity(self.field, self.dims[u.0]), vec![u]));
            for &v in &self.topo[pos[u.0] + 1..] {
                for &w in &self.pred[v.0] {
                    let Some((cw, path_w)) = comp[w.0].as_ref() else {
                        continue;
                    };
                    let edge = &self.edges[&(w, v)];
                    let cand = edge.mul(cw).expect("shapes validated");
                    let mut path = path_w.clone();
                    path.push(v);
                    match &comp[v.0] {
                        None => comp[v.0] = Some((cand, path)),
                        Some((existing, existing_path)) => {
                            if *existing != cand {
                                return Err(DiagramError::Commutativity {
                                    from: self.ids[u.0].clone(),
                                    to: self.ids[v.0].clone(),
                                    path_a: self.names(existing_path),
                                    path_b: self.names(&path),
                                });
                            }
                        }
                    }
                }
            }
            for (v, c) in comp.into_iter().enumerate() {
                if let Some((m, _)) = c {
                    maps.insert((u, NodeIx(v)), m);
                }
            }
        }
        Ok(CompositeTable { maps })
    }

    fn names(&self, path: &[NodeIx]) -> Vec<String> {
        path.iter().map(|v| self.ids[v.0].clone()).collect()
    }

    fn resolve_shape(&self, spec: &ShapeSpec) -> Result<Shape, DiagramError> {
        let bad = |msg: String| DiagramError::ShapeTag(msg);
        match spec {
            ShapeSpec::Generic => Ok(Shape::Generic),
            ShapeSpec::Filtration => {
                let order = self.topo.clone();
                for w in order.windows(2) {
                    if !self.leq(w[0], w[1]) {
                        return Err(bad(format!(
                            "filtration needs a total order but {} and {} are incomparable",
                            self.id(w[0]),
                            self.id(w[1])
                        )));
                    }
                }
                Ok(Shape::Filtration { order })
            }
            ShapeSpec::Grid {
                width,
                height,
                positions,
            } => {
                let mut cells = BTreeMap::new();
                for (id, &(i, j)) in positions {
                    let v = self.node(id)?;
                    if i >= *width || j >= *height {
                        return Err(bad(format!("position ({i},{j}) of {id} outside {width}x{height}")));
                    }
                    if cells.insert((i, j), v).is_some() {
                        return Err(bad(format!("two nodes at position ({i},{j})")));
                    }
                }
                if cells.len() != width * height || cells.len() != self.len() {
                    return Err(bad(format!(
                        "a {width}x{height} grid needs exactly {} positioned nodes",
                        width * height
                    )));
                }
                for (&(i, j), &v) in &cells {
                    for (k, l) in [(i + 1, j), (i, j + 1)] {
                        if let Some(&w) = cells.get(&(k, l)) {
                            if !self.edges.contains_key(&(v, w)) {
                                return Err(bad(format!(
                                    "missing grid edge {}->{}",
                                    self.id(v),
                                    self.id(w)
                                )));
                            }
                        }
                    }
                }
                for &(a, b) in self.edges.keys() {
                    let pa = cells.iter().find(|(_, &v)| v == a).map(|(p, _)| *p).unwrap();
                    let pb = cells.iter().find(|(_, &v)| v == b).map(|(p, _)| *p).unwrap();
                    if !(pa.0 <= pb.0 && pa.1 <= pb.1) {
                        return Err(bad(format!(
                            "edge {}->{} goes against the grid order",
                            self.id(a),
                            self.id(b)
                        )));
                    }
                }
                Ok(Shape::Grid {
                    width: *width,
                    height: *height,
                    cells,
                })
            }
            ShapeSpec::ZigZag { order } => {
                let order: Vec<NodeIx> = order
                    .iter()
                    .map(|id| self.node(id))
                    .collect::<Result<_, _>>()?;
                if order.len() != self.len() || order.len().is_multiple_of(2) {
                    return Err(bad(format!(
                        "a zig-zag lists every node once and has odd length, got {} of {}",
                        order.len(),
                        self.len()
                    )));
                }
                let distinct: BTreeSet<_> = order.iter().collect();
                if distinct.len() != order.len() {
                    return Err(bad("zig-zag order repeats a node".into()));
                }
                if self.edges.len() != order.len() - 1 {
                    return Err(bad("a zig-zag has exactly one edge per adjacent pair".into()));
                }
                for (i, w) in order.windows(2).enumerate() {
                    let (src, dst) = if i % 2 == 0 { (w[0], w[1]) } else { (w[1], w[0]) };
                    if !self.edges.contains_key(&(src, dst)) {
                        return Err(bad(format!(
                            "zig-zag expects edge {}->{}",
                            self.id(src),
                            self.id(dst)
                        )));
                    }
                }
                Ok(Shape::ZigZag { order })
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeIx> + '_ {
        (0..self.ids.len()).map(NodeIx)
    }

    pub fn node(&self, id: &str) -> Result<NodeIx, DiagramError> {
        self.ids
            .binary_search_by(|x| x.as_str().cmp(id))
            .map(NodeIx)
            .map_err(|_| DiagramError::UnknownNode(id.to_string()))
    }

    pub fn id(&self, v: NodeIx) -> &str {
        &self.ids[v.0]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn dim(&self, v: NodeIx) -> usize {
        self.dims[v.0]
    }

    pub fn edge(&self, from: NodeIx, to: NodeIx) -> Option<&Matrix> {
        self.edges.get(&(from, to))
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeIx, NodeIx, &Matrix)> {
        self.edges.iter().map(|(&(a, b), m)| (a, b, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn successors(&self, v: NodeIx) -> &[NodeIx] {
        &self.succ[v.0]
    }

    pub fn predecessors(&self, v: NodeIx) -> &[NodeIx] {
        &self.pred[v.0]
    }

    pub fn topological_order(&self) -> &[NodeIx] {
        &self.topo
    }

    pub fn composites(&self) -> &CompositeTable {
        &self.composites
    }

    /// The composite map `from -> to`, if `to` is reachable from `from`.
    pub fn composite(&self, from: NodeIx, to: NodeIx) -> Option<&Matrix> {
        self.composites.get(from, to)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Reflexive reachability.
    pub fn leq(&self, u: NodeIx, v: NodeIx) -> bool {
        self.reach[u.0][v.0]
    }

    pub fn reachable(&self, u: &str, v: &str) -> Result<bool, DiagramError> {
        Ok(self.leq(self.node(u)?, self.node(v)?))
    }

    /// Nodes reachable from every member of `set`.
    pub fn common_targets(&self, set: &[NodeIx]) -> Vec<NodeIx> {
        self.nodes()
            .filter(|&t| set.iter().all(|&s| self.leq(s, t)))
            .collect()
    }

    /// Nodes from which every member of `set` is reachable.
    pub fn common_sources(&self, set: &[NodeIx]) -> Vec<NodeIx> {
        self.nodes()
            .filter(|&t| set.iter().all(|&s| self.leq(t, s)))
            .collect()
    }

    /// Nodes with no incoming edge.
    pub fn sources(&self) -> Vec<NodeIx> {
        self.nodes().filter(|v| self.pred[v.0].is_empty()).collect()
    }

    /// Nodes with no outgoing edge.
    pub fn targets(&self) -> Vec<NodeIx> {
        self.nodes().filter(|v| self.succ[v.0].is_empty()).collect()
    }

    /// Number of weakly connected components.
    pub fn component_count(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for w in self.succ[v].iter().chain(&self.pred[v]) {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        stack.push(w.0);
                    }
                }
            }
        }
        count
    }

    /// Number of nodes on a longest directed path (0 for the empty diagram).
    pub fn longest_chain(&self) -> usize {
        let mut len = vec![1usize; self.len()];
        for &v in &self.topo {
            for &w in &self.succ[v.0] {
                len[w.0] = len[w.0].max(len[v.0] + 1);
            }
        }
        len.into_iter().max().unwrap_or(0)
    }

    /// A directed path `from -> to` through the edge relation, if any.
    pub fn path(&self, from: NodeIx, to: NodeIx) -> Option<Vec<NodeIx>> {
        if !self.leq(from, to) {
            return None;
        }
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = *self.succ[cur.0].iter().find(|&&w| self.leq(w, to))?;
            path.push(cur);
        }
        Some(path)
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.component_count() > 1 {
            out.push(format!(
                "diagram has {} connected components; cross-component meets and joins fall back to direct sums",
                self.component_count()
            ));
        }
        out
    }
}

/// Validate and return the composite table.
pub fn validate(
    field: PrimeField,
    nodes: Vec<NodeSpec>,
    edges: Vec<EdgeSpec>,
) -> Result<CompositeTable, InvalidDiagram> {
    Diagram::new(field, nodes, edges).map(|d| d.composites)
}

/// Kahn's algorithm with smallest-index tie breaking. On failure returns the
/// nodes left on a cycle.
fn topological_order(succ: &[Vec<NodeIx>], pred: &[Vec<NodeIx>]) -> Result<Vec<NodeIx>, Vec<NodeIx>> {
    let n = succ.len();
    let mut indeg: Vec<usize> = pred.iter().map(|p| p.len()).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(NodeIx(v));
        for w in &succ[v] {
            indeg[w.0] -= 1;
            if indeg[w.0] == 0 {
                ready.insert(w.0);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).filter(|&v| indeg[v] > 0).map(NodeIx).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    fn scalar(v: i64) -> Matrix {
        Matrix::from_rows_reduced(gf2(), 1, &[vec![v]]).unwrap()
    }

    fn line_nodes(ids: &[&str]) -> Vec<NodeSpec> {
        ids.iter().map(|id| NodeSpec::new(*id, 1)).collect()
    }

    fn chain3() -> Diagram {
        Diagram::new(
            gf2(),
            line_nodes(&["X0", "X1", "X2"]),
            vec![
                EdgeSpec::new("X0", "X1", scalar(1)),
                EdgeSpec::new("X1", "X2", scalar(1)),
            ],
        )
        .unwrap()
    }

    fn square(last: i64) -> Result<Diagram, InvalidDiagram> {
        Diagram::new(
            gf2(),
            line_nodes(&["A", "B", "C", "D"]),
            vec![
                EdgeSpec::new("A", "B", scalar(1)),
                EdgeSpec::new("A", "C", scalar(1)),
                EdgeSpec::new("B", "D", scalar(1)),
                EdgeSpec::new("C", "D", scalar(last)),
            ],
        )
    }

    #[test]
    fn identity_square_commutes() {
        let d = square(1).unwrap();
        for (_, m) in d.composites().iter() {
            assert_eq!(*m, scalar(1));
        }
        assert_eq!(d.composites().len(), 4 + 4 + 1);
    }

    #[test]
    fn zero_edge_breaks_commutativity() {
        let err = square(0).unwrap_err();
        assert_eq!(err.errors.len(), 1);
        match &err.errors[0] {
            DiagramError::Commutativity { from, to, path_a, path_b } => {
                assert_eq!((from.as_str(), to.as_str()), ("A", "D"));
                assert_ne!(path_a, path_b);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chain_composite() {
        let d = chain3();
        let x0 = d.node("X0").unwrap();
        let x2 = d.node("X2").unwrap();
        assert_eq!(d.composite(x0, x2), Some(&scalar(1)));
        assert!(d.reachable("X0", "X2").unwrap());
        assert!(!d.reachable("X2", "X0").unwrap());
        assert!(d.reachable("X1", "X1").unwrap());
        assert!(d.reachable("X9", "X0").is_err());
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Diagram::new(
            gf2(),
            line_nodes(&["A", "B"]),
            vec![EdgeSpec::new("A", "B", scalar(1)), EdgeSpec::new("B", "A", scalar(1))],
        )
        .unwrap_err();
        assert!(matches!(err.errors[0], DiagramError::Cycle { .. }));
    }

    #[test]
    fn reports_every_structural_violation() {
        let err = Diagram::new(
            gf2(),
            vec![NodeSpec::new("A", 2), NodeSpec::new("B", 2), NodeSpec::new("A", 1)],
            vec![
                EdgeSpec::new("A", "B", Matrix::zeros(gf2(), 3, 2)),
                EdgeSpec::new("A", "Z", Matrix::zeros(gf2(), 2, 2)),
                EdgeSpec::new("B", "A", Matrix::zeros(gf2(), 2, 2)),
                EdgeSpec::new("B", "A", Matrix::zeros(gf2(), 2, 2)),
            ],
        )
        .unwrap_err();
        let codes: Vec<_> = err.errors.iter().map(|e| e.code()).collect();
        assert_eq!(codes, vec!["duplicate_node", "shape", "unknown_node", "duplicate_edge"]);
    }

    #[test]
    fn sources_targets_and_common() {
        // zig-zag X0 -> X1 <- X2
        let d = Diagram::new(
            gf2(),
            line_nodes(&["X0", "X1", "X2"]),
            vec![EdgeSpec::new("X0", "X1", scalar(1)), EdgeSpec::new("X2", "X1", scalar(1))],
        )
        .unwrap();
        let ix = |s| d.node(s).unwrap();
        assert_eq!(d.sources(), vec![ix("X0"), ix("X2")]);
        assert_eq!(d.targets(), vec![ix("X1")]);
        assert_eq!(d.common_targets(&[ix("X0"), ix("X2")]), vec![ix("X1")]);
        assert!(d.common_sources(&[ix("X0"), ix("X2")]).is_empty());

        let c = chain3();
        let cx = |s| c.node(s).unwrap();
        assert_eq!(c.sources(), vec![cx("X0")]);
        assert_eq!(c.targets(), vec![cx("X2")]);
        assert_eq!(c.common_targets(&[cx("X0"), cx("X1")]), vec![cx("X1"), cx("X2")]);
        assert_eq!(c.longest_chain(), 3);
    }

    #[test]
    fn declaration_order_does_not_matter() {
        let a = chain3();
        let b = Diagram::new(
            gf2(),
            line_nodes(&["X2", "X0", "X1"]),
            vec![
                EdgeSpec::new("X1", "X2", scalar(1)),
                EdgeSpec::new("X0", "X1", scalar(1)),
            ],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn disconnected_diagram_warns() {
        let d = Diagram::new(gf2(), line_nodes(&["A", "B"]), vec![]).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.warnings().len(), 1);
    }

    #[test]
    fn zigzag_shape_checks_orientation() {
        let d = Diagram::new(
            gf2(),
            line_nodes(&["X0", "X1", "X2"]),
            vec![EdgeSpec::new("X0", "X1", scalar(1)), EdgeSpec::new("X2", "X1", scalar(1))],
        )
        .unwrap();
        let ok = d
            .clone()
            .with_shape(&ShapeSpec::ZigZag {
                order: vec!["X0".into(), "X1".into(), "X2".into()],
            })
            .unwrap();
        assert!(matches!(ok.shape(), Shape::ZigZag { .. }));
        assert!(d
            .with_shape(&ShapeSpec::ZigZag {
                order: vec!["X1".into(), "X0".into(), "X2".into()],
            })
            .is_err());
    }

    #[test]
    fn filtration_shape_requires_total_order() {
        assert!(chain3().with_shape(&ShapeSpec::Filtration).is_ok());
        let v = Diagram::new(
            gf2(),
            line_nodes(&["A", "B", "C"]),
            vec![EdgeSpec::new("A", "C", scalar(1)), EdgeSpec::new("B", "C", scalar(1))],
        )
        .unwrap();
        assert!(v.with_shape(&ShapeSpec::Filtration).is_err());
    }
}
