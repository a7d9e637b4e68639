//! Query commands behind the CLI. Each returns a JSON document (plus text
//! for DOT and CSV renderings) or a [`CommandError`] with a stable code.

use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, InvalidDiagram, NodeIx, Shape};
use crate::io::{barcode, emit_dot, IoError, Loaded};
use crate::lattice::{FreeLattice, LatticeError, LatticeTerm, NodePoset};
use crate::realize::{
    largest_injective, rank_invariant, realize_join, realize_meet, sections_report, RealizeError,
};
use crate::zigzag::{ZigZag, ZigZagError};

/// Version of every JSON document the commands emit.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error(transparent)]
    ZigZag(#[from] ZigZagError),
    #[error("diagram is not tagged as a filtration")]
    NotAFiltration,
    #[error("{0}")]
    Usage(String),
}

impl CommandError {
    pub fn code(&self) -> &'static str {
        match self {
            CommandError::Io(e) => e.code(),
            CommandError::Diagram(e) => e.code(),
            CommandError::Lattice(LatticeError::UnknownNode(_)) => "unknown_node",
            CommandError::Lattice(LatticeError::BudgetExceeded { .. }) => "budget_exceeded",
            CommandError::Realize(e) => match e {
                RealizeError::EmptyNodeSet => "empty_node_set",
                RealizeError::EmptyDiagram => "empty_diagram",
                RealizeError::UnknownNode(_) => "unknown_node",
                RealizeError::Stabilization { .. } => "stabilization",
                RealizeError::NotAGrid => "not_a_grid",
                RealizeError::GridPosition(..) => "grid_position",
                RealizeError::Linalg(_) => "linalg",
            },
            CommandError::ZigZag(ZigZagError::NotAZigZag(_)) => "not_a_zigzag",
            CommandError::ZigZag(_) => "zigzag",
            CommandError::NotAFiltration => "not_a_filtration",
            CommandError::Usage(_) => "usage",
        }
    }

    /// 2 for unreadable or malformed input, 1 for everything the domain
    /// rejects (including invalid diagrams).
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Io(IoError::Diagram(_)) => 1,
            CommandError::Io(_) | CommandError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let details: Vec<Value> = match self {
            CommandError::Io(IoError::Diagram(InvalidDiagram { errors })) => errors.iter().map(diagram_error_json).collect(),
            CommandError::Io(IoError::Format(issues)) => issues
                .iter()
                .map(|i| json!({"code": "format", "location": i.location, "message": i.message}))
                .collect(),
            CommandError::Io(IoError::Json { line, column, .. }) => vec![json!({"line": line, "column": column})],
            CommandError::Diagram(e) => vec![diagram_error_json(e)],
            CommandError::Realize(RealizeError::Stabilization { iterations, dims_history }) => {
                vec![json!({"iterations": iterations, "dims_history": dims_history})]
            }
            _ => Vec::new(),
        };
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": {"code": self.code(), "message": self.to_string(), "details": details},
        })
    }
}

fn diagram_error_json(e: &DiagramError) -> Value {
    let mut v = json!({"code": e.code(), "message": e.to_string()});
    if let DiagramError::Commutativity { from, to, path_a, path_b } = e {
        v["from"] = json!(from);
        v["to"] = json!(to);
        v["path_a"] = json!(path_a);
        v["path_b"] = json!(path_b);
    }
    v
}

fn with_schema(mut v: Value) -> Value {
    v["schema_version"] = json!(SCHEMA_VERSION);
    v
}

fn shape_name(d: &Diagram) -> &'static str {
    match d.shape() {
        Shape::Generic => "generic",
        Shape::Filtration { .. } => "filtration",
        Shape::Grid { .. } => "grid",
        Shape::ZigZag { .. } => "zigzag",
    }
}

fn nodes(d: &Diagram, ids: &[String]) -> Result<Vec<NodeIx>, CommandError> {
    if ids.is_empty() {
        return Err(CommandError::Usage("at least one node id is required".into()));
    }
    ids.iter().map(|id| Ok(d.node(id)?)).collect()
}

pub fn cmd_validate(loaded: &Loaded) -> Value {
    let d = &loaded.diagram;
    with_schema(json!({
        "ok": true,
        "field": d.field().modulus(),
        "shape": shape_name(d),
        "nodes": d.len(),
        "edges": d.edge_count(),
        "components": d.component_count(),
        "warnings": loaded.warnings,
    }))
}

pub fn cmd_rank(d: &Diagram, a: &str, b: &str) -> Result<Value, CommandError> {
    let r = rank_invariant(d, d.node(a)?, d.node(b)?)?;
    let mut v = serde_json::to_value(&r).expect("rank reports serialize");
    v["sign_convention"] = json!("difference");
    Ok(with_schema(v))
}

pub fn cmd_meet(d: &Diagram, ids: &[String]) -> Result<Value, CommandError> {
    let set = nodes(d, ids)?;
    let lattice = FreeLattice::from_diagram(d);
    let terms: Vec<LatticeTerm> = set.iter().map(|&v| lattice.node_term(v)).collect();
    let term = lattice.meet_all(&terms);
    let m = realize_meet(d, &set)?;
    Ok(with_schema(json!({
        "nodes": ids,
        "term": lattice.display(&term),
        "dim": m.dim(),
    })))
}

pub fn cmd_join(d: &Diagram, ids: &[String]) -> Result<Value, CommandError> {
    let set = nodes(d, ids)?;
    let lattice = FreeLattice::from_diagram(d);
    let terms: Vec<LatticeTerm> = set.iter().map(|&v| lattice.node_term(v)).collect();
    let term = lattice.join_all(&terms);
    let j = realize_join(d, &set, true)?;
    Ok(with_schema(json!({
        "nodes": ids,
        "term": lattice.display(&term),
        "dim": j.dim(),
        "sign_convention": "difference",
    })))
}

pub fn cmd_implies(d: &Diagram, a: &str, b: &str) -> Result<Value, CommandError> {
    let lattice = FreeLattice::from_diagram(d);
    let t = lattice.implies(&lattice.generator(a)?, &lattice.generator(b)?);
    Ok(with_schema(json!({"a": a, "b": b, "term": lattice.display(&t)})))
}

pub fn cmd_complement(d: &Diagram, a: &str, budget: usize) -> Result<Value, CommandError> {
    let lattice = FreeLattice::from_diagram(d);
    let c = lattice.complement(&lattice.generator(a)?, budget)?;
    Ok(with_schema(json!({
        "a": a,
        "complement": c.map(|t| lattice.display(&t)),
    })))
}

pub fn cmd_largest_injective(d: &Diagram) -> Result<Value, CommandError> {
    let r = largest_injective(d)?;
    Ok(with_schema(serde_json::to_value(&r).expect("reports serialize")))
}

/// Which order the Hasse diagram shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HasseView {
    /// The free lattice generated by the nodes, with formal bounds.
    Free,
    /// The node poset itself.
    Poset,
}

/// Hasse diagram as JSON and as DOT text.
pub fn cmd_hasse(d: &Diagram, view: HasseView, budget: usize) -> Result<(Value, String), CommandError> {
    let (labels, covers) = match view {
        HasseView::Poset => {
            let p = NodePoset::from_diagram(d);
            (d.ids().to_vec(), p.covers())
        }
        HasseView::Free => {
            let lattice = FreeLattice::from_diagram(d);
            let e = lattice.enumerate_elements(budget);
            if !e.complete {
                return Err(LatticeError::BudgetExceeded { budget }.into());
            }
            let covers = lattice.hasse_edges(&e.elements);
            (e.elements.iter().map(|t| lattice.display(t)).collect(), covers)
        }
    };
    let dot = if d.is_empty() { emit_dot(&[], &[]) } else { emit_dot(&labels, &covers) };
    let v = with_schema(json!({
        "view": match view { HasseView::Free => "free", HasseView::Poset => "poset" },
        "elements": labels,
        "covers": covers,
    }));
    Ok((v, dot))
}

/// Rank table `r(i, j)` of a filtration-tagged diagram, in filtration order.
pub fn filtration_ranks(d: &Diagram) -> Result<(Vec<NodeIx>, Vec<Vec<usize>>), CommandError> {
    let order = match d.shape() {
        Shape::Filtration { order } => order.clone(),
        _ => return Err(CommandError::NotAFiltration),
    };
    let n = order.len();
    let mut r = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            r[i][j] = rank_invariant(d, order[i], order[j])?.rank;
        }
    }
    Ok((order, r))
}

pub fn cmd_barcode(d: &Diagram) -> Result<Value, CommandError> {
    let (order, r) = filtration_ranks(d)?;
    let bars = barcode(order.len(), |i, j| r[i][j]);
    let ids: Vec<&str> = order.iter().map(|&v| d.id(v)).collect();
    Ok(with_schema(json!({"order": ids, "bars": bars})))
}

/// Zig-zag ranks between the diagram's nodes; `null` where the pair is out
/// of order or a node sits at an odd position after normalization.
pub fn cmd_zigzag_ranks(d: &Diagram) -> Result<(Value, String), CommandError> {
    let (z, pos) = ZigZag::from_diagram(d)?;
    let order = match d.shape() {
        Shape::ZigZag { order } => order.clone(),
        _ => unreachable!("from_diagram checked the shape"),
    };
    let ids: Vec<&str> = order.iter().map(|&v| d.id(v)).collect();
    let n = ids.len();
    let mut ranks = vec![vec![None; n]; n];
    for a in 0..n {
        for b in a..n {
            if pos[a] % 2 == 0 && pos[b] % 2 == 0 {
                ranks[a][b] = Some(z.zz_rank(pos[a], pos[b])?);
            }
        }
    }
    let mut csv = String::from("node");
    for id in &ids {
        csv.push(',');
        csv.push_str(id);
    }
    csv.push('\n');
    for (a, row) in ranks.iter().enumerate() {
        csv.push_str(ids[a]);
        for r in row {
            csv.push(',');
            if let Some(r) = r {
                csv.push_str(&r.to_string());
            }
        }
        csv.push('\n');
    }
    let v = with_schema(json!({
        "order": ids,
        "positions": pos,
        "inserted_identities": z.len() - n,
        "ranks": ranks,
    }));
    Ok((v, csv))
}

pub fn cmd_sections(d: &Diagram, a: &str, b: &str) -> Result<Value, CommandError> {
    let cells = match d.shape() {
        Shape::Grid { cells, .. } => cells,
        _ => return Err(RealizeError::NotAGrid.into()),
    };
    let (va, vb) = (d.node(a)?, d.node(b)?);
    let find = |v: NodeIx| *cells.iter().find(|(_, &w)| w == v).expect("grid covers every node").0;
    let (pa, pb) = (find(va), find(vb));
    let r = sections_report(d, pa, pb)?;
    Ok(with_schema(json!({
        "a": a,
        "b": b,
        "pos_a": [pa.0, pa.1],
        "pos_b": [pb.0, pb.1],
        "coarse": r.coarse,
        "fine": r.fine,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_str, LoadOptions};

    fn load(text: &str) -> Diagram {
        parse_str(text, LoadOptions::default()).unwrap().diagram
    }

    const CHAIN3: &str = r#"{"field": 2, "shape": {"kind": "filtration"},
        "nodes": [{"id": "X0", "dim": 1}, {"id": "X1", "dim": 1}, {"id": "X2", "dim": 1}],
        "edges": [{"from": "X0", "to": "X1", "matrix": [[1]]}, {"from": "X1", "to": "X2", "matrix": [[1]]}]}"#;

    #[test]
    fn rank_on_identity_chain() {
        let v = cmd_rank(&load(CHAIN3), "X0", "X2").unwrap();
        assert_eq!(v["rank"], 1);
        assert_eq!(v["dim_meet"], 1);
        assert_eq!(v["dim_join"], 1);
        assert_eq!(v["ses_ok"], true);
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn implication_on_chain() {
        let d = load(CHAIN3);
        assert_eq!(cmd_implies(&d, "X0", "X1").unwrap()["term"], "⊤");
        assert_eq!(cmd_implies(&d, "X2", "X1").unwrap()["term"], "X1");
    }

    #[test]
    fn barcode_of_identity_chain() {
        let v = cmd_barcode(&load(CHAIN3)).unwrap();
        assert_eq!(v["bars"], json!([{"birth": 0, "death": null, "multiplicity": 1}]));
        let generic = load(&CHAIN3.replace(r#""shape": {"kind": "filtration"},"#, ""));
        assert_eq!(cmd_barcode(&generic).unwrap_err().code(), "not_a_filtration");
    }

    #[test]
    fn hasse_of_chain() {
        let (_, dot) = cmd_hasse(&load(CHAIN3), HasseView::Free, 1000).unwrap();
        assert_eq!(dot.matches("->").count(), 4);
        let (_, dot) = cmd_hasse(&load(CHAIN3), HasseView::Poset, 1000).unwrap();
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn meet_and_join_terms() {
        let d = load(CHAIN3);
        let ids = vec!["X0".to_string(), "X2".to_string()];
        assert_eq!(cmd_meet(&d, &ids).unwrap()["term"], "X0");
        assert_eq!(cmd_join(&d, &ids).unwrap()["term"], "X2");
        assert_eq!(cmd_meet(&d, &[]).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_meet(&d, &["Q".to_string()]).unwrap_err().code(), "unknown_node");
    }

    #[test]
    fn zigzag_table() {
        let text = r#"{"field": 2, "shape": {"kind": "zigzag"},
            "nodes": [{"id": "A", "dim": 1}, {"id": "B", "dim": 1}, {"id": "C", "dim": 1}],
            "edges": [{"from": "A", "to": "B", "matrix": [[0]]}, {"from": "C", "to": "B", "matrix": [[1]]}]}"#;
        let (v, csv) = cmd_zigzag_ranks(&load(text)).unwrap();
        assert_eq!(v["ranks"][0][2], 0);
        assert_eq!(v["ranks"][0][0], 1);
        assert_eq!(v["ranks"][0][1], Value::Null);
        assert_eq!(csv.lines().next().unwrap(), "node,A,B,C");
    }
}
