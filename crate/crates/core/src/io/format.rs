//! JSON diagram files.
//!
//! ```json
//! {
//!   "field": 2,
//!   "shape": {"kind": "filtration"},
//!   "nodes": [{"id": "X0", "dim": 1}, {"id": "X1", "dim": 1}],
//!   "edges": [{"from": "X0", "to": "X1", "matrix": [[1]]}]
//! }
//! ```
//!
//! Matrix rows index the codomain basis, columns the domain basis. Grid
//! shapes carry `"width"` and `"height"` and every node a `"pos": [i, j]`;
//! zig-zag shapes take an optional `"order"` (declaration order otherwise).

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, EdgeSpec, InvalidDiagram, NodeSpec, Shape, ShapeSpec};
use crate::linalg::{Matrix, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub field: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeTag>,
    pub nodes: Vec<NodeEntry>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ShapeTag {
    Generic,
    Filtration,
    Grid {
        width: usize,
        height: usize,
    },
    Zigzag {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Vec<i64>>,
}

/// A problem located in the input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormatIssue {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("cannot read `{path}`: {message}")]
    Read { path: String, message: String },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}", format_issues(.0))]
    Format(Vec<FormatIssue>),
    #[error(transparent)]
    Diagram(#[from] InvalidDiagram),
}

fn format_issues(issues: &[FormatIssue]) -> String {
    let parts: Vec<String> = issues.iter().map(|i| format!("{}: {}", i.location, i.message)).collect();
    format!("invalid diagram file: {}", parts.join("; "))
}

impl IoError {
    pub fn code(&self) -> &'static str {
        match self {
            IoError::Read { .. } => "io",
            IoError::Json { .. } => "json_syntax",
            IoError::Format(_) => "format",
            IoError::Diagram(_) => "invalid_diagram",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Reject entries outside `0..p` instead of reducing them.
    pub field_check: bool,
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub diagram: Diagram,
    pub warnings: Vec<String>,
}

pub fn parse_str(text: &str, opts: LoadOptions) -> Result<Loaded, IoError> {
    let file: DiagramFile = serde_json::from_str(text).map_err(|e| IoError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    load(&file, opts)
}

pub fn parse_file(path: &Path, opts: LoadOptions) -> Result<Loaded, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_str(&text, opts)
}

/// Convert a parsed file into a validated diagram, collecting every format
/// problem before giving up.
pub fn load(file: &DiagramFile, opts: LoadOptions) -> Result<Loaded, IoError> {
    let mut issues = Vec::new();
    let mut warnings = Vec::new();
    let field = match PrimeField::new(file.field) {
        Ok(f) => f,
        Err(e) => {
            return Err(IoError::Format(vec![FormatIssue {
                location: "field".into(),
                message: e.to_string(),
            }]))
        }
    };
    let p = i64::from(field.modulus());
    let dims: HashMap<&str, usize> = file.nodes.iter().map(|n| (n.id.as_str(), n.dim)).collect();

    let mut edges = Vec::with_capacity(file.edges.len());
    for (k, e) in file.edges.iter().enumerate() {
        let location = format!("edges[{k}] ({}->{})", e.from, e.to);
        let cols = match e.matrix.first() {
            Some(r) => r.len(),
            None => dims.get(e.from.as_str()).copied().unwrap_or(0),
        };
        if let Some(bad) = e.matrix.iter().position(|r| r.len() != cols) {
            issues.push(FormatIssue {
                location,
                message: format!("row {bad} has {} entries, row 0 has {cols}", e.matrix[bad].len()),
            });
            continue;
        }
        let out_of_range = e.matrix.iter().flatten().filter(|&&v| v < 0 || v >= p).count();
        if out_of_range > 0 {
            if opts.field_check {
                issues.push(FormatIssue {
                    location: location.clone(),
                    message: format!("{out_of_range} entries outside 0..{p}"),
                });
                continue;
            }
            warnings.push(format!("{location}: reduced {out_of_range} entries mod {p}"));
        }
        match Matrix::from_rows_reduced(field, cols, &e.matrix) {
            Ok(m) => edges.push(EdgeSpec::new(e.from.clone(), e.to.clone(), m)),
            Err(err) => issues.push(FormatIssue {
                location,
                message: err.to_string(),
            }),
        }
    }

    let spec = shape_spec(file, &mut issues);
    if !issues.is_empty() {
        return Err(IoError::Format(issues));
    }
    let nodes = file.nodes.iter().map(|n| NodeSpec::new(n.id.clone(), n.dim)).collect();
    let diagram = Diagram::new(field, nodes, edges)?;
    let diagram = diagram.with_shape(&spec).map_err(InvalidDiagram::from)?;
    warnings.extend(diagram.warnings());
    Ok(Loaded { diagram, warnings })
}

fn shape_spec(file: &DiagramFile, issues: &mut Vec<FormatIssue>) -> ShapeSpec {
    match &file.shape {
        None | Some(ShapeTag::Generic) => ShapeSpec::Generic,
        Some(ShapeTag::Filtration) => ShapeSpec::Filtration,
        Some(ShapeTag::Grid { width, height }) => {
            let mut positions = BTreeMap::new();
            for (k, n) in file.nodes.iter().enumerate() {
                match n.pos {
                    Some([i, j]) => {
                        positions.insert(n.id.clone(), (i, j));
                    }
                    None => issues.push(FormatIssue {
                        location: format!("nodes[{k}] ({})", n.id),
                        message: "grid nodes need a `pos`".into(),
                    }),
                }
            }
            ShapeSpec::Grid {
                width: *width,
                height: *height,
                positions,
            }
        }
        Some(ShapeTag::Zigzag { order }) => ShapeSpec::ZigZag {
            order: order
                .clone()
                .unwrap_or_else(|| file.nodes.iter().map(|n| n.id.clone()).collect()),
        },
    }
}

/// Canonical writer: nodes in id order, edges by `(from, to)`.
pub fn emit(d: &Diagram) -> DiagramFile {
    let mut pos: HashMap<usize, [usize; 2]> = HashMap::new();
    let shape = match d.shape() {
        Shape::Generic => None,
        Shape::Filtration { .. } => Some(ShapeTag::Filtration),
        Shape::Grid { width, height, cells } => {
            for (&(i, j), v) in cells {
                pos.insert(v.index(), [i, j]);
            }
            Some(ShapeTag::Grid {
                width: *width,
                height: *height,
            })
        }
        Shape::ZigZag { order } => Some(ShapeTag::Zigzag {
            order: Some(order.iter().map(|&v| d.id(v).to_string()).collect()),
        }),
    };
    let nodes = d
        .nodes()
        .map(|v| NodeEntry {
            id: d.id(v).to_string(),
            dim: d.dim(v),
            pos: pos.get(&v.index()).copied(),
        })
        .collect();
    let edges = d
        .edges()
        .map(|(a, b, m)| EdgeEntry {
            from: d.id(a).to_string(),
            to: d.id(b).to_string(),
            matrix: m
                .to_nested()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
        })
        .collect();
    DiagramFile {
        field: d.field().modulus(),
        shape,
        nodes,
        edges,
    }
}

pub fn emit_string(d: &Diagram) -> String {
    serde_json::to_string_pretty(&emit(d)).expect("diagram files always serialize")
}
