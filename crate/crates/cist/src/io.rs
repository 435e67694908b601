//! Serialization: the edge-list text format, the family JSON document, and
//! DOT export.
//!
//! Edge-list format: a `dim N` header line, then one `u v` decimal pair per
//! line. Blank lines and lines starting with `#` are ignored. Output is
//! normalized — min label first, lines sorted ascending — so rendered files
//! are diffable and round-trip byte-exactly.

use crate::hypercube::{normalize_edge, Edge, Hypercube, Vertex};
use crate::tree::SpanningTree;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("missing `dim N` header line")]
    MissingHeader,
    #[error("line {line}: expected `dim N` header, got `{text}`")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: dimension {dim} is out of range")]
    DimOutOfRange { line: usize, dim: u64 },
    #[error("line {line}: expected `u v`, got `{text}`")]
    BadEdgeLine { line: usize, text: String },
    #[error("line {line}: `{token}` is not a decimal vertex label")]
    NonNumericToken { line: usize, token: String },
    #[error("line {line}: label {label} is out of range for dimension {dim}")]
    LabelOutOfRange { line: usize, label: u64, dim: u32 },
    #[error("line {line}: ({u}, {v}) is not a hypercube edge")]
    NotHypercubeEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: duplicate edge ({}, {})", edge.0, edge.1)]
    DuplicateEdge { line: usize, edge: Edge },
    #[error("family document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("family document declares {declared} trees but contains {actual}")]
    TreeCountMismatch { declared: usize, actual: usize },
}

/// A parsed edge-list file: the declared dimension and the edges in
/// normalized form, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListDocument {
    pub dim: u32,
    pub edges: Vec<Edge>,
}

/// Parses the edge-list text format. Lexical and per-edge validity (labels
/// in range, popcount-1 difference, no duplicates) is enforced here with
/// line numbers; whether the edges form a spanning tree is the concern of
/// [`SpanningTree::from_edges`].
pub fn parse_edge_list(text: &str) -> Result<EdgeListDocument, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(IoError::MissingHeader)?;
    let mut toks = header.split_whitespace();
    let dim = match (toks.next(), toks.next(), toks.next()) {
        (Some("dim"), Some(n), None) => {
            let n: u64 = n.parse().map_err(|_| IoError::BadHeader {
                line: header_line,
                text: header.to_string(),
            })?;
            if u32::try_from(n).is_err() || Hypercube::new(n as u32).is_err() {
                return Err(IoError::DimOutOfRange { line: header_line, dim: n });
            }
            n as u32
        }
        _ => {
            return Err(IoError::BadHeader {
                line: header_line,
                text: header.to_string(),
            })
        }
    };

    let nv = 1u64 << dim;
    let mut edges = Vec::new();
    let mut seen: HashSet<Edge> = HashSet::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(IoError::BadEdgeLine { line, text: text.to_string() });
        }
        let mut pair = [0u64; 2];
        for (slot, tok) in pair.iter_mut().zip(&toks) {
            *slot = tok.parse().map_err(|_| IoError::NonNumericToken {
                line,
                token: tok.to_string(),
            })?;
        }
        for &label in &pair {
            if label >= nv {
                return Err(IoError::LabelOutOfRange { line, label, dim });
            }
        }
        let (u, v) = (pair[0] as Vertex, pair[1] as Vertex);
        if (u ^ v).count_ones() != 1 {
            return Err(IoError::NotHypercubeEdge { line, u, v });
        }
        let e = normalize_edge(u, v);
        if !seen.insert(e) {
            return Err(IoError::DuplicateEdge { line, edge: e });
        }
        edges.push(e);
    }
    Ok(EdgeListDocument { dim, edges })
}

/// Renders edges in the canonical edge-list format: min label first, lines
/// sorted ascending, one trailing newline.
pub fn render_edge_list(dim: u32, edges: &[(Vertex, Vertex)]) -> String {
    let mut normalized: Vec<Edge> = edges.iter().map(|&(u, v)| normalize_edge(u, v)).collect();
    normalized.sort_unstable();
    let mut out = format!("dim {dim}\n");
    for (u, v) in normalized {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Optional derived data carried alongside a family's edge arrays. The
/// recomputable fields (diameters, internal-set sizes) are checked against
/// the edges on parse; provenance fields (`verified`, `lift_joins`) are
/// carried as-is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct FamilyMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameters: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub internal_counts: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    /// Per tree, the join edges added by successive lifts, oldest first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_joins: Option<Vec<Vec<Edge>>>,
}

impl FamilyMetadata {
    fn is_empty(&self) -> bool {
        self.diameters.is_none()
            && self.internal_counts.is_none()
            && self.verified.is_none()
            && self.lift_joins.is_none()
    }
}

/// The on-disk JSON document for a family of spanning trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub dim: u32,
    pub tree_count: usize,
    pub trees: Vec<Vec<Edge>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<FamilyMetadata>,
}

impl FamilyDocument {
    pub fn new(dim: u32, trees: Vec<Vec<Edge>>) -> Self {
        FamilyDocument {
            dim,
            tree_count: trees.len(),
            trees,
            metadata: None,
        }
    }
}

/// Parses a family JSON document. Structural problems are errors; metadata
/// that disagrees with recomputation from the edge arrays produces warnings,
/// not errors, so stale documents stay loadable.
pub fn parse_family_json(text: &str) -> Result<(FamilyDocument, Vec<String>), IoError> {
    let doc: FamilyDocument = serde_json::from_str(text)?;
    if doc.tree_count != doc.trees.len() {
        return Err(IoError::TreeCountMismatch {
            declared: doc.tree_count,
            actual: doc.trees.len(),
        });
    }
    let mut warnings = Vec::new();
    if let Some(meta) = &doc.metadata {
        for (i, edges) in doc.trees.iter().enumerate() {
            let tree = match SpanningTree::from_edges(doc.dim, edges) {
                Ok(t) => t,
                Err(e) => {
                    if !meta.is_empty() {
                        warnings.push(format!(
                            "tree {}: metadata not checked ({e})",
                            i + 1
                        ));
                    }
                    continue;
                }
            };
            if let Some(ds) = &meta.diameters {
                if let Some(&stored) = ds.get(i) {
                    let actual = tree.diameter();
                    if stored != actual {
                        warnings.push(format!(
                            "tree {}: stored diameter {stored} != recomputed {actual}",
                            i + 1
                        ));
                    }
                }
            }
            if let Some(cs) = &meta.internal_counts {
                if let Some(&stored) = cs.get(i) {
                    let actual = tree.internal_vertices().len() as u64;
                    if stored != actual {
                        warnings.push(format!(
                            "tree {}: stored internal count {stored} != recomputed {actual}",
                            i + 1
                        ));
                    }
                }
            }
        }
    }
    Ok((doc, warnings))
}

pub fn render_family_json(doc: &FamilyDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("document serializes");
    out.push('\n');
    out
}

const DOT_PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

/// Renders a family as a single DOT graph: every vertex once, then each
/// tree's edges as one edge class carrying `tree=<i>` and a fixed color.
/// Output ordering is deterministic for identical inputs.
pub fn render_dot(doc: &FamilyDocument) -> String {
    let mut out = String::from("graph cists {\n");
    out.push_str("  node [shape=circle];\n");
    for v in 0..1u64 << doc.dim {
        out.push_str(&format!("  {v};\n"));
    }
    for (i, edges) in doc.trees.iter().enumerate() {
        let color = DOT_PALETTE[i % DOT_PALETTE.len()];
        let mut normalized: Vec<Edge> =
            edges.iter().map(|&(u, v)| normalize_edge(u, v)).collect();
        normalized.sort_unstable();
        for (u, v) in normalized {
            out.push_str(&format!(
                "  {u} -- {v} [tree={}, color=\"{color}\"];\n",
                i + 1
            ));
        }
    }
    out.push_str("}\n");
    out
}
