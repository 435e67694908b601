//! CIST verification.
//!
//! Two verifiers with one verdict type. [`CistFamily::verify_criterion`] is
//! the production check — edge-disjointness plus "each vertex is internal
//! in at most one tree" — which is equivalent to the definition and linear
//! in the total edge count. [`CistFamily::verify_definition`] is the
//! definitional oracle: for every vertex pair and every tree pair, the two
//! connecting paths must share no internal vertex and no edge. It costs
//! Θ(4^dim · k²) path extractions and therefore refuses dimensions above 10
//! instead of silently hanging.

use crate::hypercube::{normalize_edge, Edge, Vertex};
use crate::io::{FamilyDocument, FamilyMetadata};
use crate::tree::SpanningTree;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Why a family is not a CIST family, with a re-checkable witness.
/// Tree indices are 0-based; rendered 1-based as `T1`, `T2`, ….
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotSpanning { tree: usize, detail: String },
    SharedEdge { edge: Edge, trees: (usize, usize) },
    SharedInternalVertex { vertex: Vertex, trees: (usize, usize) },
    SharedPathVertex { pair: (Vertex, Vertex), trees: (usize, usize), vertex: Vertex },
    SharedPathEdge { pair: (Vertex, Vertex), trees: (usize, usize), edge: Edge },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSpanning { tree, detail } => {
                write!(f, "tree T{} is not a spanning tree: {detail}", tree + 1)
            }
            Violation::SharedEdge { edge: (u, v), trees: (i, j) } => {
                write!(f, "edge ({u}, {v}) appears in both T{} and T{}", i + 1, j + 1)
            }
            Violation::SharedInternalVertex { vertex, trees: (i, j) } => {
                write!(f, "vertex {vertex} is internal in both T{} and T{}", i + 1, j + 1)
            }
            Violation::SharedPathVertex { pair: (x, y), trees: (i, j), vertex } => {
                write!(
                    f,
                    "paths {x}-{y} in T{} and T{} share internal vertex {vertex}",
                    i + 1,
                    j + 1
                )
            }
            Violation::SharedPathEdge { pair: (x, y), trees: (i, j), edge: (u, v) } => {
                write!(
                    f,
                    "paths {x}-{y} in T{} and T{} share edge ({u}, {v})",
                    i + 1,
                    j + 1
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(Violation),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Verification status carried by a family.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum VerifyState {
    #[default]
    Unchecked,
    Accepted,
    Rejected(Violation),
}

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("a CIST family needs at least 2 trees, got {k}")]
    TooFew { k: usize },
    #[error("trees have mixed dimensions {dims:?}")]
    MixedDims { dims: Vec<u32> },
    #[error("tree T{}: {source}", index + 1)]
    InvalidTree {
        index: usize,
        source: crate::tree::TreeRejection,
    },
}

/// The definitional oracle refuses large dimensions rather than running for
/// hours; the criterion verifier has no such limit.
#[derive(Debug, Error)]
#[error("definitional verification is Θ(4^dim·k²); dim {dim} exceeds the guard ({max})")]
pub struct DefinitionCostError {
    pub dim: u32,
    pub max: u32,
}

/// The largest dimension [`CistFamily::verify_definition`] will accept.
pub const DEFINITION_DIM_GUARD: u32 = 10;

/// A family of k ≥ 2 spanning trees of the same hypercube, with its
/// verification state and the join-edge history of any lifts that built it.
#[derive(Debug, Clone)]
pub struct CistFamily {
    dim: u32,
    trees: Vec<SpanningTree>,
    verified: VerifyState,
    /// Per tree: join edges added by successive lifts, oldest first.
    pub(crate) lift_joins: Vec<Vec<Edge>>,
}

impl CistFamily {
    pub fn new(trees: Vec<SpanningTree>) -> Result<Self, FamilyError> {
        if trees.len() < 2 {
            return Err(FamilyError::TooFew { k: trees.len() });
        }
        let dims: Vec<u32> = trees.iter().map(|t| t.dim()).collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(FamilyError::MixedDims { dims });
        }
        let k = trees.len();
        Ok(CistFamily {
            dim: dims[0],
            trees,
            verified: VerifyState::Unchecked,
            lift_joins: vec![Vec::new(); k],
        })
    }

    /// Rebuilds a family from a parsed document. Stored verification flags
    /// are never trusted; the state always starts unchecked. Join history
    /// in the metadata is restored when its shape matches.
    pub fn from_document(doc: &FamilyDocument) -> Result<Self, FamilyError> {
        let mut trees = Vec::with_capacity(doc.trees.len());
        for (index, edges) in doc.trees.iter().enumerate() {
            let t = SpanningTree::from_edges(doc.dim, edges)
                .map_err(|source| FamilyError::InvalidTree { index, source })?;
            trees.push(t);
        }
        let mut family = CistFamily::new(trees)?;
        if let Some(joins) = doc.metadata.as_ref().and_then(|m| m.lift_joins.as_ref()) {
            if joins.len() == family.k() {
                family.lift_joins = joins.clone();
            }
        }
        Ok(family)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    pub fn state(&self) -> &VerifyState {
        &self.verified
    }

    pub fn lift_joins(&self) -> &[Vec<Edge>] {
        &self.lift_joins
    }

    /// The Hasunuma criterion: trees pairwise edge-disjoint and every vertex
    /// internal in at most one tree. Scan order is deterministic — trees in
    /// index order with edges sorted, then vertices ascending — so the first
    /// violation is reproducible. The verdict is stored on the family.
    pub fn verify_criterion(&mut self) -> Verdict {
        let verdict = criterion_verdict(&self.trees);
        self.verified = match &verdict {
            Verdict::Accepted => VerifyState::Accepted,
            Verdict::Rejected(v) => VerifyState::Rejected(v.clone()),
        };
        verdict
    }

    /// The definitional check: all vertex pairs, all tree pairs, paths
    /// sharing nothing but endpoints. Refuses dim > 10.
    pub fn verify_definition(&self) -> Result<Verdict, DefinitionCostError> {
        if self.dim > DEFINITION_DIM_GUARD {
            return Err(DefinitionCostError { dim: self.dim, max: DEFINITION_DIM_GUARD });
        }
        let nv = 1u32 << self.dim;
        // Timestamped marks so the scratch arrays are allocated once.
        let mut vertex_mark = vec![0u32; nv as usize];
        let mut edge_mark: HashMap<u64, u32> = HashMap::new();
        let mut stamp = 0u32;
        for x in 0..nv {
            for y in x + 1..nv {
                for i in 0..self.trees.len() {
                    let pi = self.trees[i].path(x, y).expect("labels in range");
                    for j in i + 1..self.trees.len() {
                        let pj = self.trees[j].path(x, y).expect("labels in range");
                        stamp += 1;
                        for &v in &pi[1..pi.len() - 1] {
                            vertex_mark[v as usize] = stamp;
                        }
                        let mut shared_vertex: Option<Vertex> = None;
                        for &v in &pj[1..pj.len() - 1] {
                            if vertex_mark[v as usize] == stamp
                                && shared_vertex.is_none_or(|s| v < s)
                            {
                                shared_vertex = Some(v);
                            }
                        }
                        if let Some(vertex) = shared_vertex {
                            return Ok(Verdict::Rejected(Violation::SharedPathVertex {
                                pair: (x, y),
                                trees: (i, j),
                                vertex,
                            }));
                        }
                        for w in pi.windows(2) {
                            edge_mark.insert(edge_key(w[0], w[1]), stamp);
                        }
                        let mut shared_edge: Option<Edge> = None;
                        for w in pj.windows(2) {
                            let e = normalize_edge(w[0], w[1]);
                            if edge_mark.get(&edge_key(w[0], w[1])) == Some(&stamp)
                                && shared_edge.is_none_or(|s| e < s)
                            {
                                shared_edge = Some(e);
                            }
                        }
                        if let Some(edge) = shared_edge {
                            return Ok(Verdict::Rejected(Violation::SharedPathEdge {
                                pair: (x, y),
                                trees: (i, j),
                                edge,
                            }));
                        }
                    }
                }
            }
        }
        Ok(Verdict::Accepted)
    }

    /// Per-tree summary: (diameter, internal-vertex count, center).
    pub fn family_stats(&self) -> Vec<TreeStats> {
        self.trees
            .iter()
            .map(|t| TreeStats {
                diameter: t.diameter(),
                internal_count: t.internal_vertices().len() as u64,
                center: t.center(),
            })
            .collect()
    }

    /// Serializable document with recomputed metadata. `verified` reflects
    /// the current state; join history is included once a lift happened.
    pub fn to_document(&self) -> FamilyDocument {
        let trees: Vec<Vec<Edge>> = self.trees.iter().map(|t| t.edges().collect()).collect();
        let mut doc = FamilyDocument::new(self.dim, trees);
        doc.metadata = Some(FamilyMetadata {
            diameters: Some(self.trees.iter().map(|t| t.diameter()).collect()),
            internal_counts: Some(
                self.trees
                    .iter()
                    .map(|t| t.internal_vertices().len() as u64)
                    .collect(),
            ),
            verified: match &self.verified {
                VerifyState::Unchecked => None,
                VerifyState::Accepted => Some(true),
                VerifyState::Rejected(_) => Some(false),
            },
            lift_joins: if self.lift_joins.iter().any(|j| !j.is_empty()) {
                Some(self.lift_joins.clone())
            } else {
                None
            },
        });
        doc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub diameter: u32,
    pub internal_count: u64,
    pub center: Vec<Vertex>,
}

fn edge_key(u: Vertex, v: Vertex) -> u64 {
    let (a, b) = normalize_edge(u, v);
    (u64::from(a) << 32) | u64::from(b)
}

fn criterion_verdict(trees: &[SpanningTree]) -> Verdict {
    // (a) edge-disjointness, trees in index order, edges ascending
    let mut owner: HashMap<Edge, usize> = HashMap::new();
    for (i, t) in trees.iter().enumerate() {
        for e in t.edges() {
            if let Some(&j) = owner.get(&e) {
                return Verdict::Rejected(Violation::SharedEdge { edge: e, trees: (j, i) });
            }
            owner.insert(e, i);
        }
    }
    // (b) each vertex internal in at most one tree, vertices ascending
    let nv = 1u32 << trees[0].dim();
    for v in 0..nv {
        let mut first: Option<usize> = None;
        for (i, t) in trees.iter().enumerate() {
            if t.is_internal(v) {
                match first {
                    None => first = Some(i),
                    Some(j) => {
                        return Verdict::Rejected(Violation::SharedInternalVertex {
                            vertex: v,
                            trees: (j, i),
                        })
                    }
                }
            }
        }
    }
    Verdict::Accepted
}

/// Verifies a parsed document in one step, folding per-tree spanning
/// failures into a `NotSpanning` rejection instead of a construction error.
/// Structural problems (too few trees, mixed dimensions) remain errors.
pub fn check_document(doc: &FamilyDocument) -> Result<(Option<CistFamily>, Verdict), FamilyError> {
    match CistFamily::from_document(doc) {
        Ok(mut family) => {
            let verdict = family.verify_criterion();
            Ok((Some(family), verdict))
        }
        Err(FamilyError::InvalidTree { index, source }) => Ok((
            None,
            Verdict::Rejected(Violation::NotSpanning {
                tree: index,
                detail: source.to_string(),
            }),
        )),
        Err(e) => Err(e),
    }
}
