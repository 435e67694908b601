//! The embedded dimension-7 base family: three completely independent
//! spanning trees of Q_7, shipped as edge-list resources together with
//! their internal-vertex sets.
//!
//! The data is the ground truth for everything the lift produces, so
//! [`Q7Archive::load`] revalidates all of it on every load: each list must
//! be a spanning tree, its computed internal vertices must equal the
//! embedded set, the three trees must be pairwise edge-disjoint with
//! pairwise disjoint internal sets, and the internal sets plus the
//! leaf-everywhere vertices must cover all 128 labels. Any discrepancy is
//! reported as errata naming the tree and the exact difference — never
//! silently repaired.

use crate::hypercube::{Edge, Vertex};
use crate::io::{parse_edge_list, IoError};
use crate::tree::SpanningTree;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

pub const Q7_T1_EDGES: &str = include_str!("../resources/q7_t1.edges");
pub const Q7_T2_EDGES: &str = include_str!("../resources/q7_t2.edges");
pub const Q7_T3_EDGES: &str = include_str!("../resources/q7_t3.edges");

/// Internal vertices of T_1, T_2, T_3 as listed in the source data.
pub const INV_T1: [Vertex; 44] = [
    0, 6, 7, 8, 15, 16, 17, 21, 23, 24, 31, 35, 38, 40, 44, 45, 51, 54, 55, 59, 63, 64, 71, 72,
    74, 77, 79, 80, 82, 85, 88, 91, 92, 97, 99, 100, 102, 110, 111, 113, 115, 122, 123, 124,
];
pub const INV_T2: [Vertex; 41] = [
    3, 4, 11, 12, 13, 18, 22, 28, 30, 36, 37, 41, 42, 43, 49, 53, 56, 58, 60, 61, 65, 67, 68, 70,
    75, 76, 81, 86, 87, 89, 94, 95, 98, 101, 106, 109, 114, 117, 119, 120, 127,
];
pub const INV_T3: [Vertex; 42] = [
    1, 2, 5, 9, 10, 14, 19, 20, 25, 26, 27, 29, 32, 33, 34, 39, 46, 47, 48, 50, 52, 57, 62, 66,
    69, 73, 78, 83, 84, 90, 93, 96, 103, 104, 105, 107, 108, 112, 118, 121, 125, 126,
];

/// One validation discrepancy: which tree (or pair) it concerns, and what
/// exactly disagrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub scope: String,
    pub detail: String,
}

impl fmt::Display for Erratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.scope, self.detail)
    }
}

#[derive(Debug, Error)]
pub enum Q7Error {
    #[error("embedded Q7 data failed validation:\n{}", errata.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n"))]
    Validation { errata: Vec<Erratum> },
}

/// The validated base family.
#[derive(Debug, Clone)]
pub struct Q7Archive {
    trees: [SpanningTree; 3],
    /// Vertices that are leaves in all three trees.
    leaf_only: Vec<Vertex>,
}

impl Q7Archive {
    /// Loads and fully validates the embedded family.
    pub fn load() -> Result<Q7Archive, Q7Error> {
        Q7Archive::build([Q7_T1_EDGES, Q7_T2_EDGES, Q7_T3_EDGES])
    }

    fn build(sources: [&str; 3]) -> Result<Q7Archive, Q7Error> {
        let invs: [&[Vertex]; 3] = [&INV_T1, &INV_T2, &INV_T3];
        let mut errata = Vec::new();
        let mut note = |scope: String, detail: String| errata.push(Erratum { scope, detail });

        let mut trees: Vec<Option<SpanningTree>> = Vec::with_capacity(3);
        let mut edge_sets: Vec<HashSet<Edge>> = Vec::with_capacity(3);
        for (i, src) in sources.iter().enumerate() {
            let scope = format!("T{}", i + 1);
            let doc = match parse_edge_list(src) {
                Ok(d) => d,
                Err(e) => {
                    note(scope, malformed(&e));
                    trees.push(None);
                    edge_sets.push(HashSet::new());
                    continue;
                }
            };
            if doc.dim != 7 {
                note(scope.clone(), format!("declares dimension {}, expected 7", doc.dim));
            }
            edge_sets.push(doc.edges.iter().copied().collect());
            match SpanningTree::from_edges(7, &doc.edges) {
                Ok(t) => {
                    let computed = t.internal_vertices();
                    if computed != invs[i] {
                        let (missing, extra) = set_diff(invs[i], &computed);
                        note(
                            scope,
                            format!(
                                "internal-vertex mismatch: listed but not computed {missing:?}, computed but not listed {extra:?}"
                            ),
                        );
                    }
                    trees.push(Some(t));
                }
                Err(e) => {
                    note(scope, e.to_string());
                    trees.push(None);
                }
            }
        }

        for i in 0..3 {
            for j in i + 1..3 {
                let mut shared: Vec<Edge> =
                    edge_sets[i].intersection(&edge_sets[j]).copied().collect();
                if !shared.is_empty() {
                    shared.sort_unstable();
                    note(
                        format!("T{}/T{}", i + 1, j + 1),
                        format!("share edges {shared:?}"),
                    );
                }
                let overlap: Vec<Vertex> = invs[i]
                    .iter()
                    .copied()
                    .filter(|v| invs[j].contains(v))
                    .collect();
                if !overlap.is_empty() {
                    note(
                        format!("T{}/T{}", i + 1, j + 1),
                        format!("internal-vertex sets overlap at {overlap:?}"),
                    );
                }
            }
        }

        // Coverage: each label is internal somewhere or a leaf everywhere.
        let mut leaf_only = Vec::new();
        if let [Some(t1), Some(t2), Some(t3)] = &trees[..] {
            for v in 0..128u32 {
                let listed = invs.iter().any(|inv| inv.contains(&v));
                let all_leaf = [t1, t2, t3].iter().all(|t| t.degree(v) == 1);
                if !listed && !all_leaf {
                    note(
                        "family".to_string(),
                        format!("vertex {v} is in no internal set yet not a leaf in every tree"),
                    );
                } else if listed && all_leaf {
                    note(
                        "family".to_string(),
                        format!("vertex {v} is listed internal but is a leaf in every tree"),
                    );
                }
                if !listed && all_leaf {
                    leaf_only.push(v);
                }
            }
            for (i, (t, want)) in [t1, t2, t3].iter().zip([15u32, 18, 17]).enumerate() {
                if t.diameter() != want {
                    note(
                        format!("T{}", i + 1),
                        format!("diameter {} differs from the recorded {want}", t.diameter()),
                    );
                }
            }
        }

        if !errata.is_empty() {
            return Err(Q7Error::Validation { errata });
        }
        let mut it = trees.into_iter().map(Option::unwrap);
        Ok(Q7Archive {
            trees: [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()],
            leaf_only,
        })
    }

    pub fn trees(&self) -> &[SpanningTree; 3] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<SpanningTree> {
        self.trees.into()
    }

    /// The embedded internal-vertex set of tree `i` (0-based), ascending.
    pub fn inv(&self, i: usize) -> &'static [Vertex] {
        [&INV_T1[..], &INV_T2[..], &INV_T3[..]][i]
    }

    /// Vertices that are leaves in all three trees.
    pub fn leaf_only(&self) -> &[Vertex] {
        &self.leaf_only
    }
}

/// Convenience alias for [`Q7Archive::load`].
pub fn load_q7() -> Result<Q7Archive, Q7Error> {
    Q7Archive::load()
}

fn malformed(e: &IoError) -> String {
    format!("malformed edge list: {e}")
}

fn set_diff(expected: &[Vertex], computed: &[Vertex]) -> (Vec<Vertex>, Vec<Vertex>) {
    let missing = expected.iter().copied().filter(|v| !computed.contains(v)).collect();
    let extra = computed.iter().copied().filter(|v| !expected.contains(v)).collect();
    (missing, extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_validates() {
        let archive = Q7Archive::load().unwrap();
        for t in archive.trees() {
            assert_eq!(t.dim(), 7);
            assert_eq!(t.edge_count(), 127);
        }
        assert_eq!(archive.leaf_only(), &[116]);
    }

    #[test]
    fn internal_set_sizes_match_the_listing() {
        let archive = Q7Archive::load().unwrap();
        let sizes: Vec<usize> = (0..3)
            .map(|i| archive.trees()[i].internal_vertices().len())
            .collect();
        assert_eq!(sizes, vec![44, 41, 42]);
        assert_eq!(archive.inv(0).len(), 44);
        assert_eq!(archive.inv(1).len(), 41);
        assert_eq!(archive.inv(2).len(), 42);
    }

    #[test]
    fn edge_63_127_belongs_to_t1_only() {
        let archive = Q7Archive::load().unwrap();
        let [t1, t2, t3] = archive.trees();
        assert!(t1.contains_edge(63, 127));
        assert!(!t2.contains_edge(63, 127));
        assert!(!t3.contains_edge(63, 127));
    }

    #[test]
    fn diameters_are_15_18_17() {
        let archive = Q7Archive::load().unwrap();
        let ds: Vec<u32> = archive.trees().iter().map(|t| t.diameter()).collect();
        assert_eq!(ds, vec![15, 18, 17]);
    }

    #[test]
    fn centers_and_eccentricities() {
        let archive = Q7Archive::load().unwrap();
        let [t1, t2, t3] = archive.trees();
        assert_eq!(t1.center(), vec![17, 21]);
        assert_eq!(t2.center(), vec![58]);
        assert_eq!(t3.center(), vec![32, 34]);
        assert_eq!(t1.eccentricity(21).unwrap(), 8);
        assert_eq!(t1.eccentricity(37).unwrap(), 15);
    }

    #[test]
    fn t1_path_between_37_and_101() {
        let archive = Q7Archive::load().unwrap();
        let path = archive.trees()[0].path(37, 101).unwrap();
        assert_eq!(
            path,
            vec![37, 45, 44, 40, 8, 0, 16, 17, 21, 23, 55, 54, 38, 102, 100, 101]
        );
    }

    #[test]
    fn duplicate_edge_is_a_hard_failure() {
        let t1 = Q7_T1_EDGES.replacen("0 2\n", "0 8\n", 1);
        let err = Q7Archive::build([&t1, Q7_T2_EDGES, Q7_T3_EDGES]).unwrap_err();
        let Q7Error::Validation { errata } = err;
        assert!(errata.iter().any(|e| e.scope == "T1" && e.detail.contains("duplicate")));
    }

    #[test]
    fn internal_vertex_drift_is_reported_as_a_diff() {
        // Move leaf 20 from its listed parent 21 to 84: still a spanning
        // tree, but 84 becomes internal without being listed.
        let t1 = Q7_T1_EDGES.replacen("20 21\n", "20 84\n", 1);
        let err = Q7Archive::build([&t1, Q7_T2_EDGES, Q7_T3_EDGES]).unwrap_err();
        let Q7Error::Validation { errata } = err;
        assert!(errata
            .iter()
            .any(|e| e.scope == "T1" && e.detail.contains("computed but not listed [84]")));
    }
}
