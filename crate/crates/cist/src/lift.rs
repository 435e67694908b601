//! The inductive construction: k CISTs of Q_n become k CISTs of Q_{n+1}.
//!
//! Each tree is mirrored — copy 0 keeps its labels, copy 1 adds 2^n — and
//! the two copies are joined by the single crossing edge at a central
//! vertex. Joining at the center gives the new tree the smallest possible
//! diameter, exactly 2·⌈d/2⌉ + 1 for an old diameter d, which keeps the
//! family within the 2n+1 / 2n+4 / 2n+3 bounds at every dimension.
//!
//! When a tree's center has two vertices, the join picks the member with
//! the smaller total distance to all vertices, breaking exact ties by
//! smallest label. Total distance separates the Q_7 base family's two-vertex
//! centers deterministically and is invariant under relabeling; after one
//! lift the two criteria coincide because the mirrored centers tie.

use crate::hypercube::{Edge, Vertex, MAX_DIM};
use crate::tree::SpanningTree;
use crate::verify::{CistFamily, Verdict, VerifyState, Violation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("lift requires a family in the accepted state; run verify_criterion first")]
    Unverified,
    #[error("lifting to dimension {target} exceeds the supported maximum {max}")]
    DimCap { target: u32, max: u32 },
    #[error("target dimension {target} is below the family's dimension {current}")]
    BelowCurrent { current: u32, target: u32 },
    #[error("tree T{} has diameter {diameter} < 2, so its center vertices are leaves and no internal join vertex exists", tree + 1)]
    NoInternalCenter { tree: usize, diameter: u32 },
    #[error("lifted family unexpectedly failed the criterion: {violation}")]
    PostCheckFailed { violation: Violation },
}

/// The per-tree join choice for one lift step from `from_dim` to
/// `from_dim + 1`: tree i is joined to its mirror by the crossing edge
/// ⟨joins[i], joins[i] + 2^from_dim⟩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftPlan {
    pub from_dim: u32,
    pub joins: Vec<Vertex>,
}

impl LiftPlan {
    pub fn join_edge(&self, i: usize) -> Edge {
        (self.joins[i], self.joins[i] + (1 << self.from_dim))
    }
}

/// Picks the join vertex for every tree: the central vertex of minimum
/// total distance (ties by smallest label). Planning does not require a
/// verified family; [`lift_once`] enforces that gate.
pub fn plan_lift(family: &CistFamily) -> Result<LiftPlan, LiftError> {
    let mut joins = Vec::with_capacity(family.k());
    for (tree, t) in family.trees().iter().enumerate() {
        let candidates = t.center();
        if candidates.iter().all(|&c| !t.is_internal(c)) {
            return Err(LiftError::NoInternalCenter { tree, diameter: t.diameter() });
        }
        let best = candidates
            .iter()
            .copied()
            .filter(|&c| t.is_internal(c))
            .min_by_key(|&c| {
                let total: u64 = t
                    .distances_from(c)
                    .expect("center label is in range")
                    .iter()
                    .map(|&d| u64::from(d))
                    .sum();
                (total, c)
            })
            .expect("at least one internal center candidate");
        joins.push(best);
    }
    Ok(LiftPlan { from_dim: family.dim(), joins })
}

/// One lift step. Requires the family to be in the accepted state —
/// mirroring preserves complete independence only for a family that has
/// it — and returns the new family already criterion-verified, with the
/// join edge appended to each tree's lift history.
pub fn lift_once(family: &CistFamily) -> Result<CistFamily, LiftError> {
    if *family.state() != VerifyState::Accepted {
        return Err(LiftError::Unverified);
    }
    let new_dim = family.dim() + 1;
    if new_dim > MAX_DIM {
        return Err(LiftError::DimCap { target: new_dim, max: MAX_DIM });
    }
    let plan = plan_lift(family)?;
    let high = 1u32 << family.dim();

    let mut trees = Vec::with_capacity(family.k());
    for (i, t) in family.trees().iter().enumerate() {
        let mut edges: Vec<Edge> = Vec::with_capacity(t.edge_count() as usize * 2 + 1);
        for (u, v) in t.edges() {
            edges.push((u, v));
            edges.push((u + high, v + high));
        }
        edges.push(plan.join_edge(i));
        let lifted = SpanningTree::from_edges(new_dim, &edges)
            .expect("two mirrored spanning trees joined by one crossing edge span Q_{n+1}");
        trees.push(lifted);
    }

    let mut lifted = CistFamily::new(trees).expect("same k and dim as the input family");
    lifted.lift_joins = family
        .lift_joins()
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let mut h = h.clone();
            h.push(plan.join_edge(i));
            h
        })
        .collect();
    match lifted.verify_criterion() {
        Verdict::Accepted => Ok(lifted),
        Verdict::Rejected(violation) => Err(LiftError::PostCheckFailed { violation }),
    }
}

/// Iterated [`lift_once`] up to `target`. `target == dim` is the identity.
pub fn lift_to(family: &CistFamily, target: u32) -> Result<CistFamily, LiftError> {
    if target > MAX_DIM {
        return Err(LiftError::DimCap { target, max: MAX_DIM });
    }
    if target < family.dim() {
        return Err(LiftError::BelowCurrent { current: family.dim(), target });
    }
    let mut current = family.clone();
    while current.dim() < target {
        current = lift_once(&current)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q7::Q7Archive;

    fn verified_q7() -> CistFamily {
        let mut f = CistFamily::new(Q7Archive::load().unwrap().into_trees()).unwrap();
        assert!(f.verify_criterion().is_accepted());
        f
    }

    #[test]
    fn q7_plan_joins_at_21_58_32() {
        let plan = plan_lift(&verified_q7()).unwrap();
        assert_eq!(plan.joins, vec![21, 58, 32]);
        assert_eq!(plan.join_edge(0), (21, 149));
        assert_eq!(plan.join_edge(1), (58, 186));
        assert_eq!(plan.join_edge(2), (32, 160));
    }

    #[test]
    fn lift_once_builds_the_dim8_family() {
        let lifted = lift_once(&verified_q7()).unwrap();
        assert_eq!(lifted.dim(), 8);
        assert_eq!(*lifted.state(), VerifyState::Accepted);
        let diameters: Vec<u32> = lifted.trees().iter().map(|t| t.diameter()).collect();
        assert_eq!(diameters, vec![17, 19, 19]);
        for t in lifted.trees() {
            assert_eq!(t.edge_count(), 255);
        }
    }

    #[test]
    fn mirroring_keeps_both_copies_and_one_crossing_edge() {
        let base = verified_q7();
        let lifted = lift_once(&base).unwrap();
        for (t, lt) in base.trees().iter().zip(lifted.trees()) {
            for (u, v) in t.edges() {
                assert!(lt.contains_edge(u, v));
                assert!(lt.contains_edge(u + 128, v + 128));
            }
            let crossing: Vec<Edge> =
                lt.edges().filter(|&(u, v)| (u ^ v) == 128).collect();
            assert_eq!(crossing.len(), 1);
        }
        assert_eq!(
            lifted.lift_joins(),
            &[vec![(21, 149)], vec![(58, 186)], vec![(32, 160)]]
        );
    }

    #[test]
    fn internal_vertex_counts_double() {
        let lifted = lift_once(&verified_q7()).unwrap();
        let counts: Vec<usize> = lifted
            .trees()
            .iter()
            .map(|t| t.internal_vertices().len())
            .collect();
        assert_eq!(counts, vec![88, 82, 84]);
    }

    #[test]
    fn diameter_recurrence_is_exact() {
        let base = verified_q7();
        let lifted = lift_once(&base).unwrap();
        for (t, lt) in base.trees().iter().zip(lifted.trees()) {
            let d = t.diameter();
            assert_eq!(lt.diameter(), 2 * d.div_ceil(2) + 1);
        }
    }

    #[test]
    fn unverified_input_is_refused() {
        let f = CistFamily::new(Q7Archive::load().unwrap().into_trees()).unwrap();
        assert!(matches!(lift_once(&f), Err(LiftError::Unverified)));
    }

    #[test]
    fn lift_to_is_identity_at_the_current_dim() {
        let f = verified_q7();
        let same = lift_to(&f, 7).unwrap();
        assert_eq!(same.dim(), 7);
        for (a, b) in f.trees().iter().zip(same.trees()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn lift_to_rejects_bad_targets() {
        let f = verified_q7();
        assert!(matches!(
            lift_to(&f, 6),
            Err(LiftError::BelowCurrent { current: 7, target: 6 })
        ));
        assert!(matches!(
            lift_to(&f, 29),
            Err(LiftError::DimCap { target: 29, max: 28 })
        ));
    }

    #[test]
    fn join_history_accumulates_and_join_vertices_are_stable() {
        let f = verified_q7();
        let nine = lift_to(&f, 9).unwrap();
        // After one lift the mirrored centers tie on total distance, so the
        // smallest label — the original join vertex — wins again.
        assert_eq!(
            nine.lift_joins(),
            &[
                vec![(21, 149), (21, 277)],
                vec![(58, 186), (58, 314)],
                vec![(32, 160), (32, 288)],
            ]
        );
    }

    #[test]
    fn planning_reports_leaf_centers() {
        let t = SpanningTree::from_edges(1, &[(0, 1)]).unwrap();
        let f = CistFamily::new(vec![t.clone(), t]).unwrap();
        assert!(matches!(
            plan_lift(&f),
            Err(LiftError::NoInternalCenter { tree: 0, diameter: 1 })
        ));
    }
}
