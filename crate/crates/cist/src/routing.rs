//! Fault-tolerant multipath routing over a verified CIST family.
//!
//! The family's defining property does the work: the k paths between any
//! two vertices share only their endpoints, so up to k−1 vertex faults can
//! never block all of them. [`disjoint_routes`] hands out all k paths;
//! [`fault_route`] walks the trees in index order and returns the first
//! path whose interior is fault-free.

use crate::hypercube::Vertex;
use crate::verify::{CistFamily, VerifyState};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RoutingError {
    #[error("routing requires a family in the accepted state; run verify_criterion first")]
    Unverified,
    #[error("label {label} is out of range for dimension {dim}")]
    LabelOutOfRange { label: Vertex, dim: u32 },
    #[error("source and destination are both {x}; no routing needed")]
    SameEndpoints { x: Vertex },
    #[error("endpoint {vertex} is itself faulty")]
    FaultyEndpoint { vertex: Vertex },
    #[error("fault set was built for dimension {faults}, family has dimension {family}")]
    DimMismatch { family: u32, faults: u32 },
}

/// A set of faulty vertices, validated against a dimension at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultSet {
    dim: u32,
    faulty: HashSet<Vertex>,
}

impl FaultSet {
    pub fn new(dim: u32, faults: impl IntoIterator<Item = Vertex>) -> Result<Self, RoutingError> {
        let mut faulty = HashSet::new();
        for f in faults {
            if u64::from(f) >= 1u64 << dim {
                return Err(RoutingError::LabelOutOfRange { label: f, dim });
            }
            faulty.insert(f);
        }
        Ok(FaultSet { dim, faulty })
    }

    pub fn empty(dim: u32) -> Self {
        FaultSet { dim, faulty: HashSet::new() }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.faulty.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.faulty.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faulty.is_empty()
    }
}

/// The result of a fault-avoiding route: either the first fault-free tree
/// path, or a per-tree witness of why every tree is blocked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RouteOutcome {
    Routed { tree: usize, path: Vec<Vertex> },
    /// Every tree path hit a fault; for each tree, the first faulty
    /// interior vertex along its path.
    Unreachable { blocked: Vec<(usize, Vertex)> },
}

fn check_family_and_endpoints(
    family: &CistFamily,
    x: Vertex,
    y: Vertex,
) -> Result<(), RoutingError> {
    if *family.state() != VerifyState::Accepted {
        return Err(RoutingError::Unverified);
    }
    let nv = 1u64 << family.dim();
    for label in [x, y] {
        if u64::from(label) >= nv {
            return Err(RoutingError::LabelOutOfRange { label, dim: family.dim() });
        }
    }
    if x == y {
        return Err(RoutingError::SameEndpoints { x });
    }
    Ok(())
}

/// The k pairwise internally-disjoint x–y paths, one per tree, in tree
/// order. Disjointness is exactly what family verification established.
pub fn disjoint_routes(
    family: &CistFamily,
    x: Vertex,
    y: Vertex,
) -> Result<Vec<Vec<Vertex>>, RoutingError> {
    check_family_and_endpoints(family, x, y)?;
    Ok(family
        .trees()
        .iter()
        .map(|t| t.path(x, y).expect("labels checked above"))
        .collect())
}

/// Routes x → y avoiding faulty interiors: the first tree (in index order)
/// whose path contains no fault strictly between the endpoints wins. With
/// at most k−1 faults a routed outcome is guaranteed; with k or more the
/// outcome may be `Unreachable`, with one blocking witness per tree.
pub fn fault_route(
    family: &CistFamily,
    x: Vertex,
    y: Vertex,
    faults: &FaultSet,
) -> Result<RouteOutcome, RoutingError> {
    check_family_and_endpoints(family, x, y)?;
    if faults.dim() != family.dim() {
        return Err(RoutingError::DimMismatch { family: family.dim(), faults: faults.dim() });
    }
    for vertex in [x, y] {
        if faults.contains(vertex) {
            return Err(RoutingError::FaultyEndpoint { vertex });
        }
    }
    let mut blocked = Vec::new();
    for (tree, t) in family.trees().iter().enumerate() {
        let path = t.path(x, y).expect("labels checked above");
        match path[1..path.len() - 1].iter().find(|&&v| faults.contains(v)) {
            None => return Ok(RouteOutcome::Routed { tree, path }),
            Some(&v) => blocked.push((tree, v)),
        }
    }
    Ok(RouteOutcome::Unreachable { blocked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q7::Q7Archive;

    fn family() -> CistFamily {
        let mut f = CistFamily::new(Q7Archive::load().unwrap().into_trees()).unwrap();
        assert!(f.verify_criterion().is_accepted());
        f
    }

    #[test]
    fn direct_edge_routes_directly() {
        let f = family();
        let routes = disjoint_routes(&f, 0, 64).unwrap();
        assert_eq!(routes.len(), 3);
        assert_eq!(routes[0], vec![0, 64]); // ⟨0,64⟩ is a T_1 edge
    }

    #[test]
    fn interiors_are_pairwise_disjoint() {
        let f = family();
        for (x, y) in [(0u32, 1u32), (37, 101), (5, 120), (0, 127)] {
            let routes = disjoint_routes(&f, x, y).unwrap();
            let mut seen = HashSet::new();
            for path in &routes {
                assert_eq!((path[0], *path.last().unwrap()), (x, y));
                for &v in &path[1..path.len() - 1] {
                    assert!(seen.insert(v), "vertex {v} on two interiors for ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn no_faults_means_the_first_tree_wins() {
        let f = family();
        let outcome = fault_route(&f, 3, 96, &FaultSet::empty(7)).unwrap();
        match outcome {
            RouteOutcome::Routed { tree: 0, path } => {
                assert_eq!(path, f.trees()[0].path(3, 96).unwrap());
            }
            other => panic!("expected tree 0, got {other:?}"),
        }
    }

    #[test]
    fn faults_push_the_route_to_a_later_tree() {
        let f = family();
        let routes = disjoint_routes(&f, 0, 127).unwrap();
        let fault = routes[0][1]; // first interior vertex of the T_1 path
        let faults = FaultSet::new(7, [fault]).unwrap();
        match fault_route(&f, 0, 127, &faults).unwrap() {
            RouteOutcome::Routed { tree, path } => {
                assert!(tree > 0);
                assert!(!path.contains(&fault));
            }
            other => panic!("expected a routed outcome, got {other:?}"),
        }
    }

    #[test]
    fn blocking_every_tree_is_reported_with_witnesses() {
        let f = family();
        let routes = disjoint_routes(&f, 0, 127).unwrap();
        // one interior fault per path; interiors are non-empty since the
        // endpoints differ in all 7 bits
        let faults: Vec<Vertex> = routes.iter().map(|p| p[p.len() / 2]).collect();
        let faults = FaultSet::new(7, faults.clone()).unwrap();
        match fault_route(&f, 0, 127, &faults).unwrap() {
            RouteOutcome::Unreachable { blocked } => {
                assert_eq!(blocked.len(), 3);
                for (tree, v) in blocked {
                    assert!(faults.contains(v));
                    let p = f.trees()[tree].path(0, 127).unwrap();
                    assert!(p[1..p.len() - 1].contains(&v));
                }
            }
            other => panic!("expected unreachable, got {other:?}"),
        }
    }

    #[test]
    fn two_faults_never_block_all_three_trees() {
        let f = family();
        let routes = disjoint_routes(&f, 9, 118).unwrap();
        for a in routes[0][1..routes[0].len() - 1].iter().copied() {
            for b in routes[1][1..routes[1].len() - 1].iter().copied() {
                let faults = FaultSet::new(7, [a, b]).unwrap();
                match fault_route(&f, 9, 118, &faults).unwrap() {
                    RouteOutcome::Routed { path, .. } => {
                        assert!(!path[1..path.len() - 1].iter().any(|&v| faults.contains(v)));
                    }
                    other => panic!("two faults blocked everything: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn error_surface() {
        let f = family();
        assert_eq!(
            fault_route(&f, 5, 5, &FaultSet::empty(7)),
            Err(RoutingError::SameEndpoints { x: 5 })
        );
        assert_eq!(
            disjoint_routes(&f, 0, 200),
            Err(RoutingError::LabelOutOfRange { label: 200, dim: 7 })
        );
        let faults = FaultSet::new(7, [3]).unwrap();
        assert_eq!(
            fault_route(&f, 3, 96, &faults),
            Err(RoutingError::FaultyEndpoint { vertex: 3 })
        );
        assert_eq!(
            fault_route(&f, 0, 127, &FaultSet::empty(8)),
            Err(RoutingError::DimMismatch { family: 7, faults: 8 })
        );
        assert!(matches!(
            FaultSet::new(7, [400]),
            Err(RoutingError::LabelOutOfRange { label: 400, dim: 7 })
        ));
        let unverified = CistFamily::new(Q7Archive::load().unwrap().into_trees()).unwrap();
        assert_eq!(
            disjoint_routes(&unverified, 0, 1),
            Err(RoutingError::Unverified)
        );
    }
}
