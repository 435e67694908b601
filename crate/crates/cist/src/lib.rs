//! Completely independent spanning trees (CISTs) in hypercubes.
//!
//! A set of spanning trees of a graph is *completely independent* when, for
//! every pair of vertices, the paths joining them in the different trees
//! share nothing but their endpoints. This crate constructs such families
//! for hypercubes: it ships a verified archive of three CISTs of Q_7, lifts
//! any verified family one dimension at a time with controlled diameter
//! growth, checks candidate families against both the pairwise-path
//! definition and the edge/internal-vertex criterion, and settles the
//! feasibility arithmetic (packing bounds, the strict-inequality lemma, and
//! the divisibility scan) that governs which dimensions can host a family
//! at all. A small routing layer demonstrates the fault-tolerance payoff.

pub mod condition;
pub mod hypercube;
pub mod io;
pub mod lift;
pub mod q7;
pub mod routing;
pub mod tree;
pub mod verify;

pub use condition::{
    condition_bipartite, condition_regular, conjecture_verdict, divides_exception, lemma_strict,
    search_exceptions, ConditionError, ConditionReport, ConjectureVerdict, Variant, VerdictClass,
};
pub use hypercube::{Edge, Hypercube, HypercubeError, Side, Split, Vertex, MAX_DIM};
pub use io::{EdgeListDocument, FamilyDocument, FamilyMetadata, IoError};
pub use lift::{lift_once, lift_to, plan_lift, LiftError, LiftPlan};
pub use q7::{load_q7, Q7Archive, Q7Error};
pub use routing::{disjoint_routes, fault_route, FaultSet, RouteOutcome, RoutingError};
pub use verify::{
    check_document, CistFamily, DefinitionCostError, FamilyError, TreeStats, Verdict,
    VerifyState, Violation,
};
pub use tree::{SpanningTree, TreeRejection, TreeViolation};
