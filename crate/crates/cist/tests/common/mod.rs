//! Shared test oracles and generators, implemented independently of the
//! library's own shortcuts: diameters and eccentricities come from
//! exhaustive all-pairs BFS, trees from randomized Prim growth, and the
//! mutation helpers produce families that are guaranteed-invalid in a known
//! way so both verifiers must reject them.

// each integration-test binary compiles this module and uses its own subset
#![allow(dead_code)]

use cist::hypercube::normalize_edge;
use cist::{Edge, SpanningTree, Vertex};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Exhaustive diameter: max BFS distance over all sources.
pub fn oracle_diameter(t: &SpanningTree) -> u32 {
    let nv = t.vertex_count() as u32;
    (0..nv)
        .map(|s| oracle_eccentricity(t, s))
        .max()
        .expect("tree is nonempty")
}

/// Eccentricity straight from a full BFS, no diameter-endpoint shortcut.
pub fn oracle_eccentricity(t: &SpanningTree, v: Vertex) -> u32 {
    *t.distances_from(v).unwrap().iter().max().unwrap()
}

/// Center from a full eccentricity scan.
pub fn oracle_center(t: &SpanningTree) -> Vec<Vertex> {
    let nv = 1u32 << t.dim();
    let eccs: Vec<u32> = (0..nv).map(|v| oracle_eccentricity(t, v)).collect();
    let radius = *eccs.iter().min().unwrap();
    (0..nv).filter(|&v| eccs[v as usize] == radius).collect()
}

/// Random spanning tree of Q_dim by randomized Prim growth: repeatedly
/// attach a uniformly random frontier edge.
pub fn random_spanning_tree(dim: u32, seed: u64) -> SpanningTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = 1u32 << dim;
    let mut in_tree = vec![false; nv as usize];
    let start = rng.gen_range(0..nv);
    in_tree[start as usize] = true;
    let mut frontier: Vec<(Vertex, Vertex)> =
        (0..dim).map(|b| (start, start ^ (1 << b))).collect();
    let mut edges: Vec<Edge> = Vec::with_capacity(nv as usize - 1);
    while edges.len() < nv as usize - 1 {
        let pick = rng.gen_range(0..frontier.len());
        let (u, v) = frontier.swap_remove(pick);
        if in_tree[v as usize] {
            continue;
        }
        in_tree[v as usize] = true;
        edges.push(normalize_edge(u, v));
        for b in 0..dim {
            let w = v ^ (1 << b);
            if !in_tree[w as usize] {
                frontier.push((v, w));
            }
        }
    }
    SpanningTree::from_edges(dim, &edges).expect("randomized Prim spans the cube")
}

/// Which side of the cut each vertex lands on when `cut` is removed from
/// the tree: true for the component of `cut.0`.
fn cut_side(t: &SpanningTree, cut: Edge) -> Vec<bool> {
    let mut side = vec![false; t.vertex_count() as usize];
    side[cut.0 as usize] = true;
    let mut stack = vec![cut.0];
    while let Some(x) = stack.pop() {
        for &y in t.neighbors(x) {
            if normalize_edge(x, y) == cut || side[y as usize] {
                continue;
            }
            side[y as usize] = true;
            stack.push(y);
        }
    }
    side
}

/// Removes one random edge from tree `i` and reconnects the two halves
/// using an edge of another tree in the family. Every spanning tree crosses
/// every cut, so a replacement always exists; the result is a valid
/// spanning tree that provably shares one edge with tree `j`.
/// Returns the mutated trees, the shared edge, and `j`.
pub fn mutate_shared_edge(
    trees: &[SpanningTree],
    i: usize,
    seed: u64,
) -> (Vec<SpanningTree>, Edge, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = &trees[i];
    let edges: Vec<Edge> = t.edges().collect();
    let removed = edges[rng.gen_range(0..edges.len())];
    let side = cut_side(t, removed);
    let mut j = rng.gen_range(0..trees.len() - 1);
    if j >= i {
        j += 1;
    }
    let crossing: Vec<Edge> = trees[j]
        .edges()
        .filter(|&(u, v)| side[u as usize] != side[v as usize])
        .collect();
    let shared = crossing[rng.gen_range(0..crossing.len())];
    let new_edges: Vec<Edge> = edges
        .iter()
        .copied()
        .filter(|&e| e != removed)
        .chain(std::iter::once(shared))
        .collect();
    let mutated = SpanningTree::from_edges(t.dim(), &new_edges)
        .expect("cut reconnected across the same cut is a spanning tree");
    let mut out = trees.to_vec();
    out[i] = mutated;
    (out, shared, j)
}

/// Re-hangs a random leaf of tree `i` onto a vertex that is internal in
/// some other tree and currently a leaf in tree `i`, via an edge unused by
/// the whole family. The result stays pairwise edge-disjoint but one vertex
/// becomes internal in two trees. Returns None when the seed finds no
/// candidate (rare); Some(mutated trees, shared vertex) otherwise.
pub fn mutate_shared_internal(
    trees: &[SpanningTree],
    i: usize,
    seed: u64,
) -> Option<(Vec<SpanningTree>, Vertex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = &trees[i];
    let dim = t.dim();
    let nv = 1u32 << dim;
    let used: std::collections::HashSet<Edge> =
        trees.iter().flat_map(|t| t.edges()).collect();
    let offset = rng.gen_range(0..nv);
    for raw in 0..nv {
        let v = raw ^ offset; // randomize scan order deterministically
        let internal_elsewhere = trees
            .iter()
            .enumerate()
            .any(|(idx, other)| idx != i && other.is_internal(v));
        if !internal_elsewhere || t.is_internal(v) {
            continue;
        }
        for b in 0..dim {
            let w = v ^ (1 << b);
            if t.is_internal(w) || used.contains(&normalize_edge(v, w)) {
                continue;
            }
            let old = normalize_edge(w, t.neighbors(w)[0]);
            if old == normalize_edge(v, w) {
                continue;
            }
            let new_edges: Vec<Edge> = t
                .edges()
                .filter(|&e| e != old)
                .chain(std::iter::once(normalize_edge(v, w)))
                .collect();
            let mutated = SpanningTree::from_edges(dim, &new_edges)
                .expect("re-hanging a leaf keeps the tree spanning");
            let mut out = trees.to_vec();
            out[i] = mutated;
            return Some((out, v));
        }
    }
    None
}
