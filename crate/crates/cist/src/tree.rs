//! Spanning trees of a hypercube.
//!
//! A [`SpanningTree`] is immutable after construction. It stores a CSR
//! adjacency restricted to tree edges plus parent/depth arrays rooted at
//! vertex 0, so path queries climb parent pointers in O(path length) and the
//! exact diameter comes from a double BFS sweep done once at build time.

use crate::hypercube::{normalize_edge, Edge, Hypercube, HypercubeError, Vertex, MAX_DIM};
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

/// One reason an edge list fails to be a spanning tree of Q_dim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    DimOutOfRange { dim: u32 },
    WrongEdgeCount { expected: u64, actual: u64 },
    LabelOutOfRange { edge: (Vertex, Vertex) },
    NotHypercubeEdge { edge: (Vertex, Vertex) },
    DuplicateEdge { edge: Edge },
    Disconnected { reached: u64, witness: Vertex },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::DimOutOfRange { dim } => {
                write!(f, "dimension {dim} is outside 1..={MAX_DIM}")
            }
            TreeViolation::WrongEdgeCount { expected, actual } => {
                write!(f, "expected {expected} edges, got {actual}")
            }
            TreeViolation::LabelOutOfRange { edge } => {
                write!(f, "edge ({}, {}) has an out-of-range label", edge.0, edge.1)
            }
            TreeViolation::NotHypercubeEdge { edge } => {
                write!(f, "({}, {}) is not a hypercube edge", edge.0, edge.1)
            }
            TreeViolation::DuplicateEdge { edge } => {
                write!(f, "duplicate edge ({}, {})", edge.0, edge.1)
            }
            TreeViolation::Disconnected { reached, witness } => {
                write!(f, "not connected: {reached} vertices reachable from 0, vertex {witness} is not")
            }
        }
    }
}

/// Structured rejection from [`SpanningTree::from_edges`], listing every
/// violated invariant rather than just the first.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub struct TreeRejection {
    pub violations: Vec<TreeViolation>,
}

impl fmt::Display for TreeRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a spanning tree: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A validated spanning tree of Q_dim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    dim: u32,
    offsets: Vec<u32>,
    targets: Vec<Vertex>,
    parent: Vec<Vertex>,
    depth: Vec<u32>,
    diameter: u32,
    diameter_ends: (Vertex, Vertex),
}

impl SpanningTree {
    /// Builds and validates a spanning tree from an edge list. Edges may come
    /// in any order and either endpoint order. On failure the rejection lists
    /// all violations found, in a deterministic order.
    pub fn from_edges(dim: u32, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeRejection> {
        let mut violations = Vec::new();
        let cube = match Hypercube::new(dim) {
            Ok(c) => c,
            Err(_) => {
                return Err(TreeRejection {
                    violations: vec![TreeViolation::DimOutOfRange { dim }],
                })
            }
        };
        let n = cube.vertex_count();
        let expected = n - 1;
        if edges.len() as u64 != expected {
            violations.push(TreeViolation::WrongEdgeCount {
                expected,
                actual: edges.len() as u64,
            });
        }

        let mut seen: HashSet<Edge> = HashSet::with_capacity(edges.len());
        let mut valid: Vec<Edge> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if !cube.contains(u) || !cube.contains(v) {
                violations.push(TreeViolation::LabelOutOfRange { edge: (u, v) });
                continue;
            }
            if (u ^ v).count_ones() != 1 {
                violations.push(TreeViolation::NotHypercubeEdge { edge: (u, v) });
                continue;
            }
            let e = normalize_edge(u, v);
            if !seen.insert(e) {
                violations.push(TreeViolation::DuplicateEdge { edge: e });
                continue;
            }
            valid.push(e);
        }

        // CSR over the surviving edges; neighbor lists sorted ascending.
        let nv = n as usize;
        let mut degree = vec![0u32; nv];
        for &(u, v) in &valid {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = vec![0u32; nv + 1];
        for i in 0..nv {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; valid.len() * 2];
        for &(u, v) in &valid {
            targets[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
        for i in 0..nv {
            targets[offsets[i] as usize..offsets[i + 1] as usize].sort_unstable();
        }

        // Root at 0, recording parents and depths.
        let mut parent = vec![0u32; nv];
        let mut depth = vec![u32::MAX; nv];
        let mut queue: Vec<Vertex> = Vec::with_capacity(nv);
        depth[0] = 0;
        queue.push(0);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &y in &targets[offsets[x as usize] as usize..offsets[x as usize + 1] as usize] {
                if depth[y as usize] == u32::MAX {
                    depth[y as usize] = depth[x as usize] + 1;
                    parent[y as usize] = x;
                    queue.push(y);
                }
            }
        }
        if (queue.len() as u64) < n {
            let witness = (0..nv as u32).find(|&v| depth[v as usize] == u32::MAX).unwrap();
            violations.push(TreeViolation::Disconnected {
                reached: queue.len() as u64,
                witness,
            });
        }

        if !violations.is_empty() {
            return Err(TreeRejection { violations });
        }

        let mut tree = SpanningTree {
            dim,
            offsets,
            targets,
            parent,
            depth,
            diameter: 0,
            diameter_ends: (0, 0),
        };
        let (a, da) = tree.farthest_from(0);
        let (b, db) = tree.farthest_from(a);
        debug_assert!(db >= da);
        tree.diameter = db;
        tree.diameter_ends = (a, b);
        Ok(tree)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.dim
    }

    pub fn edge_count(&self) -> u64 {
        self.targets.len() as u64 / 2
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn parent(&self, v: Vertex) -> Vertex {
        self.parent[v as usize]
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v as usize]
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        let n = 1u64 << self.dim;
        u64::from(u) < n && u64::from(v) < n && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Tree edges, normalized `(min, max)` and ascending.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..1u32 << self.dim).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    fn check(&self, v: Vertex) -> Result<(), HypercubeError> {
        if u64::from(v) < self.vertex_count() {
            Ok(())
        } else {
            Err(HypercubeError::LabelOutOfRange { label: v, dim: self.dim })
        }
    }

    /// The unique tree path from `u` to `v`, endpoints inclusive. Climbs
    /// parent pointers from the deeper endpoint until the two walks meet.
    pub fn path(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, HypercubeError> {
        self.check(u)?;
        self.check(v)?;
        let mut front = vec![u];
        let mut back = vec![v];
        let (mut a, mut b) = (u, v);
        while self.depth(a) > self.depth(b) {
            a = self.parent(a);
            front.push(a);
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent(b);
            back.push(b);
        }
        while a != b {
            a = self.parent(a);
            front.push(a);
            b = self.parent(b);
            back.push(b);
        }
        back.pop(); // meeting vertex is already at the end of `front`
        front.extend(back.into_iter().rev());
        Ok(front)
    }

    /// Tree distance `d_T(u, v)` without materializing the path.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<u32, HypercubeError> {
        self.check(u)?;
        self.check(v)?;
        let (mut a, mut b) = (u, v);
        while self.depth(a) > self.depth(b) {
            a = self.parent(a);
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent(b);
        }
        while a != b {
            a = self.parent(a);
            b = self.parent(b);
        }
        Ok(self.depth(u) + self.depth(v) - 2 * self.depth(a))
    }

    /// BFS distances from `s` to every vertex.
    pub fn distances_from(&self, s: Vertex) -> Result<Vec<u32>, HypercubeError> {
        self.check(s)?;
        let nv = self.vertex_count() as usize;
        let mut dist = vec![u32::MAX; nv];
        let mut queue: Vec<Vertex> = Vec::with_capacity(nv);
        dist[s as usize] = 0;
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &y in self.neighbors(x) {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push(y);
                }
            }
        }
        Ok(dist)
    }

    /// Farthest vertex from `s` (smallest label on ties) and its distance.
    fn farthest_from(&self, s: Vertex) -> (Vertex, u32) {
        let dist = self.distances_from(s).expect("root label is in range");
        let mut best = (s, 0);
        for (v, &d) in dist.iter().enumerate() {
            if d > best.1 {
                best = (v as Vertex, d);
            }
        }
        best
    }

    /// Exact tree diameter, computed once at build time by double sweep.
    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// The two endpoints realizing the diameter found by the double sweep.
    pub fn diameter_endpoints(&self) -> (Vertex, Vertex) {
        self.diameter_ends
    }

    /// Max distance from `v` to any vertex. Equal to the larger of the
    /// distances to the two diameter endpoints.
    pub fn eccentricity(&self, v: Vertex) -> Result<u32, HypercubeError> {
        let (a, b) = self.diameter_ends;
        Ok(self.distance(a, v)?.max(self.distance(b, v)?))
    }

    /// All vertices of minimum eccentricity, ascending. A tree has one or
    /// two (adjacent) central vertices.
    pub fn center(&self) -> Vec<Vertex> {
        let (a, b) = self.diameter_ends;
        let da = self.distances_from(a).expect("endpoint in range");
        let db = self.distances_from(b).expect("endpoint in range");
        let radius = (0..da.len())
            .map(|v| da[v].max(db[v]))
            .min()
            .expect("tree is nonempty");
        (0..da.len() as u32)
            .filter(|&v| da[v as usize].max(db[v as usize]) == radius)
            .collect()
    }

    pub fn is_internal(&self, v: Vertex) -> bool {
        self.degree(v) >= 2
    }

    /// Vertices of degree >= 2, ascending.
    pub fn internal_vertices(&self) -> Vec<Vertex> {
        (0..1u32 << self.dim).filter(|&v| self.degree(v) >= 2).collect()
    }
}
