//! Implicit model of the n-dimensional hypercube Q_n.
//!
//! Vertices are plain integer labels in `[0, 2^n)`; two labels are adjacent
//! exactly when they differ in one bit. The graph is never materialized —
//! adjacency is computed by XOR on demand, which keeps memory flat even for
//! large dimensions.

use thiserror::Error;

/// A hypercube vertex label. Bit `i` (value `2^i`) is coordinate `i`; the
/// highest bit is the copy-prefix bit of the recursive two-copy decomposition.
pub type Vertex = u32;

/// An unordered hypercube edge, normalized so the smaller label comes first.
pub type Edge = (Vertex, Vertex);

/// Hard cap on the dimension. `2^28` per-vertex arrays are the practical
/// desk-scale memory limit.
pub const MAX_DIM: u32 = 28;

/// Normalizes an edge to `(min, max)` order.
pub fn normalize_edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypercubeError {
    #[error("dimension {0} is outside 1..={MAX_DIM}")]
    DimOutOfRange(u32),
    #[error("label {label} is out of range for Q_{dim}")]
    LabelOutOfRange { label: Vertex, dim: u32 },
    #[error("Q_{0} cannot be split into two copies (dimension must be >= 2)")]
    SplitBelowDim2(u32),
}

/// The n-dimensional hypercube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypercube {
    dim: u32,
}

impl Hypercube {
    pub fn new(dim: u32) -> Result<Self, HypercubeError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(HypercubeError::DimOutOfRange(dim));
        }
        Ok(Hypercube { dim })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.dim
    }

    pub fn edge_count(&self) -> u64 {
        u64::from(self.dim) << (self.dim - 1)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        u64::from(v) < self.vertex_count()
    }

    fn check(&self, v: Vertex) -> Result<(), HypercubeError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(HypercubeError::LabelOutOfRange {
                label: v,
                dim: self.dim,
            })
        }
    }

    /// All labels of the cube, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..(1u32 << self.dim)
    }

    /// The neighbors of `v`, in bit-flip order (`v ^ 1`, `v ^ 2`, ...).
    pub fn neighbors(&self, v: Vertex) -> Result<Vec<Vertex>, HypercubeError> {
        self.check(v)?;
        Ok((0..self.dim).map(|i| v ^ (1 << i)).collect())
    }

    /// True iff `u` and `v` differ in exactly one bit.
    pub fn is_edge(&self, u: Vertex, v: Vertex) -> Result<bool, HypercubeError> {
        self.check(u)?;
        self.check(v)?;
        Ok((u ^ v).count_ones() == 1)
    }

    /// Every edge of the cube, normalized and ascending. Lazy; the full
    /// stream has `dim * 2^(dim-1)` items.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let dim = self.dim;
        self.vertices().flat_map(move |u| {
            (0..dim)
                .map(move |i| u | (1 << i))
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// The recursive two-copy decomposition along the highest coordinate.
    pub fn split(&self) -> Result<Split, HypercubeError> {
        if self.dim < 2 {
            return Err(HypercubeError::SplitBelowDim2(self.dim));
        }
        Ok(Split { dim: self.dim })
    }
}

/// Which side of the even/odd-parity bipartition a label falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Labels with an even number of 1 bits.
    X,
    /// Labels with an odd number of 1 bits.
    Y,
}

/// The bipartition class of a label: `X` for even popcount, `Y` for odd.
pub fn partition_side(v: Vertex) -> Side {
    if v.count_ones().is_multiple_of(2) {
        Side::X
    } else {
        Side::Y
    }
}

/// Q_n viewed as two copies of Q_{n-1} plus the crossing edges between them.
#[derive(Debug, Clone, Copy)]
pub struct Split {
    dim: u32,
}

impl Split {
    /// Value of the copy-prefix bit, `2^(dim-1)`.
    pub fn prefix_bit(&self) -> Vertex {
        1 << (self.dim - 1)
    }

    /// Labels with the prefix bit clear.
    pub fn copy0(&self) -> impl Iterator<Item = Vertex> {
        0..self.prefix_bit()
    }

    /// Labels with the prefix bit set.
    pub fn copy1(&self) -> impl Iterator<Item = Vertex> {
        self.prefix_bit()..(1u32 << self.dim)
    }

    /// The crossing edge set: one edge `(u, u + 2^(dim-1))` per copy-0 label.
    pub fn crossing_edges(&self) -> impl Iterator<Item = Edge> {
        let bit = self.prefix_bit();
        self.copy0().map(move |u| (u, u | bit))
    }

    pub fn crossing_count(&self) -> u64 {
        1u64 << (self.dim - 1)
    }

    pub fn is_crossing_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = normalize_edge(u, v);
        b < (1u32 << self.dim) && a ^ b == self.prefix_bit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn neighbors_by_bit_flip() {
        let q3 = Hypercube::new(3).unwrap();
        assert_eq!(q3.neighbors(0).unwrap(), vec![1, 2, 4]);
        assert_eq!(q3.neighbors(5).unwrap(), vec![4, 7, 1]);
        let q7 = Hypercube::new(7).unwrap();
        assert!(q7.neighbors(21).unwrap().contains(&85));
    }

    #[test]
    fn neighbors_rejects_out_of_range() {
        let q3 = Hypercube::new(3).unwrap();
        assert_eq!(
            q3.neighbors(8),
            Err(HypercubeError::LabelOutOfRange { label: 8, dim: 3 })
        );
    }

    #[test]
    fn is_edge_single_bit() {
        let q7 = Hypercube::new(7).unwrap();
        assert!(q7.is_edge(0, 2).unwrap());
        assert!(q7.is_edge(35, 99).unwrap());
        let q3 = Hypercube::new(3).unwrap();
        assert!(!q3.is_edge(0, 3).unwrap());
        assert!(q3.is_edge(0, 9).is_err());
    }

    #[test]
    fn dim_bounds() {
        assert!(Hypercube::new(0).is_err());
        assert!(Hypercube::new(MAX_DIM).is_ok());
        assert!(Hypercube::new(MAX_DIM + 1).is_err());
    }

    #[test]
    fn parity_sides() {
        assert_eq!(partition_side(0), Side::X);
        assert_eq!(partition_side(7), Side::Y);
        // 21 = 0010101 has three 1 bits
        assert_eq!(partition_side(21), Side::Y);
    }

    #[test]
    fn partition_halves_are_equal() {
        for dim in 1..=10 {
            let q = Hypercube::new(dim).unwrap();
            let x = q.vertices().filter(|&v| partition_side(v) == Side::X).count();
            assert_eq!(x as u64, q.vertex_count() / 2, "dim {dim}");
        }
    }

    #[test]
    fn split_smallest_case() {
        let q2 = Hypercube::new(2).unwrap();
        let s = q2.split().unwrap();
        assert_eq!(s.copy0().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(s.copy1().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(s.crossing_edges().collect::<Vec<_>>(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn split_counts_and_membership() {
        let q3 = Hypercube::new(3).unwrap();
        assert_eq!(q3.split().unwrap().crossing_count(), 4);
        let q8 = Hypercube::new(8).unwrap();
        let s = q8.split().unwrap();
        assert!(s.is_crossing_edge(21, 149));
        assert!(s.is_crossing_edge(149, 21));
        assert!(!s.is_crossing_edge(21, 23));
        assert!(Hypercube::new(1).unwrap().split().is_err());
    }

    #[test]
    fn split_remerge_reproduces_edge_set() {
        for dim in 2..=6u32 {
            let q = Hypercube::new(dim).unwrap();
            let full: BTreeSet<Edge> = q.edges().collect();
            assert_eq!(full.len() as u64, q.edge_count());

            let sub = Hypercube::new(dim - 1).unwrap();
            let split = q.split().unwrap();
            let bit = split.prefix_bit();
            let mut merged: BTreeSet<Edge> = sub.edges().collect();
            merged.extend(sub.edges().map(|(u, v)| (u | bit, v | bit)));
            merged.extend(split.crossing_edges());
            assert_eq!(merged, full, "dim {dim}");
        }
    }

    proptest! {
        #[test]
        fn neighbor_symmetry(dim in 1u32..=10, seed in any::<u32>()) {
            let q = Hypercube::new(dim).unwrap();
            let v = seed % (1u32 << dim);
            let nv = q.neighbors(v).unwrap();
            prop_assert_eq!(nv.len() as u32, dim);
            for u in nv {
                prop_assert!(q.neighbors(u).unwrap().contains(&v));
                // every edge joins X to Y
                prop_assert_ne!(partition_side(u), partition_side(v));
            }
        }
    }
}
