//! Finite connected simple graphs with a materialized geodesic metric.
//!
//! Every bound in this crate is phrased in terms of the geodesic distance
//! `ρ`, the counting measure of closed balls `μ(B(λ, R))`, and the three
//! metric-measure constants extracted here:
//!
//! * the doubling constant `D0`, the least `C` with `μ(B(λ,2R)) ≤ C μ(B(λ,R))`;
//! * the density `D1` for a declared dimension `d`, the least `C` with
//!   `μ(B(λ,R)) ≤ C (R+1)^d`;
//! * the lower normality constant `D2`, the largest `C` with
//!   `C (R+1)^d ≤ μ(B(λ,R))` for `0 ≤ R ≤ diam`.

mod generators;
mod metrics;

pub use generators::{circulant, lattice_box, path, random_connected};
pub use metrics::{
    ball_counts, doubling_constant, estimate_dimension, growth_constants, weighted_tail_sums,
    GraphMetrics, GrowthConstants, TailSums,
};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Distances are stored as `u32`; unreachable pairs never survive construction.
const UNREACHED: u32 = u32::MAX;

/// A finite connected simple graph with all-pairs geodesic distances.
#[derive(Clone, PartialEq)]
pub struct Graph {
    num_vertices: usize,
    adjacency: Vec<Vec<usize>>,
    dist: Vec<u32>,
    diameter: usize,
    natural_dim: Option<f64>,
    label: String,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("label", &self.label)
            .field("num_vertices", &self.num_vertices)
            .field("num_edges", &self.num_edges())
            .field("diameter", &self.diameter)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list, validating simplicity and connectivity,
    /// and computes all-pairs distances by breadth-first search from every vertex.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::SizeTooSmall("graph needs at least one vertex".into()));
        }
        if edges.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let mut adjacency = vec![Vec::new(); num_vertices];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= num_vertices {
                    return Err(Error::VertexOutOfRange { vertex: w, num_vertices });
                }
            }
            if u == v {
                return Err(Error::NotSimple(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::NotSimple(format!("duplicate edge ({u}, {})", w[0])));
            }
        }

        let n = num_vertices;
        let mut dist = vec![UNREACHED; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &v in &adjacency[u] {
                    if row[v] == UNREACHED {
                        row[v] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
            if let Some(unreachable) = row.iter().position(|&d| d == UNREACHED) {
                return Err(Error::NotConnected { from: src, unreachable });
            }
        }
        let diameter = dist.iter().copied().max().unwrap_or(0) as usize;

        Ok(Graph {
            num_vertices,
            adjacency,
            dist,
            diameter,
            natural_dim: None,
            label: format!("edges:{n}"),
        })
    }

    pub(crate) fn with_meta(mut self, label: impl Into<String>, dim: Option<f64>) -> Self {
        self.label = label.into();
        self.natural_dim = dim;
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Geodesic distance `ρ(u, v)`.
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.num_vertices + v] as usize
    }

    /// Row `u` of the distance table.
    #[inline]
    pub fn dist_row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.num_vertices..(u + 1) * self.num_vertices]
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// Dimension attached by the generator (1 for paths and cycles, `d` for
    /// lattice boxes); `None` for random and parsed graphs.
    pub fn natural_dim(&self) -> Option<f64> {
        self.natural_dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Edge list with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.num_vertices {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, num_vertices: self.num_vertices })
        }
    }

    /// Number of vertices at each exact distance `0..=diameter` from `v`.
    pub fn sphere_counts(&self, v: usize) -> Vec<usize> {
        let mut counts = vec![0; self.diameter + 1];
        for &d in self.dist_row(v) {
            counts[d as usize] += 1;
        }
        counts
    }

    /// `μ(B(v, R))` for a real radius `R ≥ 0`.
    pub fn ball_size(&self, v: usize, radius: f64) -> usize {
        if radius < 0.0 {
            return 0;
        }
        self.dist_row(v).iter().filter(|&&d| (d as f64) <= radius).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let edges: Vec<_> = (0..6).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(7, &edges).unwrap();
        assert_eq!(g.dist(0, 6), 6);
        assert_eq!(g.diameter(), 6);
        assert_eq!(g.num_edges(), 6);
    }

    #[test]
    fn cycle_distance_wraps() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = Graph::from_edges(6, &edges).unwrap();
        assert_eq!(g.dist(0, 4), 2);
    }

    #[test]
    fn disconnected_rejected() {
        let err = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap_err();
        assert!(matches!(err, Error::NotConnected { .. }));
    }

    #[test]
    fn loops_and_duplicates_rejected() {
        assert!(matches!(Graph::from_edges(3, &[(0, 0), (1, 2)]), Err(Error::NotSimple(_))));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]),
            Err(Error::NotSimple(_))
        ));
    }

    #[test]
    fn bad_input_rejected() {
        assert_eq!(Graph::from_edges(3, &[]).unwrap_err(), Error::EmptyEdgeList);
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn distance_is_a_metric_and_edges_are_unit_distance() {
        let g = random_connected(30, 0.12, 11).unwrap();
        let n = g.num_vertices();
        for u in 0..n {
            assert_eq!(g.dist(u, u), 0);
            for v in 0..n {
                assert_eq!(g.dist(u, v), g.dist(v, u));
                assert_eq!(g.dist(u, v) == 1, g.neighbors(u).binary_search(&v).is_ok());
                for w in 0..n {
                    assert!(g.dist(u, w) <= g.dist(u, v) + g.dist(v, w));
                }
            }
        }
    }
}
