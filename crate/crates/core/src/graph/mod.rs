//! Model-agnostic graph machinery: balls grown from a neighbor oracle, exact
//! distances, the triangle and quadrangle conditions, and induced 4-cycles.

mod ball;
mod conditions;
mod cycles;
pub mod export;

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

pub use ball::{Ball, BallOptions};
pub use conditions::{check_quadrangle, check_triangle, CheckOptions, Condition, ConditionReport};
pub use cycles::{
    find_square_center, induced_4cycles_through, square_centers, SquareCenter, SquareViolation,
    SquareViolationKind,
};

/// Canonical vertex identifiers: hashable, totally ordered, printable.
pub trait VertexId: Clone + Eq + Hash + Ord + fmt::Display + Send + Sync {}

impl<V: Clone + Eq + Hash + Ord + fmt::Display + Send + Sync> VertexId for V {}

/// A (possibly infinite) graph given by its neighbor function.
pub trait NeighborOracle: Sync {
    type Vertex: VertexId;

    fn neighbors(&self, v: &Self::Vertex) -> Result<Vec<Self::Vertex>>;
}

/// Graphs whose vertices carry a type label in `0..type_count()` that is
/// distinct across every edge.
pub trait Typed: NeighborOracle {
    fn type_count(&self) -> usize;

    fn type_of(&self, v: &Self::Vertex) -> usize;
}

/// A finite graph on `0..n`, used for synthetic oracles and controls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    adjacency: Vec<Vec<usize>>,
}

impl FiniteGraph {
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); order];
        for &(a, b) in edges {
            if a >= order || b >= order || a == b {
                return Err(Error::Precondition(format!("invalid edge ({a}, {b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adjacency })
    }

    pub fn cycle(length: usize) -> Result<Self> {
        if length < 3 {
            return Err(Error::Precondition(format!("cycle length {length} < 3")));
        }
        let edges: Vec<_> = (0..length).map(|i| (i, (i + 1) % length)).collect();
        Self::from_edges(length, &edges)
    }

    /// 1-skeleton of the `dim`-dimensional cube.
    pub fn hypercube(dim: u32) -> Result<Self> {
        let order = 1usize << dim;
        let edges: Vec<_> = (0..order)
            .flat_map(|v| {
                (0..dim)
                    .map(move |b| (v, v ^ (1 << b)))
                    .filter(|(a, b)| a < b)
            })
            .collect();
        Self::from_edges(order, &edges)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }
}

impl NeighborOracle for FiniteGraph {
    type Vertex = usize;

    fn neighbors(&self, v: &usize) -> Result<Vec<usize>> {
        self.adjacency
            .get(*v)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("vertex {v} out of range")))
    }
}
