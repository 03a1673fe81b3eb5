use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use super::{NeighborOracle, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallOptions {
    /// Abort once more vertices than this have been discovered.
    pub max_vertices: usize,
    /// Query the oracle for vertices on the outer sphere too, so that edges
    /// between two outer vertices are recorded. Edges touching an inner
    /// vertex are always present.
    pub boundary_edges: bool,
}

impl Default for BallOptions {
    fn default() -> Self {
        Self {
            max_vertices: 5_000_000,
            boundary_edges: true,
        }
    }
}

/// A finite neighborhood of `base` with exact distance labels.
///
/// Every vertex at distance `< radius` has all of its oracle neighbors in the
/// ball, so each label is the true graph distance from `base`.
#[derive(Debug, Clone)]
pub struct Ball<V> {
    base: V,
    radius: usize,
    vertices: Vec<V>,
    index: HashMap<V, usize>,
    adjacency: Vec<Vec<usize>>,
    dist: Vec<usize>,
}

impl<V: VertexId> Ball<V> {
    pub fn generate<O>(oracle: &O, base: V, radius: usize) -> Result<Self>
    where
        O: NeighborOracle<Vertex = V>,
    {
        Self::generate_with(oracle, base, radius, BallOptions::default())
    }

    /// Breadth-first closure of `base` to `radius`. Vertex order is
    /// deterministic: by layer, then in oracle order of discovery.
    pub fn generate_with<O>(
        oracle: &O,
        base: V,
        radius: usize,
        options: BallOptions,
    ) -> Result<Self>
    where
        O: NeighborOracle<Vertex = V>,
    {
        let mut vertices = vec![base.clone()];
        let mut index = HashMap::from([(base.clone(), 0usize)]);
        let mut dist = vec![0usize];
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new()];
        let mut layer = 0..1;

        for d in 0..=radius {
            if d == radius && !options.boundary_edges {
                break;
            }
            let lists: Vec<Vec<V>> = vertices[layer.clone()]
                .par_iter()
                .map(|v| oracle.neighbors(v))
                .collect::<Result<_>>()?;
            let next_start = vertices.len();
            if d < radius {
                for w in lists.iter().flatten() {
                    if !index.contains_key(w) {
                        index.insert(w.clone(), vertices.len());
                        vertices.push(w.clone());
                        dist.push(d + 1);
                        adjacency.push(Vec::new());
                        if vertices.len() > options.max_vertices {
                            return Err(Error::LimitExceeded {
                                limit: options.max_vertices,
                                vertices: vertices.len(),
                                completed_layers: d,
                            });
                        }
                    }
                }
            }
            for (offset, list) in lists.iter().enumerate() {
                let i = layer.start + offset;
                for w in list {
                    if let Some(&j) = index.get(w) {
                        adjacency[i].push(j);
                        adjacency[j].push(i);
                    }
                }
            }
            layer = next_start..vertices.len();
        }
        adjacency.par_iter_mut().for_each(|list| {
            list.sort_unstable();
            list.dedup();
        });
        Ok(Self {
            base,
            radius,
            vertices,
            index,
            adjacency,
            dist,
        })
    }

    pub fn base(&self) -> &V {
        &self.base
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &V {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &V) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &V) -> bool {
        self.index.contains_key(v)
    }

    /// Ball-internal neighbors of vertex `i`, sorted by index.
    pub fn adjacent(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn dist(&self, i: usize) -> usize {
        self.dist[i]
    }

    pub fn distance_from_base(&self, v: &V) -> Option<usize> {
        self.index_of(v).map(|i| self.dist[i])
    }

    /// Indices of vertices at exactly distance `d` from the base.
    pub fn sphere(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.dist[i] == d)
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
    }

    /// Exact graph distance between `u` and `v`, or `None` when it cannot be
    /// certified from inside the ball.
    ///
    /// Any path leaving the ball passes through a vertex at distance
    /// `radius + 1` from the base, so it has length at least
    /// `2 (radius + 1) - dist(u) - dist(v)`. A ball-internal path no longer
    /// than that bound is therefore geodesic.
    pub fn bfs_distance(&self, u: &V, v: &V) -> Option<usize> {
        let (s, t) = (self.index_of(u)?, self.index_of(v)?);
        let bound = 2 * (self.radius + 1) - self.dist[s] - self.dist[t];
        let mut seen = vec![usize::MAX; self.len()];
        seen[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            if i == t {
                break;
            }
            if seen[i] >= bound {
                continue;
            }
            for &j in &self.adjacency[i] {
                if seen[j] == usize::MAX {
                    seen[j] = seen[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        (seen[t] <= bound).then_some(seen[t])
    }
}
