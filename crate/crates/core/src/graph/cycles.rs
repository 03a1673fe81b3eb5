use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Ball, NeighborOracle, Typed, VertexId};
use crate::error::Result;

/// All induced 4-cycles `(v, a, b, c)` through `v`: consecutive vertices
/// adjacent, `v ≁ b` and `a ≁ c`. Each cycle appears once, with `a < c`.
///
/// Cycles are read off the ball's induced adjacency, so all four vertices
/// must lie within the ball for a cycle to be found.
pub fn induced_4cycles_through<V: VertexId>(ball: &Ball<V>, v: &V) -> Vec<[V; 4]> {
    let Some(i) = ball.index_of(v) else {
        return Vec::new();
    };
    let nbrs = ball.adjacent(i);
    let mut out = Vec::new();
    for (k, &a) in nbrs.iter().enumerate() {
        for &c in &nbrs[k + 1..] {
            if ball.is_adjacent(a, c) {
                continue;
            }
            for &b in ball.adjacent(a) {
                if b != i && ball.is_adjacent(b, c) && !ball.is_adjacent(i, b) {
                    let (a, c) = if ball.vertex(a) < ball.vertex(c) {
                        (a, c)
                    } else {
                        (c, a)
                    };
                    out.push([
                        ball.vertex(i).clone(),
                        ball.vertex(a).clone(),
                        ball.vertex(b).clone(),
                        ball.vertex(c).clone(),
                    ]);
                }
            }
        }
    }
    out.sort();
    out
}

/// Every edge whose two endpoints are both adjacent to all four vertices of
/// `cycle`, as `(x, y)` with `x < y`, sorted.
pub fn square_centers<O: NeighborOracle>(
    oracle: &O,
    cycle: &[O::Vertex; 4],
) -> Result<Vec<(O::Vertex, O::Vertex)>> {
    let others = cycle[1..]
        .iter()
        .map(|c| {
            oracle
                .neighbors(c)
                .map(|n| n.into_iter().collect::<HashSet<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut common: Vec<O::Vertex> = oracle
        .neighbors(&cycle[0])?
        .into_iter()
        .filter(|x| others.iter().all(|s| s.contains(x)))
        .collect();
    common.sort();
    let mut edges = Vec::new();
    for (k, x) in common.iter().enumerate() {
        let nx: HashSet<_> = oracle.neighbors(x)?.into_iter().collect();
        for y in &common[k + 1..] {
            if nx.contains(y) {
                edges.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareCenter<V> {
    pub edge: (V, V),
    pub cycle_types: [usize; 4],
    pub edge_types: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareViolationKind {
    NotInduced,
    NoCenter,
    TypePattern,
    Oracle(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareViolation {
    pub cycle: Vec<String>,
    pub kind: SquareViolationKind,
    pub cycle_types: Vec<usize>,
}

impl fmt::Display for SquareViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at cycle [{}]", self.kind, self.cycle.join(" | "))
    }
}

/// Finds the central edge of an induced 4-cycle and checks the type pattern
/// around it: opposite cycle vertices share a type, the two cycle types
/// differ, and the edge endpoints carry exactly the two remaining types.
pub fn find_square_center<O: Typed>(
    ball: &Ball<O::Vertex>,
    oracle: &O,
    cycle: &[O::Vertex; 4],
) -> std::result::Result<SquareCenter<O::Vertex>, SquareViolation> {
    let types = cycle.clone().map(|v| oracle.type_of(&v));
    let violation = |kind| SquareViolation {
        cycle: cycle.iter().map(|v| v.to_string()).collect(),
        kind,
        cycle_types: types.to_vec(),
    };
    let idx: Option<Vec<usize>> = cycle.iter().map(|v| ball.index_of(v)).collect();
    let induced = idx.is_some_and(|ix| {
        (0..4).all(|k| ball.is_adjacent(ix[k], ix[(k + 1) % 4]))
            && !ball.is_adjacent(ix[0], ix[2])
            && !ball.is_adjacent(ix[1], ix[3])
    });
    if !induced {
        return Err(violation(SquareViolationKind::NotInduced));
    }
    let centers = square_centers(oracle, cycle)
        .map_err(|e| violation(SquareViolationKind::Oracle(e.to_string())))?;
    let Some((x, y)) = centers.into_iter().next() else {
        return Err(violation(SquareViolationKind::NoCenter));
    };
    let edge_types = (oracle.type_of(&x), oracle.type_of(&y));
    let pattern_ok = oracle.type_count() == 4
        && types[0] == types[2]
        && types[1] == types[3]
        && types[0] != types[1]
        && {
            let mut all = [types[0], types[1], edge_types.0, edge_types.1];
            all.sort_unstable();
            all == [0, 1, 2, 3]
        };
    if !pattern_ok {
        return Err(violation(SquareViolationKind::TypePattern));
    }
    Ok(SquareCenter {
        edge: (x, y),
        cycle_types: types,
        edge_types,
    })
}
