use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Ball, NeighborOracle, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Triangle,
    Quadrangle,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Triangle => "triangle",
            Condition::Quadrangle => "quadrangle",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Only distance 2 edges (triangle) and distance 3 apexes (quadrangle).
    pub local_only: bool,
    /// Stop at the first violation.
    pub fail_fast: bool,
}

/// Outcome of one condition check centered at the ball's base.
///
/// Witnesses are `(v, u, w)` for the triangle condition and `(v, u, w, s)`
/// for the quadrangle condition, as canonical vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub center: String,
    pub local_only: bool,
    pub instances_checked: u64,
    pub violations: Vec<Vec<String>>,
    pub passed: bool,
}

pub(crate) const MIN_RADIUS: usize = 3;

fn check_radius<V: VertexId>(ball: &Ball<V>) -> Result<()> {
    if ball.radius() < MIN_RADIUS {
        Err(Error::RadiusTooSmall {
            radius: ball.radius(),
            required: MIN_RADIUS,
        })
    } else {
        Ok(())
    }
}

/// For each vertex at a distance in `levels`, its oracle neighbors that lie
/// one step closer to the base (sorted ball indices). Other entries are empty.
fn down_sets<O: NeighborOracle>(
    ball: &Ball<O::Vertex>,
    oracle: &O,
    levels: impl Fn(usize) -> bool + Sync,
) -> Result<Vec<Vec<usize>>> {
    (0..ball.len())
        .into_par_iter()
        .map(|i| {
            let d = ball.dist(i);
            if d == 0 || !levels(d) {
                return Ok(Vec::new());
            }
            let mut down: Vec<usize> = oracle
                .neighbors(ball.vertex(i))?
                .iter()
                .filter_map(|t| ball.index_of(t))
                .filter(|&j| ball.dist(j) + 1 == d)
                .collect();
            down.sort_unstable();
            down.dedup();
            Ok(down)
        })
        .collect()
}

fn meets(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn finish<V: VertexId>(
    ball: &Ball<V>,
    condition: Condition,
    options: CheckOptions,
    instances: u64,
    mut violations: Vec<Vec<usize>>,
) -> ConditionReport {
    let mut named: Vec<Vec<V>> = violations
        .drain(..)
        .map(|w| w.into_iter().map(|i| ball.vertex(i).clone()).collect())
        .collect();
    named.sort();
    if options.fail_fast {
        named.truncate(1);
    }
    let violations: Vec<Vec<String>> = named
        .into_iter()
        .map(|w| {
            std::iter::once(ball.base().to_string())
                .chain(w.iter().map(|v| v.to_string()))
                .collect()
        })
        .collect();
    ConditionReport {
        condition,
        center: ball.base().to_string(),
        local_only: options.local_only,
        instances_checked: instances,
        passed: violations.is_empty(),
        violations,
    }
}

/// Triangle condition at the ball's base: every edge `uw` with both ends at
/// distance `m` needs a common neighbor at distance `m - 1`.
///
/// The full check covers `1 <= m <= radius - 1`; the local check only
/// `m = 2`. Completing vertices are drawn from the oracle's neighbor lists.
pub fn check_triangle<O: NeighborOracle>(
    ball: &Ball<O::Vertex>,
    oracle: &O,
    options: CheckOptions,
) -> Result<ConditionReport> {
    check_radius(ball)?;
    let radius = ball.radius();
    let in_range = |m: usize| {
        if options.local_only {
            m == 2
        } else {
            m >= 1 && m < radius
        }
    };
    let down = down_sets(ball, oracle, in_range)?;
    let per_vertex = |u: usize| -> (u64, Vec<Vec<usize>>) {
        let m = ball.dist(u);
        if !in_range(m) {
            return (0, Vec::new());
        }
        let mut count = 0;
        let mut bad = Vec::new();
        for &w in ball.adjacent(u) {
            if w > u && ball.dist(w) == m {
                count += 1;
                if !meets(&down[u], &down[w]) {
                    bad.push(vec![u, w]);
                }
            }
        }
        (count, bad)
    };
    let (instances, violations) = run(ball.len(), options.fail_fast, per_vertex);
    Ok(finish(
        ball,
        Condition::Triangle,
        options,
        instances,
        violations,
    ))
}

/// Quadrangle condition at the ball's base: for every `s` at distance
/// `m + 1` with distinct neighbors `u, w` at distance `m`, some vertex at
/// distance `m - 1` is adjacent to both `u` and `w`.
///
/// The full check covers `1 <= m <= radius - 1`; the local check only
/// `m = 2`. Pairs `u, w` are not required to be non-adjacent.
pub fn check_quadrangle<O: NeighborOracle>(
    ball: &Ball<O::Vertex>,
    oracle: &O,
    options: CheckOptions,
) -> Result<ConditionReport> {
    check_radius(ball)?;
    let radius = ball.radius();
    let in_range = |m: usize| {
        if options.local_only {
            m == 2
        } else {
            m >= 1 && m < radius
        }
    };
    let down = down_sets(ball, oracle, in_range)?;
    let per_vertex = |s: usize| -> (u64, Vec<Vec<usize>>) {
        let top = ball.dist(s);
        if top == 0 || !in_range(top - 1) {
            return (0, Vec::new());
        }
        let below: Vec<usize> = ball
            .adjacent(s)
            .iter()
            .copied()
            .filter(|&u| ball.dist(u) + 1 == top)
            .collect();
        let mut count = 0;
        let mut bad = Vec::new();
        for (k, &u) in below.iter().enumerate() {
            for &w in &below[k + 1..] {
                count += 1;
                if !meets(&down[u], &down[w]) {
                    bad.push(vec![u, w, s]);
                }
            }
        }
        (count, bad)
    };
    let (instances, violations) = run(ball.len(), options.fail_fast, per_vertex);
    Ok(finish(
        ball,
        Condition::Quadrangle,
        options,
        instances,
        violations,
    ))
}

fn run<F>(len: usize, fail_fast: bool, per_vertex: F) -> (u64, Vec<Vec<usize>>)
where
    F: Fn(usize) -> (u64, Vec<Vec<usize>>) + Send + Sync,
{
    if fail_fast {
        let mut total = 0;
        for i in 0..len {
            let (count, bad) = per_vertex(i);
            total += count;
            if !bad.is_empty() {
                return (total, bad);
            }
        }
        return (total, Vec::new());
    }
    (0..len).into_par_iter().map(per_vertex).reduce(
        || (0, Vec::new()),
        |(c1, mut v1), (c2, v2)| {
            v1.extend(v2);
            (c1 + c2, v1)
        },
    )
}
