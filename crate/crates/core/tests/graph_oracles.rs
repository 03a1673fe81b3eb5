use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use weakmod::graph::export::BallExport;
use weakmod::{
    check_quadrangle, check_triangle, Ball, BallOptions, CheckOptions, Error, FiniteGraph,
    LatticeModel, NeighborOracle, Vertex,
};

fn full() -> CheckOptions {
    CheckOptions::default()
}

/// Distances from `s` over the whole finite graph; `usize::MAX` if unreachable.
fn bfs_all(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; adj.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

struct Expected {
    triangle: (u64, BTreeSet<Vec<usize>>),
    quadrangle: (u64, BTreeSet<Vec<usize>>),
}

/// Both conditions at vertex 0, straight from the definitions, for
/// `1 <= m <= radius - 1`.
fn brute_force(adj: &[Vec<usize>], radius: usize) -> Expected {
    let dist = bfs_all(adj, 0);
    let d = &dist;
    let adjacent = |a: usize, b: usize| adj[a].contains(&b);
    let lvl = |m: usize| (0..adj.len()).filter(move |&x| d[x] == m);
    let common_at = |a: usize, b: usize, m: usize| lvl(m).any(|x| adjacent(x, a) && adjacent(x, b));
    let mut triangle = (0, BTreeSet::new());
    let mut quadrangle = (0, BTreeSet::new());
    for m in 1..radius {
        for u in lvl(m) {
            for w in lvl(m) {
                if u < w && adjacent(u, w) {
                    triangle.0 += 1;
                    if !common_at(u, w, m - 1) {
                        triangle.1.insert(vec![u, w]);
                    }
                }
            }
        }
        for s in lvl(m + 1) {
            for u in lvl(m) {
                for w in lvl(m) {
                    if u < w && adjacent(s, u) && adjacent(s, w) {
                        quadrangle.0 += 1;
                        if !common_at(u, w, m - 1) {
                            quadrangle.1.insert(vec![u, w, s]);
                        }
                    }
                }
            }
        }
    }
    Expected {
        triangle,
        quadrangle,
    }
}

fn normalize(violations: &[Vec<String>], pair_len: usize) -> BTreeSet<Vec<usize>> {
    violations
        .iter()
        .map(|w| {
            assert_eq!(w[0], "0");
            let mut ids: Vec<usize> = w[1..].iter().map(|x| x.parse().unwrap()).collect();
            ids[..pair_len].sort_unstable();
            ids
        })
        .collect()
}

fn adjacency(g: &FiniteGraph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| g.neighbors(&v).unwrap()).collect()
}

#[test]
fn synthetic_controls() {
    let c5 = FiniteGraph::cycle(5).unwrap();
    let b = Ball::generate(&c5, 0, 3).unwrap();
    let t = check_triangle(&b, &c5, full()).unwrap();
    assert!(!t.passed);
    assert_eq!(normalize(&t.violations, 2), BTreeSet::from([vec![2, 3]]));
    assert!(check_quadrangle(&b, &c5, full()).unwrap().passed);

    let c6 = FiniteGraph::cycle(6).unwrap();
    let b = Ball::generate(&c6, 0, 3).unwrap();
    assert!(check_triangle(&b, &c6, full()).unwrap().passed);
    let q = check_quadrangle(&b, &c6, full()).unwrap();
    assert_eq!(normalize(&q.violations, 2), BTreeSet::from([vec![2, 4, 3]]));

    let cube = FiniteGraph::hypercube(3).unwrap();
    let b = Ball::generate(&cube, 0, 3).unwrap();
    assert!(check_triangle(&b, &cube, full()).unwrap().passed);
    assert!(check_quadrangle(&b, &cube, full()).unwrap().passed);
}

#[test]
fn radius_guard() {
    let c5 = FiniteGraph::cycle(5).unwrap();
    let b = Ball::generate(&c5, 0, 2).unwrap();
    assert!(matches!(
        check_triangle(&b, &c5, full()),
        Err(Error::RadiusTooSmall { required: 3, .. })
    ));
}

#[test]
fn distance_equals_height() {
    for n in 2..=4 {
        let m = LatticeModel::new(n).unwrap();
        let b = Ball::generate(&m, m.origin(), 4).unwrap();
        for (i, v) in b.vertices().iter().enumerate() {
            assert_eq!(b.dist(i) as i64, v.height(), "{v}");
        }
    }
}

#[test]
fn bfs_distance_examples() {
    let m = LatticeModel::new(4).unwrap();
    let b = Ball::generate(&m, m.origin(), 4).unwrap();
    let o = m.origin();
    assert_eq!(b.bfs_distance(&o, &o), Some(0));
    let far = Vertex::new(vec![10, 10, -5, -5, -10]).unwrap();
    assert_eq!(b.bfs_distance(&o, &far), Some(4));
    // Two boundary vertices far apart cannot be certified from inside.
    let s4: Vec<&Vertex> = b.sphere(4).map(|i| b.vertex(i)).collect();
    let (u, w) = s4
        .iter()
        .flat_map(|u| s4.iter().map(move |w| (*u, *w)))
        .find(|(u, w)| u.difference(w).unwrap().height() > 2)
        .unwrap();
    assert_eq!(b.bfs_distance(u, w), None);
}

#[test]
fn vertex_limit() {
    let m = LatticeModel::new(3).unwrap();
    let opts = BallOptions {
        max_vertices: 50,
        ..BallOptions::default()
    };
    assert!(matches!(
        Ball::generate_with(&m, m.origin(), 3, opts),
        Err(Error::LimitExceeded { limit: 50, .. })
    ));
}

#[test]
fn export_shapes() {
    let m = LatticeModel::new(2).unwrap();
    let b = Ball::generate(&m, m.origin(), 1).unwrap();
    let e = BallExport::from_ball(&b);
    assert_eq!(e.vertices.len(), 7);
    assert_eq!(e.edges.len(), 12);
    let back: BallExport = serde_json::from_str(&e.to_json()).unwrap();
    assert_eq!(back, e);
    assert!(e.to_dot().starts_with("graph ball {"));
    let b0 = Ball::generate(&m, m.origin(), 0).unwrap();
    assert_eq!(b0.len(), 1);
}

fn arb_graph() -> impl Strategy<Value = FiniteGraph> {
    (4usize..=9).prop_flat_map(|order| {
        prop::collection::vec((0..order, 0..order), 0..=order * 2).prop_map(move |raw| {
            let edges: BTreeSet<(usize, usize)> = raw
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            FiniteGraph::from_edges(order, &edges.into_iter().collect::<Vec<_>>()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn checkers_agree_with_definitions(g in arb_graph()) {
        let adj = adjacency(&g);
        let ecc = bfs_all(&adj, 0).into_iter().filter(|&d| d != usize::MAX).max().unwrap();
        let radius = ecc.max(3);
        let b = Ball::generate(&g, 0, radius).unwrap();
        let expected = brute_force(&adj, radius);
        let t = check_triangle(&b, &g, full()).unwrap();
        let q = check_quadrangle(&b, &g, full()).unwrap();
        prop_assert_eq!(t.instances_checked, expected.triangle.0);
        prop_assert_eq!(normalize(&t.violations, 2), expected.triangle.1);
        prop_assert_eq!(q.instances_checked, expected.quadrangle.0);
        prop_assert_eq!(normalize(&q.violations, 2), expected.quadrangle.1);
        prop_assert_eq!(t.passed, t.violations.is_empty());
    }
}
