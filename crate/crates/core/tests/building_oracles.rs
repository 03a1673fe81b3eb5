#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap, HashSet};

use proptest::prelude::*;
use weakmod::building::{column_hnf, elementary_valuations, proper_subspaces, Matrix};
use weakmod::graph::{find_square_center, induced_4cycles_through, square_centers};
use weakmod::{Ball, BuildingModel, LatticeClass, LatticeModel, NeighborOracle, Vertex};

type M = Matrix<i64>;

/// Every subspace of F_p^4 as a bitset over the p^4 points, by closing spans.
fn spans(p: usize) -> Vec<u128> {
    let q = p.pow(4);
    let add = |a: usize, b: usize| -> usize {
        let mut r = 0;
        let mut place = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..4 {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        r
    };
    let mut seen: HashSet<u128> = HashSet::from([1u128]);
    let mut frontier = vec![1u128];
    while let Some(s) = frontier.pop() {
        for v in 0..q {
            if s >> v & 1 == 1 {
                continue;
            }
            let mut points: Vec<usize> = (0..q).filter(|&x| s >> x & 1 == 1).collect();
            let mut multiple = v;
            let base = points.clone();
            for _ in 1..p {
                points.extend(base.iter().map(|&x| add(x, multiple)));
                multiple = add(multiple, v);
            }
            let t = points.iter().fold(0u128, |acc, &x| acc | 1 << x);
            if seen.insert(t) {
                frontier.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

fn proper_span_counts(p: usize) -> BTreeMap<u32, usize> {
    let mut by_dim = BTreeMap::new();
    for s in spans(p) {
        let size = s.count_ones() as usize;
        let dim = (0..=4).find(|&k| p.pow(k) == size).unwrap();
        if dim > 0 && dim < 4 {
            *by_dim.entry(dim).or_insert(0) += 1;
        }
    }
    by_dim
}

/// Solves `h x = t` for upper-triangular `h`; `None` if `x` is not integral.
fn solve_upper(h: &M, t: [i64; 4]) -> Option<[i64; 4]> {
    let mut x = [0i64; 4];
    for i in (0..4).rev() {
        let rest: i64 = (i + 1..4).map(|j| h[i][j] * x[j]).sum();
        let r = t[i] - rest;
        if r % h[i][i] != 0 {
            return None;
        }
        x[i] = r / h[i][i];
    }
    Some(x)
}

fn column(m: &M, j: usize) -> [i64; 4] {
    [m[0][j], m[1][j], m[2][j], m[3][j]]
}

/// Classes between `pZ^4` and `Z^4`, from all reduced upper-triangular
/// matrices with diagonal in `{1, p}`.
fn sandwiched_classes(p: i64) -> HashSet<LatticeClass> {
    let mut out = HashSet::new();
    for diag in 0u32..16 {
        let d: Vec<i64> = (0..4)
            .map(|i| if diag >> i & 1 == 1 { p } else { 1 })
            .collect();
        if diag == 0 || diag == 15 {
            continue;
        }
        let slots: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .filter(|&(i, _)| d[i] > 1)
            .collect();
        let total = (p as usize).pow(slots.len() as u32);
        for code in 0..total {
            let mut h = [[0i64; 4]; 4];
            for i in 0..4 {
                h[i][i] = d[i];
            }
            let mut c = code;
            for &(i, j) in &slots {
                h[i][j] = (c % p as usize) as i64;
                c /= p as usize;
            }
            let contains_p = (0..4).all(|j| {
                let mut t = [0; 4];
                t[j] = p;
                solve_upper(&h, t).is_some()
            });
            if contains_p {
                out.insert(LatticeClass::canonicalize(h, p).unwrap());
            }
        }
    }
    out
}

#[test]
fn subspace_counts_by_span_closure() {
    assert_eq!(
        proper_span_counts(2),
        BTreeMap::from([(1, 15), (2, 35), (3, 15)])
    );
    assert_eq!(
        proper_span_counts(3),
        BTreeMap::from([(1, 40), (2, 130), (3, 40)])
    );
    assert_eq!(proper_subspaces(2i64).unwrap().len(), 65);
    assert_eq!(proper_subspaces(3i64).unwrap().len(), 210);
}

#[test]
fn base_neighbors_match_sandwiched_lattices() {
    for (p, count) in [(2i64, 65usize), (3, 210)] {
        let base = LatticeClass::base(p).unwrap();
        let nb: HashSet<LatticeClass> = base.neighbors().unwrap().into_iter().collect();
        assert_eq!(nb.len(), count);
        assert_eq!(nb, sandwiched_classes(p));
    }
}

#[test]
fn neighbor_symmetry_regularity_and_types() {
    let model = BuildingModel::new(2).unwrap();
    let ball = Ball::generate(&model, model.base(), 2).unwrap();
    let mut cache: HashMap<LatticeClass, HashSet<LatticeClass>> = HashMap::new();
    let mut nbrs = |c: &LatticeClass| -> HashSet<LatticeClass> {
        cache
            .entry(c.clone())
            .or_insert_with(|| model.neighbors(c).unwrap().into_iter().collect())
            .clone()
    };
    for v in ball.vertices() {
        let nv = nbrs(v);
        assert_eq!(nv.len(), 65, "degree at {v}");
        assert!(!nv.contains(v));
        for w in &nv {
            assert_ne!(w.type_of(), v.type_of());
            assert!(nbrs(w).contains(v), "{v} -> {w} not symmetric");
        }
    }
}

#[test]
fn determinant_valuation_step() {
    let model = BuildingModel::new(3).unwrap();
    let base = model.base();
    for (c, k) in base.neighbors_with_dim().unwrap() {
        assert_eq!(c.det_valuation() as usize, 4 - k);
        assert_eq!(c.type_of(), 4 - k);
    }
}

#[test]
fn divisor_distance_matches_bfs() {
    let model = BuildingModel::new(2).unwrap();
    let ball = Ball::generate(&model, model.base(), 2).unwrap();
    for (i, v) in ball.vertices().iter().enumerate() {
        assert_eq!(v.distance_to_base().unwrap() as usize, ball.dist(i));
    }
    let inner: Vec<&LatticeClass> = ball
        .sphere(0)
        .chain(ball.sphere(1))
        .map(|i| ball.vertex(i))
        .collect();
    for u in &inner {
        for w in &inner {
            assert_eq!(
                Some(u.distance(w).unwrap() as usize),
                ball.bfs_distance(u, w),
                "{u} {w}"
            );
        }
    }
    let profiled = ball
        .vertices()
        .iter()
        .find(|c| c.divisor_profile().unwrap().0 == [2, 1, 0, 0])
        .expect("a class with profile (2,1,0,0)");
    assert_eq!(ball.distance_from_base(profiled), Some(2));
}

#[test]
fn apartment_embedding_is_isometric() {
    let lattice = LatticeModel::new(3).unwrap();
    let lball = Ball::generate(&lattice, lattice.origin(), 2).unwrap();
    for p in [2i64, 3] {
        let emb: Vec<LatticeClass> = lball
            .vertices()
            .iter()
            .map(|v| LatticeClass::embed_apartment(v, p).unwrap())
            .collect();
        assert_eq!(emb.iter().collect::<HashSet<_>>().len(), emb.len());
        // Types agree up to a fixed relabeling of residues.
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        for (i, v) in lball.vertices().iter().enumerate() {
            assert_eq!(emb[i].distance_to_base().unwrap() as i64, v.height());
            assert_eq!(
                *relabel.entry(v.type_of()).or_insert(emb[i].type_of()),
                emb[i].type_of()
            );
            let nb: HashSet<_> = emb[i].neighbors().unwrap().into_iter().collect();
            for (j, w) in lball.vertices().iter().enumerate() {
                assert_eq!(v.is_adjacent(w).unwrap(), nb.contains(&emb[j]));
                assert_eq!(
                    emb[i].distance(&emb[j]).unwrap() as i64,
                    v.difference(w).unwrap().height()
                );
            }
        }
        assert_eq!(relabel.values().collect::<HashSet<_>>().len(), 4);
    }
}

#[test]
fn square_lemma_lattice() {
    let m2 = LatticeModel::new(2).unwrap();
    let b2 = Ball::generate(&m2, m2.origin(), 2).unwrap();
    assert!(induced_4cycles_through(&b2, &m2.origin()).is_empty());

    let m = LatticeModel::new(3).unwrap();
    let b = Ball::generate(&m, m.origin(), 2).unwrap();
    let cycles = induced_4cycles_through(&b, &m.origin());
    assert!(!cycles.is_empty());
    for c in &cycles {
        find_square_center(&b, &m, c).unwrap();
    }
    let v = |c: &[i64]| Vertex::new(c.to_vec()).unwrap();
    let cycle = [
        m.origin(),
        v(&[2, -2, 2, -2]),
        v(&[4, 0, 0, -4]),
        v(&[2, 2, -2, -2]),
    ];
    assert!(cycles.contains(&cycle));
    let centers = square_centers(&m, &cycle).unwrap();
    assert!(centers.contains(&(v(&[1, 1, 1, -3]), v(&[3, -1, -1, -1]))));
    let found = find_square_center(&b, &m, &cycle).unwrap();
    assert_eq!(found.cycle_types, [0, 2, 0, 2]);
}

#[test]
fn square_lemma_building() {
    let model = BuildingModel::new(2).unwrap();
    let b = Ball::generate(&model, model.base(), 2).unwrap();
    let cycles = induced_4cycles_through(&b, &model.base());
    assert!(!cycles.is_empty());
    for c in &cycles {
        find_square_center(&b, &model, c).unwrap();
    }
}

#[test]
fn class_strings_round_trip() {
    let model = BuildingModel::new(2).unwrap();
    for c in model.base().neighbors().unwrap() {
        assert_eq!(c.to_string().parse::<LatticeClass>().unwrap(), c);
    }
}

fn det(m: &M) -> i128 {
    // Laplace expansion along the first row.
    fn minor(m: &[Vec<i128>]) -> i128 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let sub: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * minor(&sub)
            })
            .sum()
    }
    minor(
        &m.iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect::<Vec<_>>(),
    )
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn vp(mut x: i128, p: i128) -> u32 {
    let mut k = 0;
    while x != 0 && x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

/// Elementary divisor valuations from gcds of k×k minors.
fn valuations_by_minors(m: &M, p: i64) -> [u32; 4] {
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0u32..16)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..4).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    };
    let mut d = vec![0u32];
    for k in 1..=4 {
        let mut g = 0i128;
        for rows in subsets(k) {
            for cols in subsets(k) {
                let mut sub = [[0i64; 4]; 4];
                for i in 0..4 {
                    sub[i][i] = 1;
                }
                for (a, &r) in rows.iter().enumerate() {
                    for (b, &c) in cols.iter().enumerate() {
                        sub[a][b] = m[r][c];
                    }
                }
                g = gcd(g, det(&sub));
            }
        }
        d.push(vp(g, p as i128));
    }
    let mut out = [0u32; 4];
    for k in 0..4 {
        out[k] = d[k + 1] - d[k];
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn mul(a: &M, b: &M) -> M {
    let mut c = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Product of elementary column operations `col_j += c * col_i` and swaps.
fn arb_unimodular() -> impl Strategy<Value = M> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2, any::<bool>()), 0..8).prop_map(|ops| {
        let mut u = [[0i64; 4]; 4];
        for i in 0..4 {
            u[i][i] = 1;
        }
        for (i, j, c, swap) in ops {
            if i == j {
                continue;
            }
            for row in u.iter_mut() {
                if swap {
                    row.swap(i, j);
                } else {
                    row[j] += c * row[i];
                }
            }
        }
        u
    })
}

/// Upper-triangular with diagonal powers of `p` and small off-diagonals.
fn arb_lattice(p: i64) -> impl Strategy<Value = M> {
    (
        prop::collection::vec(0u32..=2, 4),
        prop::collection::vec(-4i64..=4, 6),
    )
        .prop_map(move |(e, off)| {
            let mut h = [[0i64; 4]; 4];
            let mut k = 0;
            for i in 0..4 {
                h[i][i] = p.pow(e[i]);
                for j in i + 1..4 {
                    h[i][j] = off[k];
                    k += 1;
                }
            }
            h
        })
}

proptest! {
    #[test]
    fn canonical_form_ignores_basis_changes(h in arb_lattice(2), u in arb_unimodular(), s in 0u32..=2) {
        let a = LatticeClass::canonicalize(h, 2).unwrap();
        let mut scaled = mul(&h, &u);
        for x in scaled.iter_mut().flatten() {
            *x *= 2i64.pow(s);
        }
        prop_assert_eq!(LatticeClass::canonicalize(scaled, 2).unwrap(), a);
    }

    #[test]
    fn hnf_spans_the_same_lattice(h in arb_lattice(3), u in arb_unimodular()) {
        let m = mul(&h, &u);
        let hnf = column_hnf(m).unwrap();
        prop_assert_eq!(det(&hnf).abs(), det(&m).abs());
        for i in 0..4 {
            prop_assert!(hnf[i][i] > 0);
            for j in 0..i {
                prop_assert_eq!(hnf[i][j], 0);
            }
            for j in i + 1..4 {
                prop_assert!(hnf[i][j] >= 0 && hnf[i][j] < hnf[i][i]);
            }
        }
        for j in 0..4 {
            prop_assert!(solve_upper(&hnf, column(&m, j)).is_some());
        }
    }

    #[test]
    fn smith_valuations_match_minors(h in arb_lattice(3), u in arb_unimodular(), v in arb_unimodular()) {
        let m = mul(&v, &mul(&h, &u));
        prop_assert_eq!(elementary_valuations(&m, 3).unwrap(), valuations_by_minors(&m, 3));
    }
}
