//! Verification suites run by `weakmod verify`.

use std::collections::{BTreeMap, HashSet};

use weakmod::graph::find_square_center;
use weakmod::{
    check_quadrangle, check_triangle, induced_4cycles_through, is_edge_vector, Ball, BallOptions,
    BuildingModel, CheckOptions, FiniteGraph, LatticeClass, LatticeModel, NeighborOracle, Typed,
    Vertex,
};

use crate::config::Check;
use crate::report::SuiteReport;

pub type SuiteResult<T> = Result<T, RunError>;

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Limit(weakmod::Error),
    Engine(weakmod::Error),
}

impl From<weakmod::Error> for RunError {
    fn from(e: weakmod::Error) -> Self {
        match e {
            weakmod::Error::LimitExceeded { .. } => RunError::Limit(e),
            weakmod::Error::RadiusTooSmall { .. } => RunError::Usage(e.to_string()),
            other => RunError::Engine(other),
        }
    }
}

/// Per-model hooks for the suites that need more than a neighbor oracle.
pub trait VerifyModel: NeighborOracle {
    fn base_vertex(&self) -> Self::Vertex;

    fn parse_vertex(&self, s: &str) -> Result<Self::Vertex, String>;

    fn supports(&self, check: Check) -> Result<(), String>;

    /// Closed-form distance to the base vertex, where one exists.
    fn closed_form_distance(&self, _v: &Self::Vertex) -> weakmod::Result<Option<usize>> {
        Ok(None)
    }

    fn edge_forms(&self, _ball: &Ball<Self::Vertex>) -> SuiteResult<SuiteReport> {
        Err(RunError::Usage(
            "edge-forms is not available for this model".into(),
        ))
    }

    fn square_lemma(&self, _ball: &Ball<Self::Vertex>) -> SuiteResult<SuiteReport> {
        Err(RunError::Usage(
            "square-lemma is not available for this model".into(),
        ))
    }

    fn apartment_embed(&self, _radius: usize) -> SuiteResult<SuiteReport> {
        Err(RunError::Usage(
            "apartment-embed is not available for this model".into(),
        ))
    }
}

fn unsupported(check: Check, what: &str) -> Result<(), String> {
    Err(format!("check {check} is not available for {what}"))
}

fn square_lemma_generic<O: Typed>(oracle: &O, ball: &Ball<O::Vertex>) -> SuiteReport {
    let mut r = SuiteReport::new("square-lemma", ball.base().to_string());
    let cycles = induced_4cycles_through(ball, ball.base());
    r.instances_checked = cycles.len() as u64;
    let mut centers = 0u64;
    for cycle in &cycles {
        match find_square_center(ball, oracle, cycle) {
            Ok(_) => centers += 1,
            Err(v) => {
                let mut w = v.cycle.clone();
                w.push(format!("{:?}", v.kind));
                r.violation(w);
            }
        }
    }
    r.notes.push(format!(
        "{} induced 4-cycles through the base, {centers} with a central edge",
        cycles.len()
    ));
    r.finish()
}

impl VerifyModel for LatticeModel {
    fn base_vertex(&self) -> Vertex {
        self.origin()
    }

    fn parse_vertex(&self, s: &str) -> Result<Vertex, String> {
        let v: Vertex = s.parse().map_err(|e: weakmod::Error| e.to_string())?;
        if v.rank() != self.rank() {
            return Err(format!(
                "center has rank {}, model has rank {}",
                v.rank(),
                self.rank()
            ));
        }
        Ok(v)
    }

    fn supports(&self, check: Check) -> Result<(), String> {
        match check {
            Check::SquareLemma if self.rank() != 3 => {
                unsupported(check, "lattice ranks other than 3")
            }
            Check::ApartmentEmbed => unsupported(check, "the lattice model (use --model building)"),
            _ => Ok(()),
        }
    }

    fn closed_form_distance(&self, v: &Vertex) -> weakmod::Result<Option<usize>> {
        Ok(v.height().to_usize_checked())
    }

    fn edge_forms(&self, ball: &Ball<Vertex>) -> SuiteResult<SuiteReport> {
        let n = self.rank();
        let center = ball.base();
        let mut r = SuiteReport::new("edge-forms", center.to_string());
        let expected_degree = (1usize << (n + 1)) - 2;
        // Family of a step with k raised coordinates: k entries n+1-k and
        // n+1-k entries -k, up to permutation.
        let mut families: BTreeMap<usize, usize> = BTreeMap::new();
        for w in center.neighbors()? {
            r.instances_checked += 1;
            let diff = center.difference(&w)?;
            let d = diff.coords();
            let k = d.iter().filter(|x| **x > 0).count();
            let up = (n + 1 - k.min(n + 1)) as i64;
            let shape_ok = is_edge_vector(d, n)? && d.iter().all(|&x| x == up || x == -(k as i64));
            if shape_ok {
                *families.entry(k).or_default() += 1;
            } else {
                r.violation(vec![center.to_string(), w.to_string(), diff.to_string()]);
            }
        }
        let degree = r.instances_checked as usize;
        if degree != expected_degree {
            r.violation(vec![
                center.to_string(),
                format!("degree {degree}, expected {expected_degree}"),
            ]);
        }
        r.notes
            .push(format!("degree {degree} (expected {expected_degree})"));
        for k in 1..=n.div_ceil(2).max(1) {
            let pair = n + 1 - k;
            if k > pair {
                break;
            }
            let shape: Vec<String> = std::iter::repeat_n((n + 1 - k).to_string(), k)
                .chain(std::iter::repeat_n(format!("-{k}"), n + 1 - k))
                .collect();
            let count = families.get(&k).copied().unwrap_or(0)
                + if pair != k {
                    families.get(&pair).copied().unwrap_or(0)
                } else {
                    0
                };
            r.notes.push(format!("±({}): {count}", shape.join(",")));
        }
        // Every vertex of the ball interior has the full degree.
        for i in 0..ball.len() {
            if ball.dist(i) < ball.radius() {
                let v = ball.vertex(i);
                let nb = v.neighbors()?;
                let distinct: HashSet<_> = nb.iter().collect();
                if nb.len() != expected_degree || distinct.len() != expected_degree {
                    r.violation(vec![v.to_string(), format!("degree {}", distinct.len())]);
                }
            }
        }
        Ok(r.finish())
    }

    fn square_lemma(&self, ball: &Ball<Vertex>) -> SuiteResult<SuiteReport> {
        Ok(square_lemma_generic(self, ball))
    }
}

trait ToUsizeChecked {
    fn to_usize_checked(self) -> Option<usize>;
}

impl ToUsizeChecked for i64 {
    fn to_usize_checked(self) -> Option<usize> {
        usize::try_from(self).ok()
    }
}

/// Gaussian binomial `[4, k]_p`.
fn gaussian_binomial_4(p: i64, k: u32) -> i64 {
    let num: i64 = (0..k).map(|i| p.pow(4 - i) - 1).product();
    let den: i64 = (0..k).map(|i| p.pow(i + 1) - 1).product();
    num / den
}

impl VerifyModel for BuildingModel {
    fn base_vertex(&self) -> LatticeClass {
        self.base()
    }

    fn parse_vertex(&self, s: &str) -> Result<LatticeClass, String> {
        let c: LatticeClass = s.parse().map_err(|e: weakmod::Error| e.to_string())?;
        if c.prime() != self.prime() {
            return Err(format!(
                "center is over p={}, model uses p={}",
                c.prime(),
                self.prime()
            ));
        }
        Ok(c)
    }

    fn supports(&self, _check: Check) -> Result<(), String> {
        Ok(())
    }

    fn closed_form_distance(&self, v: &LatticeClass) -> weakmod::Result<Option<usize>> {
        Ok(Some(v.distance_to_base()? as usize))
    }

    fn edge_forms(&self, ball: &Ball<LatticeClass>) -> SuiteResult<SuiteReport> {
        let p = self.prime();
        let expected: Vec<i64> = (1..4).map(|k| gaussian_binomial_4(p, k)).collect();
        let total: i64 = expected.iter().sum();
        let mut r = SuiteReport::new("edge-forms", ball.base().to_string());
        for i in 0..ball.len() {
            if ball.dist(i) >= ball.radius().max(1) {
                continue;
            }
            let v = ball.vertex(i);
            r.instances_checked += 1;
            let nb = v.neighbors_with_dim()?;
            let distinct: HashSet<_> = nb.iter().map(|(c, _)| c).collect();
            let mut per_dim = [0i64; 3];
            let mut types_ok = true;
            for (c, k) in &nb {
                per_dim[k - 1] += 1;
                // Stepping through a k-dimensional subspace adds 4 - k to the
                // determinant valuation, modulo the homothety shift by 4.
                types_ok &= c.type_of() == (v.type_of() + 4 - k) % 4;
            }
            if distinct.len() as i64 != total || per_dim.to_vec() != expected || !types_ok {
                r.violation(vec![
                    v.to_string(),
                    format!(
                        "neighbors by dimension {per_dim:?}, distinct {}",
                        distinct.len()
                    ),
                ]);
            }
        }
        r.notes.push(format!(
            "subspaces of F_{p}^4 by dimension: {expected:?}, degree {total}"
        ));
        Ok(r.finish())
    }

    fn square_lemma(&self, ball: &Ball<LatticeClass>) -> SuiteResult<SuiteReport> {
        Ok(square_lemma_generic(self, ball))
    }

    fn apartment_embed(&self, radius: usize) -> SuiteResult<SuiteReport> {
        let lattice = LatticeModel::new(3)?;
        let lball = Ball::generate(&lattice, lattice.origin(), radius)?;
        let p = self.prime();
        let mut r = SuiteReport::new("apartment-embed", lattice.origin().to_string());
        let embedded = lball
            .vertices()
            .iter()
            .map(|v| LatticeClass::embed_apartment(v, p))
            .collect::<weakmod::Result<Vec<_>>>()?;
        if embedded.iter().collect::<HashSet<_>>().len() != embedded.len() {
            r.violation(vec!["embedding is not injective".into()]);
        }
        for (i, v) in lball.vertices().iter().enumerate() {
            let e = &embedded[i];
            let nb: HashSet<_> = e.neighbors()?.into_iter().collect();
            if e.distance_to_base()? as i64 != v.height() {
                r.violation(vec![
                    v.to_string(),
                    e.to_string(),
                    "distance to base".into(),
                ]);
            }
            for (j, w) in lball.vertices().iter().enumerate().skip(i + 1) {
                r.instances_checked += 1;
                let f = &embedded[j];
                if v.is_adjacent(w)? != nb.contains(f) {
                    r.violation(vec![v.to_string(), w.to_string(), "adjacency".into()]);
                }
                if e.distance(f)? as i64 != v.difference(w)?.height() {
                    r.violation(vec![v.to_string(), w.to_string(), "distance".into()]);
                }
            }
        }
        r.notes.push(format!(
            "{} lattice vertices of the rank-3 ball of radius {radius} embedded as diagonal classes",
            lball.len()
        ));
        Ok(r.finish())
    }
}

#[derive(Debug, Clone)]
pub struct Synthetic {
    pub graph: FiniteGraph,
}

impl NeighborOracle for Synthetic {
    type Vertex = usize;

    fn neighbors(&self, v: &usize) -> weakmod::Result<Vec<usize>> {
        self.graph.neighbors(v)
    }
}

impl VerifyModel for Synthetic {
    fn base_vertex(&self) -> usize {
        0
    }

    fn parse_vertex(&self, s: &str) -> Result<usize, String> {
        let v: usize = s
            .trim()
            .parse()
            .map_err(|_| format!("invalid vertex {s:?}"))?;
        if v >= self.graph.order() {
            return Err(format!("vertex {v} out of range"));
        }
        Ok(v)
    }

    fn supports(&self, check: Check) -> Result<(), String> {
        match check {
            Check::Triangle | Check::Quadrangle | Check::LocalWm => Ok(()),
            other => unsupported(other, "synthetic graphs"),
        }
    }
}

pub struct VerifyPlan {
    pub checks: Vec<Check>,
    pub radius: usize,
    pub all_centers: bool,
    pub fail_fast: bool,
    pub ball_options: BallOptions,
}

fn height_suite<M: VerifyModel>(model: &M, ball: &Ball<M::Vertex>) -> SuiteResult<SuiteReport> {
    let mut r = SuiteReport::new("height-formula", ball.base().to_string());
    let base = model.base_vertex();
    if ball.base() != &base {
        return Err(RunError::Usage(
            "height-formula compares against the base vertex; drop --center".into(),
        ));
    }
    for i in 0..ball.len() {
        let v = ball.vertex(i);
        r.instances_checked += 1;
        match model.closed_form_distance(v)? {
            Some(d) if d == ball.dist(i) => {}
            Some(d) => r.violation(vec![
                v.to_string(),
                format!("bfs {} closed form {d}", ball.dist(i)),
            ]),
            None => {
                return Err(RunError::Usage(
                    "height-formula is not available for this model".into(),
                ))
            }
        }
    }
    Ok(r.finish())
}

fn condition_suites<M: VerifyModel>(
    model: &M,
    ball: &Ball<M::Vertex>,
    checks: &[Check],
    fail_fast: bool,
) -> SuiteResult<Vec<(Check, SuiteReport)>> {
    let mut out = Vec::new();
    for &check in checks {
        let full = CheckOptions {
            local_only: false,
            fail_fast,
        };
        let local = CheckOptions {
            local_only: true,
            fail_fast,
        };
        match check {
            Check::Triangle => out.push((
                check,
                SuiteReport::from_condition("triangle", check_triangle(ball, model, full)?),
            )),
            Check::Quadrangle => out.push((
                check,
                SuiteReport::from_condition("quadrangle", check_quadrangle(ball, model, full)?),
            )),
            Check::LocalWm => {
                out.push((
                    check,
                    SuiteReport::from_condition(
                        "local-triangle",
                        check_triangle(ball, model, local)?,
                    ),
                ));
                out.push((
                    check,
                    SuiteReport::from_condition(
                        "local-quadrangle",
                        check_quadrangle(ball, model, local)?,
                    ),
                ));
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Runs the plan. Suites come back ordered by check, then by center.
pub fn run_verify<M: VerifyModel>(
    model: &M,
    center: Option<&str>,
    plan: &VerifyPlan,
) -> SuiteResult<Vec<SuiteReport>> {
    for &check in &plan.checks {
        model.supports(check).map_err(RunError::Usage)?;
        if plan.radius < check.min_radius() {
            return Err(RunError::Usage(format!(
                "check {check} needs radius at least {}, got {}",
                check.min_radius(),
                plan.radius
            )));
        }
    }
    let base = match center {
        Some(s) => model.parse_vertex(s).map_err(RunError::Usage)?,
        None => model.base_vertex(),
    };
    let ball = Ball::generate_with(model, base.clone(), plan.radius, plan.ball_options)?;
    let condition_checks: Vec<Check> = plan
        .checks
        .iter()
        .copied()
        .filter(|c| matches!(c, Check::Triangle | Check::Quadrangle | Check::LocalWm))
        .collect();

    let mut tagged: Vec<(Check, usize, SuiteReport)> = Vec::new();
    for (c, r) in condition_suites(model, &ball, &condition_checks, plan.fail_fast)? {
        tagged.push((c, 0, r));
    }
    if plan.all_centers && !condition_checks.is_empty() {
        let centers: Vec<M::Vertex> = (0..ball.len())
            .filter(|&i| ball.dist(i) == 1)
            .map(|i| ball.vertex(i).clone())
            .collect();
        for (k, c) in centers.into_iter().enumerate() {
            let b = Ball::generate_with(model, c, plan.radius, plan.ball_options)?;
            for (check, r) in condition_suites(model, &b, &condition_checks, plan.fail_fast)? {
                tagged.push((check, k + 1, r));
            }
        }
    }
    for &check in &plan.checks {
        let r = match check {
            Check::HeightFormula => height_suite(model, &ball)?,
            Check::EdgeForms => model.edge_forms(&ball)?,
            Check::SquareLemma => model.square_lemma(&ball)?,
            Check::ApartmentEmbed => model.apartment_embed(plan.radius)?,
            _ => continue,
        };
        tagged.push((check, 0, r));
    }
    tagged.sort_by_key(|t| (t.0, t.1));
    Ok(tagged.into_iter().map(|(_, _, r)| r).collect())
}
