//! Ladders: the rung picture of a lattice vertex.
//!
//! Coordinate `i` of a vertex sits on rung `(x_i - min x) / (n + 1)`.
//! Traversing an edge raises the stepped coordinates by one rung, and the
//! height of a vertex is its top rung. The two completion constructions
//! below produce the explicit witnesses for the triangle and quadrangle
//! conditions centered at the origin.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{parse_ints, EdgeStep, Vertex};
use crate::scalar::{self, Integer};

/// Rung assignment normalized so the lowest rung is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ladder<T> {
    rungs: Vec<T>,
}

impl<T: Integer> Ladder<T> {
    /// Accepts already-normalized rungs only.
    pub fn new(rungs: Vec<T>) -> Result<Self> {
        if rungs.len() < 2 {
            return Err(Error::InvalidRank(rungs.len().saturating_sub(1)));
        }
        let min = *rungs.iter().min().expect("nonempty");
        if !min.is_zero() {
            return Err(Error::UnnormalizedLadder);
        }
        Ok(Self { rungs })
    }

    /// Translates arbitrary rungs so that the minimum is 0.
    pub fn normalized(mut rungs: Vec<T>) -> Result<Self> {
        if rungs.len() < 2 {
            return Err(Error::InvalidRank(rungs.len().saturating_sub(1)));
        }
        let min = *rungs.iter().min().expect("nonempty");
        for r in &mut rungs {
            *r = scalar::sub(*r, min)?;
        }
        Ok(Self { rungs })
    }

    pub fn of(v: &Vertex<T>) -> Self {
        let c = v.coords();
        let min = *c.iter().min().expect("nonempty");
        let modulus = T::from(c.len()).expect("rank fits");
        Self {
            rungs: c.iter().map(|x| (*x - min) / modulus).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rungs.len() - 1
    }

    pub fn rungs(&self) -> &[T] {
        &self.rungs
    }

    /// The unique sum-zero vertex with this ladder.
    pub fn to_vertex(&self) -> Result<Vertex<T>> {
        let modulus = scalar::cast::<T>(self.rungs.len())?;
        let total = self
            .rungs
            .iter()
            .try_fold(T::zero(), |acc, r| scalar::add(acc, *r))?;
        let coords = self
            .rungs
            .iter()
            .map(|r| scalar::sub(scalar::mul(modulus, *r)?, total))
            .collect::<Result<Vec<_>>>()?;
        Ok(Vertex::from_raw(coords))
    }

    /// Raise the coordinates in `step` by one rung and renormalize.
    pub fn apply_step(&self, step: &EdgeStep) -> Result<Self> {
        if step.rank() != self.rank() {
            return Err(Error::RankMismatch(self.rank(), step.rank()));
        }
        let raised = self
            .rungs
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if step.contains(i) {
                    scalar::add(*r, T::one())
                } else {
                    Ok(*r)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::normalized(raised)
    }

    pub fn height(&self) -> T {
        *self.rungs.iter().max().expect("nonempty")
    }

    /// Coordinates on the lowest rung, as a bitmask.
    pub fn bottom_mask(&self) -> u64 {
        self.mask_where(|r| r.is_zero())
    }

    /// Coordinates on the highest rung, as a bitmask.
    pub fn top_mask(&self) -> u64 {
        let h = self.height();
        self.mask_where(|r| r == h)
    }

    fn mask_where(&self, pred: impl Fn(T) -> bool) -> u64 {
        self.rungs
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(**r))
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

impl<T: Integer> fmt::Display for Ladder<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .rungs
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",");
        f.write_str(&s)
    }
}

impl<T: Integer> FromStr for Ladder<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_ints(s)?)
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Whether `step`, taken from a vertex with ladder `ladder`, omits part of
/// the bottom rung and touches none of the top rung.
fn keeps_height_from_below<T: Integer>(ladder: &Ladder<T>, step: &EdgeStep) -> bool {
    let bottom = ladder.bottom_mask();
    step.mask() & bottom != bottom && step.mask() & ladder.top_mask() == 0
}

/// Common neighbor of `a` and `b` one step closer to the origin.
///
/// `a` and `b` must be adjacent and of equal height `h >= 1`. After
/// orienting the pair so that the step `a -> b` leaves part of `a`'s bottom
/// rung in place and misses its top rung, the witness is `b` with the rest
/// of `a`'s bottom rung raised.
pub fn triangle_complete<T: Integer>(a: &Vertex<T>, b: &Vertex<T>) -> Result<Vertex<T>> {
    if a == b {
        return Err(precondition("triangle vertices coincide"));
    }
    let step_ab = a
        .step_to(b)?
        .ok_or_else(|| precondition("triangle vertices are not adjacent"))?;
    let h = a.height();
    if b.height() != h {
        return Err(precondition("triangle vertices have different heights"));
    }
    if h < T::one() {
        return Err(precondition(
            "triangle vertices must have height at least 1",
        ));
    }
    let (first, second, step) = {
        let la = Ladder::of(a);
        if keeps_height_from_below(&la, &step_ab) {
            (a, b, step_ab)
        } else {
            let lb = Ladder::of(b);
            let step_ba = step_ab.complement();
            if !keeps_height_from_below(&lb, &step_ba) {
                return Err(precondition(
                    "no orientation of the edge fixes the top rung",
                ));
            }
            (b, a, step_ba)
        }
    };
    let bottom = Ladder::of(first).bottom_mask();
    let rest = EdgeStep::new(bottom & !step.mask(), first.rank())?;
    second.step(&rest)
}

/// Common neighbor of `y` and `z` two steps closer to the origin than `x`.
///
/// `x` has height `h + 1 >= 2` and `y != z` are neighbors of `x` at height
/// `h`. The witness raises the bottom rung of `x` by two and strictly
/// middle rungs by one.
pub fn quadrangle_complete<T: Integer>(
    x: &Vertex<T>,
    y: &Vertex<T>,
    z: &Vertex<T>,
) -> Result<Vertex<T>> {
    if y == z {
        return Err(precondition("quadrangle vertices y and z coincide"));
    }
    let hx = x.height();
    if hx < T::one() + T::one() {
        return Err(precondition("apex must have height at least 2"));
    }
    let step_y = x
        .step_to(y)?
        .ok_or_else(|| precondition("y is not adjacent to the apex"))?;
    let step_z = x
        .step_to(z)?
        .ok_or_else(|| precondition("z is not adjacent to the apex"))?;
    if y.height() != hx - T::one() || z.height() != hx - T::one() {
        return Err(precondition("y and z must be one step below the apex"));
    }
    let lx = Ladder::of(x);
    let (bottom, top) = (lx.bottom_mask(), lx.top_mask());
    for (name, s) in [("x -> y", step_y), ("x -> z", step_z)] {
        if s.mask() & bottom != bottom || s.mask() & top != 0 {
            return Err(precondition(format!(
                "step {name} must contain the bottom rung and avoid the top rung"
            )));
        }
    }
    let two = T::one() + T::one();
    let raised = lx
        .rungs()
        .iter()
        .map(|&r| {
            if r.is_zero() {
                scalar::add(r, two)
            } else if r < hx {
                scalar::add(r, T::one())
            } else {
                Ok(r)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ladder::normalized(raised)?.to_vertex()
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = Vertex<i64>;
    type L = Ladder<i64>;

    fn v(c: &[i64]) -> V {
        V::new(c.to_vec()).unwrap()
    }

    fn l(r: &[i64]) -> L {
        L::new(r.to_vec()).unwrap()
    }

    #[test]
    fn ladder_of_examples() {
        assert_eq!(L::of(&v(&[10, 10, -5, -5, -10])), l(&[4, 4, 1, 1, 0]));
        assert_eq!(L::of(&V::origin(3).unwrap()), l(&[0, 0, 0, 0]));
        assert_eq!(L::of(&v(&[2, -1, -1])), l(&[1, 0, 0]));
    }

    #[test]
    fn vertex_of_examples() {
        assert_eq!(l(&[0, 0, 0]).to_vertex().unwrap(), V::origin(2).unwrap());
        assert_eq!(l(&[1, 0, 0]).to_vertex().unwrap(), v(&[2, -1, -1]));
        assert_eq!(
            l(&[4, 4, 1, 1, 0]).to_vertex().unwrap(),
            v(&[10, 10, -5, -5, -10])
        );
    }

    #[test]
    fn apply_step_examples() {
        let s = EdgeStep::from_subset(&[0, 2], 4).unwrap();
        assert_eq!(s.vector::<i64>().unwrap(), vec![3, -2, 3, -2, -2]);
        assert_eq!(
            l(&[4, 4, 1, 1, 0]).apply_step(&s).unwrap(),
            l(&[5, 4, 2, 1, 0])
        );
        let s0 = EdgeStep::from_subset(&[0], 2).unwrap();
        assert_eq!(l(&[0, 0, 0]).apply_step(&s0).unwrap(), l(&[1, 0, 0]));
        let s12 = EdgeStep::from_subset(&[1, 2], 2).unwrap();
        assert_eq!(l(&[1, 0, 0]).apply_step(&s12).unwrap(), l(&[0, 0, 0]));
    }

    #[test]
    fn ladder_heights() {
        assert_eq!(l(&[4, 4, 1, 1, 0]).height(), 4);
        assert_eq!(l(&[0, 0, 0]).height(), 0);
        assert_eq!(l(&[2, 1, 0]).height(), 2);
        assert_eq!(v(&[3, 0, -3]).height(), 2);
    }

    #[test]
    fn rejects_unnormalized() {
        assert_eq!(L::new(vec![1, 2, 3]), Err(Error::UnnormalizedLadder));
        assert_eq!(L::normalized(vec![1, 2, 3]).unwrap(), l(&[0, 1, 2]));
        assert_eq!("4,4,1,1,0".parse::<L>().unwrap().to_string(), "4,4,1,1,0");
    }

    #[test]
    fn triangle_examples() {
        let a = v(&[2, -1, -1]);
        let b = v(&[1, 1, -2]);
        assert_eq!(triangle_complete(&a, &b).unwrap(), V::origin(2).unwrap());
        assert_eq!(triangle_complete(&b, &a).unwrap(), V::origin(2).unwrap());
        let a = v(&[3, -1, -1, -1]);
        let b = v(&[2, 2, -2, -2]);
        assert_eq!(triangle_complete(&a, &b).unwrap(), V::origin(3).unwrap());
    }

    #[test]
    fn triangle_preconditions() {
        let a = v(&[2, -1, -1]);
        assert!(matches!(
            triangle_complete(&a, &a),
            Err(Error::Precondition(_))
        ));
        let far = v(&[4, -2, -2]);
        assert!(matches!(
            triangle_complete(&a, &far),
            Err(Error::Precondition(_))
        ));
        let o = V::origin(2).unwrap();
        assert!(matches!(
            triangle_complete(&a, &o),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quadrangle_examples() {
        let x = v(&[3, 0, -3]);
        let y = v(&[2, -1, -1]);
        let z = v(&[1, 1, -2]);
        assert_eq!(
            quadrangle_complete(&x, &y, &z).unwrap(),
            V::origin(2).unwrap()
        );
        assert!(matches!(
            quadrangle_complete(&x, &y, &y),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quadrangle_rank_three_apex() {
        let x = l(&[2, 1, 1, 0]).to_vertex().unwrap();
        assert_eq!(x, v(&[4, 0, 0, -4]));
        let below: Vec<V> = x
            .neighbors()
            .unwrap()
            .into_iter()
            .filter(|w| w.height() == 1)
            .collect();
        assert_eq!(below.len(), 4);
        for y in &below {
            for z in &below {
                if y != z {
                    assert_eq!(
                        quadrangle_complete(&x, y, z).unwrap(),
                        V::origin(3).unwrap()
                    );
                }
            }
        }
    }
}
