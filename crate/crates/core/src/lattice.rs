//! The 1-skeleton of the affine `A_n` Coxeter complex as an integer lattice.
//!
//! Vertices are the points of `Z^{n+1}` with coordinate sum zero whose
//! coordinates all agree modulo `n + 1`. Two vertices are adjacent when their
//! difference is a sum-zero vector, congruent mod `n + 1`, with spread
//! exactly `n + 1`. Such a difference takes one positive value on a nonempty
//! proper subset of coordinates and one negative value elsewhere, so an edge
//! is an [`EdgeStep`]: the set of coordinates that go up.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NeighborOracle, Typed};
use crate::scalar::{self, Integer};

/// Largest supported rank. Edge steps are stored as `u64` bitmasks.
pub const MAX_RANK: usize = 62;

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        Err(Error::InvalidRank(rank))
    } else {
        Ok(())
    }
}

fn all_congruent<T: Integer>(xs: &[T], modulus: T) -> bool {
    match xs.split_first() {
        None => true,
        Some((first, rest)) => {
            let r = scalar::rem_euclid(*first, modulus);
            rest.iter().all(|x| scalar::rem_euclid(*x, modulus) == r)
        }
    }
}

fn checked_sum<T: Integer>(xs: &[T]) -> Result<T> {
    xs.iter().try_fold(T::zero(), |acc, x| scalar::add(acc, *x))
}

fn spread<T: Integer>(xs: &[T]) -> Result<T> {
    let max = xs.iter().copied().max().unwrap_or_else(T::zero);
    let min = xs.iter().copied().min().unwrap_or_else(T::zero);
    scalar::sub(max, min)
}

/// Membership test for the vertex set of the rank-`n` model.
pub fn is_vertex<T: Integer>(coords: &[T], n: usize) -> Result<bool> {
    check_rank(n)?;
    if coords.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            got: coords.len(),
        });
    }
    let modulus = scalar::cast::<T>(n + 1)?;
    Ok(checked_sum(coords)?.is_zero() && all_congruent(coords, modulus))
}

/// Whether `diff` is the difference vector of an edge of the rank-`n` model.
pub fn is_edge_vector<T: Integer>(diff: &[T], n: usize) -> Result<bool> {
    if !is_vertex(diff, n)? {
        return Ok(false);
    }
    Ok(spread(diff)? == scalar::cast::<T>(n + 1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// An edge direction: the nonempty proper subset of coordinates raised by
/// one rung.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeStep {
    mask: u64,
    rank: usize,
}

impl EdgeStep {
    pub fn new(mask: u64, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        let full = Self::full_mask(rank);
        if mask == 0 || mask & full == full || mask & !full != 0 {
            return Err(Error::InvalidStep { mask, rank });
        }
        Ok(Self { mask, rank })
    }

    pub fn from_subset(indices: &[usize], rank: usize) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i > rank {
                return Err(Error::InvalidStep {
                    mask: u64::MAX,
                    rank,
                });
            }
            mask |= 1 << i;
        }
        Self::new(mask, rank)
    }

    /// The step with the given sign pattern; `signs.len()` is `n + 1`.
    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        if signs.len() < 2 {
            return Err(Error::InvalidRank(signs.len().saturating_sub(1)));
        }
        let rank = signs.len() - 1;
        let mask = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Plus)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        if mask == 0 || mask == Self::full_mask(rank) {
            return Err(Error::DegenerateSigns);
        }
        Self::new(mask, rank)
    }

    fn full_mask(rank: usize) -> u64 {
        (1u64 << (rank + 1)) - 1
    }

    /// All `2^{n+1} - 2` steps of rank `n`, in increasing bitmask order.
    pub fn all(rank: usize) -> impl Iterator<Item = EdgeStep> {
        let full = if rank == 0 || rank > MAX_RANK {
            0
        } else {
            Self::full_mask(rank)
        };
        (1..full).map(move |mask| EdgeStep { mask, rank })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, i: usize) -> bool {
        i <= self.rank && self.mask >> i & 1 == 1
    }

    /// Number of raised coordinates.
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positive_set(&self) -> Vec<usize> {
        (0..=self.rank).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(&self) -> Self {
        Self {
            mask: !self.mask & Self::full_mask(self.rank),
            rank: self.rank,
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..=self.rank)
            .map(|i| {
                if self.contains(i) {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect()
    }

    /// Difference vector: `n + 1 - k` on the raised coordinates and `-k`
    /// elsewhere, where `k` is the number of raised coordinates.
    pub fn vector<T: Integer>(&self) -> Result<Vec<T>> {
        let k = self.len();
        let up = scalar::cast::<T>(self.rank + 1 - k)?;
        let down = -scalar::cast::<T>(k)?;
        Ok((0..=self.rank)
            .map(|i| if self.contains(i) { up } else { down })
            .collect())
    }
}

impl fmt::Display for EdgeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..=self.rank {
            f.write_str(if self.contains(i) { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for EdgeStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(Error::Parse(format!("unexpected sign character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_signs(&signs)
    }
}

/// A vertex of the rank-`n` model, stored as its sum-zero coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex<T> {
    coords: Vec<T>,
}

impl<T: Integer> Vertex<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        let n = coords.len().checked_sub(1).ok_or(Error::InvalidRank(0))?;
        if is_vertex(&coords, n)? {
            Ok(Self { coords })
        } else {
            Err(Error::NotAVertex(join(&coords)))
        }
    }

    pub fn origin(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Self {
            coords: vec![T::zero(); rank + 1],
        })
    }

    pub(crate) fn from_raw(coords: Vec<T>) -> Self {
        debug_assert!(is_vertex(&coords, coords.len() - 1).unwrap_or(false));
        Self { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    fn modulus(&self) -> T {
        // Validated at construction.
        T::from(self.coords.len()).expect("rank fits in scalar type")
    }

    /// Graph distance to the origin: coordinate spread divided by `n + 1`.
    pub fn height(&self) -> T {
        let max = *self.coords.iter().max().expect("nonempty");
        let min = *self.coords.iter().min().expect("nonempty");
        (max - min) / self.modulus()
    }

    /// The common residue of the coordinates modulo `n + 1`. Adjacent
    /// vertices always have distinct residues.
    pub fn type_of(&self) -> usize {
        scalar::rem_euclid(self.coords[0], self.modulus())
            .to_usize()
            .expect("residue is small")
    }

    pub fn translate(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| scalar::add(*a, *b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coords })
    }

    /// `other - self`, itself a vertex.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| scalar::sub(*b, *a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coords })
    }

    pub fn step(&self, step: &EdgeStep) -> Result<Self> {
        if step.rank() != self.rank() {
            return Err(Error::RankMismatch(self.rank(), step.rank()));
        }
        let e = step.vector::<T>()?;
        let coords = self
            .coords
            .iter()
            .zip(&e)
            .map(|(a, b)| scalar::add(*a, *b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coords })
    }

    pub fn is_adjacent(&self, other: &Self) -> Result<bool> {
        let diff = self.difference(other)?;
        Ok(spread(&diff.coords)? == self.modulus())
    }

    /// The step leading from `self` to `other`, if they are adjacent.
    pub fn step_to(&self, other: &Self) -> Result<Option<EdgeStep>> {
        if !self.is_adjacent(other)? {
            return Ok(None);
        }
        let diff = self.difference(other)?;
        let mask = diff
            .coords
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_positive())
            .fold(0u64, |m, (i, _)| m | 1 << i);
        EdgeStep::new(mask, self.rank()).map(Some)
    }

    /// All `2^{n+1} - 2` neighbors, ordered by the bitmask of the raised
    /// coordinate set.
    pub fn neighbors(&self) -> Result<Vec<Self>> {
        EdgeStep::all(self.rank()).map(|s| self.step(&s)).collect()
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.rank(), other.rank()))
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl<T: Integer> fmt::Display for Vertex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.coords))
    }
}

impl<T: Integer> FromStr for Vertex<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = parse_ints(s)?;
        Self::new(coords)
    }
}

pub(crate) fn parse_ints<T: Integer>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("invalid integer {:?}", x.trim())))
        })
        .collect()
}

/// Neighbor oracle for the rank-`n` lattice model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeModel<T = i64> {
    rank: usize,
    _marker: PhantomData<T>,
}

impl<T: Integer> LatticeModel<T> {
    pub fn new(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Self {
            rank,
            _marker: PhantomData,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn origin(&self) -> Vertex<T> {
        Vertex::origin(self.rank).expect("rank validated")
    }
}

impl<T: Integer> NeighborOracle for LatticeModel<T> {
    type Vertex = Vertex<T>;

    fn neighbors(&self, v: &Vertex<T>) -> Result<Vec<Vertex<T>>> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, v.rank()));
        }
        v.neighbors()
    }
}

impl<T: Integer> Typed for LatticeModel<T> {
    fn type_count(&self) -> usize {
        self.rank + 1
    }

    fn type_of(&self, v: &Vertex<T>) -> usize {
        v.type_of()
    }
}
