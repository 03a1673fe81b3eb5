//! The Bruhat–Tits building of `SL_4` over the p-adic numbers, a building
//! of type affine `A_3`.
//!
//! A vertex is a homothety class of full-rank lattices in `Q_p^4`. Each class
//! has a unique representative contained in the standard lattice `Z_p^4` but
//! not in `p Z_p^4`; since such a representative contains `p^k Z_p^4` for
//! some `k`, it is determined by an integer matrix and stored in column
//! Hermite normal form. Classes `[L]` and `[M]` are adjacent when, after
//! rescaling, `pL ⊊ M ⊊ L`, so the neighbors of `[L]` correspond to nonzero
//! proper subspaces of `L / pL ≅ F_p^4`.

#![allow(clippy::needless_range_loop)]

mod hnf;
mod snf;
pub mod subspace;

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{NeighborOracle, Typed};
use crate::ladder::Ladder;
use crate::lattice::Vertex;
use crate::scalar::{self, Integer};

pub use hnf::column_hnf;
pub use snf::elementary_valuations;
pub use subspace::{proper_subspaces, subspaces_of_dim, Subspace};

pub const DIM: usize = 4;

/// Row-major `DIM × DIM` integer matrix; lattices are column spans.
pub type Matrix<T> = [[T; DIM]; DIM];

fn identity<T: Integer>() -> Matrix<T> {
    let mut m = [[T::zero(); DIM]; DIM];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

fn mat_mul<T: Integer>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let mut out = [[T::zero(); DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let mut acc = T::zero();
            for k in 0..DIM {
                acc = scalar::add(acc, scalar::mul(a[i][k], b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

fn det3<T: Integer>(m: [[T; 3]; 3]) -> Result<T> {
    let term = |a: T, b: T, c: T, d: T, e: T| -> Result<T> {
        scalar::mul(a, scalar::sub(scalar::mul(b, c)?, scalar::mul(d, e)?)?)
    };
    let t0 = term(m[0][0], m[1][1], m[2][2], m[1][2], m[2][1])?;
    let t1 = term(m[0][1], m[1][0], m[2][2], m[1][2], m[2][0])?;
    let t2 = term(m[0][2], m[1][0], m[2][1], m[1][1], m[2][0])?;
    scalar::add(scalar::sub(t0, t1)?, t2)
}

/// Classical adjugate, `adj(M) M = det(M) I`.
fn adjugate<T: Integer>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let mut adj = [[T::zero(); DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let mut minor = [[T::zero(); 3]; 3];
            for (r, row) in (0..DIM).filter(|&r| r != i).enumerate() {
                for (c, col) in (0..DIM).filter(|&c| c != j).enumerate() {
                    minor[r][c] = m[row][col];
                }
            }
            let cof = det3(minor)?;
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    Ok(adj)
}

fn checked_pow<T: Integer>(p: T, e: usize) -> Result<T> {
    num_traits::checked_pow(p, e).ok_or(Error::Overflow)
}

fn check_prime<T: Integer>(p: T) -> Result<()> {
    if scalar::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

/// Elementary divisor valuations of a class representative inside the
/// standard lattice, largest first, normalized so the last entry is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorProfile(pub [u32; DIM]);

impl DivisorProfile {
    fn normalized(mut vals: [u32; DIM]) -> Self {
        let min = vals[DIM - 1];
        for v in &mut vals {
            *v -= min;
        }
        Self(vals)
    }

    pub fn spread(&self) -> u32 {
        self.0[0] - self.0[DIM - 1]
    }
}

impl fmt::Display for DivisorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A vertex of the building: the canonical primitive representative of a
/// homothety class of lattices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass<T> {
    p: T,
    hnf: Matrix<T>,
}

impl<T: Integer> LatticeClass<T> {
    /// The class of the standard lattice.
    pub fn base(p: T) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, hnf: identity() })
    }

    /// Canonical class of the column span of `m`, whose determinant must be
    /// a power of `p` up to sign.
    pub fn canonicalize(m: Matrix<T>, p: T) -> Result<Self> {
        check_prime(p)?;
        Self::canonicalize_unchecked(m, p)
    }

    fn canonicalize_unchecked(m: Matrix<T>, p: T) -> Result<Self> {
        let mut h = column_hnf(m)?;
        for (i, row) in h.iter().enumerate() {
            let (_, unit) = scalar::split_valuation(row[i], p);
            if unit != T::one() {
                return Err(Error::NotPrimePower(p.to_string()));
            }
        }
        while h.iter().flatten().all(|x| (*x % p).is_zero()) {
            for x in h.iter_mut().flatten() {
                *x = *x / p;
            }
        }
        Ok(Self { p, hnf: h })
    }

    pub fn prime(&self) -> T {
        self.p
    }

    pub fn hnf(&self) -> &Matrix<T> {
        &self.hnf
    }

    /// p-adic valuation of the determinant of the representative.
    pub fn det_valuation(&self) -> u32 {
        (0..DIM)
            .map(|i| scalar::valuation(self.hnf[i][i], self.p))
            .sum()
    }

    /// Vertex type: determinant valuation mod 4. Adjacent classes differ.
    pub fn type_of(&self) -> usize {
        self.det_valuation() as usize % DIM
    }

    pub fn divisor_profile(&self) -> Result<DivisorProfile> {
        elementary_valuations(&self.hnf, self.p).map(DivisorProfile::normalized)
    }

    /// Graph distance to the base class: the largest elementary divisor
    /// valuation.
    pub fn distance_to_base(&self) -> Result<u32> {
        Ok(self.divisor_profile()?.spread())
    }

    /// Graph distance between two classes: the spread of the elementary
    /// divisor valuations of `L^{-1} M`, computed on `adj(L) M`.
    pub fn distance(&self, other: &Self) -> Result<u32> {
        if self.p != other.p {
            return Err(Error::Precondition("classes over different primes".into()));
        }
        let rel = mat_mul(&adjugate(&self.hnf)?, &other.hnf)?;
        let vals = elementary_valuations(&rel, self.p)?;
        Ok(vals[0] - vals[DIM - 1])
    }

    /// Neighbors paired with the dimension of the subspace of `L / pL` they
    /// come from, in subspace enumeration order.
    pub fn neighbors_with_dim(&self) -> Result<Vec<(Self, usize)>> {
        proper_subspaces(self.p)?
            .into_iter()
            .map(|s| {
                let k = s.dim();
                let mut b = [[T::zero(); DIM]; DIM];
                let mut col = 0;
                for v in &s.basis {
                    for (row, x) in v.iter().enumerate() {
                        b[row][col] = *x;
                    }
                    col += 1;
                }
                for j in (0..DIM).filter(|j| !s.pivots.contains(j)) {
                    b[j][col] = self.p;
                    col += 1;
                }
                let m = mat_mul(&self.hnf, &b)?;
                Ok((Self::canonicalize_unchecked(m, self.p)?, k))
            })
            .collect()
    }

    pub fn neighbors(&self) -> Result<Vec<Self>> {
        Ok(self
            .neighbors_with_dim()?
            .into_iter()
            .map(|(c, _)| c)
            .collect())
    }

    /// The diagonal class `diag(p^{rung_i})` of a rank-3 lattice vertex. The
    /// diagonal classes form one apartment.
    pub fn embed_apartment(v: &Vertex<T>, p: T) -> Result<Self> {
        if v.rank() != DIM - 1 {
            return Err(Error::RankMismatch(v.rank(), DIM - 1));
        }
        check_prime(p)?;
        let ladder = Ladder::of(v);
        let mut m = [[T::zero(); DIM]; DIM];
        for (i, r) in ladder.rungs().iter().enumerate() {
            let e = r.to_usize().ok_or(Error::Overflow)?;
            m[i][i] = checked_pow(p, e)?;
        }
        Self::canonicalize_unchecked(m, p)
    }
}

impl<T: Integer> fmt::Display for LatticeClass<T> {
    /// `p|r00,r01,r02,r03;r11,r12,r13;r22,r23;r33`: the upper triangle,
    /// row by row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..DIM)
            .map(|i| {
                (i..DIM)
                    .map(|j| self.hnf[i][j].to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}|{}", self.p, rows.join(";"))
    }
}

impl<T: Integer> FromStr for LatticeClass<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, body) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|' in {s:?}")))?;
        let p: T = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid prime {p:?}")))?;
        let rows: Vec<&str> = body.split(';').collect();
        if rows.len() != DIM {
            return Err(Error::Parse(format!(
                "expected {DIM} rows, got {}",
                rows.len()
            )));
        }
        let mut m = [[T::zero(); DIM]; DIM];
        for (i, row) in rows.iter().enumerate() {
            let entries = crate::lattice::parse_ints::<T>(row)?;
            if entries.len() != DIM - i {
                return Err(Error::Parse(format!(
                    "row {i} needs {} entries, got {}",
                    DIM - i,
                    entries.len()
                )));
            }
            for (k, x) in entries.into_iter().enumerate() {
                m[i][i + k] = x;
            }
        }
        Self::canonicalize(m, p)
    }
}

/// Neighbor oracle for the building at a fixed prime.
#[derive(Debug, Clone, Copy)]
pub struct BuildingModel<T = i64> {
    p: T,
    _marker: PhantomData<T>,
}

impl<T: Integer> BuildingModel<T> {
    pub fn new(p: T) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            p,
            _marker: PhantomData,
        })
    }

    pub fn prime(&self) -> T {
        self.p
    }

    pub fn base(&self) -> LatticeClass<T> {
        LatticeClass::base(self.p).expect("prime validated")
    }
}

impl<T: Integer> NeighborOracle for BuildingModel<T> {
    type Vertex = LatticeClass<T>;

    fn neighbors(&self, v: &LatticeClass<T>) -> Result<Vec<LatticeClass<T>>> {
        v.neighbors()
    }
}

impl<T: Integer> Typed for BuildingModel<T> {
    fn type_count(&self) -> usize {
        DIM
    }

    fn type_of(&self, v: &LatticeClass<T>) -> usize {
        v.type_of()
    }
}
