//! Integer scalar abstraction shared by the lattice model, ladders and the
//! building.
//!
//! Every arithmetic operation on coordinates or matrix entries goes through
//! the checked helpers below so that overflow surfaces as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};

/// Signed primitive integers usable as coordinates and matrix entries.
pub trait Integer:
    PrimInt + Signed + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}

impl<T> Integer for T where
    T: PrimInt + Signed + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}

pub(crate) fn cast<T: Integer>(x: usize) -> Result<T> {
    T::from(x).ok_or(Error::Overflow)
}

pub(crate) fn add<T: Integer>(a: T, b: T) -> Result<T> {
    a.checked_add(&b).ok_or(Error::Overflow)
}

pub(crate) fn sub<T: Integer>(a: T, b: T) -> Result<T> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

pub(crate) fn mul<T: Integer>(a: T, b: T) -> Result<T> {
    a.checked_mul(&b).ok_or(Error::Overflow)
}

/// Euclidean remainder, always in `0..m` for `m > 0`.
pub(crate) fn rem_euclid<T: Integer>(a: T, m: T) -> T {
    let r = a % m;
    if r < T::zero() {
        r + m
    } else {
        r
    }
}

/// Floor division for `m > 0`.
pub(crate) fn div_floor<T: Integer>(a: T, m: T) -> T {
    (a - rem_euclid(a, m)) / m
}

/// p-adic valuation of a nonzero integer.
pub(crate) fn valuation<T: Integer>(mut a: T, p: T) -> u32 {
    debug_assert!(!a.is_zero());
    let mut v = 0;
    while (a % p).is_zero() {
        a = a / p;
        v += 1;
    }
    v
}

/// Splits a nonzero `a` into `(v, u)` with `a = p^v * u` and `p ∤ u`.
pub(crate) fn split_valuation<T: Integer>(mut a: T, p: T) -> (u32, T) {
    let mut v = 0;
    while (a % p).is_zero() {
        a = a / p;
        v += 1;
    }
    (v, a)
}

pub(crate) fn gcd<T: Integer>(mut a: T, mut b: T) -> T {
    a = a.abs();
    b = b.abs();
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub(crate) fn ext_gcd<T: Integer>(a: T, b: T) -> Result<(T, T, T)> {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r / r;
        let next_r = sub(old_r, mul(q, r)?)?;
        old_r = r;
        r = next_r;
        let next_s = sub(old_s, mul(q, s)?)?;
        old_s = s;
        s = next_s;
        let next_t = sub(old_t, mul(q, t)?)?;
        old_t = t;
        t = next_t;
    }
    if old_r < T::zero() {
        Ok((-old_r, -old_s, -old_t))
    } else {
        Ok((old_r, old_s, old_t))
    }
}

pub(crate) fn is_prime<T: Integer>(p: T) -> bool {
    let two = T::one() + T::one();
    if p < two {
        return false;
    }
    let mut d = two;
    while d * d <= p {
        if (p % d).is_zero() {
            return false;
        }
        d = d + T::one();
    }
    true
}
