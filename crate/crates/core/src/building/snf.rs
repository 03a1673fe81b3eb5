//! p-adic valuations of elementary divisors via elimination over the local
//! ring at p.
//!
//! Rows and columns may be scaled by integers prime to p, which are units
//! locally, so only the p-parts of the elementary divisors are preserved.
//! That keeps all arithmetic in the integers without fractions.

use super::{Matrix, DIM};
use crate::error::{Error, Result};
use crate::scalar::{self, Integer};

fn strip_content<T: Integer>(entries: &mut [&mut T], p: T) -> Result<()> {
    let g = entries.iter().fold(T::zero(), |g, x| scalar::gcd(g, **x));
    if g.is_zero() {
        return Ok(());
    }
    let (_, unit) = scalar::split_valuation(g, p);
    let unit = unit.abs();
    if unit > T::one() {
        for x in entries.iter_mut() {
            **x = **x / unit;
        }
    }
    Ok(())
}

/// Elementary divisor valuations, largest first.
pub fn elementary_valuations<T: Integer>(m: &Matrix<T>, p: T) -> Result<[u32; DIM]> {
    let mut a = *m;
    let mut vals = [0u32; DIM];
    for k in 0..DIM {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if !x.is_zero() {
                    let v = scalar::valuation(*x, p);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, bi, bj) = best.ok_or(Error::Singular)?;
        a.swap(k, bi);
        for row in a.iter_mut() {
            row.swap(k, bj);
        }
        let (_, unit) = scalar::split_valuation(a[k][k], p);
        let prime_power = a[k][k] / unit;
        for i in k + 1..DIM {
            let b = a[i][k];
            if b.is_zero() {
                continue;
            }
            let q = b / prime_power;
            for j in k..DIM {
                a[i][j] = scalar::sub(scalar::mul(unit, a[i][j])?, scalar::mul(q, a[k][j])?)?;
            }
            let (_, rest) = a[i].split_at_mut(k + 1);
            strip_content(&mut rest.iter_mut().collect::<Vec<_>>(), p)?;
        }
        for j in k + 1..DIM {
            let c = a[k][j];
            if c.is_zero() {
                continue;
            }
            let q = c / prime_power;
            for row in a.iter_mut().skip(k) {
                row[j] = scalar::sub(scalar::mul(unit, row[j])?, scalar::mul(q, row[k])?)?;
            }
            let mut col: Vec<&mut T> = a.iter_mut().skip(k + 1).map(|row| &mut row[j]).collect();
            strip_content(&mut col, p)?;
        }
        vals[k] = v;
    }
    vals.sort_unstable_by(|x, y| y.cmp(x));
    Ok(vals)
}
