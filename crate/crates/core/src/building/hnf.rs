//! Column Hermite normal form of nonsingular 4×4 integer matrices.
//!
//! The lattice is the column span. The normal form is upper triangular with
//! positive pivots, and each entry to the right of a pivot is reduced into
//! `0..pivot` by subtracting multiples of the pivot's column. Two matrices
//! span the same lattice iff their normal forms agree.

use super::{Matrix, DIM};
use crate::error::{Error, Result};
use crate::scalar::{self, Integer};

fn combine_columns<T: Integer>(
    m: &mut Matrix<T>,
    a: usize,
    b: usize,
    [[s, t], [u, v]]: [[T; 2]; 2],
) -> Result<()> {
    for row in m.iter_mut() {
        let (x, y) = (row[a], row[b]);
        row[a] = scalar::add(scalar::mul(s, x)?, scalar::mul(t, y)?)?;
        row[b] = scalar::add(scalar::mul(u, x)?, scalar::mul(v, y)?)?;
    }
    Ok(())
}

pub fn column_hnf<T: Integer>(mut m: Matrix<T>) -> Result<Matrix<T>> {
    for r in (0..DIM).rev() {
        for c in 0..r {
            let (x, y) = (m[r][r], m[r][c]);
            if y.is_zero() {
                continue;
            }
            let (g, s, t) = scalar::ext_gcd(x, y)?;
            // Unimodular: s*x/g + t*y/g = 1.
            combine_columns(&mut m, r, c, [[s, t], [-(y / g), x / g]])?;
        }
        if m[r][r].is_zero() {
            return Err(Error::Singular);
        }
        if m[r][r].is_negative() {
            for row in m.iter_mut() {
                row[r] = -row[r];
            }
        }
    }
    for j in 1..DIM {
        for i in (0..j).rev() {
            let q = scalar::div_floor(m[i][j], m[i][i]);
            if q.is_zero() {
                continue;
            }
            for row in m.iter_mut() {
                row[j] = scalar::sub(row[j], scalar::mul(q, row[i])?)?;
            }
        }
    }
    Ok(m)
}
