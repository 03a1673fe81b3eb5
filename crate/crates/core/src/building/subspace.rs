//! Subspaces of `F_p^4` in reduced row-echelon form.

use super::DIM;
use crate::error::Result;
use crate::scalar::{self, Integer};

/// A nonzero subspace given by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    pub pivots: Vec<usize>,
    pub basis: Vec<[T; DIM]>,
}

impl<T: Integer> Subspace<T> {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
}

fn pivot_sets(k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << DIM)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..DIM).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// All `k`-dimensional subspaces of `F_p^4`, one per reduced row-echelon
/// basis. Ordered by pivot set, then by free entries in lexicographic order.
pub fn subspaces_of_dim<T: Integer>(p: T, k: usize) -> Result<Vec<Subspace<T>>> {
    let mut out = Vec::new();
    let mut pivots_by_size = pivot_sets(k);
    pivots_by_size.sort();
    for pivots in pivots_by_size {
        // Free slots: (row, column) right of the row's pivot, not a pivot column.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| {
                let pivots = &pivots;
                (pc + 1..DIM)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (row, c))
            })
            .collect();
        let mut digits = vec![T::zero(); free.len()];
        loop {
            let mut basis = vec![[T::zero(); DIM]; k];
            for (row, &pc) in pivots.iter().enumerate() {
                basis[row][pc] = T::one();
            }
            for (&(row, col), &d) in free.iter().zip(&digits) {
                basis[row][col] = d;
            }
            out.push(Subspace {
                pivots: pivots.clone(),
                basis,
            });
            // Odometer increment, last digit fastest.
            let mut pos = digits.len();
            let exhausted = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                digits[pos] = scalar::add(digits[pos], T::one())?;
                if digits[pos] < p {
                    break false;
                }
                digits[pos] = T::zero();
            };
            if exhausted {
                break;
            }
        }
    }
    Ok(out)
}

/// All nonzero proper subspaces, by increasing dimension.
pub fn proper_subspaces<T: Integer>(p: T) -> Result<Vec<Subspace<T>>> {
    let mut all = Vec::new();
    for k in 1..DIM {
        all.extend(subspaces_of_dim(p, k)?);
    }
    Ok(all)
}
