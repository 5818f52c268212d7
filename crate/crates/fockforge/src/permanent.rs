//! Permanent of a complex square matrix.
//!
//! Ryser's inclusion-exclusion with Gray-code subset updates is the working
//! route (O(2^n n)); a naive sum over all permutations stays available as an
//! independent oracle for n <= 8.

use num_complex::Complex64 as C64;

use crate::error::FockError;
use crate::linalg::CMatrix;

/// Largest matrix size accepted by [`permanent`].
pub const DEFAULT_PERMANENT_LIMIT: usize = 16;

/// Largest size the naive permutation-sum oracle accepts.
pub const NAIVE_PERMANENT_LIMIT: usize = 8;

fn check_square(a: &CMatrix) -> Result<usize, FockError> {
    if a.nrows() != a.ncols() {
        return Err(FockError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

/// Permanent via Ryser's formula, up to the default size limit.
pub fn permanent(a: &CMatrix) -> Result<C64, FockError> {
    permanent_with_limit(a, DEFAULT_PERMANENT_LIMIT)
}

/// Permanent via Ryser's formula with an explicit size limit.
pub fn permanent_with_limit(a: &CMatrix, limit: usize) -> Result<C64, FockError> {
    let n = check_square(a)?;
    if n > limit {
        return Err(FockError::PermanentLimit { size: n, limit });
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }

    // Per(A) = (-1)^n sum_{S != 0} (-1)^{|S|} prod_i sum_{j in S} a_ij,
    // with the column subset S walked in Gray-code order so each step
    // updates the row sums by a single column.
    let mut row_sums = vec![C64::new(0.0, 0.0); n];
    let mut total = C64::new(0.0, 0.0);
    let mut prev_gray: u64 = 0;
    for s in 1u64..(1u64 << n) {
        let gray = s ^ (s >> 1);
        let changed = gray ^ prev_gray;
        let j = changed.trailing_zeros() as usize;
        if gray & changed != 0 {
            for i in 0..n {
                row_sums[i] += a[(i, j)];
            }
        } else {
            for i in 0..n {
                row_sums[i] -= a[(i, j)];
            }
        }
        prev_gray = gray;

        let mut prod = C64::new(1.0, 0.0);
        for rs in &row_sums {
            prod *= rs;
        }
        let bits = gray.count_ones() as usize;
        if (n - bits).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Permanent as an explicit sum over all permutations; oracle for n <= 8.
pub fn permanent_naive(a: &CMatrix) -> Result<C64, FockError> {
    let n = check_square(a)?;
    if n > NAIVE_PERMANENT_LIMIT {
        return Err(FockError::PermanentLimit {
            size: n,
            limit: NAIVE_PERMANENT_LIMIT,
        });
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let mut used = vec![false; n];
    Ok(perm_sum(a, 0, &mut used, C64::new(1.0, 0.0)))
}

fn perm_sum(a: &CMatrix, row: usize, used: &mut [bool], partial: C64) -> C64 {
    let n = used.len();
    if row == n {
        return partial;
    }
    let mut acc = C64::new(0.0, 0.0);
    for col in 0..n {
        if !used[col] {
            used[col] = true;
            acc += perm_sum(a, row + 1, used, partial * a[(row, col)]);
            used[col] = false;
        }
    }
    acc
}
