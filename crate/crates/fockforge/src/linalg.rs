//! Dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::FockError;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;
pub type RMatrix = DMatrix<f64>;

/// Operator (spectral) norm: the largest singular value.
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().singular_values().max()
}

/// Frobenius / Hilbert-Schmidt norm.
pub fn hs_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest absolute entry.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let mut eigs: Vec<f64> = a
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// det(I - A)^{-1/2} on the principal branch, assuming the spectral radius
/// of `A` is below one.
///
/// Uses log det(I - A) = -sum_k tr(A^k)/k, which sums the principal
/// logarithm over the eigenvalues of I - A; the series is geometric in the
/// spectral radius and errs out instead of silently returning when the
/// radius is too close to one.
pub fn det_inv_sqrt_principal(a: &CMatrix) -> Result<C64, FockError> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(FockError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let mut log_det = C64::new(0.0, 0.0);
    let mut power = a.clone();
    const MAX_TERMS: usize = 40_000;
    for k in 1..=MAX_TERMS {
        let tr: C64 = power.diagonal().iter().sum();
        let term = tr / (k as f64);
        log_det -= term;
        let size = max_abs(&power);
        if size * (n as f64) / (k as f64) < 1e-18 {
            return Ok((-log_det / 2.0).exp());
        }
        power *= a;
    }
    Err(FockError::BranchNotConverged)
}

/// Numerical rank: singular values above `rel_tol` times the largest.
pub fn rank_with_tol(a: &CMatrix, rel_tol: f64) -> usize {
    let sv = a.clone().singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Random complex vector with entries uniform in the unit square.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Random complex symmetric matrix scaled to the requested operator norm.
pub fn random_symmetric_with_norm<R: Rng>(rng: &mut R, n: usize, norm: f64) -> CMatrix {
    let raw = CMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let sym = (&raw + raw.transpose()) * C64::new(0.5, 0.0);
    let current = operator_norm(&sym);
    if current == 0.0 {
        return sym;
    }
    sym * C64::new(norm / current, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_norm_of_diagonal() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![
            C64::new(0.3, 0.0),
            C64::new(-0.9, 0.0),
        ]));
        assert!((operator_norm(&a) - 0.9).abs() < 1e-12);
    }

    #[test]
    fn principal_det_matches_scalar_case() {
        // 1x1: det(I - a)^{-1/2} = (1 - a)^{-1/2}
        let a = CMatrix::from_element(1, 1, C64::new(0.3, 0.4));
        let got = det_inv_sqrt_principal(&a).unwrap();
        let want = (C64::new(1.0, 0.0) - C64::new(0.3, 0.4)).powf(-0.5);
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn principal_det_matches_lu_for_real_spd() {
        // I - A Hermitian positive definite: value is real and equals the
        // direct determinant route
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![
            C64::new(0.25, 0.0),
            C64::new(0.49, 0.0),
        ]));
        let got = det_inv_sqrt_principal(&a).unwrap();
        let want = 1.0 / (0.75_f64 * 0.51).sqrt();
        assert!((got.re - want).abs() < 1e-12);
        assert!(got.im.abs() < 1e-14);
    }

    #[test]
    fn rank_detects_deficiency() {
        let mut a = CMatrix::zeros(3, 3);
        a[(0, 0)] = C64::new(1.0, 0.0);
        a[(1, 1)] = C64::new(2.0, 0.0);
        assert_eq!(rank_with_tol(&a, 1e-10), 2);
    }
}
