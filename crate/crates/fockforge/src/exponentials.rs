//! Coherent vectors, quadratics and Gaussians, with their closed-form norms
//! and pairings.
//!
//! A symmetric antilinear map is stored as the complex symmetric matrix M of
//! v -> M conj(v). The Gaussian exp(zeta) built from it lies in the Fock
//! space exactly when ||M|| < 1, with squared norm det(I - M M*)^{-1/2};
//! divergent inputs are allowed everywhere and show up as unbounded partial
//! norms rather than errors.

use num_complex::Complex64 as C64;

use crate::combin::factorial;
use crate::error::FockError;
use crate::fock_vector::FockVector;
use crate::linalg::{det_inv_sqrt_principal, hs_norm, operator_norm, CMatrix, CVector};
use crate::multi_index::{enumerate_basis, MultiIndex};
use crate::ops::annihilate;

/// Asymmetry tolerated by the constructor before rejecting the matrix.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Complex symmetric matrix M encoding the antilinear map v -> M conj(v).
#[derive(Clone, Debug, PartialEq)]
pub struct SymAntilinear {
    mat: CMatrix,
}

impl SymAntilinear {
    /// Checks symmetry (within [`SYMMETRY_TOL`]) and stores the symmetrized
    /// matrix, so the invariant M = M^T holds exactly afterwards.
    pub fn new(mat: CMatrix) -> Result<Self, FockError> {
        if mat.nrows() != mat.ncols() {
            return Err(FockError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let asym = crate::linalg::max_abs(&(&mat - mat.transpose()));
        if asym > SYMMETRY_TOL {
            return Err(FockError::NotSymmetric(asym));
        }
        let sym = (&mat + mat.transpose()) * C64::new(0.5, 0.0);
        Ok(SymAntilinear { mat: sym })
    }

    pub fn zero(modes: usize) -> Self {
        SymAntilinear {
            mat: CMatrix::zeros(modes, modes),
        }
    }

    /// Diagonal map with the given (complex) eigen-entries.
    pub fn from_diagonal(diag: &[C64]) -> Self {
        SymAntilinear {
            mat: CMatrix::from_fn(diag.len(), diag.len(), |i, j| {
                if i == j {
                    diag[i]
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn modes(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Antilinear action v -> M conj(v).
    pub fn apply(&self, v: &CVector) -> CVector {
        &self.mat * v.map(|z| z.conj())
    }

    /// Operator norm (largest singular value of M).
    pub fn operator_norm(&self) -> f64 {
        operator_norm(&self.mat)
    }

    /// Hilbert-Schmidt norm of M.
    pub fn hs_norm(&self) -> f64 {
        hs_norm(&self.mat)
    }

    /// Matrix of the complex-linear square Z^2 = M conj(M) = M M*.
    pub fn square_matrix(&self) -> CMatrix {
        &self.mat * self.mat.map(|z| z.conj())
    }

    pub fn scaled(&self, t: f64) -> SymAntilinear {
        SymAntilinear {
            mat: &self.mat * C64::new(t, 0.0),
        }
    }
}

/// Coherent vector e^z = sum_n z^n / n!, truncated at the cap.
///
/// In normalized coordinates the coefficient at index D is
/// prod_k z_k^{d_k} / sqrt(d_k!).
pub fn coherent(z: &CVector, cap: usize) -> FockVector {
    let modes = z.len();
    let mut out = FockVector::zero(modes, cap);
    for idx in enumerate_basis(modes, cap) {
        let mut coeff = C64::new(1.0, 0.0);
        for k in 0..modes {
            let e = idx.exponent(k) as usize;
            if e > 0 {
                coeff *= z[k].powu(e as u32) / factorial(e).sqrt();
            }
        }
        out.add_term(idx, coeff);
    }
    out
}

/// Degree-2 vector zeta = (1/2) sum over a,b of `M[(a,b)]` v_a v_b
/// associated to the map; satisfies ||M||_HS = sqrt(2) ||zeta||.
pub fn quadratic(m: &SymAntilinear) -> FockVector {
    let modes = m.modes();
    let mut out = FockVector::zero(modes, 2);
    for a in 0..modes {
        for b in a..modes {
            let idx = MultiIndex::unit(modes, a).plus(&MultiIndex::unit(modes, b));
            let coeff = if a == b {
                // (1/2) M_aa v_a^2 with v_a^2 = sqrt(2) v^{2e_a}
                m.matrix()[(a, a)] / 2.0_f64.sqrt()
            } else {
                // the (a,b) and (b,a) terms combine
                m.matrix()[(a, b)]
            };
            out.add_term(idx, coeff);
        }
    }
    out
}

/// Applies a(v) to the quadratic of `m` and returns the degree-1 component
/// as a mode vector; equals M conj(v).
pub fn annihilate_quadratic_check(v: &CVector, m: &SymAntilinear) -> Result<CVector, FockError> {
    let zeta = quadratic(m);
    let lowered = annihilate(v, &zeta)?;
    let modes = m.modes();
    let mut out = CVector::zeros(modes);
    for k in 0..modes {
        out[k] = lowered.coeff(&MultiIndex::unit(modes, k));
    }
    Ok(out)
}

/// Gaussian exp(zeta) = sum_{2n <= cap} zeta^n / n! by repeated truncated
/// products. Divergent maps (||M|| >= 1) are allowed; the result is simply
/// the truncated series.
pub fn gaussian(m: &SymAntilinear, cap: usize) -> FockVector {
    let zeta = quadratic(m);
    let mut acc = FockVector::vacuum(m.modes(), cap);
    let mut term = FockVector::vacuum(m.modes(), cap);
    let mut n = 1.0;
    loop {
        term = match term.product(&zeta, cap) {
            Ok(t) => t.scaled(C64::new(1.0 / n, 0.0)),
            Err(_) => unreachable!("same mode count"),
        };
        if term.is_zero() {
            return acc;
        }
        acc = acc.plus(&term).expect("same mode count");
        n += 1.0;
    }
}

/// Squared Fock norm of the Gaussian: det(I - M M*)^{-1/2} when ||M|| < 1,
/// +infinity otherwise.
pub fn gaussian_norm2_exact(m: &SymAntilinear) -> f64 {
    if m.operator_norm() >= 1.0 {
        return f64::INFINITY;
    }
    let val = det_inv_sqrt_principal(&m.square_matrix())
        .expect("spectral radius below one for a contraction");
    val.re
}

/// Pairing <e^X | e^Y> = det(I - M_Y conj(M_X))^{-1/2} on the principal
/// branch; both operator norms must be strictly below one.
pub fn gaussian_pair_exact(mx: &SymAntilinear, my: &SymAntilinear) -> Result<C64, FockError> {
    let nx = mx.operator_norm();
    if nx >= 1.0 {
        return Err(FockError::NormNotContractive(nx));
    }
    let ny = my.operator_norm();
    if ny >= 1.0 {
        return Err(FockError::NormNotContractive(ny));
    }
    let yx = my.matrix() * mx.matrix().map(|z| z.conj());
    det_inv_sqrt_principal(&yx)
}

/// <e^z | e^Z> = exp((1/2) <z | Z z>) = exp((1/2) z* M conj(z)).
pub fn coherent_gaussian_pair(z: &CVector, m: &SymAntilinear) -> C64 {
    let half = z.dotc(&m.apply(z)) / 2.0;
    half.exp()
}

/// Truncated exp(phi) = sum phi^n / n! for homogeneous phi.
///
/// For degree d > 2 and phi != 0 the partial norms grow without bound as
/// the cap grows; this function just reports the truncated series.
pub fn exp_homogeneous(phi: &FockVector, cap: usize) -> Result<FockVector, FockError> {
    let degree = phi.homogeneous_degree()?;
    if degree == 0 {
        // scalar case: exp of the vacuum coefficient
        let scalar = phi.coeff(&MultiIndex::vacuum(phi.modes()));
        return Ok(FockVector::vacuum(phi.modes(), cap).scaled(scalar.exp()));
    }
    let mut acc = FockVector::vacuum(phi.modes(), cap);
    let mut term = FockVector::vacuum(phi.modes(), cap);
    let mut n = 1.0;
    loop {
        term = term.product(phi, cap)?.scaled(C64::new(1.0 / n, 0.0));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.plus(&term)?;
        n += 1.0;
    }
}
