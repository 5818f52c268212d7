//! Real-linear maps on C^m in (C, A) form, the symplectic predicate, and
//! the Shale operator Z_g = -A_g C_g^{-1}.
//!
//! A map acts as v -> C v + A conj(v). Storage stays in (C, A) form; the
//! associated real 2m x 2m matrix (under v = x + iy -> [x; y]) is derived
//! on demand for invertibility checks and splitting.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng as SeededRng;

use crate::error::FockError;
use crate::exponentials::SymAntilinear;
use crate::linalg::{max_abs, CMatrix, CVector, RMatrix};

/// Tolerance for the symplectic-form preservation check used as a
/// precondition gate.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// Imaginary part of the inner product, Omega(x, y) = Im<x|y>.
pub fn symplectic_form(x: &CVector, y: &CVector) -> f64 {
    x.dotc(y).im
}

/// Outcome of the symplectic predicate: pass/fail plus the largest
/// form violation over all basis pairs.
#[derive(Clone, Copy, Debug)]
pub struct SymplecticCheck {
    pub ok: bool,
    pub max_violation: f64,
}

/// Real-linear map v -> C v + A conj(v).
#[derive(Clone, Debug, PartialEq)]
pub struct SympMap {
    c: CMatrix,
    a: CMatrix,
}

impl SympMap {
    /// Builds the map and checks real-linear invertibility.
    pub fn new(c: CMatrix, a: CMatrix) -> Result<Self, FockError> {
        if c.nrows() != c.ncols() {
            return Err(FockError::NotSquare {
                rows: c.nrows(),
                cols: c.ncols(),
            });
        }
        if a.nrows() != c.nrows() || a.ncols() != c.ncols() {
            return Err(FockError::DimensionMismatch {
                len: a.nrows(),
                modes: c.nrows(),
            });
        }
        let map = SympMap { c, a };
        let real = map.to_real();
        if real.clone().lu().try_inverse().is_none() {
            return Err(FockError::Singular);
        }
        Ok(map)
    }

    pub fn identity(modes: usize) -> Self {
        SympMap {
            c: CMatrix::identity(modes, modes),
            a: CMatrix::zeros(modes, modes),
        }
    }

    pub fn modes(&self) -> usize {
        self.c.nrows()
    }

    /// Complex-linear part C_g.
    pub fn complex_part(&self) -> &CMatrix {
        &self.c
    }

    /// Antilinear part A_g (matrix of v -> A conj(v)).
    pub fn antilinear_part(&self) -> &CMatrix {
        &self.a
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.c * v + &self.a * v.map(|z| z.conj())
    }

    /// Associated real matrix under C^m = R^{2m}, v = x + iy -> [x; y].
    pub fn to_real(&self) -> RMatrix {
        let m = self.modes();
        let mut g = RMatrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                let (c, a) = (self.c[(i, j)], self.a[(i, j)]);
                g[(i, j)] = c.re + a.re;
                g[(i, j + m)] = -c.im + a.im;
                g[(i + m, j)] = c.im + a.im;
                g[(i + m, j + m)] = c.re - a.re;
            }
        }
        g
    }

    /// Splits an invertible real 2m x 2m matrix into (C, A) parts:
    /// C = (g - JgJ)/2 and A = (g + JgJ)/2.
    pub fn from_real(g: &RMatrix) -> Result<Self, FockError> {
        let n = g.nrows();
        if g.ncols() != n || !n.is_multiple_of(2) {
            return Err(FockError::NotSquare {
                rows: g.nrows(),
                cols: g.ncols(),
            });
        }
        let m = n / 2;
        let block = |r: usize, s: usize| g.view((r * m, s * m), (m, m));
        let (p, q, r, s) = (block(0, 0), block(0, 1), block(1, 0), block(1, 1));
        let c = CMatrix::from_fn(m, m, |i, j| {
            C64::new((p[(i, j)] + s[(i, j)]) / 2.0, (r[(i, j)] - q[(i, j)]) / 2.0)
        });
        let a = CMatrix::from_fn(m, m, |i, j| {
            C64::new((p[(i, j)] - s[(i, j)]) / 2.0, (r[(i, j)] + q[(i, j)]) / 2.0)
        });
        SympMap::new(c, a)
    }

    /// Composition: (gh)(v) = g(h(v)), so C_{gh} = C_g C_h + A_g conj(A_h)
    /// and A_{gh} = C_g A_h + A_g conj(C_h).
    pub fn compose(&self, other: &SympMap) -> SympMap {
        assert_eq!(self.modes(), other.modes());
        let conj = |m: &CMatrix| m.map(|z| z.conj());
        SympMap {
            c: &self.c * &other.c + &self.a * conj(&other.a),
            a: &self.c * &other.a + &self.a * conj(&other.c),
        }
    }

    /// Inverse as a real-linear map.
    pub fn invert(&self) -> Result<SympMap, FockError> {
        let real_inv = self
            .to_real()
            .lu()
            .try_inverse()
            .ok_or(FockError::Singular)?;
        SympMap::from_real(&real_inv)
    }

    /// Conjugation by the complex structure, -JgJ: the complex-linear part
    /// is unchanged and the antilinear part is negated.
    pub fn j_conjugate(&self) -> SympMap {
        SympMap {
            c: self.c.clone(),
            a: -&self.a,
        }
    }

    /// Checks Im<gx|gy> = Im<x|y> on all pairs from {e_k, i e_k}.
    pub fn is_symplectic(&self, tol: f64) -> SymplecticCheck {
        let m = self.modes();
        let mut basis: Vec<CVector> = Vec::with_capacity(2 * m);
        for k in 0..m {
            let mut e = CVector::zeros(m);
            e[k] = C64::new(1.0, 0.0);
            basis.push(e.clone());
            e[k] = C64::new(0.0, 1.0);
            basis.push(e);
        }
        let images: Vec<CVector> = basis.iter().map(|v| self.apply(v)).collect();
        let mut max_violation = 0.0f64;
        for (x, gx) in basis.iter().zip(images.iter()) {
            for (y, gy) in basis.iter().zip(images.iter()) {
                let v = (symplectic_form(gx, gy) - symplectic_form(x, y)).abs();
                max_violation = max_violation.max(v);
            }
        }
        SymplecticCheck {
            ok: max_violation <= tol,
            max_violation,
        }
    }

    /// Errors out unless the map passes the symplectic check at the
    /// default tolerance.
    pub fn require_symplectic(&self) -> Result<(), FockError> {
        let check = self.is_symplectic(SYMPLECTIC_TOL);
        if !check.ok {
            return Err(FockError::NotSymplectic(check.max_violation));
        }
        Ok(())
    }
}

/// Shale operator Z_g = -A_g C_g^{-1} as a symmetric antilinear map; its
/// matrix is -A_g conj(C_g^{-1}) and has operator norm strictly below one
/// for symplectic g. Also equal to C_{g^{-1}}^{-1} A_{g^{-1}}.
pub fn shale_operator(g: &SympMap) -> Result<SymAntilinear, FockError> {
    g.require_symplectic()?;
    let c_inv = g
        .complex_part()
        .clone()
        .lu()
        .try_inverse()
        .ok_or(FockError::Singular)?;
    let m = -(g.antilinear_part() * c_inv.map(|z| z.conj()));
    SymAntilinear::new(m)
}

/// One-mode squeeze: v -> cosh(r) v + sinh(r) conj(v) on the given mode,
/// identity elsewhere.
pub fn make_squeeze(modes: usize, mode: usize, r: f64) -> SympMap {
    assert!(mode < modes, "squeeze mode out of range");
    let mut c = CMatrix::identity(modes, modes);
    let mut a = CMatrix::zeros(modes, modes);
    c[(mode, mode)] = C64::new(r.cosh(), 0.0);
    a[(mode, mode)] = C64::new(r.sinh(), 0.0);
    SympMap { c, a }
}

/// Complex-linear symplectic map from a unitary matrix (A = 0).
pub fn make_unitary(u: CMatrix) -> Result<SympMap, FockError> {
    let m = u.nrows();
    if u.ncols() != m {
        return Err(FockError::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    let dev = max_abs(&(u.adjoint() * &u - CMatrix::identity(m, m)));
    if dev > 1e-10 {
        return Err(FockError::NotUnitary(dev));
    }
    Ok(SympMap {
        c: u,
        a: CMatrix::zeros(m, m),
    })
}

/// Haar-ish random unitary: Q factor of a random complex matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, modes: usize) -> CMatrix {
    let raw = CMatrix::from_fn(modes, modes, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    raw.qr().q()
}

/// Random symplectic map: an alternating product of random unitaries and
/// single-mode squeezes with |r| <= spread, at the default depth 4.
pub fn random_symplectic(modes: usize, seed: u64, spread: f64) -> SympMap {
    random_symplectic_with_depth(modes, seed, spread, 4)
}

/// Same with an explicit number of squeeze/unitary factor pairs.
pub fn random_symplectic_with_depth(modes: usize, seed: u64, spread: f64, depth: usize) -> SympMap {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut g = SympMap::identity(modes);
    for _ in 0..depth {
        let u = make_unitary(random_unitary(&mut rng, modes)).expect("Q factor is unitary");
        let mode = rng.gen_range(0..modes);
        let r = rng.gen_range(-spread..=spread);
        g = g.compose(&u).compose(&make_squeeze(modes, mode, r));
    }
    g
}
