//! Truncated Fock-space vectors: sparse coefficients over the normalized
//! occupation basis, with the symmetric-algebra product, inner products,
//! projections and the degree-scaling action.
//!
//! Coefficients refer to the orthonormal basis v^D = (prod v_k^{d_k}) /
//! sqrt(prod d_k!), so the squared norm is a plain coefficient sum. Every
//! degree-raising operation takes an explicit cap and silently drops the
//! overflow; exact zeros are never stored.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::combin::{factorial, product_sqrt_binomials};
use crate::error::FockError;
use crate::linalg::{CMatrix, CVector};
use crate::multi_index::{Basis, MultiIndex};
use crate::permanent::permanent;

/// Element of the truncated Fock space on `modes` modes with degree <= cap.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    modes: usize,
    cap: usize,
    coeffs: BTreeMap<MultiIndex, C64>,
}

impl FockVector {
    /// The zero vector.
    pub fn zero(modes: usize, cap: usize) -> Self {
        assert!(modes >= 1, "need at least one mode");
        FockVector {
            modes,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    /// The vacuum: coefficient one on the all-zero index.
    pub fn vacuum(modes: usize, cap: usize) -> Self {
        let mut v = FockVector::zero(modes, cap);
        v.add_term(MultiIndex::vacuum(modes), C64::new(1.0, 0.0));
        v
    }

    /// Unit basis vector for one occupation index.
    pub fn basis_state(idx: MultiIndex, cap: usize) -> Result<Self, FockError> {
        if idx.degree() > cap {
            return Err(FockError::DegreeOutOfRange {
                degree: idx.degree(),
                cap,
            });
        }
        let mut v = FockVector::zero(idx.modes(), cap);
        v.add_term(idx, C64::new(1.0, 0.0));
        Ok(v)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of one basis index (zero when absent).
    pub fn coeff(&self, idx: &MultiIndex) -> C64 {
        self.coeffs.get(idx).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Iterate stored (index, coefficient) pairs in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.coeffs.iter()
    }

    /// Accumulate a coefficient; drops exact zeros and indices past the cap.
    pub fn add_term(&mut self, idx: MultiIndex, value: C64) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(idx.modes(), self.modes);
        if idx.degree() > self.cap {
            return;
        }
        match self.coeffs.entry(idx) {
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += value;
                if v.re == 0.0 && v.im == 0.0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if value.re != 0.0 || value.im != 0.0 {
                    e.insert(value);
                }
            }
        }
    }

    /// Parseval: squared norm is the coefficient square sum.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Inner product, antilinear in `self`. Caps may differ; missing
    /// coefficients count as zero.
    pub fn inner(&self, other: &FockVector) -> Result<C64, FockError> {
        if self.modes != other.modes {
            return Err(FockError::ModeMismatch {
                left: self.modes,
                right: other.modes,
            });
        }
        let mut acc = C64::new(0.0, 0.0);
        let (small, big, conj_small) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        for (idx, c) in small.terms() {
            let d = big.coeff(idx);
            if conj_small {
                acc += c.conj() * d;
            } else {
                acc += d.conj() * *c;
            }
        }
        Ok(acc)
    }

    /// Symmetric-algebra product truncated at `cap`.
    ///
    /// On normalized basis elements v^A v^B = prod_i sqrt(C(a_i+b_i, a_i))
    /// v^{A+B}; components of degree above the cap are dropped.
    pub fn product(&self, other: &FockVector, cap: usize) -> Result<FockVector, FockError> {
        if self.modes != other.modes {
            return Err(FockError::ModeMismatch {
                left: self.modes,
                right: other.modes,
            });
        }
        let mut out = FockVector::zero(self.modes, cap);
        for (a, ca) in self.terms() {
            let deg_a = a.degree();
            if deg_a > cap {
                continue;
            }
            for (b, cb) in other.terms() {
                if deg_a + b.degree() > cap {
                    // other's terms are graded, so the rest only grow
                    break;
                }
                let factor = product_sqrt_binomials(a.exponents(), b.exponents());
                out.add_term(a.plus(b), *ca * *cb * factor);
            }
        }
        Ok(out)
    }

    /// Keep only the degree-d component.
    pub fn project_degree(&self, d: usize) -> Result<FockVector, FockError> {
        if d > self.cap {
            return Err(FockError::DegreeOutOfRange {
                degree: d,
                cap: self.cap,
            });
        }
        let mut out = FockVector::zero(self.modes, self.cap);
        for (idx, c) in self.terms() {
            if idx.degree() == d {
                out.add_term(idx.clone(), *c);
            }
        }
        Ok(out)
    }

    /// Keep only the components up to degree d. The cap is unchanged, so
    /// later degree-raising operations still work up to it.
    pub fn truncate_degree(&self, d: usize) -> FockVector {
        let mut out = FockVector::zero(self.modes, self.cap);
        for (idx, c) in self.terms() {
            if idx.degree() <= d {
                out.add_term(idx.clone(), *c);
            }
        }
        out
    }

    /// Orthogonal projection onto the modes in `keep`: zeroes every
    /// coefficient occupying a mode outside the subset.
    pub fn project_modes(&self, keep: &[usize]) -> Result<FockVector, FockError> {
        for &k in keep {
            if k >= self.modes {
                return Err(FockError::InvalidMode {
                    mode: k,
                    modes: self.modes,
                });
            }
        }
        let mut keep_mask = vec![false; self.modes];
        for &k in keep {
            keep_mask[k] = true;
        }
        let mut out = FockVector::zero(self.modes, self.cap);
        for (idx, c) in self.terms() {
            let escapes = keep_mask
                .iter()
                .zip(idx.exponents())
                .any(|(&keep, &e)| !keep && e > 0);
            if !escapes {
                out.add_term(idx.clone(), *c);
            }
        }
        Ok(out)
    }

    /// Scaling action: the degree-d coefficient picks up t^d.
    pub fn scale_action(&self, t: f64) -> Result<FockVector, FockError> {
        if t <= 0.0 {
            return Err(FockError::NonPositiveScale(t));
        }
        let mut out = FockVector::zero(self.modes, self.cap);
        for (idx, c) in self.terms() {
            out.add_term(idx.clone(), *c * t.powi(idx.degree() as i32));
        }
        Ok(out)
    }

    /// Multiply every coefficient by a scalar.
    pub fn scaled(&self, z: C64) -> FockVector {
        let mut out = FockVector::zero(self.modes, self.cap);
        for (idx, c) in self.terms() {
            out.add_term(idx.clone(), *c * z);
        }
        out
    }

    /// Sum; the result cap is the larger of the two.
    pub fn plus(&self, other: &FockVector) -> Result<FockVector, FockError> {
        if self.modes != other.modes {
            return Err(FockError::ModeMismatch {
                left: self.modes,
                right: other.modes,
            });
        }
        let mut out = FockVector::zero(self.modes, self.cap.max(other.cap));
        for (idx, c) in self.terms() {
            out.add_term(idx.clone(), *c);
        }
        for (idx, c) in other.terms() {
            out.add_term(idx.clone(), *c);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &FockVector) -> Result<FockVector, FockError> {
        self.plus(&other.scaled(C64::new(-1.0, 0.0)))
    }

    /// Largest coefficient difference against another vector.
    pub fn max_coeff_diff(&self, other: &FockVector) -> f64 {
        let mut max = 0.0f64;
        for (idx, c) in self.terms() {
            max = max.max((*c - other.coeff(idx)).norm());
        }
        for (idx, c) in other.terms() {
            max = max.max((self.coeff(idx) - *c).norm());
        }
        max
    }

    /// Degree of a homogeneous vector, or an error naming two distinct
    /// degrees. The zero vector reports degree 0.
    pub fn homogeneous_degree(&self) -> Result<usize, FockError> {
        let mut degree: Option<usize> = None;
        for (idx, _) in self.terms() {
            match degree {
                None => degree = Some(idx.degree()),
                Some(d) if d != idx.degree() => {
                    return Err(FockError::NotHomogeneous(d, idx.degree()))
                }
                _ => {}
            }
        }
        Ok(degree.unwrap_or(0))
    }

    /// Dense coefficient vector in the basis order.
    pub fn to_dense(&self, basis: &Basis) -> CVector {
        assert_eq!(basis.modes(), self.modes);
        let mut out = CVector::zeros(basis.dim());
        for (idx, c) in self.terms() {
            if let Some(pos) = basis.position(idx) {
                out[pos] = *c;
            }
        }
        out
    }

    /// Rebuild from a dense coefficient vector.
    pub fn from_dense(basis: &Basis, dense: &CVector) -> FockVector {
        assert_eq!(basis.dim(), dense.len());
        let mut out = FockVector::zero(basis.modes(), basis.cap());
        for (pos, idx) in basis.indices().iter().enumerate() {
            let c = dense[pos];
            if c.re != 0.0 || c.im != 0.0 {
                out.add_term(idx.clone(), c);
            }
        }
        out
    }
}

/// One-particle vector as a degree-1 Fock vector.
pub fn embed_vector(v: &CVector, cap: usize) -> FockVector {
    let modes = v.len();
    let mut out = FockVector::zero(modes, cap);
    for k in 0..modes {
        out.add_term(MultiIndex::unit(modes, k), v[k]);
    }
    out
}

/// The monomial x_1 ... x_d as a Fock vector (unnormalized product of
/// one-particle factors).
pub fn embed_monomial(factors: &[CVector], cap: usize) -> Result<FockVector, FockError> {
    let modes = match factors.first() {
        Some(f) => f.len(),
        None => return Ok(FockVector::vacuum(1, cap)),
    };
    let mut acc = FockVector::vacuum(modes, cap);
    for f in factors {
        if f.len() != modes {
            return Err(FockError::DimensionMismatch {
                len: f.len(),
                modes,
            });
        }
        acc = acc.product(&embed_vector(f, cap), cap)?;
    }
    Ok(acc)
}

/// <x_1...x_d | y_1...y_d> as the permanent of the Gram matrix <x_a|y_b>;
/// antilinear in the first factor list. Empty lists give 1.
pub fn monomial_inner(xs: &[CVector], ys: &[CVector]) -> Result<C64, FockError> {
    if xs.len() != ys.len() {
        return Err(FockError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    let d = xs.len();
    if d == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let dim = xs[0].len();
    for v in xs.iter().chain(ys.iter()) {
        if v.len() != dim {
            return Err(FockError::DimensionMismatch {
                len: v.len(),
                modes: dim,
            });
        }
    }
    let gram = CMatrix::from_fn(d, d, |a, b| xs[a].dotc(&ys[b]));
    permanent(&gram)
}

/// Normalization constant sqrt(prod d_k!) taking a monomial to the
/// orthonormal basis element with the same exponents.
pub fn monomial_norm(idx: &MultiIndex) -> f64 {
    idx.exponents()
        .iter()
        .map(|&e| factorial(e as usize))
        .product::<f64>()
        .sqrt()
}
