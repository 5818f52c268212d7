//! The coherent-state model: finite spans of coherent points with exact
//! closed-form Gram pairings, Weyl displacement operators and their
//! multiplier cocycle, the regularity matrix element, the coherent kernel
//! of the Fock implementer, and the creator-cyclicity rank diagnostic.
//!
//! Everything here is scalar closed form with no truncation anywhere,
//! which makes the module an independent oracle for the occupation-basis
//! implementer.

use num_complex::Complex64 as C64;

use crate::error::FockError;
use crate::exponentials::SymAntilinear;
use crate::fock_vector::FockVector;
use crate::linalg::{rank_with_tol, CMatrix, CVector};
use crate::multi_index::{enumerate_basis, Basis};
use crate::symplectic::{symplectic_form, SympMap};

/// Two coherent points closer than this (max coordinate difference) count
/// as colliding.
pub const POINT_TOL: f64 = 1e-12;

fn points_collide(a: &CVector, b: &CVector) -> bool {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        <= POINT_TOL
}

/// Finite linear combination of coherent vectors: points z_i with complex
/// weights.
#[derive(Clone, Debug)]
pub struct CoherentSpan {
    points: Vec<CVector>,
    weights: Vec<C64>,
}

impl CoherentSpan {
    /// Points must be pairwise distinct (within [`POINT_TOL`]).
    pub fn new(points: Vec<CVector>, weights: Vec<C64>) -> Result<Self, FockError> {
        if points.len() != weights.len() {
            return Err(FockError::LengthMismatch {
                left: points.len(),
                right: weights.len(),
            });
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points_collide(&points[i], &points[j]) {
                    return Err(FockError::DuplicatePoint(i, j));
                }
            }
        }
        Ok(CoherentSpan { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[CVector] {
        &self.points
    }

    pub fn weights(&self) -> &[C64] {
        &self.weights
    }

    /// Exact pairing <self | other> = sum conj(w_i) w'_j e^{<z_i|z'_j>}.
    pub fn pair(&self, other: &CoherentSpan) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (zi, wi) in self.points.iter().zip(self.weights.iter()) {
            for (zj, wj) in other.points.iter().zip(other.weights.iter()) {
                acc += wi.conj() * wj * zi.dotc(zj).exp();
            }
        }
        acc
    }

    /// Largest weight difference against another span over the same points
    /// (in the same order); infinite if the point sets differ.
    pub fn max_deviation(&self, other: &CoherentSpan) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        let mut max = 0.0f64;
        for i in 0..self.len() {
            let point_gap = (&self.points[i] - &other.points[i]).norm();
            if point_gap > POINT_TOL {
                return f64::INFINITY;
            }
            max = max.max((self.weights[i] - other.weights[i]).norm());
        }
        max
    }
}

/// Gram matrix G_ij = exp(<z_i|z_j>); Hermitian positive definite for
/// distinct points.
pub fn coherent_gram(points: &[CVector]) -> Result<CMatrix, FockError> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points_collide(&points[i], &points[j]) {
                return Err(FockError::DuplicatePoint(i, j));
            }
        }
    }
    Ok(CMatrix::from_fn(points.len(), points.len(), |i, j| {
        points[i].dotc(&points[j]).exp()
    }))
}

/// Weyl displacement W(v): each point shifts by v and its weight picks up
/// exp(-||v||^2/2 - <v|z>).
pub fn weyl_apply(v: &CVector, span: &CoherentSpan) -> Result<CoherentSpan, FockError> {
    let mut points = Vec::with_capacity(span.len());
    let mut weights = Vec::with_capacity(span.len());
    for (z, w) in span.points().iter().zip(span.weights().iter()) {
        let factor = (-0.5 * v.norm_squared() - v.dotc(z)).exp();
        points.push(v + z);
        weights.push(w * factor);
    }
    // shifting preserves distinctness; the constructor re-checks and
    // refuses to merge colliding points
    CoherentSpan::new(points, weights)
}

/// Applies both sides of W(x) W(y) = exp(-i Omega(x, y)) W(x + y) to the
/// span and returns the largest weight/point deviation.
pub fn weyl_cocycle_check(x: &CVector, y: &CVector, span: &CoherentSpan) -> Result<f64, FockError> {
    let lhs = weyl_apply(x, &weyl_apply(y, span)?)?;
    let omega = symplectic_form(x, y);
    let phase = C64::new(0.0, -omega).exp();
    let shifted = weyl_apply(&(x + y), span)?;
    let rhs = CoherentSpan::new(
        shifted.points().to_vec(),
        shifted.weights().iter().map(|w| w * phase).collect(),
    )?;
    Ok(lhs.max_deviation(&rhs))
}

/// <eps^x | W(t v) eps^y> in closed form:
/// exp{<x|y> + (<x|v> - <v|y>) t - ||v||^2 t^2 / 2}.
pub fn regularity_element(x: &CVector, v: &CVector, y: &CVector, t: f64) -> C64 {
    let linear = x.dotc(v) - v.dotc(y);
    (x.dotc(y) + linear * t - C64::new(0.5 * v.norm_squared() * t * t, 0.0)).exp()
}

/// Same element through the displacement route: pair eps^x against the
/// Weyl-shifted singleton span.
pub fn regularity_element_via_weyl(
    x: &CVector,
    v: &CVector,
    y: &CVector,
    t: f64,
) -> Result<C64, FockError> {
    let span = CoherentSpan::new(vec![y.clone()], vec![C64::new(1.0, 0.0)])?;
    let tv = v * C64::new(t, 0.0);
    let shifted = weyl_apply(&tv, &span)?;
    let bra = CoherentSpan::new(vec![x.clone()], vec![C64::new(1.0, 0.0)])?;
    Ok(bra.pair(&shifted))
}

/// Coherent-kernel of the Fock implementer: [U_g eps^y](eps^x), normalized
/// so the vacuum-vacuum value is one.
///
/// The two half-exponents use the antilinear parts with the sign that makes
/// the kernel the pairing <e^x | U_g e^y> of the occupation-basis
/// implementer (vacuum slice exp((1/2)<x|Z_g x>), squeeze giving -tanh r):
/// exp{(1/2)<x|C_{g^-1}^{-1}(y + A_{g^-1} conj x)> +
///     (1/2)<C_g^{-1}(x + A_g conj y)|y>}.
pub fn implementer_kernel(g: &SympMap, x: &CVector, y: &CVector) -> Result<C64, FockError> {
    g.require_symplectic()?;
    let gi = g.invert()?;
    let c_inv = g
        .complex_part()
        .clone()
        .lu()
        .try_inverse()
        .ok_or(FockError::Singular)?;
    let ci_inv = gi
        .complex_part()
        .clone()
        .lu()
        .try_inverse()
        .ok_or(FockError::Singular)?;

    let first_arg = y + gi.antilinear_part() * x.map(|z| z.conj());
    let first = x.dotc(&(&ci_inv * first_arg));

    let second_arg = x + g.antilinear_part() * y.map(|z| z.conj());
    let second = (&c_inv * second_arg).dotc(y);

    Ok(((first + second) / 2.0).exp())
}

/// Deviation between [U_g W(v) eps^y](eps^x) and the displaced evaluation
/// [U_g eps^y](W(-w) eps^x) with w = C_g v - A_g conj(v); zero in exact
/// arithmetic.
pub fn kernel_weyl_intertwine_check(
    g: &SympMap,
    v: &CVector,
    x: &CVector,
    y: &CVector,
) -> Result<f64, FockError> {
    // lhs: W(v) eps^y = alpha eps^{v+y}, evaluate the kernel there
    let alpha = (-0.5 * v.norm_squared() - v.dotc(y)).exp();
    let lhs = alpha * implementer_kernel(g, x, &(v + y))?;

    // rhs: evaluate U_g eps^y (an antilinear functional) on W(-w) eps^x
    let w = g.j_conjugate().apply(v);
    let beta = ((-0.5 * w.norm_squared()) + w.dotc(x)).exp();
    let rhs = beta.conj() * implementer_kernel(g, &(x - &w), y)?;

    Ok((lhs - rhs).norm())
}

/// Column rank of {v^D e^Z : deg D <= probe_degree} projected to degrees
/// <= probe_degree; the full value C(m + probe, probe) certifies that the
/// Gaussian is cyclic for creators at this truncation.
pub fn cyclicity_rank(
    m: &SymAntilinear,
    cap: usize,
    probe_degree: usize,
) -> Result<usize, FockError> {
    let norm = m.operator_norm();
    if norm >= 1.0 {
        return Err(FockError::NormNotContractive(norm));
    }
    let modes = m.modes();
    let gauss = crate::exponentials::gaussian(m, cap);
    let probe_basis = Basis::new(modes, probe_degree);
    let cols = enumerate_basis(modes, probe_degree);
    let mut matrix = CMatrix::zeros(probe_basis.dim(), cols.len());
    for (j, idx) in cols.iter().enumerate() {
        let state = FockVector::basis_state(idx.clone(), cap)?;
        let prod = state.product(&gauss, cap)?.truncate_degree(probe_degree);
        matrix.set_column(j, &prod.to_dense(&probe_basis));
    }
    Ok(rank_with_tol(&matrix, 1e-10))
}
