//! Creators, annihilators and field operators on truncated Fock vectors,
//! plus their dense matrices in the graded basis order.
//!
//! Conventions: `create(v, .)` is complex-linear in `v`; `annihilate(v, .)`
//! is antilinear in `v` (it implements a(v)w = <v|w> on one-particle
//! vectors). On basis elements c(e_k) v^D = sqrt(d_k + 1) v^{D + e_k} and
//! a(e_k) v^D = sqrt(d_k) v^{D - e_k}; creation past the cap is dropped.

use num_complex::Complex64 as C64;

use crate::error::FockError;
use crate::fock_vector::FockVector;
use crate::linalg::{CMatrix, CVector};
use crate::multi_index::Basis;

/// Which ladder operator a matrix realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Create,
    Annihilate,
    Field,
}

impl OpKind {
    /// Degree shift of the operator: +1, -1, or none for the mixed field.
    pub fn degree_shift(self) -> Option<i32> {
        match self {
            OpKind::Create => Some(1),
            OpKind::Annihilate => Some(-1),
            OpKind::Field => None,
        }
    }
}

fn check_dim(v: &CVector, phi: &FockVector) -> Result<(), FockError> {
    if v.len() != phi.modes() {
        return Err(FockError::DimensionMismatch {
            len: v.len(),
            modes: phi.modes(),
        });
    }
    Ok(())
}

/// Creator c(v): multiplication by the one-particle vector v, truncated at
/// the cap of `phi`.
pub fn create(v: &CVector, phi: &FockVector) -> Result<FockVector, FockError> {
    check_dim(v, phi)?;
    let mut out = FockVector::zero(phi.modes(), phi.cap());
    for (idx, c) in phi.terms() {
        if idx.degree() + 1 > phi.cap() {
            continue;
        }
        for k in 0..phi.modes() {
            let vk = v[k];
            if vk.re == 0.0 && vk.im == 0.0 {
                continue;
            }
            let factor = ((idx.exponent(k) + 1) as f64).sqrt();
            out.add_term(idx.raised(k), *c * vk * factor);
        }
    }
    Ok(out)
}

/// Annihilator a(v); antilinear in v.
pub fn annihilate(v: &CVector, phi: &FockVector) -> Result<FockVector, FockError> {
    check_dim(v, phi)?;
    let mut out = FockVector::zero(phi.modes(), phi.cap());
    for (idx, c) in phi.terms() {
        for k in 0..phi.modes() {
            let vk = v[k];
            if vk.re == 0.0 && vk.im == 0.0 {
                continue;
            }
            if let Some(lowered) = idx.lowered(k) {
                let factor = (idx.exponent(k) as f64).sqrt();
                out.add_term(lowered, *c * vk.conj() * factor);
            }
        }
    }
    Ok(out)
}

/// Field operator pi(v) = (c(v) + a(v)) / sqrt(2); real-linear in v only.
pub fn field(v: &CVector, phi: &FockVector) -> Result<FockVector, FockError> {
    let sum = create(v, phi)?.plus(&annihilate(v, phi)?)?;
    Ok(sum.scaled(C64::new(1.0 / 2.0_f64.sqrt(), 0.0)))
}

/// Number operator: the degree-d component picks up a factor d.
pub fn number_apply(phi: &FockVector) -> FockVector {
    let mut out = FockVector::zero(phi.modes(), phi.cap());
    for (idx, c) in phi.terms() {
        out.add_term(idx.clone(), *c * idx.degree() as f64);
    }
    out
}

/// Dense operator matrix over the graded occupation basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    modes: usize,
    cap: usize,
    degree_shift: Option<i32>,
    matrix: CMatrix,
}

impl OperatorMatrix {
    pub fn new(modes: usize, cap: usize, degree_shift: Option<i32>, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), matrix.ncols());
        OperatorMatrix {
            modes,
            cap,
            degree_shift,
            matrix,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn degree_shift(&self) -> Option<i32> {
        self.degree_shift
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// The sub-block with row and column degrees <= d.
    pub fn block(&self, d: usize) -> CMatrix {
        let basis = Basis::new(self.modes, self.cap);
        let n = basis.block_dim(d);
        self.matrix.view((0, 0), (n, n)).into()
    }
}

/// Matrix of a ladder operator in the graded basis: column j holds the
/// operator applied to basis vector j (with overflow dropped).
pub fn operator_matrix(
    kind: OpKind,
    v: &CVector,
    modes: usize,
    cap: usize,
) -> Result<OperatorMatrix, FockError> {
    if v.len() != modes {
        return Err(FockError::DimensionMismatch {
            len: v.len(),
            modes,
        });
    }
    let basis = Basis::new(modes, cap);
    let n = basis.dim();
    let mut matrix = CMatrix::zeros(n, n);
    for j in 0..n {
        let col_state =
            FockVector::basis_state(basis[j].clone(), cap).expect("basis index within cap");
        let applied = match kind {
            OpKind::Create => create(v, &col_state)?,
            OpKind::Annihilate => annihilate(v, &col_state)?,
            OpKind::Field => field(v, &col_state)?,
        };
        for (idx, c) in applied.terms() {
            let i = basis.position(idx).expect("result index within cap");
            matrix[(i, j)] = *c;
        }
    }
    Ok(OperatorMatrix::new(modes, cap, kind.degree_shift(), matrix))
}
