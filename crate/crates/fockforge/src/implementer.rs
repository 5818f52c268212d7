//! Generalized Fock implementers: transformed creators/annihilators, the
//! matrix U_g built column-by-column from the Gaussian vacuum, the unitary
//! normalization, the adjoint law, and the metaplectic cocycle.
//!
//! Columns follow the constructive rule U_g(v^D) = prod_k c_g(e_k)^{d_k}
//! e^{Z_g} / sqrt(prod d_k!). Internally the recursion runs at working
//! degree 2*cap so every stored entry (row d, column b) is exact: an entry
//! only depends on Gaussian coefficients up to degree d + b <= 2*cap.
//! Truncation then shows up only where it must, in contractions over the
//! missing tail above the cap.

use num_complex::Complex64 as C64;

use crate::error::FockError;
use crate::exponentials::{gaussian, gaussian_norm2_exact, SymAntilinear};
use crate::fock_vector::FockVector;
use crate::linalg::{CMatrix, CVector};
use crate::multi_index::Basis;
use crate::ops::{annihilate, create, operator_matrix, OpKind, OperatorMatrix};
use crate::symplectic::{shale_operator, SympMap};

/// Transformed creator c_g(v) = c(C_g v) + a(A_g v).
pub fn transformed_create(
    g: &SympMap,
    v: &CVector,
    phi: &FockVector,
) -> Result<FockVector, FockError> {
    if v.len() != g.modes() {
        return Err(FockError::DimensionMismatch {
            len: v.len(),
            modes: g.modes(),
        });
    }
    let cv = g.complex_part() * v;
    let av = g.antilinear_part() * v.map(|z| z.conj());
    create(&cv, phi)?.plus(&annihilate(&av, phi)?)
}

/// Transformed annihilator a_g(v) = a(C_g v) + c(A_g v).
pub fn transformed_annihilate(
    g: &SympMap,
    v: &CVector,
    phi: &FockVector,
) -> Result<FockVector, FockError> {
    if v.len() != g.modes() {
        return Err(FockError::DimensionMismatch {
            len: v.len(),
            modes: g.modes(),
        });
    }
    let cv = g.complex_part() * v;
    let av = g.antilinear_part() * v.map(|z| z.conj());
    annihilate(&cv, phi)?.plus(&create(&av, phi)?)
}

/// Matrix of c_g(v) or a_g(v) over the graded basis.
pub fn transformed_operator_matrix(
    kind: OpKind,
    g: &SympMap,
    v: &CVector,
    modes: usize,
    cap: usize,
) -> Result<OperatorMatrix, FockError> {
    if v.len() != g.modes() {
        return Err(FockError::DimensionMismatch {
            len: v.len(),
            modes: g.modes(),
        });
    }
    let cv = g.complex_part() * v;
    let av = g.antilinear_part() * v.map(|z| z.conj());
    let (first, second) = match kind {
        OpKind::Create => (OpKind::Create, OpKind::Annihilate),
        OpKind::Annihilate => (OpKind::Annihilate, OpKind::Create),
        OpKind::Field => {
            // pi(gv) = (c_g(v) + a_g(v)) / sqrt(2); build from the parts
            let c_part = transformed_operator_matrix(OpKind::Create, g, v, modes, cap)?;
            let a_part = transformed_operator_matrix(OpKind::Annihilate, g, v, modes, cap)?;
            let m = (c_part.matrix() + a_part.matrix()) / C64::new(2.0_f64.sqrt(), 0.0);
            return Ok(OperatorMatrix::new(modes, cap, None, m));
        }
    };
    let m = operator_matrix(first, &cv, modes, cap)?.matrix()
        + operator_matrix(second, &av, modes, cap)?.matrix();
    Ok(OperatorMatrix::new(modes, cap, None, m))
}

/// Fock implementer U_g on the truncated basis.
#[derive(Clone, Debug)]
pub struct Implementer {
    g: SympMap,
    cap: usize,
    shale: SymAntilinear,
    matrix: OperatorMatrix,
    normalization: f64,
}

impl Implementer {
    pub fn map(&self) -> &SympMap {
        &self.g
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Shale operator Z_g the vacuum column exponentiates.
    pub fn shale(&self) -> &SymAntilinear {
        &self.shale
    }

    /// Unnormalized U_g matrix; the (0,0) entry is exactly one.
    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    /// det(I - Z_g Z_g*)^{1/4} = ||e^{Z_g}||^{-1}.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// The unitary normalization U(g) = ||e^{Z_g}||^{-1} U_g.
    pub fn normalized_matrix(&self) -> OperatorMatrix {
        OperatorMatrix::new(
            self.matrix.modes(),
            self.cap,
            None,
            self.matrix.matrix() * C64::new(self.normalization, 0.0),
        )
    }

    /// Vacuum column as a Fock vector (the truncated Gaussian e^{Z_g}).
    pub fn vacuum_column(&self) -> FockVector {
        let basis = Basis::new(self.matrix.modes(), self.cap);
        let col = self.matrix.matrix().column(0).into_owned();
        FockVector::from_dense(&basis, &col)
    }
}

/// Builds U_g at the given cap; `g` must be symplectic.
pub fn build_implementer(g: &SympMap, cap: usize) -> Result<Implementer, FockError> {
    g.require_symplectic()?;
    let shale = shale_operator(g)?;
    let modes = g.modes();
    let working_cap = 2 * cap;
    let basis = Basis::new(modes, cap);
    let n = basis.dim();

    // unit vectors once
    let units: Vec<CVector> = (0..modes)
        .map(|k| {
            let mut e = CVector::zeros(modes);
            e[k] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    // columns at the working cap, built along the graded enumeration:
    // col(D) = c_g(e_k) col(D - e_k) / sqrt(d_k) for the first occupied mode
    let mut columns: Vec<FockVector> = Vec::with_capacity(n);
    columns.push(gaussian(&shale, working_cap));
    for j in 1..n {
        let idx = &basis[j];
        let k = (0..modes)
            .find(|&k| idx.exponent(k) > 0)
            .expect("non-vacuum index");
        let parent = idx.lowered(k).expect("occupied mode");
        let parent_pos = basis.position(&parent).expect("parent enumerated earlier");
        let raised = transformed_create(g, &units[k], &columns[parent_pos])?;
        columns.push(raised.scaled(C64::new(1.0 / (idx.exponent(k) as f64).sqrt(), 0.0)));
    }

    let mut matrix = CMatrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        for (idx, c) in col.terms() {
            if let Some(i) = basis.position(idx) {
                matrix[(i, j)] = *c;
            }
        }
    }

    let norm2 = gaussian_norm2_exact(&shale);
    Ok(Implementer {
        g: g.clone(),
        cap,
        shale,
        matrix: OperatorMatrix::new(modes, cap, None, matrix),
        normalization: norm2.powf(-0.5),
    })
}

/// Max deviation between the conjugate transpose of U_g and U_{g^{-1}} on
/// the block of row/column degrees <= `block_degree`.
pub fn adjoint_check(g: &SympMap, cap: usize, block_degree: usize) -> Result<f64, FockError> {
    let ug = build_implementer(g, cap)?;
    let ugi = build_implementer(&g.invert()?, cap)?;
    let a = ug.matrix().block(block_degree);
    let b = ugi.matrix().block(block_degree);
    Ok(crate::linalg::max_abs(&(a.adjoint() - b)))
}

/// Metaplectic cocycle delta(g, h) = det(I - M_{Z_h} conj(M_{Z_{g^{-1}}}))^{-1/2}
/// on the principal branch; equals <e^{Z_{g^{-1}}} | e^{Z_h}>.
pub fn cocycle(g: &SympMap, h: &SympMap) -> Result<C64, FockError> {
    g.require_symplectic()?;
    h.require_symplectic()?;
    let zg_inv = shale_operator(&g.invert()?)?;
    let zh = shale_operator(h)?;
    crate::exponentials::gaussian_pair_exact(&zg_inv, &zh)
}

/// Largest entry of U_g c(v) - c_g(v) U_g and of U_g a(v) - a_g(v) U_g on
/// the block of row/column degrees <= cap - 2.
pub fn intertwine_deviation(g: &SympMap, cap: usize, v: &CVector) -> Result<(f64, f64), FockError> {
    let modes = g.modes();
    let ug = build_implementer(g, cap)?;
    let u = ug.matrix().matrix();
    let basis = Basis::new(modes, cap);
    let nb = basis.block_dim(cap.saturating_sub(2));

    let block = |m: CMatrix| -> CMatrix { m.view((0, 0), (nb, nb)).into() };

    let c_plain = operator_matrix(OpKind::Create, v, modes, cap)?;
    let c_trans = transformed_operator_matrix(OpKind::Create, g, v, modes, cap)?;
    let c_dev = crate::linalg::max_abs(&block(u * c_plain.matrix() - c_trans.matrix() * u));

    let a_plain = operator_matrix(OpKind::Annihilate, v, modes, cap)?;
    let a_trans = transformed_operator_matrix(OpKind::Annihilate, g, v, modes, cap)?;
    let a_dev = crate::linalg::max_abs(&block(u * a_plain.matrix() - a_trans.matrix() * u));

    Ok((c_dev, a_dev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, random_vector};
    use crate::multi_index::enumerate_basis;
    use crate::symplectic::{make_squeeze, make_unitary, random_symplectic, random_unitary};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_fock(rng: &mut StdRng, modes: usize, cap: usize) -> FockVector {
        let mut v = FockVector::zero(modes, cap);
        for idx in enumerate_basis(modes, cap) {
            v.add_term(idx, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        v
    }

    #[test]
    fn transformed_ops_reduce_to_plain_at_identity() {
        let mut rng = StdRng::seed_from_u64(1);
        let g = SympMap::identity(2);
        let v = random_vector(&mut rng, 2);
        let phi = random_fock(&mut rng, 2, 4);
        assert!(
            transformed_create(&g, &v, &phi)
                .unwrap()
                .max_coeff_diff(&create(&v, &phi).unwrap())
                < 1e-14
        );
        assert!(
            transformed_annihilate(&g, &v, &phi)
                .unwrap()
                .max_coeff_diff(&annihilate(&v, &phi).unwrap())
                < 1e-14
        );
    }

    #[test]
    fn transformed_ccr() {
        // [a_g(x), c_g(y)] = <x|y> I on degrees <= cap - 2
        let mut rng = StdRng::seed_from_u64(2);
        let cap = 6;
        for seed in [3u64, 8] {
            let g = random_symplectic(2, seed, 0.8);
            for _ in 0..5 {
                let x = random_vector(&mut rng, 2);
                let y = random_vector(&mut rng, 2);
                let phi = random_fock(&mut rng, 2, cap).truncate_degree(cap - 2);
                let ac = transformed_annihilate(&g, &x, &transformed_create(&g, &y, &phi).unwrap())
                    .unwrap();
                let ca = transformed_create(&g, &y, &transformed_annihilate(&g, &x, &phi).unwrap())
                    .unwrap();
                let comm = ac.minus(&ca).unwrap().truncate_degree(cap - 2);
                assert!(comm.max_coeff_diff(&phi.scaled(x.dotc(&y))) < 1e-10);
            }
        }
    }

    #[test]
    fn plain_ops_from_transformed_via_inverse() {
        // c(v) = c_g(C_{g^-1} v) + a_g(A_{g^-1} v)
        let mut rng = StdRng::seed_from_u64(3);
        let g = random_symplectic(2, 5, 0.7);
        let gi = g.invert().unwrap();
        let cap = 6;
        for _ in 0..5 {
            let v = random_vector(&mut rng, 2);
            let phi = random_fock(&mut rng, 2, cap).truncate_degree(cap - 1);
            let civ = gi.complex_part() * &v;
            let aiv = gi.antilinear_part() * v.map(|z| z.conj());
            let lhs = create(&v, &phi).unwrap();
            let rhs = transformed_create(&g, &civ, &phi)
                .unwrap()
                .plus(&transformed_annihilate(&g, &aiv, &phi).unwrap())
                .unwrap();
            // boundary row at the cap is lossy in one route
            let lhs = lhs.truncate_degree(cap - 1);
            let rhs = rhs.truncate_degree(cap - 1);
            assert!(lhs.max_coeff_diff(&rhs) < 1e-11);
        }
    }

    #[test]
    fn identity_implementer_is_identity_matrix() {
        let imp = build_implementer(&SympMap::identity(2), 4).unwrap();
        let n = imp.matrix().dim();
        assert!(max_abs(&(imp.matrix().matrix() - CMatrix::identity(n, n))) < 1e-13);
        assert!((imp.normalization() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn vacuum_column_is_the_gaussian() {
        for r in [0.3, 0.8] {
            let g = make_squeeze(1, 0, r);
            let imp = build_implementer(&g, 24).unwrap();
            let expect = gaussian(&SymAntilinear::from_diagonal(&[c(-r.tanh(), 0.0)]), 24);
            assert!(imp.vacuum_column().max_coeff_diff(&expect) < 1e-12);
            // generalized vacuum expectation value is exactly one
            assert_eq!(imp.matrix().matrix()[(0, 0)], c(1.0, 0.0));
        }
    }

    #[test]
    fn vacuum_column_killed_by_transformed_annihilators() {
        let g = random_symplectic(2, 11, 0.6);
        let cap = 10;
        let imp = build_implementer(&g, cap).unwrap();
        let vac = imp.vacuum_column();
        for k in 0..2 {
            let mut ek = CVector::zeros(2);
            ek[k] = c(1.0, 0.0);
            let hit = transformed_annihilate(&g, &ek, &vac)
                .unwrap()
                .truncate_degree(cap - 1);
            assert!(hit.norm() < 1e-11, "mode {k}: {}", hit.norm());
        }
    }

    #[test]
    fn joint_transformed_kernel_is_the_gaussian_line() {
        // on output rows below the top degree (where no creation has been
        // dropped) the joint kernel of the a_g(e_k) matrices is
        // one-dimensional and spanned by the truncated Gaussian
        let g = random_symplectic(2, 13, 0.5);
        let (modes, cap) = (2usize, 8usize);
        let basis = Basis::new(modes, cap);
        let n = basis.dim();
        let rows = basis.block_dim(cap - 1);
        let mut stacked = CMatrix::zeros(modes * rows, n);
        for k in 0..modes {
            let mut ek = CVector::zeros(modes);
            ek[k] = c(1.0, 0.0);
            let m = transformed_operator_matrix(OpKind::Annihilate, &g, &ek, modes, cap).unwrap();
            stacked
                .view_mut((k * rows, 0), (rows, n))
                .copy_from(&m.matrix().view((0, 0), (rows, n)));
        }
        assert_eq!(crate::linalg::rank_with_tol(&stacked, 1e-9), n - 1);
        let vac = build_implementer(&g, cap).unwrap().vacuum_column();
        let dense = vac.to_dense(&basis);
        let residual = (&stacked * &dense)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(residual < 1e-10);
    }

    #[test]
    fn implementer_intertwines_ladder_operators() {
        for (modes, seed) in [(1usize, 0u64), (2, 21)] {
            let g = if seed == 0 {
                make_squeeze(1, 0, 0.5)
            } else {
                random_symplectic(modes, seed, 0.5)
            };
            let mut rng = StdRng::seed_from_u64(100 + seed);
            let v = random_vector(&mut rng, modes);
            let (c_dev, a_dev) = intertwine_deviation(&g, 10, &v).unwrap();
            assert!(c_dev < 1e-10, "create side: {c_dev}");
            assert!(a_dev < 1e-10, "annihilate side: {a_dev}");
        }
    }

    #[test]
    fn normalized_matrix_is_unitary_on_low_block() {
        // the degree-8 squeezed columns carry a slowly decaying occupation
        // tail, so unitarity to 1e-6 on the block needs the matrix stored
        // well past the block: degree 2*order for orders 16/20/24
        let g = make_squeeze(1, 0, 0.4);
        let mut prev = f64::INFINITY;
        for order in [16usize, 20, 24] {
            let imp = build_implementer(&g, 2 * order).unwrap();
            let w = imp.normalized_matrix();
            let basis = Basis::new(1, 2 * order);
            let nb = basis.block_dim(8);
            let cols: CMatrix = w.matrix().view((0, 0), (w.dim(), nb)).into();
            let dev = max_abs(&(cols.adjoint() * &cols - CMatrix::identity(nb, nb)));
            assert!(dev < prev, "order {order}: {dev} not below {prev}");
            prev = dev;
        }
        assert!(prev < 1e-6, "final deviation {prev}");
    }

    #[test]
    fn degree_one_columns_have_unit_norm() {
        let g = make_squeeze(1, 0, 0.4);
        let imp = build_implementer(&g, 24).unwrap();
        let w = imp.normalized_matrix();
        let col = w.matrix().column(1);
        assert!((col.norm() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn isometry_error_decays_with_cap() {
        // <U(g) phi | U(g) psi> = <phi|psi> up to the dropped column tails,
        // which shrink as the cap grows
        let g = random_symplectic(2, 31, 0.4);
        let mut rng = StdRng::seed_from_u64(32);
        let probes: Vec<(FockVector, FockVector)> = (0..5)
            .map(|_| (random_fock(&mut rng, 2, 3), random_fock(&mut rng, 2, 3)))
            .collect();
        let mut prev = f64::INFINITY;
        for cap in [12usize, 16, 20] {
            let imp = build_implementer(&g, cap).unwrap();
            let w = imp.normalized_matrix();
            let basis = Basis::new(2, cap);
            let mut worst = 0.0f64;
            for (phi, psi) in &probes {
                let (phi, psi) = (phi.to_dense(&basis), psi.to_dense(&basis));
                let lhs = (w.matrix() * &phi).dotc(&(w.matrix() * &psi));
                let rhs = phi.dotc(&psi);
                worst = worst.max((lhs - rhs).norm());
            }
            assert!(worst < prev, "cap {cap}: {worst} not below {prev}");
            prev = worst;
        }
        assert!(prev < 1e-4, "final isometry deviation {prev}");
    }

    #[test]
    fn adjoint_of_implementer_is_inverse_implementer() {
        assert!(adjoint_check(&SympMap::identity(1), 8, 6).unwrap() < 1e-14);
        assert!(adjoint_check(&make_squeeze(1, 0, 0.7), 24, 8).unwrap() < 1e-8);
        assert!(adjoint_check(&random_symplectic(2, 41, 0.6), 12, 4).unwrap() < 1e-6);
    }

    #[test]
    fn cocycle_trivial_cases() {
        let h = random_symplectic(2, 51, 0.7);
        let id = SympMap::identity(2);
        assert!((cocycle(&id, &h).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!((cocycle(&h, &id).unwrap() - c(1.0, 0.0)).norm() < 1e-12);

        let mut rng = StdRng::seed_from_u64(52);
        let u1 = make_unitary(random_unitary(&mut rng, 2)).unwrap();
        let u2 = make_unitary(random_unitary(&mut rng, 2)).unwrap();
        assert!((cocycle(&u1, &u2).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cocycle_matches_vacuum_entry_of_product() {
        let cap = 24;
        let g = make_squeeze(1, 0, 0.5);
        let h = make_squeeze(1, 0, 0.5);
        let ug = build_implementer(&g, cap).unwrap();
        let uh = build_implementer(&h, cap).unwrap();
        let measured = (ug.matrix().matrix() * uh.matrix().matrix())[(0, 0)];
        let exact = cocycle(&g, &h).unwrap();
        assert!((measured - exact).norm() < 1e-6, "{measured} vs {exact}");
    }

    #[test]
    fn cocycle_identity_error_decays_with_cap() {
        // ||U_g U_h - delta(g,h) U_{gh}|| on a low block shrinks as the cap
        // grows; exercised on words of length <= 3
        let g = make_squeeze(1, 0, 0.4);
        let h = make_squeeze(1, 0, 0.3).compose(
            &make_unitary(CMatrix::from_element(1, 1, C64::from_polar(1.0, 0.9))).unwrap(),
        );
        let mut prev = f64::INFINITY;
        for cap in [12usize, 16, 20] {
            let ug = build_implementer(&g, cap).unwrap();
            let uh = build_implementer(&h, cap).unwrap();
            let ugh = build_implementer(&g.compose(&h), cap).unwrap();
            let delta = cocycle(&g, &h).unwrap();
            let basis = Basis::new(1, cap);
            let nb = basis.block_dim(4);
            let prod = ug.matrix().matrix() * uh.matrix().matrix();
            let diff: CMatrix = (prod - ugh.matrix().matrix() * delta)
                .view((0, 0), (nb, nb))
                .into();
            let dev = max_abs(&diff);
            assert!(dev < prev, "cap {cap}: {dev} vs {prev}");
            prev = dev;
        }
        assert!(prev < 1e-5, "final deviation {prev}");
    }

    #[test]
    fn column_order_is_immaterial() {
        // stored entries agree whichever commuting c_g factor is applied
        // last, because every stored row sits well inside the working cap
        let g = random_symplectic(2, 61, 0.6);
        let cap = 8;
        let imp = build_implementer(&g, cap).unwrap();
        let basis = Basis::new(2, cap);
        let e0 = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let e1 = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let vac = gaussian(&shale_operator(&g).unwrap(), 2 * cap);
        let via_01 =
            transformed_create(&g, &e0, &transformed_create(&g, &e1, &vac).unwrap()).unwrap();
        let via_10 =
            transformed_create(&g, &e1, &transformed_create(&g, &e0, &vac).unwrap()).unwrap();
        let target = basis
            .position(&crate::multi_index::MultiIndex::new(vec![1, 1]))
            .unwrap();
        let stored = imp.matrix().matrix().column(target).into_owned();
        for (i, idx) in basis.indices().iter().enumerate() {
            assert!((via_01.coeff(idx) - via_10.coeff(idx)).norm() < 1e-11);
            assert!((stored[i] - via_01.coeff(idx)).norm() < 1e-11);
        }
    }

    #[test]
    fn build_rejects_non_symplectic() {
        let g = SympMap::new(CMatrix::identity(1, 1) * c(2.0, 0.0), CMatrix::zeros(1, 1)).unwrap();
        assert!(matches!(
            build_implementer(&g, 4),
            Err(FockError::NotSymplectic(_))
        ));
    }
}
