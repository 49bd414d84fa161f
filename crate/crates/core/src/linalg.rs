//! Dense complex linear algebra helpers shared across the crate.
//!
//! Everything here is a thin layer over nalgebra's decompositions, pinned to
//! the conventions the rest of the crate relies on: singular values sorted
//! descending, Hermitian eigensystems sorted ascending, and an SVD-based
//! pseudo-inverse with the usual `max_dim · ε · σ_max` rank threshold.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::{CMatrix, CVector};

/// Largest singular value, or 0 for an empty matrix.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.singular_values().max()
}

/// Singular values sorted in descending order.
pub fn singular_values_desc(m: &CMatrix) -> Vec<f64> {
    let sv = m.singular_values();
    let mut out: Vec<f64> = sv.iter().copied().collect();
    out.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
    out
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    vals
}

/// Full Hermitian eigensystem `(values, vectors)` with eigenvalues sorted
/// ascending and eigenvector columns permuted to match.
pub fn hermitian_eigensystem(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let n = m.nrows();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Applies a real scalar function to a Hermitian matrix through its
/// eigensystem: `f(M) = Q diag(f(λ_i)) Q*`.
pub fn hermitian_map(m: &CMatrix, f: impl Fn(f64) -> Complex64) -> CMatrix {
    let (values, q) = hermitian_eigensystem(m);
    let diag = CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&v| f(v)),
    ));
    &q * diag * q.adjoint()
}

/// Deviation of a square matrix from unitarity: the larger of
/// `‖M*M − I‖` and `‖MM* − I‖` in spectral norm.
pub fn unitary_defect(m: &CMatrix) -> f64 {
    debug_assert!(m.is_square());
    let n = m.nrows();
    let eye = CMatrix::identity(n, n);
    let left = spectral_norm(&(m.adjoint() * m - &eye));
    let right = spectral_norm(&(m * m.adjoint() - &eye));
    left.max(right)
}

/// Deviation of a square matrix from self-adjointness, `‖M − M*‖`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    spectral_norm(&(m - m.adjoint()))
}

/// Moore-Penrose pseudo-inverse via singular value decomposition.
///
/// Singular values at or below `max(nrows, ncols) · ε · σ_max` are treated
/// as zero, so the zero matrix maps to the zero matrix and `M M† h = h`
/// holds for every `h` in the range of `M`.
pub fn pseudo_inverse(m: &CMatrix) -> CMatrix {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return CMatrix::zeros(cols, rows);
    }
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd requested u");
    let v_t = svd.v_t.expect("svd requested v_t");
    let sigma_max = svd.singular_values.max();
    let threshold = rows.max(cols) as f64 * f64::EPSILON * sigma_max;
    let inv_sigma = CMatrix::from_diagonal(&CVector::from_iterator(
        svd.singular_values.len(),
        svd.singular_values.iter().map(|&s| {
            if s > threshold && threshold > 0.0 {
                Complex64::new(1.0 / s, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
    ));
    v_t.adjoint() * inv_sigma * u.adjoint()
}

/// Eigenvalues of a general square complex matrix.
///
/// Tries the direct eigenvalue routine first and falls back to a Schur
/// decomposition; both operate on a copy.
pub fn complex_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    debug_assert!(m.is_square());
    if let Some(vals) = m.clone().eigenvalues() {
        return Ok(vals.iter().copied().collect());
    }
    let n = m.nrows();
    let schur = m
        .clone()
        .try_schur(f64::EPSILON, 100 * n.max(1))
        .ok_or(FrameError::SpectralDecompositionFailed)?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// True when every entry of the matrix is finite.
pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}
