//! Shared helpers for the integration suites: seeded random matrices,
//! Haar unitaries, and structured family constructions.
#![allow(dead_code)]

use cgframe_core::{CMatrix, CVector, Complex64, GFrameFamily, LocalDims, MeasureSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut ChaCha12Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

pub fn gaussian_vector(rng: &mut ChaCha12Rng, len: usize) -> CVector {
    CVector::from_fn(len, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

/// Haar unitary via QR of a complex Gaussian, R diagonal rotated positive.
pub fn haar_unitary(rng: &mut ChaCha12Rng, n: usize) -> CMatrix {
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..n {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let col = q.column(k).map(|z| z * phase);
            q.set_column(k, &col);
        }
    }
    q
}

/// Square matrix with prescribed singular values and Haar factors.
pub fn matrix_with_singular_values(rng: &mut ChaCha12Rng, svals: &[f64]) -> CMatrix {
    let n = svals.len();
    let w = haar_unitary(rng, n);
    let x = haar_unitary(rng, n);
    let sigma = CMatrix::from_diagonal(&CVector::from_iterator(
        n,
        svals.iter().map(|&s| Complex64::new(s, 0.0)),
    ));
    w * sigma * x.adjoint()
}

/// Bessel family with unstructured Gaussian blocks.
pub fn gaussian_family(
    rng: &mut ChaCha12Rng,
    ambient_dim: usize,
    dims: &[usize],
    weights: &[f64],
) -> GFrameFamily {
    let measure = MeasureSpace::new(weights.to_vec()).unwrap();
    let blocks = dims
        .iter()
        .map(|&d| gaussian_matrix(rng, d, ambient_dim))
        .collect();
    GFrameFamily::new(ambient_dim, measure, blocks).unwrap()
}

/// cg-orthonormal system with coefficient dimension `D = Σ dims ≤ n`: the
/// weighted synthesis matrix consists of orthonormal columns, so the family
/// is Parseval exactly when `D = n` and rank-deficient otherwise.
pub fn orthonormal_system(
    rng: &mut ChaCha12Rng,
    ambient_dim: usize,
    dims: &[usize],
    weights: &[f64],
) -> GFrameFamily {
    let total: usize = dims.iter().sum();
    assert!(total <= ambient_dim, "orthonormal system needs D ≤ n");
    let q = haar_unitary(rng, ambient_dim);
    let synthesis_adjoint = q.columns(0, total).adjoint();
    let mut blocks = Vec::with_capacity(dims.len());
    let mut offset = 0;
    for (j, &d) in dims.iter().enumerate() {
        let rows = synthesis_adjoint.rows(offset, d).into_owned();
        let scale = 1.0 / weights[j].sqrt();
        blocks.push(rows.map(|z| z * scale));
        offset += d;
    }
    GFrameFamily::new(ambient_dim, MeasureSpace::new(weights.to_vec()).unwrap(), blocks).unwrap()
}

/// Random partition of `total` into parts of size at most `max_part`.
pub fn random_partition(rng: &mut ChaCha12Rng, total: usize, max_part: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        let cap = left.min(max_part);
        let d = rng.random_range(1..=cap);
        parts.push(d);
        left -= d;
    }
    parts
}

/// Random weights in `[0.25, 4.0]`.
pub fn random_weights(rng: &mut ChaCha12Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random_range(0.25..4.0)).collect()
}

pub fn local_dims(list: &[usize]) -> LocalDims {
    LocalDims::new(list.to_vec()).unwrap()
}
