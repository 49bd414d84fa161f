//! Deterministic, seeded construction of families of every class.
//!
//! All randomness flows through ChaCha12 keyed by the caller's seed, with
//! one fixed stream per purpose, so equal generator inputs produce
//! bit-identical families on every run and platform. Random unitaries are
//! drawn Haar-style: QR of a complex Gaussian matrix with the R diagonal
//! rotated positive real, which pins the factorization uniquely.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{FrameError, Result};
use crate::factorization::compose;
use crate::gframe::GFrameFamily;
use crate::induced::LocalBases;
use crate::measure::{LocalDims, MeasureSpace};
use crate::{CMatrix, CVector};

/// Stream tags separating the independent random draws of one seed.
#[derive(Debug, Clone, Copy)]
enum Stream {
    Basis = 1,
    LeftFactor = 2,
    RightFactor = 3,
    SingularValues = 4,
    Projector = 5,
    RawFamily = 6,
    LocalBases = 7,
}

fn rng_for(seed: u64, stream: Stream) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// Target class for [`GeneratorSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetClass {
    OrthonormalBasis,
    Parseval,
    Tight { bound: f64 },
    Frame { lower: f64, upper: f64 },
    Riesz { lower: f64, upper: f64 },
    Incomplete,
}

/// A reproducible recipe for a family of a requested class.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub ambient_dim: usize,
    pub dims: LocalDims,
    pub weights: Vec<f64>,
    pub target_class: TargetClass,
}

impl GeneratorSpec {
    /// Builds the family, validating class/layout compatibility first:
    /// orthonormal and Riesz targets need `D = n`, frame targets `D ≥ n`,
    /// incomplete targets `n ≥ 2`.
    pub fn generate(&self) -> Result<GFrameFamily> {
        match self.target_class {
            TargetClass::OrthonormalBasis => {
                random_onb(self.seed, self.ambient_dim, &self.dims, &self.weights)
            }
            TargetClass::Parseval => random_frame_with_bounds(
                self.seed,
                self.ambient_dim,
                &self.dims,
                &self.weights,
                1.0,
                1.0,
            ),
            TargetClass::Tight { bound } => random_frame_with_bounds(
                self.seed,
                self.ambient_dim,
                &self.dims,
                &self.weights,
                bound,
                bound,
            ),
            TargetClass::Frame { lower, upper } => random_frame_with_bounds(
                self.seed,
                self.ambient_dim,
                &self.dims,
                &self.weights,
                lower,
                upper,
            ),
            TargetClass::Riesz { lower, upper } => {
                if self.dims.total_dim() != self.ambient_dim {
                    return Err(FrameError::layout(format!(
                        "Riesz target needs D = n, got D = {} and n = {}",
                        self.dims.total_dim(),
                        self.ambient_dim
                    )));
                }
                random_frame_with_bounds(
                    self.seed,
                    self.ambient_dim,
                    &self.dims,
                    &self.weights,
                    lower,
                    upper,
                )
            }
            TargetClass::Incomplete => {
                incomplete_family(self.seed, self.ambient_dim, &self.dims, &self.weights)
            }
        }
    }
}

/// The two-atom family whose blocks are the coordinate functionals of a
/// two-dimensional space: weights `(1, 1)`, blocks `[1 0]` and `[0 1]`.
/// Certifies as a cg-orthonormal basis with bounds exactly `(1, 1)`.
pub fn coordinate_onb() -> GFrameFamily {
    let measure = MeasureSpace::new(vec![1.0, 1.0]).expect("static weights");
    let blocks = vec![
        CMatrix::from_row_slice(1, 2, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]),
        CMatrix::from_row_slice(1, 2, &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
    ];
    GFrameFamily::new(2, measure, blocks).expect("static family")
}

/// Random cg-orthonormal basis: a Haar unitary partitioned into row blocks,
/// with block `j` scaled by `1/√μ_j` so the weighted synthesis matrix is
/// exactly the unitary.
pub fn random_onb(
    seed: u64,
    ambient_dim: usize,
    dims: &LocalDims,
    weights: &[f64],
) -> Result<GFrameFamily> {
    let measure = MeasureSpace::new(weights.to_vec())?;
    check_layout(ambient_dim, dims, &measure)?;
    if dims.total_dim() != ambient_dim {
        return Err(FrameError::layout(format!(
            "orthonormal basis needs D = n, got D = {} and n = {}",
            dims.total_dim(),
            ambient_dim
        )));
    }
    let mut rng = rng_for(seed, Stream::Basis);
    let q = haar_unitary(&mut rng, ambient_dim);
    let blocks = partition_rows(&q, dims, weights);
    GFrameFamily::new(ambient_dim, measure, blocks)
}

/// Random frame with prescribed bounds: the extreme singular values of the
/// weighted synthesis matrix are pinned at `√lower` and `√upper`, interior
/// ones drawn log-uniform in between.
///
/// For `D = n` the family is a composed orthonormal basis `Θ∘V`; for
/// `D > n` the synthesis matrix is drawn directly with an isometric row
/// space and partitioned into blocks.
pub fn random_frame_with_bounds(
    seed: u64,
    ambient_dim: usize,
    dims: &LocalDims,
    weights: &[f64],
    lower: f64,
    upper: f64,
) -> Result<GFrameFamily> {
    if !(lower.is_finite() && upper.is_finite() && lower > 0.0 && lower <= upper) {
        return Err(FrameError::InvalidBounds { lower, upper });
    }
    let measure = MeasureSpace::new(weights.to_vec())?;
    check_layout(ambient_dim, dims, &measure)?;
    let total = dims.total_dim();
    if total < ambient_dim {
        return Err(FrameError::layout(format!(
            "frame needs D ≥ n, got D = {total} and n = {ambient_dim}"
        )));
    }
    if ambient_dim == 1 && lower != upper {
        return Err(FrameError::InvalidBounds { lower, upper });
    }

    let singular = pinned_singular_values(seed, ambient_dim, lower.sqrt(), upper.sqrt());

    if total == ambient_dim {
        let theta = random_onb(seed, ambient_dim, dims, weights)?;
        let mut left_rng = rng_for(seed, Stream::LeftFactor);
        let mut right_rng = rng_for(seed, Stream::RightFactor);
        let w = haar_unitary(&mut left_rng, ambient_dim);
        let x = haar_unitary(&mut right_rng, ambient_dim);
        let sigma = CMatrix::from_diagonal(&CVector::from_iterator(
            ambient_dim,
            singular.iter().map(|&s| Complex64::new(s, 0.0)),
        ));
        let v = &w * sigma * x.adjoint();
        compose(&theta, &v)
    } else {
        // Synthesis matrix T̃ = X diag(s) W* with W an isometric D×n column
        // frame; blocks come from the rows of T̃*.
        let mut left_rng = rng_for(seed, Stream::LeftFactor);
        let mut right_rng = rng_for(seed, Stream::RightFactor);
        let x = haar_unitary(&mut right_rng, ambient_dim);
        let gaussian = gaussian_matrix(&mut left_rng, total, ambient_dim);
        let w = orthonormal_columns(&gaussian);
        let sigma = CMatrix::from_diagonal(&CVector::from_iterator(
            ambient_dim,
            singular.iter().map(|&s| Complex64::new(s, 0.0)),
        ));
        let synthesis_adjoint = &w * sigma * x.adjoint();
        let blocks = partition_rows_adjoint(&synthesis_adjoint, dims, weights);
        GFrameFamily::new(ambient_dim, measure, blocks)
    }
}

/// Random family composed with a rank-deficient projector, so it annihilates
/// a nonzero vector and fails completeness. Requires `n ≥ 2`.
pub fn incomplete_family(
    seed: u64,
    ambient_dim: usize,
    dims: &LocalDims,
    weights: &[f64],
) -> Result<GFrameFamily> {
    let measure = MeasureSpace::new(weights.to_vec())?;
    check_layout(ambient_dim, dims, &measure)?;
    if ambient_dim < 2 {
        return Err(FrameError::layout(
            "incomplete family needs ambient dimension at least 2",
        ));
    }
    let mut raw_rng = rng_for(seed, Stream::RawFamily);
    let mut proj_rng = rng_for(seed, Stream::Projector);
    let direction = gaussian_vector(&mut proj_rng, ambient_dim);
    let unit = direction.map(|z| z / direction.norm());
    let projector = CMatrix::identity(ambient_dim, ambient_dim) - &unit * unit.adjoint();
    let blocks = dims
        .dims()
        .iter()
        .map(|&d| gaussian_matrix(&mut raw_rng, d, ambient_dim) * &projector)
        .collect();
    GFrameFamily::new(ambient_dim, measure, blocks)
}

/// Random orthonormal bases of the local spaces, one Haar unitary per atom.
pub fn random_local_bases(seed: u64, dims: &LocalDims) -> LocalBases {
    let mut rng = rng_for(seed, Stream::LocalBases);
    let blocks: Vec<CMatrix> = dims
        .dims()
        .iter()
        .map(|&d| haar_unitary(&mut rng, d))
        .collect();
    LocalBases::new(blocks, 1e-10).expect("Haar unitaries are unitary")
}

fn check_layout(ambient_dim: usize, dims: &LocalDims, measure: &MeasureSpace) -> Result<()> {
    if ambient_dim == 0 {
        return Err(FrameError::layout("ambient dimension must be at least 1"));
    }
    if dims.atom_count() != measure.atom_count() {
        return Err(FrameError::layout(format!(
            "{} local dimensions for {} weights",
            dims.atom_count(),
            measure.atom_count()
        )));
    }
    Ok(())
}

/// Splits a `n×n` unitary into row blocks `Q_j / √μ_j`.
fn partition_rows(q: &CMatrix, dims: &LocalDims, weights: &[f64]) -> Vec<CMatrix> {
    let mut blocks = Vec::with_capacity(dims.atom_count());
    let mut offset = 0;
    for (j, &d) in dims.dims().iter().enumerate() {
        let rows = q.rows(offset, d).into_owned();
        let scale = 1.0 / weights[j].sqrt();
        blocks.push(rows.map(|z| z * scale));
        offset += d;
    }
    blocks
}

/// Splits a `D×n` matrix `G = T̃*` into blocks `Λ_j = (G_j)/√μ_j` where
/// `G_j` is the row chunk for atom `j`.
fn partition_rows_adjoint(g: &CMatrix, dims: &LocalDims, weights: &[f64]) -> Vec<CMatrix> {
    let mut blocks = Vec::with_capacity(dims.atom_count());
    let mut offset = 0;
    for (j, &d) in dims.dims().iter().enumerate() {
        let rows = g.rows(offset, d).into_owned();
        let scale = 1.0 / weights[j].sqrt();
        blocks.push(rows.map(|z| z * scale));
        offset += d;
    }
    blocks
}

/// Singular values with pinned endpoints, descending: `s_1 = hi`,
/// `s_n = lo`, interior entries log-uniform in `[lo, hi]`.
fn pinned_singular_values(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = rng_for(seed, Stream::SingularValues);
    let mut values = Vec::with_capacity(count);
    values.push(hi);
    if count >= 2 {
        let mut interior: Vec<f64> = (0..count - 2)
            .map(|_| {
                let u: f64 = rng.random();
                (lo.ln() + u * (hi.ln() - lo.ln())).exp()
            })
            .collect();
        interior.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
        values.extend(interior);
        values.push(lo);
    }
    values
}

fn gaussian_matrix(rng: &mut ChaCha12Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

fn gaussian_vector(rng: &mut ChaCha12Rng, len: usize) -> CVector {
    CVector::from_fn(len, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of
/// the R diagonal pushed into Q, making R's diagonal positive real and the
/// factorization unique.
fn haar_unitary(rng: &mut ChaCha12Rng, n: usize) -> CMatrix {
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

/// Gram-Schmidt via QR with the same positive-diagonal convention, keeping
/// the first `ncols` orthonormal columns of a tall matrix.
fn orthonormal_columns(g: &CMatrix) -> CMatrix {
    let cols = g.ncols();
    let qr = g.clone().qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..cols.min(q.ncols()) {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let col = q.column(k).map(|z| z * phase);
            q.set_column(k, &col);
        }
    }
    q.columns(0, cols).into_owned()
}
