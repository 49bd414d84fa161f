//! Operator families `{Λ_j}`, their synthesis/analysis/frame operators,
//! frame bounds, and class certification.
//!
//! The weighted synthesis matrix
//!
//! ```text
//! T̃ = [√μ_1 Λ_1* | √μ_2 Λ_2* | … | √μ_m Λ_m*]        (n × D)
//! ```
//!
//! represents the synthesis operator in the isometric coordinates of
//! [`weighted_embedding`](crate::measure::weighted_embedding), so its
//! singular values are the singular values of the synthesis operator with
//! respect to the weighted inner product. Every classification below is a
//! spectral statement about `T̃` or about the frame operator `S = T̃ T̃*`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::linalg;
use crate::measure::{DirectIntegralVector, LocalDims, MeasureSpace};
use crate::{CMatrix, CVector};

/// A family of operator blocks `Λ_j : H → H_j`, one per measure atom.
#[derive(Debug, Clone, PartialEq)]
pub struct GFrameFamily {
    ambient_dim: usize,
    measure: MeasureSpace,
    dims: LocalDims,
    blocks: Vec<CMatrix>,
}

impl GFrameFamily {
    /// Builds a family from its ambient dimension, measure, and blocks.
    ///
    /// Block `j` must have exactly `ambient_dim` columns and at least one
    /// row; its row count becomes the local dimension `d_j`. All entries
    /// must be finite.
    pub fn new(ambient_dim: usize, measure: MeasureSpace, blocks: Vec<CMatrix>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(FrameError::shape("ambient dimension must be at least 1"));
        }
        if blocks.len() != measure.atom_count() {
            return Err(FrameError::shape(format!(
                "{} blocks for {} atoms",
                blocks.len(),
                measure.atom_count()
            )));
        }
        let mut dims = Vec::with_capacity(blocks.len());
        for (atom, block) in blocks.iter().enumerate() {
            if block.ncols() != ambient_dim {
                return Err(FrameError::shape(format!(
                    "block {atom} has {} columns, ambient dimension is {ambient_dim}",
                    block.ncols()
                )));
            }
            if block.nrows() == 0 {
                return Err(FrameError::shape(format!("block {atom} has no rows")));
            }
            for col in 0..block.ncols() {
                for row in 0..block.nrows() {
                    let z = block[(row, col)];
                    if !(z.re.is_finite() && z.im.is_finite()) {
                        return Err(FrameError::NonFiniteEntry { atom, row, col });
                    }
                }
            }
            dims.push(block.nrows());
        }
        Ok(GFrameFamily {
            ambient_dim,
            measure,
            dims: LocalDims::new(dims)?,
            blocks,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn measure(&self) -> &MeasureSpace {
        &self.measure
    }

    pub fn dims(&self) -> &LocalDims {
        &self.dims
    }

    pub fn atom_count(&self) -> usize {
        self.blocks.len()
    }

    /// Total coefficient dimension `D = Σ_j d_j`.
    pub fn coefficient_dim(&self) -> usize {
        self.dims.total_dim()
    }

    pub fn block(&self, j: usize) -> &CMatrix {
        &self.blocks[j]
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// True when both families share measure weights, local dimensions, and
    /// ambient dimension, so they can be composed and compared atom by atom.
    pub fn same_layout(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dims == other.dims
            && self.measure == other.measure
    }

    /// Synthesis operator `Tφ = Σ_j μ_j Λ_j* φ_j`.
    pub fn synthesis_apply(&self, phi: &DirectIntegralVector) -> Result<CVector> {
        self.check_coefficient_shape(phi)?;
        let mut out = CVector::zeros(self.ambient_dim);
        for j in 0..self.atom_count() {
            let mu = Complex64::from(self.measure.weight(j));
            out += self.blocks[j].ad_mul(phi.block(j)) * mu;
        }
        Ok(out)
    }

    /// Analysis operator `(T*h)_j = Λ_j h`.
    pub fn analysis_apply(&self, h: &CVector) -> Result<DirectIntegralVector> {
        if h.len() != self.ambient_dim {
            return Err(FrameError::shape(format!(
                "vector length {} vs ambient dimension {}",
                h.len(),
                self.ambient_dim
            )));
        }
        let blocks = self.blocks.iter().map(|b| b * h).collect();
        DirectIntegralVector::new(blocks)
    }

    /// Weighted synthesis matrix `T̃ = [√μ_j Λ_j*]_j`, shape `n × D`.
    pub fn synthesis_matrix(&self) -> CMatrix {
        let n = self.ambient_dim;
        let total = self.coefficient_dim();
        let mut out = CMatrix::zeros(n, total);
        let mut offset = 0;
        for j in 0..self.atom_count() {
            let scaled = self.blocks[j].adjoint() * Complex64::from(self.measure.weight(j).sqrt());
            out.view_mut((0, offset), (n, scaled.ncols()))
                .copy_from(&scaled);
            offset += scaled.ncols();
        }
        out
    }

    /// Frame operator `S = Σ_j μ_j Λ_j* Λ_j`, symmetrized to be exactly
    /// Hermitian.
    pub fn frame_operator(&self) -> FrameOperatorMatrix {
        let n = self.ambient_dim;
        let mut s = CMatrix::zeros(n, n);
        for j in 0..self.atom_count() {
            let mu = Complex64::from(self.measure.weight(j));
            s += self.blocks[j].adjoint() * &self.blocks[j] * mu;
        }
        FrameOperatorMatrix::new_symmetrized(s)
    }

    /// Extreme eigenvalues of the frame operator; the lower bound is
    /// clamped at zero against rounding.
    pub fn frame_bounds(&self) -> (f64, f64) {
        let eigs = linalg::hermitian_eigenvalues(self.frame_operator().matrix());
        let lower = eigs.first().copied().unwrap_or(0.0).max(0.0);
        let upper = eigs.last().copied().unwrap_or(0.0).max(0.0);
        (lower, upper)
    }

    /// Distance of the weighted Gram `T̃*T̃` from the identity, in spectral
    /// norm. Zero exactly when the family is a cg-orthonormal system, i.e.
    /// `μ_ν Λ_ν Λ_ν* = I` per atom and `Λ_ν Λ_j* = 0` across atoms.
    pub fn orthonormal_system_defect(&self) -> f64 {
        let t = self.synthesis_matrix();
        let d = self.coefficient_dim();
        linalg::spectral_norm(&(t.adjoint() * t - CMatrix::identity(d, d)))
    }

    /// Classifies the family against every frame class at tolerance `tol`.
    pub fn certify(&self, tol: f64) -> Result<FrameCertificate> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(FrameError::InvalidTolerance { value: tol });
        }
        let synthesis = self.synthesis_matrix();
        let frame_op = self.frame_operator();
        Ok(certificate_from_operators(
            &synthesis,
            frame_op.matrix(),
            tol,
        ))
    }

    /// Canonical dual family with blocks `Λ_j S⁻¹`.
    ///
    /// Requires the family to be a frame at tolerance `tol`: the smallest
    /// eigenvalue of `S` must exceed `tol`, otherwise `S` is not safely
    /// invertible and `NotAFrame` is returned.
    pub fn canonical_dual(&self, tol: f64) -> Result<GFrameFamily> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(FrameError::InvalidTolerance { value: tol });
        }
        let frame_op = self.frame_operator();
        let eigs = linalg::hermitian_eigenvalues(frame_op.matrix());
        let lambda_min = eigs.first().copied().unwrap_or(0.0);
        if lambda_min <= tol {
            return Err(FrameError::NotAFrame {
                lower_bound: lambda_min.max(0.0),
                tolerance: tol,
            });
        }
        let s_inv = linalg::hermitian_map(frame_op.matrix(), |v| Complex64::new(1.0 / v, 0.0));
        let blocks = self.blocks.iter().map(|b| b * &s_inv).collect();
        GFrameFamily::new(self.ambient_dim, self.measure.clone(), blocks)
    }

    /// Largest spectral norm among the blocks; the scale used for relative
    /// reconstruction checks.
    pub fn max_block_norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    /// Largest blockwise spectral-norm distance to another family of the
    /// same layout.
    pub fn blockwise_distance(&self, other: &Self) -> Result<f64> {
        if !self.same_layout(other) {
            return Err(FrameError::shape(
                "families do not share measure, dims, and ambient dimension",
            ));
        }
        Ok(self
            .blocks
            .iter()
            .zip(other.blocks())
            .map(|(a, b)| linalg::spectral_norm(&(a - b)))
            .fold(0.0, f64::max))
    }

    fn check_coefficient_shape(&self, phi: &DirectIntegralVector) -> Result<()> {
        if phi.atom_count() != self.atom_count() {
            return Err(FrameError::shape(format!(
                "coefficient vector has {} blocks, family has {} atoms",
                phi.atom_count(),
                self.atom_count()
            )));
        }
        for j in 0..self.atom_count() {
            if phi.block(j).len() != self.dims.dim(j) {
                return Err(FrameError::shape(format!(
                    "coefficient block {j} has length {}, local dimension is {}",
                    phi.block(j).len(),
                    self.dims.dim(j)
                )));
            }
        }
        Ok(())
    }
}

/// The frame operator as a validated Hermitian positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameOperatorMatrix {
    matrix: CMatrix,
}

impl FrameOperatorMatrix {
    /// Symmetrizes the accumulated sum so the stored matrix is Hermitian
    /// to the last bit.
    pub(crate) fn new_symmetrized(m: CMatrix) -> Self {
        let sym = (&m + m.adjoint()).map(|z| z * 0.5);
        FrameOperatorMatrix { matrix: sym }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Applies the operator to an ambient vector.
    pub fn apply(&self, h: &CVector) -> CVector {
        &self.matrix * h
    }
}

/// Outcome of certification: frame bounds, class flags, and the defect or
/// margin behind each flag.
///
/// Defect entries named `*_margin` are quantities that must exceed the
/// tolerance for the flag to hold (`frame_margin`, `completeness_margin`,
/// `riesz_margin`); all other entries are distances that must stay at or
/// below it.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameCertificate {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub is_bessel: bool,
    pub is_frame: bool,
    pub is_tight: bool,
    pub is_parseval: bool,
    pub is_complete: bool,
    pub is_riesz_basis: bool,
    pub is_orthonormal_system: bool,
    pub is_orthonormal_basis: bool,
    /// Numerical rank of the weighted synthesis matrix at threshold
    /// `tol · σ_max`.
    pub rank: usize,
    pub defects: BTreeMap<String, f64>,
    pub tolerance: f64,
}

/// Shared certification core: classifies from the weighted synthesis matrix
/// (`n × D`) and the frame operator (`n × n`). Also used by the induced
/// vector-frame side so both representations get identical semantics.
pub(crate) fn certificate_from_operators(
    synthesis: &CMatrix,
    frame_op: &CMatrix,
    tol: f64,
) -> FrameCertificate {
    let n = synthesis.nrows();
    let total = synthesis.ncols();

    let eigs = linalg::hermitian_eigenvalues(frame_op);
    let lower = eigs.first().copied().unwrap_or(0.0).max(0.0);
    let upper = eigs.last().copied().unwrap_or(0.0).max(0.0);

    let svals = linalg::singular_values_desc(synthesis);
    let sigma_max = svals.first().copied().unwrap_or(0.0);
    let rank = if sigma_max > 0.0 {
        svals.iter().filter(|&&s| s > tol * sigma_max).count()
    } else {
        0
    };

    let parseval_defect = linalg::spectral_norm(&(frame_op - CMatrix::identity(n, n)));
    let onb_system_defect =
        linalg::spectral_norm(&(synthesis.adjoint() * synthesis - CMatrix::identity(total, total)));
    let tight_defect = (upper - lower) / upper.max(1.0);
    let completeness_margin = if sigma_max > 0.0 && svals.len() >= n {
        svals[n - 1] / sigma_max
    } else {
        0.0
    };
    let riesz_margin = if total == n {
        svals.last().copied().unwrap_or(0.0)
    } else {
        0.0
    };

    let is_frame = lower > tol;
    // A tight frame is still a frame; the zero family has matching bounds
    // but no lower bound, so the frame flag gates the tight flag.
    let is_tight = is_frame && (upper - lower) <= tol * upper.max(1.0);
    let is_parseval = parseval_defect <= tol;
    let is_complete = rank == n;
    let is_riesz_basis = total == n && riesz_margin > tol;
    let is_orthonormal_system = onb_system_defect <= tol;
    let is_orthonormal_basis = is_orthonormal_system && is_parseval;

    let mut defects = BTreeMap::new();
    defects.insert("tight".to_string(), tight_defect);
    defects.insert("parseval".to_string(), parseval_defect);
    defects.insert("orthonormal_system".to_string(), onb_system_defect);
    defects.insert(
        "orthonormal_basis".to_string(),
        parseval_defect.max(onb_system_defect),
    );
    defects.insert("frame_margin".to_string(), lower);
    defects.insert("completeness_margin".to_string(), completeness_margin);
    defects.insert("riesz_margin".to_string(), riesz_margin);

    FrameCertificate {
        lower_bound: lower,
        upper_bound: upper,
        is_bessel: true,
        is_frame,
        is_tight,
        is_parseval,
        is_complete,
        is_riesz_basis,
        is_orthonormal_system,
        is_orthonormal_basis,
        rank,
        defects,
        tolerance: tol,
    }
}
