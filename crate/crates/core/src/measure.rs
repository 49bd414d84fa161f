//! Discrete measure spaces, local dimensions, and the weighted
//! direct-sum coefficient space.
//!
//! Integrals over the index set become weighted sums over atoms; the
//! coefficient space carries the inner product
//! `⟨f, g⟩ = Σ_j μ_j ⟨f_j, g_j⟩`, linear in the first argument and
//! conjugate-linear in the second. The embedding `J` with
//! `(Jf)_j = √μ_j f_j` maps it isometrically onto a plain complex
//! coordinate space, which is where all spectral computations happen.

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::CVector;

/// A finite measure space: one strictly positive weight per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpace {
    weights: Vec<f64>,
}

impl MeasureSpace {
    /// Builds a measure space from atom weights.
    ///
    /// Rejects empty lists and any weight that is zero, negative, or not
    /// finite.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(FrameError::shape("measure space needs at least one atom"));
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(FrameError::NonPositiveWeight { index, value });
            }
        }
        Ok(MeasureSpace { weights })
    }

    /// Number of atoms `m`.
    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }

    /// Weight of atom `j`.
    pub fn weight(&self, j: usize) -> f64 {
        self.weights[j]
    }

    /// All weights in atom order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Dimensions of the local spaces, one per atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDims {
    dims: Vec<usize>,
}

impl LocalDims {
    /// Builds the dimension list; every entry must be at least 1.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(FrameError::shape("local dimension list is empty"));
        }
        if let Some(j) = dims.iter().position(|&d| d == 0) {
            return Err(FrameError::shape(format!(
                "local dimension at atom {j} must be at least 1"
            )));
        }
        Ok(LocalDims { dims })
    }

    pub fn atom_count(&self) -> usize {
        self.dims.len()
    }

    /// Dimension of the local space at atom `j`.
    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total coefficient dimension `D = Σ_j d_j`.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// An element of the weighted direct-sum space: one local vector per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectIntegralVector {
    blocks: Vec<CVector>,
}

impl DirectIntegralVector {
    pub fn new(blocks: Vec<CVector>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(FrameError::shape("direct-sum vector needs at least one block"));
        }
        if let Some(j) = blocks.iter().position(|b| b.len() == 0) {
            return Err(FrameError::shape(format!("block {j} is empty")));
        }
        Ok(DirectIntegralVector { blocks })
    }

    /// The zero vector for a given local layout.
    pub fn zeros(dims: &LocalDims) -> Self {
        DirectIntegralVector {
            blocks: dims.dims().iter().map(|&d| CVector::zeros(d)).collect(),
        }
    }

    pub fn atom_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, j: usize) -> &CVector {
        &self.blocks[j]
    }

    pub fn blocks(&self) -> &[CVector] {
        &self.blocks
    }

    /// Local layout implied by the block lengths.
    pub fn local_dims(&self) -> LocalDims {
        LocalDims {
            dims: self.blocks.iter().map(|b| b.len()).collect(),
        }
    }

    pub(crate) fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.blocks.len() != other.blocks.len() {
            return Err(FrameError::shape(format!(
                "block counts differ: {} vs {}",
                self.blocks.len(),
                other.blocks.len()
            )));
        }
        for (j, (a, b)) in self.blocks.iter().zip(&other.blocks).enumerate() {
            if a.len() != b.len() {
                return Err(FrameError::shape(format!(
                    "block {j} lengths differ: {} vs {}",
                    a.len(),
                    b.len()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn check_measure(&self, measure: &MeasureSpace) -> Result<()> {
        if self.blocks.len() != measure.atom_count() {
            return Err(FrameError::shape(format!(
                "vector has {} blocks but measure has {} atoms",
                self.blocks.len(),
                measure.atom_count()
            )));
        }
        Ok(())
    }
}

/// Weighted inner product `Σ_j μ_j ⟨f_j, g_j⟩`, linear in `f` and
/// conjugate-linear in `g`. Summation runs in ascending atom order.
pub fn di_inner(
    f: &DirectIntegralVector,
    g: &DirectIntegralVector,
    measure: &MeasureSpace,
) -> Result<Complex64> {
    f.check_same_shape(g)?;
    f.check_measure(measure)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..f.atom_count() {
        // dotc conjugates its receiver, so g·conj gives ⟨f_j, g_j⟩.
        acc += Complex64::from(measure.weight(j)) * g.block(j).dotc(f.block(j));
    }
    Ok(acc)
}

/// Isometric coordinate embedding `(Jf)_j = √μ_j f_j`, flattened into a
/// single vector of length `D`.
pub fn weighted_embedding(f: &DirectIntegralVector, measure: &MeasureSpace) -> Result<CVector> {
    f.check_measure(measure)?;
    let total: usize = f.blocks().iter().map(|b| b.len()).sum();
    let mut out = CVector::zeros(total);
    let mut offset = 0;
    for j in 0..f.atom_count() {
        let scale = measure.weight(j).sqrt();
        for (i, z) in f.block(j).iter().enumerate() {
            out[offset + i] = z * scale;
        }
        offset += f.block(j).len();
    }
    Ok(out)
}
