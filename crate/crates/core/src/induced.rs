//! Induced vector frames: flattening an operator family through orthonormal
//! bases of the local spaces.
//!
//! Given local orthonormal bases `{e_{j,k}}`, the vectors
//! `u_{j,k} = Λ_j* e_{j,k}` with weight `μ_j` form a weighted vector family
//! whose frame behaviour matches the operator family exactly:
//!
//! ```text
//! Σ_j μ_j ‖Λ_j h‖² = Σ_j μ_j Σ_k |⟨h, u_{j,k}⟩|²
//! ```
//!
//! holds per atom because each `E_j` is unitary, so both sides share the
//! frame operator, the bounds, and every class flag.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::gframe::{certificate_from_operators, FrameCertificate, FrameOperatorMatrix, GFrameFamily};
use crate::linalg;
use crate::measure::LocalDims;
use crate::{CMatrix, CVector};

/// One vector of a weighted c-frame, optionally tagged with the
/// `(atom, local index)` it was induced from.
#[derive(Debug, Clone, PartialEq)]
pub struct CFrameItem {
    pub weight: f64,
    pub vector: CVector,
    pub origin: Option<(usize, usize)>,
}

/// A weighted family of ambient vectors: a discretized c-frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CFrame {
    ambient_dim: usize,
    items: Vec<CFrameItem>,
}

impl CFrame {
    pub fn new(ambient_dim: usize, items: Vec<CFrameItem>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(FrameError::shape("ambient dimension must be at least 1"));
        }
        if items.is_empty() {
            return Err(FrameError::shape("c-frame needs at least one item"));
        }
        for (index, item) in items.iter().enumerate() {
            if !(item.weight.is_finite() && item.weight > 0.0) {
                return Err(FrameError::NonPositiveWeight {
                    index,
                    value: item.weight,
                });
            }
            if item.vector.len() != ambient_dim {
                return Err(FrameError::shape(format!(
                    "item {index} has length {}, ambient dimension is {ambient_dim}",
                    item.vector.len()
                )));
            }
            if !item.vector.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Err(FrameError::shape(format!("item {index} has non-finite entries")));
            }
        }
        Ok(CFrame { ambient_dim, items })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[CFrameItem] {
        &self.items
    }

    /// Weighted synthesis matrix with column `i` equal to `√w_i · v_i`.
    pub fn synthesis_matrix(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.ambient_dim, self.items.len());
        for (i, item) in self.items.iter().enumerate() {
            let scaled = item.vector.map(|z| z * item.weight.sqrt());
            out.set_column(i, &scaled);
        }
        out
    }
}

/// Orthonormal bases of the local spaces, one unitary matrix per atom whose
/// columns are the chosen basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBases {
    blocks: Vec<CMatrix>,
}

impl LocalBases {
    /// Validates that every block is square and unitary to `tol`.
    pub fn new(blocks: Vec<CMatrix>, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(FrameError::InvalidTolerance { value: tol });
        }
        if blocks.is_empty() {
            return Err(FrameError::shape("local bases need at least one atom"));
        }
        for (atom, block) in blocks.iter().enumerate() {
            if !block.is_square() || block.nrows() == 0 {
                return Err(FrameError::shape(format!(
                    "local basis at atom {atom} must be square and nonempty, got {}x{}",
                    block.nrows(),
                    block.ncols()
                )));
            }
            let defect = linalg::unitary_defect(block);
            if defect > tol {
                return Err(FrameError::NotUnitaryBasis { atom, defect });
            }
        }
        Ok(LocalBases { blocks })
    }

    /// The standard basis of every local space.
    pub fn identity(dims: &LocalDims) -> Self {
        LocalBases {
            blocks: dims
                .dims()
                .iter()
                .map(|&d| CMatrix::identity(d, d))
                .collect(),
        }
    }

    pub fn atom_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, j: usize) -> &CMatrix {
        &self.blocks[j]
    }

    pub fn dims(&self) -> Result<LocalDims> {
        LocalDims::new(self.blocks.iter().map(|b| b.nrows()).collect())
    }
}

/// Flattens a family into its induced c-frame: item `(j, k)` has weight
/// `μ_j` and vector `Λ_j* e_{j,k}`.
pub fn induce(family: &GFrameFamily, bases: &LocalBases) -> Result<CFrame> {
    if bases.atom_count() != family.atom_count() {
        return Err(FrameError::shape(format!(
            "{} local bases for {} atoms",
            bases.atom_count(),
            family.atom_count()
        )));
    }
    for j in 0..family.atom_count() {
        if bases.block(j).nrows() != family.dims().dim(j) {
            return Err(FrameError::shape(format!(
                "local basis at atom {j} is {}x{}, local dimension is {}",
                bases.block(j).nrows(),
                bases.block(j).ncols(),
                family.dims().dim(j)
            )));
        }
    }
    let mut items = Vec::with_capacity(family.coefficient_dim());
    for j in 0..family.atom_count() {
        let adjoint = family.block(j).adjoint();
        for k in 0..family.dims().dim(j) {
            let vector = &adjoint * bases.block(j).column(k);
            items.push(CFrameItem {
                weight: family.measure().weight(j),
                vector,
                origin: Some((j, k)),
            });
        }
    }
    CFrame::new(family.ambient_dim(), items)
}

/// Frame operator of a weighted vector family, `S = Σ_i w_i v_i v_i*`.
pub fn cframe_frame_operator(frame: &CFrame) -> FrameOperatorMatrix {
    let n = frame.ambient_dim();
    let mut s = CMatrix::zeros(n, n);
    for item in frame.items() {
        let w = Complex64::from(item.weight);
        s += &item.vector * item.vector.adjoint() * w;
    }
    FrameOperatorMatrix::new_symmetrized(s)
}

/// Certifies a c-frame with the same flag semantics as the operator side.
///
/// The defect map carries an extra `pointwise_unit_row` entry recording
/// `max_ν |Σ_i w_i ⟨v_i, v_ν⟩ − 1|`, the pointwise normalization required
/// of a c-orthonormal basis; it is reported alongside the Gram-based
/// classification rather than folded into the flags.
pub fn certify_cframe(frame: &CFrame, tol: f64) -> Result<FrameCertificate> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(FrameError::InvalidTolerance { value: tol });
    }
    let synthesis = frame.synthesis_matrix();
    let frame_op = cframe_frame_operator(frame);
    let mut cert = certificate_from_operators(&synthesis, frame_op.matrix(), tol);

    let mut pointwise = 0.0f64;
    for target in frame.items() {
        let mut row_sum = Complex64::new(0.0, 0.0);
        for item in frame.items() {
            row_sum += Complex64::from(item.weight) * target.vector.dotc(&item.vector);
        }
        pointwise = pointwise.max((row_sum - Complex64::new(1.0, 0.0)).norm());
    }
    cert.defects.insert("pointwise_unit_row".to_string(), pointwise);
    Ok(cert)
}

/// Certificates of the operator family and its induced c-frame, with
/// per-class agreement booleans and the bound differences.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub gframe: FrameCertificate,
    pub cframe: FrameCertificate,
    pub agreements: BTreeMap<String, bool>,
    pub lower_bound_diff: f64,
    pub upper_bound_diff: f64,
    /// Spectral-norm gap between the two frame operators.
    pub operator_gap: f64,
    pub tolerance: f64,
    /// True when every class flag agrees and both bound differences are
    /// within tolerance.
    pub all_agree: bool,
}

/// Certifies both representations of a family and compares them class by
/// class.
pub fn equivalence_report(
    family: &GFrameFamily,
    bases: &LocalBases,
    tol: f64,
) -> Result<EquivalenceReport> {
    let gframe = family.certify(tol)?;
    let flattened = induce(family, bases)?;
    let cframe = certify_cframe(&flattened, tol)?;

    let mut agreements = BTreeMap::new();
    let pairs: [(&str, bool, bool); 8] = [
        ("bessel", gframe.is_bessel, cframe.is_bessel),
        ("frame", gframe.is_frame, cframe.is_frame),
        ("tight", gframe.is_tight, cframe.is_tight),
        ("parseval", gframe.is_parseval, cframe.is_parseval),
        ("complete", gframe.is_complete, cframe.is_complete),
        ("riesz_basis", gframe.is_riesz_basis, cframe.is_riesz_basis),
        (
            "orthonormal_system",
            gframe.is_orthonormal_system,
            cframe.is_orthonormal_system,
        ),
        (
            "orthonormal_basis",
            gframe.is_orthonormal_basis,
            cframe.is_orthonormal_basis,
        ),
    ];
    for (name, g, c) in pairs {
        agreements.insert(name.to_string(), g == c);
    }

    let lower_bound_diff = (gframe.lower_bound - cframe.lower_bound).abs();
    let upper_bound_diff = (gframe.upper_bound - cframe.upper_bound).abs();
    let operator_gap = linalg::spectral_norm(
        &(family.frame_operator().matrix() - cframe_frame_operator(&flattened).matrix()),
    );
    let all_agree = agreements.values().all(|&a| a)
        && lower_bound_diff <= tol
        && upper_bound_diff <= tol;

    Ok(EquivalenceReport {
        gframe,
        cframe,
        agreements,
        lower_bound_diff,
        upper_bound_diff,
        operator_gap,
        tolerance: tol,
        all_agree,
    })
}
