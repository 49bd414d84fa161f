//! Transition operators between a family and an orthonormal basis, and the
//! classification laws that travel along them.
//!
//! Relative to a cg-orthonormal basis `Θ`, every Bessel family factors as
//! `Λ_j = Θ_j V` for a unique operator `V = Σ_j μ_j Θ_j* Λ_j`. The class of
//! the composed family and the class of `V` determine each other:
//! Parseval ⟺ `V` isometry, frame bounds ⟺ extreme eigenvalues of `V*V`,
//! orthonormal basis ⟺ `V` unitary, Riesz basis ⟺ `V` invertible, and
//! completeness ⟺ `V` injective.

use num_complex::Complex64;

use crate::error::{FrameError, Result};
use crate::gframe::{FrameCertificate, GFrameFamily};
use crate::linalg;
use crate::CMatrix;

/// Relative tolerance for the bounds-versus-Gram-spectrum comparison in
/// [`verify_composition_laws`].
pub const BOUND_TRANSFER_TOL: f64 = 1e-9;

/// Spectral classification of a square transition operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionClass {
    pub is_isometry: bool,
    pub is_unitary: bool,
    pub is_injective: bool,
    pub is_invertible: bool,
    /// `σ_min(V)²`: the largest constant with `‖Vf‖² ≥ α‖f‖²`.
    pub alpha: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

/// Result of recovering `V` with `Λ_j = Θ_j V` from a family and an
/// orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionReport {
    pub matrix: CMatrix,
    /// Largest blockwise spectral norm of `Λ_j − Θ_j V`; nonzero residual
    /// beyond tolerance means the inputs do not actually factor.
    pub residual: f64,
    pub class: TransitionClass,
    /// `σ_min(V)²`, the lower frame bound of the composed family.
    pub lower_gram: f64,
    /// `σ_max(V)²`, the upper frame bound of the composed family.
    pub upper_gram: f64,
}

/// Classifies a square matrix as isometry/unitary/injective/invertible at
/// tolerance `tol`, with `α = σ_min²`.
pub fn classify_transition(v: &CMatrix, tol: f64) -> Result<TransitionClass> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(FrameError::InvalidTolerance { value: tol });
    }
    if !v.is_square() {
        return Err(FrameError::shape(format!(
            "transition operator must be square, got {}x{}",
            v.nrows(),
            v.ncols()
        )));
    }
    let n = v.nrows();
    let svals = linalg::singular_values_desc(v);
    let sigma_max = svals.first().copied().unwrap_or(0.0);
    let sigma_min = svals.last().copied().unwrap_or(0.0);
    let eye = CMatrix::identity(n, n);
    let isometry_defect = linalg::spectral_norm(&(v.adjoint() * v - &eye));
    let counitary_defect = linalg::spectral_norm(&(v * v.adjoint() - &eye));
    let is_isometry = isometry_defect <= tol;
    let is_unitary = is_isometry && counitary_defect <= tol;
    let is_injective = sigma_min > tol;
    // On a finite-dimensional space an injective square operator is onto,
    // so injectivity, invertibility, and "adjoint onto" coincide.
    let is_invertible = is_injective;
    Ok(TransitionClass {
        is_isometry,
        is_unitary,
        is_injective,
        is_invertible,
        alpha: sigma_min * sigma_min,
        sigma_min,
        sigma_max,
    })
}

/// Recovers the transition operator `V = Σ_j μ_j Θ_j* Λ_j` and classifies
/// it.
///
/// `theta` must certify as a cg-orthonormal basis at tolerance `tol`, and
/// both families must share measure, local dimensions, and ambient
/// dimension.
pub fn transition_operator(
    lambda: &GFrameFamily,
    theta: &GFrameFamily,
    tol: f64,
) -> Result<TransitionReport> {
    if !lambda.same_layout(theta) {
        return Err(FrameError::shape(
            "family and basis do not share measure, dims, and ambient dimension",
        ));
    }
    let theta_cert = theta.certify(tol)?;
    if !theta_cert.is_orthonormal_basis {
        return Err(FrameError::NotOrthonormalBasis {
            defect: theta_cert.defects["orthonormal_basis"],
            tolerance: tol,
        });
    }
    let n = lambda.ambient_dim();
    let mut v = CMatrix::zeros(n, n);
    for j in 0..lambda.atom_count() {
        let mu = Complex64::from(lambda.measure().weight(j));
        v += theta.block(j).adjoint() * lambda.block(j) * mu;
    }
    let residual = (0..lambda.atom_count())
        .map(|j| linalg::spectral_norm(&(lambda.block(j) - theta.block(j) * &v)))
        .fold(0.0, f64::max);
    let class = classify_transition(&v, tol)?;
    let lower_gram = class.alpha;
    let upper_gram = class.sigma_max * class.sigma_max;
    Ok(TransitionReport {
        matrix: v,
        residual,
        class,
        lower_gram,
        upper_gram,
    })
}

/// Composes a family with an operator on the ambient space:
/// block `j` of the result is `Λ_j V`.
pub fn compose(family: &GFrameFamily, v: &CMatrix) -> Result<GFrameFamily> {
    let n = family.ambient_dim();
    if v.nrows() != n || v.ncols() != n {
        return Err(FrameError::shape(format!(
            "composition operator is {}x{}, ambient dimension is {n}",
            v.nrows(),
            v.ncols()
        )));
    }
    let blocks = family.blocks().iter().map(|b| b * v).collect();
    GFrameFamily::new(n, family.measure().clone(), blocks)
}

/// Completeness check: the family annihilates only the zero vector exactly
/// when the weighted synthesis matrix has full rank `n`. Returns the flag
/// together with the numerical rank at threshold `tol · σ_max`.
pub fn completeness_check(family: &GFrameFamily, tol: f64) -> Result<(bool, usize)> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(FrameError::InvalidTolerance { value: tol });
    }
    let svals = linalg::singular_values_desc(&family.synthesis_matrix());
    let sigma_max = svals.first().copied().unwrap_or(0.0);
    let rank = if sigma_max > 0.0 {
        svals.iter().filter(|&&s| s > tol * sigma_max).count()
    } else {
        0
    };
    Ok((rank == family.ambient_dim(), rank))
}

/// Joint report for the transfer laws between a transition operator and
/// the family it composes.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionLawReport {
    /// Certificate of the composed family `{Θ_j V}`.
    pub certificate: FrameCertificate,
    /// Classification of `V` itself.
    pub transition: TransitionClass,
    /// `‖V_recovered − V‖` for the round trip through the composed family.
    pub recovery_gap: f64,
    /// Worst relative gap between the frame bounds and `(σ_min², σ_max²)`.
    pub bound_gap: f64,
    pub parseval_iff_isometry: bool,
    pub bounds_match_gram: bool,
    pub orthonormal_iff_unitary: bool,
    pub riesz_iff_invertible: bool,
}

impl CompositionLawReport {
    /// True when all four transfer laws held.
    pub fn all_hold(&self) -> bool {
        self.parseval_iff_isometry
            && self.bounds_match_gram
            && self.orthonormal_iff_unitary
            && self.riesz_iff_invertible
    }
}

/// Composes `Θ` with `V`, certifies the result, classifies `V`, and checks
/// the four transfer laws in both directions.
pub fn verify_composition_laws(
    theta: &GFrameFamily,
    v: &CMatrix,
    tol: f64,
) -> Result<CompositionLawReport> {
    let composed = compose(theta, v)?;
    let certificate = composed.certify(tol)?;
    let report = transition_operator(&composed, theta, tol)?;
    let recovery_gap = linalg::spectral_norm(&(&report.matrix - v));
    let transition = report.class.clone();

    let scale = transition.sigma_max * transition.sigma_max;
    let bound_gap = ((certificate.lower_bound - report.lower_gram).abs())
        .max((certificate.upper_bound - report.upper_gram).abs())
        / scale.max(1.0);

    Ok(CompositionLawReport {
        parseval_iff_isometry: certificate.is_parseval == transition.is_isometry,
        bounds_match_gram: bound_gap <= BOUND_TRANSFER_TOL,
        orthonormal_iff_unitary: certificate.is_orthonormal_basis == transition.is_unitary,
        riesz_iff_invertible: certificate.is_riesz_basis == transition.is_invertible,
        certificate,
        transition,
        recovery_gap,
        bound_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::coordinate_onb;
    use crate::measure::MeasureSpace;
    use crate::DEFAULT_TOL;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn diag(entries: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&crate::CVector::from_iterator(
            entries.len(),
            entries.iter().map(|&x| re(x)),
        ))
    }

    #[test]
    fn transition_identity_factorization() {
        let theta = coordinate_onb();
        let rep = transition_operator(&theta, &theta, DEFAULT_TOL).unwrap();
        assert!(linalg::spectral_norm(&(&rep.matrix - CMatrix::identity(2, 2))) < 1e-14);
        assert!(rep.residual < 1e-14);
        assert!(rep.class.is_unitary);
    }

    #[test]
    fn transition_recovers_shear() {
        let theta = coordinate_onb();
        let shear = CMatrix::from_row_slice(2, 2, &[re(1.0), re(1.0), re(0.0), re(1.0)]);
        let lambda = compose(&theta, &shear).unwrap();
        let rep = transition_operator(&lambda, &theta, DEFAULT_TOL).unwrap();
        assert!(linalg::spectral_norm(&(&rep.matrix - &shear)) < 1e-12);
        assert!(rep.residual <= 1e-12);
        // Gram spectrum of [[1,1],[1,2]] is (3 ± √5)/2.
        let (a, b) = lambda.frame_bounds();
        let golden = 5.0f64.sqrt();
        assert!((a - (3.0 - golden) / 2.0).abs() < 1e-12);
        assert!((b - (3.0 + golden) / 2.0).abs() < 1e-12);
        assert!((rep.lower_gram - a).abs() < 1e-12);
        assert!((rep.upper_gram - b).abs() < 1e-12);
    }

    #[test]
    fn transition_classifies_scaling() {
        let theta = coordinate_onb();
        let two = diag(&[2.0, 2.0]);
        let lambda = compose(&theta, &two).unwrap();
        let rep = transition_operator(&lambda, &theta, DEFAULT_TOL).unwrap();
        assert!(rep.class.is_invertible);
        assert!(!rep.class.is_isometry);
        assert!(linalg::spectral_norm(&(&rep.matrix - &two)) < 1e-12);
    }

    #[test]
    fn transition_rejects_non_orthonormal_basis() {
        let theta = coordinate_onb();
        let not_basis = compose(&theta, &diag(&[2.0, 1.0])).unwrap();
        let err = transition_operator(&theta, &not_basis, DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, FrameError::NotOrthonormalBasis { .. }));
    }

    #[test]
    fn transition_rejects_layout_mismatch() {
        let theta = coordinate_onb();
        let other = GFrameFamily::new(
            2,
            MeasureSpace::new(vec![1.0]).unwrap(),
            vec![CMatrix::identity(2, 2)],
        )
        .unwrap();
        assert!(matches!(
            transition_operator(&other, &theta, DEFAULT_TOL),
            Err(FrameError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let theta = coordinate_onb();
        // identity leaves the family unchanged
        let same = compose(&theta, &CMatrix::identity(2, 2)).unwrap();
        assert!(theta.blockwise_distance(&same).unwrap() == 0.0);

        // permutation stays an orthonormal basis
        let swap = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)]);
        let swapped = compose(&theta, &swap).unwrap();
        let cert = swapped.certify(DEFAULT_TOL).unwrap();
        assert!(cert.is_orthonormal_basis);
        assert_eq!(swapped.block(0), &CMatrix::from_row_slice(1, 2, &[re(0.0), re(1.0)]));

        // rank-one projector kills completeness
        let proj = compose(&theta, &diag(&[1.0, 0.0])).unwrap();
        let (complete, rank) = completeness_check(&proj, DEFAULT_TOL).unwrap();
        assert!(!complete);
        assert_eq!(rank, 1);
    }

    #[test]
    fn classify_transition_examples() {
        let cls = classify_transition(&CMatrix::identity(2, 2), DEFAULT_TOL).unwrap();
        assert!(cls.is_unitary && cls.is_isometry && cls.is_invertible);
        assert!((cls.alpha - 1.0).abs() < 1e-14);

        let cls = classify_transition(&diag(&[1.0, 0.0]), DEFAULT_TOL).unwrap();
        assert!(!cls.is_injective && !cls.is_invertible);
        assert_eq!(cls.alpha, 0.0);

        let cls = classify_transition(&diag(&[1.0, 2.0]), DEFAULT_TOL).unwrap();
        assert!(cls.is_invertible && !cls.is_isometry);
        assert!((cls.alpha - 1.0).abs() < 1e-14);
        assert!((cls.sigma_max - 2.0).abs() < 1e-14);
    }

    #[test]
    fn classify_transition_rejects_bad_input() {
        assert!(matches!(
            classify_transition(&CMatrix::identity(2, 2), 0.0),
            Err(FrameError::InvalidTolerance { .. })
        ));
        assert!(matches!(
            classify_transition(&CMatrix::zeros(2, 3), DEFAULT_TOL),
            Err(FrameError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn completeness_examples() {
        let (complete, rank) = completeness_check(&coordinate_onb(), DEFAULT_TOL).unwrap();
        assert!(complete);
        assert_eq!(rank, 2);

        let row = GFrameFamily::new(
            2,
            MeasureSpace::new(vec![1.0]).unwrap(),
            vec![CMatrix::from_row_slice(1, 2, &[re(1.0), re(1.0)])],
        )
        .unwrap();
        let (complete, rank) = completeness_check(&row, DEFAULT_TOL).unwrap();
        assert!(!complete);
        assert_eq!(rank, 1);
    }

    #[test]
    fn law_report_identity_and_singular() {
        let theta = coordinate_onb();
        let rep = verify_composition_laws(&theta, &CMatrix::identity(2, 2), DEFAULT_TOL).unwrap();
        assert!(rep.all_hold());
        assert!(rep.certificate.is_orthonormal_basis);
        assert!(rep.recovery_gap < 1e-12);

        let rep = verify_composition_laws(&theta, &diag(&[1.0, 0.0]), DEFAULT_TOL).unwrap();
        assert!(rep.all_hold());
        assert!(!rep.certificate.is_frame);
        assert!(!rep.transition.is_injective);
    }

    #[test]
    fn law_report_diagonal_bounds() {
        let theta = coordinate_onb();
        let rep = verify_composition_laws(&theta, &diag(&[1.0, 2.0]), DEFAULT_TOL).unwrap();
        assert!(rep.all_hold());
        assert!((rep.certificate.lower_bound - 1.0).abs() < 1e-12);
        assert!((rep.certificate.upper_bound - 4.0).abs() < 1e-12);
    }
}
