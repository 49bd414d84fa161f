//! On-disk formats and report rendering.
//!
//! Complex numbers are always serialized as two-element `[re, im]` arrays,
//! never strings. Floats go through serde_json's shortest round-trip
//! encoding, so write-then-read reproduces every family bit for bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use cgframe_core::{
    CFrame, CMatrix, Complex64, EquivalenceReport, FrameCertificate, GFrameFamily, MeasureSpace,
    TransitionReport,
};

use crate::Failure;

/// One operator block plus its atom weight.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomSpec {
    pub weight: f64,
    /// Row-major matrix, each entry a `[re, im]` pair.
    pub block: Vec<Vec<[f64; 2]>>,
}

/// The frame-family interchange format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpecFile {
    pub ambient_dim: usize,
    pub atoms: Vec<AtomSpec>,
}

impl FrameSpecFile {
    pub fn from_family(family: &GFrameFamily) -> Self {
        let atoms = (0..family.atom_count())
            .map(|j| {
                let block = family.block(j);
                let rows = (0..block.nrows())
                    .map(|r| {
                        (0..block.ncols())
                            .map(|c| {
                                let z = block[(r, c)];
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect();
                AtomSpec {
                    weight: family.measure().weight(j),
                    block: rows,
                }
            })
            .collect();
        FrameSpecFile {
            ambient_dim: family.ambient_dim(),
            atoms,
        }
    }

    /// Validates shapes field by field and builds the family.
    pub fn into_family(self) -> Result<GFrameFamily, Failure> {
        if self.atoms.is_empty() {
            return Err(Failure::validation("atoms: list is empty"));
        }
        let n = self.ambient_dim;
        let mut weights = Vec::with_capacity(self.atoms.len());
        let mut blocks = Vec::with_capacity(self.atoms.len());
        for (j, atom) in self.atoms.iter().enumerate() {
            if atom.block.is_empty() {
                return Err(Failure::validation(format!("atoms[{j}].block: no rows")));
            }
            let mut entries = Vec::with_capacity(atom.block.len() * n);
            for (r, row) in atom.block.iter().enumerate() {
                if row.len() != n {
                    return Err(Failure::validation(format!(
                        "atoms[{j}].block[{r}]: expected {n} entries, found {}",
                        row.len()
                    )));
                }
                for &[re, im] in row {
                    entries.push(Complex64::new(re, im));
                }
            }
            weights.push(atom.weight);
            blocks.push(CMatrix::from_row_slice(atom.block.len(), n, &entries));
        }
        let measure = MeasureSpace::new(weights).map_err(Failure::from_core_validation)?;
        GFrameFamily::new(n, measure, blocks).map_err(Failure::from_core_validation)
    }
}

/// Flat certificate report: the certificate fields plus provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub tool_version: String,
    pub input_digest: String,
    pub elapsed_ms: f64,
    pub tolerance: f64,
    pub ambient_dim: usize,
    pub atom_count: usize,
    pub coefficient_dim: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub rank: usize,
    pub is_bessel: bool,
    pub is_frame: bool,
    pub is_tight: bool,
    pub is_parseval: bool,
    pub is_complete: bool,
    pub is_riesz_basis: bool,
    pub is_orthonormal_system: bool,
    pub is_orthonormal_basis: bool,
    pub defects: BTreeMap<String, f64>,
}

impl CertificateFile {
    pub fn new(
        cert: &FrameCertificate,
        digest: String,
        elapsed_ms: f64,
        ambient_dim: usize,
        atom_count: usize,
        coefficient_dim: usize,
    ) -> Self {
        CertificateFile {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: digest,
            elapsed_ms,
            tolerance: cert.tolerance,
            ambient_dim,
            atom_count,
            coefficient_dim,
            lower_bound: cert.lower_bound,
            upper_bound: cert.upper_bound,
            rank: cert.rank,
            is_bessel: cert.is_bessel,
            is_frame: cert.is_frame,
            is_tight: cert.is_tight,
            is_parseval: cert.is_parseval,
            is_complete: cert.is_complete,
            is_riesz_basis: cert.is_riesz_basis,
            is_orthonormal_system: cert.is_orthonormal_system,
            is_orthonormal_basis: cert.is_orthonormal_basis,
            defects: cert.defects.clone(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "certificate (tool {}, tolerance {:.2e})\n",
            self.tool_version, self.tolerance
        ));
        out.push_str(&format!("  input     {}\n", self.input_digest));
        out.push_str(&format!(
            "  layout    ambient dim {}, atoms {}, coefficient dim {}\n",
            self.ambient_dim, self.atom_count, self.coefficient_dim
        ));
        out.push_str(&format!(
            "  bounds    A = {}, B = {}\n",
            self.lower_bound, self.upper_bound
        ));
        out.push_str(&format!("  rank      {}\n", self.rank));
        out.push_str(&format!(
            "  classes   bessel {} | frame {} | tight {} | parseval {}\n",
            yn(self.is_bessel),
            yn(self.is_frame),
            yn(self.is_tight),
            yn(self.is_parseval)
        ));
        out.push_str(&format!(
            "            complete {} | riesz {} | ons {} | onb {}\n",
            yn(self.is_complete),
            yn(self.is_riesz_basis),
            yn(self.is_orthonormal_system),
            yn(self.is_orthonormal_basis)
        ));
        out.push_str("  defects   ");
        let mut first = true;
        for (name, value) in &self.defects {
            if !first {
                out.push_str(", ");
            }
            out.push_str(&format!("{name} {value:.2e}"));
            first = false;
        }
        out.push('\n');
        out
    }
}

/// Serialized transition-operator report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionFile {
    pub tool_version: String,
    pub frame_digest: String,
    pub basis_digest: String,
    pub tolerance: f64,
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub residual: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub alpha: f64,
    pub lower_gram: f64,
    pub upper_gram: f64,
    pub is_isometry: bool,
    pub is_unitary: bool,
    pub is_injective: bool,
    pub is_invertible: bool,
}

impl TransitionFile {
    pub fn new(
        report: &TransitionReport,
        frame_digest: String,
        basis_digest: String,
        tolerance: f64,
    ) -> Self {
        TransitionFile {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            frame_digest,
            basis_digest,
            tolerance,
            matrix: matrix_rows(&report.matrix),
            residual: report.residual,
            sigma_min: report.class.sigma_min,
            sigma_max: report.class.sigma_max,
            alpha: report.class.alpha,
            lower_gram: report.lower_gram,
            upper_gram: report.upper_gram,
            is_isometry: report.class.is_isometry,
            is_unitary: report.class.is_unitary,
            is_injective: report.class.is_injective,
            is_invertible: report.class.is_invertible,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "transition operator (tolerance {:.2e})\n",
            self.tolerance
        ));
        out.push_str(&format!("  residual  {:.2e}\n", self.residual));
        out.push_str(&format!(
            "  spectrum  sigma_min = {}, sigma_max = {}, alpha = {}\n",
            self.sigma_min, self.sigma_max, self.alpha
        ));
        out.push_str(&format!(
            "  gram      lower = {}, upper = {}\n",
            self.lower_gram, self.upper_gram
        ));
        out.push_str(&format!(
            "  classes   isometry {} | unitary {} | injective {} | invertible {}\n",
            yn(self.is_isometry),
            yn(self.is_unitary),
            yn(self.is_injective),
            yn(self.is_invertible)
        ));
        for row in &self.matrix {
            out.push_str("  | ");
            for &[re, im] in row {
                out.push_str(&format!("{re:+.6e}{im:+.6e}i  "));
            }
            out.push_str("|\n");
        }
        out
    }
}

/// Manifest written next to the part files of a split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitManifest {
    pub tool_version: String,
    pub kind: String,
    pub tolerance: f64,
    pub frame_digest: String,
    pub basis_digest: String,
    pub coefficients: Vec<f64>,
    pub parts: Vec<String>,
    pub part_classes: Vec<String>,
}

impl SplitManifest {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("split {} (tolerance {:.2e})\n", self.kind, self.tolerance));
        for ((file, class), coeff) in self
            .parts
            .iter()
            .zip(&self.part_classes)
            .zip(&self.coefficients)
        {
            out.push_str(&format!("  {coeff} x {file}  [{class}]\n"));
        }
        out
    }
}

/// Serialized weighted vector family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CFrameFile {
    pub ambient_dim: usize,
    pub items: Vec<CItemSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CItemSpec {
    pub weight: f64,
    pub vector: Vec<[f64; 2]>,
    pub origin: Option<[usize; 2]>,
}

impl CFrameFile {
    pub fn from_cframe(frame: &CFrame) -> Self {
        CFrameFile {
            ambient_dim: frame.ambient_dim(),
            items: frame
                .items()
                .iter()
                .map(|item| CItemSpec {
                    weight: item.weight,
                    vector: item.vector.iter().map(|z| [z.re, z.im]).collect(),
                    origin: item.origin.map(|(j, k)| [j, k]),
                })
                .collect(),
        }
    }

}

/// Equivalence report for an induced flattening.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceFile {
    pub tool_version: String,
    pub input_digest: String,
    pub tolerance: f64,
    pub all_agree: bool,
    pub agreements: BTreeMap<String, bool>,
    pub lower_bound_diff: f64,
    pub upper_bound_diff: f64,
    pub operator_gap: f64,
    pub gframe_lower_bound: f64,
    pub gframe_upper_bound: f64,
    pub cframe_lower_bound: f64,
    pub cframe_upper_bound: f64,
}

impl EquivalenceFile {
    pub fn new(report: &EquivalenceReport, digest: String) -> Self {
        EquivalenceFile {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: digest,
            tolerance: report.tolerance,
            all_agree: report.all_agree,
            agreements: report.agreements.clone(),
            lower_bound_diff: report.lower_bound_diff,
            upper_bound_diff: report.upper_bound_diff,
            operator_gap: report.operator_gap,
            gframe_lower_bound: report.gframe.lower_bound,
            gframe_upper_bound: report.gframe.upper_bound,
            cframe_lower_bound: report.cframe.lower_bound,
            cframe_upper_bound: report.cframe.upper_bound,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "induced-frame equivalence (tolerance {:.2e})\n",
            self.tolerance
        ));
        out.push_str(&format!("  agree     {}\n", yn(self.all_agree)));
        out.push_str("  classes   ");
        let mut first = true;
        for (name, ok) in &self.agreements {
            if !first {
                out.push_str(", ");
            }
            out.push_str(&format!("{name} {}", yn(*ok)));
            first = false;
        }
        out.push('\n');
        out.push_str(&format!(
            "  bounds    operator side ({}, {}), vector side ({}, {})\n",
            self.gframe_lower_bound,
            self.gframe_upper_bound,
            self.cframe_lower_bound,
            self.cframe_upper_bound
        ));
        out.push_str(&format!(
            "  gaps      lower {:.2e}, upper {:.2e}, operator {:.2e}\n",
            self.lower_bound_diff, self.upper_bound_diff, self.operator_gap
        ));
        out
    }
}

fn yn(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn matrix_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| {
                    let z = m[(r, c)];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

/// `sha256:<hex>` digest of raw file bytes.
pub fn digest_bytes(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    let hex: String = out.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
