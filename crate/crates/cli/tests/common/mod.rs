//! Helpers shared by the CLI and acceptance suites: running the binary,
//! reading frame-spec files, and seeded random constructions.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};

use cgframe_core::{CMatrix, CVector, Complex64, GFrameFamily, MeasureSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

pub fn cgframe_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cgframe"))
}

pub fn run_ok(args: &[&str]) -> Output {
    let out = cgframe_bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed with {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn exit_code(args: &[&str]) -> i32 {
    cgframe_bin()
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("no signal")
}

/// Mirror of the on-disk frame-spec layout, kept local so the tests parse
/// files independently of the binary's own serializer.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FrameSpecJson {
    pub ambient_dim: usize,
    pub atoms: Vec<AtomJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AtomJson {
    pub weight: f64,
    pub block: Vec<Vec<[f64; 2]>>,
}

pub fn read_spec(path: &Path) -> FrameSpecJson {
    let bytes = std::fs::read(path).expect("spec file readable");
    serde_json::from_slice(&bytes).expect("spec file parses")
}

pub fn spec_to_family(spec: &FrameSpecJson) -> GFrameFamily {
    let n = spec.ambient_dim;
    let weights: Vec<f64> = spec.atoms.iter().map(|a| a.weight).collect();
    let blocks: Vec<CMatrix> = spec
        .atoms
        .iter()
        .map(|a| {
            let entries: Vec<Complex64> = a
                .block
                .iter()
                .flat_map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)))
                .collect();
            CMatrix::from_row_slice(a.block.len(), n, &entries)
        })
        .collect();
    GFrameFamily::new(n, MeasureSpace::new(weights).unwrap(), blocks).unwrap()
}

pub fn family_to_spec(family: &GFrameFamily) -> FrameSpecJson {
    FrameSpecJson {
        ambient_dim: family.ambient_dim(),
        atoms: (0..family.atom_count())
            .map(|j| {
                let block = family.block(j);
                AtomJson {
                    weight: family.measure().weight(j),
                    block: (0..block.nrows())
                        .map(|r| {
                            (0..block.ncols())
                                .map(|c| {
                                    let z = block[(r, c)];
                                    [z.re, z.im]
                                })
                                .collect()
                        })
                        .collect(),
                }
            })
            .collect(),
    }
}

pub fn read_family(path: &Path) -> GFrameFamily {
    spec_to_family(&read_spec(path))
}

pub fn write_family(path: &Path, family: &GFrameFamily) {
    let spec = family_to_spec(family);
    std::fs::write(path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
}

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

/// Orthonormal system with `D = Σ dims ≤ n` and unit weights: orthonormal
/// synthesis columns, Parseval exactly when `D = n`.
pub fn orthonormal_system(rng: &mut ChaCha12Rng, ambient_dim: usize, dims: &[usize]) -> GFrameFamily {
    let total: usize = dims.iter().sum();
    assert!(total <= ambient_dim);
    let q = haar_unitary(rng, ambient_dim);
    let synthesis_adjoint = q.columns(0, total).adjoint();
    let mut blocks = Vec::with_capacity(dims.len());
    let mut offset = 0;
    for &d in dims {
        blocks.push(synthesis_adjoint.rows(offset, d).into_owned());
        offset += d;
    }
    GFrameFamily::new(
        ambient_dim,
        MeasureSpace::new(vec![1.0; dims.len()]).unwrap(),
        blocks,
    )
    .unwrap()
}

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

pub fn random_weights(rng: &mut ChaCha12Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random_range(0.25..4.0)).collect()
}

pub fn local_dims(list: &[usize]) -> cgframe_core::LocalDims {
    cgframe_core::LocalDims::new(list.to_vec()).unwrap()
}

pub fn bits_equal(a: &GFrameFamily, b: &GFrameFamily) -> bool {
    if a.ambient_dim() != b.ambient_dim() || a.atom_count() != b.atom_count() {
        return false;
    }
    let weights_equal = a
        .measure()
        .weights()
        .iter()
        .zip(b.measure().weights())
        .all(|(x, y)| x.to_bits() == y.to_bits());
    weights_equal
        && a.blocks().iter().zip(b.blocks()).all(|(x, y)| {
            x.shape() == y.shape()
                && x.iter().zip(y.iter()).all(|(p, q)| {
                    p.re.to_bits() == q.re.to_bits() && p.im.to_bits() == q.im.to_bits()
                })
        })
}
