//! `cgframe`: certify, factorize, split, flatten, and generate cg-frame
//! families stored as JSON frame-spec files.
//!
//! Exit codes:
//! * 0  command ran to completion (a certify run that finds a non-frame
//!      still exits 0; the report carries the verdict)
//! * 2  unreadable, unparseable, or invalid input, including inconsistent
//!      generator specs and bad tolerances
//! * 3  factorize: the second argument failed orthonormal-basis
//!      certification
//! * 4  split: the requested kind's precondition failed (input not a
//!      frame / not a Riesz basis, basis not orthonormal, or no usable
//!      spectral gap on the phase grid)
//! * 5  induce: the operator-side and vector-side certificates disagree,
//!      which indicates an implementation bug and is surfaced loudly
//! * 64 command-line usage error (unknown flag or subcommand, missing
//!      argument)

mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cgframe_core::{
    equivalence_report, induce, onb_plus_riesz_split, parseval_pair_split, riesz_two_onb_split,
    three_onb_split, transition_operator, FrameError, FrameSplit, GFrameFamily, GeneratorSpec,
    LocalBases, LocalDims, TargetClass,
};

use format::{
    digest_bytes, CFrameFile, CertificateFile, EquivalenceFile, FrameSpecFile, SplitManifest,
    TransitionFile,
};

/// A command failure carrying its process exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure::new(2, message)
    }

    fn from_core_validation(err: FrameError) -> Self {
        Failure::new(2, err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "cgframe",
    version,
    about = "Certify, factorize, split, and flatten cg-frame families",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Spectral tolerance used by every classification.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Emit a human-readable report on stdout (default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a frame-spec file against every class.
    Certify {
        input: PathBuf,
        /// Also write the JSON certificate to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the transition operator of FRAME relative to BASIS.
    Factorize {
        frame: PathBuf,
        basis: PathBuf,
        /// Also write the JSON report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose FRAME relative to BASIS into certified parts.
    Split {
        frame: PathBuf,
        basis: PathBuf,
        /// Which decomposition to run.
        #[arg(long, value_enum)]
        kind: SplitKindArg,
        /// Directory receiving the part files and manifest.
        #[arg(long)]
        out: PathBuf,
    },
    /// Flatten a family into its induced vector frame and compare
    /// certificates.
    Induce {
        frame: PathBuf,
        /// Local bases: `identity` or `random:SEED`.
        #[arg(long, default_value = "identity")]
        bases: String,
        /// Write the flattened family to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a family of a target class and write its spec file.
    Generate {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ambient dimension.
        #[arg(long)]
        n: usize,
        /// Comma-separated local dimensions, one per atom.
        #[arg(long)]
        dims: String,
        /// Comma-separated atom weights; defaults to all ones.
        #[arg(long)]
        weights: Option<String>,
        /// Lower frame bound (tight frames use it as the single bound).
        #[arg(long = "A")]
        lower: Option<f64>,
        /// Upper frame bound.
        #[arg(long = "B")]
        upper: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SplitKindArg {
    /// Two Parseval frames.
    ParsevalPair,
    /// Three orthonormal bases.
    ThreeOnb,
    /// Two orthonormal bases (Riesz input).
    TwoOnb,
    /// Orthonormal basis plus Riesz basis.
    OnbRiesz,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Onb,
    Parseval,
    Tight,
    Frame,
    Riesz,
    Incomplete,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::validation(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    let as_json = cli.json;
    match cli.command {
        Command::Certify { input, out } => cmd_certify(&input, tol, as_json, out.as_deref()),
        Command::Factorize { frame, basis, out } => {
            cmd_factorize(&frame, &basis, tol, as_json, out.as_deref())
        }
        Command::Split {
            frame,
            basis,
            kind,
            out,
        } => cmd_split(&frame, &basis, kind, tol, as_json, &out),
        Command::Induce { frame, bases, out } => {
            cmd_induce(&frame, &bases, tol, as_json, out.as_deref())
        }
        Command::Generate {
            class,
            seed,
            n,
            dims,
            weights,
            lower,
            upper,
            out,
        } => cmd_generate(class, seed, n, &dims, weights.as_deref(), lower, upper, &out),
    }
}

/// Reads a frame-spec file, reporting parse errors with line context.
fn load_family(path: &Path) -> Result<(GFrameFamily, String), Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    let digest = digest_bytes(&bytes);
    let spec: FrameSpecFile = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    Ok((spec.into_family()?, digest))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::validation(format!("serialization failed: {e}")))?;
    fs::write(path, body + "\n")
        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(as_json: bool, value: &T, text: String) -> Result<(), Failure> {
    if as_json {
        let body = serde_json::to_string_pretty(value)
            .map_err(|e| Failure::validation(format!("serialization failed: {e}")))?;
        println!("{body}");
    } else {
        print!("{text}");
    }
    Ok(())
}

fn cmd_certify(
    input: &Path,
    tol: f64,
    as_json: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let (family, digest) = load_family(input)?;
    let start = Instant::now();
    let cert = family.certify(tol).map_err(Failure::from_core_validation)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = CertificateFile::new(
        &cert,
        digest,
        elapsed_ms,
        family.ambient_dim(),
        family.atom_count(),
        family.coefficient_dim(),
    );
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    emit(as_json, &report, report.render_text())
}

fn cmd_factorize(
    frame: &Path,
    basis: &Path,
    tol: f64,
    as_json: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let (lambda, frame_digest) = load_family(frame)?;
    let (theta, basis_digest) = load_family(basis)?;
    let report = transition_operator(&lambda, &theta, tol).map_err(|err| match err {
        FrameError::NotOrthonormalBasis { .. } => Failure::new(3, err.to_string()),
        other => Failure::from_core_validation(other),
    })?;
    let file = TransitionFile::new(&report, frame_digest, basis_digest, tol);
    if let Some(path) = out {
        write_json(path, &file)?;
    }
    emit(as_json, &file, file.render_text())
}

fn split_failure(err: FrameError) -> Failure {
    match err {
        FrameError::NotAFrame { .. }
        | FrameError::NotRieszBasis { .. }
        | FrameError::NotOrthonormalBasis { .. }
        | FrameError::DegenerateSpectrumGrid => Failure::new(4, err.to_string()),
        other => Failure::from_core_validation(other),
    }
}

fn cmd_split(
    frame: &Path,
    basis: &Path,
    kind: SplitKindArg,
    tol: f64,
    as_json: bool,
    out_dir: &Path,
) -> Result<(), Failure> {
    let (lambda, frame_digest) = load_family(frame)?;
    let (theta, basis_digest) = load_family(basis)?;
    let split: FrameSplit = match kind {
        SplitKindArg::ParsevalPair => parseval_pair_split(&lambda, &theta, tol),
        SplitKindArg::ThreeOnb => three_onb_split(&lambda, &theta, tol),
        SplitKindArg::TwoOnb => riesz_two_onb_split(&lambda, &theta, tol),
        SplitKindArg::OnbRiesz => onb_plus_riesz_split(&lambda, &theta, tol),
    }
    .map_err(split_failure)?;

    fs::create_dir_all(out_dir)
        .map_err(|e| Failure::validation(format!("{}: {e}", out_dir.display())))?;
    let mut part_files = Vec::new();
    for (index, part) in split.parts.iter().enumerate() {
        let name = format!("part_{}.json", index + 1);
        write_json(&out_dir.join(&name), &FrameSpecFile::from_family(part))?;
        part_files.push(name);
    }
    let kind_name = match kind {
        SplitKindArg::ParsevalPair => "parseval-pair",
        SplitKindArg::ThreeOnb => "three-onb",
        SplitKindArg::TwoOnb => "two-onb",
        SplitKindArg::OnbRiesz => "onb-riesz",
    };
    let manifest = SplitManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        kind: kind_name.to_string(),
        tolerance: tol,
        frame_digest,
        basis_digest,
        coefficients: split.coefficients.clone(),
        parts: part_files,
        part_classes: split
            .kind
            .part_classes()
            .iter()
            .map(|s| s.to_string())
            .collect(),
    };
    write_json(&out_dir.join("manifest.json"), &manifest)?;
    emit(as_json, &manifest, manifest.render_text())
}

fn cmd_induce(
    frame: &Path,
    bases: &str,
    tol: f64,
    as_json: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let (family, digest) = load_family(frame)?;
    let local = parse_bases(bases, family.dims())?;
    let report = equivalence_report(&family, &local, tol).map_err(Failure::from_core_validation)?;
    if let Some(path) = out {
        let flattened = induce(&family, &local).map_err(Failure::from_core_validation)?;
        write_json(path, &CFrameFile::from_cframe(&flattened))?;
    }
    let file = EquivalenceFile::new(&report, digest);
    emit(as_json, &file, file.render_text())?;
    if !report.all_agree {
        return Err(Failure::new(
            5,
            "operator-side and vector-side certificates disagree",
        ));
    }
    Ok(())
}

fn parse_bases(arg: &str, dims: &LocalDims) -> Result<LocalBases, Failure> {
    if arg == "identity" {
        return Ok(LocalBases::identity(dims));
    }
    if let Some(seed) = arg.strip_prefix("random:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| Failure::validation(format!("invalid seed in --bases {arg}")))?;
        return Ok(cgframe_core::random_local_bases(seed, dims));
    }
    Err(Failure::validation(format!(
        "--bases must be `identity` or `random:SEED`, got `{arg}`"
    )))
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    class: ClassArg,
    seed: u64,
    n: usize,
    dims: &str,
    weights: Option<&str>,
    lower: Option<f64>,
    upper: Option<f64>,
    out: &Path,
) -> Result<(), Failure> {
    let dims: Vec<usize> = parse_list(dims, "--dims")?;
    let weights: Vec<f64> = match weights {
        Some(list) => parse_list(list, "--weights")?,
        None => vec![1.0; dims.len()],
    };
    if weights.len() != dims.len() {
        return Err(Failure::validation(format!(
            "--weights has {} entries for {} atoms",
            weights.len(),
            dims.len()
        )));
    }
    let target_class = match class {
        ClassArg::Onb => TargetClass::OrthonormalBasis,
        ClassArg::Parseval => TargetClass::Parseval,
        ClassArg::Tight => {
            let bound = lower.ok_or_else(|| Failure::validation("--class tight needs --A"))?;
            if let Some(b) = upper {
                if b != bound {
                    return Err(Failure::validation("tight frames need --A = --B"));
                }
            }
            TargetClass::Tight { bound }
        }
        ClassArg::Frame => TargetClass::Frame {
            lower: lower.ok_or_else(|| Failure::validation("--class frame needs --A"))?,
            upper: upper.ok_or_else(|| Failure::validation("--class frame needs --B"))?,
        },
        ClassArg::Riesz => TargetClass::Riesz {
            lower: lower.ok_or_else(|| Failure::validation("--class riesz needs --A"))?,
            upper: upper.ok_or_else(|| Failure::validation("--class riesz needs --B"))?,
        },
        ClassArg::Incomplete => TargetClass::Incomplete,
    };
    let spec = GeneratorSpec {
        seed,
        ambient_dim: n,
        dims: LocalDims::new(dims).map_err(Failure::from_core_validation)?,
        weights,
        target_class,
    };
    let family = spec.generate().map_err(Failure::from_core_validation)?;
    write_json(out, &FrameSpecFile::from_family(&family))?;
    println!(
        "wrote {} ({} atoms, ambient dim {}, coefficient dim {})",
        out.display(),
        family.atom_count(),
        family.ambient_dim(),
        family.coefficient_dim()
    );
    Ok(())
}

fn parse_list<T: std::str::FromStr>(list: &str, flag: &str) -> Result<Vec<T>, Failure> {
    list.split(',')
        .map(|item| {
            item.trim()
                .parse::<T>()
                .map_err(|_| Failure::validation(format!("{flag}: cannot parse `{item}`")))
        })
        .collect()
}
