//! Command-line surface of the `killing` binary.
//!
//! Exit codes: `0` success or verification pass, `1` verification failure, `2` input error.

pub mod report;
pub mod spec;
mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use report::Report;
pub use spec::{FieldSpec, LoadedField};
pub use verify::verify;

use crate::{
    axixi, classify, compactness_report, extendability_report, fit_ambient_killing, roundness_test,
    shape_operator, FieldSampleSet, LocusKind, Tolerances,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] crate::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "killing",
    version,
    about = "Killing fields of constant length: frames, loci, geometry and fits"
)]
pub struct Cli {
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Relative cutoff for zero eigenvalues of -R^2.
    #[arg(long, global = true)]
    pub tol_zero_freq_rel: Option<f64>,
    /// Absolute locus membership tolerance.
    #[arg(long, global = true)]
    pub tol_membership: Option<f64>,
    /// Relative off-diagonal threshold for the Jacobi eigensolver.
    #[arg(long, global = true)]
    pub tol_eig_convergence: Option<f64>,
    /// Finite-difference step.
    #[arg(long, global = true)]
    pub tol_fd_step: Option<f64>,
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<Tolerances, CliError> {
        let mut t = Tolerances::default();
        if let Some(v) = self.tol_zero_freq_rel {
            t.zero_freq_rel = v;
        }
        if let Some(v) = self.tol_membership {
            t.membership_tol = v;
        }
        if let Some(v) = self.tol_eig_convergence {
            t.eig_convergence = v;
        }
        if let Some(v) = self.tol_fd_step {
            t.fd_step = v;
        }
        if let Some(v) = self.tol_rank {
            t.rank_tol = v;
        }
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical frame of a field.
    Canonicalize { input: PathBuf },
    /// Classify the constant-length locus.
    Classify {
        input: PathBuf,
        #[arg(long)]
        length: f64,
    },
    /// Sample points on the locus as CSV.
    Sample {
        input: PathBuf,
        #[arg(long)]
        length: f64,
        #[arg(short = 'n', long = "count", default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        kernel_box: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shape operator and g(A xi, xi) at a locus point.
    Geometry {
        input: PathBuf,
        #[arg(long)]
        length: f64,
        /// Comma-separated ambient coordinates.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sample_seed")]
        point: Option<String>,
        /// Use the first locus sample drawn with this seed.
        #[arg(long)]
        sample_seed: Option<u64>,
        /// Samples used for the roundness test.
        #[arg(long, default_value_t = 1000)]
        roundness_samples: usize,
    },
    /// Run the verification suite for this field.
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
    },
    /// Fit an ambient Killing field to sampled vectors.
    Fit {
        /// CSV with 2m columns: point coordinates, then vector components.
        #[arg(long)]
        samples: PathBuf,
        /// Also certify that the samples lie on the fitted field's locus at this speed.
        #[arg(long)]
        length: Option<f64>,
        /// Write the fitted field as a JSON field spec.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a successful command invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

pub fn load_spec(path: &Path) -> Result<LoadedField, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    FieldSpec::parse(&text)?.load()
}

fn check_length(length: f64) -> Result<(), CliError> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(CliError::Input(format!(
            "--length must be positive, got {length}"
        )));
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let tol = cli.tol.resolve()?;
    match &cli.command {
        Command::Canonicalize { input } => {
            let loaded = load_spec(input)?;
            write!(out, "{}", canonicalize_report(&loaded, &tol)?.render())?;
        }
        Command::Classify { input, length } => {
            check_length(*length)?;
            let loaded = load_spec(input)?;
            write!(out, "{}", classify_report(&loaded, *length, &tol)?.render())?;
        }
        Command::Sample {
            input,
            length,
            count,
            seed,
            kernel_box,
            out: path,
        } => {
            check_length(*length)?;
            if !(*kernel_box > 0.0) {
                return Err(CliError::Input(format!(
                    "--kernel-box must be positive, got {kernel_box}"
                )));
            }
            let frame = load_spec(input)?.frame(&tol)?;
            let locus = classify(&frame, *length, &tol)?;
            let points = locus.sample(*count, *seed, *kernel_box)?;
            let csv = points_csv(&points)?;
            match path {
                Some(p) => {
                    fs::write(p, &csv)?;
                    let mut r = Report::new("sample");
                    r.text("variant", locus.kind().to_string())
                        .int("count", points.len())
                        .int("columns", frame.ambient_dim())
                        .text("out", p.display().to_string());
                    write!(out, "{}", r.render())?;
                }
                None => write!(out, "{csv}")?,
            }
        }
        Command::Geometry {
            input,
            length,
            point,
            sample_seed,
            roundness_samples,
        } => {
            check_length(*length)?;
            let loaded = load_spec(input)?;
            let r = geometry_report(
                &loaded,
                *length,
                point.as_deref(),
                *sample_seed,
                *roundness_samples,
                &tol,
            )?;
            write!(out, "{}", r.render())?;
        }
        Command::Verify { input, length } => {
            check_length(*length)?;
            let field = load_spec(input)?.field();
            let (r, ok) = verify(&field, *length, &tol)?;
            write!(out, "{}", r.render())?;
            if !ok {
                return Ok(Outcome::VerificationFailed);
            }
        }
        Command::Fit {
            samples,
            length,
            out: path,
        } => {
            if let Some(l) = length {
                check_length(*l)?;
            }
            let set = read_samples(samples)?;
            let r = fit_report(&set, *length, &tol)?;
            if let Some(p) = path {
                let fit = fit_ambient_killing(&set, &tol)?;
                let json = serde_json::to_string_pretty(&FieldSpec::from_field(&fit.field))
                    .map_err(|e| CliError::Input(e.to_string()))?;
                fs::write(p, json + "\n")?;
            }
            write!(out, "{}", r.render())?;
        }
    }
    Ok(Outcome::Success)
}

pub fn canonicalize_report(loaded: &LoadedField, tol: &Tolerances) -> Result<Report, CliError> {
    let frame = loaded.frame(tol)?;
    let mut r = Report::new("canonicalize");
    r.int("ambient_dim", frame.ambient_dim())
        .int("rotation_count", frame.rotation_count())
        .list("frequencies", frame.frequencies())
        .int("kernel_dim", frame.kernel_dim())
        .list("v_ker", frame.v_ker())
        .num("v_ker_norm", frame.v_ker_norm())
        .list("center", frame.center());
    for (j, pl) in frame.planes().iter().enumerate() {
        r.list(&format!("plane.{j}.e"), &pl.e)
            .list(&format!("plane.{j}.f"), &pl.f);
    }
    for (i, k) in frame.kernel_basis().iter().enumerate() {
        r.list(&format!("kernel.{i}"), k);
    }
    Ok(r)
}

pub fn classify_report(
    loaded: &LoadedField,
    length: f64,
    tol: &Tolerances,
) -> Result<Report, CliError> {
    let frame = loaded.frame(tol)?;
    let m = frame.ambient_dim();
    let locus = classify(&frame, length, tol)?;
    let cr = compactness_report(m, &frame, length, tol)?;
    let summary = match (locus.kind(), locus.intrinsic_dim()) {
        (LocusKind::Empty, _) => "Empty".to_string(),
        (LocusKind::Affine, _) if frame.rotation_count() == 0 => format!("Affine: all of R^{m}"),
        (LocusKind::Affine, Some(d)) => format!("Affine: dim {d} in R^{m}"),
        (LocusKind::EllipsoidCylinder, Some(d)) => format!(
            "EllipsoidCylinder, {}, dim {d} in R^{m}",
            if locus.is_compact() {
                "compact"
            } else {
                "non-compact"
            }
        ),
        _ => unreachable!("non-empty loci have a dimension"),
    };
    let mut r = Report::new("classify");
    r.int("ambient_dim", m)
        .num("length", length)
        .text("variant", locus.kind().to_string())
        .text("summary", summary)
        .int("rotation_count", frame.rotation_count())
        .int("kernel_dim", frame.kernel_dim())
        .list("frequencies", frame.frequencies())
        .num("v_ker_norm", frame.v_ker_norm())
        .opt_num("radius_squared", locus.radius_squared())
        .flag("compact", locus.is_compact());
    match locus.intrinsic_dim() {
        Some(d) => r.int("intrinsic_dim", d),
        None => r.text("intrinsic_dim", "none"),
    };
    r.text("parity_note", cr.parity_note)
        .flag("surface_case", cr.surface_case);
    if let Some(note) = cr.surface_note {
        r.text("surface_note", note);
    }
    Ok(r)
}

pub fn geometry_report(
    loaded: &LoadedField,
    length: f64,
    point: Option<&str>,
    sample_seed: Option<u64>,
    roundness_samples: usize,
    tol: &Tolerances,
) -> Result<Report, CliError> {
    let frame = loaded.frame(tol)?;
    let locus = classify(&frame, length, tol)?;
    if !locus.is_compact() {
        return Err(CliError::Input(format!(
            "geometry needs a compact locus; this one is {} with kernel dimension {}",
            locus.kind(),
            locus.kernel_dim()
        )));
    }
    let p = match point {
        Some(text) => parse_point(text, frame.ambient_dim())?,
        None => locus.sample(1, sample_seed.unwrap_or(0), 1.0)?.remove(0),
    };
    let shape = shape_operator(&locus, &p, tol)?;
    let (unnormalized, unit) = axixi(&locus, &p, tol)?;
    let round = roundness_test(&locus, roundness_samples, sample_seed.unwrap_or(0), 1e-9)?;

    let mut r = Report::new("geometry");
    r.int("ambient_dim", frame.ambient_dim())
        .num("length", length)
        .list("point", &shape.point)
        .list("normal_raw", &shape.normal_raw)
        .list("normal_unit", &shape.normal_unit)
        .int("tangent_dim", shape.tangent_basis.len());
    for (a, row) in shape.shape_matrix.to_rows().iter().enumerate() {
        r.list(&format!("shape_matrix.{a}"), row);
    }
    r.list("principal_curvatures", &shape.principal_curvatures)
        .int("rank", shape.rank)
        .num("axixi_paper", unnormalized)
        .num("axixi_unit", unit)
        .flag("is_round", round.is_round)
        .num("omega_spread", round.omega_spread)
        .int("roundness_samples", round.samples)
        .num("axixi_spread", round.axixi_spread)
        .num("axixi_unit_spread", round.axixi_unit_spread);
    Ok(r)
}

pub fn fit_report(
    set: &FieldSampleSet<f64>,
    length: Option<f64>,
    tol: &Tolerances,
) -> Result<Report, CliError> {
    let fit = fit_ambient_killing(set, tol)?;
    let mut r = Report::new("fit");
    r.int("samples", set.len())
        .int("dimension", set.dim())
        .num("residual_rms", fit.residual_rms)
        .int("nullity", fit.nullity);
    for (i, row) in fit.field.skew().to_rows().iter().enumerate() {
        r.list(&format!("skew.{i}"), row);
    }
    r.list("translation", fit.field.translation());
    let spec = serde_json::to_string(&FieldSpec::from_field(&fit.field))
        .map_err(|e| CliError::Input(e.to_string()))?;
    r.text("field_spec", spec);
    if let Some(l) = length {
        let ext = extendability_report(set, l, tol)?;
        r.num("length", l)
            .text("locus_variant", ext.locus_kind.to_string())
            .num("max_speed_deviation", ext.max_speed_deviation)
            .num("max_membership_defect", ext.max_membership_defect)
            .flag("locus_consistency", ext.locus_consistency);
    }
    Ok(r)
}

fn parse_point(text: &str, m: usize) -> Result<Vec<f64>, CliError> {
    let p: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Input(format!("bad coordinate `{s}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if p.len() != m {
        return Err(CliError::Input(format!(
            "--point needs {m} coordinates, found {}",
            p.len()
        )));
    }
    Ok(p)
}

/// One row per point, coordinates with 17 significant digits, no header.
pub fn points_csv(points: &[Vec<f64>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for p in points {
        w.write_record(p.iter().map(|x| report::num(*x)))
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

/// Reads `point..., vector...` rows. A first row that does not parse as numbers is a header.
pub fn read_samples(path: &Path) -> Result<FieldSampleSet<f64>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut points = Vec::new();
    let mut vectors = Vec::new();
    let mut width = None;
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("bad csv: {e}")))?;
        let vals: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        let vals = match vals {
            Ok(v) => v,
            Err(_) if line == 0 => continue,
            Err(e) => return Err(CliError::Input(format!("row {}: {e}", line + 1))),
        };
        if vals.len() % 2 != 0 || vals.is_empty() {
            return Err(CliError::Input(format!(
                "row {}: expected 2m columns, found {}",
                line + 1,
                vals.len()
            )));
        }
        if *width.get_or_insert(vals.len()) != vals.len() {
            return Err(CliError::Input(format!(
                "row {}: inconsistent column count",
                line + 1
            )));
        }
        let m = vals.len() / 2;
        points.push(vals[..m].to_vec());
        vectors.push(vals[m..].to_vec());
    }
    if points.is_empty() {
        return Err(CliError::Input("sample file has no rows".into()));
    }
    Ok(FieldSampleSet::new(points, vectors)?)
}
