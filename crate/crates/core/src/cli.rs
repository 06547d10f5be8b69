//! Command-line front end. Every subcommand prints one JSON document with the
//! result and a run manifest. Exit codes: 0 pass, 1 mathematical failure
//! (refutation, asymmetry, nonzero boundary sum), 2 malformed input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arrangement::verify_k_tiling_exact_2d;
use crate::boundary::{apply_frame, facet_normal_frames, sample_frame_translate, Frame};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::fourier::{hat_indicator, hat_quadrature};
use crate::io::{multiset_json, parse_multiset, parse_polytope, polytope_json, to_pretty};
use crate::lattice::TranslationMultiset;
use crate::polytope::RationalPolytope;
use crate::rational::{format_scalar, Vector};
use crate::solid_angle::{AngleOptions, SolidAngles, DEFAULT_MC_SAMPLES};
use crate::symmetry::minkowski_verdict;
use crate::tiling::{
    compute_k_rational, verify_k_tiling_sampled, DEFAULT_MAX_ATTEMPTS, DEFAULT_SEED,
};

#[derive(Parser, Debug)]
#[command(
    name = "multitile",
    version,
    about = "Exact multi-tiling checks for rational polytopes"
)]
struct Cli {
    /// Add wall-clock timing to the manifest (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Central symmetry of the body and of every facet.
    CheckSymmetry { polytope: PathBuf },
    /// Lattice (1/N)Z^d and multiplicity k for a symmetric rational polytope.
    ComputeK { polytope: PathBuf },
    /// Decide whether P k-tiles with the multiset.
    Verify {
        polytope: PathBuf,
        /// Multiset JSON; defaults to the integer lattice.
        #[arg(long)]
        lambda: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Exhaustive check over the critical-line arrangement (planar only).
        #[arg(long)]
        exact_2d: bool,
        /// Write an SVG of the translates over one period (planar only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Signed volume and signed multiset counts of iterated boundaries.
    BoundaryCheck {
        polytope: PathBuf,
        #[arg(long)]
        lambda: Option<PathBuf>,
        /// Directions separated by `;`, e.g. "1,0;0,1". Defaults to all
        /// facet-normal frames of size 1 and 2.
        #[arg(long, allow_hyphen_values = true)]
        frame: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Sum of solid angles of P+v at the multiset points.
    AngleSum {
        polytope: PathBuf,
        #[arg(long)]
        lambda: Option<PathBuf>,
        /// Translate, e.g. "1/2,0"; defaults to the origin.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Samples per Monte Carlo cone estimate (4D vertices only).
        #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
        mc_samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Fourier transform of the indicator of P at one frequency.
    Fourier {
        polytope: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Also evaluate by numerical quadrature and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// List the bundled fixtures, optionally writing them as JSON files.
    Fixtures {
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct InputRecord {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<InputRecord>,
    seed: Option<u64>,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Value>,
}

struct Context {
    inputs: Vec<InputRecord>,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| {
            Error::parse(path.display().to_string(), format!("cannot read file: {e}"))
        })?;
        self.inputs.push(InputRecord {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).map_err(|_| Error::parse(path.display().to_string(), "not UTF-8"))
    }

    fn polytope(&mut self, path: &Path) -> Result<RationalPolytope> {
        let text = self.read(path)?;
        parse_polytope(&text).map_err(|e| prefix_field(e, path))
    }

    fn multiset(&mut self, path: Option<&Path>, dim: usize) -> Result<TranslationMultiset> {
        let Some(path) = path else {
            return Ok(TranslationMultiset::integer_lattice(dim));
        };
        let text = self.read(path)?;
        let m = parse_multiset(&text).map_err(|e| prefix_field(e, path))?;
        if m.dim() != dim {
            return Err(Error::parse(
                format!("{}: components", path.display()),
                format!("multiset has dimension {}, polytope has {dim}", m.dim()),
            ));
        }
        Ok(m)
    }
}

fn prefix_field(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { field, message } => {
            Error::parse(format!("{}: {field}", path.display()), message)
        }
        other => Error::parse(path.display().to_string(), other.to_string()),
    }
}

fn arg_vector(flag: &str, s: &str, dim: usize) -> Result<Vector> {
    let v = Vector::parse(s).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(flag, message),
        other => Error::parse(flag, other.to_string()),
    })?;
    if v.dim() != dim {
        return Err(Error::parse(
            flag,
            format!("expected {dim} coordinates, found {}", v.dim()),
        ));
    }
    Ok(v)
}

/// Whether an error reflects bad input (exit 2) rather than a mathematical
/// outcome (exit 1).
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::Io(_)
            | Error::DimensionMismatch { .. }
            | Error::DimensionUnsupported { .. }
            | Error::DegenerateInput(_)
            | Error::ZeroDirection
            | Error::NonOrthogonalDirection { .. }
            | Error::EmptyInput
            | Error::SingularBasis
    )
}

struct Output {
    result: Value,
    passed: bool,
    seed: Option<u64>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result types serialize")
}

fn check_symmetry(ctx: &mut Context, polytope: &Path) -> Result<Output> {
    let p = ctx.polytope(polytope)?;
    let verdict = minkowski_verdict(&p);
    Ok(Output {
        passed: verdict.passed(),
        result: to_value(&verdict),
        seed: None,
    })
}

fn compute_k(ctx: &mut Context, polytope: &Path) -> Result<Output> {
    let p = ctx.polytope(polytope)?;
    let (result, passed) = match compute_k_rational(&p) {
        Ok(rk) => (to_value(&rk), true),
        Err(e @ (Error::SymmetryPreconditionFailed | Error::InconsistentCounts { .. })) => {
            (json!({ "error": e.to_string() }), false)
        }
        Err(e) => return Err(e),
    };
    Ok(Output {
        result,
        passed,
        seed: Some(DEFAULT_SEED),
    })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    ctx: &mut Context,
    polytope: &Path,
    lambda: Option<&Path>,
    trials: u64,
    seed: u64,
    exact_2d: bool,
    svg: Option<&Path>,
) -> Result<Output> {
    let p = ctx.polytope(polytope)?;
    let m = ctx.multiset(lambda, p.dim())?;
    let report = if exact_2d {
        verify_k_tiling_exact_2d(&p, &m)?
    } else {
        verify_k_tiling_sampled(&p, &m, trials, seed)?
    };
    if let Some(path) = svg {
        std::fs::write(path, crate::svg::render(&p, &m)?)?;
    }
    Ok(Output {
        passed: report.k().is_some(),
        result: to_value(&report),
        seed: report.seed,
    })
}

fn boundary_check(
    ctx: &mut Context,
    polytope: &Path,
    lambda: Option<&Path>,
    frame: Option<&str>,
    trials: u64,
    seed: u64,
) -> Result<Output> {
    let p = ctx.polytope(polytope)?;
    let m = ctx.multiset(lambda, p.dim())?;
    let frames = match frame {
        Some(s) => {
            let f = Frame::parse(s).map_err(|e| Error::parse("--frame", e.to_string()))?;
            if f.directions().iter().any(|n| n.dim() != p.dim()) {
                return Err(Error::parse(
                    "--frame",
                    format!("directions must have {} coordinates", p.dim()),
                ));
            }
            vec![f]
        }
        None => facet_normal_frames(&p),
    };
    let mut passed = true;
    let mut reports = Vec::with_capacity(frames.len());
    for (fi, frame) in frames.iter().enumerate() {
        let sum = apply_frame(&p, frame)?;
        let volume = sum.signed_volume();
        passed &= num_traits::Zero::is_zero(&volume);
        let mut translates = Vec::with_capacity(trials as usize);
        let mut sums = Vec::with_capacity(trials as usize);
        for t in 0..trials {
            // Streams are disjoint across frames.
            let index = (fi as u64) << 32 | t;
            let v = sample_frame_translate(&p, frame, &m, seed, index, DEFAULT_MAX_ATTEMPTS)?;
            let s = sum.lambda_sum(&m, &v)?;
            passed &= s == 0;
            translates.push(v);
            sums.push(s);
        }
        reports.push(json!({
            "frame": to_value(&frame.directions()),
            "terms": sum.terms().count(),
            "signedVolume": format_scalar(&volume),
            "translates": to_value(&translates),
            "sums": sums,
        }));
    }
    Ok(Output {
        result: json!({ "frames": reports, "allZero": passed }),
        passed,
        seed: Some(seed),
    })
}

fn angle_sum(
    ctx: &mut Context,
    polytope: &Path,
    lambda: Option<&Path>,
    v: Option<&str>,
    mc_samples: u64,
    seed: u64,
) -> Result<Output> {
    let p = ctx.polytope(polytope)?;
    let m = ctx.multiset(lambda, p.dim())?;
    let v = match v {
        Some(s) => arg_vector("--v", s, p.dim())?,
        None => Vector::zeros(p.dim()),
    };
    if mc_samples == 0 {
        return Err(Error::parse("--mc-samples", "must be at least 1"));
    }
    let angles = SolidAngles::new(&p, AngleOptions { mc_samples, seed });
    let sum = angles.sum(&m, &v);
    Ok(Output {
        result: to_value(&sum),
        passed: true,
        seed: Some(seed),
    })
}

fn fourier(ctx: &mut Context, polytope: &Path, xi: &str, oracle: bool, tol: f64) -> Result<Output> {
    let p = ctx.polytope(polytope)?;
    let xi = arg_vector("--xi", xi, p.dim())?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::parse("--tol", "must be positive"));
    }
    let h = hat_indicator(&p, &xi)?;
    let mut result = to_value(&h);
    let mut passed = true;
    if oracle {
        let q = hat_quadrature(&p, &xi, tol)?;
        let agrees = h.distance(&q) <= h.error_bound + q.error_bound + tol;
        passed = agrees;
        let mut o = to_value(&q);
        o["agrees"] = Value::Bool(agrees);
        result["oracle"] = o;
    }
    Ok(Output {
        result,
        passed,
        seed: None,
    })
}

fn fixtures_cmd(emit: Option<&Path>) -> Result<Output> {
    let all = fixtures::all();
    let mut listing = Vec::with_capacity(all.len());
    for f in &all {
        let mut entry = json!({
            "name": f.name,
            "dim": f.polytope.dim(),
            "polytope": format!("{}.json", f.name),
            "multiset": format!("z{}.json", f.polytope.dim()),
            "expected": to_value(&f.expected),
        });
        if let Some(dir) = emit {
            std::fs::create_dir_all(dir)?;
            std::fs::write(
                dir.join(format!("{}.json", f.name)),
                to_pretty(&polytope_json(&f.polytope)),
            )?;
            let z = dir.join(format!("z{}.json", f.polytope.dim()));
            std::fs::write(z, to_pretty(&multiset_json(&f.multiset)))?;
        } else {
            entry["vertices"] = polytope_json(&f.polytope)["vertices"].clone();
        }
        listing.push(entry);
    }
    if let Some(dir) = emit {
        std::fs::write(
            dir.join("fixtures.json"),
            to_pretty(&Value::Array(listing.clone())),
        )?;
    }
    Ok(Output {
        result: Value::Array(listing),
        passed: true,
        seed: None,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckSymmetry { .. } => "check-symmetry",
        Command::ComputeK { .. } => "compute-k",
        Command::Verify { .. } => "verify",
        Command::BoundaryCheck { .. } => "boundary-check",
        Command::AngleSum { .. } => "angle-sum",
        Command::Fourier { .. } => "fourier",
        Command::Fixtures { .. } => "fixtures",
    }
}

fn dispatch(ctx: &mut Context, c: &Command) -> Result<Output> {
    match c {
        Command::CheckSymmetry { polytope } => check_symmetry(ctx, polytope),
        Command::ComputeK { polytope } => compute_k(ctx, polytope),
        Command::Verify {
            polytope,
            lambda,
            trials,
            seed,
            exact_2d,
            svg,
        } => verify(
            ctx,
            polytope,
            lambda.as_deref(),
            *trials,
            *seed,
            *exact_2d,
            svg.as_deref(),
        ),
        Command::BoundaryCheck {
            polytope,
            lambda,
            frame,
            trials,
            seed,
        } => boundary_check(
            ctx,
            polytope,
            lambda.as_deref(),
            frame.as_deref(),
            *trials,
            *seed,
        ),
        Command::AngleSum {
            polytope,
            lambda,
            v,
            mc_samples,
            seed,
        } => angle_sum(
            ctx,
            polytope,
            lambda.as_deref(),
            v.as_deref(),
            *mc_samples,
            *seed,
        ),
        Command::Fourier {
            polytope,
            xi,
            oracle,
            tol,
        } => fourier(ctx, polytope, xi, *oracle, *tol),
        Command::Fixtures { emit } => fixtures_cmd(emit.as_deref()),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    let mut ctx = Context { inputs: Vec::new() };
    let name = command_name(&cli.command);
    match dispatch(&mut ctx, &cli.command) {
        Ok(out) => {
            let manifest = RunManifest {
                command: name.to_string(),
                inputs: ctx.inputs,
                seed: out.seed,
                version: env!("CARGO_PKG_VERSION"),
                timing: cli
                    .timing
                    .then(|| json!({ "elapsedMs": start.elapsed().as_secs_f64() * 1e3 })),
            };
            let doc = json!({
                "command": name,
                "result": out.result,
                "manifest": to_value(&manifest),
            });
            CliOutcome {
                code: if out.passed { 0 } else { 1 },
                stdout: to_pretty(&doc),
                stderr: String::new(),
            }
        }
        Err(e) => CliOutcome {
            code: if is_input_error(&e) { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
