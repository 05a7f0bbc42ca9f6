//! `mtensor` command-line frontend: JSON in, JSON out.
//!
//! Exit codes: 0 on success, 1 when the polytope fails validation (or a
//! `verify`/`check-vanishing` check fails), 2 on malformed input or a
//! computation error.

pub mod document;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::adjoint::{
    adjoint, check_vanishing, facet_adjoint, surface_adjoint, VanishingCertificate,
};
use crate::algebra::format_rational;
use crate::oracle::{run_suite, CheckStatus, SuiteOptions};
use crate::polytope::{nonface_subspaces, polygon_nonface_subspaces, Polytope, PolytopeError};
use crate::tensor::{surface_tensor, volume_tensor, Method, TensorError};
use document::{poly_value, rational_value, scalar_value};
pub use document::{polytope_hash, PolytopeDocument, ScalarDoc, TensorDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error(transparent)]
    Validation(PolytopeError),
    #[error(transparent)]
    Computation(#[from] TensorError),
}

impl From<PolytopeError> for CliError {
    fn from(e: PolytopeError) -> Self {
        CliError::Computation(TensorError::Polytope(e))
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Usage(_) => "UsageError",
            Self::Io { .. } => "IoError",
            Self::MalformedInput(_) => "MalformedInput",
            Self::Validation(e) => e.code(),
            Self::Computation(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code(), "message": self.to_string() } })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mtensor",
    version,
    about = "Exact Minkowski tensors of convex polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Polytope document (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Add floating-point renderings next to exact values.
    #[arg(long)]
    float: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a polytope and report its facets.
    Validate(Common),
    /// Adjoint polynomial of the polytope and of each facet.
    Adjoint(Common),
    /// Per-facet terms of the surface adjoint.
    SurfaceAdjoint {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    /// Volume tensor of rank r.
    VolumeTensor {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        r: usize,
    },
    /// Surface tensor of rank r + s.
    SurfaceTensor {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        /// formula, derivative, series or definitional.
        #[arg(long, default_value = "series")]
        method: String,
    },
    /// Certify that adjoints vanish on the non-face subspaces.
    CheckVanishing {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample values per direction; defaults to degree + 1.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run every cross-check on the polytope.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest position rank r checked.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Largest normal rank s checked.
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code with the JSON (or help) text to print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => {
                    let err = CliError::Usage(e.to_string().trim().to_string());
                    (err.exit_code(), pretty(&err.to_json()))
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, value)) => (code, pretty(&value)),
        Err(err) => (err.exit_code(), pretty(&err.to_json())),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// `MTENSOR_THREADS` caps the worker pool; ignored if unset or invalid.
fn configure_threads() {
    if let Some(n) = std::env::var("MTENSOR_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn load(common: &Common) -> Result<(Polytope, String), CliError> {
    let text = std::fs::read_to_string(&common.input).map_err(|e| CliError::Io {
        path: common.input.clone(),
        message: e.to_string(),
    })?;
    let p = PolytopeDocument::parse(&text)?.to_polytope()?;
    let hash = polytope_hash(&p);
    Ok((p, hash))
}

fn dispatch(command: Command) -> Result<(i32, Value), CliError> {
    match command {
        Command::Validate(common) => {
            let (p, hash) = match load(&common) {
                Err(CliError::Validation(e)) => {
                    let err = CliError::Validation(e);
                    let mut v = err.to_json();
                    v["valid"] = json!(false);
                    return Ok((1, v));
                }
                other => other?,
            };
            Ok((0, validate_report(&p, &hash, common.float)))
        }
        Command::Adjoint(common) => {
            let (p, hash) = load(&common)?;
            let facets: Vec<Value> = (0..p.facets().len())
                .map(|i| {
                    json!({
                        "facet": i,
                        "vertex_ids": p.facet(i).vertex_ids(),
                        "adjoint": poly_value(&facet_adjoint(&p, i), common.float),
                    })
                })
                .collect();
            Ok((
                0,
                json!({
                    "polytope_hash": hash,
                    "adjoint": poly_value(&adjoint(&p, None), common.float),
                    "degree_bound": p.num_vertices() - p.dim() - 1,
                    "facet_adjoints": facets,
                }),
            ))
        }
        Command::SurfaceAdjoint { common, s } => {
            let (p, hash) = load(&common)?;
            let sa = surface_adjoint(&p, s);
            let terms: Vec<Value> = sa
                .terms
                .iter()
                .map(|t| {
                    json!({
                        "facet": t.facet,
                        "vertex_ids": p.facet(t.facet).vertex_ids(),
                        "weight": scalar_value(&t.weight, common.float),
                        "adjoint": poly_value(&t.adjoint, common.float),
                        "poly": poly_value(&t.poly, common.float),
                    })
                })
                .collect();
            Ok((
                0,
                json!({
                    "polytope_hash": hash,
                    "s": s,
                    "degree": sa.degree(),
                    "degree_bound": p.num_vertices() - p.dim(),
                    "terms": terms,
                }),
            ))
        }
        Command::VolumeTensor { common, r } => {
            let (p, hash) = load(&common)?;
            let t = volume_tensor(&p, r)?;
            let doc = TensorDocument::new(&t, "barycentric", &hash, common.float);
            Ok((0, serde_json::to_value(doc).expect("serializes")))
        }
        Command::SurfaceTensor {
            common,
            r,
            s,
            method,
        } => {
            let method: Method = method.parse()?;
            let (p, hash) = load(&common)?;
            let t = surface_tensor(&p, r, s, method)?;
            let doc = TensorDocument::new(&t, method.as_str(), &hash, common.float);
            Ok((0, serde_json::to_value(doc).expect("serializes")))
        }
        Command::CheckVanishing {
            common,
            seed,
            samples,
        } => {
            let (p, hash) = load(&common)?;
            let certs = vanishing_certificates(&p, seed, samples)?;
            let all_passed = certs.iter().all(|(_, _, c)| c.passed);
            let items: Vec<Value> = certs
                .iter()
                .map(|(target, facet, c)| certificate_value(target, *facet, c))
                .collect();
            Ok((
                if all_passed { 0 } else { 1 },
                json!({
                    "polytope_hash": hash,
                    "seed": seed,
                    "passed": all_passed,
                    "certificates": items,
                }),
            ))
        }
        Command::Verify {
            common,
            max_degree,
            s,
            seed,
        } => {
            let (p, hash) = load(&common)?;
            let checks = run_suite(
                &p,
                SuiteOptions {
                    max_r: max_degree,
                    max_s: s,
                    seed,
                },
            )?;
            let passed = !checks.iter().any(|c| c.failed());
            let items: Vec<Value> = checks
                .iter()
                .map(|c| {
                    let status = match c.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "fail",
                        CheckStatus::Skipped => "skipped",
                    };
                    json!({ "name": c.name, "status": status, "detail": c.detail })
                })
                .collect();
            Ok((
                if passed { 0 } else { 1 },
                json!({ "polytope_hash": hash, "passed": passed, "checks": items }),
            ))
        }
    }
}

fn validate_report(p: &Polytope, hash: &str, float: bool) -> Value {
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "id": i,
                "vertex_ids": f.vertex_ids(),
                "normal": f.normal().iter().map(format_rational).collect::<Vec<_>>(),
                "norm_sq": rational_value(f.norm_sq(), float),
                "volume": scalar_value(f.volume(), float),
                "triangulation": f.triangulation(),
            })
        })
        .collect();
    json!({
        "valid": true,
        "polytope_hash": hash,
        "dim": p.dim(),
        "num_vertices": p.num_vertices(),
        "simplicial": p.is_simplicial(),
        "volume": rational_value(&p.volume(), float),
        "facets": facets,
    })
}

type Certified = (&'static str, Option<usize>, VanishingCertificate);

/// Polygons: `Ad_P` on `NF(P)`. 3-polytopes: every surface-adjoint term on every `NF(F)`.
fn vanishing_certificates(
    p: &Polytope,
    seed: u64,
    samples: Option<usize>,
) -> Result<Vec<Certified>, CliError> {
    let mut out = Vec::new();
    if p.dim() == 2 {
        let ad = adjoint(p, None);
        for nf in polygon_nonface_subspaces(p)? {
            out.push(("adjoint", None, check_vanishing(&ad, &nf, samples, seed)));
        }
        return Ok(out);
    }
    let sa = surface_adjoint(p, 0);
    for fi in 0..p.facets().len() {
        for nf in nonface_subspaces(p, fi)? {
            for term in &sa.terms {
                out.push((
                    "surface_adjoint",
                    Some(term.facet),
                    check_vanishing(&term.poly, &nf, samples, seed),
                ));
            }
        }
    }
    Ok(out)
}

fn certificate_value(target: &str, facet: Option<usize>, c: &VanishingCertificate) -> Value {
    json!({
        "polynomial": target,
        "term_facet": facet,
        "tau": c.indices,
        "subspace_dim": c.subspace_dim,
        "degree": c.degree,
        "samples_per_direction": c.samples_per_direction,
        "points_evaluated": c.points_evaluated,
        "passed": c.passed,
        "proof": c.is_proof,
        "counterexample": c.counterexample.as_ref().map(|(pt, v)| json!({
            "point": pt.iter().map(format_rational).collect::<Vec<_>>(),
            "value": format_rational(v),
        })),
    })
}
