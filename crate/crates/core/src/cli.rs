//! Command-line front end. Every report goes to stdout as JSON with
//! 17-significant-digit floats.
//!
//! Exit codes: 0 when every check passes, 1 when an inequality or identity
//! fails, 2 for invalid input or a degenerate path.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::charge::{
    analytic_angle_from_integrals, check_chern_n3, check_chern_n4, compute_winding, general_kt,
    integrated_sigma_chain, kt_chain, IntersectionProfile, WindingReport,
};
use crate::error::{Error, Result};
use crate::format::{g17, to_json};
use crate::hermitian::{phase_of_pair, CMatrix, HermitianPair};
use crate::models::{consistency_suite, constant_model, scan_blowup_p3, BlowupGrid, ModelSpec};
use crate::phase::{lagrangian_phase, EigenTuple};
use crate::suites::{identity_suite, kt_suite, theorem_suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dhym",
    version,
    about = "dHYM central charges and Chern-number inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ProfileArg {
    /// Profile JSON ({"n":4,"d":[...]}) or model JSON ({"model":...}).
    #[arg(long)]
    profile: PathBuf,
}

#[derive(Debug, Args)]
struct SeedArg {
    #[arg(long, env = "DHYM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chern-number inequalities for the profile's dimension.
    Check(ProfileArg),
    /// Central charge path, winding angle and optional CSV trace.
    Path {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// CSV output with header `t,re,im,arg_lift`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analytic and algebraic lifted angles.
    Angle {
        #[arg(long, conflicts_with_all = ["lambda", "pair"])]
        profile: Option<PathBuf>,
        /// Comma-separated eigenvalues; the constant model is used.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "pair"
        )]
        lambda: Option<Vec<f64>>,
        /// Hermitian pair JSON ({"g":{...},"a":{...}}).
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// Monte Carlo theorem suite on level-set constant models.
    Sample {
        /// Fixed target angle; uniform in (pi + 0.01, 2pi - 0.01) when omitted.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Algebraic identity suite on random tuples.
    Identity {
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Khovanskii–Teissier chains.
    Kt {
        #[arg(long, conflicts_with_all = ["lambda", "count"])]
        profile: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires_all = ["mu", "m"])]
        lambda: Option<Vec<f64>>,
        /// Diagonal of the second class, aligned with ascending lambda.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<f64>>,
        #[arg(long)]
        m: Option<usize>,
        /// Random suite size (used when neither --profile nor --lambda is given).
        #[arg(long)]
        count: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Materialize a profile from a model description, or scan the blow-up of P3.
    Model {
        #[arg(long, conflicts_with = "scan_blowup")]
        spec: Option<PathBuf>,
        #[arg(long)]
        scan_blowup: bool,
        /// Allow any integer c, e in [-alpha_range, alpha_range] in the scan.
        #[arg(long)]
        alpha_range: Option<i64>,
        #[arg(long, default_value_t = 10)]
        keep: usize,
    },
    /// Pointwise/cohomological consistency checks for a constant model.
    Consistency {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<f64>,
    },
}

/// Outcome of a subcommand: a JSON document and an exit code.
struct Outcome {
    json: String,
    code: i32,
}

impl Outcome {
    fn new<T: Serialize + ?Sized>(value: &T, pass: bool) -> Result<Self> {
        Ok(Outcome {
            json: to_json(value)?,
            code: if pass { EXIT_PASS } else { EXIT_VIOLATION },
        })
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", out.json);
            out.code
        }
        Err(e) => {
            let _ = writeln!(stdout, "{}", error_json(&e));
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn error_json(e: &Error) -> String {
    let kind = match e {
        Error::Domain(_) => "domain",
        Error::PhaseOutsideBranch { .. } => "precondition",
        Error::SamplingExhausted { .. } => "sampling_exhausted",
        Error::DegeneratePath { .. } => "degenerate_path",
        Error::UndefinedAngle { .. } => "undefined_angle",
        Error::InvalidPair(_) => "invalid_pair",
        Error::NoConvergence { .. } => "no_convergence",
        Error::Json(_) => "json",
        Error::Io(_) => "io",
    };
    let mut v = json!({"error": kind, "message": e.to_string()});
    if let Error::DegeneratePath { t, modulus } = e {
        v["origin_hit"] = json!(t);
        v["modulus"] = json!(modulus);
    }
    to_json(&v).unwrap_or_default()
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Deserialize)]
struct PairFile {
    g: CMatrix,
    a: CMatrix,
}

/// Accepts either a profile or a model description.
fn load_profile(path: &Path) -> Result<IntersectionProfile> {
    let v = read_json(path)?;
    if v.get("model").is_some() {
        let spec: ModelSpec = serde_json::from_value(v)?;
        spec.build()
    } else {
        Ok(serde_json::from_value(v)?)
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Check(ProfileArg { profile }) => check(&load_profile(&profile)?),
        Command::Path {
            profile,
            samples,
            out,
        } => path(&load_profile(&profile.profile)?, samples, out.as_deref()),
        Command::Angle {
            profile,
            lambda,
            pair,
        } => angle(profile, lambda, pair),
        Command::Sample { theta, count, seed } => {
            let r = theorem_suite(count, seed.seed, theta)?;
            Outcome::new(&r, r.pass)
        }
        Command::Identity { count, seed } => {
            let r = identity_suite(count, seed.seed)?;
            Outcome::new(&r, r.pass)
        }
        Command::Kt {
            profile,
            lambda,
            mu,
            m,
            count,
            seed,
        } => kt(profile, lambda, mu, m, count, seed.seed),
        Command::Model {
            spec,
            scan_blowup,
            alpha_range,
            keep,
        } => model(spec, scan_blowup, alpha_range, keep),
        Command::Consistency { lambda } => {
            let r = consistency_suite(&EigenTuple::new(lambda)?)?;
            Outcome::new(&r, r.passed())
        }
    }
}

fn check(p: &IntersectionProfile) -> Result<Outcome> {
    let report = match p.dim() {
        3 => check_chern_n3(p)?,
        4 => check_chern_n4(p)?,
        n => return Err(Error::domain(format!("check supports n = 3 or 4, got {n}"))),
    };
    let pass = report.passed();
    Outcome::new(
        &json!({"profile": p, "inequalities": report, "pass": pass}),
        pass,
    )
}

fn write_trace(path: &Path, r: &WindingReport) -> Result<()> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    writeln!(f, "t,re,im,arg_lift")?;
    for s in &r.arg_lift {
        writeln!(
            f,
            "{},{},{},{}",
            g17(s.t),
            g17(s.re),
            g17(s.im),
            g17(s.arg_lift)
        )?;
    }
    f.flush()?;
    Ok(())
}

fn path(p: &IntersectionProfile, samples: usize, out: Option<&Path>) -> Result<Outcome> {
    let r = compute_winding(p, samples)?;
    if r.origin_hit.is_none() {
        if let Some(out) = out {
            write_trace(out, &r)?;
        }
    }
    let code = if r.origin_hit.is_some() {
        EXIT_INVALID
    } else {
        EXIT_PASS
    };
    Ok(Outcome {
        json: to_json(&json!({"profile": p, "winding": r, "samples": r.arg_lift.len()}))?,
        code,
    })
}

fn angle(
    profile: Option<PathBuf>,
    lambda: Option<Vec<f64>>,
    pair: Option<PathBuf>,
) -> Result<Outcome> {
    let (p, pointwise) = match (profile, lambda, pair) {
        (Some(path), None, None) => (load_profile(&path)?, None),
        (None, Some(l), None) => {
            let t = EigenTuple::new(l)?;
            (constant_model(&t), Some(lagrangian_phase(&t)))
        }
        (None, None, Some(path)) => {
            let raw: PairFile = serde_json::from_value(read_json(&path)?)?;
            let pair = HermitianPair::new(raw.g, raw.a)?;
            let spectrum = crate::hermitian::relative_spectrum(&pair)?;
            (constant_model(&spectrum), Some(phase_of_pair(&pair)?))
        }
        _ => {
            return Err(Error::domain(
                "angle needs exactly one of --profile, --lambda, --pair",
            ))
        }
    };
    let analytic = if p.dim() == 4 {
        Some(analytic_angle_from_integrals(&p)?)
    } else {
        None
    };
    let w = compute_winding(&p, 0)?;
    if let Some(t) = w.origin_hit {
        return Err(Error::DegeneratePath {
            t,
            modulus: w.min_modulus,
        });
    }
    Outcome::new(
        &json!({
            "n": p.dim(),
            "analytic": analytic,
            "algebraic": w.theta_alg,
            "pointwise": pointwise,
            "t_star": w.t_star,
        }),
        true,
    )
}

fn kt(
    profile: Option<PathBuf>,
    lambda: Option<Vec<f64>>,
    mu: Option<Vec<f64>>,
    m: Option<usize>,
    count: Option<usize>,
    seed: u64,
) -> Result<Outcome> {
    if let Some(path) = profile {
        let p = load_profile(&path)?;
        let r = kt_chain(&p)?;
        let chain = integrated_sigma_chain(&p)?;
        let pass = r.passed();
        return Outcome::new(
            &json!({"profile": p, "kt_chain": r, "sigma_chain": chain, "pass": pass}),
            pass,
        );
    }
    if let (Some(l), Some(mu), Some(m)) = (lambda, mu, m) {
        let r = general_kt(&EigenTuple::new(l)?, &mu, m)?;
        let pass = r.passed();
        return Outcome::new(&json!({"general_kt": r, "pass": pass}), pass);
    }
    let r = kt_suite(count.unwrap_or(10_000), seed)?;
    Outcome::new(&r, r.pass)
}

fn model(
    spec: Option<PathBuf>,
    scan_blowup: bool,
    alpha_range: Option<i64>,
    keep: usize,
) -> Result<Outcome> {
    if scan_blowup {
        let grid = match alpha_range {
            Some(r) => BlowupGrid {
                c: -r..=r,
                e: -r..=r,
                nef_alpha: false,
                ..Default::default()
            },
            None => BlowupGrid::default(),
        };
        let hits = scan_blowup_p3(&grid, keep);
        return Outcome::new(&json!({ "candidates": hits }), true);
    }
    let Some(path) = spec else {
        return Err(Error::domain("model needs --spec or --scan-blowup"));
    };
    let spec: ModelSpec = serde_json::from_value(read_json(&path)?)?;
    Outcome::new(&spec.build()?, true)
}
