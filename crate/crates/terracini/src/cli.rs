//! Command-line front end.
//!
//! Exit codes: 0 when a check passes (or a study completes), 2 when a check
//! reports a negative finding, 1 on any error. Errors are printed as
//! `{"error": {"kind": ..., "detail": ...}}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use terracini_core::cones::ConeModel;
use terracini_core::hyperbolic::{self, HyperbolicPoly};
use terracini_core::linalg::Subspace;
use terracini_core::neighborly::{self, SubsetPolicy};
use terracini_core::recovery::{self, StudyConfig, StudyKind};
use terracini_core::rng;
use terracini_core::tangent::{self, TerraciniVerdict, VerdictMode};
use terracini_core::{Error, Result};

use crate::io;
use crate::manifest::RunManifest;

/// Exit code of a passing check.
pub const EXIT_PASS: i32 = 0;
/// Exit code of any error.
pub const EXIT_ERROR: i32 = 1;
/// Exit code of a check that ran and reported a negative finding.
pub const EXIT_FAIL: i32 = 2;

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    /// Pretty-printed JSON.
    Json,
    /// CSV rows (per trial or per map for studies, top-level scalars otherwise).
    Csv,
}

/// Convex tangent spaces, Terracini convexity and exact recovery experiments.
#[derive(Debug, Parser, Serialize)]
#[command(name = "terracini", version)]
pub struct Cli {
    /// Seed for every randomized step; required by stochastic commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Grassmann-distance threshold for Terracini verdicts (default 1e-6).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads for trial loops.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Write the result here instead of stdout; a run manifest goes next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Command.
    #[command(subcommand)]
    pub command: Command,
}

/// Top-level commands.
#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// k-Terracini check of a ray collection.
    Terracini(TerraciniArgs),
    /// k-neighborliness of a polyhedral cone.
    Neighborly(NeighborlyArgs),
    /// Hyperbolic polynomial tools.
    #[command(subcommand)]
    Hyperbolic(HyperbolicCmd),
    /// Exact recovery experiments.
    #[command(subcommand)]
    Recover(RecoverCmd),
    /// Veronese and moment-cone tools.
    #[command(subcommand)]
    Veronese(VeroneseCmd),
}

impl Command {
    /// Subcommand path, such as `recover dt-study`.
    pub fn path(&self) -> &'static str {
        match self {
            Command::Terracini(_) => "terracini",
            Command::Neighborly(_) => "neighborly",
            Command::Hyperbolic(c) => match c {
                HyperbolicCmd::Eig { .. } => "hyperbolic eig",
                HyperbolicCmd::Localize { .. } => "hyperbolic localize",
                HyperbolicCmd::Derivative { .. } => "hyperbolic derivative",
                HyperbolicCmd::Lineality { .. } => "hyperbolic lineality",
                HyperbolicCmd::Mult3 { .. } => "hyperbolic mult3",
            },
            Command::Recover(c) => match c {
                RecoverCmd::Lp(_) => "recover lp",
                RecoverCmd::Sdp(_) => "recover sdp",
                RecoverCmd::DtStudy(_) => "recover dt-study",
                RecoverCmd::MostTcStudy(_) => "recover most-tc-study",
            },
            Command::Veronese(c) => match c {
                VeroneseCmd::Certificate { .. } => "veronese certificate",
                VeroneseCmd::Growth { .. } => "veronese growth",
                VeroneseCmd::DoubleVanish { .. } => "veronese double-vanish",
            },
        }
    }
}

/// Arguments of `terracini`.
#[derive(Debug, Args, Serialize)]
pub struct TerraciniArgs {
    /// Built-in cone name, cone JSON, a JSON file, or `-` for stdin.
    #[arg(long)]
    pub cone: String,
    /// Rays as JSON (array of arrays or `{"rays": ...}`), a file, or `-`.
    #[arg(long, conflicts_with = "random")]
    pub rays: Option<String>,
    /// Sample this many random extreme rays instead (needs --seed).
    #[arg(long)]
    pub random: Option<usize>,
    /// Run the normal-cone check (rays are given in the base cone for linear images).
    #[arg(long)]
    pub dual: bool,
}

/// Arguments of `neighborly`.
#[derive(Debug, Args, Serialize)]
pub struct NeighborlyArgs {
    /// Built-in cone name, cone JSON, a JSON file, or `-` for stdin.
    #[arg(long)]
    pub cone: String,
    /// Subset size.
    #[arg(long)]
    pub k: usize,
    /// Sample this many subsets per size when enumeration is too large (needs --seed).
    #[arg(long)]
    pub sample: Option<usize>,
}

/// Polynomial and direction shared by the hyperbolic commands.
#[derive(Debug, Args, Serialize)]
pub struct PolyArgs {
    /// Monomial text such as "x1 x2 x3", polynomial JSON, a file, or `-`.
    #[arg(long)]
    pub poly: String,
    /// Hyperbolic direction, comma separated.
    #[arg(long)]
    pub e: String,
}

/// `hyperbolic` subcommands.
#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperbolicCmd {
    /// Hyperbolic eigenvalues of a point.
    Eig {
        #[command(flatten)]
        p: PolyArgs,
        /// The point.
        #[arg(long)]
        x: String,
    },
    /// Localization at a point.
    Localize {
        #[command(flatten)]
        p: PolyArgs,
        /// The point.
        #[arg(long)]
        x: String,
    },
    /// Derivative relaxation along a direction.
    Derivative {
        #[command(flatten)]
        p: PolyArgs,
        /// Derivative direction (defaults to e).
        #[arg(long)]
        dir: Option<String>,
    },
    /// Lineality space of the hyperbolicity cone.
    Lineality {
        #[command(flatten)]
        p: PolyArgs,
    },
    /// Multiplicity correspondence between the cone and its derivative relaxation.
    Mult3 {
        #[command(flatten)]
        p: PolyArgs,
        /// Derivative direction (defaults to e).
        #[arg(long)]
        dir: Option<String>,
        /// The point.
        #[arg(long)]
        x: String,
    },
}

/// Parameters of recovery experiments.
#[derive(Debug, Args, Serialize)]
pub struct StudyArgs {
    /// Config JSON `{"kind","d","n","k","trials","seed"}` (file, inline, or `-`); flags override it.
    #[arg(long)]
    pub config: Option<String>,
    /// Vector length or matrix side.
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of measurements.
    #[arg(long)]
    pub n: Option<usize>,
    /// Sparsity or rank.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of trials (or maps, for studies).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Planted points per map for studies.
    #[arg(long)]
    pub plants: Option<usize>,
}

/// `recover` subcommands.
#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecoverCmd {
    /// LP recovery of sparse nonnegative vectors.
    Lp(StudyArgs),
    /// SDP recovery of low-rank PSD matrices.
    Sdp(StudyArgs),
    /// Exact recovery versus Terracini face checks for orthant images.
    DtStudy(StudyArgs),
    /// Low-rank recovery and face checks for images of the PSD cone.
    MostTcStudy(StudyArgs),
}

/// `veronese` subcommands.
#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VeroneseCmd {
    /// Exposing form of a point set.
    Certificate {
        /// Built-in point set name, JSON, a file, or `-`.
        #[arg(long)]
        points: String,
        /// Even degree 2d.
        #[arg(long)]
        deg: usize,
    },
    /// Sampled growth constant of the exposing form.
    Growth {
        /// Built-in point set name, JSON, a file, or `-`.
        #[arg(long)]
        points: String,
        /// Even degree 2d.
        #[arg(long)]
        deg: usize,
        /// Number of samples.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Neighborhood radius.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Dimension of the forms of degree 2d vanishing to second order at the points.
    DoubleVanish {
        /// Built-in point set name, JSON, a file, or `-`.
        #[arg(long)]
        points: String,
        /// Number of variables (checked against the points).
        #[arg(long)]
        n: Option<usize>,
        /// Even degree 2d.
        #[arg(long)]
        deg: usize,
    },
}

/// Result of a command before rendering.
pub struct Outcome {
    /// JSON payload.
    pub value: Value,
    /// [`EXIT_PASS`] or [`EXIT_FAIL`].
    pub code: i32,
    /// Rows for CSV output, with a header.
    pub rows: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Outcome {
    fn pass(value: Value) -> Self {
        Self { value, code: EXIT_PASS, rows: None }
    }

    fn verdict(value: Value, passed: bool) -> Self {
        Self { value, code: if passed { EXIT_PASS } else { EXIT_FAIL }, rows: None }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn need_seed(cli: &Cli) -> Result<u64> {
    cli.seed.ok_or_else(|| usage("this command is randomized; pass --seed"))
}

fn subspace_json(s: &Subspace) -> Value {
    json!({"dim": s.dim(), "ambient": s.ambient_dim(), "basis": s.basis_vectors()})
}

fn apply_tol(mut v: TerraciniVerdict, tol: Option<f64>) -> TerraciniVerdict {
    if let Some(t) = tol {
        if v.mode != VerdictMode::DualInconclusive {
            v.passed = v.distance <= t;
        }
    }
    v
}

fn run_terracini(cli: &Cli, a: &TerraciniArgs) -> Result<Outcome> {
    let cone = io::read_cone(&a.cone)?;
    let rays = match (&a.rays, a.random) {
        (Some(r), _) => io::read_vectors(r)?,
        (None, Some(k)) => {
            let mut r = rng::rng(need_seed(cli)?);
            let extreme = match &cone {
                ConeModel::Polyhedral { .. } => cone.extreme_generators()?,
                _ => Vec::new(),
            };
            let sample_cone = match (&cone, a.dual) {
                (ConeModel::LinearImage { base, .. }, true) => base.as_ref(),
                _ => &cone,
            };
            let extreme = match sample_cone {
                ConeModel::Polyhedral { .. } if a.dual => sample_cone.extreme_generators()?,
                _ => extreme,
            };
            (0..k).map(|_| tangent::sample_extreme_ray(sample_cone, &extreme, &mut r)).collect::<Result<Vec<_>>>()?
        }
        (None, None) => return Err(usage("pass --rays or --random")),
    };
    let v = if a.dual { tangent::is_k_terracini_dual(&cone, &rays)? } else { tangent::is_k_terracini_primal(&cone, &rays)? };
    let v = apply_tol(v, cli.tol);
    let passed = v.passed;
    let mut value = to_value(&v);
    value["cone"] = json!(cone.describe());
    value["k"] = json!(rays.len());
    Ok(Outcome::verdict(value, passed))
}

fn run_neighborly(cli: &Cli, a: &NeighborlyArgs) -> Result<Outcome> {
    let cone = io::read_cone(&a.cone)?;
    let policy = match a.sample {
        Some(count) => SubsetPolicy::Sample { count, seed: need_seed(cli)? },
        None => SubsetPolicy::Exhaustive,
    };
    let v = neighborly::is_k_neighborly_polyhedral_with(&cone, a.k, policy)?;
    Ok(Outcome::verdict(to_value(&v), v.passed))
}

fn hyperbolic_poly(p: &PolyArgs) -> Result<HyperbolicPoly> {
    let e = io::parse_vector(&p.e)?;
    let poly = io::read_poly(&p.poly, Some(e.len()))?;
    HyperbolicPoly::new(poly, e)
}

fn run_hyperbolic(cmd: &HyperbolicCmd) -> Result<Outcome> {
    match cmd {
        HyperbolicCmd::Eig { p, x } => {
            let h = hyperbolic_poly(p)?;
            let s = h.spectrum(&io::parse_vector(x)?)?;
            Ok(Outcome::pass(to_value(&s)))
        }
        HyperbolicCmd::Localize { p, x } => {
            let h = hyperbolic_poly(p)?;
            let (q, m) = hyperbolic::localize(h.poly(), &io::parse_vector(x)?)?;
            Ok(Outcome::pass(json!({"mult": m, "poly": io::poly_to_json(&q), "text": q.to_string()})))
        }
        HyperbolicCmd::Derivative { p, dir } => {
            let h = hyperbolic_poly(p)?;
            let dir = match dir {
                Some(d) => io::parse_vector(d)?,
                None => h.e().to_vec(),
            };
            let q = hyperbolic::derivative_relaxation(h.poly(), h.e(), &dir)?;
            Ok(Outcome::pass(json!({"poly": io::poly_to_json(&q), "text": q.to_string()})))
        }
        HyperbolicCmd::Lineality { p } => {
            let h = hyperbolic_poly(p)?;
            Ok(Outcome::pass(subspace_json(&h.lineality()?)))
        }
        HyperbolicCmd::Mult3 { p, dir, x } => {
            let h = hyperbolic_poly(p)?;
            let dir = match dir {
                Some(d) => io::parse_vector(d)?,
                None => h.e().to_vec(),
            };
            let x = io::parse_vector(x)?;
            let ok = hyperbolic::verify_mult3(h.poly(), h.e(), &dir, &x)?;
            let mult = h.mult(&x)?;
            Ok(Outcome::verdict(json!({"passed": ok, "mult": mult}), ok))
        }
    }
}

fn study_config(cli: &Cli, a: &StudyArgs, kind: StudyKind) -> Result<StudyConfig> {
    let base: Value = match &a.config {
        Some(c) => io::parse_json(&io::read_source(c)?)?,
        None => json!({}),
    };
    let get = |flag: Option<usize>, key: &str| -> Result<usize> {
        match flag {
            Some(v) => Ok(v),
            None => base
                .get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| usage(format!("missing --{key}"))),
        }
    };
    if let Some(k) = base.get("kind").and_then(Value::as_str) {
        let expected = match kind {
            StudyKind::Lp => "lp",
            StudyKind::Sdp => "sdp",
        };
        if k != expected {
            return Err(usage(format!("config kind '{k}' does not match this command ('{expected}')")));
        }
    }
    let seed = match cli.seed {
        Some(s) => s,
        None => base.get("seed").and_then(Value::as_u64).ok_or_else(|| usage("this command is randomized; pass --seed"))?,
    };
    Ok(StudyConfig {
        kind,
        d: get(a.d, "d")?,
        n: get(a.n, "n")?,
        k: get(a.k, "k")?,
        trials: get(a.trials, "trials")?,
        seed,
        plants: a.plants.or_else(|| base.get("plants").and_then(Value::as_u64).map(|v| v as usize)).unwrap_or(20),
    })
}

/// Runs `f(0..count)` on `jobs` threads, keeping index order.
fn parallel<T: Send>(jobs: usize, count: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

fn cell<T: ToString>(v: T) -> String {
    v.to_string()
}

fn run_recover(cli: &Cli, cmd: &RecoverCmd) -> Result<Outcome> {
    match cmd {
        RecoverCmd::Lp(a) | RecoverCmd::Sdp(a) => {
            let kind = if matches!(cmd, RecoverCmd::Lp(_)) { StudyKind::Lp } else { StudyKind::Sdp };
            let cfg = study_config(cli, a, kind)?;
            let trials = parallel(cli.jobs, cfg.trials, |i| recovery::batch_trial(&cfg, i))?;
            let report = recovery::batch_summarize(&cfg, trials);
            let header = ["index", "k", "valid", "recovered", "unique_preimage", "error", "perturbation_shift"];
            let rows = report
                .trials
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    vec![cell(i), cell(t.k), cell(t.valid), cell(t.recovered), cell(t.unique_preimage), cell(t.error), cell(t.perturbation_shift)]
                })
                .collect();
            Ok(Outcome { value: to_value(&report), code: EXIT_PASS, rows: Some((header.map(String::from).to_vec(), rows)) })
        }
        RecoverCmd::DtStudy(a) => {
            let cfg = study_config(cli, a, StudyKind::Lp)?;
            let maps = parallel(cli.jobs, cfg.trials, |i| recovery::dt_map_record(&cfg, i))?;
            let report = recovery::dt_summarize(&cfg, maps);
            let header = ["index", "included", "recovery_property", "terracini_property", "extreme_rays", "face_checks", "face_passes", "trials", "lemma_agreements"];
            let rows = report
                .maps
                .iter()
                .map(|m| {
                    vec![
                        cell(m.index),
                        cell(m.included),
                        cell(m.recovery_property),
                        cell(m.terracini_property),
                        cell(m.extreme_rays),
                        cell(m.face_checks),
                        cell(m.face_passes),
                        cell(m.trials.len()),
                        cell(m.lemma_agreements),
                    ]
                })
                .collect();
            Ok(Outcome { value: to_value(&report), code: EXIT_PASS, rows: Some((header.map(String::from).to_vec(), rows)) })
        }
        RecoverCmd::MostTcStudy(a) => {
            let cfg = study_config(cli, a, StudyKind::Sdp)?;
            let maps = parallel(cli.jobs, cfg.trials, |i| recovery::tc_map_record(&cfg, i))?;
            let report = recovery::tc_summarize(&cfg, maps);
            let header = ["index", "included", "trials", "recovered", "face_passes", "robust_passes", "lemma_agreements"];
            let rows = report
                .maps
                .iter()
                .map(|m| {
                    vec![
                        cell(m.index),
                        cell(m.included),
                        cell(m.trials.len()),
                        cell(m.trials.iter().filter(|t| t.recovered).count()),
                        cell(m.face_passes),
                        cell(m.robust_passes),
                        cell(m.lemma_agreements),
                    ]
                })
                .collect();
            Ok(Outcome { value: to_value(&report), code: EXIT_PASS, rows: Some((header.map(String::from).to_vec(), rows)) })
        }
    }
}

fn points_n(points: &[Vec<f64>], n: Option<usize>) -> Result<usize> {
    let m = points.first().map(Vec::len).ok_or_else(|| usage("empty point set"))?;
    match n {
        Some(n) if n != m => Err(usage(format!("points have {m} coordinates but --n is {n}"))),
        _ => Ok(m),
    }
}

fn half_degree(deg: usize) -> Result<usize> {
    if deg == 0 || deg % 2 == 1 {
        return Err(usage(format!("--deg must be a positive even number, got {deg}")));
    }
    Ok(deg / 2)
}

fn run_veronese(cli: &Cli, cmd: &VeroneseCmd) -> Result<Outcome> {
    match cmd {
        VeroneseCmd::Certificate { points, deg } => {
            let pts = io::read_vectors(points)?;
            let n = points_n(&pts, None)?;
            let ell = neighborly::kw_certificate_veronese(&pts, half_degree(*deg)?)?;
            let monomials = neighborly::monomial_exponents(n, *deg);
            Ok(Outcome::pass(json!({"n": n, "two_d": deg, "monomials": monomials, "functional": ell})))
        }
        VeroneseCmd::Growth { points, deg, samples, epsilon } => {
            let pts = io::read_vectors(points)?;
            let n = points_n(&pts, None)?;
            let g = neighborly::estimate_growth_constant(&pts, half_degree(*deg)?, n, *samples, *epsilon, need_seed(cli)?)?;
            Ok(Outcome::pass(to_value(&g)))
        }
        VeroneseCmd::DoubleVanish { points, n, deg } => {
            let pts = io::read_vectors(points)?;
            let n = points_n(&pts, *n)?;
            half_degree(*deg)?;
            let dim = neighborly::double_vanishing_dimension(&pts, n, *deg)?;
            Ok(Outcome::pass(json!({"dim": dim})))
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Terracini(a) => run_terracini(cli, a),
        Command::Neighborly(a) => run_neighborly(cli, a),
        Command::Hyperbolic(c) => run_hyperbolic(c),
        Command::Recover(c) => run_recover(cli, c),
        Command::Veronese(c) => run_veronese(cli, c),
    }
}

/// `{"error": {"kind": ..., "detail": ...}}`.
pub fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "detail": e.to_string()}})
}

fn scalar_rows(v: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header = Vec::new();
    let mut row = Vec::new();
    if let Value::Object(o) = v {
        for (k, x) in o {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(_) | Value::Bool(_) | Value::Null => x.to_string(),
                _ => continue,
            };
            header.push(k.clone());
            row.push(s);
        }
    }
    (header, vec![row])
}

/// Renders an outcome in the requested format.
pub fn render(out: &Outcome, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&out.value).expect("valid JSON") + "\n"),
        Format::Csv => {
            let (header, rows) = out.rows.clone().unwrap_or_else(|| scalar_rows(&out.value));
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Error::Usage(format!("writing CSV: {e}"));
            w.write_record(&header).map_err(io_err)?;
            for r in rows {
                w.write_record(&r).map_err(io_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Usage(format!("writing CSV: {e}")))?;
            Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
        }
    }
}

fn write_text(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()
        }
    }
}

/// Manifest path written next to `out`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Parses arguments, runs the command, writes the output, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return EXIT_PASS;
            }
            let text = e.to_string();
            let err = Error::Usage(text.trim().trim_start_matches("error: ").to_string());
            eprintln!("{}", e.to_string().trim());
            let _ = write_text(None, &(serde_json::to_string_pretty(&error_json(&err)).expect("valid JSON") + "\n"));
            return EXIT_ERROR;
        }
    };
    let start = Instant::now();
    let (text, code) = match execute(&cli).and_then(|o| Ok((render(&o, cli.format)?, o.code))) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            (serde_json::to_string_pretty(&error_json(&e)).expect("valid JSON") + "\n", EXIT_ERROR)
        }
    };
    if let Err(e) = write_text(cli.out.as_deref(), &text) {
        eprintln!("error: writing output: {e}");
        return EXIT_ERROR;
    }
    if let Some(out) = &cli.out {
        let manifest = RunManifest::new(&args, &cli, start.elapsed().as_secs_f64(), vec![out.display().to_string()], code);
        let mp = manifest_path(out);
        if let Err(e) = std::fs::write(&mp, serde_json::to_string_pretty(&manifest).expect("valid JSON") + "\n") {
            eprintln!("error: writing manifest {}: {e}", mp.display());
            return EXIT_ERROR;
        }
    }
    code
}
