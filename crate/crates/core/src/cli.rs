//! The `monodromy` command line: argument parsing, input loading, report
//! writing and exit codes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::analytic::{track_monodromy_with, CoverModel, CoverModelJson, NumericError, TrackOptions};
use crate::clump::{
    core_verdict_from, random_starts, ClumpError, ClumpOptions, Correspondence, CorrespondenceJson, ProjPoint,
    DEFAULT_MAX_POINTS, DEFAULT_TOLERANCE,
};
use crate::cover::{
    classify_ramification, complementary_genus, fiber_square_over_p1, galois_report, genus_of, pair_product,
    random_cover, random_generic_p1_pair, rh_genus, validate, CoverError, MonodromyRep, RamificationCase, RepJson,
};

pub const SCHEMA: &str = "1";

/// Exit status of a failed run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorFamily {
    /// Unreadable or inconsistent input, bad arguments.
    Validation = 1,
    /// Root finding, tracking or clustering failed.
    Numeric = 2,
    /// A randomized search ran out of budget.
    SearchExhausted = 3,
    /// Reading or writing files failed.
    Io = 4,
}

#[derive(Debug)]
pub struct CliError {
    pub family: ErrorFamily,
    pub message: String,
}

impl CliError {
    fn new(family: ErrorFamily, message: impl Into<String>) -> Self {
        Self { family, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        Self::new(ErrorFamily::Validation, message)
    }

    fn context(self, what: &str) -> Self {
        Self { message: format!("{what}: {}", self.message), ..self }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        let family = match e {
            CoverError::SearchExhausted { .. } => ErrorFamily::SearchExhausted,
            _ => ErrorFamily::Validation,
        };
        Self::new(family, e.to_string())
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::Cover(c) => c.into(),
            NumericError::InvalidModel(_) => Self::validation(e.to_string()),
            _ => Self::new(ErrorFamily::Numeric, e.to_string()),
        }
    }
}

impl From<ClumpError> for CliError {
    fn from(e: ClumpError) -> Self {
        match e {
            ClumpError::Root(n) => n.into(),
            ClumpError::InvalidCorrespondence(_) | ClumpError::Precondition(_) => Self::validation(e.to_string()),
            ClumpError::CloudExplosion { .. } => Self::new(ErrorFamily::SearchExhausted, e.to_string()),
            ClumpError::Numeric(_) => Self::new(ErrorFamily::Numeric, e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "monodromy", version, about = "Monodromy of branched covers and clumps of correspondences")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// More log output on standard error; repeat for more.
    #[arg(long, short, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Suppress the human-readable summary.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a rep and report genus, Galois group and ramification case.
    Analyze { rep: PathBuf },
    /// Components of the fiber square of a rep over its base.
    PairProduct { rep: PathBuf },
    /// Genus of the complementary curve from the reps of φ and of the double cover.
    Complementary(ComplementaryArgs),
    /// Numerical monodromy of an explicit model.
    Track(TrackArgs),
    /// Clump iteration for a correspondence of rational maps.
    CoreCheck(CoreCheckArgs),
    /// Random rep with prescribed ramification, or generic P¹ data.
    RandomCover(RandomArgs),
}

#[derive(Debug, Args)]
pub struct ComplementaryArgs {
    #[arg(long, required_unless_present = "pair")]
    pub phi: Option<PathBuf>,
    #[arg(long, required_unless_present = "pair")]
    pub x: Option<PathBuf>,
    /// A `random-cover --p1-pair` report holding both reps.
    #[arg(long, conflicts_with_all = ["phi", "x"])]
    pub pair: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrackArgs {
    pub model: PathBuf,
    /// Working precision in bits; 53 or less runs in `f64`.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Skip the run at doubled precision with halved steps and radii.
    #[arg(long)]
    pub no_refine: bool,
    /// Step length relative to the distance to the nearest branch point.
    #[arg(long, default_value_t = 0.1)]
    pub step_fraction: f64,
    /// Multiplier on loop radii.
    #[arg(long, default_value_t = 1.0)]
    pub radius_scale: f64,
}

#[derive(Debug, Args)]
pub struct CoreCheckArgs {
    #[arg(long)]
    pub corr: PathBuf,
    /// First start point, e.g. "2", "1+2i" or "inf"; further samples are random.
    #[arg(long)]
    pub start: Option<String>,
    #[arg(long, default_value_t = 9)]
    pub budget: usize,
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
    pub max_points: usize,
    /// Keep iterating after the bound is exceeded.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, short = 'n')]
    pub degree: usize,
    /// Ramification case: I, II or III.
    #[arg(long, default_value = "I", conflicts_with = "p1_pair")]
    pub case: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit generic reps of `φ: P¹ → P¹` and of a double cover instead.
    #[arg(long)]
    pub p1_pair: bool,
}

/// A finished run: the JSON report and a short text summary.
pub struct Report {
    pub json: Value,
    pub summary: String,
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new(ErrorFamily::Io, format!("{}: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(path: &Path, value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn read_value(path: &Path) -> Result<Value, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::validation(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
    })
}

/// A bare object, or the member `key` of a report's `result`.
fn unwrap_report(path: &Path, v: Value, key: &str) -> Result<Value, CliError> {
    if v.get("schema").is_some() {
        v.get("result")
            .and_then(|r| r.get(key))
            .cloned()
            .ok_or_else(|| CliError::validation(format!("{}: report has no result.{key}", path.display())))
    } else {
        Ok(v)
    }
}

fn load_rep_key(path: &Path, key: &str) -> Result<(MonodromyRep, Value), CliError> {
    let v = unwrap_report(path, read_value(path)?, key)?;
    let j: RepJson = parse_json(path, v.clone())?;
    let rep = MonodromyRep::from_json(&j).map_err(|e| CliError::from(e).context(&path.display().to_string()))?;
    Ok((rep, v))
}

fn load_rep(path: &Path) -> Result<(MonodromyRep, Value), CliError> {
    load_rep_key(path, "rep")
}

/// Parses, validates and runs one job.
pub fn run(config: &JobConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::Analyze { rep } => analyze_cmd(rep),
        Command::PairProduct { rep } => pair_product_cmd(rep),
        Command::Complementary(a) => complementary_cmd(a),
        Command::Track(a) => track_cmd(a),
        Command::CoreCheck(a) => core_check_cmd(a),
        Command::RandomCover(a) => random_cmd(a),
    }
}

fn envelope(command: &str, input: Value, result: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "input": input, "result": result })
}

fn analyze_cmd(path: &Path) -> Result<Report, CliError> {
    let raw = unwrap_report(path, read_value(path)?, "rep")?;
    let j: RepJson = parse_json(path, raw.clone())?;
    let rep = MonodromyRep::from_json(&j).map_err(|e| CliError::from(e).context(&path.display().to_string()))?;
    let v = validate(&rep)?;
    let genus = genus_of(&rep).map_err(|e| e.to_string());
    let galois = if v.connected { Some(galois_report(&rep)?) } else { None };
    let case = classify_ramification(&rep).ok();
    let profiles: Vec<Value> = rep
        .branch()
        .iter()
        .map(|b| json!({ "label": b.label, "cycle_type": b.perm.cycle_type() }))
        .collect();
    let mut summary = String::new();
    writeln!(summary, "degree {} over genus {}, {} branch points", rep.degree(), rep.base_genus(), rep.branch().len()).ok();
    writeln!(summary, "components: {}", v.components).ok();
    match &genus {
        Ok(g) => writeln!(summary, "genus: {g}").ok(),
        Err(e) => writeln!(summary, "genus: {e}").ok(),
    };
    if let Some(g) = &galois {
        writeln!(summary, "monodromy group: order {} ({})", g.order, g.class).ok();
    }
    if let Some(c) = case {
        writeln!(summary, "ramification: case {c:?}").ok();
    }
    let result = json!({
        "validation": v,
        "genus": genus.as_ref().ok(),
        "genus_error": genus.as_ref().err(),
        "galois": galois,
        "ramification_case": case.map(|c| format!("{c:?}")),
        "profiles": profiles,
    });
    Ok(Report { json: envelope("analyze", raw, result), summary })
}

fn component_table(a: &crate::cover::CoverAnalysis) -> String {
    let mut s = String::new();
    writeln!(s, "{:>4} {:>7} {:>6}", "#", "degree", "genus").ok();
    for (i, c) in a.components.iter().enumerate() {
        writeln!(s, "{:>4} {:>7} {:>6}", i, c.degree, c.genus).ok();
    }
    writeln!(s, "total genus {}", a.total_genus).ok();
    s
}

fn pair_product_cmd(path: &Path) -> Result<Report, CliError> {
    let (rep, raw) = load_rep(path)?;
    let a = pair_product(&rep)?;
    let summary = component_table(&a);
    Ok(Report { json: envelope("pair-product", raw, serde_json::to_value(&a).expect("serializable")), summary })
}

fn complementary_cmd(args: &ComplementaryArgs) -> Result<Report, CliError> {
    let ((phi, phi_raw), (x, x_raw)) = match (&args.pair, &args.phi, &args.x) {
        (Some(p), _, _) => (load_rep_key(p, "phi")?, load_rep_key(p, "x")?),
        (None, Some(p), Some(x)) => (load_rep_key(p, "phi")?, load_rep_key(x, "x")?),
        _ => return Err(CliError::validation("need --pair, or both --phi and --x")),
    };
    let r = complementary_genus(&phi, &x)?;
    let summary = format!(
        "n = {}, |G| = {}, |H_W| = {}, cover of degree {} with genus {}\n",
        r.n, r.group_order, r.hw_order, r.index, r.genus
    );
    let input = json!({ "phi": phi_raw, "x": x_raw });
    Ok(Report { json: envelope("complementary", input, serde_json::to_value(&r).expect("serializable")), summary })
}

fn track_cmd(args: &TrackArgs) -> Result<Report, CliError> {
    let raw = read_value(&args.model)?;
    let j: CoverModelJson = parse_json(&args.model, raw.clone())?;
    let mut model =
        CoverModel::from_json(&j).map_err(|e| CliError::from(e).context(&args.model.display().to_string()))?;
    if let Some(p) = args.precision {
        model = model.with_precision(p);
    }
    let mut opts = TrackOptions::for_model(&model);
    opts.verify_refinement = !args.no_refine;
    opts.step_fraction = args.step_fraction;
    opts.radius_scale = args.radius_scale;
    let t = track_monodromy_with(&model, &opts)?;
    let mut summary = String::new();
    writeln!(summary, "base point {}", t.base_point).ok();
    writeln!(summary, "{:>5} {:>24} {:>14} {:>10}", "loop", "center", "phi", "x").ok();
    for l in &t.loops {
        let center = l.center.map_or("inf".to_string(), |c| format!("{:.6}{:+.6}i", c[0], c[1]));
        let cyc = |c: &Vec<Vec<usize>>| {
            if c.is_empty() {
                "()".to_string()
            } else {
                c.iter().map(|x| format!("({})", x.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))).collect()
            }
        };
        writeln!(summary, "{:>5} {:>24} {:>14} {:>10}", l.label, center, cyc(&l.phi_perm), cyc(&l.x_perm)).ok();
    }
    let square = fiber_square_over_p1(&t.rep_phi, &t.rep_x);
    let comp = complementary_genus(&t.rep_phi, &t.rep_x);
    let pipeline = json!({
        "genus_phi": rh_genus(&t.rep_phi).ok(),
        "genus_x": rh_genus(&t.rep_x).ok(),
        "fiber_square": square.as_ref().ok().map(|a| json!({ "genera": a.genera(), "total_genus": a.total_genus })),
        "fiber_square_error": square.as_ref().err().map(ToString::to_string),
        "complementary_genus": comp.as_ref().ok().map(|c| c.genus),
        "complementary_error": comp.as_ref().err().map(ToString::to_string),
    });
    if let Ok(a) = &square {
        writeln!(summary, "fiber square component genera {:?}", a.genera()).ok();
    }
    match &comp {
        Ok(c) => writeln!(summary, "complementary genus {}", c.genus).ok(),
        Err(e) => writeln!(summary, "complementary: {e}").ok(),
    };
    let result = json!({
        "rep_phi": t.rep_phi,
        "rep_x": t.rep_x,
        "provenance": t,
        "options": opts,
        "pipeline": pipeline,
    });
    Ok(Report { json: envelope("track", raw, result), summary })
}

fn core_check_cmd(args: &CoreCheckArgs) -> Result<Report, CliError> {
    let raw = read_value(&args.corr)?;
    let j: CorrespondenceJson = parse_json(&args.corr, raw.clone())?;
    let corr = Correspondence::from_json(&j).map_err(|e| CliError::from(e).context(&args.corr.display().to_string()))?;
    if args.samples == 0 {
        return Err(CliError::validation("--samples must be at least 1"));
    }
    if !(args.tol > 0.0 && args.tol < 0.1) {
        return Err(CliError::validation(format!("--tol {} out of range (0, 0.1)", args.tol)));
    }
    let mut starts = Vec::new();
    if let Some(s) = &args.start {
        starts.push(ProjPoint::parse(s).map_err(CliError::validation)?);
    }
    let random = args.samples.saturating_sub(starts.len());
    starts.extend(random_starts(&corr, random, args.seed)?);
    let opts = ClumpOptions {
        tolerance: args.tol,
        budget: args.budget,
        max_points: args.max_points,
        stop_on_certificate: !args.full,
    };
    let v = core_verdict_from(&corr, &starts, &opts, args.seed)?;
    let mut summary = String::new();
    writeln!(summary, "bound m = {}", corr.bound()).ok();
    for r in &v.reports {
        writeln!(summary, "start {}: {:?}", r.start, r.verdict).ok();
        writeln!(summary, "{:>4} {:>10}", "i", "#F_i").ok();
        for (i, s) in r.sizes.iter().enumerate() {
            writeln!(summary, "{:>4} {:>10}", i, s).ok();
        }
    }
    writeln!(summary, "verdict: {:?}", v.verdict).ok();
    let input = json!({ "corr": raw, "options": opts, "starts": starts });
    Ok(Report { json: envelope("core-check", input, serde_json::to_value(&v).expect("serializable")), summary })
}

fn random_cmd(args: &RandomArgs) -> Result<Report, CliError> {
    let input = json!({ "degree": args.degree, "case": args.case, "seed": args.seed, "p1_pair": args.p1_pair });
    if args.p1_pair {
        let (phi, x) = random_generic_p1_pair(args.degree, args.seed)?;
        let summary = format!("generic degree-{} map with {} branch points\n", args.degree, phi.branch().len());
        return Ok(Report { json: envelope("random-cover", input, json!({ "phi": phi, "x": x })), summary });
    }
    let case: RamificationCase = args.case.parse().map_err(CliError::validation)?;
    let rep = random_cover(args.degree, case, args.seed)?;
    let summary = format!("degree {} cover of a genus-1 curve, case {case:?}, genus {}\n", args.degree, rh_genus(&rep)?);
    Ok(Report { json: envelope("random-cover", input, json!({ "rep": rep })), summary })
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match JobConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ErrorFamily::Validation as i32 } else { 0 };
            e.print().ok();
            return code;
        }
    };
    let level = match config.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init().ok();
    if let Some(n) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("cannot set thread count: {e}");
        }
    }
    match run(&config) {
        Ok(report) => {
            let mut text = serde_json::to_string_pretty(&report.json).expect("serializable");
            text.push('\n');
            let written = match &config.out {
                Some(p) => write_atomic(p, text.as_bytes()).map_err(|e| format!("{}: {e}", p.display())),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ErrorFamily::Io as i32;
            }
            if !config.quiet {
                eprint!("{}", report.summary);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.family as i32
        }
    }
}
