//! Command-line front end. Every command writes one JSON report with the
//! tool version, the parsed configuration, results, verdict flags and a
//! separate `timing` object.
//!
//! Exit codes: 0 success, 1 invariant or assertion failure, 2 input error,
//! 3 budget exhausted.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boundary::{
    boundary_approx, boundary_cloud, elementary_check, BoundaryError, VisualQuasimetric,
};
use crate::cayley::{build_ball_with_limit, distance, distance_direct, CayleyError};
use crate::isoperimetry::{area, hyperbolicity_scan, AreaBudget, AreaError, ScanOptions, SupRatio};
use crate::presentation::{Presentation, Strategy, TrivialityOracle};
use crate::quasimetric::{
    boxcount_dimension, chain_metrize, doubling_constant_estimate, doubling_iterate_check,
    dyadic_radii, is_metric, lipschitz_constant, measure_doubling_check, quasimetric_constant,
    snowflake, ultrametric_violation, Epsilon, PointCloud, QuasimetricError,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Overrides the default area-search node budget.
pub const NODE_BUDGET_ENV: &str = "HYPGROUP_NODE_BUDGET";

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "hypgroup",
    version,
    about = "Word metrics, isoperimetric areas and quasimetric audits"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every sampled test set.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Cayley ball around the identity.
    Ball(BallArgs),
    /// Word-metric distance between two words.
    Dist(DistArgs),
    /// Exact area of one trivial word.
    Area(AreaArgs),
    /// Areas of all trivial words up to a length, and the sup of A/L.
    Scan(ScanArgs),
    /// Quasimetric constant, metric and Lipschitz audit of a point cloud.
    Qaudit(QauditArgs),
    /// Chain metrization of a point cloud.
    Metrize(MetrizeArgs),
    /// Doubling constants of a point cloud and its counting or weighted measure.
    Doubling(DoublingArgs),
    /// Box-count dimension of a point cloud.
    Dimension(DimensionArgs),
    /// Finite-depth boundary of a free group.
    Boundary(BoundaryArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GroupArgs {
    /// Presentation file (`gens:` and `rel:` lines).
    #[arg(long)]
    pub pres: PathBuf,
    /// auto, free, exp:m1,m2,… or rewrite:L,S.
    #[arg(long, default_value = "auto")]
    pub oracle: String,
}

#[derive(Debug, Args, Serialize)]
pub struct BallArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, default_value_t = crate::cayley::DEFAULT_BALL_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct DistArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long, default_value_t = 64)]
    pub cap: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 64)]
    pub max_area: u64,
    #[arg(long, default_value_t = 8)]
    pub max_factors: usize,
    /// Default 10^7, or the HYPGROUP_NODE_BUDGET environment variable.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Relator weight is L(r)^p.
    #[arg(long, default_value_t = 2)]
    pub weight_exponent: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct AreaArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub word: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub maxlen: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Keep one word per class of cyclic rotations.
    #[arg(long)]
    pub cyclic_symmetry: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CloudArgs {
    /// Point cloud, `.csv` lower triangle or JSON.
    #[arg(long)]
    pub cloud: PathBuf,
    /// Replace d by d^a before anything else.
    #[arg(long)]
    pub snowflake: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct QauditArgs {
    #[command(flatten)]
    pub cloud: CloudArgs,
    /// Base points p whose distance functions d(·, p) are audited.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct MetrizeArgs {
    #[command(flatten)]
    pub cloud: CloudArgs,
    /// Chain exponent, or `auto`.
    #[arg(long, default_value = "auto")]
    pub epsilon: String,
    /// Write the metrized cloud here as JSON.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DoublingArgs {
    #[command(flatten)]
    pub cloud: CloudArgs,
    /// Comma-separated radii; default is diam/2^k for k = 1..=octaves.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    #[arg(long, default_value_t = 6)]
    pub octaves: u32,
    /// Check the iterated bound C1^l for l = 1..=iterate.
    #[arg(long, default_value_t = 0)]
    pub iterate: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct DimensionArgs {
    #[command(flatten)]
    pub cloud: CloudArgs,
    #[arg(long, default_value_t = 6)]
    pub octaves: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundaryArgs {
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = std::f64::consts::LN_2)]
    pub epsilon: f64,
    /// Fit the box-count dimension over this many dyadic radii.
    #[arg(long)]
    pub octaves: Option<u32>,
    /// Write the boundary cloud here as JSON.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Invariant(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Invariant(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<QuasimetricError> for CliError {
    fn from(e: QuasimetricError) -> Self {
        match e {
            QuasimetricError::InvariantViolation { .. } | QuasimetricError::IterateBound { .. } => {
                CliError::Invariant(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::BallTooLarge(_)
            | CayleyError::CapExceeded(_)
            | CayleyError::OracleInconclusive(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<BoundaryError> for CliError {
    fn from(e: BoundaryError) -> Self {
        match e {
            BoundaryError::Quasimetric(q) => q.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// What a command produced, before it is wrapped into a report.
#[derive(Debug)]
pub struct Outcome {
    pub results: Value,
    pub exact: bool,
    pub verdict: String,
    pub status: u8,
}

impl Outcome {
    fn ok(results: Value, exact: bool, verdict: impl Into<String>) -> Self {
        Outcome {
            results,
            exact,
            verdict: verdict.into(),
            status: 0,
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    schema_version: u32,
    config: &'a Cli,
    results: &'a Value,
    flags: Flags<'a>,
    timing: Timing,
}

#[derive(Serialize)]
struct Flags<'a> {
    exact: bool,
    verdict: &'a str,
    status: u8,
}

#[derive(Serialize)]
struct Timing {
    wall_seconds: f64,
}

pub fn render_report(cli: &Cli, outcome: &Outcome, wall_seconds: f64) -> String {
    let report = Report {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        schema_version: REPORT_SCHEMA_VERSION,
        config: cli,
        results: &outcome.results,
        flags: Flags {
            exact: outcome.exact,
            verdict: &outcome.verdict,
            status: outcome.status,
        },
        timing: Timing { wall_seconds },
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    text
}

/// Parses, runs and reports; returns the process exit code.
pub fn execute(cli: Cli) -> u8 {
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            log::warn!("thread pool already configured: {e}");
        }
    }
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    let text = render_report(&cli, &outcome, start.elapsed().as_secs_f64());
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    if outcome.status != 0 {
        eprintln!("{}", outcome.verdict);
    }
    outcome.status
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Ball(a) => run_ball(a),
        Command::Dist(a) => run_dist(a),
        Command::Area(a) => run_area(a),
        Command::Scan(a) => run_scan(a),
        Command::Qaudit(a) => run_qaudit(a, cli.seed),
        Command::Metrize(a) => run_metrize(a),
        Command::Doubling(a) => run_doubling(a),
        Command::Dimension(a) => run_dimension(a),
        Command::Boundary(a) => run_boundary(a),
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn load_group(g: &GroupArgs) -> Result<(Presentation, TrivialityOracle), CliError> {
    let text = std::fs::read_to_string(&g.pres)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", g.pres.display())))?;
    let p: Presentation = text
        .parse()
        .map_err(|e| CliError::Input(format!("{}: {e}", g.pres.display())))?;
    let o = if g.oracle == "auto" {
        TrivialityOracle::auto(p.clone())
    } else {
        let s: Strategy = g
            .oracle
            .parse()
            .map_err(|e| CliError::Input(format!("--oracle: {e}")))?;
        TrivialityOracle::new(p.clone(), s)
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    Ok((p, o))
}

fn parse_word(p: &Presentation, text: &str) -> Result<crate::word::Word, CliError> {
    p.parse_word(text)
        .map_err(|e| CliError::Input(format!("word {text:?}: {e}")))
}

fn load_cloud(a: &CloudArgs) -> Result<PointCloud, CliError> {
    let c = PointCloud::read_path(&a.cloud).map_err(|e| match e {
        QuasimetricError::InvariantViolation { .. } => {
            CliError::Invariant(format!("{}: {e}", a.cloud.display()))
        }
        _ => CliError::Input(format!("{}: {e}", a.cloud.display())),
    })?;
    match a.snowflake {
        Some(s) => Ok(snowflake(&c, s)?),
        None => Ok(c),
    }
}

fn emit_cloud(path: &Path, c: &PointCloud) -> Result<(), CliError> {
    std::fs::write(path, c.to_json_string())
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn budget(a: &BudgetArgs) -> Result<AreaBudget, CliError> {
    let max_nodes = match a.max_nodes {
        Some(n) => n,
        None => match std::env::var(NODE_BUDGET_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                CliError::Input(format!("{NODE_BUDGET_ENV}={v:?} is not a node count"))
            })?,
            Err(_) => AreaBudget::default().max_nodes,
        },
    };
    Ok(AreaBudget {
        max_area: a.max_area,
        max_factors: a.max_factors,
        max_nodes,
        weight_exponent: a.weight_exponent,
        ..AreaBudget::default()
    })
}

fn run_ball(a: &BallArgs) -> Result<Outcome, CliError> {
    let (p, o) = load_group(&a.group)?;
    let ball = build_ball_with_limit(&p, &o, a.radius, a.limit)?;
    let results = json!({
        "oracle": o.strategy().to_string(),
        "size": ball.len(),
        "ball": ball.export(p.alphabet()),
    });
    Ok(Outcome::ok(results, true, "ok"))
}

fn run_dist(a: &DistArgs) -> Result<Outcome, CliError> {
    let (p, o) = load_group(&a.group)?;
    let phi = parse_word(&p, &a.from)?;
    let psi = parse_word(&p, &a.to)?;
    let via_identity = distance(&p, &o, &phi, &psi, a.cap)?;
    let direct = distance_direct(&o, &phi, &psi, a.cap)?;
    let results = json!({
        "oracle": o.strategy().to_string(),
        "distance": via_identity,
        "direct_distance": direct,
    });
    let mut out = Outcome::ok(results, true, "ok");
    if via_identity != direct {
        out.status = 1;
        out.verdict =
            format!("distance mismatch: {via_identity} via the identity, {direct} directly");
    }
    Ok(out)
}

fn run_area(a: &AreaArgs) -> Result<Outcome, CliError> {
    let (p, o) = load_group(&a.group)?;
    let w = parse_word(&p, &a.word)?;
    let b = budget(&a.budget)?;
    match area(&p, &o, &w, &b) {
        Ok(c) => {
            let results = json!({
                "word": p.render(&w),
                "area": c.value,
                "exact": c.exact,
                "conj_len": c.conj_len,
                "rel_cost": c.rel_cost,
                "witness": c.witness.render(&p),
                "stats": c.stats,
                "budget": b,
            });
            Ok(Outcome::ok(results, true, "exact"))
        }
        Err(AreaError::BudgetExceeded {
            lower_bound,
            upper,
            stats,
        }) => {
            let results = json!({
                "word": p.render(&w),
                "area": upper.as_ref().map(|c| c.value),
                "lower_bound": lower_bound,
                "exact": false,
                "witness": upper.as_ref().map(|c| c.witness.render(&p)),
                "stats": stats,
                "budget": b,
            });
            Ok(Outcome {
                results,
                exact: false,
                verdict: format!("budget exhausted; area >= {lower_bound}"),
                status: 3,
            })
        }
        Err(AreaError::NotTrivial) => Err(CliError::Input(format!(
            "NotTrivial: {} is not trivial in the presented group",
            a.word
        ))),
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn run_scan(a: &ScanArgs) -> Result<Outcome, CliError> {
    let (p, o) = load_group(&a.group)?;
    let b = budget(&a.budget)?;
    let options = ScanOptions {
        cyclic_symmetry: a.cyclic_symmetry,
    };
    let report = hyperbolicity_scan(&p, &o, a.maxlen, &b, options)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let verdict = match &report.sup_ratio {
        SupRatio::Vacuous => "vacuous".to_string(),
        SupRatio::Value(r) => format!("sup A/L = {}/{}", r.num, r.den),
    };
    let exact = report.all_exact;
    let mut out = Outcome::ok(to_value(&report), exact, verdict);
    if !exact {
        out.status = 3;
        out.verdict = format!("{}; some entries inexact or undecided", out.verdict);
    }
    Ok(out)
}

fn run_qaudit(a: &QauditArgs, seed: u64) -> Result<Outcome, CliError> {
    let c = load_cloud(&a.cloud)?;
    let n = c.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases: Vec<usize> = rand::seq::index::sample(&mut rng, n, a.samples.min(n)).into_vec();
    bases.sort_unstable();
    let mut lipschitz = Vec::new();
    if n >= 2 {
        for &p in &bases {
            let f: Vec<f64> = (0..n).map(|x| c.d(x, p)).collect();
            lipschitz.push(json!({"point": p, "constant": lipschitz_constant(&c, &f)?}));
        }
    }
    let metric = is_metric(&c);
    let results = json!({
        "points": n,
        "quasimetric_constant": quasimetric_constant(&c),
        "is_metric": metric,
        "is_ultrametric": ultrametric_violation(&c).is_none(),
        "distance_functions": lipschitz,
    });
    Ok(Outcome::ok(
        results,
        true,
        if metric { "metric" } else { "quasimetric" },
    ))
}

fn run_metrize(a: &MetrizeArgs) -> Result<Outcome, CliError> {
    let c = load_cloud(&a.cloud)?;
    let eps = if a.epsilon == "auto" {
        Epsilon::Auto
    } else {
        Epsilon::Fixed(
            a.epsilon
                .parse()
                .map_err(|_| CliError::Input(format!("--epsilon {:?}", a.epsilon)))?,
        )
    };
    let m = chain_metrize(&c, eps)?;
    let n = c.len();
    let tol = 1.0 + 1e-12;
    let mut holds = true;
    for i in 0..n {
        for j in 0..i {
            let r = m.rho.d(i, j).powf(m.delta);
            let d = c.d(i, j);
            holds &= r / m.c_prime <= d * tol && d <= m.c_prime * r * tol;
        }
    }
    let rho_metric = is_metric(&m.rho);
    if let Some(path) = &a.emit {
        emit_cloud(path, &m.rho)?;
    }
    let results = json!({
        "points": n,
        "epsilon": m.epsilon,
        "delta": m.delta,
        "c_prime": m.c_prime,
        "rho_is_metric": rho_metric,
        "two_sided_bound_holds": holds,
    });
    let mut out = Outcome::ok(results, true, "ok");
    if !(holds && rho_metric) {
        out.status = 1;
        out.verdict = "metrization failed re-verification".into();
    }
    Ok(out)
}

fn run_doubling(a: &DoublingArgs) -> Result<Outcome, CliError> {
    let c = load_cloud(&a.cloud)?;
    let radii = match &a.radii {
        Some(r) => r.clone(),
        None => dyadic_radii(&c, a.octaves),
    };
    let covers = doubling_constant_estimate(&c, &radii)?;
    let measure = measure_doubling_check(&c, &radii)?;
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for l in 1..=a.iterate {
        for &r in &radii {
            for x in 0..c.len() {
                checked += 1;
                match doubling_iterate_check(&c, x, r, l, covers.constant) {
                    Ok(_) => {}
                    Err(QuasimetricError::IterateBound {
                        x,
                        r,
                        l,
                        count,
                        bound,
                    }) => failures
                        .push(json!({"x": x, "r": r, "l": l, "count": count, "bound": bound})),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    let results = json!({
        "points": c.len(),
        "c1": covers.constant,
        "c2": measure.c2,
        "covers": covers,
        "measure": measure,
        "iterate_checks": checked,
        "iterate_failures": failures,
    });
    let mut out = Outcome::ok(results, true, "ok");
    if !failures.is_empty() {
        out.status = 1;
        out.verdict = format!("{} iterated cover bounds failed", failures.len());
    }
    Ok(out)
}

fn run_dimension(a: &DimensionArgs) -> Result<Outcome, CliError> {
    let c = load_cloud(&a.cloud)?;
    let fit = boxcount_dimension(&c, &dyadic_radii(&c, a.octaves))?;
    let verdict = format!("slope {:.4}", fit.slope);
    Ok(Outcome::ok(to_value(&fit), false, verdict))
}

fn run_boundary(a: &BoundaryArgs) -> Result<Outcome, CliError> {
    let b = boundary_approx(a.rank, a.depth)?;
    let v = VisualQuasimetric::new(a.epsilon)?;
    let class = elementary_check(a.rank)?;
    let mut results = json!({
        "rank": a.rank,
        "depth": a.depth,
        "epsilon": a.epsilon,
        "points": b.points.len(),
        "classification": class,
    });
    if a.octaves.is_some() || a.emit.is_some() {
        let c = boundary_cloud(&b, v)?;
        if let Some(k) = a.octaves {
            results["dimension"] = to_value(boxcount_dimension(&c, &dyadic_radii(&c, k))?);
        }
        if let Some(path) = &a.emit {
            emit_cloud(path, &c)?;
        }
    }
    Ok(Outcome::ok(results, true, format!("{class:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from([
            "hypgroup", "scan", "--pres", "z3.grp", "--maxlen", "12", "--seed", "7",
        ])
        .unwrap();
        assert_eq!(cli.seed, 7);
        assert!(matches!(
            cli.command,
            Command::Scan(ScanArgs { maxlen: 12, .. })
        ));
    }

    #[test]
    fn budget_flag_beats_default() {
        let a = BudgetArgs {
            max_area: 10,
            max_factors: 2,
            max_nodes: Some(99),
            weight_exponent: 1,
        };
        let b = budget(&a).unwrap();
        assert_eq!(
            (b.max_area, b.max_factors, b.max_nodes, b.weight_exponent),
            (10, 2, 99, 1)
        );
    }

    #[test]
    fn report_keeps_timing_separate() {
        let cli =
            Cli::try_parse_from(["hypgroup", "boundary", "--rank", "1", "--depth", "3"]).unwrap();
        let out = run(&cli).unwrap();
        let v: Value = serde_json::from_str(&render_report(&cli, &out, 1.5)).unwrap();
        assert_eq!(v["timing"]["wall_seconds"], 1.5);
        assert_eq!(v["results"]["points"], 2);
        assert_eq!(v["results"]["classification"], "elementary");
        assert_eq!(v["config"]["command"]["boundary"]["rank"], 1);
    }
}
