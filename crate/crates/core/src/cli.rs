//! Command-line driver: `check`, `solve`, `regions`, `multiplier`.
//!
//! Configuration comes from one JSON file (`--config`) with flag overrides;
//! flags win. Every JSON output embeds the fully resolved configuration.
//! Exit codes: 0 success, 1 domain error, 2 usage or configuration error.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::ElbError;
use crate::export::{write_json, write_multiplier_csv, write_path_csv, write_region_csv};
use crate::model::{
    d_bar, d_bar0, elb_inflation_threshold, p_bar, validate_params, AssumptionReport, ModelParams,
    ShockSpec,
};
use crate::multiplier::{
    ar2_coefficients, ar2_decompose, mixed_series, pl_series, pn_series, Ar2Coefficients,
    ModalDecomposition, MultiplierLimit, MultiplierSeries,
};
use crate::path::{
    realize_path, solve_hypothetical_path, tie_tolerance, PathKind, DIVERGENCE_FACTOR,
};
use crate::regions::{
    default_axes, ell_bar, linspace, region_map, threshold_curves, CurvePoint, MapMode,
    BOUNDARY_TOL, DEFAULT_ELL_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Domain(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_USAGE,
            CliError::Domain(_) | CliError::Io(_) => EXIT_DOMAIN,
        }
    }
}

impl From<ElbError> for CliError {
    fn from(e: ElbError) -> Self {
        match e {
            ElbError::InvalidParam { .. } | ElbError::InvalidShock { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nk-elb",
    version,
    about = "NK model at the effective lower bound"
)]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check parameter restrictions and print thresholds.
    Check,
    /// Solve the low-state path (and a realized path given an exit period).
    Solve(SolveArgs),
    /// Label a (p, d) grid.
    Regions(RegionsArgs),
    /// Government-spending multiplier series.
    Multiplier(MultiplierArgs),
}

#[derive(Debug, Args, Default)]
pub struct SolveArgs {
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long = "exit-period")]
    pub exit_period: Option<usize>,
    #[arg(long = "ell-cap")]
    pub ell_cap: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct RegionsArgs {
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Grid size as `PxD`, e.g. `200x200`.
    #[arg(long, value_name = "PxD")]
    pub grid: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Msv,
    Truncated,
}

impl From<ModeArg> for MapMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Msv => MapMode::Msv,
            ModeArg::Truncated => MapMode::Truncated,
        }
    }
}

#[derive(Debug, Args, Default)]
pub struct MultiplierArgs {
    #[arg(long, value_enum)]
    pub context: Option<ContextName>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Series length L (values for ℓ = 1..=L).
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long = "ell-cap")]
    pub ell_cap: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextName {
    Pn,
    Pl,
    Mixed,
}

/// Run configuration as read from disk. Every block is optional except
/// `params`; missing values come from flags or defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: ModelParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shock: Option<ShockConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exit_period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<MapMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<MultiplierConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell_cap: Option<usize>,
}

impl RunConfig {
    pub fn baseline() -> Self {
        RunConfig {
            params: ModelParams::baseline(),
            shock: None,
            exit_period: None,
            grid: None,
            mode: None,
            multiplier: None,
            ell_cap: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShockConfig {
    #[serde(default)]
    pub d: Option<f64>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub ell: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_p: usize,
    pub n_d: usize,
    #[serde(default)]
    pub p_min: Option<f64>,
    #[serde(default)]
    pub p_max: Option<f64>,
    #[serde(default)]
    pub d_min: Option<f64>,
    #[serde(default)]
    pub d_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierConfig {
    #[serde(default)]
    pub context: Option<ContextName>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub d: Option<f64>,
    #[serde(default)]
    pub ell: Option<usize>,
    /// Optional `(p, d)` sweep for the mixed thresholds.
    #[serde(default)]
    pub sweep_p: Option<Vec<f64>>,
    #[serde(default)]
    pub sweep_d: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub tie: f64,
    pub boundary: f64,
    pub divergence_factor: f64,
}

impl Tolerances {
    fn for_params(params: &ModelParams) -> Self {
        Tolerances {
            tie: tie_tolerance(params),
            boundary: BOUNDARY_TOL,
            divergence_factor: DIVERGENCE_FACTOR,
        }
    }
}

// ---------------------------------------------------------------- check

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutput {
    pub config: CheckEcho,
    pub report: AssumptionReport,
    pub p_bar: Option<f64>,
    pub d_bar0: f64,
    pub pi_floor: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEcho {
    pub params: ModelParams,
    pub tolerances: Tolerances,
}

pub fn cmd_check(cfg: &RunConfig) -> Result<CheckOutput, CliError> {
    let params = cfg.params;
    let report = validate_params(&params)?;
    Ok(CheckOutput {
        config: CheckEcho {
            params,
            tolerances: Tolerances::for_params(&params),
        },
        report,
        p_bar: p_bar(&params).ok(),
        d_bar0: d_bar0(&params),
        pi_floor: elb_inflation_threshold(&params),
    })
}

fn check_text(out: &CheckOutput) -> String {
    let r = &out.report;
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let mut s = String::new();
    s.push_str(&format!(
        "assumption 1: {} (psi = {} < m_xpi/(beta m_pipi) = {})\n",
        verdict(r.a1_ok),
        out.config.params.psi,
        r.a1_bound
    ));
    s.push_str(&format!(
        "assumption 2: {} (psi = {} > {})\n",
        verdict(r.a2_ok),
        out.config.params.psi,
        r.a2_bound
    ));
    match out.p_bar {
        Some(pb) => s.push_str(&format!("p_bar = {pb}\n")),
        None => s.push_str("p_bar = none\n"),
    }
    s.push_str(&format!("d_bar0 = {}\n", out.d_bar0));
    s.push_str(&format!("pi_floor = {}\n", out.pi_floor));
    s
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Clone, Serialize)]
pub struct SolveEcho {
    pub params: ModelParams,
    pub shock: ShockSpec,
    pub exit_period: Option<usize>,
    pub ell_cap: usize,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub config: SolveEcho,
    pub kind: &'static str,
    pub switch_k: Option<usize>,
    pub ell_bar: Option<usize>,
    pub p_bar: Option<f64>,
    pub d_bar_p: f64,
    pub d_bar0: f64,
    pub pi_floor: f64,
    pub hypothetical_csv: String,
    pub realized_csv: Option<String>,
}

pub fn resolve_solve(cfg: &RunConfig, args: &SolveArgs) -> Result<SolveEcho, CliError> {
    let base = cfg.shock.unwrap_or_default();
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| CliError::Config(format!("shock.{name} missing (config or --{name})")))
    };
    let d = need(args.d.or(base.d), "d")?;
    let p = need(args.p.or(base.p), "p")?;
    let ell = args
        .ell
        .or(base.ell)
        .ok_or_else(|| CliError::Config("shock.ell missing (config or --ell)".into()))?;
    let shock = ShockSpec { d, p, ell };
    shock.check_for(&cfg.params)?;
    Ok(SolveEcho {
        params: cfg.params,
        shock,
        exit_period: args.exit_period.or(cfg.exit_period),
        ell_cap: args.ell_cap.or(cfg.ell_cap).unwrap_or(DEFAULT_ELL_CAP),
        tolerances: Tolerances::for_params(&cfg.params),
    })
}

/// Writes `path.csv`, `realized.csv` (with an exit period) and `solve.json`.
pub fn cmd_solve(cfg: &RunConfig, args: &SolveArgs, out: &Path) -> Result<SolveSummary, CliError> {
    let echo = resolve_solve(cfg, args)?;
    let params = echo.params;
    let path = solve_hypothetical_path(&params, &echo.shock)?;
    fs::create_dir_all(out)?;

    write_path_csv(
        BufWriter::new(File::create(out.join("path.csv"))?),
        &path.states,
    )?;
    let realized_csv = match echo.exit_period {
        Some(n) => {
            let realized = realize_path(&path, n)?;
            write_path_csv(
                BufWriter::new(File::create(out.join("realized.csv"))?),
                &realized,
            )?;
            Some("realized.csv".to_string())
        }
        None => None,
    };
    let (d, p) = (echo.shock.d, echo.shock.p);
    let summary = SolveSummary {
        kind: path.kind.label(),
        switch_k: match path.kind {
            PathKind::Mixed { switch_k } => Some(switch_k),
            _ => None,
        },
        ell_bar: ell_bar(&params, d, p, echo.ell_cap),
        p_bar: p_bar(&params).ok(),
        d_bar_p: d_bar(&params, p),
        d_bar0: d_bar0(&params),
        pi_floor: elb_inflation_threshold(&params),
        hypothetical_csv: "path.csv".into(),
        realized_csv,
        config: echo,
    };
    write_json(
        BufWriter::new(File::create(out.join("solve.json"))?),
        &summary,
    )?;
    Ok(summary)
}

// ---------------------------------------------------------------- regions

#[derive(Debug, Clone, Serialize)]
pub struct RegionsEcho {
    pub params: ModelParams,
    pub mode: MapMode,
    pub n_p: usize,
    pub n_d: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionsSummary {
    pub config: RegionsEcho,
    pub p_bar: Option<f64>,
    pub d_bar0: f64,
    pub curves: Vec<CurvePoint>,
    pub label_counts: Vec<LabelCount>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LabelCount {
    pub msv_count: Option<u8>,
    pub kind: String,
    pub stability: String,
    pub cells: usize,
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::Config(format!("--grid must be PxD, got `{s}`")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| {
                CliError::Config(format!("--grid must be PxD with positive sizes, got `{s}`"))
            })
    };
    Ok((parse(a)?, parse(b)?))
}

pub fn resolve_regions(cfg: &RunConfig, args: &RegionsArgs) -> Result<RegionsEcho, CliError> {
    let (n_p, n_d) = match (&args.grid, cfg.grid) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(g)) => (g.n_p, g.n_d),
        (None, None) => (200, 200),
    };
    let g = cfg.grid;
    Ok(RegionsEcho {
        params: cfg.params,
        mode: args
            .mode
            .map(MapMode::from)
            .or(cfg.mode)
            .unwrap_or(MapMode::Msv),
        n_p,
        n_d,
        p_min: g.and_then(|g| g.p_min).unwrap_or(0.0),
        p_max: g.and_then(|g| g.p_max).unwrap_or(0.99),
        d_min: g.and_then(|g| g.d_min).unwrap_or(0.0),
        d_max: g.and_then(|g| g.d_max).unwrap_or(cfg.params.d_max),
        tolerances: Tolerances::for_params(&cfg.params),
    })
}

/// Writes `regions.csv` and `regions.json`.
pub fn cmd_regions(
    cfg: &RunConfig,
    args: &RegionsArgs,
    out: &Path,
) -> Result<RegionsSummary, CliError> {
    let echo = resolve_regions(cfg, args)?;
    let params = echo.params;
    let (p_axis, d_axis) = if cfg.grid.is_none() {
        default_axes(&params, echo.n_p, echo.n_d)
    } else {
        (
            linspace(echo.p_min, echo.p_max, echo.n_p),
            linspace(echo.d_min, echo.d_max, echo.n_d),
        )
    };
    let grid = region_map(&params, &p_axis, &d_axis, echo.mode)?;
    fs::create_dir_all(out)?;
    write_region_csv(
        BufWriter::new(File::create(out.join("regions.csv"))?),
        &grid,
    )?;

    let mut counts: Vec<LabelCount> = Vec::new();
    for l in &grid.labels {
        let key = LabelCount {
            msv_count: l.msv_count,
            kind: l.truncated_kind.as_str().into(),
            stability: l.stability.as_str().into(),
            cells: 0,
        };
        match counts.iter_mut().find(|c| {
            c.msv_count == key.msv_count && c.kind == key.kind && c.stability == key.stability
        }) {
            Some(c) => c.cells += 1,
            None => counts.push(LabelCount { cells: 1, ..key }),
        }
    }
    let summary = RegionsSummary {
        p_bar: p_bar(&params).ok(),
        d_bar0: d_bar0(&params),
        curves: threshold_curves(&params, &p_axis),
        label_counts: counts,
        config: echo,
    };
    write_json(
        BufWriter::new(File::create(out.join("regions.json"))?),
        &summary,
    )?;
    Ok(summary)
}

// ---------------------------------------------------------------- multiplier

#[derive(Debug, Clone, Serialize)]
pub struct MultiplierEcho {
    pub params: ModelParams,
    pub context: ContextName,
    pub p: f64,
    pub d: Option<f64>,
    pub ell: usize,
    pub ell_cap: usize,
    pub sweep_p: Option<Vec<f64>>,
    pub sweep_d: Option<Vec<f64>>,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplierSummary {
    pub config: MultiplierEcho,
    pub ell_bar: Option<usize>,
    pub ell_plus: Option<usize>,
    pub limit: MultiplierLimit,
    pub tau_star: f64,
    pub delta_star: f64,
    pub c_star: f64,
    pub alpha_star: Option<f64>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub b1: Option<f64>,
    pub b2: Option<f64>,
    pub decomposition_error: Option<String>,
    pub sweep_csv: Option<String>,
}

pub fn resolve_multiplier(
    cfg: &RunConfig,
    args: &MultiplierArgs,
) -> Result<MultiplierEcho, CliError> {
    let base = cfg.multiplier.clone().unwrap_or_default();
    let context = args.context.or(base.context).unwrap_or(ContextName::Pl);
    let p = args
        .p
        .or(base.p)
        .ok_or_else(|| CliError::Config("multiplier.p missing (config or --p)".into()))?;
    if !(p.is_finite() && (0.0..1.0).contains(&p)) {
        return Err(CliError::Config(format!(
            "multiplier.p must lie in [0, 1), got {p}"
        )));
    }
    let d = args.d.or(base.d);
    if context == ContextName::Mixed && d.is_none() {
        return Err(CliError::Config(
            "mixed context needs d (config or --d)".into(),
        ));
    }
    let ell = args.ell.or(base.ell).unwrap_or(DEFAULT_ELL_CAP);
    if ell < 1 {
        return Err(CliError::Config("--ell must be ≥ 1".into()));
    }
    Ok(MultiplierEcho {
        params: cfg.params,
        context,
        p,
        d,
        ell,
        ell_cap: args.ell_cap.or(cfg.ell_cap).unwrap_or(DEFAULT_ELL_CAP),
        sweep_p: base.sweep_p,
        sweep_d: base.sweep_d,
        tolerances: Tolerances::for_params(&cfg.params),
    })
}

fn build_series(params: &ModelParams, echo: &MultiplierEcho) -> Result<MultiplierSeries, CliError> {
    Ok(match echo.context {
        ContextName::Pn => pn_series(params, echo.p, echo.ell),
        ContextName::Pl => pl_series(params, echo.p, echo.ell),
        ContextName::Mixed => {
            let d = echo.d.expect("checked in resolve");
            let mut s = mixed_series(params, d, echo.p, echo.ell.max(echo.ell_cap))?;
            s.ell_plus = s.ell_plus.filter(|&l| l <= echo.ell_cap);
            s.ell_bar = s.ell_bar.filter(|&l| l <= echo.ell_cap);
            s.values.truncate(echo.ell);
            s
        }
    })
}

/// Writes `multiplier.csv`, `multiplier.json` and, when a sweep is
/// configured, `multiplier_sweep.csv`.
pub fn cmd_multiplier(
    cfg: &RunConfig,
    args: &MultiplierArgs,
    out: &Path,
) -> Result<MultiplierSummary, CliError> {
    let echo = resolve_multiplier(cfg, args)?;
    let params = echo.params;
    let series = build_series(&params, &echo)?;
    fs::create_dir_all(out)?;
    write_multiplier_csv(
        BufWriter::new(File::create(out.join("multiplier.csv"))?),
        &series,
    )?;

    let Ar2Coefficients {
        tau_star,
        delta_star,
        c_star,
        alpha_star,
    } = ar2_coefficients(&params, echo.p);
    let (dec, decomposition_error): (Option<ModalDecomposition>, _) =
        match ar2_decompose(&series, &params, echo.p) {
            Ok(d) => (Some(d), None),
            Err(e) => (None, Some(e.to_string())),
        };

    let sweep_csv = match (&echo.sweep_p, &echo.sweep_d) {
        (Some(ps), Some(ds)) => {
            write_sweep(
                &params,
                ps,
                ds,
                echo.ell_cap,
                &out.join("multiplier_sweep.csv"),
            )?;
            Some("multiplier_sweep.csv".to_string())
        }
        (None, None) => None,
        _ => {
            return Err(CliError::Config(
                "multiplier sweep needs both sweep_p and sweep_d".into(),
            ))
        }
    };

    let summary = MultiplierSummary {
        ell_bar: series.ell_bar,
        ell_plus: series.ell_plus,
        limit: series.limit,
        tau_star,
        delta_star,
        c_star,
        alpha_star,
        r1: dec.map(|d| d.r1),
        r2: dec.map(|d| d.r2),
        b1: dec.map(|d| d.b1),
        b2: dec.map(|d| d.b2),
        decomposition_error,
        sweep_csv,
        config: echo,
    };
    write_json(
        BufWriter::new(File::create(out.join("multiplier.json"))?),
        &summary,
    )?;
    Ok(summary)
}

/// `p,d,ell_bar,ell_plus` for every mixed-band cell of the sweep; cells
/// outside the band get empty threshold fields.
fn write_sweep(
    params: &ModelParams,
    ps: &[f64],
    ds: &[f64],
    ell_cap: usize,
    path: &Path,
) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(BufWriter::new(File::create(path)?));
    w.write_record(["p", "d", "ell_bar", "ell_plus"])?;
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    for &d in ds {
        for &p in ps {
            let (lb, lp) = match mixed_series(params, d, p, ell_cap) {
                Ok(s) => (s.ell_bar, s.ell_plus),
                Err(_) => (None, None),
            };
            w.write_record([
                crate::export::fmt_num(p),
                crate::export::fmt_num(d),
                opt(lb),
                opt(lp),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------- entry

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    match &cli.config {
        Some(path) => RunConfig::load(path),
        None => Ok(RunConfig::baseline()),
    }
}

/// Runs a parsed command line, printing diagnostics, and returns the
/// process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = (|| -> Result<i32, CliError> {
        let cfg = load_config(&cli)?;
        let out_dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
        let stdout = std::io::stdout();
        let mut so = stdout.lock();
        match &cli.command {
            Command::Check => {
                let out = cmd_check(&cfg)?;
                write!(so, "{}", check_text(&out))?;
                match &cli.out {
                    Some(dir) => {
                        fs::create_dir_all(dir)?;
                        write_json(BufWriter::new(File::create(dir.join("check.json"))?), &out)?;
                    }
                    None => write_json(&mut so, &out)?,
                }
                Ok(if out.report.all_ok() {
                    EXIT_OK
                } else {
                    for m in &out.report.messages {
                        eprintln!("{m}");
                    }
                    EXIT_DOMAIN
                })
            }
            Command::Solve(args) => {
                let s = cmd_solve(&cfg, args, &out_dir)?;
                writeln!(
                    so,
                    "kind = {}{}",
                    s.kind,
                    s.switch_k
                        .map(|k| format!(" (switch_k = {k})"))
                        .unwrap_or_default()
                )?;
                Ok(EXIT_OK)
            }
            Command::Regions(args) => {
                let s = cmd_regions(&cfg, args, &out_dir)?;
                for c in &s.label_counts {
                    writeln!(
                        so,
                        "{} {} {}: {}",
                        c.msv_count
                            .map(|n| n.to_string())
                            .unwrap_or_else(|| "-".into()),
                        c.kind,
                        c.stability,
                        c.cells
                    )?;
                }
                Ok(EXIT_OK)
            }
            Command::Multiplier(args) => {
                let s = cmd_multiplier(&cfg, args, &out_dir)?;
                writeln!(
                    so,
                    "ell_bar = {:?}, ell_plus = {:?}, limit = {:?}",
                    s.ell_bar, s.ell_plus, s.limit
                )?;
                Ok(EXIT_OK)
            }
        }
    })();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
