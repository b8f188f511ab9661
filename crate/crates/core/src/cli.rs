//! Command-line front end: single runs, convergence studies and scheme comparisons.
//!
//! Every subcommand reads an optional flat JSON config; command-line flags
//! override its keys. Artifacts are CSV files, each with a JSON sidecar that
//! records the fully resolved configuration.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analysis::{self, ConvergenceReport, DEFAULT_RESOLUTIONS};
use crate::error::{Result, WenoError};
use crate::problems::{self, Equation, ProblemSpec, StepRule};
use crate::solvers::{self, Diagnostics, GridSize, RunOutput, Solution, TimeControls};
use crate::weights::{LimiterKind, WeightScheme, DEFAULT_EPSILON, DEFAULT_POWER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

fn scheme_error(descriptor: &str, reason: impl Into<String>) -> WenoError {
    WenoError::InvalidScheme {
        descriptor: descriptor.to_string(),
        reason: reason.into(),
    }
}

/// Parses a scheme descriptor `family[:param=value]...`.
///
/// Families: `js3` (`eps`, `p`), `z3`, `n3`, `pplus3` (`eps`), and
/// `limiter:chi1` ... `limiter:chi5:k=<k>`. `k` outside `[1, 3]` is rejected
/// unless `allow_unsafe_k` is set.
pub fn parse_scheme(descriptor: &str, allow_unsafe_k: bool) -> Result<WeightScheme> {
    let mut parts = descriptor.trim().split(':');
    let family = parts.next().unwrap_or("").to_ascii_lowercase();
    let mut tag = None;
    let mut params: Vec<(String, String)> = Vec::new();
    for part in parts {
        match part.split_once('=') {
            Some((key, value)) => {
                let key = key.trim().to_ascii_lowercase();
                if params.iter().any(|(k, _)| *k == key) {
                    return Err(scheme_error(descriptor, format!("parameter `{key}` given twice")));
                }
                params.push((key, value.trim().to_string()));
            }
            None if family == "limiter" && tag.is_none() && params.is_empty() => {
                tag = Some(part.trim().to_ascii_lowercase());
            }
            None => return Err(scheme_error(descriptor, format!("unexpected token `{part}`"))),
        }
    }

    let take = |params: &mut Vec<(String, String)>, key: &str| -> Option<String> {
        let pos = params.iter().position(|(k, _)| k == key)?;
        Some(params.remove(pos).1)
    };
    let number = |value: &str, key: &str| -> Result<f64> {
        value
            .parse::<f64>()
            .map_err(|_| scheme_error(descriptor, format!("`{key}` is not a number: `{value}`")))
    };
    let eps = |params: &mut Vec<(String, String)>| -> Result<f64> {
        match take(params, "eps") {
            Some(v) => number(&v, "eps"),
            None => Ok(DEFAULT_EPSILON),
        }
    };

    let scheme = match family.as_str() {
        "js3" => {
            let epsilon = eps(&mut params)?;
            let p = match take(&mut params, "p") {
                Some(v) => v
                    .parse::<u32>()
                    .map_err(|_| scheme_error(descriptor, format!("`p` must be a positive integer: `{v}`")))?,
                None => DEFAULT_POWER,
            };
            WeightScheme::Js3 { epsilon, p }
        }
        "z3" => WeightScheme::Z3 {
            epsilon: eps(&mut params)?,
        },
        "n3" => WeightScheme::N3 {
            epsilon: eps(&mut params)?,
        },
        "pplus3" => WeightScheme::Pplus3 {
            epsilon: eps(&mut params)?,
        },
        "limiter" => {
            let kind = match tag.as_deref() {
                Some("chi1") => LimiterKind::Chi1,
                Some("chi2") => LimiterKind::Chi2,
                Some("chi3") => LimiterKind::Chi3,
                Some("chi4") => LimiterKind::Chi4,
                Some("chi5") => {
                    let k = take(&mut params, "k")
                        .ok_or_else(|| scheme_error(descriptor, "chi5 needs `k=<value>`"))?;
                    let k = number(&k, "k")?;
                    if allow_unsafe_k {
                        LimiterKind::chi5_unrestricted(k)
                    } else {
                        LimiterKind::chi5(k)
                    }
                    .map_err(|e| scheme_error(descriptor, e.to_string()))?
                }
                Some(other) => return Err(scheme_error(descriptor, format!("unknown limiter `{other}`"))),
                None => return Err(scheme_error(descriptor, "missing limiter tag (chi1..chi5)")),
            };
            WeightScheme::Limiter(kind)
        }
        "" => return Err(scheme_error(descriptor, "empty descriptor")),
        other => return Err(scheme_error(descriptor, format!("unknown family `{other}`"))),
    };
    if let Some((key, _)) = params.first() {
        return Err(scheme_error(descriptor, format!("unknown parameter `{key}`")));
    }
    scheme.validate().map_err(|e| scheme_error(descriptor, e.to_string()))?;
    Ok(scheme)
}

/// Canonical descriptor of `scheme`; `parse_scheme` inverts it exactly.
pub fn format_scheme(scheme: &WeightScheme) -> String {
    match *scheme {
        WeightScheme::Js3 { epsilon, p } => format!("js3:eps={epsilon:e}:p={p}"),
        WeightScheme::Z3 { epsilon } => format!("z3:eps={epsilon:e}"),
        WeightScheme::N3 { epsilon } => format!("n3:eps={epsilon:e}"),
        WeightScheme::Pplus3 { epsilon } => format!("pplus3:eps={epsilon:e}"),
        WeightScheme::Limiter(LimiterKind::Chi5(k)) => format!("limiter:chi5:k={}", k.get()),
        WeightScheme::Limiter(kind) => format!("limiter:{}", kind.tag()),
    }
}

/// Whether the scheme needs the unsafe override to be accepted.
pub fn requires_unsafe_k(scheme: &WeightScheme) -> bool {
    matches!(scheme, WeightScheme::Limiter(LimiterKind::Chi5(k)) if !(1.0..=3.0).contains(&k.get()))
}

/// Flat configuration shared by all subcommands.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub problem: Option<String>,
    /// Scheme descriptor of `run` and `convergence`.
    pub scheme: Option<String>,
    /// Scheme descriptors compared side by side by `compare`.
    pub schemes: Vec<String>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub resolutions: Vec<usize>,
    pub cfl: Option<f64>,
    pub dt_over_dx: Option<f64>,
    pub t_final: Option<f64>,
    pub gamma: Option<f64>,
    pub out: Option<PathBuf>,
    pub unsafe_k: bool,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> std::result::Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    /// Keys set in `other` replace those of `self`.
    pub fn overridden_by(mut self, other: &RunConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        if other.cfl.is_some() || other.dt_over_dx.is_some() {
            self.cfl = None;
            self.dt_over_dx = None;
        }
        take!(problem, scheme, nx, ny, cfl, dt_over_dx, t_final, gamma, out, threads);
        if !other.schemes.is_empty() {
            self.schemes = other.schemes.clone();
        }
        if !other.resolutions.is_empty() {
            self.resolutions = other.resolutions.clone();
        }
        self.unsafe_k |= other.unsafe_k;
        self
    }
}

/// Everything needed to reproduce one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRun {
    pub problem: ProblemSpec,
    pub scheme: WeightScheme,
    pub grid: GridSize,
    pub controls: TimeControls,
}

/// Applies the overrides of `config` to the registered problem.
fn resolve_problem(config: &RunConfig) -> Result<(ProblemSpec, TimeControls)> {
    let id = config
        .problem
        .as_deref()
        .ok_or_else(|| WenoError::InvalidParameter("no problem given (use --problem)".into()))?;
    let mut problem = problems::problem(id)?;
    if config.cfl.is_some() && config.dt_over_dx.is_some() {
        return Err(WenoError::InvalidParameter(
            "--cfl and --dt-over-dx are mutually exclusive".into(),
        ));
    }
    if let Some(c) = config.cfl {
        problem.step = StepRule::Cfl(c);
    }
    if let Some(r) = config.dt_over_dx {
        problem.step = StepRule::DtOverDx(r);
    }
    if let Some(t) = config.t_final {
        problem.t_final = t;
    }
    if let Some(g) = config.gamma {
        if problem.equation.is_scalar() {
            return Err(WenoError::InvalidParameter(format!(
                "gamma does not apply to scalar problem {}",
                problem.id
            )));
        }
        if !(g > 1.0) {
            return Err(WenoError::InvalidParameter(format!("gamma must exceed 1 (got {g})")));
        }
        problem.gamma = Some(g);
    }
    let controls = TimeControls {
        step: problem.step,
        t_final: problem.t_final,
    };
    controls.validate()?;
    Ok((problem, controls))
}

fn resolve_grid(config: &RunConfig, problem: &ProblemSpec) -> Result<GridSize> {
    let nx = config.nx.unwrap_or(problem.default_nx);
    let ny = if problem.is_2d() {
        config.ny.unwrap_or(if config.nx.is_some() { nx } else { problem.default_ny })
    } else {
        if config.ny.is_some_and(|ny| ny != 1) {
            return Err(WenoError::InvalidParameter(format!(
                "--ny does not apply to 1D problem {}",
                problem.id
            )));
        }
        1
    };
    if nx == 0 || ny == 0 {
        return Err(WenoError::InvalidParameter("grid sizes must be positive".into()));
    }
    Ok(GridSize { nx, ny })
}

/// Resolves a single-scheme configuration.
pub fn resolve_run(config: &RunConfig) -> Result<ResolvedRun> {
    let (problem, controls) = resolve_problem(config)?;
    let descriptor = config.scheme.as_deref().unwrap_or("limiter:chi1");
    let scheme = parse_scheme(descriptor, config.unsafe_k)?;
    let grid = resolve_grid(config, &problem)?;
    Ok(ResolvedRun {
        problem,
        scheme,
        grid,
        controls,
    })
}

impl ResolvedRun {
    /// A config that reproduces this run.
    pub fn to_config(&self) -> RunConfig {
        let (cfl, dt_over_dx) = match self.controls.step {
            StepRule::Cfl(c) => (Some(c), None),
            StepRule::DtOverDx(r) => (None, Some(r)),
        };
        RunConfig {
            problem: Some(self.problem.id.clone()),
            scheme: Some(format_scheme(&self.scheme)),
            nx: Some(self.grid.nx),
            ny: self.problem.is_2d().then_some(self.grid.ny),
            cfl,
            dt_over_dx,
            t_final: Some(self.controls.t_final),
            gamma: self.problem.gamma,
            unsafe_k: requires_unsafe_k(&self.scheme),
            ..RunConfig::default()
        }
    }

    pub fn execute(&self) -> Result<RunOutput> {
        solvers::advance(&self.problem, self.scheme, self.grid, &self.controls)
    }
}

/// CLI failure, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] WenoError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Solver(e) if e.is_config_error() => EXIT_CONFIG,
            CliError::Solver(_) | CliError::Io { .. } => EXIT_SOLVER,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Solution snapshot as CSV.
pub fn solution_csv(run: &RunOutput) -> String {
    let mut s = String::new();
    match &run.solution {
        Solution::Scalar(u) => {
            s.push_str("x,u\n");
            for (x, u) in run.x.iter().zip(u) {
                let _ = writeln!(s, "{x},{u}");
            }
        }
        Solution::Euler1d(state) => {
            s.push_str("x,rho,u,p\n");
            for (i, x) in run.x.iter().enumerate() {
                let _ = writeln!(s, "{x},{},{},{}", state.rho[i], state.velocity(i), state.pressure(i));
            }
        }
        Solution::Euler2d(state) => {
            s.push_str("x,y,rho,u,v,p\n");
            for (j, y) in run.y.iter().enumerate() {
                for (i, x) in run.x.iter().enumerate() {
                    let q = state.primitive(state.index(i, j));
                    let _ = writeln!(s, "{x},{y},{},{},{},{}", q.rho, q.u, q.v, q.p);
                }
            }
        }
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMetadata {
    pub command: String,
    pub version: String,
    pub config: RunConfig,
    pub problem: ProblemSpec,
    pub scheme: String,
    pub scheme_name: String,
    pub nx: usize,
    pub ny: usize,
    pub diagnostics: Diagnostics,
}

fn metadata(command: &str, run: &ResolvedRun, diagnostics: Diagnostics) -> RunMetadata {
    RunMetadata {
        command: command.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: run.to_config(),
        problem: run.problem.clone(),
        scheme: format_scheme(&run.scheme),
        scheme_name: run.scheme.display_name(),
        nx: run.grid.nx,
        ny: run.grid.ny,
        diagnostics,
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
        }
    }
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    write_file(path, &(text + "\n"))
}

/// Paths written by a subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifacts {
    pub csv: PathBuf,
    pub sidecar: PathBuf,
}

fn artifact_paths(out: &Path, stem: &str) -> Artifacts {
    Artifacts {
        csv: out.join(format!("{stem}.csv")),
        sidecar: out.join(format!("{stem}.json")),
    }
}

fn out_dir(config: &RunConfig) -> PathBuf {
    config.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

/// `run`: one simulation, snapshot CSV plus sidecar.
pub fn cmd_run(config: &RunConfig) -> CliResult<(Artifacts, RunMetadata)> {
    let resolved = resolve_run(config)?;
    let output = resolved.execute()?;
    let meta = metadata("run", &resolved, output.diagnostics.clone());
    let paths = artifact_paths(&out_dir(config), &format!("run_{}", resolved.problem.id));
    write_file(&paths.csv, &solution_csv(&output))?;
    write_json(&paths.sidecar, &meta)?;
    Ok((paths, meta))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceMetadata {
    pub command: String,
    pub version: String,
    pub config: RunConfig,
    pub scheme_name: String,
    pub report: ConvergenceReport,
}

/// `convergence`: error table over doubling resolutions.
pub fn cmd_convergence(config: &RunConfig) -> CliResult<(Artifacts, ConvergenceReport)> {
    let resolved = resolve_run(config)?;
    if resolved.problem.is_2d() || !resolved.problem.has_exact_solution(resolved.controls.t_final) {
        return Err(CliError::Config(format!(
            "problem {} has no exact solution at t = {}",
            resolved.problem.id, resolved.controls.t_final
        )));
    }
    let resolutions = if config.resolutions.is_empty() {
        DEFAULT_RESOLUTIONS.to_vec()
    } else {
        config.resolutions.clone()
    };
    let report = analysis::convergence_study(&resolved.problem, resolved.scheme, &resolutions, &resolved.controls)?;
    let mut cfg = resolved.to_config();
    cfg.nx = None;
    cfg.resolutions = resolutions;
    let meta = ConvergenceMetadata {
        command: "convergence".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg,
        scheme_name: resolved.scheme.display_name(),
        report: report.clone(),
    };
    let paths = artifact_paths(&out_dir(config), &format!("convergence_{}", resolved.problem.id));
    write_file(&paths.csv, &report.to_csv())?;
    write_json(&paths.sidecar, &meta)?;
    Ok((paths, report))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareMetadata {
    pub command: String,
    pub version: String,
    pub runs: Vec<RunMetadata>,
    pub exact_column: bool,
}

fn comparison_field(output: &RunOutput) -> CliResult<&[f64]> {
    match &output.solution {
        Solution::Euler2d(_) => Err(CliError::Config("compare supports 1D problems only".into())),
        s => Ok(analysis::primary_field(s)),
    }
}

/// `compare`: one CSV column per configuration plus the exact solution when known.
///
/// All configurations must share problem, grid, time stepping and `gamma`.
pub fn cmd_compare(configs: &[RunConfig], out: &Path) -> CliResult<(Artifacts, CompareMetadata)> {
    if configs.is_empty() {
        return Err(CliError::Config("compare needs at least one scheme".into()));
    }
    let resolved = configs.iter().map(resolve_run).collect::<Result<Vec<_>>>()?;
    let first = &resolved[0];
    for r in &resolved[1..] {
        if r.problem != first.problem || r.grid != first.grid || r.controls != first.controls {
            return Err(CliError::Config(format!(
                "compared runs must share problem, grid and time stepping ({} vs {})",
                format_scheme(&first.scheme),
                format_scheme(&r.scheme)
            )));
        }
    }
    let outputs = resolved.iter().map(|r| r.execute()).collect::<Result<Vec<_>>>()?;
    let fields = outputs.iter().map(comparison_field).collect::<CliResult<Vec<_>>>()?;
    let x = &outputs[0].x;
    let t = outputs[0].diagnostics.t_final;
    let exact = if first.problem.has_exact_solution(t) {
        Some(analysis::exact_field(&first.problem, x, t)?)
    } else {
        None
    };

    let mut csv = String::from("x");
    for r in &resolved {
        csv.push(',');
        csv.push_str(&format_scheme(&r.scheme));
    }
    if exact.is_some() {
        csv.push_str(",exact");
    }
    csv.push('\n');
    for (i, xi) in x.iter().enumerate() {
        let _ = write!(csv, "{xi}");
        for f in &fields {
            let _ = write!(csv, ",{}", f[i]);
        }
        if let Some(e) = &exact {
            let _ = write!(csv, ",{}", e[i]);
        }
        csv.push('\n');
    }

    let meta = CompareMetadata {
        command: "compare".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        runs: resolved
            .iter()
            .zip(&outputs)
            .map(|(r, o)| metadata("compare", r, o.diagnostics.clone()))
            .collect(),
        exact_column: exact.is_some(),
    };
    let paths = artifact_paths(out, &format!("compare_{}", first.problem.id));
    write_file(&paths.csv, &csv)?;
    write_json(&paths.sidecar, &meta)?;
    Ok((paths, meta))
}

/// Table of the registered problems.
pub fn list_problems() -> String {
    let mut s = String::new();
    for p in problems::builtin_problems() {
        let eq = match p.equation {
            Equation::Advection { .. } => "advection",
            Equation::Burgers => "burgers",
            Equation::Euler1d => "euler1d",
            Equation::Euler2d => "euler2d",
        };
        let grid = if p.is_2d() {
            format!("{}x{}", p.default_nx, p.default_ny)
        } else {
            p.default_nx.to_string()
        };
        let step = match p.step {
            StepRule::Cfl(c) => format!("cfl={c}"),
            StepRule::DtOverDx(r) => format!("dt/dx={r}"),
        };
        let _ = writeln!(
            s,
            "{:<18} {:<9} {:>8}  t={:<5} {:<10} {}",
            p.id, eq, grid, p.t_final, step, p.description
        );
    }
    s
}

/// Descriptors of the available weight families.
pub fn list_schemes() -> String {
    let rows: [(WeightScheme, &str); 9] = [
        (WeightScheme::js3(), "Jiang-Shu weights"),
        (WeightScheme::z3(), "Z-type weights with tau = |beta0 - beta1|"),
        (WeightScheme::n3(), "Z-type weights with the global indicator tau_N"),
        (WeightScheme::pplus3(), "Z-type weights with the extra dx^(1/6) term"),
        (WeightScheme::Limiter(LimiterKind::Chi1), "chi = 3r^2/(2r^2+1)"),
        (WeightScheme::Limiter(LimiterKind::Chi2), "chi = 3|r|/(2|r|+1)"),
        (WeightScheme::Limiter(LimiterKind::Chi3), "chi = min(|r|, 3/2)"),
        (WeightScheme::Limiter(LimiterKind::Chi4), "chi = min(2|r|/(1+|r|), 3/2)"),
        (
            parse_scheme("limiter:chi5:k=3", false).expect("k = 3 is admissible"),
            "chi = min(k|r|, max(1, 3|r|/(2|r|+k))), 1 <= k <= 3 (--unsafe-k lifts the bound)",
        ),
    ];
    let mut s = String::new();
    for (scheme, note) in rows {
        let _ = writeln!(s, "{:<22} {:<16} {}", format_scheme(&scheme), scheme.display_name(), note);
    }
    s
}

#[derive(Debug, Parser)]
#[command(name = "weno3", version, about = "Third-order WENO solver with weight-limiter nonlinear weights")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one simulation and write the final snapshot.
    Run(CommonArgs),
    /// Tabulate errors and observed orders over doubling resolutions.
    Convergence {
        #[command(flatten)]
        common: CommonArgs,
        /// Cell counts, each twice the previous one.
        #[arg(long, value_delimiter = ',')]
        resolutions: Vec<usize>,
    },
    /// Run several schemes on the same problem and write them side by side.
    Compare(CommonArgs),
    /// List the registered problems.
    ListProblems,
    /// List the weight families and their descriptors.
    ListSchemes,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub problem: Option<String>,
    /// Scheme descriptor, e.g. `limiter:chi5:k=3` or `js3:eps=1e-6:p=2`.
    /// Repeat for `compare`.
    #[arg(long)]
    pub scheme: Vec<String>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    #[arg(long)]
    pub cfl: Option<f64>,
    #[arg(long)]
    pub dt_over_dx: Option<f64>,
    #[arg(long)]
    pub t_final: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file. `compare` accepts one per compared run.
    #[arg(long)]
    pub config: Vec<PathBuf>,
    /// Accept chi5 with k outside [1, 3].
    #[arg(long)]
    pub unsafe_k: bool,
    #[arg(long)]
    pub threads: Option<usize>,
}

impl CommonArgs {
    fn overrides(&self) -> RunConfig {
        RunConfig {
            problem: self.problem.clone(),
            scheme: self.scheme.first().cloned(),
            schemes: self.scheme.clone(),
            nx: self.nx,
            ny: self.ny,
            cfl: self.cfl,
            dt_over_dx: self.dt_over_dx,
            t_final: self.t_final,
            gamma: self.gamma,
            out: self.out.clone(),
            unsafe_k: self.unsafe_k,
            threads: self.threads,
            resolutions: Vec::new(),
        }
    }

    /// Single config: file (if any) overridden by flags.
    fn single(&self) -> CliResult<RunConfig> {
        if self.scheme.len() > 1 {
            return Err(CliError::Config("only one --scheme is accepted here".into()));
        }
        let base = match self.config.as_slice() {
            [] => RunConfig::default(),
            [path] => RunConfig::from_json_file(path)?,
            _ => return Err(CliError::Config("only one --config is accepted here".into())),
        };
        Ok(base.overridden_by(&self.overrides()))
    }

    /// One config per compared run: each `--config` file (expanded over its
    /// `schemes`), then one run per `--scheme` on top of the first of them.
    fn many(&self) -> CliResult<Vec<RunConfig>> {
        let mut flags = self.overrides();
        flags.scheme = None;
        flags.schemes = Vec::new();
        let mut runs = Vec::new();
        for path in &self.config {
            let cfg = RunConfig::from_json_file(path)?.overridden_by(&flags);
            if cfg.schemes.is_empty() {
                runs.push(cfg);
            } else {
                for s in &cfg.schemes {
                    runs.push(RunConfig {
                        scheme: Some(s.clone()),
                        ..cfg.clone()
                    });
                }
            }
        }
        let base = runs.first().cloned().unwrap_or(flags);
        for s in &self.scheme {
            runs.push(RunConfig {
                scheme: Some(s.clone()),
                ..base.clone()
            });
        }
        Ok(runs)
    }
}

fn configure_threads(threads: Option<usize>) -> CliResult<()> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Executes a parsed command line and returns the text for standard output.
pub fn execute(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::ListProblems => Ok(list_problems()),
        Command::ListSchemes => Ok(list_schemes()),
        Command::Run(args) => {
            let cfg = args.single()?;
            configure_threads(cfg.threads)?;
            let (paths, meta) = cmd_run(&cfg)?;
            let d = &meta.diagnostics;
            Ok(format!(
                "{} with {}: {} steps to t = {}, mass drift {:e}\nwrote {} and {}\n",
                meta.problem.id,
                meta.scheme,
                d.steps,
                d.t_final,
                d.conservation_drift.first().copied().unwrap_or(0.0),
                paths.csv.display(),
                paths.sidecar.display()
            ))
        }
        Command::Convergence { common, resolutions } => {
            let mut cfg = common.single()?;
            if !resolutions.is_empty() {
                cfg.resolutions = resolutions;
            }
            configure_threads(cfg.threads)?;
            let (paths, report) = cmd_convergence(&cfg)?;
            Ok(format!("{}wrote {}\n", report.to_csv(), paths.csv.display()))
        }
        Command::Compare(args) => {
            let configs = args.many()?;
            configure_threads(configs.iter().find_map(|c| c.threads).or(args.threads))?;
            let out = args
                .out
                .clone()
                .or_else(|| configs.first().and_then(|c| c.out.clone()))
                .unwrap_or_else(|| PathBuf::from("."));
            let (paths, meta) = cmd_compare(&configs, &out)?;
            Ok(format!(
                "compared {} run(s){}\nwrote {} and {}\n",
                meta.runs.len(),
                if meta.exact_column { " with exact solution" } else { "" },
                paths.csv.display(),
                paths.sidecar.display()
            ))
        }
    }
}

/// Entry point of the binary: parses `args`, runs, reports and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(text) => {
            print!("{text}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
