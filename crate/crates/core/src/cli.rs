// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Every command writes CSV or a short text report.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::dynamics::{apply_channel, EmissionChannel, Side};
use crate::error::Error;
use crate::families::{self, CriticalKind, FamilyParams};
use crate::measures::{self, OracleConfig};
use crate::qstate::{self, DensityMatrix, RandomFamily};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for unreadable or malformed input, 3 for invalid states, 4 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Usage(_) => 2,
            Self::Core(e) => match e {
                Error::Parse { .. } => 2,
                Error::NonHermitianInput { .. }
                | Error::SizeMismatch { .. }
                | Error::NotHermitian { .. }
                | Error::TraceNotOne { .. }
                | Error::NotPositive { .. }
                | Error::NotXShaped { .. }
                | Error::InvalidXState { .. } => 3,
                _ => 4,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Settings shared by all commands, after merging defaults, config file and flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub gamma0: f64,
    pub t_max: f64,
    pub n_points: usize,
    pub oracle_grid: usize,
    pub oracle_refine: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            gamma0: 1.0,
            t_max: 5.0,
            n_points: 1001,
            oracle_grid: 2000,
            oracle_refine: 200,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            grid: self.oracle_grid,
            refine_iters: self.oracle_refine,
            ..OracleConfig::default()
        }
    }

    pub fn validate(&self) -> crate::error::Result<()> {
        let bad = |name, value: f64, bound: &str| {
            Err(Error::ParamOutOfRange {
                name,
                value,
                bound: bound.into(),
            })
        };
        if !(self.gamma0 > 0.0 && self.gamma0.is_finite()) {
            return bad("gamma0", self.gamma0, "must be > 0");
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return bad("t_max", self.t_max, "must be > 0");
        }
        if self.n_points < 2 {
            return bad("n_points", self.n_points as f64, "must be >= 2");
        }
        if self.oracle_grid == 0 {
            return bad("oracle_grid", 0.0, "must be > 0");
        }
        Ok(())
    }

    /// Apply `key=value` lines; `#` starts a comment.
    pub fn apply_config_text(&mut self, text: &str) -> crate::error::Result<()> {
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: k + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| {
                v.parse::<f64>()
                    .map_err(|e| parse_err(format!("{key}: {e}")))
            };
            let int = |v: &str| {
                v.parse::<u64>()
                    .map_err(|e| parse_err(format!("{key}: {e}")))
            };
            match key {
                "gamma0" => self.gamma0 = num(value)?,
                "t_max" | "tmax" => self.t_max = num(value)?,
                "n_points" | "points" => self.n_points = int(value)? as usize,
                "oracle_grid" | "grid" => self.oracle_grid = int(value)? as usize,
                "oracle_refine" | "refine" => self.oracle_refine = int(value)? as usize,
                "seed" => self.seed = int(value)?,
                _ => return Err(parse_err(format!("unknown key {key:?}"))),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "geodiscord",
    version,
    about = "Geometric discord of two-qubit states under one-sided emission"
)]
struct Cli {
    /// Plain-text key=value file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunFlags {
    #[arg(long, global = true)]
    gamma0: Option<f64>,
    #[arg(long, global = true)]
    tmax: Option<f64>,
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Lattice size of the measurement-axis oracle.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Nelder–Mead iterations of the oracle.
    #[arg(long, global = true)]
    refine: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Theta,
    Classical,
    Discordant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    Both,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
            SideArg::Both => Side::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SPolicy {
    Fixed,
    Smax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SampleKind {
    FullRank,
    BellDiagonal,
    X,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// State file: 16 `re,im` lines, row-major.
    #[arg(long, conflicts_with = "family")]
    state: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    w: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// D₁, D₂, √D₂ and negativity of one state.
    Measure {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measures along a one-sided emission trajectory.
    Evolve {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, value_enum, default_value = "A")]
        side: SideArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Data for figure N (1..=6).
    Figure {
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical values w_c and w̄_c.
    Critical {
        /// Bisection tolerance for w̄_c.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Growth regimes of discordant states over a w range.
    Sweep {
        #[arg(long, value_enum, default_value = "discordant")]
        family: FamilyKind,
        #[arg(long)]
        w_from: f64,
        #[arg(long)]
        w_to: f64,
        /// Number of cell-centred w values.
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, value_enum, default_value = "smax")]
        s_policy: SPolicy,
        /// Coherence for the fixed policy.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a family state to a state file.
    WriteState {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random state to a state file.
    Sample {
        #[arg(long, value_enum, default_value = "full-rank")]
        kind: SampleKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// CSV number: shortest round-trip decimal, exponent form outside [1e-5, 1e16).
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.is_finite() && (1e-5..1e16).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_row(values: &[f64]) -> String {
    let cells: Vec<String> = values.iter().map(|&v| fmt_num(v)).collect();
    cells.join(",")
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn family_params(input: &StateArgs, kind: FamilyKind) -> CliResult<FamilyParams> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| {
            CliError::Usage(format!("--family {kind:?} requires --{flag}").to_lowercase())
        })
    };
    Ok(match kind {
        FamilyKind::Theta => FamilyParams::theta(need(input.theta, "theta")?)?,
        FamilyKind::Classical => FamilyParams::classical(need(input.w, "w")?, need(input.s, "s")?)?,
        FamilyKind::Discordant => {
            FamilyParams::discordant(need(input.w, "w")?, need(input.s, "s")?)?
        }
    })
}

fn load_state(input: &StateArgs) -> CliResult<DensityMatrix> {
    match (&input.state, input.family) {
        (Some(path), _) => {
            let m = qstate::parse_state_file(&read_file(path)?)?;
            Ok(DensityMatrix::validate(m)?)
        }
        (None, Some(kind)) => Ok(families::make_state(&family_params(input, kind)?)?),
        (None, None) => Err(CliError::Usage(
            "one of --state or --family is required".into(),
        )),
    }
}

pub const MEASURE_HEADER: &str = "d1,d2,sqrt_d2,negativity,d1_method";

pub fn measure_csv(rho: &DensityMatrix, cfg: &RunConfig) -> String {
    let d1 = measures::d1(rho, &cfg.oracle());
    let d2 = measures::d2_closed(rho);
    let row = csv_row(&[d1.value, d2, d2.sqrt(), measures::negativity(rho)]);
    format!("{MEASURE_HEADER}\n{row},{}\n", d1.method)
}

pub const EVOLVE_HEADER: &str = "gt,d1,d2,sqrt_d2,negativity";

/// Exact channel evolution sampled on `n_points` times in [0, t_max].
pub fn evolve_csv(rho: &DensityMatrix, side: Side, cfg: &RunConfig) -> CliResult<String> {
    cfg.validate()?;
    let oracle = cfg.oracle();
    let n = cfg.n_points;
    let rows: Vec<String> = (0..n)
        .into_par_iter()
        .map(|k| {
            let t = cfg.t_max * k as f64 / (n - 1) as f64;
            let ch = EmissionChannel::new(side, cfg.gamma0, t)?;
            let r = apply_channel(rho, &ch);
            let d2 = measures::d2_closed(&r);
            let d1 = measures::d1(&r, &oracle).value;
            Ok(csv_row(&[
                cfg.gamma0 * t,
                d1,
                d2,
                d2.sqrt(),
                measures::negativity(&r),
            ]))
        })
        .collect::<crate::error::Result<_>>()?;
    Ok(format!("{EVOLVE_HEADER}\n{}\n", rows.join("\n")))
}

/// Family parameters behind figures 2..=6.
pub fn figure_family(n: u32) -> crate::error::Result<FamilyParams> {
    match n {
        2 => FamilyParams::classical(0.25, 0.25),
        3 => FamilyParams::discordant(0.076, 0.179),
        4 => FamilyParams::discordant(0.2, 0.2),
        5 | 6 => FamilyParams::discordant(0.4, 0.2),
        _ => Err(Error::UnknownFigure(n)),
    }
}

fn figure_times(n: u32, p: &FamilyParams, cfg: &RunConfig) -> Vec<f64> {
    let mut times = families::uniform_times(cfg.gamma0 * cfg.t_max, cfg.n_points);
    // Figure 5 shows the zero of D₁; put it on the grid exactly.
    if let (5, FamilyParams::Discordant { w, .. }) = (n, p) {
        let t0 = (4.0 * w).ln();
        let last = *times.last().unwrap();
        if t0 > 0.0 && t0 < last && !times.iter().any(|&t| (t - t0).abs() < 1e-12) {
            let at = times.partition_point(|&t| t < t0);
            times.insert(at, t0);
        }
    }
    times
}

/// CSV body of figure `n`.
pub fn figure_csv(n: u32, cfg: &RunConfig) -> CliResult<String> {
    cfg.validate()?;
    let mut out = String::new();
    match n {
        1 => {
            let oracle = cfg.oracle();
            out.push_str("theta,negativity,sqrt_d2,d1\n");
            let thetas = families::uniform_times(std::f64::consts::FRAC_PI_2, cfg.n_points);
            let rows: Vec<String> = thetas
                .par_iter()
                .map(|&theta| {
                    let rho = families::make_state(&FamilyParams::Theta { theta })?;
                    let d2 = measures::d2_closed(&rho);
                    let d1 = measures::d1(&rho, &oracle).value;
                    Ok(csv_row(&[theta, measures::negativity(&rho), d2.sqrt(), d1]))
                })
                .collect::<crate::error::Result<_>>()?;
            for r in rows {
                out.push_str(&r);
                out.push('\n');
            }
        }
        2..=5 => {
            let p = figure_family(n)?;
            let times = figure_times(n, &p, cfg);
            let d1 = families::d1_timeseries_a(&p, &times)?;
            let d2 = families::d2_timeseries_a(&p, &times)?;
            out.push_str("gt,d1,sqrt_d2\n");
            for (a, b) in d1.points.iter().zip(&d2.points) {
                out.push_str(&csv_row(&[a.0, a.1, b.1.sqrt()]));
                out.push('\n');
            }
        }
        6 => {
            let p = figure_family(n)?;
            let times = figure_times(n, &p, cfg);
            let a = families::d2_timeseries_a(&p, &times)?;
            let b = families::d2_timeseries_b(&p, &times)?;
            out.push_str("gt,sqrt_d2_sideA,sqrt_d2_sideB\n");
            for (x, y) in a.points.iter().zip(&b.points) {
                out.push_str(&csv_row(&[x.0, x.1.sqrt(), y.1.sqrt()]));
                out.push('\n');
            }
        }
        _ => return Err(Error::UnknownFigure(n).into()),
    }
    Ok(out)
}

pub fn critical_report(tol: f64) -> CliResult<String> {
    let analytic = families::w_c();
    let wc = families::find_critical_w(CriticalKind::D2, 1e-12)?;
    let wbar = families::find_critical_w(CriticalKind::D1, tol)?;
    Ok(format!(
        "w_c = {wc}\n\
         w_c analytic (2-sqrt(2))/8 = {analytic}\n\
         w_c residual 8 s_max^2 - (1/2 - 4w + 8w^2) = {:e}\n\
         w_bar_c = {wbar} (bisection tolerance {tol:e})\n\
         w_bar_c > w_c: {}\n",
        families::d2_critical_residual(wc),
        wbar > wc,
    ))
}

pub const SWEEP_HEADER: &str = "w,s,d2_inc_A,d1_inc_A,d2_inc_B,t_zero";

/// Regime rows over cell-centred w values; inadmissible (w, s) pairs are skipped
/// and reported in the returned warnings.
pub fn sweep_csv(
    w_from: f64,
    w_to: f64,
    steps: usize,
    s_fixed: Option<f64>,
) -> CliResult<(String, Vec<String>)> {
    if steps == 0 || !(w_to > w_from) {
        return Err(Error::ParamOutOfRange {
            name: "w range",
            value: w_to - w_from,
            bound: "need w_to > w_from and steps >= 1".into(),
        }
        .into());
    }
    let dw = (w_to - w_from) / steps as f64;
    let rows: Vec<std::result::Result<String, String>> = (0..steps)
        .into_par_iter()
        .map(|k| {
            let w = w_from + (k as f64 + 0.5) * dw;
            let s = s_fixed.unwrap_or_else(|| families::s_max(w));
            let p = FamilyParams::discordant(w, s)
                .map_err(|e| format!("skipping w={w}, s={s}: {e}"))?;
            let r = families::regime(&p).map_err(|e| format!("skipping w={w}, s={s}: {e}"))?;
            let t_zero = r.t_zero.map(fmt_num).unwrap_or_default();
            Ok(format!(
                "{},{},{},{},{},{t_zero}",
                fmt_num(r.w),
                fmt_num(r.s),
                r.d2_increases_under_a,
                r.d1_increases_under_a,
                r.d2_increases_under_b,
            ))
        })
        .collect();
    let mut out = format!("{SWEEP_HEADER}\n");
    let mut warnings = Vec::new();
    for r in rows {
        match r {
            Ok(line) => {
                out.push_str(&line);
                out.push('\n');
            }
            Err(w) => warnings.push(w),
        }
    }
    Ok((out, warnings))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn resolve_config(cli: &Cli) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_config_text(&read_file(path)?)?;
    }
    let f = &cli.run;
    if let Some(v) = f.gamma0 {
        cfg.gamma0 = v;
    }
    if let Some(v) = f.tmax {
        cfg.t_max = v;
    }
    if let Some(v) = f.points {
        cfg.n_points = v;
    }
    if let Some(v) = f.grid {
        cfg.oracle_grid = v;
    }
    if let Some(v) = f.refine {
        cfg.oracle_refine = v;
    }
    if let Some(v) = f.seed {
        cfg.seed = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let cfg = resolve_config(&cli)?;
    match cli.command {
        Command::Measure { input, out } => {
            let rho = load_state(&input)?;
            emit(&measure_csv(&rho, &cfg), out.as_deref(), stdout)
        }
        Command::Evolve { input, side, out } => {
            let rho = load_state(&input)?;
            emit(
                &evolve_csv(&rho, side.into(), &cfg)?,
                out.as_deref(),
                stdout,
            )
        }
        Command::Figure { n, out } => {
            let text = figure_csv(n, &cfg)?;
            let path = out.unwrap_or_else(|| PathBuf::from(format!("fig{n}.csv")));
            write_file(&path, &text)?;
            let _ = writeln!(stderr, "wrote {}", path.display());
            Ok(())
        }
        Command::Critical { tol } => emit(&critical_report(tol)?, None, stdout),
        Command::Sweep {
            family,
            w_from,
            w_to,
            steps,
            s_policy,
            s,
            out,
        } => {
            if family != FamilyKind::Discordant {
                return Err(Error::ParamOutOfRange {
                    name: "family",
                    value: f64::NAN,
                    bound: "sweep supports --family discordant only".into(),
                }
                .into());
            }
            let s_fixed = match s_policy {
                SPolicy::Smax => None,
                SPolicy::Fixed => {
                    Some(s.ok_or_else(|| CliError::Usage("--s-policy fixed requires --s".into()))?)
                }
            };
            let (text, warnings) = sweep_csv(w_from, w_to, steps, s_fixed)?;
            for w in warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            emit(&text, out.as_deref(), stdout)
        }
        Command::WriteState { input, out } => {
            let rho = load_state(&input)?;
            emit(
                &qstate::write_state_file(rho.matrix(), None),
                out.as_deref(),
                stdout,
            )
        }
        Command::Sample { kind, out } => {
            let family = match kind {
                SampleKind::FullRank => RandomFamily::FullRank,
                SampleKind::BellDiagonal => RandomFamily::BellDiagonal,
                SampleKind::X => RandomFamily::XShaped,
            };
            let rho = qstate::sample_random_state(cfg.seed, family);
            let comment = format!("{kind:?} sample, seed {}", cfg.seed);
            emit(
                &qstate::write_state_file(rho.matrix(), Some(&comment)),
                out.as_deref(),
                stdout,
            )
        }
    }
}

/// Parse `args` (including the program name) and run; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["geodiscord"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(fmt_num(3.06e-7), "3.06e-7");
        assert_eq!("3.06e-7".parse::<f64>().unwrap(), 3.06e-7);
    }

    #[test]
    fn config_precedence() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("# c\ngamma0 = 2\npoints=11\n\n")
            .unwrap();
        assert_eq!((cfg.gamma0, cfg.n_points, cfg.t_max), (2.0, 11, 5.0));
        assert!(matches!(
            cfg.apply_config_text("bogus=1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(cfg.apply_config_text("points").is_err());
    }

    #[test]
    fn measure_family() {
        let (code, out, _) = run_capture(&[
            "measure",
            "--family",
            "theta",
            "--theta",
            "0.7853981633974483",
        ]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some(MEASURE_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        let v: Vec<f64> = row[..4].iter().map(|c| c.parse().unwrap()).collect();
        assert!((v[0] - 0.5).abs() < 1e-12);
        assert!((v[1] - 0.25).abs() < 1e-12);
        assert!((v[3] - (2f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        assert_eq!(row[4], "closed-x");
    }

    #[test]
    fn usage_and_domain_errors() {
        assert_eq!(run_capture(&["measure"]).0, 2);
        assert_eq!(
            run_capture(&["measure", "--family", "classical", "--w", "0.2"]).0,
            2
        );
        assert_eq!(
            run_capture(&[
                "measure",
                "--family",
                "classical",
                "--w",
                "0.7",
                "--s",
                "0.1"
            ])
            .0,
            4
        );
        assert_eq!(run_capture(&["figure", "9"]).0, 4);
        assert_eq!(
            run_capture(&["evolve", "--family", "theta", "--theta", "1", "--side", "C"]).0,
            2
        );
        assert_eq!(run_capture(&["--points", "1", "critical"]).0, 4);
    }

    #[test]
    fn fig5_contains_zero_row() {
        let cfg = RunConfig {
            n_points: 11,
            ..RunConfig::default()
        };
        let text = figure_csv(5, &cfg).unwrap();
        assert_eq!(text.lines().count(), 13);
        let t0 = 1.6f64.ln();
        let row = text
            .lines()
            .skip(1)
            .find(|l| l.split(',').next().unwrap().parse::<f64>().unwrap() == t0)
            .unwrap();
        let d1: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!(d1 < 1e-15);
    }
}
