//! Command-line front end: single-point reports, CSV sweeps, finite-size
//! scaling studies and crossing detection.
//!
//! Configuration can also come from a `key=value` file (`--config`); flags
//! win over the file. The thread count may come from `SPINCORR_THREADS`,
//! overridden by `--threads`. Exit codes: 0 success, 1 argument error,
//! 2 numerical failure.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use spincorr::analysis::{
    self, differentiate, find_crossing, refine_crossing, scaling_fit, sweep, Column, Extremum,
    Grid, SweepTable,
};
use spincorr::lmg::{lmg_report, LmgPoint};
use spincorr::tfim::{tfim_correlators, tfim_report, TfimPoint};
use spincorr::xxz::{xxz_report, XxzPoint};
use spincorr::{quantum_discord, CorrCoeffs, Error, PointReport, XState};

#[derive(Parser)]
#[command(name = "spincorr", version, about = "Two-spin correlation measures for critical spin models")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one parameter point and print a key=value report.
    Point(PointArgs),
    /// Sweep a parameter range and write a CSV table.
    Sweep(SweepArgs),
    /// Per-size extremum study with a log2(L) fit appended as comments.
    Scaling(ScalingArgs),
    /// Locate the single crossing of two columns over a parameter range.
    Crossing(CrossingArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Model backend: tfim | xxz | lmg | xstate.
    #[arg(long)]
    model: Option<String>,
    /// Transverse field (tfim).
    #[arg(long)]
    g: Option<f64>,
    /// Anisotropy (xxz).
    #[arg(long)]
    delta: Option<f64>,
    /// Coupling (lmg).
    #[arg(long)]
    lambda: Option<f64>,
    /// System size.
    #[arg(long = "L")]
    size: Option<usize>,
    /// Worker thread count (default: SPINCORR_THREADS, then all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Optional key=value configuration file; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: Common,
    /// Pair across different modes instead of within one (lmg).
    #[arg(long)]
    different_modes: bool,
    /// Bloch coefficients (xstate).
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    c3: Option<f64>,
    #[arg(long)]
    c4: Option<f64>,
    #[arg(long)]
    c5: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    steps: Option<usize>,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pair across different modes instead of within one (lmg).
    #[arg(long)]
    different_modes: bool,
}

#[derive(Args)]
struct ScalingArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Comma-separated system sizes, ascending.
    #[arg(long)]
    sizes: Option<String>,
    /// Quantity to track per size: dc-dg-min | d2q-dg2-max.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CrossingArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// First column (default per model: tfim c1, xxz abs_c1).
    #[arg(long)]
    col_a: Option<String>,
    /// Second column (default per model: tfim c4, xxz abs_c3).
    #[arg(long)]
    col_b: Option<String>,
}

/// key=value configuration file; `#` comments and blank lines ignored.
fn load_config(path: &Path) -> Result<HashMap<String, String>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidArgument(format!(
                "config {} line {}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

struct Resolver {
    cfg: HashMap<String, String>,
}

impl Resolver {
    fn new(common: &Common) -> Result<Self, Error> {
        let cfg = match &common.config {
            Some(path) => load_config(path)?,
            None => HashMap::new(),
        };
        Ok(Resolver { cfg })
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Error> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.cfg.get(key) {
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::InvalidArgument(format!("config key {key}: bad value `{raw}`"))),
            None => Ok(None),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, Error> {
        self.get(flag, key)?
            .ok_or_else(|| Error::InvalidArgument(format!("missing required option --{key}")))
    }
}

fn init_threads(requested: Option<usize>) -> Result<(), Error> {
    let n = match requested {
        Some(n) => Some(n),
        None => match std::env::var("SPINCORR_THREADS") {
            Ok(v) => Some(v.parse::<usize>().map_err(|_| {
                Error::InvalidArgument(format!("SPINCORR_THREADS: bad value `{v}`"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(Error::InvalidArgument("thread count must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn print_report(p: &PointReport) {
    let c = &p.report.coeffs;
    println!("Gxx={}", sig(p.spin.gxx));
    println!("Gyy={}", sig(p.spin.gyy));
    println!("Gzz={}", sig(p.spin.gzz));
    println!("Gz={}", sig(p.spin.gz_i));
    println!("c1={}", sig(c.c1));
    println!("c2={}", sig(c.c2));
    println!("c3={}", sig(c.c3));
    println!("c4={}", sig(c.c4));
    println!("c5={}", sig(c.c5));
    println!("I={}", sig(p.report.mutual_info));
    println!("C={}", sig(p.report.classical));
    println!("Q={}", sig(p.report.discord));
    println!("theta_opt={}", sig(p.report.optimal_angles.theta()));
    println!("phi_opt={}", sig(p.report.optimal_angles.phi()));
}

/// Write atomically: temp file in the target directory, then rename, so a
/// failure never leaves a partial artifact behind.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Error> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().unwrap_or_default().to_string_lossy()
        )),
        None => PathBuf::from(format!(".{}.tmp", path.display())),
    };
    let finish = std::fs::write(&tmp, contents)
        .and_then(|_| std::fs::rename(&tmp, path));
    if let Err(e) = finish {
        let _ = std::fs::remove_file(&tmp);
        return Err(Error::InvalidArgument(format!(
            "writing {}: {e}",
            path.display()
        )));
    }
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Error> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_point(args: &PointArgs) -> Result<(), Error> {
    let r = Resolver::new(&args.common)?;
    init_threads(r.get(args.common.threads, "threads")?)?;
    let model = r.require(args.common.model.clone(), "model")?;
    let point = match model.as_str() {
        "tfim" => {
            let g = r.require(args.common.g, "g")?;
            let l = r.require(args.common.size, "L")?;
            tfim_report(&TfimPoint::new(g, l)?)?
        }
        "xxz" => {
            let delta = r.require(args.common.delta, "delta")?;
            let l = r.require(args.common.size, "L")?;
            xxz_report(&XxzPoint::new(delta, l)?)?
        }
        "lmg" => {
            let lambda = r.require(args.common.lambda, "lambda")?;
            lmg_report(&LmgPoint::new(lambda, !args.different_modes)?)?
        }
        "xstate" => {
            let coeffs = CorrCoeffs::new(
                r.get(args.c1, "c1")?.unwrap_or(0.0),
                r.get(args.c2, "c2")?.unwrap_or(0.0),
                r.get(args.c3, "c3")?.unwrap_or(0.0),
                r.get(args.c4, "c4")?.unwrap_or(0.0),
                r.get(args.c5, "c5")?.unwrap_or(0.0),
            )?;
            let state = XState::from_coeffs(&coeffs)?;
            PointReport {
                spin: state.spin_functions(),
                report: quantum_discord(&coeffs)?,
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!("unknown model `{other}`")));
        }
    };
    print_report(&point);
    Ok(())
}

fn run_sweep(
    model: &str,
    size: usize,
    grid: &Grid,
    same_mode: bool,
) -> Result<SweepTable, Error> {
    match model {
        "tfim" => sweep(model, size, grid, |g| tfim_report(&TfimPoint::new(g, size)?)),
        "xxz" => sweep(model, size, grid, |d| {
            xxz_report(&XxzPoint::new(d, size)?)
        }),
        "lmg" => sweep(model, 0, grid, |l| {
            lmg_report(&LmgPoint::new(l, same_mode)?)
        }),
        other => Err(Error::InvalidArgument(format!(
            "model `{other}` does not support sweeps"
        ))),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Error> {
    let r = Resolver::new(&args.common)?;
    init_threads(r.get(args.common.threads, "threads")?)?;
    let model = r.require(args.common.model.clone(), "model")?;
    let grid = Grid::new(
        r.require(args.from, "from")?,
        r.require(args.to, "to")?,
        r.require(args.steps, "steps")?,
    )?;
    let size = if model == "lmg" {
        0
    } else {
        r.require(args.common.size, "L")?
    };
    let table = run_sweep(&model, size, &grid, !args.different_modes)?;
    let out = r.get(args.out.clone(), "out")?;
    emit(out.as_deref(), &analysis::to_csv(&table))
}

fn parse_sizes(raw: &str) -> Result<Vec<usize>, Error> {
    let sizes: Vec<usize> = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad size `{s}`")))
        })
        .collect::<Result<_, _>>()?;
    if sizes.len() < 4 {
        return Err(Error::InvalidArgument(
            "scaling needs at least 4 sizes".into(),
        ));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "sizes must be strictly ascending".into(),
        ));
    }
    Ok(sizes)
}

fn cmd_scaling(args: &ScalingArgs) -> Result<(), Error> {
    let r = Resolver::new(&args.common)?;
    init_threads(r.get(args.common.threads, "threads")?)?;
    let model = r.require(args.common.model.clone(), "model")?;
    if model != "tfim" {
        return Err(Error::InvalidArgument(format!(
            "scaling supports only the tfim model, got `{model}`"
        )));
    }
    let sizes = parse_sizes(&r.require(args.sizes.clone(), "sizes")?)?;
    let target = r
        .get(args.target.clone(), "target")?
        .unwrap_or_else(|| "dc-dg-min".into());
    let (column, order, kind, degree) = match target.as_str() {
        "dc-dg-min" => (Column::Classical, 1, Extremum::Min, 1),
        "d2q-dg2-max" => (Column::Discord, 2, Extremum::Max, 2),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown target `{other}` (expected dc-dg-min or d2q-dg2-max)"
            )));
        }
    };
    // default grid step 1e-3, the resolution the reference scaling laws
    // are calibrated to
    let grid = Grid::new(
        r.get(args.from, "from")?.unwrap_or(0.75),
        r.get(args.to, "to")?.unwrap_or(1.2),
        r.get(args.steps, "steps")?.unwrap_or(451),
    )?;
    let mut params = Vec::with_capacity(sizes.len());
    let mut values = Vec::with_capacity(sizes.len());
    for &l in &sizes {
        let table = run_sweep("tfim", l, &grid, true)?;
        let d = differentiate(&table, column, order)?;
        let n = d.params.len();
        let (p, v) =
            analysis::locate_extremum_values(&d.params[1..n - 1], &d.values[1..n - 1], kind)?;
        params.push(p);
        values.push(v);
    }
    let fit = scaling_fit(&sizes, &values, degree)?;
    let mut out = String::from("L,param_star,value_star\n");
    for i in 0..sizes.len() {
        let _ = writeln!(out, "{},{},{}", sizes[i], sig(params[i]), sig(values[i]));
    }
    let _ = match fit.coeffs.len() {
        2 => writeln!(
            out,
            "# fit: a0={} a1={} rms={}",
            sig(fit.coeffs[0]),
            sig(fit.coeffs[1]),
            sig(fit.residual_rms)
        ),
        _ => writeln!(
            out,
            "# fit: a0={} a1={} a2={} rms={}",
            sig(fit.coeffs[0]),
            sig(fit.coeffs[1]),
            sig(fit.coeffs[2]),
            sig(fit.residual_rms)
        ),
    };
    let _ = writeln!(out, "# sizes: {}..{}", fit.size_range.0, fit.size_range.1);
    let path = r.get(args.out.clone(), "out")?;
    emit(path.as_deref(), &out)
}

fn cmd_crossing(args: &CrossingArgs) -> Result<(), Error> {
    let r = Resolver::new(&args.common)?;
    init_threads(r.get(args.common.threads, "threads")?)?;
    let model = r.require(args.common.model.clone(), "model")?;
    let size = r.require(args.common.size, "L")?;
    let (default_a, default_b, default_span) = match model.as_str() {
        "tfim" => ("c1", "c4", (0.5, 1.5)),
        "xxz" => ("abs_c1", "abs_c3", (-1.6, -0.4)),
        other => {
            return Err(Error::InvalidArgument(format!(
                "model `{other}` does not support crossings"
            )));
        }
    };
    let col_a: Column = r
        .get(args.col_a.clone(), "col_a")?
        .unwrap_or_else(|| default_a.into())
        .parse()?;
    let col_b: Column = r
        .get(args.col_b.clone(), "col_b")?
        .unwrap_or_else(|| default_b.into())
        .parse()?;
    let grid = Grid::new(
        r.get(args.from, "from")?.unwrap_or(default_span.0),
        r.get(args.to, "to")?.unwrap_or(default_span.1),
        r.get(args.steps, "steps")?.unwrap_or(101),
    )?;
    let table = run_sweep(&model, size, &grid, true)?;
    let coarse = find_crossing(&table, col_a, col_b)?;
    let h = grid.spacing();
    let lo = (coarse - h).max(grid.from);
    let hi = (coarse + h).min(grid.to);
    let refined = match model.as_str() {
        // TFIM has a cheap backend: refine by bisection on the correlators.
        "tfim" if col_a == Column::C1 && col_b == Column::C4 => {
            refine_crossing(lo, hi, 1e-6, |g| {
                let s = tfim_correlators(&TfimPoint::new(g, size)?);
                Ok(s.gxx - s.gz_i)
            })?
        }
        "xxz" => refine_crossing(lo, hi, 1e-6, |d| {
            let p = xxz_report(&XxzPoint::new(d, size)?)?;
            Ok(col_a.extract(&p) - col_b.extract(&p))
        })?,
        _ => coarse,
    };
    println!("param_star={}", sig(refined));
    Ok(())
}

fn run() -> Result<(), Error> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            return Ok(());
        }
    };
    match &cli.cmd {
        Cmd::Point(args) => cmd_point(args),
        Cmd::Sweep(args) => cmd_sweep(args),
        Cmd::Scaling(args) => cmd_scaling(args),
        Cmd::Crossing(args) => cmd_crossing(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::InvalidArgument(_)) | Err(e @ Error::DomainError { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
