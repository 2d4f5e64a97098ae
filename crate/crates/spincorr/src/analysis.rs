//! Parameter sweeps, finite differences, extremum and crossing location,
//! finite-size scaling fits, and the CSV table format shared with the CLI.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::xstate::{CorrCoeffs, CorrelationReport, MeasurementAngles, PointReport, SpinFunctions};

/// Uniform inclusive parameter grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub from: f64,
    pub to: f64,
    /// Number of points, endpoints included.
    pub points: usize,
}

impl Grid {
    pub fn new(from: f64, to: f64, points: usize) -> Result<Self> {
        if !from.is_finite() || !to.is_finite() || from >= to {
            return Err(Error::InvalidArgument(format!(
                "grid requires finite from < to, got [{from}, {to}]"
            )));
        }
        if points < 3 {
            return Err(Error::GridTooCoarse {
                needed: 3,
                got: points,
            });
        }
        Ok(Grid { from, to, points })
    }

    pub fn spacing(&self) -> f64 {
        (self.to - self.from) / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.to
                } else {
                    self.from + i as f64 * h
                }
            })
            .collect()
    }
}

/// One sweep row: the control parameter and the full point report.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub param: f64,
    pub point: PointReport,
}

/// Ordered sweep results with model metadata. `size` is the system size L
/// (0 for backends without one).
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub model: String,
    pub size: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn new(model: impl Into<String>, size: usize, rows: Vec<SweepRow>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0].param >= w[1].param) {
            return Err(Error::InvalidArgument(
                "sweep parameters must be strictly increasing".into(),
            ));
        }
        Ok(SweepTable {
            model: model.into(),
            size,
            rows,
        })
    }

    pub fn params(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.param).collect()
    }

    pub fn column(&self, col: Column) -> Vec<f64> {
        self.rows.iter().map(|r| col.extract(&r.point)).collect()
    }
}

/// Named scalar columns of a sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Gxx,
    Gyy,
    Gzz,
    Gz,
    C1,
    C2,
    C3,
    C4,
    C5,
    MutualInfo,
    Classical,
    Discord,
    AbsC1,
    AbsC3,
}

impl Column {
    pub fn extract(&self, p: &PointReport) -> f64 {
        let c = &p.report.coeffs;
        match self {
            Column::Gxx => p.spin.gxx,
            Column::Gyy => p.spin.gyy,
            Column::Gzz => p.spin.gzz,
            Column::Gz => p.spin.gz_i,
            Column::C1 => c.c1,
            Column::C2 => c.c2,
            Column::C3 => c.c3,
            Column::C4 => c.c4,
            Column::C5 => c.c5,
            Column::MutualInfo => p.report.mutual_info,
            Column::Classical => p.report.classical,
            Column::Discord => p.report.discord,
            Column::AbsC1 => c.c1.abs(),
            Column::AbsC3 => c.c3.abs(),
        }
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Gxx" | "gxx" => Column::Gxx,
            "Gyy" | "gyy" => Column::Gyy,
            "Gzz" | "gzz" => Column::Gzz,
            "Gz" | "gz" => Column::Gz,
            "c1" => Column::C1,
            "c2" => Column::C2,
            "c3" => Column::C3,
            "c4" => Column::C4,
            "c5" => Column::C5,
            "I" | "i" => Column::MutualInfo,
            "C" | "c" => Column::Classical,
            "Q" | "q" => Column::Discord,
            "abs_c1" | "|c1|" => Column::AbsC1,
            "abs_c3" | "|c3|" => Column::AbsC3,
            other => {
                return Err(Error::InvalidArgument(format!("unknown column `{other}`")));
            }
        })
    }
}

/// Evaluate a model backend over a grid in parallel. A failed point aborts
/// the whole sweep with its index.
pub fn sweep<F>(model: &str, size: usize, grid: &Grid, eval: F) -> Result<SweepTable>
where
    F: Fn(f64) -> Result<PointReport> + Sync,
{
    let params = grid.values();
    let points: Vec<(usize, f64, Result<PointReport>)> = params
        .par_iter()
        .enumerate()
        .map(|(i, &p)| (i, p, eval(p)))
        .collect();
    let mut rows = Vec::with_capacity(params.len());
    for (index, param, point) in points {
        match point {
            Ok(point) => rows.push(SweepRow { param, point }),
            Err(source) => {
                return Err(Error::SweepPoint {
                    index,
                    param,
                    source: Box::new(source),
                });
            }
        }
    }
    SweepTable::new(model, size, rows)
}

/// A derived scalar series over the sweep parameters. `endpoint[i]` marks
/// values from one-sided (lower-order) stencils.
#[derive(Debug, Clone)]
pub struct Series {
    pub params: Vec<f64>,
    pub values: Vec<f64>,
    pub endpoint: Vec<bool>,
}

fn require_uniform(params: &[f64]) -> Result<f64> {
    let h = params[1] - params[0];
    let tol = 1e-9 * (params[params.len() - 1] - params[0]).abs().max(1.0);
    for w in params.windows(2) {
        if ((w[1] - w[0]) - h).abs() > tol {
            return Err(Error::InvalidArgument(
                "finite differences require a uniform grid".into(),
            ));
        }
    }
    Ok(h)
}

/// Finite differences of raw values on a uniform grid. Interior points are
/// central second-order; endpoints one-sided first-order and flagged.
pub fn differentiate_values(params: &[f64], values: &[f64], order: usize) -> Result<Series> {
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "derivative order {order} not in {{1, 2}}"
        )));
    }
    let n = params.len();
    if n < order + 2 {
        return Err(Error::GridTooCoarse {
            needed: order + 2,
            got: n,
        });
    }
    let h = require_uniform(params)?;
    let mut out = Vec::with_capacity(n);
    let mut endpoint = vec![false; n];
    endpoint[0] = true;
    endpoint[n - 1] = true;
    for i in 0..n {
        let v = match (order, i) {
            (1, 0) => (values[1] - values[0]) / h,
            (1, i) if i == n - 1 => (values[n - 1] - values[n - 2]) / h,
            (1, i) => (values[i + 1] - values[i - 1]) / (2.0 * h),
            (2, 0) => (values[2] - 2.0 * values[1] + values[0]) / (h * h),
            (2, i) if i == n - 1 => (values[n - 1] - 2.0 * values[n - 2] + values[n - 3]) / (h * h),
            (2, i) => (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h),
            _ => unreachable!(),
        };
        out.push(v);
    }
    Ok(Series {
        params: params.to_vec(),
        values: out,
        endpoint,
    })
}

/// Finite differences of a sweep-table column.
pub fn differentiate(t: &SweepTable, col: Column, order: usize) -> Result<Series> {
    differentiate_values(&t.params(), &t.column(col), order)
}

/// Which kind of extremum to locate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

/// Locate an interior extremum of raw values by parabolic interpolation
/// through the best grid point and its neighbors.
pub fn locate_extremum_values(
    params: &[f64],
    values: &[f64],
    kind: Extremum,
) -> Result<(f64, f64)> {
    if params.len() < 3 {
        return Err(Error::GridTooCoarse {
            needed: 3,
            got: params.len(),
        });
    }
    let better = |a: f64, b: f64| match kind {
        Extremum::Min => a < b,
        Extremum::Max => a > b,
    };
    let mut best = 0;
    for i in 1..values.len() {
        if better(values[i], values[best]) {
            best = i;
        }
    }
    if best == 0 || best == values.len() - 1 {
        return Err(Error::ExtremumOnBoundary);
    }
    let (x0, x1, x2) = (params[best - 1], params[best], params[best + 1]);
    let (y0, y1, y2) = (values[best - 1], values[best], values[best + 1]);
    let denom = y0 - 2.0 * y1 + y2;
    if denom.abs() < 1e-300 {
        return Ok((x1, y1));
    }
    let h = 0.5 * (x2 - x0);
    let shift = 0.5 * (y0 - y2) / denom;
    let x_star = x1 + shift * h;
    let y_star = y1 - 0.125 * (y0 - y2) * (y0 - y2) / denom;
    Ok((x_star, y_star))
}

/// Locate an interior extremum of a sweep-table column.
pub fn locate_extremum(t: &SweepTable, col: Column, kind: Extremum) -> Result<(f64, f64)> {
    locate_extremum_values(&t.params(), &t.column(col), kind)
}

/// Least-squares fit of values against log2 L, degree 1 or 2.
///
/// A caution on protocol: the derivative extrema being fitted sharpen with
/// L, so their heights depend on the finite-difference step. The quoted
/// scaling laws correspond to a fixed step of 1e-3 in the sweep parameter;
/// out-resolving the peak (per-size adaptive steps) changes the large-L
/// tail from polylog to power-law growth.
#[derive(Debug, Clone)]
pub struct ScalingFit {
    /// a0, a1 (, a2) of a0 + a1 log2 L (+ a2 log2^2 L).
    pub coeffs: Vec<f64>,
    pub residual_rms: f64,
    pub size_range: (usize, usize),
}

pub fn scaling_fit(sizes: &[usize], values: &[f64], degree: usize) -> Result<ScalingFit> {
    if !(1..=2).contains(&degree) {
        return Err(Error::InvalidArgument(format!(
            "fit degree {degree} not in {{1, 2}}"
        )));
    }
    if sizes.len() != values.len() {
        return Err(Error::InvalidArgument(
            "sizes and values length mismatch".into(),
        ));
    }
    if sizes.len() < degree + 2 {
        return Err(Error::RankDeficient(format!(
            "degree-{degree} fit needs >= {} sizes, got {}",
            degree + 2,
            sizes.len()
        )));
    }
    let n = sizes.len();
    let logs: Vec<f64> = sizes.iter().map(|&l| (l as f64).log2()).collect();
    let design = DMatrix::from_fn(n, degree + 1, |r, c| logs[r].powi(c as i32));
    let rhs = DVector::from_column_slice(values);
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.iter().any(|&s| s < 1e-12 * smax) {
        return Err(Error::RankDeficient(
            "degenerate size list in scaling fit".into(),
        ));
    }
    let coeffs = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::RankDeficient(e.to_string()))?;
    let residual = &design * &coeffs - &rhs;
    let residual_rms = (residual.norm_squared() / n as f64).sqrt();
    Ok(ScalingFit {
        coeffs: coeffs.iter().copied().collect(),
        residual_rms,
        size_range: (sizes[0], sizes[sizes.len() - 1]),
    })
}

/// Locate the single sign change of a - b by linear interpolation. An exact
/// zero of the difference at a grid point counts as the crossing.
pub fn find_crossing_values(params: &[f64], a: &[f64], b: &[f64]) -> Result<f64> {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mut crossings = Vec::new();
    for i in 0..d.len() {
        if d[i] == 0.0 {
            crossings.push(params[i]);
        } else if i + 1 < d.len() && d[i + 1] != 0.0 && d[i] * d[i + 1] < 0.0 {
            let t = d[i] / (d[i] - d[i + 1]);
            crossings.push(params[i] + t * (params[i + 1] - params[i]));
        }
    }
    match crossings.len() {
        0 => Err(Error::NoCrossing),
        1 => Ok(crossings[0]),
        _ => Err(Error::MultipleCrossings),
    }
}

/// Locate the single crossing of two sweep-table columns.
pub fn find_crossing(t: &SweepTable, a: Column, b: Column) -> Result<f64> {
    find_crossing_values(&t.params(), &t.column(a), &t.column(b))
}

/// Refine a bracketed root of `diff` by bisection to the given parameter
/// tolerance. Used to polish a table crossing against the model backend.
pub fn refine_crossing<F>(mut lo: f64, mut hi: f64, tol: f64, diff: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut f_lo = diff(lo)?;
    let f_hi = diff(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoCrossing);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = diff(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// CSV column header shared by the writer, the reader and the CLI.
pub const CSV_HEADER: &str =
    "model,L,param,Gxx,Gyy,Gzz,Gz,c1,c2,c3,c4,c5,I,C,Q,theta_opt,phi_opt";

fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Render a sweep table in the canonical CSV format: 12 significant digits,
/// `.` decimal separator, LF line endings, byte-deterministic.
pub fn to_csv(t: &SweepTable) -> String {
    let mut out = String::with_capacity(64 + 256 * t.rows.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &t.rows {
        let p = &row.point;
        let c = &p.report.coeffs;
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            t.model,
            t.size,
            fmt_sig(row.param),
            fmt_sig(p.spin.gxx),
            fmt_sig(p.spin.gyy),
            fmt_sig(p.spin.gzz),
            fmt_sig(p.spin.gz_i),
            fmt_sig(c.c1),
            fmt_sig(c.c2),
            fmt_sig(c.c3),
            fmt_sig(c.c4),
            fmt_sig(c.c5),
            fmt_sig(p.report.mutual_info),
            fmt_sig(p.report.classical),
            fmt_sig(p.report.discord),
            fmt_sig(p.report.optimal_angles.theta()),
            fmt_sig(p.report.optimal_angles.phi()),
        );
    }
    out
}

/// Parse a canonical CSV back into a sweep table. Marginal entropies are
/// recomputed from the stored coefficients; everything else round-trips.
pub fn from_csv(text: &str) -> Result<SweepTable> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
    if header != CSV_HEADER {
        return Err(Error::InvalidArgument(format!(
            "unexpected CSV header `{header}`"
        )));
    }
    let mut model = None;
    let mut size = 0;
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 17 {
            return Err(Error::InvalidArgument(format!(
                "row {}: expected 17 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let num = |i: usize| -> Result<f64> {
            fields[i].parse::<f64>().map_err(|_| {
                Error::InvalidArgument(format!("row {}: bad number `{}`", lineno + 2, fields[i]))
            })
        };
        match &model {
            None => model = Some(fields[0].to_string()),
            Some(m) if m != fields[0] => {
                return Err(Error::InvalidArgument("mixed models in CSV".into()));
            }
            _ => {}
        }
        size = fields[1]
            .parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("row {}: bad L", lineno + 2)))?;
        let spin = SpinFunctions {
            gz_i: num(6)?,
            gz_j: num(6)?,
            gxx: num(3)?,
            gyy: num(4)?,
            gzz: num(5)?,
        };
        let coeffs = CorrCoeffs::new(num(7)?, num(8)?, num(9)?, num(10)?, num(11)?)?;
        let report = CorrelationReport {
            coeffs,
            mutual_info: num(12)?,
            classical: num(13)?,
            discord: num(14)?,
            optimal_angles: MeasurementAngles::new(num(15)?, num(16)?)?,
            entropy_a: coeffs.entropy_a()?,
            entropy_b: coeffs.entropy_b()?,
        };
        rows.push(SweepRow {
            param: num(2)?,
            point: PointReport { spin, report },
        });
    }
    SweepTable::new(
        model.ok_or_else(|| Error::InvalidArgument("CSV has no data rows".into()))?,
        size,
        rows,
    )
}
