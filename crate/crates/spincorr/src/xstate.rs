//! Pure algebra of Z2-symmetric two-qubit states: construction, entropies,
//! mutual information, measurement optimization, classical correlation and
//! quantum discord.
//!
//! All entropies are in bits (base-2 logs) with the convention 0 log 0 = 0.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// Trace / linear-identity tolerance.
pub const TRACE_TOL: f64 = 1e-12;
/// Slack allowed on positivity checks.
pub const POSITIVITY_TOL: f64 = 1e-12;
/// Eigenvalues in [-EIG_CLIP, 0) are clipped to 0 before entropies.
pub const EIG_CLIP: f64 = 1e-12;

fn log2(x: f64) -> f64 {
    x.log2()
}

/// x log2 x with the 0 log 0 = 0 convention.
fn xlog2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * log2(x)
    }
}

/// Binary entropy H(p) = -p log p - (1-p) log(1-p) in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-TRACE_TOL..=1.0 + TRACE_TOL).contains(&p) {
        return Err(Error::DomainError {
            name: "p",
            value: p,
            domain: "[0, 1]",
        });
    }
    let p = p.clamp(0.0, 1.0);
    Ok(-xlog2(p) - xlog2(1.0 - p))
}

/// Clip floating-point noise on a would-be eigenvalue; genuinely negative
/// values signal an invalid input.
fn clip_eigenvalue(lambda: f64) -> Result<f64> {
    if lambda < -EIG_CLIP {
        Err(Error::NonPhysicalState(format!(
            "eigenvalue {lambda:e} below -{EIG_CLIP:e}"
        )))
    } else {
        Ok(lambda.max(0.0))
    }
}

/// Magnetizations and two-point functions entering the X-state elements:
/// `gz_i`, `gz_j` are the site magnetizations along z; `gxx`, `gyy`, `gzz`
/// the nearest-pair two-point functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinFunctions {
    pub gz_i: f64,
    pub gz_j: f64,
    pub gxx: f64,
    pub gyy: f64,
    pub gzz: f64,
}

/// Z2-symmetric two-qubit density matrix
///
/// ```text
///     | a  0  0  f |
///     | 0  b1 z  0 |
///     | 0  z  b2 0 |
///     | f  0  0  d |
/// ```
///
/// in the basis {uu, ud, du, dd}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    pub d: f64,
    pub z: f64,
    pub f: f64,
}

impl XState {
    /// Validates trace, population positivity and the 2x2 block
    /// positivity conditions z^2 <= b1 b2 and f^2 <= a d.
    pub fn new(a: f64, b1: f64, b2: f64, d: f64, z: f64, f: f64) -> Result<Self> {
        let trace = a + b1 + b2 + d;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::NonPhysicalState(format!(
                "trace {trace} differs from 1 by more than {TRACE_TOL:e}"
            )));
        }
        for (name, v) in [("a", a), ("b1", b1), ("b2", b2), ("d", d)] {
            if v < -POSITIVITY_TOL {
                return Err(Error::NonPhysicalState(format!(
                    "population {name} = {v:e} is negative"
                )));
            }
        }
        if z * z > b1 * b2 + POSITIVITY_TOL {
            return Err(Error::NonPhysicalState(format!(
                "coherence z = {z:e} violates z^2 <= b1 b2"
            )));
        }
        if f * f > a * d + POSITIVITY_TOL {
            return Err(Error::NonPhysicalState(format!(
                "coherence f = {f:e} violates f^2 <= a d"
            )));
        }
        Ok(XState { a, b1, b2, d, z, f })
    }

    /// Quarter-sum construction from spin correlation functions.
    pub fn from_spin_functions(s: &SpinFunctions) -> Result<Self> {
        for (name, v) in [
            ("gz_i", s.gz_i),
            ("gz_j", s.gz_j),
            ("gxx", s.gxx),
            ("gyy", s.gyy),
            ("gzz", s.gzz),
        ] {
            if !(-1.0 - TRACE_TOL..=1.0 + TRACE_TOL).contains(&v) {
                return Err(Error::DomainError {
                    name,
                    value: v,
                    domain: "[-1, 1]",
                });
            }
        }
        let a = 0.25 * (1.0 + s.gz_i + s.gz_j + s.gzz);
        let b1 = 0.25 * (1.0 + s.gz_i - s.gz_j - s.gzz);
        let b2 = 0.25 * (1.0 - s.gz_i + s.gz_j - s.gzz);
        let d = 0.25 * (1.0 - s.gz_i - s.gz_j + s.gzz);
        let z = 0.25 * (s.gxx + s.gyy);
        let f = 0.25 * (s.gxx - s.gyy);
        XState::new(a, b1, b2, d, z, f)
    }

    pub fn from_coeffs(c: &CorrCoeffs) -> Result<Self> {
        let a = 0.25 * (1.0 + c.c3 + c.c4 + c.c5);
        let d = 0.25 * (1.0 + c.c3 - c.c4 - c.c5);
        let b1 = 0.25 * (1.0 - c.c3 - c.c4 + c.c5);
        let b2 = 0.25 * (1.0 - c.c3 + c.c4 - c.c5);
        let z = 0.25 * (c.c1 + c.c2);
        let f = 0.25 * (c.c1 - c.c2);
        XState::new(a, b1, b2, d, z, f)
    }

    /// Inverse of [`XState::from_spin_functions`].
    pub fn spin_functions(&self) -> SpinFunctions {
        SpinFunctions {
            gz_i: self.a + self.b1 - self.b2 - self.d,
            gz_j: self.a - self.b1 + self.b2 - self.d,
            gxx: 2.0 * (self.z + self.f),
            gyy: 2.0 * (self.z - self.f),
            gzz: self.a + self.d - self.b1 - self.b2,
        }
    }

    /// Bloch decomposition coefficients c1..c5.
    pub fn coeffs(&self) -> CorrCoeffs {
        CorrCoeffs {
            c1: 2.0 * self.z + 2.0 * self.f,
            c2: 2.0 * self.z - 2.0 * self.f,
            c3: self.a + self.d - self.b1 - self.b2,
            c4: self.a - self.d - self.b1 + self.b2,
            c5: self.a - self.d + self.b1 - self.b2,
        }
    }
}

/// Bloch decomposition coefficients of an [`XState`]:
/// rho = (1/4)[I + sum_k c_k s_k x s_k + c4 I x s_3 + c5 s_3 x I].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
}

impl CorrCoeffs {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64, c5: f64) -> Result<Self> {
        for (name, v) in [("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4), ("c5", c5)] {
            if v.abs() > 1.0 + TRACE_TOL {
                return Err(Error::DomainError {
                    name,
                    value: v,
                    domain: "[-1, 1]",
                });
            }
        }
        Ok(CorrCoeffs { c1, c2, c3, c4, c5 })
    }

    /// The four eigenvalues of the full density matrix.
    pub fn global_eigenvalues(&self) -> [f64; 4] {
        let s_plus = ((self.c4 + self.c5).powi(2) + (self.c1 - self.c2).powi(2)).sqrt();
        let s_minus = ((self.c4 - self.c5).powi(2) + (self.c1 + self.c2).powi(2)).sqrt();
        [
            0.25 * ((1.0 + self.c3) + s_plus),
            0.25 * ((1.0 + self.c3) - s_plus),
            0.25 * ((1.0 - self.c3) + s_minus),
            0.25 * ((1.0 - self.c3) - s_minus),
        ]
    }

    /// Marginal entropy of part A (site i), in bits.
    pub fn entropy_a(&self) -> Result<f64> {
        binary_entropy(0.5 * (1.0 + self.c5))
    }

    /// Marginal entropy of part B (site j), in bits.
    pub fn entropy_b(&self) -> Result<f64> {
        binary_entropy(0.5 * (1.0 + self.c4))
    }

    /// Mutual information I = S_A + S_B + sum_k lambda_k log lambda_k.
    pub fn mutual_information(&self) -> Result<f64> {
        let mut joint = 0.0;
        for lambda in self.global_eigenvalues() {
            joint += xlog2(clip_eigenvalue(lambda)?);
        }
        Ok(self.entropy_a()? + self.entropy_b()? + joint)
    }
}

/// Azimuthal/polar angles parametrizing the projective measurement on B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    theta: f64,
    phi: f64,
}

impl MeasurementAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::DomainError {
                name: "theta",
                value: theta,
                domain: "[0, pi]",
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::DomainError {
                name: "phi",
                value: phi,
                domain: "[0, 2 pi)",
            });
        }
        Ok(MeasurementAngles { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Unit Bloch direction (w1, w2, w3).
    pub fn direction(&self) -> [f64; 3] {
        [
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        ]
    }
}

/// Conditional entropies and outcome probabilities of the two-outcome
/// measurement on B.
#[derive(Debug, Clone, Copy)]
pub struct MeasuredEntropies {
    pub s0: f64,
    pub s1: f64,
    pub p0: f64,
    pub p1: f64,
}

/// Entropies of the post-measurement conditional states of A.
///
/// Errors with `DegenerateOutcome` when an outcome probability vanishes
/// (below 1e-14); the optimizer handles that case by dropping the outcome.
pub fn measured_conditional_entropy(
    c: &CorrCoeffs,
    m: &MeasurementAngles,
) -> Result<MeasuredEntropies> {
    let [w1, w2, w3] = m.direction();
    let mut s = [0.0f64; 2];
    let mut p = [0.0f64; 2];
    for k in 0..2 {
        let sign = if k == 0 { 1.0 } else { -1.0 };
        let denom = 1.0 + sign * c.c4 * w3;
        p[k] = 0.5 * denom;
        if denom.abs() <= 1e-14 {
            return Err(Error::DegenerateOutcome {
                outcome: k,
                prob: p[k],
            });
        }
        s[k] = outcome_entropy(c, sign, denom, w1, w2, w3)?;
    }
    Ok(MeasuredEntropies {
        s0: s[0],
        s1: s[1],
        p0: p[0],
        p1: p[1],
    })
}

fn outcome_entropy(c: &CorrCoeffs, sign: f64, denom: f64, w1: f64, w2: f64, w3: f64) -> Result<f64> {
    let q1 = c.c1 * w1 / denom;
    let q2 = c.c2 * w2 / denom;
    let q3 = (c.c3 * w3 + sign * c.c5) / denom;
    let norm = (q1 * q1 + q2 * q2 + q3 * q3).sqrt();
    if norm > 1.0 + 1e-9 {
        return Err(Error::NonPhysicalState(format!(
            "conditional Bloch vector norm {norm} exceeds 1"
        )));
    }
    binary_entropy(0.5 * (1.0 + norm.min(1.0)))
}

/// The quantity maximized over measurement angles:
/// S_A - (S0 + S1)/2 - c4 w3 (S0 - S1)/2.
pub fn classical_objective(c: &CorrCoeffs, m: &MeasurementAngles) -> Result<f64> {
    let s_a = c.entropy_a()?;
    Ok(objective_inner(c, s_a, m.theta(), m.phi()))
}

/// Objective evaluation tolerating degenerate outcomes (their entropy
/// contribution is zero).
fn objective_inner(c: &CorrCoeffs, s_a: f64, theta: f64, phi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (w1, w2, w3) = (st * cp, st * sp, ct);
    let mut s = [0.0f64; 2];
    for k in 0..2 {
        let sign = if k == 0 { 1.0 } else { -1.0 };
        let denom = 1.0 + sign * c.c4 * w3;
        if denom.abs() <= 1e-14 {
            // vanishing outcome: conditional entropy defined as 0
            continue;
        }
        let q1 = c.c1 * w1 / denom;
        let q2 = c.c2 * w2 / denom;
        let q3 = (c.c3 * w3 + sign * c.c5) / denom;
        let norm = (q1 * q1 + q2 * q2 + q3 * q3).sqrt().min(1.0);
        let p = 0.5 * (1.0 + norm);
        s[k] = -xlog2(p) - xlog2(1.0 - p);
    }
    s_a - 0.5 * (s[0] + s[1]) - 0.5 * c.c4 * w3 * (s[0] - s[1])
}

/// Measurement-optimization strategy for [`classical_correlation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Coarse 64x64 grid over the reduced angle domain followed by local
    /// grid-shrinking refinement.
    GridRefine,
    /// Analytic formula when c4 = c5 = 0, grid refinement otherwise.
    ClosedFormAuto,
}

/// Classical correlation C and the maximizing measurement angles,
/// canonicalized to theta, phi in [0, pi/2] using the objective symmetries
/// w1 -> -w1, w2 -> -w2 and w3 -> -w3.
pub fn classical_correlation(
    c: &CorrCoeffs,
    strategy: Strategy,
) -> Result<(f64, MeasurementAngles)> {
    if strategy == Strategy::ClosedFormAuto && c.c4.abs() <= TRACE_TOL && c.c5.abs() <= TRACE_TOL {
        let value = classical_correlation_closed_form(c)?;
        let angles = closed_form_angles(c);
        return Ok((value, angles));
    }
    grid_refine(c)
}

fn closed_form_angles(c: &CorrCoeffs) -> MeasurementAngles {
    // Maximizing direction is the Bloch axis of the largest |c_k|.
    let abs = [c.c1.abs(), c.c2.abs(), c.c3.abs()];
    let mut best = 0;
    for k in 1..3 {
        if abs[k] > abs[best] {
            best = k;
        }
    }
    let (theta, phi) = match best {
        0 => (FRAC_PI_2, 0.0),
        1 => (FRAC_PI_2, FRAC_PI_2),
        _ => (0.0, 0.0),
    };
    MeasurementAngles { theta, phi }
}

const COARSE_GRID: usize = 64;
const ANGLE_RESOLUTION: f64 = 1e-7;

fn grid_refine(c: &CorrCoeffs) -> Result<(f64, MeasurementAngles)> {
    let s_a = c.entropy_a()?;
    let hi = FRAC_PI_2;
    let step = hi / (COARSE_GRID - 1) as f64;

    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..COARSE_GRID {
        let theta = i as f64 * step;
        for j in 0..COARSE_GRID {
            let phi = j as f64 * step;
            let v = objective_inner(c, s_a, theta, phi);
            if v > best.0 {
                best = (v, theta, phi);
            }
        }
    }

    // Shrinking 9x9 local scans around the incumbent. The patch half-width
    // only shrinks when the best point is interior to the patch.
    let (mut value, mut theta, mut phi) = best;
    let mut h = step;
    let mut iterations = 0usize;
    while h > ANGLE_RESOLUTION {
        iterations += 1;
        if iterations > 200 {
            return Err(Error::OptimizerStall);
        }
        let mut local = (value, theta, phi);
        let mut on_border = false;
        for di in -4i32..=4 {
            for dj in -4i32..=4 {
                let t = (theta + di as f64 * h / 4.0).clamp(0.0, hi);
                let p = (phi + dj as f64 * h / 4.0).clamp(0.0, hi);
                let v = objective_inner(c, s_a, t, p);
                if v > local.0 {
                    local = (v, t, p);
                    on_border = di.abs() == 4 || dj.abs() == 4;
                }
            }
        }
        value = local.0;
        theta = local.1;
        phi = local.2;
        if !on_border {
            h /= 4.0;
        }
    }
    Ok((value, MeasurementAngles { theta, phi }))
}

/// Analytic classical correlation for c4 = c5 = 0:
/// C = (1-c)/2 log(1-c) + (1+c)/2 log(1+c), c = max(|c1|, |c2|, |c3|).
pub fn classical_correlation_closed_form(c: &CorrCoeffs) -> Result<f64> {
    if c.c4.abs() > TRACE_TOL || c.c5.abs() > TRACE_TOL {
        return Err(Error::NotApplicable { c4: c.c4, c5: c.c5 });
    }
    let m = c.c1.abs().max(c.c2.abs()).max(c.c3.abs()).min(1.0);
    Ok(0.5 * (xlog2(1.0 - m) + xlog2(1.0 + m)))
}

/// Full per-point result: coefficients, correlation measures, optimal
/// measurement angles and marginal entropies (all entropic quantities
/// in bits).
#[derive(Debug, Clone, Copy)]
pub struct CorrelationReport {
    pub coeffs: CorrCoeffs,
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    pub optimal_angles: MeasurementAngles,
    pub entropy_a: f64,
    pub entropy_b: f64,
}

/// A model evaluation point: the raw spin functions plus the derived
/// correlation report.
#[derive(Debug, Clone, Copy)]
pub struct PointReport {
    pub spin: SpinFunctions,
    pub report: CorrelationReport,
}

/// Mutual information, classical correlation and discord Q = I - C.
pub fn quantum_discord(c: &CorrCoeffs) -> Result<CorrelationReport> {
    let mutual_info = c.mutual_information()?;
    let (classical, optimal_angles) = classical_correlation(c, Strategy::ClosedFormAuto)?;
    Ok(CorrelationReport {
        coeffs: *c,
        mutual_info,
        classical,
        discord: mutual_info - classical,
        optimal_angles,
        entropy_a: c.entropy_a()?,
        entropy_b: c.entropy_b()?,
    })
}
