//! Closed-form finite-L transverse-field Ising correlators from the
//! free-fermion solution, plus the binary-entropy form of the classical
//! correlation.
//!
//! Momenta are the half-integer (antiperiodic) set ka = 2 pi q / L with
//! q = -(L-1)/2 ... (L-1)/2, the even-parity ground-state sector of the
//! periodic chain. This also keeps the g = 1 mode energies away from zero.

use crate::error::{Error, Result};
use crate::util::pairwise_sum;
use crate::xstate::{binary_entropy, quantum_discord, PointReport, SpinFunctions, XState};

/// One point of the transverse-field Ising chain; J = 1, lattice spacing 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfimPoint {
    pub g: f64,
    pub sites: usize,
}

impl TfimPoint {
    pub fn new(g: f64, sites: usize) -> Result<Self> {
        if g < 0.0 || !g.is_finite() {
            return Err(Error::DomainError {
                name: "g",
                value: g,
                domain: "[0, inf)",
            });
        }
        if sites < 4 || sites % 2 != 0 || sites > (1 << 20) {
            return Err(Error::InvalidArgument(format!(
                "site count {sites} must be even, >= 4 and <= 2^20"
            )));
        }
        Ok(TfimPoint { g, sites })
    }
}

/// Per-mode Bogoliubov data over the half-integer momentum set.
#[derive(Debug, Clone)]
pub struct ModeAmplitudes {
    /// Half-integer mode numbers q.
    pub q: Vec<f64>,
    /// u_q v_q products.
    pub uv: Vec<f64>,
    /// Occupations v_q^2.
    pub v2: Vec<f64>,
    /// Mode energies in units of J.
    pub energy: Vec<f64>,
}

/// Bogoliubov amplitudes for all L modes of the point.
pub fn mode_amplitudes(p: &TfimPoint) -> ModeAmplitudes {
    let l = p.sites as f64;
    let g = p.g;
    let n = p.sites;
    let mut q = Vec::with_capacity(n);
    let mut uv = Vec::with_capacity(n);
    let mut v2 = Vec::with_capacity(n);
    let mut energy = Vec::with_capacity(n);
    for i in 0..n {
        let qi = i as f64 - (l - 1.0) / 2.0;
        let ka = 2.0 * std::f64::consts::PI * qi / l;
        let root = (1.0 + g * g - 2.0 * g * ka.cos()).sqrt();
        q.push(qi);
        uv.push(0.5 * ka.sin() / root);
        v2.push(0.5 * (1.0 - (g - ka.cos()) / root));
        energy.push(2.0 * root);
    }
    ModeAmplitudes { q, uv, v2, energy }
}

/// Nearest-neighbor correlators (Gxx, Gyy, Gz, Gzz) from the mode sums,
/// with Gzz = Gz^2 - Gxx Gyy.
pub fn tfim_correlators(p: &TfimPoint) -> SpinFunctions {
    let modes = mode_amplitudes(p);
    let l = p.sites as f64;
    let n = p.sites;
    let mut xx = Vec::with_capacity(n);
    let mut yy = Vec::with_capacity(n);
    let mut zz = Vec::with_capacity(n);
    for i in 0..n {
        let ka = 2.0 * std::f64::consts::PI * modes.q[i] / l;
        let (s, c) = ka.sin_cos();
        xx.push(c * modes.v2[i] + s * modes.uv[i]);
        yy.push(c * modes.v2[i] - s * modes.uv[i]);
        zz.push(1.0 - 2.0 * modes.v2[i]);
    }
    let gxx = 2.0 / l * pairwise_sum(&xx);
    let gyy = 2.0 / l * pairwise_sum(&yy);
    let gz = pairwise_sum(&zz) / l;
    SpinFunctions {
        gz_i: gz,
        gz_j: gz,
        gxx,
        gyy,
        gzz: gz * gz - gxx * gyy,
    }
}

/// Full correlation report for the nearest-neighbor pair.
pub fn tfim_report(p: &TfimPoint) -> Result<PointReport> {
    let spin = tfim_correlators(p);
    let state = XState::from_spin_functions(&spin)?;
    let report = quantum_discord(&state.coeffs())?;
    Ok(PointReport { spin, report })
}

/// Classical correlation from the binary-entropy closed form,
/// C = H(p1) - H(p2) with p1 = (1 + Gz)/2 and
/// p2 = (1 + sqrt(Gxx^2 + Gz^2))/2.
pub fn tfim_classical_closed_form(p: &TfimPoint) -> f64 {
    let s = tfim_correlators(p);
    closed_form_from_spin(&s)
}

pub(crate) fn closed_form_from_spin(s: &SpinFunctions) -> f64 {
    let p1 = 0.5 * (1.0 + s.gz_i);
    let p2 = 0.5 * (1.0 + (s.gxx * s.gxx + s.gz_i * s.gz_i).sqrt().min(1.0));
    binary_entropy(p1).expect("p1 in range") - binary_entropy(p2).expect("p2 in range")
}
