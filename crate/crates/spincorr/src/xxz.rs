//! Finite-L XXZ correlation reports over the anisotropy, the analytic
//! classical-correlation path (c4 = c5 = 0 under U(1) symmetry plus zero
//! magnetization), Hellmann-Feynman cross-checks and the classical Ising
//! limits.

use crate::ed::{ground_space, spin_correlators, Model, RingSpec};
use crate::error::{Error, Result};
use crate::xstate::{quantum_discord, CorrCoeffs, PointReport, SpinFunctions, XState};

/// Tolerance on the symmetry-forced vanishing of f and c4.
const SYMMETRY_TOL: f64 = 1e-10;

/// One point of the XXZ ring; J = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxzPoint {
    pub delta: f64,
    pub sites: usize,
}

impl XxzPoint {
    pub fn new(delta: f64, sites: usize) -> Result<Self> {
        if !(4..=20).contains(&sites) {
            return Err(Error::InvalidArgument(format!(
                "site count {sites} outside 4..=20"
            )));
        }
        if !delta.is_finite() {
            return Err(Error::DomainError {
                name: "delta",
                value: delta,
                domain: "finite reals",
            });
        }
        Ok(XxzPoint { delta, sites })
    }

    fn spec(&self) -> RingSpec {
        RingSpec::new(self.sites, Model::Xxz { delta: self.delta }).expect("validated")
    }
}

/// Correlation report for the nearest-neighbor pair of the ground mixture.
///
/// Asserts the U(1)-forced structure (f = 0, c4 = c5 = 0 within 1e-10) and
/// takes the analytic classical-correlation path.
pub fn xxz_report(p: &XxzPoint) -> Result<PointReport> {
    let sol = ground_space(&p.spec(), None)?;
    let spin = spin_correlators(&sol, 0, 1)?;
    let state = XState::from_spin_functions(&spin)?;
    let coeffs = state.coeffs();
    if state.f.abs() > SYMMETRY_TOL {
        return Err(Error::SymmetryViolation(format!(
            "f = {:e} should vanish under U(1) symmetry",
            state.f
        )));
    }
    if coeffs.c4.abs() > SYMMETRY_TOL || coeffs.c5.abs() > SYMMETRY_TOL {
        return Err(Error::SymmetryViolation(format!(
            "c4 = {:e}, c5 = {:e} should vanish at zero magnetization",
            coeffs.c4, coeffs.c5
        )));
    }
    // Project out the residual numerical noise so the closed form applies.
    let clean = CorrCoeffs::new(coeffs.c1, coeffs.c2, coeffs.c3, 0.0, 0.0)?;
    let report = quantum_discord(&clean)?;
    Ok(PointReport { spin, report })
}

/// Hellmann-Feynman residuals r1 = |c1 - (Delta de/dDelta - e)| and
/// r3 = |c3 + 2 de/dDelta|, with Richardson-extrapolated central
/// differences of the ground-state energy density.
pub fn hellmann_feynman_residuals(p: &XxzPoint, h: f64) -> Result<(f64, f64)> {
    if h <= 0.0 {
        return Err(Error::DomainError {
            name: "h",
            value: h,
            domain: "(0, inf)",
        });
    }
    if (p.delta - 1.0).abs() < 2.0 * h {
        return Err(Error::NearDegeneracy { param: p.delta });
    }
    let l = p.sites as f64;
    let energy_density = |delta: f64| -> Result<(f64, usize)> {
        let spec = RingSpec::new(p.sites, Model::Xxz { delta })?;
        let sol = ground_space(&spec, None)?;
        Ok((sol.energy / l, sol.degeneracy()))
    };
    let (eps, degeneracy) = energy_density(p.delta)?;
    let mut stencil = Vec::new();
    for step in [h, h / 2.0] {
        let (e_plus, d_plus) = energy_density(p.delta + step)?;
        let (e_minus, d_minus) = energy_density(p.delta - step)?;
        if d_plus != degeneracy || d_minus != degeneracy {
            return Err(Error::NearDegeneracy { param: p.delta });
        }
        stencil.push((e_plus - e_minus) / (2.0 * step));
    }
    let deriv = (4.0 * stencil[1] - stencil[0]) / 3.0;

    let sol = ground_space(&p.spec(), None)?;
    let spin = spin_correlators(&sol, 0, 1)?;
    let c1_direct = 0.5 * (spin.gxx + spin.gyy);
    let c3_direct = spin.gzz;
    let r1 = (c1_direct - (p.delta * deriv - eps)).abs();
    let r3 = (c3_direct + 2.0 * deriv).abs();
    Ok((r1, r3))
}

/// Sign of the classical Ising limit: ferromagnetic (+) or
/// antiferromagnetic (-).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsingSign {
    Ferro,
    Antiferro,
}

/// Analytic doublet-mixture report of the Ising limits Delta -> +/- inf:
/// I = C = 1, Q = 0 for both signs.
pub fn ising_limit_state(sign: IsingSign) -> PointReport {
    let gzz = match sign {
        IsingSign::Ferro => 1.0,
        IsingSign::Antiferro => -1.0,
    };
    let spin = SpinFunctions {
        gz_i: 0.0,
        gz_j: 0.0,
        gxx: 0.0,
        gyy: 0.0,
        gzz,
    };
    let coeffs = XState::from_spin_functions(&spin)
        .expect("doublet mixture is physical")
        .coeffs();
    let report = quantum_discord(&coeffs).expect("closed form on a classical mixture");
    PointReport { spin, report }
}
