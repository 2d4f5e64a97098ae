//! Mean-field two-mode correlations of the infinite-range collective model
//! across its symmetry-breaking transition at lambda = 1.
//!
//! Below the transition the variational angle alpha = arccos(lambda)/2 tilts
//! each mode; the same-mode pair is a pure entangled state while any pair of
//! different modes is a diagonal product state with zero correlations of
//! every kind.

use crate::error::{Error, Result};
use crate::xstate::{quantum_discord, PointReport, XState};

/// One point of the collective model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmgPoint {
    pub lambda: f64,
    /// Pair taken within one mode (true) or across two different modes.
    pub same_mode: bool,
}

impl LmgPoint {
    pub fn new(lambda: f64, same_mode: bool) -> Result<Self> {
        if !(0.0..).contains(&lambda) || !lambda.is_finite() {
            return Err(Error::DomainError {
                name: "lambda",
                value: lambda,
                domain: "[0, inf)",
            });
        }
        Ok(LmgPoint { lambda, same_mode })
    }
}

/// Variational tilt angle: arccos(lambda)/2 in the broken phase, zero above.
pub fn variational_angle(lambda: f64) -> f64 {
    if lambda < 1.0 {
        0.5 * lambda.acos()
    } else {
        0.0
    }
}

/// Two-qubit density matrix of the chosen pair at the mean-field optimum.
pub fn lmg_pair_density(p: &LmgPoint) -> XState {
    let alpha = variational_angle(p.lambda);
    let (s, c) = alpha.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let state = if p.same_mode {
        XState::new(0.0, c2, s2, 0.0, s * c, 0.0)
    } else {
        XState::new(s2 * c2, c2 * c2, s2 * s2, s2 * c2, 0.0, 0.0)
    };
    state.expect("mean-field pair density is physical")
}

/// Full correlation report for the pair.
pub fn lmg_report(p: &LmgPoint) -> Result<PointReport> {
    let state = lmg_pair_density(p);
    let report = quantum_discord(&state.coeffs())?;
    Ok(PointReport {
        spin: state.spin_functions(),
        report,
    })
}
