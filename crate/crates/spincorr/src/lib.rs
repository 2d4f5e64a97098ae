//! Classical correlation, quantum discord and mutual information for
//! two-spin reduced states of Z2-symmetric many-body models.
//!
//! The crate is organized around the algebra of two-qubit X-states
//! ([`xstate`]), with three exact model backends feeding it:
//!
//! * [`tfim`] — transverse-field Ising chain via the free-fermion solution,
//! * [`xxz`] — XXZ ring via sector-resolved exact diagonalization ([`ed`]),
//! * [`lmg`] — Lipkin-Meshkov-Glick model in the Hartree-Fock ground state.
//!
//! The [`analysis`] module provides parameter sweeps, numerical derivatives,
//! extremum/crossing localization and finite-size scaling fits.

pub mod analysis;
pub mod ed;
pub mod error;
pub mod lmg;
pub mod tfim;
pub mod util;
pub mod xstate;
pub mod xxz;

pub use error::{Error, Result};
pub use xstate::{
    classical_correlation, quantum_discord, CorrCoeffs, CorrelationReport, MeasurementAngles,
    PointReport, SpinFunctions, Strategy, XState,
};
