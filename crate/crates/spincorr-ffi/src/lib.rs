//! C ABI over the spincorr library: flat report structs, status codes and
//! an opaque sweep handle. All entry points are panic-safe and never
//! unwind across the FFI boundary.
//!
//! The matching header is generated into `include/spincorr.h` at build
//! time.

use std::panic::{catch_unwind, AssertUnwindSafe};

use spincorr::analysis::{sweep, Grid, SweepTable};
use spincorr::lmg::{lmg_report, LmgPoint};
use spincorr::tfim::{tfim_report, TfimPoint};
use spincorr::xxz::{xxz_report, XxzPoint};
use spincorr::{quantum_discord, CorrCoeffs, Error, PointReport, XState};

/// Status code of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpincorrStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments outside their documented domain.
    InvalidArgument = 2,
    /// Inputs describe a non-physical density matrix.
    NonPhysical = 3,
    /// A numerical routine failed to converge or hit a degenerate case.
    NumericalFailure = 4,
    /// An internal panic was caught; the output is untouched.
    Panic = 5,
}

/// Flat copy of one correlation report (all entropic quantities in bits).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpincorrReport {
    pub gxx: f64,
    pub gyy: f64,
    pub gzz: f64,
    pub gz: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    pub theta_opt: f64,
    pub phi_opt: f64,
}

fn flatten(p: &PointReport) -> SpincorrReport {
    let c = &p.report.coeffs;
    SpincorrReport {
        gxx: p.spin.gxx,
        gyy: p.spin.gyy,
        gzz: p.spin.gzz,
        gz: p.spin.gz_i,
        c1: c.c1,
        c2: c.c2,
        c3: c.c3,
        c4: c.c4,
        c5: c.c5,
        mutual_info: p.report.mutual_info,
        classical: p.report.classical,
        discord: p.report.discord,
        theta_opt: p.report.optimal_angles.theta(),
        phi_opt: p.report.optimal_angles.phi(),
    }
}

fn status_of(e: &Error) -> SpincorrStatus {
    match e {
        Error::InvalidArgument(_) | Error::DomainError { .. } => SpincorrStatus::InvalidArgument,
        Error::NonPhysicalState(_) => SpincorrStatus::NonPhysical,
        _ => SpincorrStatus::NumericalFailure,
    }
}

/// Run a fallible report computation and store the result through `out`.
fn fill(
    out: *mut SpincorrReport,
    compute: impl FnOnce() -> Result<PointReport, Error>,
) -> SpincorrStatus {
    if out.is_null() {
        return SpincorrStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(compute)) {
        Ok(Ok(p)) => {
            unsafe { *out = flatten(&p) };
            SpincorrStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => SpincorrStatus::Panic,
    }
}

/// Correlation report of a bare X-state given its Bloch coefficients.
#[no_mangle]
pub extern "C" fn spincorr_xstate_report(
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    c5: f64,
    out: *mut SpincorrReport,
) -> SpincorrStatus {
    fill(out, || {
        let coeffs = CorrCoeffs::new(c1, c2, c3, c4, c5)?;
        let state = XState::from_coeffs(&coeffs)?;
        Ok(PointReport {
            spin: state.spin_functions(),
            report: quantum_discord(&coeffs)?,
        })
    })
}

/// Transverse-field Ising chain (free-fermion solution) at field `g`.
#[no_mangle]
pub extern "C" fn spincorr_tfim_report(
    g: f64,
    sites: usize,
    out: *mut SpincorrReport,
) -> SpincorrStatus {
    fill(out, || tfim_report(&TfimPoint::new(g, sites)?))
}

/// XXZ ring (exact diagonalization) at anisotropy `delta`.
#[no_mangle]
pub extern "C" fn spincorr_xxz_report(
    delta: f64,
    sites: usize,
    out: *mut SpincorrReport,
) -> SpincorrStatus {
    fill(out, || xxz_report(&XxzPoint::new(delta, sites)?))
}

/// Collective mean-field model at coupling `lambda`; `same_mode` selects a
/// pair within one mode (nonzero) or across two modes (zero).
#[no_mangle]
pub extern "C" fn spincorr_lmg_report(
    lambda: f64,
    same_mode: i32,
    out: *mut SpincorrReport,
) -> SpincorrStatus {
    fill(out, || lmg_report(&LmgPoint::new(lambda, same_mode != 0)?))
}

/// Opaque sweep result; free with `spincorr_sweep_free`.
pub struct SpincorrSweep {
    table: SweepTable,
}

/// Transverse-field Ising sweep over `[from, to]` with `points` grid
/// points. On success `*out` owns the handle.
#[no_mangle]
pub extern "C" fn spincorr_sweep_tfim(
    from: f64,
    to: f64,
    points: usize,
    sites: usize,
    out: *mut *mut SpincorrSweep,
) -> SpincorrStatus {
    if out.is_null() {
        return SpincorrStatus::NullPointer;
    }
    let run = || {
        sweep("tfim", sites, &Grid::new(from, to, points)?, |g| {
            tfim_report(&TfimPoint::new(g, sites)?)
        })
    };
    match catch_unwind(AssertUnwindSafe(run)) {
        Ok(Ok(table)) => {
            let handle = Box::new(SpincorrSweep { table });
            unsafe { *out = Box::into_raw(handle) };
            SpincorrStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => SpincorrStatus::Panic,
    }
}

/// Number of rows in a sweep, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn spincorr_sweep_len(handle: *const SpincorrSweep) -> usize {
    if handle.is_null() {
        return 0;
    }
    unsafe { &*handle }.table.rows.len()
}

/// Copy row `index` out of the sweep.
#[no_mangle]
pub extern "C" fn spincorr_sweep_row(
    handle: *const SpincorrSweep,
    index: usize,
    param: *mut f64,
    out: *mut SpincorrReport,
) -> SpincorrStatus {
    if handle.is_null() || param.is_null() || out.is_null() {
        return SpincorrStatus::NullPointer;
    }
    let table = &unsafe { &*handle }.table;
    match table.rows.get(index) {
        Some(row) => {
            unsafe {
                *param = row.param;
                *out = flatten(&row.point);
            }
            SpincorrStatus::Ok
        }
        None => SpincorrStatus::InvalidArgument,
    }
}

/// Release a sweep handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn spincorr_sweep_free(handle: *mut SpincorrSweep) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}
