//! Exercises the C ABI through the exported symbols, including error and
//! null-pointer paths and sweep-handle lifecycle.

use spincorr_ffi::*;

fn blank() -> SpincorrReport {
    SpincorrReport {
        gxx: f64::NAN,
        gyy: f64::NAN,
        gzz: f64::NAN,
        gz: f64::NAN,
        c1: f64::NAN,
        c2: f64::NAN,
        c3: f64::NAN,
        c4: f64::NAN,
        c5: f64::NAN,
        mutual_info: f64::NAN,
        classical: f64::NAN,
        discord: f64::NAN,
        theta_opt: f64::NAN,
        phi_opt: f64::NAN,
    }
}

#[test]
fn xstate_classical_doublet() {
    let mut r = blank();
    let status = spincorr_xstate_report(1.0, 0.0, 0.0, 0.0, 0.0, &mut r);
    assert_eq!(status, SpincorrStatus::Ok);
    assert!((r.mutual_info - 1.0).abs() < 1e-12);
    assert!((r.classical - 1.0).abs() < 1e-12);
    assert!(r.discord.abs() < 1e-12);
}

#[test]
fn tfim_matches_native_call() {
    let mut r = blank();
    assert_eq!(spincorr_tfim_report(1.0, 64, &mut r), SpincorrStatus::Ok);
    let native = spincorr::tfim::tfim_report(
        &spincorr::tfim::TfimPoint::new(1.0, 64).unwrap(),
    )
    .unwrap();
    assert_eq!(r.classical, native.report.classical);
    assert_eq!(r.discord, native.report.discord);
    assert_eq!(r.gxx, native.spin.gxx);
}

#[test]
fn xxz_and_lmg_reports() {
    let mut r = blank();
    assert_eq!(spincorr_xxz_report(2.0, 8, &mut r), SpincorrStatus::Ok);
    assert!((r.classical - 1.0).abs() < 1e-10);

    assert_eq!(spincorr_lmg_report(0.5, 1, &mut r), SpincorrStatus::Ok);
    assert!((r.classical - r.discord).abs() < 1e-10, "pure-state pair");
    assert_eq!(spincorr_lmg_report(0.5, 0, &mut r), SpincorrStatus::Ok);
    assert!(r.mutual_info.abs() < 1e-12, "different modes uncorrelated");
}

#[test]
fn error_statuses() {
    let mut r = blank();
    // domain error: negative field
    assert_eq!(
        spincorr_tfim_report(-1.0, 64, &mut r),
        SpincorrStatus::InvalidArgument
    );
    // non-physical coefficient combination
    assert_eq!(
        spincorr_xstate_report(0.9, 0.0, 0.9, 0.0, 0.0, &mut r),
        SpincorrStatus::NonPhysical
    );
    // null output pointer
    assert_eq!(
        spincorr_tfim_report(1.0, 64, std::ptr::null_mut()),
        SpincorrStatus::NullPointer
    );
    // output untouched on failure
    assert!(r.classical.is_nan());
}

#[test]
fn sweep_lifecycle() {
    let mut handle: *mut SpincorrSweep = std::ptr::null_mut();
    let status = spincorr_sweep_tfim(0.0, 2.0, 11, 64, &mut handle);
    assert_eq!(status, SpincorrStatus::Ok);
    assert!(!handle.is_null());
    assert_eq!(spincorr_sweep_len(handle), 11);

    let mut param = f64::NAN;
    let mut r = blank();
    assert_eq!(
        spincorr_sweep_row(handle, 0, &mut param, &mut r),
        SpincorrStatus::Ok
    );
    assert_eq!(param, 0.0);
    assert!((r.classical - 1.0).abs() < 1e-10);
    assert_eq!(
        spincorr_sweep_row(handle, 11, &mut param, &mut r),
        SpincorrStatus::InvalidArgument
    );
    spincorr_sweep_free(handle);
    // null handle paths are no-ops
    assert_eq!(spincorr_sweep_len(std::ptr::null()), 0);
    spincorr_sweep_free(std::ptr::null_mut());
}

#[test]
fn sweep_error_status() {
    let mut handle: *mut SpincorrSweep = std::ptr::null_mut();
    assert_eq!(
        spincorr_sweep_tfim(2.0, 0.0, 11, 64, &mut handle),
        SpincorrStatus::InvalidArgument
    );
    assert!(handle.is_null());
    assert_eq!(
        spincorr_sweep_tfim(0.0, 2.0, 11, 64, std::ptr::null_mut()),
        SpincorrStatus::NullPointer
    );
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/spincorr.h");
    let text = std::fs::read_to_string(header).expect("header generated at build time");
    for symbol in [
        "spincorr_xstate_report",
        "spincorr_tfim_report",
        "spincorr_xxz_report",
        "spincorr_lmg_report",
        "spincorr_sweep_tfim",
        "spincorr_sweep_len",
        "spincorr_sweep_row",
        "spincorr_sweep_free",
        "typedef struct SpincorrSweep SpincorrSweep",
        "SpincorrStatus",
    ] {
        assert!(text.contains(symbol), "missing `{symbol}` in header");
    }
}
