use std::ffi::{CStr, CString};
use std::ptr;

use eliashberg_tc_ffi::*;

fn einstein(omega: f64) -> *mut EtcMeasure {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { etc_measure_einstein(omega, &mut m) }, EtcStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let p = etc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn k_bounds_at_unit_varpi() {
    let t = 0.5;
    let m = einstein(2.0 * std::f64::consts::PI * t);
    let mut k = [0.0; 4];
    for n in 1..=4 {
        assert_eq!(unsafe { etc_k_closed_form(m, t, n, &mut k[n - 1]) }, EtcStatus::Ok);
    }
    assert_eq!(k[0], 0.5);
    assert!((k[1] - 0.668_624_070_3).abs() < 1e-10);
    let (mut num, mut star, mut sharp) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(etc_k_numeric(m, t, 4, &mut num), EtcStatus::Ok);
        assert_eq!(etc_k_star(m, t, &mut star), EtcStatus::Ok);
        assert_eq!(etc_k_sharp(m, t, &mut sharp), EtcStatus::Ok);
    }
    assert!((num - k[3]).abs() < 1e-12 * num);
    assert!(k[3] < star && star <= sharp);
    unsafe { etc_measure_free(m) };
}

#[test]
fn tc_entries_and_undefined() {
    let m = einstein(1.0);
    let (mut v, mut s) = (0.0, EtcTcStatus::Undefined);
    unsafe {
        assert_eq!(etc_tc_n(m, 2.0, 1, &mut v, &mut s), EtcStatus::Ok);
        assert!((v - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert_eq!(s, EtcTcStatus::Proven);
        assert_eq!(etc_tc_n(m, 0.5, 2, &mut v, &mut s), EtcStatus::Ok);
        assert!(v.is_nan());
        assert_eq!(s, EtcTcStatus::Undefined);
        assert_eq!(etc_tc_flat(m, 0.5, &mut v), EtcStatus::Ok);
        assert!(v.is_nan());
        etc_measure_free(m);
    }
}

#[test]
fn converged_report_is_bracketed() {
    let m = einstein(1.0);
    let mut r = ptr::null_mut();
    let (mut flat, mut sharp, mut tc, mut n) = (0.0, 0.0, 0.0, 0usize);
    unsafe {
        assert_eq!(etc_tc_converged(m, 10.0, 1e-6, &mut r), EtcStatus::Ok);
        assert_eq!(etc_report_converged(r, &mut tc, &mut n), EtcStatus::Ok);
        etc_tc_flat(m, 10.0, &mut flat);
        etc_tc_sharp(m, 10.0, &mut sharp);
        assert!(flat < tc && tc < sharp, "{flat} {tc} {sharp}");
        assert!(n >= 4);

        let len = etc_report_ladder_len(r);
        let mut prev = 0.0;
        for i in 0..len {
            let (mut order, mut v, mut s) = (0, 0.0, EtcTcStatus::Undefined);
            assert_eq!(etc_report_ladder_entry(r, i, &mut order, &mut v, &mut s), EtcStatus::Ok);
            assert!(v > prev);
            prev = v;
        }
        let (mut order, mut v, mut s) = (0, 0.0, EtcTcStatus::Undefined);
        assert_eq!(etc_report_ladder_entry(r, len, &mut order, &mut v, &mut s), EtcStatus::Validation);

        let mut json = ptr::null_mut();
        assert_eq!(etc_report_to_json(r, &mut json), EtcStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        etc_string_free(json);
        assert!(text.contains("\"converged_tc\""));
        etc_report_free(r);
        etc_measure_free(m);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut m = ptr::null_mut();
    let bad = CString::new(r#"{"type":"einstein","omega":-1}"#).unwrap();
    assert_eq!(unsafe { etc_measure_from_json(bad.as_ptr(), &mut m) }, EtcStatus::Validation);
    assert!(m.is_null());
    assert!(last_error().contains("omega"), "{}", last_error());

    let mut out = 0.0;
    assert_eq!(unsafe { etc_k_star(ptr::null(), 1.0, &mut out) }, EtcStatus::NullPointer);
    assert!(last_error().contains("measure"));

    let path = CString::new("/nonexistent/measure.json").unwrap();
    assert_eq!(unsafe { etc_measure_from_file(path.as_ptr(), &mut m) }, EtcStatus::Io);

    assert_eq!(unsafe { etc_gamma_top(0.0, 4, &mut out) }, EtcStatus::Validation);
}

#[test]
fn discrete_measure_moments() {
    let w = [0.5, 0.5];
    let o = [1.0, 2.0];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(etc_measure_discrete(w.as_ptr(), o.as_ptr(), 2, &mut m), EtcStatus::Ok);
        assert_eq!(etc_measure_omega_bar(m), 2.0);
        assert!((etc_measure_moment(m, 2) - 2.5).abs() < 1e-15);
        etc_measure_free(m);
        assert!(etc_measure_moment(ptr::null(), 2).is_nan());
        etc_measure_free(ptr::null_mut());
    }
}

#[test]
fn gamma_top_gamma2_constant() {
    let mut g = 0.0;
    assert_eq!(unsafe { etc_gamma_top(2.0, 256, &mut g) }, EtcStatus::Ok);
    assert!((g.sqrt() / (2.0 * std::f64::consts::PI) - 0.182_726_247_7).abs() < 1e-9);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(etc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
