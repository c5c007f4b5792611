//! Compiles and runs a small C program against the generated header and the
//! shared library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "eliashberg_tc.h"

int main(void) {
    EtcMeasure *m = NULL;
    if (etc_measure_from_json("{\"type\":\"einstein\",\"omega\":1}", &m) != ETC_STATUS_OK) return 10;
    double tc = 0.0;
    EtcTcStatus st;
    if (etc_tc_n(m, 2.0, 1, &tc, &st) != ETC_STATUS_OK) return 11;
    if (st != ETC_TC_STATUS_PROVEN || fabs(tc - 0.15915494309189535) > 1e-14) return 12;
    if (etc_measure_from_json("{", &m) != ETC_STATUS_VALIDATION) return 13;
    if (etc_last_error_message() == NULL) return 14;
    etc_measure_free(m);
    printf("%.12g\n", tc);
    return 0;
}
"#;

fn target_profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .map(String::from)
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/eliashberg_tc.h")).unwrap();
    for name in [
        "etc_measure_from_json",
        "etc_measure_free",
        "etc_k_numeric",
        "etc_k_closed_form",
        "etc_tc_n",
        "etc_tc_converged",
        "etc_report_free",
        "etc_last_error_message",
        "ETC_TC_STATUS_UNDEFINED",
        "typedef struct EtcMeasure EtcMeasure;",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler on PATH, skipping");
        return;
    };
    let lib_dir = target_profile_dir();
    if !lib_dir.join("libeliashberg_tc_ffi.so").exists() && !lib_dir.join("libeliashberg_tc_ffi.dylib").exists() {
        eprintln!("shared library not built in {}, skipping", lib_dir.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg("-L")
        .arg(&lib_dir)
        .arg("-leliashberg_tc_ffi")
        .arg("-lm")
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).env("LD_LIBRARY_PATH", &lib_dir).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0.159154943092");
}
