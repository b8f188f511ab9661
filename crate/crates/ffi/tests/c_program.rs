//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "weno3.h"

int main(void) {
    Weno3Scheme *s = NULL;
    if (weno3_scheme_parse("limiter:chi1", false, &s) != WENO3_STATUS_OK) return 10;
    double w0 = 0, w1 = 0;
    if (weno3_weights(s, 0.0, 1.0, 2.0, 0.1, &w0, &w1) != WENO3_STATUS_OK) return 11;
    if (w0 != 1.0 / 3.0 || w0 + w1 != 1.0) return 12;

    Weno3RunOptions opts;
    memset(&opts, 0, sizeof opts);
    opts.nx = 40;
    opts.t_final = 0.1;
    Weno3Simulation *sim = NULL;
    if (weno3_simulation_run("advection_sin", s, &opts, &sim) != WENO3_STATUS_OK) return 13;
    double u[40];
    size_t n = 0;
    if (weno3_simulation_copy_field(sim, WENO3_FIELD_U, u, 40, &n) != WENO3_STATUS_OK || n != 40) return 14;

    Weno3Scheme *bad = NULL;
    if (weno3_scheme_parse("limiter:chi5:k=4", false, &bad) != WENO3_STATUS_INVALID_SCHEME) return 15;
    char msg[256];
    if (weno3_last_error_message(msg, sizeof msg, NULL) != WENO3_STATUS_OK || strlen(msg) == 0) return 16;

    weno3_simulation_free(sim);
    weno3_scheme_free(s);
    printf("ok %.6f\n", u[10]);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // <target>/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libweno3_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let exe = dir.path().join("smoke");
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-I")
        .arg(include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
