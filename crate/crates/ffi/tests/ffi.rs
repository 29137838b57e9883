use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use convex_homothety_ffi::*;

fn last_error() -> String {
    let p = ch_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn polytope(dim: usize, coords: &[f64]) -> *mut ChPolytope {
    let mut out = ptr::null_mut();
    let status = unsafe { ch_polytope_new(dim, coords.as_ptr(), coords.len() / dim, &mut out) };
    assert_eq!(status, ChStatus::Ok);
    out
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ch_string_free(s) };
    text
}

const CUBE: [f64; 24] = [0., 0., 0., 0., 0., 1., 0., 1., 0., 0., 1., 1., 1., 0., 0., 1., 0., 1., 1., 1., 0., 1., 1., 1.];

#[test]
fn polytope_lifecycle() {
    let p = polytope(2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.25, 0.25]);
    unsafe {
        assert_eq!(ch_polytope_dim(p), 2);
        assert_eq!(ch_polytope_vertex_count(p), 3);
        let mut buf = [0.0; 6];
        assert_eq!(ch_polytope_vertices(p, buf.as_mut_ptr(), 6), ChStatus::Ok);
        assert_eq!(buf, [0.0, 0.0, 0.0, 1.0, 1.0, 0.0]);
        assert_eq!(ch_polytope_vertices(p, buf.as_mut_ptr(), 5), ChStatus::BufferTooSmall);
        assert!(last_error().contains("need 6"));

        let mut s = ptr::null_mut();
        assert_eq!(ch_polytope_to_json(p, &mut s), ChStatus::Ok);
        let text = take_string(s);
        assert_eq!(text, "{\"dim\":2,\"vertices\":[[0.0,0.0],[0.0,1.0],[1.0,0.0]]}\n");

        let c = CString::new(text.clone()).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(ch_polytope_from_json(c.as_ptr(), &mut q), ChStatus::Ok);
        let mut s = ptr::null_mut();
        ch_polytope_to_json(q, &mut s);
        assert_eq!(take_string(s), text);
        ch_polytope_free(q);
        ch_polytope_free(p);
        ch_polytope_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(ch_polytope_new(2, ptr::null(), 3, &mut out), ChStatus::NullPointer);
        assert_eq!(ch_polytope_new(2, [0.0; 0].as_ptr(), 0, &mut out), ChStatus::EmptyInput);
        assert_eq!(ch_polytope_new(0, [0.0].as_ptr(), 1, &mut out), ChStatus::InvalidArgument);
        let bad = CString::new(r#"{"vertices":[[0,0]]}"#).unwrap();
        assert_eq!(ch_polytope_from_json(bad.as_ptr(), &mut out), ChStatus::Parse);
        assert!(last_error().contains("dim"));
        assert_eq!(ch_polytope_dim(ptr::null()), 0);

        let mut f = ptr::null_mut();
        let skew = [1.0, 0.0, 1.0, 1.0];
        assert_eq!(ch_frame_new(2, skew.as_ptr(), 2, &mut f), ChStatus::NotOrthonormal);
        assert_eq!(ch_frame_span(2, [1.0, 1.0, 2.0, 2.0].as_ptr(), 2, &mut f), ChStatus::DependentInput);

        let pt = polytope(2, &[1.0, 1.0]);
        let mut n = 0usize;
        assert_eq!(ch_exposed_diameter_count(pt, &mut n), ChStatus::SingletonInput);
        let sq = polytope(2, &[0., 0., 1., 0., 0., 1., 1., 1.]);
        let cube = polytope(3, &CUBE);
        let mut sum = ptr::null_mut();
        assert_eq!(ch_polytope_minkowski(sq, cube, &mut sum), ChStatus::DimensionMismatch);
        // success clears the message
        assert_eq!(ch_polytope_vertex_count(sq), 4);
        assert_eq!(ch_exposed_diameter_count(sq, &mut n), ChStatus::Ok);
        assert!(ch_last_error_message().is_null());
        for p in [pt, sq, cube] {
            ch_polytope_free(p);
        }
    }
}

#[test]
fn operations() {
    unsafe {
        let cube = polytope(3, &CUBE);
        let mut neg = ptr::null_mut();
        assert_eq!(ch_polytope_negate(cube, &mut neg), ChStatus::Ok);
        let mut sum = ptr::null_mut();
        assert_eq!(ch_polytope_minkowski(cube, neg, &mut sum), ChStatus::Ok);
        assert_eq!(ch_polytope_vertex_count(sum), 8);

        let (mut found, mut lambda, mut z) = (false, 0.0, [0.0; 3]);
        assert_eq!(ch_detect_homothety(sum, cube, 1e-9, &mut found, &mut lambda, z.as_mut_ptr()), ChStatus::Ok);
        assert!(found);
        assert_eq!(lambda, 2.0);
        assert_eq!(z, [-1.0, -1.0, -1.0]);

        let mut value = 0.0;
        let mut face = 0usize;
        assert_eq!(ch_polytope_support(cube, [1.0, 0.0, 0.0].as_ptr(), 3, &mut value, &mut face), ChStatus::Ok);
        assert_eq!((value, face), (1.0, 4));
        assert_eq!(ch_polytope_support(cube, [1.0, 0.0].as_ptr(), 2, &mut value, &mut face), ChStatus::DimensionMismatch);

        let mut f = ptr::null_mut();
        assert_eq!(ch_frame_new(3, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0].as_ptr(), 2, &mut f), ChStatus::Ok);
        let mut sq = ptr::null_mut();
        assert_eq!(ch_polytope_project(cube, f, &mut sq), ChStatus::Ok);
        assert_eq!((ch_polytope_dim(sq), ch_polytope_vertex_count(sq)), (2, 4));

        let mut count = 0usize;
        assert_eq!(ch_antipodal_count(cube, &mut count), ChStatus::Ok);
        assert_eq!(count, 8);
        assert_eq!(ch_exposed_diameter_count(cube, &mut count), ChStatus::Ok);
        assert_eq!(count, 4);

        let mut r = ptr::null_mut();
        assert_eq!(ch_polytope_random(4, 10, 3, &mut r), ChStatus::Ok);
        assert_eq!(ch_polytope_dim(r), 4);

        ch_frame_free(f);
        for p in [cube, neg, sum, sq, r] {
            ch_polytope_free(p);
        }
    }
}

#[test]
fn verify_reports() {
    unsafe {
        let cube = polytope(3, &CUBE);
        let oct = polytope(3, &[1., 0., 0., -1., 0., 0., 0., 1., 0., 0., -1., 0., 0., 0., 1., 0., 0., -1.]);
        let (mut passed, mut json) = (false, ptr::null_mut());

        assert_eq!(ch_verify_theorem1(cube, oct, 2, 20, 0, &mut passed, &mut json), ChStatus::Ok);
        assert!(passed);
        let first = take_string(json);
        assert!(first.contains("\"existential\": true"));
        ch_verify_theorem1(cube, oct, 2, 20, 0, ptr::null_mut(), &mut json);
        assert_eq!(take_string(json), first);
        assert_eq!(ch_verify_theorem1(cube, oct, 3, 20, 0, &mut passed, &mut json), ChStatus::InvalidArgument);

        let mut s = ptr::null_mut();
        assert_eq!(ch_frame_random(3, 0, 1, &mut s), ChStatus::InvalidArgument);
        assert_eq!(ch_frame_span(3, [0.0, 0.0, 1.0].as_ptr(), 1, &mut s), ChStatus::Ok);
        let mut big = ptr::null_mut();
        ch_polytope_minkowski(cube, cube, &mut big);
        assert_eq!(ch_verify_corollary1(cube, big, s, 2, 10, 1, &mut passed, &mut json), ChStatus::InvalidArgument);
        ch_frame_free(s);

        type Check = unsafe extern "C" fn(*const ChPolytope, *mut bool, *mut *mut std::ffi::c_char) -> ChStatus;
        for check in [ch_verify_theorem2 as Check, ch_verify_no_parallel_diameters] {
            passed = false;
            assert_eq!(check(oct, &mut passed, &mut json), ChStatus::Ok);
            assert!(passed);
            ch_string_free(json);
        }
        assert_eq!(ch_verify_diameter_transfer(cube, big, &mut passed, &mut json), ChStatus::Ok);
        assert!(passed);
        ch_string_free(json);

        passed = false;
        assert_eq!(ch_verify_example1(10, 2, &mut passed, &mut json), ChStatus::Ok);
        assert!(passed);
        assert!(take_string(json).contains("\"check_name\": \"example1\""));

        for p in [cube, oct, big] {
            ch_polytope_free(p);
        }
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "convex_homothety.h"

int main(void) {
    const double pts[] = {0, 0, 2, 0, 0, 2, 2, 2, 1, 1};
    ChPolytope *p = NULL;
    if (ch_polytope_new(2, pts, 5, &p) != CH_STATUS_OK) return 1;
    if (ch_polytope_vertex_count(p) != 4) return 2;
    ChPolytope *q = NULL;
    if (ch_polytope_negate(p, &q) != CH_STATUS_OK) return 3;
    bool found = false;
    double lambda = 0, z[2];
    if (ch_detect_homothety(p, q, 1e-9, &found, &lambda, z) != CH_STATUS_OK || !found) return 4;
    char *json = NULL;
    if (ch_polytope_to_json(p, &json) != CH_STATUS_OK) return 5;
    printf("%s", json);
    ch_string_free(json);
    if (ch_polytope_new(2, NULL, 3, &q) != CH_STATUS_NULL_POINTER) return 6;
    if (ch_last_error_message() == NULL) return 7;
    ch_polytope_free(p);
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let include = crate_dir().join("include");
    assert!(include.join("convex_homothety.h").exists());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("ffi_smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let Ok(status) = Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"]).arg(&include).arg(&src).status() else {
        eprintln!("no C compiler available; header not compiled");
        return;
    };
    assert!(status.success(), "header does not compile as C99");

    // target/<profile>/deps/<test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libconvex_homothety_ffi.a");
    if !lib.exists() {
        eprintln!("static library not at {}; link step not run", lib.display());
        return;
    }
    let exe = tmp.join("ffi_smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "linking the static library failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"dim\":2,\"vertices\":[[0.0,0.0],[0.0,2.0],[2.0,0.0],[2.0,2.0]]}\n");
}
