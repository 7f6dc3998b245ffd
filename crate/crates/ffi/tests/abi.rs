use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use homalg_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(homalg_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    homalg_string_free(s);
    out
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> *mut HomalgMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { homalg_matrix_new(rows, cols, entries.as_ptr(), &mut m) }, HomalgStatus::Ok);
    m
}

fn entries(m: *const HomalgMatrix) -> Vec<Vec<i64>> {
    let (r, c) = unsafe { (homalg_matrix_rows(m), homalg_matrix_cols(m)) };
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let mut v = 0;
                    assert_eq!(unsafe { homalg_matrix_get(m, i, j, &mut v) }, HomalgStatus::Ok);
                    v
                })
                .collect()
        })
        .collect()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

#[test]
fn snf_through_handles() {
    let a = matrix(2, 3, &[2, 4, 4, -6, 6, 12]);
    let (mut u, mut d, mut v) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { homalg_snf(a, &mut u, &mut d, &mut v) }, HomalgStatus::Ok);
    let (ea, eu, ed, ev) = (entries(a), entries(u), entries(d), entries(v));
    assert_eq!(mul(&mul(&eu, &ea), &ev), ed);
    assert_eq!(ed, vec![vec![2, 0, 0], vec![0, 6, 0]]);

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { homalg_matrix_cokernel(a, &mut g) }, HomalgStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { homalg_group_to_string(g, &mut s) }, HomalgStatus::Ok);
    assert_eq!(unsafe { take(s) }, "ℤ/2 ⊕ ℤ/6");
    unsafe {
        for m in [a, u, d, v] {
            homalg_matrix_free(m);
        }
        homalg_group_free(g);
    }
}

#[test]
fn matrix_errors() {
    let a = matrix(1, 1, &[7]);
    let mut v = 0;
    assert_eq!(unsafe { homalg_matrix_get(a, 1, 0, &mut v) }, HomalgStatus::OutOfRange);
    assert!(last_error().contains("outside"));
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { homalg_matrix_new(1, 1, ptr::null(), &mut m) }, HomalgStatus::NullArgument);
    let big = CString::new(r#"{"rows":1,"cols":1,"entries":["100000000000000000000"]}"#).unwrap();
    assert_eq!(unsafe { homalg_matrix_from_json(big.as_ptr(), &mut m) }, HomalgStatus::Ok);
    assert_eq!(unsafe { homalg_matrix_get(m, 0, 0, &mut v) }, HomalgStatus::Overflow);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { homalg_matrix_to_json(m, &mut json) }, HomalgStatus::Ok);
    assert!(unsafe { take(json) }.contains("100000000000000000000"));
    unsafe {
        homalg_matrix_free(a);
        homalg_matrix_free(m);
    }
}

#[test]
fn complexes_and_groups() {
    let bad = CString::new(r#"{"lowest_degree":0,"levels":[1,1,1],"differentials":[{"rows":1,"cols":1,"entries":["1"]},{"rows":1,"cols":1,"entries":["1"]}]}"#).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { homalg_complex_from_json(bad.as_ptr(), &mut c) }, HomalgStatus::NotAComplex);

    let moore =
        CString::new(r#"{"lowest_degree":0,"levels":[1,1],"differentials":[{"rows":1,"cols":1,"entries":["2"]}]}"#).unwrap();
    assert_eq!(unsafe { homalg_complex_from_json(moore.as_ptr(), &mut c) }, HomalgStatus::Ok);
    let mut h0 = ptr::null_mut();
    assert_eq!(unsafe { homalg_complex_homology(c, 0, &mut h0) }, HomalgStatus::Ok);
    let mut d = 0;
    assert_eq!(unsafe { (homalg_group_free_rank(h0), homalg_group_num_invariant_factors(h0)) }, (0, 1));
    assert_eq!(unsafe { homalg_group_invariant_factor(h0, 0, &mut d) }, HomalgStatus::Ok);
    assert_eq!(d, 2);
    assert_eq!(unsafe { homalg_group_invariant_factor(h0, 1, &mut d) }, HomalgStatus::OutOfRange);

    // Ext^1(ℤ/2, ℤ/2) = ℤ/2 sits in hyperExt degree 1
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { homalg_hyper_ext(c, c, 1, &mut e) }, HomalgStatus::Ok);
    assert_eq!(unsafe { homalg_group_num_invariant_factors(e) }, 1);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { homalg_complex_homology_json(c, &mut json) }, HomalgStatus::Ok);
    assert!(unsafe { take(json) }.contains("\"2\""));

    let mut g = ptr::null_mut();
    assert_eq!(unsafe { homalg_group_new(1, [2i64, 3].as_ptr(), 2, &mut g) }, HomalgStatus::Invalid);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { homalg_group_new(1, [2i64, 6].as_ptr(), 2, &mut g) }, HomalgStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { homalg_group_to_json(g, &mut s) }, HomalgStatus::Ok);
    let text = unsafe { take(s) };
    let round = CString::new(text).unwrap();
    let mut g2 = ptr::null_mut();
    assert_eq!(unsafe { homalg_group_from_json(round.as_ptr(), &mut g2) }, HomalgStatus::Ok);
    assert_eq!(unsafe { homalg_group_free_rank(g2) }, 1);
    unsafe {
        homalg_complex_free(c);
        for x in [h0, e, g, g2] {
            homalg_group_free(x);
        }
    }
}

#[test]
fn json_entry_points() {
    let sphere = CString::new(r#"{"0":{"free_rank":1,"invariant_factors":[]}}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { homalg_dualizing_json(sphere.as_ptr(), &mut out) }, HomalgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["values"].as_object().unwrap().keys().collect::<Vec<_>>(), vec!["-1"]);

    let field = CString::new(r#"{"min_poly":["5","0","1"]}"#).unwrap();
    assert_eq!(unsafe { homalg_class_group_json(field.as_ptr(), 0, &mut out) }, HomalgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["group"]["invariant_factors"], serde_json::json!(["2"]));
    assert_eq!(unsafe { homalg_class_group_json(field.as_ptr(), 1, &mut out) }, HomalgStatus::Invalid);

    let invalid_utf8 = [0xffu8, 0];
    assert_eq!(unsafe { homalg_dualizing_json(invalid_utf8.as_ptr().cast(), &mut out) }, HomalgStatus::InvalidUtf8);
}

fn exported_symbols() -> Vec<String> {
    let src = include_str!("../src/lib.rs");
    src.lines()
        .filter_map(|l| {
            l.trim().strip_prefix("pub unsafe extern \"C\" fn ").or_else(|| l.trim().strip_prefix("pub extern \"C\" fn "))
        })
        .map(|rest| rest.split('(').next().unwrap().to_string())
        .collect()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/homalg.h")).unwrap();
    let symbols = exported_symbols();
    assert!(symbols.len() > 20);
    for s in &symbols {
        assert!(header.contains(&format!("{s}(")), "{s} missing from header");
    }
    assert!(header.contains("HOMALG_STATUS_NOT_A_COMPLEX = 5"));
}

#[test]
fn c_program_links_against_the_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // test builds refresh the library next to the test binary, not in the uplifted directory
    let lib_dir = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    assert!(lib_dir.join("libhomalg_ffi.so").exists() || lib_dir.join("libhomalg_ffi.dylib").exists(), "{lib_dir:?}");
    let dir = tempfile::tempdir().unwrap();
    let program = dir.path().join("snf.c");
    std::fs::write(
        &program,
        r#"#include <stdio.h>
#include "homalg.h"

int main(void) {
    int64_t entries[4] = {2, 4, 6, 8};
    HomalgMatrix *a = NULL, *u = NULL, *d = NULL, *v = NULL;
    if (homalg_matrix_new(2, 2, entries, &a) != HOMALG_STATUS_OK) return 10;
    if (homalg_snf(a, &u, &d, &v) != HOMALG_STATUS_OK) return 11;
    int64_t d0 = 0, d1 = 0;
    homalg_matrix_get(d, 0, 0, &d0);
    homalg_matrix_get(d, 1, 1, &d1);
    HomalgMatrix *bad = NULL;
    HomalgStatus s = homalg_matrix_from_json("{\"rows\":1}", &bad);
    printf("%lld %lld %d %s\n", (long long)d0, (long long)d1, (int)s, homalg_last_error()[0] ? "msg" : "none");
    homalg_matrix_free(a);
    homalg_matrix_free(u);
    homalg_matrix_free(d);
    homalg_matrix_free(v);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("snf");
    let cc = Command::new("cc")
        .arg(&program)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&lib_dir)
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-lhomalg_ffi")
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("a C compiler");
    assert!(cc.status.success(), "{}", String::from_utf8_lossy(&cc.stderr));
    // cargo's library path may list an older copy ahead of the rpath
    let run = Command::new(&exe).env_remove("LD_LIBRARY_PATH").output().unwrap();
    assert!(run.status.success(), "{:?} {}", run.status, String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "2 4 3 msg\n");
}
