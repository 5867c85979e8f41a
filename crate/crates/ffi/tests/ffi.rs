use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sdom_ffi::*;

fn last_error() -> String {
    let p = sdom_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { sdom_string_free(p) };
    s
}

#[test]
fn vertex_set_lifecycle() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(sdom_build_d(3, 4, false, &mut d), SdomStatus::Ok);
        let mut len = 0usize;
        assert_eq!(sdom_vertex_set_len(d, &mut len), SdomStatus::Ok);
        assert_eq!(len, 21);

        let mut buf = [0u32; 4];
        assert_eq!(
            sdom_vertex_set_word(d, 0, buf.as_mut_ptr(), 4),
            SdomStatus::Ok
        );
        assert_eq!(buf, [1, 1, 1, 1]);
        assert_eq!(
            sdom_vertex_set_word(d, 0, buf.as_mut_ptr(), 3),
            SdomStatus::BufferTooSmall
        );
        assert_eq!(
            sdom_vertex_set_word(d, 21, buf.as_mut_ptr(), 4),
            SdomStatus::InvalidArgument
        );

        let mut hit = false;
        assert_eq!(
            sdom_vertex_set_contains(d, [1, 1, 1, 1].as_ptr(), &mut hit),
            SdomStatus::Ok
        );
        assert!(hit);
        assert_eq!(
            sdom_vertex_set_contains(d, [2, 2, 2, 2].as_ptr(), &mut hit),
            SdomStatus::Ok
        );
        assert!(!hit);
        assert_eq!(
            sdom_vertex_set_contains(d, [4, 1, 1, 1].as_ptr(), &mut hit),
            SdomStatus::InvalidArgument
        );

        let mut ok = false;
        assert_eq!(sdom_vertex_set_is_dominating(d, &mut ok), SdomStatus::Ok);
        assert!(ok);

        let mut json = ptr::null_mut();
        assert_eq!(sdom_vertex_set_to_json(d, &mut json), SdomStatus::Ok);
        let json = take_string(json);
        assert!(json.starts_with(r#"{"kind":"D","members":["1.1.1.1","#));
        sdom_vertex_set_free(d);

        let mut s = ptr::null_mut();
        assert_eq!(sdom_build_d(3, 4, true, &mut s), SdomStatus::Ok);
        assert_eq!(sdom_vertex_set_len(s, &mut len), SdomStatus::Ok);
        assert_eq!(len, 20);
        let mut json = ptr::null_mut();
        assert_eq!(sdom_vertex_set_to_json(s, &mut json), SdomStatus::Ok);
        assert!(take_string(json).starts_with(r#"{"kind":"D_star""#));
        sdom_vertex_set_free(s);
    }
}

#[test]
fn labelings() {
    unsafe {
        for (mode, weight) in [(SDOM_MODE_ROMAN, 7u64), (SDOM_MODE_DOUBLE_ROMAN, 11)] {
            let mut f = ptr::null_mut();
            assert_eq!(sdom_labeling_from_d(4, 2, mode, &mut f), SdomStatus::Ok);
            let mut w = 0;
            assert_eq!(sdom_labeling_weight(f, &mut w), SdomStatus::Ok);
            assert_eq!(w, weight);
            let mut ok = false;
            assert_eq!(sdom_labeling_is_valid(f, &mut ok), SdomStatus::Ok);
            assert!(ok);
            let mut v = 0u8;
            assert_eq!(
                sdom_labeling_get(f, [2, 1].as_ptr(), &mut v),
                SdomStatus::Ok
            );
            assert!(v >= 2);
            let mut json = ptr::null_mut();
            assert_eq!(sdom_labeling_to_json(f, &mut json), SdomStatus::Ok);
            assert!(take_string(json).contains(&format!("\"weight\":{weight}")));
            sdom_labeling_free(f);
        }
        let mut f = ptr::null_mut();
        assert_eq!(
            sdom_labeling_from_d(4, 2, 9, &mut f),
            SdomStatus::InvalidArgument
        );
        assert!(f.is_null());
    }
}

#[test]
fn numbers() {
    unsafe {
        let mut v = 0u64;
        assert_eq!(sdom_vertex_count(3, 4, &mut v), SdomStatus::Ok);
        assert_eq!(v, 81);
        assert_eq!(
            sdom_formula(3, 4, SDOM_VARIANT_PLAIN, &mut v),
            SdomStatus::Ok
        );
        assert_eq!(v, 21);
        assert_eq!(
            sdom_formula(4, 2, SDOM_VARIANT_ROMAN, &mut v),
            SdomStatus::Ok
        );
        assert_eq!(v, 7);
        assert_eq!(
            sdom_formula(2, 3, SDOM_VARIANT_DOUBLE_ROMAN, &mut v),
            SdomStatus::Ok
        );
        assert_eq!(v, 9);
        assert_eq!(sdom_formula(2, 3, 3, &mut v), SdomStatus::InvalidArgument);
        assert_eq!(
            sdom_formula(10, 200, SDOM_VARIANT_PLAIN, &mut v),
            SdomStatus::Overflow
        );

        assert_eq!(
            sdom_exact(3, 2, SDOM_VARIANT_DOUBLE_ROMAN, false, &mut v),
            SdomStatus::Ok
        );
        assert_eq!(v, 8);
        assert_eq!(
            sdom_exact(3, 2, SDOM_VARIANT_DOUBLE_ROMAN, true, &mut v),
            SdomStatus::Ok
        );
        assert_eq!(v, 8);
        assert_eq!(
            sdom_exact(5, 4, SDOM_VARIANT_PLAIN, false, &mut v),
            SdomStatus::Capacity
        );
        assert!(last_error().contains("capacity"));
        assert_eq!(
            sdom_exact(3, 2, SDOM_VARIANT_ROMAN, true, &mut v),
            SdomStatus::InvalidArgument
        );

        let mut adj = false;
        assert_eq!(
            sdom_are_adjacent(2, 3, [1, 2, 2].as_ptr(), [2, 1, 1].as_ptr(), &mut adj),
            SdomStatus::Ok
        );
        assert!(adj);
        assert_eq!(
            sdom_are_adjacent(3, 2, [1, 2].as_ptr(), [2, 3].as_ptr(), &mut adj),
            SdomStatus::Ok
        );
        assert!(!adj);
    }
}

#[test]
fn errors_and_null_pointers() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(
            sdom_build_d(1, 3, false, &mut d),
            SdomStatus::InvalidArgument
        );
        assert!(last_error().contains("invalid parameters"));
        assert_eq!(
            sdom_build_d(2, 3, false, ptr::null_mut()),
            SdomStatus::NullPointer
        );
        assert_eq!(
            sdom_vertex_set_len(ptr::null(), &mut 0),
            SdomStatus::NullPointer
        );
        assert_eq!(
            sdom_labeling_weight(ptr::null(), &mut 0),
            SdomStatus::NullPointer
        );
        assert_eq!(
            sdom_are_adjacent(2, 2, ptr::null(), [1, 1].as_ptr(), &mut false),
            SdomStatus::NullPointer
        );
        sdom_vertex_set_free(ptr::null_mut());
        sdom_labeling_free(ptr::null_mut());
        sdom_string_free(ptr::null_mut());
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("sdom.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for symbol in [
        "typedef struct SdomVertexSet SdomVertexSet;",
        "typedef struct SdomLabeling SdomLabeling;",
        "SDOM_STATUS_OK = 0",
        "SDOM_STATUS_CAPACITY = 3",
        "#define SDOM_VARIANT_DOUBLE_ROMAN 2",
        "sdom_build_d(",
        "sdom_vertex_set_len(",
        "sdom_vertex_set_word(",
        "sdom_vertex_set_contains(",
        "sdom_vertex_set_is_dominating(",
        "sdom_vertex_set_to_json(",
        "sdom_vertex_set_free(",
        "sdom_labeling_from_d(",
        "sdom_labeling_weight(",
        "sdom_labeling_get(",
        "sdom_labeling_is_valid(",
        "sdom_labeling_to_json(",
        "sdom_labeling_free(",
        "sdom_formula(",
        "sdom_exact(",
        "sdom_vertex_count(",
        "sdom_are_adjacent(",
        "sdom_last_error(",
        "sdom_string_free(",
    ] {
        assert!(text.contains(symbol), "missing {symbol}");
    }
}

/// Compiles and runs a C program against the header and the static library.
/// Skipped when no C compiler or static archive is available.
#[test]
fn c_program_links_and_runs() {
    let Some(profile_dir) = std::env::current_exe()
        .ok()
        .and_then(|p| p.parent()?.parent().map(Path::to_path_buf))
    else {
        return;
    };
    let archive = profile_dir.join("libsdom_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: cc or {} not available", archive.display());
        return;
    }
    let source = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("c")
        .join("smoke.c");
    let exe = profile_dir.join(format!("sdom-ffi-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&source)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success(),
        "{stdout}{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(
        stdout.contains("len=21 first=1.1.1.1 dominating=1 gamma=21 exact=8"),
        "{stdout}"
    );
    assert!(stdout.contains("error=invalid parameters"), "{stdout}");
}
