use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use superllt_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn compute(n: u32, outer: &[u32], inner: &[u32], order: &str, route: SlltRoute) -> (SlltStatus, *mut SlltPoly) {
    let order = c(order);
    let mut out = ptr::null_mut();
    let st = unsafe {
        sllt_compute(
            n,
            outer.as_ptr(),
            outer.len(),
            inner.as_ptr(),
            inner.len(),
            order.as_ptr(),
            route,
            &mut out,
        )
    };
    (st, out)
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { sllt_string_free(p) };
    s
}

#[test]
fn routes_agree_through_the_abi() {
    let routes = [
        SlltRoute::Tableaux,
        SlltRoute::Lattice,
        SlltRoute::LatticeAlternate,
        SlltRoute::Operators,
    ];
    let handles: Vec<_> = routes
        .iter()
        .map(|&r| {
            let (st, p) = compute(2, &[3, 3], &[], "1,1',2", r);
            assert_eq!(st, SlltStatus::Ok);
            p
        })
        .collect();
    for h in &handles[1..] {
        let mut eq = false;
        assert_eq!(unsafe { sllt_poly_equal(handles[0], *h, &mut eq) }, SlltStatus::Ok);
        assert!(eq);
    }
    for h in handles {
        unsafe { sllt_poly_free(h) };
    }
}

#[test]
fn json_round_trip() {
    let (_, p) = compute(2, &[3, 3], &[], "1", SlltRoute::Tableaux);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sllt_poly_to_string(p, &mut s) }, SlltStatus::Ok);
    assert_eq!(take_string(s), "q^3*x1^3");
    assert_eq!(unsafe { sllt_poly_to_json(p, &mut s) }, SlltStatus::Ok);
    let json = c(&take_string(s));
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { sllt_poly_from_json(json.as_ptr(), &mut back) }, SlltStatus::Ok);
    let mut eq = false;
    unsafe { sllt_poly_equal(p, back, &mut eq) };
    assert!(eq);
    unsafe {
        sllt_poly_free(p);
        sllt_poly_free(back);
    }
}

#[test]
fn errors_set_status_and_message() {
    let (st, p) = compute(2, &[1, 3], &[], "1", SlltRoute::Tableaux);
    assert_eq!(st, SlltStatus::InvalidInput);
    assert!(p.is_null());
    let msg = unsafe { CStr::from_ptr(sllt_last_error()) }.to_str().unwrap();
    assert!(msg.contains("invalid"), "{msg}");

    let (st, _) = compute(0, &[2], &[], "1", SlltRoute::Tableaux);
    assert_eq!(st, SlltStatus::InvalidInput);

    let order = c("1");
    let st = unsafe { sllt_compute(2, ptr::null(), 1, ptr::null(), 0, order.as_ptr(), SlltRoute::Tableaux, ptr::null_mut()) };
    assert_eq!(st, SlltStatus::NullPointer);

    let bad = [0xffu8, 0];
    let mut out = ptr::null_mut();
    let st = unsafe { sllt_poly_from_json(bad.as_ptr().cast(), &mut out) };
    assert_eq!(st, SlltStatus::InvalidUtf8);

    unsafe {
        sllt_poly_free(ptr::null_mut());
        sllt_string_free(ptr::null_mut());
    }
}

#[test]
fn ybe_counts() {
    let (mut checked, mut failures) = (0, 0);
    let kind = c("HH");
    assert_eq!(unsafe { sllt_verify_ybe(kind.as_ptr(), 2, false, 0, &mut checked, &mut failures) }, SlltStatus::Ok);
    assert_eq!((checked, failures), (1024, 0));
    let kind = c("V~V");
    assert_eq!(unsafe { sllt_verify_ybe(kind.as_ptr(), 2, true, 0, &mut checked, &mut failures) }, SlltStatus::Ok);
    assert_eq!(failures, 4);
    assert_eq!(
        unsafe { sllt_verify_ybe(kind.as_ptr(), 2, false, 10, &mut checked, &mut failures) },
        SlltStatus::BudgetExceeded
    );
    let kind = c("XY");
    assert_eq!(
        unsafe { sllt_verify_ybe(kind.as_ptr(), 2, false, 0, &mut checked, &mut failures) },
        SlltStatus::InvalidInput
    );
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(sllt_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/superllt.h")).unwrap();
    let source = std::fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert_eq!(exports.len(), 10);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct SlltPoly SlltPoly;"));
}

fn find_lib(dir: &Path) -> Option<PathBuf> {
    let name = if cfg!(target_os = "macos") {
        "libsuperllt_ffi.dylib"
    } else {
        "libsuperllt_ffi.so"
    };
    // test binaries live in target/<profile>/deps
    let p = dir.parent()?.join(name);
    p.exists().then_some(p)
}

/// Compiles and runs a C program against the header and shared library
/// when a C compiler is present.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let Some(lib) = find_lib(exe.parent().unwrap()) else {
        eprintln!("shared library not built; skipping");
        return;
    };
    let out = std::env::temp_dir().join(format!("superllt_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .arg("-o")
        .arg(&out)
        .status();
    match status {
        Ok(s) if s.success() => {}
        Ok(s) => panic!("cc failed: {s}"),
        Err(_) => {
            eprintln!("no C compiler; skipping");
            return;
        }
    }
    let run = Command::new(&out)
        .env("LD_LIBRARY_PATH", lib.parent().unwrap())
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "smoke exited with {:?}", run.status);
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("q^3*x1^3"));
}
