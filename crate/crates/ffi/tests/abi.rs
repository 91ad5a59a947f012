use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use modgamma::instance::Instance;
use modgamma_ffi::*;

struct Handle(*mut MgInstance);

impl Handle {
    fn new(ell: u64, q: u64) -> Handle {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { mg_instance_new(ell, q, false, &mut h) }, MgStatus::Ok);
        Handle(h)
    }

    fn shape(&self) -> (usize, u64, u64, u64) {
        let (mut d, mut m, mut n, mut a) = (0, 0, 0, 0);
        assert_eq!(unsafe { mg_instance_shape(self.0, &mut d, &mut m, &mut n, &mut a) }, MgStatus::Ok);
        (d, m, n, a)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { mg_instance_free(self.0) }
    }
}

#[test]
fn invalid_instances_are_rejected() {
    let mut h = ptr::null_mut();
    for (ell, q) in [(3, 9), (4, 7), (3, 6)] {
        assert_eq!(unsafe { mg_instance_new(ell, q, false, &mut h) }, MgStatus::InvalidInstance);
        assert!(h.is_null());
    }
    assert_eq!(unsafe { mg_instance_new(3, 7, false, ptr::null_mut()) }, MgStatus::NullPointer);
}

#[test]
fn gamma_matches_the_library() {
    let h = Handle::new(2, 5);
    let (d, mp, np, _) = h.shape();
    let inst = Instance::new(2, 5).unwrap();
    let mut buf = vec![0u32; d];
    for i in 0..mp {
        for j in 0..np {
            assert_eq!(unsafe { mg_gamma(h.0, i, j, buf.as_mut_ptr(), d) }, MgStatus::Ok);
            let g = modgamma::gauss::gauss_sum_gamma(&inst, i, j).unwrap();
            assert_eq!(buf, g.value.coeffs());
        }
    }
    assert_eq!(unsafe { mg_gamma(h.0, mp, 0, buf.as_mut_ptr(), d) }, MgStatus::OutOfRange);
    assert_eq!(unsafe { mg_gamma(h.0, 0, 0, buf.as_mut_ptr(), d - 1) }, MgStatus::BufferTooSmall);
    assert_eq!(unsafe { mg_gamma(ptr::null(), 0, 0, buf.as_mut_ptr(), d) }, MgStatus::NullPointer);
}

#[test]
fn gamma_tilde_augments_to_gamma() {
    let h = Handle::new(3, 7);
    let (d, _, np, la) = h.shape();
    let mut tilde = vec![0u32; la as usize * d];
    let mut gamma = vec![0u32; d];
    for i in [1, 2, 6] {
        for j in 0..np {
            assert_eq!(unsafe { mg_gamma_tilde(h.0, i, j, tilde.as_mut_ptr(), tilde.len()) }, MgStatus::Ok);
            assert_eq!(unsafe { mg_gamma(h.0, i, j, gamma.as_mut_ptr(), d) }, MgStatus::Ok);
            // the augmentation u -> 0 keeps the constant coefficient
            assert_eq!(&tilde[..d], &gamma[..]);
        }
    }
}

#[test]
fn ell_regular_separates_the_collision() {
    let h = Handle::new(2, 5);
    let (d, ..) = h.shape();
    let (mut a, mut b) = (vec![0u32; d], vec![0u32; d]);
    assert_eq!(unsafe { mg_gamma(h.0, 0, 0, a.as_mut_ptr(), d) }, MgStatus::Ok);
    assert_eq!(unsafe { mg_gamma(h.0, 1, 0, b.as_mut_ptr(), d) }, MgStatus::Ok);
    assert_eq!(a, b);
    assert_eq!(unsafe { mg_gamma_ell_regular(h.0, 0, 0, a.as_mut_ptr(), d) }, MgStatus::Ok);
    assert_eq!(unsafe { mg_gamma_ell_regular(h.0, 1, 0, b.as_mut_ptr(), d) }, MgStatus::Ok);
    assert_ne!(a, b);
}

#[test]
fn table_json_and_messages() {
    let h = Handle::new(2, 5);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { mg_table_json(h.0, &mut s) }, MgStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { mg_string_free(s) };
    assert_eq!(json["schema"], 1);
    assert_eq!(json["command"], "table");
    let msg = unsafe { CStr::from_ptr(mg_status_message(MgStatus::BufferTooSmall)) };
    assert_eq!(msg.to_str().unwrap(), "output buffer too small");
    let mut n = 0;
    assert_eq!(unsafe { mg_search_duplicates(3, 7, &mut n) }, MgStatus::Ok);
    assert_eq!(n, 1);
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/abi-<hash>
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libmodgamma_ffi.a");
    assert!(lib.exists(), "static library at {}", lib.display());
    let exe = std::env::temp_dir().join(format!("modgamma-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    std::fs::remove_file(&exe).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
