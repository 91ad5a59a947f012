//! C ABI over `modgamma`. Instances are opaque handles; every call returns
//! an `MgStatus`. Field elements are written as `degree` prime-field
//! coefficients, lowest degree first.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use modgamma::block::{self, BlockRing};
use modgamma::ellreg;
use modgamma::field::Fe;
use modgamma::gauss::{self, GammaError};
use modgamma::instance::Instance;
use modgamma::output;
use modgamma::search;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgStatus {
    Ok = 0,
    NullPointer = 1,
    /// `l` not prime, `q` not a prime power, or `l = p`.
    InvalidInstance = 2,
    OutOfRange = 3,
    BufferTooSmall = 4,
    Internal = 5,
}

/// Opaque instance handle.
pub struct MgInstance {
    inner: Instance,
}

fn guard(f: impl FnOnce() -> MgStatus) -> MgStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(MgStatus::Internal)
}

unsafe fn handle<'a>(h: *const MgInstance) -> Option<&'a Instance> {
    h.as_ref().map(|h| &h.inner)
}

unsafe fn write_coeffs(values: &[&Fe], out: *mut u32, len: usize) -> MgStatus {
    let total: usize = values.iter().map(|v| v.coeffs().len()).sum();
    if len < total {
        return MgStatus::BufferTooSmall;
    }
    let out = std::slice::from_raw_parts_mut(out, total);
    for (dst, &c) in out.iter_mut().zip(values.iter().flat_map(|v| v.coeffs())) {
        *dst = c;
    }
    MgStatus::Ok
}

fn check(inst: &Instance, i: u64, j: u64) -> Result<(), MgStatus> {
    if i >= inst.m_prime() || j >= inst.n_prime() {
        return Err(MgStatus::OutOfRange);
    }
    Ok(())
}

/// Builds the instance for `(ell, q)`; `alternate` selects the alternate
/// generator choices. Release with `mg_instance_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_new(ell: u64, q: u64, alternate: bool, out: *mut *mut MgInstance) -> MgStatus {
    if out.is_null() {
        return MgStatus::NullPointer;
    }
    guard(|| {
        let r = if alternate {
            Instance::alternate(ell, q)
        } else {
            Instance::new(ell, q)
        };
        match r {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MgInstance { inner }));
                MgStatus::Ok
            }
            Err(_) => MgStatus::InvalidInstance,
        }
    })
}

/// # Safety
/// `h` must come from `mg_instance_new` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_free(h: *mut MgInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Degree of the coefficient field over `F_l`, the `l'`-part `m'` of
/// `q^2 - 1`, the `l'`-part `n'` of `q - 1` and `l^a`, the `l`-part of `q - 1`.
///
/// # Safety
/// `h` must be a live handle; output pointers may be null to skip.
#[no_mangle]
pub unsafe extern "C" fn mg_instance_shape(
    h: *const MgInstance,
    degree: *mut usize,
    m_prime: *mut u64,
    n_prime: *mut u64,
    ell_part: *mut u64,
) -> MgStatus {
    let Some(inst) = handle(h) else {
        return MgStatus::NullPointer;
    };
    if let Some(d) = degree.as_mut() {
        *d = inst.field().degree();
    }
    if let Some(m) = m_prime.as_mut() {
        *m = inst.m_prime();
    }
    if let Some(n) = n_prime.as_mut() {
        *n = inst.n_prime();
    }
    if let Some(a) = ell_part.as_mut() {
        *a = inst.ell_part();
    }
    MgStatus::Ok
}

/// Gauss-sum gamma factor of `nu_i x omega_j` into `out[0..degree]`.
///
/// # Safety
/// `h` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mg_gamma(h: *const MgInstance, i: u64, j: u64, out: *mut u32, len: usize) -> MgStatus {
    let Some(inst) = handle(h) else {
        return MgStatus::NullPointer;
    };
    if out.is_null() {
        return MgStatus::NullPointer;
    }
    guard(|| match gauss::gauss_sum_gamma(inst, i, j) {
        Ok(g) => write_coeffs(&[&g.value], out, len),
        Err(GammaError::BadI { .. } | GammaError::BadJ { .. }) => MgStatus::OutOfRange,
        Err(_) => MgStatus::Internal,
    })
}

/// `gamma~` in `R(omega) = k[u]/u^{l^a}` from the norm-fibre Bessel
/// function: `l^a` coefficients of `u^0, u^1, ...`, each `degree` long, into
/// `out[0..l^a * degree]`.
///
/// # Safety
/// `h` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mg_gamma_tilde(h: *const MgInstance, i: u64, j: u64, out: *mut u32, len: usize) -> MgStatus {
    let Some(inst) = handle(h) else {
        return MgStatus::NullPointer;
    };
    if out.is_null() {
        return MgStatus::NullPointer;
    }
    if let Err(s) = check(inst, i, j) {
        return s;
    }
    guard(|| {
        let ring = BlockRing::for_instance(inst);
        let g = block::gamma_tilde_closed(inst, &ring, &gauss::bessel_j(inst, i), j);
        let refs: Vec<&Fe> = g.0.iter().collect();
        write_coeffs(&refs, out, len)
    })
}

/// `l`-regular gamma factor from the norm-fibre Bessel function into
/// `out[0..degree]`.
///
/// # Safety
/// `h` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn mg_gamma_ell_regular(h: *const MgInstance, i: u64, j: u64, out: *mut u32, len: usize) -> MgStatus {
    let Some(inst) = handle(h) else {
        return MgStatus::NullPointer;
    };
    if out.is_null() {
        return MgStatus::NullPointer;
    }
    if let Err(s) = check(inst, i, j) {
        return s;
    }
    guard(|| {
        let g = ellreg::gamma_ell_regular(inst, &gauss::bessel_j(inst, i), j);
        write_coeffs(&[&g], out, len)
    })
}

/// Number of duplicate row pairs in the gamma table of `(ell, q)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_search_duplicates(ell: u64, q: u64, out: *mut usize) -> MgStatus {
    if out.is_null() {
        return MgStatus::NullPointer;
    }
    guard(|| match search::search(ell, q, false) {
        Ok(r) => {
            *out = r.duplicates.len();
            MgStatus::Ok
        }
        Err(_) => MgStatus::InvalidInstance,
    })
}

/// The versioned JSON table for the instance. Release with `mg_string_free`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mg_table_json(h: *const MgInstance, out: *mut *mut c_char) -> MgStatus {
    let Some(inst) = handle(h) else {
        return MgStatus::NullPointer;
    };
    if out.is_null() {
        return MgStatus::NullPointer;
    }
    guard(|| {
        let json = output::to_json("table", Some(inst), output::table_rows(&search::gamma_table(inst)));
        match CString::new(json) {
            Ok(s) => {
                *out = s.into_raw();
                MgStatus::Ok
            }
            Err(_) => MgStatus::Internal,
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn mg_status_message(status: MgStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        MgStatus::Ok => b"ok\0",
        MgStatus::NullPointer => b"null pointer\0",
        MgStatus::InvalidInstance => b"invalid (l, q): l must be prime, q a prime power, l != p\0",
        MgStatus::OutOfRange => b"character exponent out of range\0",
        MgStatus::BufferTooSmall => b"output buffer too small\0",
        MgStatus::Internal => b"internal error\0",
    };
    s.as_ptr() as *const c_char
}
