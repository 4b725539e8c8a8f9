//! C ABI over the diagram, spectrum, and report machinery. Callers hold
//! opaque handles, every function returns a status code, and out-parameters
//! are written only on success (except buffer-size reporting, noted inline).
//!
//! Every function taking pointers is `unsafe` under one shared contract:
//! pointers are either null (rejected with `NS_STATUS_NULL_POINTER`) or
//! valid for the access implied by their type, handles come from this
//! library and are not used after free, and strings are NUL-terminated.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};

use newton_spectrum::dsl::parse_diagram;
use newton_spectrum::geometry::{Diagram, LatticePoint};
use newton_spectrum::io::{report_envelope, to_pretty_json, verify_json};
use newton_spectrum::oracle::{
    attainable_spectrum, verify, EnumerationConstraints, OracleError, SpectrumResult, VerifyStatus,
};
use newton_spectrum::predictor::predicted_report;

/// Result of every call. Out-parameters are valid only on `NS_STATUS_OK`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    BudgetExceeded = 5,
    ShortBuffer = 6,
    Panic = 7,
}

/// Opaque diagram handle; release with `ns_diagram_free`.
pub struct NsDiagram {
    inner: Diagram,
}

/// Opaque spectrum handle; release with `ns_spectrum_free`.
pub struct NsSpectrum {
    inner: SpectrumResult,
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return NsStatus::NullPointer;
        })+
    };
}

fn guarded(f: impl FnOnce() -> NsStatus) -> NsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(NsStatus::Panic)
}

fn oracle_status(e: &OracleError) -> NsStatus {
    match e {
        OracleError::BudgetExceeded { .. } => NsStatus::BudgetExceeded,
        _ => NsStatus::DomainError,
    }
}

fn give_string(out: *mut *mut c_char, s: String) -> NsStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            NsStatus::Ok
        }
        Err(_) => NsStatus::DomainError,
    }
}

/// Parses a vertex list `"(0,6) (3,1) (4,0)"` or a term sum
/// `"tr(3,5) + tr(1,1) @ (0,6)"` into a new diagram handle.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_parse(
    spec: *const c_char,
    out: *mut *mut NsDiagram,
) -> NsStatus {
    guarded(|| {
        nonnull!(spec, out);
        let text = match unsafe { CStr::from_ptr(spec) }.to_str() {
            Ok(t) => t,
            Err(_) => return NsStatus::InvalidUtf8,
        };
        match parse_diagram(text) {
            Ok(d) => {
                unsafe { *out = Box::into_raw(Box::new(NsDiagram { inner: d })) };
                NsStatus::Ok
            }
            Err(_) => NsStatus::ParseError,
        }
    })
}

/// Builds the segment diagram from `(0, q)` to `(p, 0)`.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_segment(p: i64, q: i64, out: *mut *mut NsDiagram) -> NsStatus {
    guarded(|| {
        nonnull!(out);
        match Diagram::segment(p, q) {
            Ok(d) => {
                unsafe { *out = Box::into_raw(Box::new(NsDiagram { inner: d })) };
                NsStatus::Ok
            }
            Err(_) => NsStatus::DomainError,
        }
    })
}

/// Newton number of the diagram; fails on non-convenient or degenerate ones.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_newton_number(d: *const NsDiagram, out: *mut i64) -> NsStatus {
    guarded(|| {
        nonnull!(d, out);
        match unsafe { &(*d).inner }.newton_number() {
            Ok(nu) => {
                unsafe { *out = nu };
                NsStatus::Ok
            }
            Err(_) => NsStatus::DomainError,
        }
    })
}

/// Twice the lattice area between the chain and the axes.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_twice_area_under(
    d: *const NsDiagram,
    out: *mut i64,
) -> NsStatus {
    guarded(|| {
        nonnull!(d, out);
        match unsafe { &(*d).inner }.twice_area_under() {
            Ok(v) => {
                unsafe { *out = v };
                NsStatus::Ok
            }
            Err(_) => NsStatus::DomainError,
        }
    })
}

/// Renders the canonical vertex form; release with `ns_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_render(d: *const NsDiagram, out: *mut *mut c_char) -> NsStatus {
    guarded(|| {
        nonnull!(d, out);
        let text = unsafe { &(*d).inner }.to_string();
        give_string(out, text)
    })
}

/// Renders the term form; writes NULL for single-vertex diagrams.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_term_form(
    d: *const NsDiagram,
    out: *mut *mut c_char,
) -> NsStatus {
    guarded(|| {
        nonnull!(d, out);
        match unsafe { &(*d).inner }.term_form() {
            Some(text) => give_string(out, text),
            None => {
                unsafe { *out = ptr::null_mut() };
                NsStatus::Ok
            }
        }
    })
}

/// Deforms by the `len` lattice points `(xs[i], ys[i])`, yielding a new
/// handle. The input handle stays valid.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_deform(
    d: *const NsDiagram,
    xs: *const i64,
    ys: *const i64,
    len: size_t,
    out: *mut *mut NsDiagram,
) -> NsStatus {
    guarded(|| {
        nonnull!(d, out);
        if len > 0 {
            nonnull!(xs, ys);
        }
        let mut points = Vec::with_capacity(len);
        for i in 0..len {
            let (x, y) = unsafe { (*xs.add(i), *ys.add(i)) };
            match LatticePoint::new(x, y) {
                Ok(p) => points.push(p),
                Err(_) => return NsStatus::DomainError,
            }
        }
        match unsafe { &(*d).inner }.deform(&points) {
            Ok(next) => {
                unsafe { *out = Box::into_raw(Box::new(NsDiagram { inner: next })) };
                NsStatus::Ok
            }
            Err(_) => NsStatus::DomainError,
        }
    })
}

/// Writes true when `d` is a deformation of `base` (every point of `base`
/// lies in the region of `d`).
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_is_deformation_of(
    d: *const NsDiagram,
    base: *const NsDiagram,
    out: *mut bool,
) -> NsStatus {
    guarded(|| {
        nonnull!(d, base, out);
        let value = unsafe { (*d).inner.is_deformation_of(&(*base).inner) };
        unsafe { *out = value };
        NsStatus::Ok
    })
}

/// Releases a diagram handle; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ns_diagram_free(d: *mut NsDiagram) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Enumerates every deformation of `tr(p, q)` whose vertices satisfy
/// `x + y >= min_degree` and stores the attained Newton numbers.
#[no_mangle]
pub unsafe extern "C" fn ns_spectrum_compute(
    p: i64,
    q: i64,
    min_degree: i64,
    out: *mut *mut NsSpectrum,
) -> NsStatus {
    guarded(|| {
        nonnull!(out);
        let constraints = EnumerationConstraints {
            min_total_degree: min_degree,
            ..EnumerationConstraints::default()
        };
        match attainable_spectrum(p, q, &constraints) {
            Ok(s) => {
                unsafe { *out = Box::into_raw(Box::new(NsSpectrum { inner: s })) };
                NsStatus::Ok
            }
            Err(e) => oracle_status(&e),
        }
    })
}

/// Number of attained Newton numbers.
#[no_mangle]
pub unsafe extern "C" fn ns_spectrum_len(s: *const NsSpectrum, out: *mut size_t) -> NsStatus {
    guarded(|| {
        nonnull!(s, out);
        unsafe { *out = (*s).inner.attainable.len() };
        NsStatus::Ok
    })
}

/// Copies the attained values in increasing order. With a NULL buffer only
/// `written` is set, to the required length; with a short buffer `written`
/// is set and `NS_STATUS_SHORT_BUFFER` returned.
#[no_mangle]
pub unsafe extern "C" fn ns_spectrum_values(
    s: *const NsSpectrum,
    buf: *mut i64,
    cap: size_t,
    written: *mut size_t,
) -> NsStatus {
    guarded(|| {
        nonnull!(s, written);
        let values = &unsafe { &(*s).inner }.attainable;
        unsafe { *written = values.len() };
        if buf.is_null() {
            return NsStatus::Ok;
        }
        if cap < values.len() {
            return NsStatus::ShortBuffer;
        }
        for (i, v) in values.iter().enumerate() {
            unsafe { *buf.add(i) = *v };
        }
        NsStatus::Ok
    })
}

/// Writes true when `nu` is attained.
#[no_mangle]
pub unsafe extern "C" fn ns_spectrum_contains(
    s: *const NsSpectrum,
    nu: i64,
    out: *mut bool,
) -> NsStatus {
    guarded(|| {
        nonnull!(s, out);
        unsafe { *out = (*s).inner.attainable.contains(&nu) };
        NsStatus::Ok
    })
}

/// Renders the lexicographically smallest witness for `nu` in vertex form;
/// writes NULL when `nu` is a gap. Release with `ns_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ns_spectrum_witness(
    s: *const NsSpectrum,
    nu: i64,
    out: *mut *mut c_char,
) -> NsStatus {
    guarded(|| {
        nonnull!(s, out);
        match unsafe { &(*s).inner }.witnesses.get(&nu) {
            Some(d) => give_string(out, d.to_string()),
            None => {
                unsafe { *out = ptr::null_mut() };
                NsStatus::Ok
            }
        }
    })
}

/// Releases a spectrum handle; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ns_spectrum_free(s: *mut NsSpectrum) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Predicted attainable spectrum for `x^p + y^q` as a JSON document.
/// Release with `ns_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ns_report_json(p: i64, q: i64, out: *mut *mut c_char) -> NsStatus {
    guarded(|| {
        nonnull!(out);
        match predicted_report(p, q) {
            Ok(r) => give_string(out, to_pretty_json(&report_envelope(&r))),
            Err(_) => NsStatus::DomainError,
        }
    })
}

/// Runs prediction and enumeration for `x^p + y^q`, writes whether the
/// prediction held, and returns the full comparison as JSON.
/// Release with `ns_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ns_verify_json(
    p: i64,
    q: i64,
    passed: *mut bool,
    out: *mut *mut c_char,
) -> NsStatus {
    guarded(|| {
        nonnull!(passed, out);
        match verify(p, q) {
            Ok(r) => {
                unsafe { *passed = r.status == VerifyStatus::Pass };
                give_string(out, to_pretty_json(&verify_json(&r)))
            }
            Err(e) => oracle_status(&e),
        }
    })
}

/// Releases a string produced by this library; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static library version; do not free.
#[no_mangle]
pub extern "C" fn ns_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
