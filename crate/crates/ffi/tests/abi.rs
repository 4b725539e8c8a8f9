//! Drives the C entry points the way a foreign caller would: raw pointers,
//! status codes, manual frees. Every test body is one `unsafe` block because
//! the whole surface under test is the unsafe ABI.

use std::ffi::{CStr, CString};
use std::ptr;

use newton_spectrum_ffi::{
    ns_diagram_deform, ns_diagram_free, ns_diagram_is_deformation_of, ns_diagram_newton_number,
    ns_diagram_parse, ns_diagram_render, ns_diagram_segment, ns_diagram_term_form,
    ns_diagram_twice_area_under, ns_report_json, ns_spectrum_compute, ns_spectrum_contains,
    ns_spectrum_free, ns_spectrum_len, ns_spectrum_values, ns_spectrum_witness, ns_string_free,
    ns_verify_json, ns_version, NsDiagram, NsSpectrum, NsStatus,
};

unsafe fn parse(spec: &str) -> *mut NsDiagram {
    let c = CString::new(spec).unwrap();
    let mut d: *mut NsDiagram = ptr::null_mut();
    assert_eq!(ns_diagram_parse(c.as_ptr(), &mut d), NsStatus::Ok);
    assert!(!d.is_null());
    d
}

unsafe fn take_string(s: *mut libc::c_char) -> String {
    assert!(!s.is_null());
    let text = CStr::from_ptr(s).to_str().unwrap().to_string();
    ns_string_free(s);
    text
}

#[test]
fn version_is_a_static_string() {
    let v = ns_version();
    assert!(!v.is_null());
    let text = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
    assert_eq!(text, env!("CARGO_PKG_VERSION"));
}

#[test]
fn diagram_lifecycle() {
    unsafe {
        let d = parse("(0,6) (3,1) (4,0)");

        let mut nu = 0i64;
        assert_eq!(ns_diagram_newton_number(d, &mut nu), NsStatus::Ok);
        assert_eq!(nu, 13);

        let mut area2 = 0i64;
        assert_eq!(ns_diagram_twice_area_under(d, &mut area2), NsStatus::Ok);
        assert_eq!(area2, 22);

        let mut text: *mut libc::c_char = ptr::null_mut();
        assert_eq!(ns_diagram_render(d, &mut text), NsStatus::Ok);
        assert_eq!(take_string(text), "(0,6) (3,1) (4,0)");

        let mut terms: *mut libc::c_char = ptr::null_mut();
        assert_eq!(ns_diagram_term_form(d, &mut terms), NsStatus::Ok);
        assert_eq!(take_string(terms), "tr(3,5) + tr(1,1) @ (0,6)");

        ns_diagram_free(d);
        ns_diagram_free(ptr::null_mut());
    }
}

#[test]
fn term_form_of_a_point_is_null() {
    unsafe {
        let d = parse("(2,2)");
        let mut terms: *mut libc::c_char = ptr::null_mut();
        assert_eq!(ns_diagram_term_form(d, &mut terms), NsStatus::Ok);
        assert!(terms.is_null());
        ns_diagram_free(d);
    }
}

#[test]
fn deform_and_order() {
    unsafe {
        let mut base: *mut NsDiagram = ptr::null_mut();
        assert_eq!(ns_diagram_segment(4, 8, &mut base), NsStatus::Ok);

        let xs = [1i64];
        let ys = [5i64];
        let mut low: *mut NsDiagram = ptr::null_mut();
        assert_eq!(
            ns_diagram_deform(base, xs.as_ptr(), ys.as_ptr(), 1, &mut low),
            NsStatus::Ok
        );
        let mut nu = 0i64;
        assert_eq!(ns_diagram_newton_number(low, &mut nu), NsStatus::Ok);
        assert_eq!(nu, 17);

        let mut text: *mut libc::c_char = ptr::null_mut();
        assert_eq!(ns_diagram_render(low, &mut text), NsStatus::Ok);
        assert_eq!(take_string(text), "(0,8) (1,5) (4,0)");

        let mut ordered = false;
        assert_eq!(
            ns_diagram_is_deformation_of(low, base, &mut ordered),
            NsStatus::Ok
        );
        assert!(ordered);
        assert_eq!(
            ns_diagram_is_deformation_of(base, low, &mut ordered),
            NsStatus::Ok
        );
        assert!(!ordered);

        let mut same: *mut NsDiagram = ptr::null_mut();
        assert_eq!(
            ns_diagram_deform(base, ptr::null(), ptr::null(), 0, &mut same),
            NsStatus::Ok
        );
        assert_eq!(ns_diagram_newton_number(same, &mut nu), NsStatus::Ok);
        assert_eq!(nu, 21);

        ns_diagram_free(same);
        ns_diagram_free(low);
        ns_diagram_free(base);
    }
}

#[test]
fn spectrum_lifecycle() {
    unsafe {
        let mut s: *mut NsSpectrum = ptr::null_mut();
        assert_eq!(ns_spectrum_compute(4, 8, 2, &mut s), NsStatus::Ok);

        let mut len = 0usize;
        assert_eq!(ns_spectrum_len(s, &mut len), NsStatus::Ok);
        assert_eq!(len, 19);

        let mut contains = false;
        assert_eq!(ns_spectrum_contains(s, 21, &mut contains), NsStatus::Ok);
        assert!(contains);
        assert_eq!(ns_spectrum_contains(s, 19, &mut contains), NsStatus::Ok);
        assert!(!contains);
        assert_eq!(ns_spectrum_contains(s, 20, &mut contains), NsStatus::Ok);
        assert!(!contains);

        let mut needed = 0usize;
        assert_eq!(
            ns_spectrum_values(s, ptr::null_mut(), 0, &mut needed),
            NsStatus::Ok
        );
        assert_eq!(needed, 19);

        let mut short = [0i64; 3];
        assert_eq!(
            ns_spectrum_values(s, short.as_mut_ptr(), short.len(), &mut needed),
            NsStatus::ShortBuffer
        );

        let mut values = vec![0i64; needed];
        assert_eq!(
            ns_spectrum_values(s, values.as_mut_ptr(), values.len(), &mut needed),
            NsStatus::Ok
        );
        assert_eq!(values.first(), Some(&1));
        assert_eq!(values.last(), Some(&21));
        assert!(values.windows(2).all(|w| w[0] < w[1]));

        let mut witness: *mut libc::c_char = ptr::null_mut();
        assert_eq!(ns_spectrum_witness(s, 13, &mut witness), NsStatus::Ok);
        let text = take_string(witness);
        let d = parse(&text);
        let mut nu = 0i64;
        assert_eq!(ns_diagram_newton_number(d, &mut nu), NsStatus::Ok);
        assert_eq!(nu, 13);
        ns_diagram_free(d);

        assert_eq!(ns_spectrum_witness(s, 20, &mut witness), NsStatus::Ok);
        assert!(witness.is_null());

        ns_spectrum_free(s);
        ns_spectrum_free(ptr::null_mut());
    }
}

#[test]
fn json_reports() {
    unsafe {
        let mut text: *mut libc::c_char = ptr::null_mut();
        assert_eq!(ns_report_json(6, 9, &mut text), NsStatus::Ok);
        let report = take_string(text);
        assert!(report.contains("\"schema_version\": \"1\""), "{report}");
        assert!(report.contains("\"mu\": 40"), "{report}");

        let mut passed = false;
        assert_eq!(ns_verify_json(3, 6, &mut passed, &mut text), NsStatus::Ok);
        assert!(passed);
        let verdict = take_string(text);
        assert!(verdict.contains("\"status\": \"pass\""), "{verdict}");
    }
}

#[test]
fn status_codes_cover_the_failure_modes() {
    unsafe {
        let mut d: *mut NsDiagram = ptr::null_mut();
        assert_eq!(ns_diagram_parse(ptr::null(), &mut d), NsStatus::NullPointer);

        let garbage = CString::new("(0,8").unwrap();
        assert_eq!(
            ns_diagram_parse(garbage.as_ptr(), &mut d),
            NsStatus::ParseError
        );

        let invalid = CString::new([0xffu8, 0xfe].as_slice()).unwrap();
        assert_eq!(
            ns_diagram_parse(invalid.as_ptr(), &mut d),
            NsStatus::InvalidUtf8
        );

        assert_eq!(ns_diagram_segment(-1, 5, &mut d), NsStatus::DomainError);

        let mut s: *mut NsSpectrum = ptr::null_mut();
        assert_eq!(
            ns_spectrum_compute(13, 14, 2, &mut s),
            NsStatus::BudgetExceeded
        );
        assert_eq!(ns_spectrum_compute(1, 5, 2, &mut s), NsStatus::DomainError);

        let point = parse("(3,3)");
        let mut nu = 0i64;
        assert_eq!(
            ns_diagram_newton_number(point, &mut nu),
            NsStatus::DomainError
        );
        ns_diagram_free(point);

        ns_string_free(ptr::null_mut());
    }
}
