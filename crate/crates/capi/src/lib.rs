//! C ABI over the monolat core: opaque handles, integer status codes, and
//! UTF-8 strings owned by the library. The header is generated into
//! `include/monolat.h` at build time.
//!
//! Every function tolerates null pointers (returning `NullPointer`) and
//! stores a description of the most recent failure per thread, readable via
//! `monolat_last_error`.

use monolat::algebra::{check_m_axioms, equational_consequence, expansion_from_json, ModalExpansion};
use monolat::proof::{
    interpolate, prove, Calculus, Derivation, SearchConfig, SearchOutcome, Sequent, Side,
};
use monolat::syntax::{parse_fo, parse_modal, parse_modal_equation, ModalFormula, Theory};
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};

/// Outcome of a C API call. Mirrors the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonolatStatus {
    /// Success: the check holds / the sequent is derivable.
    Ok = 0,
    /// A definite negative: countermodel found or not derivable.
    Refuted = 1,
    /// A search bound was exhausted before an answer was reached.
    BoundExhausted = 2,
    /// Malformed input (syntax, tables, encoding).
    InputError = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
}

/// A finite algebra with box/diamond tables. Opaque.
pub struct MonolatAlgebra {
    inner: ModalExpansion,
}

/// A checked derivation. Opaque.
pub struct MonolatDerivation {
    inner: Derivation,
    calculus: Calculus,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl std::fmt::Display) {
    let rendered = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(rendered).unwrap());
}

fn input_error(msg: impl std::fmt::Display) -> MonolatStatus {
    set_error(msg);
    MonolatStatus::InputError
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn monolat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn utf8_arg<'a>(ptr: *const c_char) -> Result<&'a str, MonolatStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(MonolatStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| input_error(format!("invalid UTF-8: {e}")))
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from a monolat function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn monolat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra (with box/diamond tables) from its JSON encoding.
///
/// # Safety
/// `json` must be a valid C string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn monolat_algebra_from_json(
    json: *const c_char,
    out: *mut *mut MonolatAlgebra,
) -> MonolatStatus {
    if out.is_null() {
        set_error("null output pointer");
        return MonolatStatus::NullPointer;
    }
    let text = match utf8_arg(json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return input_error(e),
    };
    match expansion_from_json(&value) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(MonolatAlgebra { inner }));
            MonolatStatus::Ok
        }
        Err(e) => input_error(e),
    }
}

/// # Safety
/// `a` must come from `monolat_algebra_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn monolat_algebra_free(a: *mut MonolatAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn monolat_algebra_size(a: *const MonolatAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.inner.base.size)
}

/// Checks the modal axioms (L1–L5, ⋆, and L6 where applicable).
///
/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn monolat_check_m_axioms(a: *const MonolatAlgebra) -> MonolatStatus {
    let Some(a) = a.as_ref() else {
        set_error("null algebra handle");
        return MonolatStatus::NullPointer;
    };
    let report = check_m_axioms(&a.inner);
    if report.ok() {
        MonolatStatus::Ok
    } else {
        set_error(&report);
        MonolatStatus::Refuted
    }
}

/// Tests a modal equation "α ≈ β" (or "α ≤ β") against the algebra.
///
/// # Safety
/// `a` must be a live handle and `equation` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn monolat_check_equation(
    a: *const MonolatAlgebra,
    equation: *const c_char,
) -> MonolatStatus {
    let Some(a) = a.as_ref() else {
        set_error("null algebra handle");
        return MonolatStatus::NullPointer;
    };
    let src = match utf8_arg(equation) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let eq = match parse_modal_equation(src) {
        Ok(eq) => eq,
        Err(e) => return input_error(e),
    };
    match equational_consequence(
        std::slice::from_ref(&a.inner),
        &Theory::<ModalFormula>::new(),
        &eq,
    ) {
        Ok(v) if v.holds() => MonolatStatus::Ok,
        Ok(v) => {
            set_error(format!("{v:?}"));
            MonolatStatus::Refuted
        }
        Err(e) => input_error(e),
    }
}

/// Translates between the one-variable first-order and modal languages.
/// `to_modal` nonzero maps ∀ ↦ □, ∃ ↦ ◇; zero goes the other way.
///
/// # Safety
/// `formula` must be a valid C string; `out` receives an owned string to be
/// released with `monolat_string_free`.
#[no_mangle]
pub unsafe extern "C" fn monolat_translate(
    formula: *const c_char,
    to_modal: c_int,
    out: *mut *mut c_char,
) -> MonolatStatus {
    if out.is_null() {
        set_error("null output pointer");
        return MonolatStatus::NullPointer;
    }
    let src = match utf8_arg(formula) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let rendered = if to_modal != 0 {
        parse_fo(src).map_err(|e| e.to_string()).and_then(|phi| {
            phi.star().map(|a| a.to_string()).map_err(|e| e.to_string())
        })
    } else {
        parse_modal(src).map(|a| a.circle().to_string()).map_err(|e| e.to_string())
    };
    match rendered {
        Ok(text) => {
            *out = export_string(text);
            MonolatStatus::Ok
        }
        Err(e) => input_error(e),
    }
}

fn calculus_of(code: c_int) -> Result<Calculus, MonolatStatus> {
    match code {
        0 => Ok(Calculus::FLe),
        1 => Ok(Calculus::FLew),
        2 => Ok(Calculus::FLec),
        _ => Err(input_error(format!("unknown calculus code {code} (0 fle, 1 flew, 2 flec)"))),
    }
}

/// Backward proof search for a sequent "Γ |- Δ". On success `out` (if
/// non-null) receives a derivation handle.
///
/// # Safety
/// `sequent` must be a valid C string; `out` may be null.
#[no_mangle]
pub unsafe extern "C" fn monolat_prove(
    sequent: *const c_char,
    calculus: c_int,
    contraction_budget: u32,
    out: *mut *mut MonolatDerivation,
) -> MonolatStatus {
    let src = match utf8_arg(sequent) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let calculus = match calculus_of(calculus) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let s = match Sequent::parse(src) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let cfg = SearchConfig { contraction_budget, ..SearchConfig::new(calculus) };
    match prove(&s, &cfg) {
        SearchOutcome::Derivable(d) => {
            if !out.is_null() {
                *out = Box::into_raw(Box::new(MonolatDerivation { inner: d, calculus }));
            }
            MonolatStatus::Ok
        }
        SearchOutcome::NotDerivable => MonolatStatus::Refuted,
        SearchOutcome::BoundExhausted => MonolatStatus::BoundExhausted,
    }
}

/// # Safety
/// `d` must come from `monolat_prove` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn monolat_derivation_free(d: *mut MonolatDerivation) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Maximum quantifier-rule applications on any branch, or -1 for null.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn monolat_derivation_md(d: *const MonolatDerivation) -> c_int {
    d.as_ref().map_or(-1, |d| d.inner.md() as c_int)
}

/// Renders the derivation as indented UTF-8 text.
///
/// # Safety
/// `d` must be a live handle; `out` receives an owned string.
#[no_mangle]
pub unsafe extern "C" fn monolat_derivation_text(
    d: *const MonolatDerivation,
    out: *mut *mut c_char,
) -> MonolatStatus {
    if out.is_null() {
        set_error("null output pointer");
        return MonolatStatus::NullPointer;
    }
    let Some(d) = d.as_ref() else {
        set_error("null derivation handle");
        return MonolatStatus::NullPointer;
    };
    *out = export_string(d.inner.to_string());
    MonolatStatus::Ok
}

/// Extracts an interpolant for the derivation's end sequent. `partition`
/// assigns each antecedent position (in the derivation's displayed order):
/// nonzero = Γ side, zero = Π side. On success `out` receives the
/// interpolant rendered as text.
///
/// # Safety
/// `d` must be a live handle; `partition` must point at `partition_len`
/// bytes; `out` receives an owned string.
#[no_mangle]
pub unsafe extern "C" fn monolat_interpolate(
    d: *const MonolatDerivation,
    partition: *const u8,
    partition_len: usize,
    out: *mut *mut c_char,
) -> MonolatStatus {
    if out.is_null() || (partition.is_null() && partition_len > 0) {
        set_error("null pointer argument");
        return MonolatStatus::NullPointer;
    }
    let Some(d) = d.as_ref() else {
        set_error("null derivation handle");
        return MonolatStatus::NullPointer;
    };
    let sides: Vec<Side> = (0..partition_len)
        .map(|i| if *partition.add(i) != 0 { Side::Gamma } else { Side::Pi })
        .collect();
    match interpolate(&d.inner, &sides, d.calculus) {
        Ok(r) => {
            *out = export_string(r.interpolant.to_string());
            MonolatStatus::Ok
        }
        Err(e) => input_error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn translate_roundtrip_through_the_abi() {
        let mut out: *mut c_char = ptr::null_mut();
        let status = unsafe { monolat_translate(c("A x P0(x)").as_ptr(), 1, &mut out) };
        assert_eq!(status, MonolatStatus::Ok);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        assert_eq!(text, "□p0");
        unsafe { monolat_string_free(out) };
    }

    #[test]
    fn prove_and_interpolate() {
        let mut d: *mut MonolatDerivation = ptr::null_mut();
        let status = unsafe { monolat_prove(c("A x P0(x) |- P0(x1)").as_ptr(), 0, 0, &mut d) };
        assert_eq!(status, MonolatStatus::Ok);
        assert_eq!(unsafe { monolat_derivation_md(d) }, 1);

        let mut chi: *mut c_char = ptr::null_mut();
        let partition = [1u8];
        let status =
            unsafe { monolat_interpolate(d, partition.as_ptr(), partition.len(), &mut chi) };
        assert_eq!(status, MonolatStatus::Ok);
        assert_eq!(unsafe { CStr::from_ptr(chi) }.to_str().unwrap(), "e · ∀x P0(x)");
        unsafe {
            monolat_string_free(chi);
            monolat_derivation_free(d);
        }
    }

    #[test]
    fn not_derivable_is_refuted() {
        let status = unsafe {
            monolat_prove(c("P0(x) |- P0(x) * P0(x)").as_ptr(), 0, 0, ptr::null_mut())
        };
        assert_eq!(status, MonolatStatus::Refuted);
    }

    #[test]
    fn algebra_checks_over_the_abi() {
        let json = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../core/tests/fixtures/l3.json"
        ))
        .unwrap();
        let mut a: *mut MonolatAlgebra = ptr::null_mut();
        let status = unsafe { monolat_algebra_from_json(c(&json).as_ptr(), &mut a) };
        assert_eq!(status, MonolatStatus::Ok);
        assert_eq!(unsafe { monolat_algebra_size(a) }, 3);
        assert_eq!(unsafe { monolat_check_m_axioms(a) }, MonolatStatus::Ok);
        let eq = c("dia p0 * dia p0 = dia (p0 * p0)");
        assert_eq!(unsafe { monolat_check_equation(a, eq.as_ptr()) }, MonolatStatus::Refuted);
        unsafe { monolat_algebra_free(a) };
    }

    #[test]
    fn errors_set_a_message() {
        let status = unsafe { monolat_prove(c("not a sequent").as_ptr(), 0, 0, ptr::null_mut()) };
        assert_eq!(status, MonolatStatus::InputError);
        let msg = unsafe { CStr::from_ptr(monolat_last_error()) }.to_str().unwrap();
        assert!(!msg.is_empty());
    }
}
