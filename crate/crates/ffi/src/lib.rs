//! C ABI over the `metabelian` crate.
//!
//! Every fallible function returns an [`MbStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`mb_last_error`] until the next call on the same thread. Handles and
//! strings returned by this library must be released with the matching
//! `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use metabelian::dyadic::residual_check;
use metabelian::endomorph::{Endo, EndoError, EndoFile, FiltrationLevel, JacobianView};
use metabelian::freeassoc::oe_replay;
use metabelian::metabelian::{parse_element, MElement, MetabelianError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotAutomorphism = 5,
    Panic = 6,
}

/// Opaque element of `M_n`.
pub struct MbElement(MElement);

/// Opaque endomorphism of `M_n`.
pub struct MbEndo(Endo);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(MbStatus, String);

impl From<MetabelianError> for Failure {
    fn from(e: MetabelianError) -> Self {
        let status = match e {
            MetabelianError::Parse(_) => MbStatus::Parse,
            _ => MbStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<EndoError> for Failure {
    fn from(e: EndoError) -> Self {
        let status = match &e {
            EndoError::Metabelian(MetabelianError::Parse(_)) | EndoError::Format(_) => {
                MbStatus::Parse
            }
            EndoError::NotAutomorphism(_) => MbStatus::NotAutomorphism,
            _ => MbStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(MbStatus::InvalidArgument, msg.into())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MbStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MbStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(MbStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MbStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(MbStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(MbStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| invalid("result contains a NUL byte"))?;
    put(out, c.into_raw())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer is owned by the library.
#[no_mangle]
pub extern "C" fn mb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a bracket expression such as `[x1,x2] + 2*x3` in rank `rank`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_element_parse(
    expr: *const c_char,
    rank: usize,
    out: *mut *mut MbElement,
) -> MbStatus {
    guard(|| {
        let f = parse_element(str_arg(expr)?, rank)?;
        put(out, Box::into_raw(Box::new(MbElement(f))))
    })
}

/// # Safety
/// `e` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn mb_element_free(e: *mut MbElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Normal form as text (linear part and Fox row).
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_element_to_string(
    e: *const MbElement,
    out: *mut *mut c_char,
) -> MbStatus {
    guard(|| put_string(out, handle(e)?.0.to_string()))
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_element_is_derived(e: *const MbElement, out: *mut bool) -> MbStatus {
    guard(|| put(out, handle(e)?.0.is_derived()))
}

/// # Safety
/// `a`, `b` must be live handles of equal rank; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_element_bracket(
    a: *const MbElement,
    b: *const MbElement,
    out: *mut *mut MbElement,
) -> MbStatus {
    guard(|| {
        let c = handle(a)?.0.bracket(&handle(b)?.0)?;
        put(out, Box::into_raw(Box::new(MbElement(c))))
    })
}

fn boxed_endo(phi: Endo) -> *mut MbEndo {
    Box::into_raw(Box::new(MbEndo(phi)))
}

/// Parses semicolon-separated images, e.g. `x1 + [x2,x3]; x2; x3`.
///
/// # Safety
/// `images` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_parse(
    images: *const c_char,
    rank: usize,
    out: *mut *mut MbEndo,
) -> MbStatus {
    guard(|| {
        if rank < 2 {
            return Err(invalid(format!("rank must be at least 2, got {rank}")));
        }
        let phi = EndoFile::from_inline(rank, str_arg(images)?).to_endo()?;
        put(out, boxed_endo(phi))
    })
}

/// Reads the JSON document `{"rank": n, "images": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_from_json(json: *const c_char, out: *mut *mut MbEndo) -> MbStatus {
    guard(|| {
        let phi = EndoFile::parse_json(str_arg(json)?)?.to_endo()?;
        put(out, boxed_endo(phi))
    })
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_to_json(e: *const MbEndo, out: *mut *mut c_char) -> MbStatus {
    guard(|| put_string(out, EndoFile::from_endo(&handle(e)?.0)?.to_json()))
}

/// # Safety
/// `e` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_free(e: *mut MbEndo) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// `phi o psi`: `x_i -> psi_i(phi_1, ..., phi_n)`.
///
/// # Safety
/// `phi`, `psi` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_compose(
    phi: *const MbEndo,
    psi: *const MbEndo,
    out: *mut *mut MbEndo,
) -> MbStatus {
    guard(|| {
        let c = handle(phi)?.0.compose(&handle(psi)?.0)?;
        put(out, boxed_endo(c))
    })
}

/// Verified inverse. Returns `NotAutomorphism` (with the reason in
/// [`mb_last_error`]) when there is none.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_inverse(e: *const MbEndo, out: *mut *mut MbEndo) -> MbStatus {
    guard(|| {
        let inv = handle(e)?.0.inverse()?;
        put(out, boxed_endo(inv))
    })
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_is_identity(e: *const MbEndo, out: *mut bool) -> MbStatus {
    guard(|| put(out, handle(e)?.0.is_identity()))
}

/// Jacobian as `{"rank": n, "rows": [[...], ...]}`.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_jacobian_json(e: *const MbEndo, out: *mut *mut c_char) -> MbStatus {
    guard(|| {
        let view = JacobianView::new(&handle(e)?.0.jacobian());
        put_string(out, serde_json::to_string(&view).expect("plain data serializes"))
    })
}

/// Filtration level; `-1` stands for the identity (every level).
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_endo_iaut_level(e: *const MbEndo, out: *mut i64) -> MbStatus {
    guard(|| {
        let lvl = match handle(e)?.0.iaut_level() {
            FiltrationLevel::Finite(i) => i64::from(i),
            FiltrationLevel::Infinite => -1,
        };
        put(out, lvl)
    })
}

/// Dyadic elimination report for `factors` factors, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_replay_bn(factors: usize, out: *mut *mut c_char) -> MbStatus {
    guard(|| {
        let rep = residual_check(factors).map_err(|e| invalid(e.to_string()))?;
        put_string(out, rep.to_json())
    })
}

/// Fox-derivative report for rank `rank`, as JSON; `witness` also runs the
/// correction search.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mb_replay_oe(rank: usize, witness: bool, out: *mut *mut c_char) -> MbStatus {
    guard(|| {
        let rep = oe_replay(rank, witness).map_err(|e| invalid(e.to_string()))?;
        put_string(out, rep.to_json())
    })
}
