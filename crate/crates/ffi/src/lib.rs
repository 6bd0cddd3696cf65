//! C ABI for trispcl.
//!
//! Objects cross the boundary as opaque handles created from JSON in the
//! formats the command-line tool reads. Every call returns a
//! [`TrispclStatus`]; on failure the message is available from
//! [`trispcl_last_error`] on the same thread until the next call. Strings
//! returned through `char **` belong to the caller and are released with
//! [`trispcl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trispcl::accat::AcyclicCategory;
use trispcl::closure::{certify, verify_trisp_closure_map};
use trispcl::formats::{read_input, read_map, trisp_json, Input, MapInput};
use trispcl::graphs::{pipeline_category_quotient, pipeline_trisp_quotient, PipelineOptions};
use trispcl::nerve::nerve;
use trispcl::trisp::Trisp;
use trispcl::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrispclStatus {
    Ok = 0,
    /// A required pointer was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be parsed or is structurally malformed.
    InputError = 3,
    /// A mathematical precondition failed.
    Failure = 4,
    /// The input was of the wrong kind, e.g. a trisp where a category was
    /// expected.
    WrongKind = 5,
    /// A Rust panic was caught; this is a bug.
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrispclPipeline {
    /// Through the quotient trisp of the barycentric subdivision.
    Trisp = 0,
    /// Through the quotient category of the face poset.
    Category = 1,
}

/// Opaque acyclic category.
pub struct TrispclCategory(AcyclicCategory);

/// Opaque trisp.
pub struct TrispclTrisp(Trisp);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> TrispclStatus {
    match e {
        Error::Malformed(_) | Error::Json(_) | Error::Io(_) => TrispclStatus::InputError,
        Error::Stage { source, .. } => status_of(source),
        _ => TrispclStatus::Failure,
    }
}

/// Runs `f` with panics caught and errors recorded.
fn guard(f: impl FnOnce() -> Result<(), (TrispclStatus, String)>) -> TrispclStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrispclStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside trispcl");
            TrispclStatus::Panic
        }
    }
}

fn lib<T>(r: trispcl::Result<T>) -> Result<T, (TrispclStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TrispclStatus, String) {
    (TrispclStatus::NullArgument, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TrispclStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TrispclStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Result<(), (TrispclStatus, String)> {
    let c = CString::new(s).map_err(|_| (TrispclStatus::Failure, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// The message of the last failed call on this thread, or null. The
/// pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn trispcl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trispcl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a category or poset file.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trispcl_category_from_json(
    json: *const c_char,
    out: *mut *mut TrispclCategory,
) -> TrispclStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        match lib(read_input(str_arg(json, "json")?))? {
            Input::Category(c) => {
                *out = Box::into_raw(Box::new(TrispclCategory(c)));
                Ok(())
            }
            Input::Trisp(_) => Err((TrispclStatus::WrongKind, "expected a category".into())),
        }
    })
}

/// # Safety
/// `c` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn trispcl_category_free(c: *mut TrispclCategory) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Object and morphism counts (identities excluded).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trispcl_category_size(
    c: *const TrispclCategory,
    objects: *mut usize,
    morphisms: *mut usize,
) -> TrispclStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("category"))?;
        if objects.is_null() || morphisms.is_null() {
            return Err(null("out"));
        }
        *objects = c.0.object_count();
        *morphisms = c.0.morphism_count();
        Ok(())
    })
}

/// Sets `valid` to whether the category axioms hold and acyclicity holds.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trispcl_category_validate(
    c: *const TrispclCategory,
    valid: *mut bool,
) -> TrispclStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("category"))?;
        let valid = valid.as_mut().ok_or_else(|| null("valid"))?;
        *valid = c.0.validate().is_valid();
        Ok(())
    })
}

/// The nerve of a valid category.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trispcl_nerve(
    c: *const TrispclCategory,
    out: *mut *mut TrispclTrisp,
) -> TrispclStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("category"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = lib(nerve(&c.0))?;
        *out = Box::into_raw(Box::new(TrispclTrisp(n.trisp)));
        Ok(())
    })
}

/// Parses a trisp file.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trispcl_trisp_from_json(
    json: *const c_char,
    out: *mut *mut TrispclTrisp,
) -> TrispclStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        match lib(read_input(str_arg(json, "json")?))? {
            Input::Trisp(t) => {
                *out = Box::into_raw(Box::new(TrispclTrisp(t)));
                Ok(())
            }
            Input::Category(_) => Err((TrispclStatus::WrongKind, "expected a trisp".into())),
        }
    })
}

/// # Safety
/// `t` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn trispcl_trisp_free(t: *mut TrispclTrisp) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of `d`-simplices; 0 above the top dimension.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trispcl_trisp_count(
    t: *const TrispclTrisp,
    d: usize,
    out: *mut usize,
) -> TrispclStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trisp"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = t.0.counts().get(d).copied().unwrap_or(0);
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trispcl_trisp_euler_characteristic(
    t: *const TrispclTrisp,
    out: *mut i64,
) -> TrispclStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trisp"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = t.0.euler_characteristic();
        Ok(())
    })
}

/// The trisp in the JSON file format.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trispcl_trisp_to_json(
    t: *const TrispclTrisp,
    out: *mut *mut c_char,
) -> TrispclStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trisp"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        out_string(out, trisp_json(&t.0).to_string())
    })
}

fn closure_map(json: &str) -> Result<trispcl::closure::TrispClosureMap, (TrispclStatus, String)> {
    match lib(read_map(json))? {
        MapInput::Trisp(c) => Ok(c),
        MapInput::Operator(_) => Err((
            TrispclStatus::WrongKind,
            "expected a trisp closure map".into(),
        )),
    }
}

/// Checks a closure map given as JSON; `holds` reports the outcome.
///
/// # Safety
/// All pointers must be valid and `map_json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn trispcl_closure_verify(
    t: *const TrispclTrisp,
    map_json: *const c_char,
    holds: *mut bool,
) -> TrispclStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trisp"))?;
        let holds = holds.as_mut().ok_or_else(|| null("holds"))?;
        let c = closure_map(str_arg(map_json, "map_json")?)?;
        *holds = lib(verify_trisp_closure_map(&t.0, &c))?.holds;
        Ok(())
    })
}

/// Collapse certificate of a verified closure map, as JSON.
///
/// # Safety
/// All pointers must be valid and `map_json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn trispcl_closure_certify(
    t: *const TrispclTrisp,
    map_json: *const c_char,
    out: *mut *mut c_char,
) -> TrispclStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trisp"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = closure_map(str_arg(map_json, "map_json")?)?;
        let cert = lib(certify(&t.0, &c))?;
        let text =
            serde_json::to_string(&cert).map_err(|e| (TrispclStatus::Failure, e.to_string()))?;
        out_string(out, text)
    })
}

/// Runs a graph-complex pipeline for `n` in 3..=5 and returns its report as
/// JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trispcl_dgn_pipeline(
    n: usize,
    pipeline: TrispclPipeline,
    out: *mut *mut c_char,
) -> TrispclStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if !(3..=5).contains(&n) {
            return Err((
                TrispclStatus::InputError,
                format!("n = {n} is outside 3..=5"),
            ));
        }
        let options = PipelineOptions::default();
        let report = lib(match pipeline {
            TrispclPipeline::Trisp => pipeline_trisp_quotient(n, options),
            TrispclPipeline::Category => pipeline_category_quotient(n, options),
        })?;
        let text =
            serde_json::to_string(&report).map_err(|e| (TrispclStatus::Failure, e.to_string()))?;
        out_string(out, text)
    })
}
