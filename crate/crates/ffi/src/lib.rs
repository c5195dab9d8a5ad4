//! C interface. Algebras live behind opaque handles; every fallible call
//! returns a `SplithomStatus` and records a message retrievable with
//! `splithom_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use splithom::catalog;
use splithom::cli::{self, ExitCategory, Outcome, Session};

/// Status codes. The first six match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplithomStatus {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    Validation = 3,
    NotSplit = 4,
    Internal = 5,
    NullPointer = 6,
    Panic = 7,
}

impl From<ExitCategory> for SplithomStatus {
    fn from(c: ExitCategory) -> Self {
        match c {
            ExitCategory::Ok => SplithomStatus::Ok,
            ExitCategory::Usage => SplithomStatus::Usage,
            ExitCategory::Parse => SplithomStatus::Parse,
            ExitCategory::Validation => SplithomStatus::Validation,
            ExitCategory::NotSplit => SplithomStatus::NotSplit,
            ExitCategory::Internal => SplithomStatus::Internal,
        }
    }
}

/// Opaque algebra handle.
pub struct SplithomAlgebra {
    session: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> SplithomStatus) -> SplithomStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("panic inside splithom");
        SplithomStatus::Panic
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SplithomStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(SplithomStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        SplithomStatus::Usage
    })
}

fn emit_handle(session: Session, out: *mut *mut SplithomAlgebra) -> SplithomStatus {
    let handle = Box::new(SplithomAlgebra { session });
    // SAFETY: callers checked `out` for null.
    unsafe { *out = Box::into_raw(handle) };
    SplithomStatus::Ok
}

/// Parses an algebra document. On success `*out` owns a handle to be
/// released with `splithom_algebra_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splithom_algebra_from_json(
    json: *const c_char,
    non_regular: bool,
    out: *mut *mut SplithomAlgebra,
) -> SplithomStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return SplithomStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Session::from_json(text, non_regular) {
            Ok(session) => emit_handle(session, out),
            Err(e) => {
                set_error(e.to_string());
                SplithomStatus::Parse
            }
        }
    })
}

/// Builds a catalog fixture together with its MAGSA. `param` 0 selects the
/// entry's default.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splithom_algebra_from_catalog(
    name: *const c_char,
    param: u32,
    out: *mut *mut SplithomAlgebra,
) -> SplithomStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return SplithomStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match catalog::build(name, (param != 0).then_some(param)) {
            Ok((fx, _)) => emit_handle(Session::new(fx.algebra, Some(fx.magsa), false), out),
            Err(e) => {
                set_error(e.to_string());
                SplithomStatus::Usage
            }
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn splithom_algebra_free(alg: *mut SplithomAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn splithom_algebra_dim(alg: *const SplithomAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.session.algebra.dim())
}

/// Replaces the MAGSA by the span of the given basis vectors.
///
/// # Safety
/// `alg` must be a live handle; `indices` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn splithom_algebra_set_magsa(
    alg: *mut SplithomAlgebra,
    indices: *const usize,
    len: usize,
) -> SplithomStatus {
    guard(|| {
        let Some(a) = alg.as_mut() else {
            set_error("null handle");
            return SplithomStatus::NullPointer;
        };
        if indices.is_null() && len > 0 {
            set_error("null index array");
            return SplithomStatus::NullPointer;
        }
        let idx = if len == 0 { &[][..] } else { std::slice::from_raw_parts(indices, len) };
        match a.session.clone().with_magsa_indices(idx) {
            Ok(s) => {
                a.session = s;
                SplithomStatus::Ok
            }
            Err(e) => {
                set_error(e);
                SplithomStatus::Usage
            }
        }
    })
}

/// Checks the axioms; `*passed` receives the result.
///
/// # Safety
/// `alg` must be a live handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splithom_validate(alg: *const SplithomAlgebra, passed: *mut bool) -> SplithomStatus {
    guard(|| {
        let (Some(a), false) = (alg.as_ref(), passed.is_null()) else {
            set_error("null argument");
            return SplithomStatus::NullPointer;
        };
        *passed = cli::validate_command(&a.session).category == ExitCategory::Ok;
        SplithomStatus::Ok
    })
}

/// Runs one of `validate`, `roots`, `connections`, `decompose`,
/// `simplicity` or `components` and stores its JSON report in `*out`, even
/// when the returned status is not `OK`. Free it with `splithom_string_free`.
///
/// # Safety
/// `alg` must be a live handle, `command` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn splithom_report_json(
    alg: *const SplithomAlgebra,
    command: *const c_char,
    out: *mut *mut c_char,
) -> SplithomStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return SplithomStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(a) = alg.as_ref() else {
            set_error("null handle");
            return SplithomStatus::NullPointer;
        };
        let command = match read_str(command) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let s = &a.session;
        let outcome: Outcome = match command {
            "validate" => cli::validate_command(s),
            "roots" => cli::roots_command(s),
            "connections" => cli::connections_command(s, None, true),
            "decompose" => cli::decompose_command(s),
            "simplicity" => cli::simplicity_command(s),
            "components" => cli::components_command(s),
            other => {
                set_error(format!("unknown command {other:?}"));
                return SplithomStatus::Usage;
            }
        };
        if let Some(msg) = outcome.report.get("error").and_then(|v| v.as_str()) {
            set_error(msg);
        }
        let text = serde_json::to_string(&outcome.report).expect("reports serialize");
        *out = CString::new(text).expect("JSON has no NUL").into_raw();
        outcome.category.into()
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn splithom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library.
#[no_mangle]
pub extern "C" fn splithom_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
