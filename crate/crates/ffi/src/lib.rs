//! C interface to `paranil`.
//!
//! Every function returns a [`ParanilStatus`]. On anything other than
//! `PARANIL_STATUS_OK` the message is available from [`paranil_last_error`]
//! until the next call on the same thread. Strings handed out by the library
//! must be released with [`paranil_string_free`], groups with
//! [`paranil_group_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use paranil::cli::{execute, parse_file};
use paranil::nilpotent::{lower_central_series, tau};
use paranil::pcgroup::{check_consistency, PcPresentation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParanilStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotFound = 4,
    Computation = 5,
    Panic = 6,
}

/// Opaque handle to a polycyclic presentation.
pub struct ParanilGroup {
    name: String,
    presentation: PcPresentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(ParanilStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ParanilStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ParanilStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            ParanilStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ParanilStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(ParanilStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn group_arg<'a>(g: *const ParanilGroup) -> Result<&'a ParanilGroup, Failure> {
    g.as_ref().ok_or_else(|| null("group"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn computation(e: paranil::Error) -> Failure {
    Failure(ParanilStatus::Computation, e.to_string())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn paranil_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn paranil_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a group file and returns the group called `name`, or the last group
/// when `name` is null.
///
/// # Safety
/// `text` and a non-null `name` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_from_text(
    text: *const c_char,
    name: *const c_char,
    out: *mut *mut ParanilGroup,
) -> ParanilStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let text = str_arg(text, "text")?;
        let file = parse_file(text).map_err(|e| Failure(ParanilStatus::Parse, e.to_string()))?;
        let g = if name.is_null() {
            file.last_group().ok_or_else(|| Failure(ParanilStatus::NotFound, "file defines no group".into()))?
        } else {
            let n = str_arg(name, "name")?;
            file.group(n).ok_or_else(|| Failure(ParanilStatus::NotFound, format!("no group named '{n}'")))?
        };
        let handle = Box::new(ParanilGroup { name: g.name.clone(), presentation: g.presentation.clone() });
        out.write(Box::into_raw(handle));
        Ok(())
    })
}

/// # Safety
/// `group` must come from [`paranil_group_from_text`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_free(group: *mut ParanilGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_name(group: *const ParanilGroup, out: *mut *mut c_char) -> ParanilStatus {
    guard(|| write_out(out, owned_string(group_arg(group)?.name.clone()), "out"))
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_generator_count(group: *const ParanilGroup, out: *mut usize) -> ParanilStatus {
    guard(|| write_out(out, group_arg(group)?.presentation.num_gens(), "out"))
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_hirsch_length(group: *const ParanilGroup, out: *mut usize) -> ParanilStatus {
    guard(|| write_out(out, group_arg(group)?.presentation.hirsch_length(), "out"))
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_is_consistent(group: *const ParanilGroup, out: *mut bool) -> ParanilStatus {
    guard(|| write_out(out, check_consistency(&group_arg(group)?.presentation).passed(), "out"))
}

/// The torsion primes of the lower central steps, as `{}` or `{2, 3}`.
///
/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_tau(group: *const ParanilGroup, out: *mut *mut c_char) -> ParanilStatus {
    guard(|| {
        let t = tau(&group_arg(group)?.presentation).map_err(computation)?;
        write_out(out, owned_string(t.to_string()), "out")
    })
}

/// Invariants of `γ_i/γ_{i+1}` for `i = 1..=depth`, one per line.
///
/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_group_lower_central_steps(
    group: *const ParanilGroup,
    depth: usize,
    out: *mut *mut c_char,
) -> ParanilStatus {
    guard(|| {
        let t = lower_central_series(&group_arg(group)?.presentation, depth).map_err(computation)?;
        let lines: String = (1..=t.depth()).map(|i| format!("{}\n", t.step(i))).collect();
        write_out(out, owned_string(lines), "out")
    })
}

/// Runs the command-line tool in process. `argv[0]` is the program name. The
/// tool's exit code (0 pass, 1 fail, 2 error) goes to `exit_code`, its output to
/// `report`; the status is `OK` whenever the tool ran.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn paranil_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    report: *mut *mut c_char,
) -> ParanilStatus {
    guard(|| {
        if exit_code.is_null() || report.is_null() {
            return Err(null("out"));
        }
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = Vec::with_capacity(argc.max(0) as usize);
        for i in 0..argc.max(0) as usize {
            args.push(str_arg(*argv.add(i), "argv entry")?.to_string());
        }
        if args.is_empty() {
            args.push("paranil".into());
        }
        let (code, text) = execute(args);
        exit_code.write(code);
        report.write(owned_string(text));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn paranil_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
