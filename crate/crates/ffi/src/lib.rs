//! C ABI for `pcol-core`.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free` function. Every fallible call returns a [`PcolStatus`];
//! on failure, [`pcol_last_error`] describes the most recent error on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pcol_core::constructions::{
    construct_bc_a, construct_boolean_bu, hamming_cosets, hamming_union_coloring, rm_coloring,
};
use pcol_core::io::{read_pcol_file, write_pcol_file, Encoding};
use pcol_core::report::{verify_coloring, VerificationReport, VerifyOptions};
use pcol_core::{Coloring, Error, Guards};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcolStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    TooLarge = 3,
    Parse = 4,
    Io = 5,
    ConstructionFailed = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A coloring of H(n,q).
pub struct PcolColoring {
    inner: Coloring,
}

/// The outcome of verifying a coloring.
pub struct PcolReport {
    inner: VerificationReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PcolStatus {
    match e {
        Error::TooLarge { .. } | Error::Overflow(_) => PcolStatus::TooLarge,
        Error::Parse { .. } | Error::LengthMismatch { .. } | Error::ColorOutOfRange { .. } => {
            PcolStatus::Parse
        }
        Error::Io(_) => PcolStatus::Io,
        Error::Inconsistent(_)
        | Error::NotUniform(_)
        | Error::NotEssential { .. }
        | Error::BadOuterColoring(_) => PcolStatus::ConstructionFailed,
        _ => PcolStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> Result<(), (PcolStatus, String)>) -> PcolStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PcolStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PcolStatus::Panic
        }
    }
}

fn lift<T>(r: pcol_core::Result<T>) -> Result<T, (PcolStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (PcolStatus, String) {
    (PcolStatus::NullPointer, format!("{name} is null"))
}

unsafe fn emit_coloring(out: *mut *mut PcolColoring, c: Coloring) {
    *out = Box::into_raw(Box::new(PcolColoring { inner: c }));
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a str, (PcolStatus, String)> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map_err(|_| (PcolStatus::InvalidArgument, "path is not UTF-8".into()))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pcol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Reed–Muller-like coloring of H(q^s, q) with q^(s+1) colors.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_construct_rm(q: u64, s: u32, out: *mut *mut PcolColoring) -> PcolStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        emit_coloring(out, lift(rm_coloring(q, s))?);
        Ok(())
    })
}

/// Union of `count` consecutive Hamming-code cosets, starting at `start`, in H(2^m - 1, 2).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_construct_hamming_union(
    m: u32,
    start: u32,
    count: u32,
    out: *mut *mut PcolColoring,
) -> PcolStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let part = lift(hamming_cosets(m))?;
        emit_coloring(out, lift(hamming_union_coloring(&part, start, count))?);
        Ok(())
    })
}

/// Perfect 2-coloring with quotient [[n-b, b], [c, n-c]] in which every argument is essential.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_construct_bc(b: u64, c: u64, out: *mut *mut PcolColoring) -> PcolStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = lift(construct_bc_a(b, c, &Guards::from_env()))?;
        emit_coloring(out, r.coloring().clone());
        Ok(())
    })
}

/// Boolean function of density r/s and degree e*s/2 in which every variable is essential.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_construct_boolean(
    r: u64,
    s: u64,
    e: u64,
    out: *mut *mut PcolColoring,
) -> PcolStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = lift(construct_boolean_bu(r, s, e, &Guards::from_env()))?;
        emit_coloring(out, f.function);
        Ok(())
    })
}

/// Read a text or binary PCOL file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_read_file(path: *const c_char, out: *mut *mut PcolColoring) -> PcolStatus {
    guarded(|| {
        let path = path_arg(path)?;
        if out.is_null() {
            return Err(null("out"));
        }
        emit_coloring(out, lift(read_pcol_file(path))?.0);
        Ok(())
    })
}

/// Write a coloring to `path`, as binary when `binary` is nonzero.
///
/// # Safety
/// `c` must be a live handle and `path` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pcol_write_file(
    c: *const PcolColoring,
    path: *const c_char,
    binary: i32,
) -> PcolStatus {
    guarded(|| {
        let c = c.as_ref().ok_or_else(|| null("coloring"))?;
        let path = path_arg(path)?;
        let enc = if binary != 0 {
            Encoding::Binary
        } else {
            Encoding::Text
        };
        lift(write_pcol_file(&c.inner, path, enc, &Guards::from_env()))
    })
}

/// Write q, n and k of a coloring. Any of the out pointers may be null.
///
/// # Safety
/// `c` must be a live handle; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcol_coloring_params(
    c: *const PcolColoring,
    q: *mut u32,
    n: *mut u64,
    k: *mut u32,
) -> PcolStatus {
    guarded(|| {
        let c = c.as_ref().ok_or_else(|| null("coloring"))?;
        if !q.is_null() {
            *q = c.inner.q();
        }
        if !n.is_null() {
            *n = c.inner.n() as u64;
        }
        if !k.is_null() {
            *k = c.inner.k();
        }
        Ok(())
    })
}

/// Color of the word `word[0..len]`, position 0 first. Works for any n,
/// including colorings too large to tabulate.
///
/// # Safety
/// `c` must be a live handle, `word` readable for `len` bytes, `color` writable.
#[no_mangle]
pub unsafe extern "C" fn pcol_coloring_eval(
    c: *const PcolColoring,
    word: *const u8,
    len: usize,
    color: *mut u32,
) -> PcolStatus {
    guarded(|| {
        let c = c.as_ref().ok_or_else(|| null("coloring"))?;
        if word.is_null() || color.is_null() {
            return Err(null("word or color"));
        }
        let word = std::slice::from_raw_parts(word, len);
        if len != c.inner.n() {
            return Err((
                PcolStatus::InvalidArgument,
                format!("word has length {len}, expected {}", c.inner.n()),
            ));
        }
        if let Some(&d) = word.iter().find(|&&d| d as u32 >= c.inner.q()) {
            return Err((
                PcolStatus::InvalidArgument,
                format!("symbol {d} is not below q = {}", c.inner.q()),
            ));
        }
        *color = c.inner.eval_word(word);
        Ok(())
    })
}

/// Release a coloring. Null is ignored.
///
/// # Safety
/// `c` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcol_coloring_free(c: *mut PcolColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Exhaustively verify a coloring. `threads == 0` uses every core.
///
/// # Safety
/// `c` must be a live handle and `out` valid for one handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_verify(
    c: *const PcolColoring,
    essential: i32,
    degree: i32,
    threads: u32,
    out: *mut *mut PcolReport,
) -> PcolStatus {
    guarded(|| {
        let c = c.as_ref().ok_or_else(|| null("coloring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let options = VerifyOptions {
            essential: essential != 0,
            degree: degree != 0,
            expected_quotient: None,
        };
        let guards = Guards::from_env();
        let run = || verify_coloring(&c.inner, &options, None, &guards);
        let report = if threads == 0 {
            run()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads as usize)
                .build()
                .map_err(|e| (PcolStatus::InvalidArgument, e.to_string()))?;
            pool.install(run)
        };
        let inner = lift(report)?;
        let json = CString::new(inner.to_json()).expect("JSON has no nul");
        *out = Box::into_raw(Box::new(PcolReport { inner, json }));
        Ok(())
    })
}

/// 1 if the coloring is perfect, 0 otherwise or when `r` is null.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_report_perfect(r: *const PcolReport) -> i32 {
    r.as_ref().map_or(0, |r| r.inner.perfect as i32)
}

/// Copy the k-by-k quotient matrix, row-major, into `buf` of `cap` entries
/// and write k to `k_out`. Fails with `InvalidArgument` if the coloring is not
/// perfect and `BufferTooSmall` (after setting `k_out`) if `cap < k*k`.
///
/// # Safety
/// `r` must be a live handle; `buf` writable for `cap` entries; `k_out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcol_report_quotient(
    r: *const PcolReport,
    buf: *mut u64,
    cap: usize,
    k_out: *mut usize,
) -> PcolStatus {
    guarded(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if k_out.is_null() {
            return Err(null("k_out"));
        }
        let rows = r
            .inner
            .quotient
            .as_ref()
            .ok_or((PcolStatus::InvalidArgument, "coloring is not perfect".into()))?;
        let k = rows.len();
        *k_out = k;
        if cap < k * k || buf.is_null() {
            return Err((
                PcolStatus::BufferTooSmall,
                format!("quotient needs {} entries", k * k),
            ));
        }
        let out = std::slice::from_raw_parts_mut(buf, k * k);
        for (dst, src) in out.chunks_exact_mut(k).zip(rows) {
            dst.copy_from_slice(src);
        }
        Ok(())
    })
}

/// The report as JSON. Owned by the report and valid until it is freed.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pcol_report_json(r: *const PcolReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Release a report. Null is ignored.
///
/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcol_report_free(r: *mut PcolReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
