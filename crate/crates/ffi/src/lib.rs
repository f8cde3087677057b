//! C ABI for `sepflux`.
//!
//! Surfaces and words are opaque heap handles created by `sf_*_parse` /
//! `sf_surface_from_json` and released with the matching `*_free`. Every
//! fallible call returns an [`SfStatus`]; on failure a message for the calling
//! thread is available from [`sf_last_error_message`]. Outputs are written
//! only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sepflux::cli::document::parse_surface;
use sepflux::cli::syntax::{format_word, parse_word_on};
use sepflux::{engine, homology, Error, MappingWord, SeparatingClass, SurfaceSpec};

/// Status codes. Values 2 through 6 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    /// Malformed surface document or word.
    Parse = 2,
    /// A surface, curve or generator invariant does not hold.
    Invariant = 3,
    /// The surface is outside the supported hypothesis (finite type, too few genus ends).
    Hypothesis = 4,
    /// The class is unknown, zero, not simple, or has the wrong dimension.
    BadClass = 5,
    /// An internal consistency check failed.
    Internal = 6,
    NullPointer = 7,
    BufferTooSmall = 8,
    InvalidUtf8 = 9,
    Panic = 10,
}

/// Opaque surface handle.
pub struct SfSurface(SurfaceSpec);

/// Opaque mapping-class word handle.
pub struct SfWord(MappingWord);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SfStatus {
    match e.exit_code() {
        2 => SfStatus::Parse,
        3 => SfStatus::Invariant,
        4 => SfStatus::Hypothesis,
        5 => SfStatus::BadClass,
        _ => SfStatus::Internal,
    }
}

struct Fail(SfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SfStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SfStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside sepflux".into());
            SfStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Message describing the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse a JSON surface document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_from_json(json: *const c_char, out_surface: *mut *mut SfSurface) -> SfStatus {
    guard(|| {
        let slot = out(out_surface, "out_surface")?;
        let surface = parse_surface(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(SfSurface(surface)));
        Ok(())
    })
}

/// # Safety
/// `surface` must be null or a handle from `sf_surface_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_free(surface: *mut SfSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Number of arms (ends accumulated by genus) of the surface.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_arm_count(surface: *const SfSurface, out_count: *mut usize) -> SfStatus {
    guard(|| {
        *out(out_count, "out_count")? = borrow(surface, "surface")?.0.arm_count();
        Ok(())
    })
}

/// Parse a word such as `S(1,2)^-1*T(P={e1}; l=2; h=0)` on `surface`.
///
/// # Safety
/// `surface` must be a live handle, `src` NUL-terminated, `out_word` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_word_parse(
    surface: *const SfSurface,
    src: *const c_char,
    out_word: *mut *mut SfWord,
) -> SfStatus {
    guard(|| {
        let slot = out(out_word, "out_word")?;
        let w = parse_word_on(&borrow(surface, "surface")?.0, text(src, "src")?)?;
        *slot = Box::into_raw(Box::new(SfWord(w)));
        Ok(())
    })
}

/// # Safety
/// `word` must be null or a live word handle.
#[no_mangle]
pub unsafe extern "C" fn sf_word_free(word: *mut SfWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Render a word in the parser's syntax. Release the result with `sf_string_free`.
///
/// # Safety
/// Handles must be live; `out_str` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_word_to_string(
    surface: *const SfSurface,
    word: *const SfWord,
    out_str: *mut *mut c_char,
) -> SfStatus {
    guard(|| {
        let slot = out(out_str, "out_str")?;
        let s = format_word(&borrow(surface, "surface")?.0, &borrow(word, "word")?.0);
        *slot = CString::new(s)
            .map_err(|e| Fail(SfStatus::Internal, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Rank of the first homology of the mapping class group (needs infinite
/// genus or finite genus at least 2).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_h1_rank(surface: *const SfSurface, out_rank: *mut usize) -> SfStatus {
    guard(|| {
        let slot = out(out_rank, "out_rank")?;
        *slot = engine::h1_rank(&borrow(surface, "surface")?.0)?;
        Ok(())
    })
}

/// Rank of the separating homology of the filled surface.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_sep_rank(surface: *const SfSurface, out_rank: *mut usize) -> SfStatus {
    guard(|| {
        *out(out_rank, "out_rank")? = homology::sep_rank(&borrow(surface, "surface")?.0);
        Ok(())
    })
}

/// Flux of `word` through the class with coordinates `coords[0..len]` in the
/// standard basis (`len` must be the arm count minus one).
///
/// # Safety
/// `coords` must point to `len` readable values (may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn sf_phi(
    surface: *const SfSurface,
    coords: *const i64,
    len: usize,
    word: *const SfWord,
    out_value: *mut i64,
) -> SfStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let s = &borrow(surface, "surface")?.0;
        let coords = if len == 0 {
            Vec::new()
        } else if coords.is_null() {
            return Err(null("coords"));
        } else {
            std::slice::from_raw_parts(coords, len).to_vec()
        };
        let v = SeparatingClass::new(s.arm_count(), coords)?;
        *slot = engine::phi(s, &v, &borrow(word, "word")?.0)?;
        Ok(())
    })
}

/// Flux vector of `word` against the standard basis. `*out_len` receives the
/// vector length; if `cap` is smaller, nothing is written to `buf` and
/// `SF_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `buf` must have room for `cap` values (may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sf_project_to_a(
    surface: *const SfSurface,
    word: *const SfWord,
    buf: *mut i64,
    cap: usize,
    out_len: *mut usize,
) -> SfStatus {
    guard(|| {
        let len_slot = out(out_len, "out_len")?;
        let flux = engine::project_to_a(&borrow(surface, "surface")?.0, &borrow(word, "word")?.0)?;
        let values = flux.values();
        *len_slot = values.len();
        if cap < values.len() {
            return Err(Fail(
                SfStatus::BufferTooSmall,
                format!("buffer holds {cap} values, {} needed", values.len()),
            ));
        }
        if !values.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        }
        Ok(())
    })
}

/// Split `word = residual * kappa` where `kappa` is a product of dual-basis
/// shifts carrying all of the flux. Both outputs are new handles.
///
/// # Safety
/// Handles must be live; both out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn sf_factor(
    surface: *const SfSurface,
    word: *const SfWord,
    out_kappa: *mut *mut SfWord,
    out_residual: *mut *mut SfWord,
) -> SfStatus {
    guard(|| {
        let kappa_slot = out(out_kappa, "out_kappa")?;
        let residual_slot = out(out_residual, "out_residual")?;
        let f = engine::factor(&borrow(surface, "surface")?.0, &borrow(word, "word")?.0)?;
        *kappa_slot = Box::into_raw(Box::new(SfWord(f.kappa)));
        *residual_slot = Box::into_raw(Box::new(SfWord(f.residual)));
        Ok(())
    })
}

/// Whether `word` has vanishing flux, i.e. passes the closure test.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_in_closure(
    surface: *const SfSurface,
    word: *const SfWord,
    out_flag: *mut bool,
) -> SfStatus {
    guard(|| {
        let slot = out(out_flag, "out_flag")?;
        *slot = engine::in_closure_test(&borrow(surface, "surface")?.0, &borrow(word, "word")?.0)?;
        Ok(())
    })
}
