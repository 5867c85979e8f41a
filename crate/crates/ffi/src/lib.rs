//! C ABI over `sdom-core`.
//!
//! Every function returns an [`SdomStatus`]; results are written through out
//! pointers. Sets and labelings are opaque handles owned by the caller and
//! released with their `*_free` function. Strings returned by the library are
//! released with [`sdom_string_free`]. On failure a description is available
//! from [`sdom_last_error`] on the same thread.
//!
//! Words cross the boundary as arrays of `t` one-based labels.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sdom_core::domination::{
    double_roman_labeling_from_d, formula, is_dominating, is_double_roman, is_roman,
    roman_labeling_from_d,
};
use sdom_core::graph::are_adjacent;
use sdom_core::solver::solve;
use sdom_core::{
    build_d, build_d_star, Error, GraphParams, Labeling, Limits, Mode, SetKind, SolverConfig,
    Variant, VertexSet, Word,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdomStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    Capacity = 3,
    Overflow = 4,
    Budget = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

// Selectors are plain integers so that an out-of-range value from C is an
// error rather than an invalid enum.
pub const SDOM_VARIANT_PLAIN: u32 = 0;
pub const SDOM_VARIANT_ROMAN: u32 = 1;
pub const SDOM_VARIANT_DOUBLE_ROMAN: u32 = 2;

pub const SDOM_MODE_ROMAN: u32 = 0;
pub const SDOM_MODE_DOUBLE_ROMAN: u32 = 1;

/// Opaque sorted vertex set.
pub struct SdomVertexSet {
    set: VertexSet,
    kind: SetKind,
}

/// Opaque sparse labeling.
pub struct SdomLabeling {
    labeling: Labeling,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(SdomStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Capacity { .. } => SdomStatus::Capacity,
            Error::Overflow(_) => SdomStatus::Overflow,
            Error::BudgetExhausted { .. } => SdomStatus::Budget,
            Error::DuplicateMember { .. } | Error::Construction(_) | Error::Internal(_) => {
                SdomStatus::Internal
            }
            _ => SdomStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SdomStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any failure and converts panics to `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SdomStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SdomStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside sdom".into());
            SdomStatus::Internal
        }
    }
}

fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: non-null, and the caller guarantees it points to writable storage.
    unsafe { out.write(value) };
    Ok(())
}

fn limits() -> Result<Limits, Fail> {
    Ok(Limits::from_env()?)
}

fn params(n: u32, t: u32) -> Result<GraphParams, Fail> {
    Ok(GraphParams::new(n, t)?)
}

/// # Safety
/// `labels` must be null or point to `g.t()` readable `u32`s.
unsafe fn read_word(g: &GraphParams, labels: *const u32) -> Result<Word, Fail> {
    if labels.is_null() {
        return Err(null("word"));
    }
    let slice = unsafe { std::slice::from_raw_parts(labels, g.word_len()) };
    let w = Word::new(slice.to_vec())?;
    g.check(&w)?;
    Ok(w)
}

fn to_c_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(SdomStatus::Internal, e.to_string()))?;
    write(out, c.into_raw())
}

fn variant(v: u32) -> Result<Variant, Fail> {
    match v {
        SDOM_VARIANT_PLAIN => Ok(Variant::Plain),
        SDOM_VARIANT_ROMAN => Ok(Variant::Roman),
        SDOM_VARIANT_DOUBLE_ROMAN => Ok(Variant::DoubleRoman),
        _ => Err(Fail(
            SdomStatus::InvalidArgument,
            format!("unknown variant {v}"),
        )),
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn sdom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sdom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Number of vertices `n^t`.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sdom_vertex_count(n: u32, t: u32, out: *mut u64) -> SdomStatus {
    guard(|| {
        let count = params(n, t)?.vertex_count()?;
        write(out, count as u64)
    })
}

/// Adjacency of two words of length `t`.
///
/// # Safety
/// `u` and `v` must point to `t` labels each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdom_are_adjacent(
    n: u32,
    t: u32,
    u: *const u32,
    v: *const u32,
    out: *mut bool,
) -> SdomStatus {
    guard(|| {
        let g = params(n, t)?;
        let (u, v) = unsafe { (read_word(&g, u)?, read_word(&g, v)?) };
        write(out, are_adjacent(&g, &u, &v)?)
    })
}

/// Closed-form gamma, gamma_R or gamma_dR. `Overflow` if it exceeds `u64`.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sdom_formula(n: u32, t: u32, which: u32, out: *mut u64) -> SdomStatus {
    guard(|| {
        let value = formula(&params(n, t)?, variant(which)?)?;
        let value = u64::try_from(value)
            .map_err(|_| Fail(SdomStatus::Overflow, format!("{value} exceeds u64")))?;
        write(out, value)
    })
}

/// Exact optimum by branch and bound (single-threaded, default solver cap).
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sdom_exact(
    n: u32,
    t: u32,
    which: u32,
    restrict_values: bool,
    out: *mut u64,
) -> SdomStatus {
    guard(|| {
        let cfg = SolverConfig::new(variant(which)?).restricted(restrict_values);
        write(out, solve(&params(n, t)?, &cfg)?.value)
    })
}

/// Builds `D_{n,t}`, or `D*_{n,t}` when `star` is true.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sdom_build_d(
    n: u32,
    t: u32,
    star: bool,
    out: *mut *mut SdomVertexSet,
) -> SdomStatus {
    guard(|| {
        let g = params(n, t)?;
        let lim = limits()?;
        let handle = if star {
            SdomVertexSet {
                set: build_d_star(&g, &lim)?,
                kind: SetKind::DStar,
            }
        } else {
            SdomVertexSet {
                set: build_d(&g, &lim)?,
                kind: SetKind::D,
            }
        };
        write(out, Box::into_raw(Box::new(handle)))
    })
}

fn set_ref<'a>(set: *const SdomVertexSet) -> Result<&'a SdomVertexSet, Fail> {
    // SAFETY: the caller passes a live handle from sdom_build_d or null.
    unsafe { set.as_ref() }.ok_or_else(|| null("set"))
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdom_vertex_set_len(
    set: *const SdomVertexSet,
    out: *mut usize,
) -> SdomStatus {
    guard(|| write(out, set_ref(set)?.set.len()))
}

/// Copies member `index` (lexicographic order) into `buf`, which must hold at
/// least `t` labels.
///
/// # Safety
/// `set` must be a live handle; `buf` must hold `buf_len` writable `u32`s.
#[no_mangle]
pub unsafe extern "C" fn sdom_vertex_set_word(
    set: *const SdomVertexSet,
    index: usize,
    buf: *mut u32,
    buf_len: usize,
) -> SdomStatus {
    guard(|| {
        let set = &set_ref(set)?.set;
        let word = set.members().get(index).ok_or_else(|| {
            Fail(
                SdomStatus::InvalidArgument,
                format!("index {index} out of range for {} members", set.len()),
            )
        })?;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        if buf_len < word.len() {
            return Err(Fail(
                SdomStatus::BufferTooSmall,
                format!("buffer holds {buf_len} labels, word needs {}", word.len()),
            ));
        }
        // SAFETY: checked non-null and large enough.
        unsafe { ptr::copy_nonoverlapping(word.labels().as_ptr(), buf, word.len()) };
        Ok(())
    })
}

/// Membership test for a word of length `t`.
///
/// # Safety
/// `set` must be a live handle; `word` must point to `t` labels.
#[no_mangle]
pub unsafe extern "C" fn sdom_vertex_set_contains(
    set: *const SdomVertexSet,
    word: *const u32,
    out: *mut bool,
) -> SdomStatus {
    guard(|| {
        let set = &set_ref(set)?.set;
        let w = unsafe { read_word(&set.params(), word)? };
        write(out, set.contains(&w))
    })
}

/// Whether the set dominates the whole graph.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdom_vertex_set_is_dominating(
    set: *const SdomVertexSet,
    out: *mut bool,
) -> SdomStatus {
    guard(|| {
        let set = &set_ref(set)?.set;
        write(out, is_dominating(&set.params(), set, &limits()?)?)
    })
}

/// JSON document for the set; free with `sdom_string_free`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdom_vertex_set_to_json(
    set: *const SdomVertexSet,
    out: *mut *mut c_char,
) -> SdomStatus {
    guard(|| {
        let h = set_ref(set)?;
        to_c_string(h.set.to_json(h.kind), out)
    })
}

/// # Safety
/// `set` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn sdom_vertex_set_free(set: *mut SdomVertexSet) {
    if !set.is_null() {
        drop(unsafe { Box::from_raw(set) });
    }
}

/// Roman or double Roman labeling derived from `D_{n,t}`.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sdom_labeling_from_d(
    n: u32,
    t: u32,
    mode: u32,
    out: *mut *mut SdomLabeling,
) -> SdomStatus {
    guard(|| {
        let g = params(n, t)?;
        let lim = limits()?;
        let labeling = match mode {
            SDOM_MODE_ROMAN => roman_labeling_from_d(&g, &lim)?,
            SDOM_MODE_DOUBLE_ROMAN => double_roman_labeling_from_d(&g, &lim)?,
            _ => {
                return Err(Fail(
                    SdomStatus::InvalidArgument,
                    format!("unknown mode {mode}"),
                ))
            }
        };
        write(out, Box::into_raw(Box::new(SdomLabeling { labeling })))
    })
}

fn labeling_ref<'a>(f: *const SdomLabeling) -> Result<&'a Labeling, Fail> {
    // SAFETY: the caller passes a live handle from sdom_labeling_from_d or null.
    unsafe { f.as_ref() }
        .map(|h| &h.labeling)
        .ok_or_else(|| null("labeling"))
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdom_labeling_weight(f: *const SdomLabeling, out: *mut u64) -> SdomStatus {
    guard(|| write(out, labeling_ref(f)?.weight()))
}

/// Value assigned to a word of length `t` (0 when unlisted).
///
/// # Safety
/// `f` must be a live handle; `word` must point to `t` labels.
#[no_mangle]
pub unsafe extern "C" fn sdom_labeling_get(
    f: *const SdomLabeling,
    word: *const u32,
    out: *mut u8,
) -> SdomStatus {
    guard(|| {
        let f = labeling_ref(f)?;
        let w = unsafe { read_word(&f.params(), word)? };
        write(out, f.get(&w))
    })
}

/// Validity under the labeling's own mode.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdom_labeling_is_valid(
    f: *const SdomLabeling,
    out: *mut bool,
) -> SdomStatus {
    guard(|| {
        let f = labeling_ref(f)?;
        let g = f.params();
        let lim = limits()?;
        let ok = match f.mode() {
            Mode::Roman => is_roman(&g, f, &lim)?,
            Mode::DoubleRoman => is_double_roman(&g, f, &lim)?,
        };
        write(out, ok)
    })
}

/// JSON document for the labeling; free with `sdom_string_free`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sdom_labeling_to_json(
    f: *const SdomLabeling,
    out: *mut *mut c_char,
) -> SdomStatus {
    guard(|| to_c_string(labeling_ref(f)?.to_json(), out))
}

/// # Safety
/// `f` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn sdom_labeling_free(f: *mut SdomLabeling) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}
