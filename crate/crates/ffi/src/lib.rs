//! C interface to the pattern analysis library.
//!
//! Every function returns an [`LrmcStatus`]. On failure a message is kept per
//! thread and can be read with [`lrmc_last_error`]. Patterns are opaque
//! handles created by [`lrmc_pattern_parse`] and released with
//! [`lrmc_pattern_free`]; strings handed out by the library are released
//! with [`lrmc_string_free`]. All indices crossing the boundary are 0-based
//! array offsets; matrices are row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lrmc::linalg::DEFAULT_RANK_TOL;
use lrmc::numerics::{complete_matrix, jacobian_rank_test, ObservedMatrix};
use lrmc::slmf::check_slmf_combinatorial;
use lrmc::{analyze, AnalysisOptions, Error, ObservationPattern, Slmf, SubspaceBasis};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrmcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    /// Degenerate projection, inconsistent data or a rank-deficient basis.
    NumericalError = 5,
    TooLarge = 6,
    Panic = 7,
}

/// Opaque observation pattern.
pub struct LrmcPattern(ObservationPattern);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LrmcStatus {
    match e {
        Error::Parse { .. } => LrmcStatus::ParseError,
        Error::Argument(_) | Error::Io(_) => LrmcStatus::InvalidArgument,
        Error::NotABasis { .. } | Error::DegenerateProjection { .. } | Error::InconsistentObservation { .. } => {
            LrmcStatus::NumericalError
        }
        Error::TooLarge(_) => LrmcStatus::TooLarge,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (LrmcStatus, String)>) -> LrmcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LrmcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LrmcStatus::Panic
        }
    }
}

fn lib(e: Error) -> (LrmcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (LrmcStatus, String) {
    (LrmcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn pattern_ref<'a>(p: *const LrmcPattern) -> Result<&'a ObservationPattern, (LrmcStatus, String)> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("pattern"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (LrmcStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Parse a 0/1 grid or a JSON pattern.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lrmc_pattern_parse(text: *const c_char, out: *mut *mut LrmcPattern) -> LrmcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (LrmcStatus::InvalidUtf8, e.to_string()))?;
        let pattern = ObservationPattern::parse(text).map_err(lib)?;
        *out = Box::into_raw(Box::new(LrmcPattern(pattern)));
        Ok(())
    })
}

/// Release a pattern. Null is ignored.
///
/// # Safety
/// `pattern` must come from [`lrmc_pattern_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lrmc_pattern_free(pattern: *mut LrmcPattern) {
    if !pattern.is_null() {
        drop(Box::from_raw(pattern));
    }
}

/// # Safety
/// `pattern` must be a live handle; the outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lrmc_pattern_dims(
    pattern: *const LrmcPattern,
    m: *mut usize,
    n: *mut usize,
    entries: *mut usize,
) -> LrmcStatus {
    guard(|| {
        let p = pattern_ref(pattern)?;
        *out_ref(m, "m")? = p.m();
        *out_ref(n, "n")? = p.n();
        *out_ref(entries, "entries")? = p.len();
        Ok(())
    })
}

/// Writes whether the pattern has at least `r(m + n - r)` entries.
///
/// # Safety
/// `pattern` must be a live handle and `pass` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lrmc_minimum_size_check(pattern: *const LrmcPattern, r: usize, pass: *mut bool) -> LrmcStatus {
    guard(|| {
        let p = pattern_ref(pattern)?;
        *out_ref(pass, "pass")? = p.minimum_size_check(r).map_err(lib)?.pass;
        Ok(())
    })
}

/// Full analysis as a JSON report, plus the exit code the command line tool
/// would return (0, 2 or 3). Free the string with [`lrmc_string_free`].
///
/// # Safety
/// `pattern` must be a live handle; the outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lrmc_analyze_json(
    pattern: *const LrmcPattern,
    r: usize,
    seed: u64,
    budget: u64,
    json_out: *mut *mut c_char,
    exit_code: *mut i32,
) -> LrmcStatus {
    guard(|| {
        let out = out_ref(json_out, "json_out")?;
        *out = ptr::null_mut();
        let code = out_ref(exit_code, "exit_code")?;
        let p = pattern_ref(pattern)?;
        let report = analyze(p, AnalysisOptions { rank: r, seed, budget }).map_err(lib)?;
        *code = report.exit_code();
        *out = CString::new(report.to_json()).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// Release a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lrmc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Treat an `m × (m - r)` pattern as an SLMF and decide the union condition.
/// `witness` (may be null) receives a bitmask of a violating column set,
/// bit `k` for column `k`; zero when the condition holds.
///
/// # Safety
/// `phi` must be a live handle; `is_slmf` must be valid; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn lrmc_slmf_check(
    phi: *const LrmcPattern,
    r: usize,
    is_slmf: *mut bool,
    witness: *mut u64,
) -> LrmcStatus {
    guard(|| {
        let p = pattern_ref(phi)?;
        let out = out_ref(is_slmf, "is_slmf")?;
        let slmf = Slmf::from_pattern(p, r).map_err(lib)?;
        let verdict = check_slmf_combinatorial(&slmf);
        *out = verdict.is_slmf;
        if let Some(w) = witness.as_mut() {
            *w = verdict
                .witness
                .unwrap_or_default()
                .iter()
                .fold(0u64, |acc, &k| acc | 1 << k);
        }
        Ok(())
    })
}

/// Generic rank of the observation map at random factors, and its maximum
/// `r(m + n - r)`.
///
/// # Safety
/// `pattern` must be a live handle; the outputs must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lrmc_jacobian_rank(
    pattern: *const LrmcPattern,
    r: usize,
    trials: usize,
    seed: u64,
    rank: *mut usize,
    target: *mut usize,
) -> LrmcStatus {
    guard(|| {
        let p = pattern_ref(pattern)?;
        let rank = out_ref(rank, "rank")?;
        let target = out_ref(target, "target")?;
        if trials == 0 {
            return Err((LrmcStatus::InvalidArgument, "trials must be positive".into()));
        }
        let rep = jacobian_rank_test(p, r, trials, seed, DEFAULT_RANK_TOL).map_err(lib)?;
        *rank = rep.tested_rank;
        *target = rep.target;
        Ok(())
    })
}

/// Complete an `m × n` matrix from the column space of an `m × r` basis.
/// NaN entries of `values` are unobserved. `out` receives `m * n` values.
///
/// # Safety
/// `values` and `out` must hold `m * n` doubles and `basis` `m * r` doubles.
#[no_mangle]
pub unsafe extern "C" fn lrmc_complete_matrix(
    m: usize,
    n: usize,
    values: *const f64,
    r: usize,
    basis: *const f64,
    out: *mut f64,
) -> LrmcStatus {
    guard(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        if basis.is_null() {
            return Err(null("basis"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let len = m.checked_mul(n).ok_or((LrmcStatus::TooLarge, "m * n overflows".into()))?;
        let vals = std::slice::from_raw_parts(values, len);
        let basis_len = m.checked_mul(r).ok_or((LrmcStatus::TooLarge, "m * r overflows".into()))?;
        let basis = std::slice::from_raw_parts(basis, basis_len);
        let observed: std::collections::BTreeMap<(usize, usize), f64> = (0..len)
            .filter(|&k| !vals[k].is_nan())
            .map(|k| ((k / n, k % n), vals[k]))
            .collect();
        let pattern = ObservationPattern::new(m, n, observed.keys().copied()).map_err(lib)?;
        let obs = ObservedMatrix::new(pattern, observed).map_err(lib)?;
        let b = SubspaceBasis::from_rows(m, r, basis).map_err(lib)?;
        let x = complete_matrix(&obs, &b).map_err(lib)?;
        let dst = std::slice::from_raw_parts_mut(out, len);
        for i in 0..m {
            for j in 0..n {
                dst[i * n + j] = x[(i, j)];
            }
        }
        Ok(())
    })
}

/// Message of the last failed call on this thread, or an empty string. Valid
/// until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn lrmc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lrmc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
