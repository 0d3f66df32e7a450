//! C interface to `tropfit`.
//!
//! Samples and fits are opaque heap handles released with the matching
//! `*_free` function. Every fallible call returns a [`TfStatus`]; on
//! failure a description is available from [`tf_last_error_message`]
//! until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tropfit::{Error, FitConfig, FitResult, SampleSet, SemifieldTag};

pub const TF_ALGEBRA_MAX_PLUS: u32 = 0;
pub const TF_ALGEBRA_MAX_TIMES: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    InvalidInput = 1,
    Domain = 2,
    GuardRefused = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Validated sample set.
pub struct TfSamples(SampleSet);

/// Result of a fit.
pub struct TfFit(FitResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TfStatus {
    match e {
        Error::Domain(_) | Error::Unbounded => TfStatus::Domain,
        Error::GuardRefused { .. } => TfStatus::GuardRefused,
        _ => TfStatus::InvalidInput,
    }
}

enum Fail {
    Core(Error),
    Null(&'static str),
    Buffer { needed: usize },
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(body: F) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TfStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("{name} is null"));
            TfStatus::NullPointer
        }
        Ok(Err(Fail::Buffer { needed })) => {
            set_error(format!("buffer too small: {needed} entries needed"));
            TfStatus::BufferTooSmall
        }
        Err(_) => {
            set_error("internal panic".into());
            TfStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

unsafe fn slice<'a>(p: *const f64, len: usize, name: &'static str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(name));
    }
    out.write(value);
    Ok(())
}

fn algebra(code: u32) -> Result<SemifieldTag, Fail> {
    match code {
        TF_ALGEBRA_MAX_PLUS => Ok(SemifieldTag::MaxPlus),
        TF_ALGEBRA_MAX_TIMES => Ok(SemifieldTag::MaxTimes),
        _ => Err(Fail::Core(Error::InvalidInput(format!("unknown algebra code {code}")))),
    }
}

/// Copy `values` into `buf` (capacity `cap`) and store the count in
/// `len_out`. With a short buffer the count is still stored.
unsafe fn copy_out(values: &[f64], buf: *mut f64, cap: usize, len_out: *mut usize) -> Result<(), Fail> {
    write_out(len_out, values.len(), "len_out")?;
    if values.len() > cap {
        return Err(Fail::Buffer { needed: values.len() });
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(Fail::Null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `xs` and `ys` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_samples_new(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    algebra_code: u32,
    out: *mut *mut TfSamples,
) -> TfStatus {
    guard(|| {
        let tag = algebra(algebra_code)?;
        let xs = slice(xs, len, "xs")?.to_vec();
        let ys = slice(ys, len, "ys")?.to_vec();
        let samples = SampleSet::new(xs, ys, tag)?;
        write_out(out, Box::into_raw(Box::new(TfSamples(samples))), "out")
    })
}

/// # Safety
/// `samples` must be null or a handle from [`tf_samples_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_samples_free(samples: *mut TfSamples) {
    if !samples.is_null() {
        drop(Box::from_raw(samples));
    }
}

/// # Safety
/// `samples` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit(samples: *const TfSamples, n_terms: usize, out: *mut *mut TfFit) -> TfStatus {
    guard(|| {
        let s = &deref(samples, "samples")?.0;
        let r = tropfit::fit(s, &FitConfig::new(n_terms, s.tag()))?;
        write_out(out, Box::into_raw(Box::new(TfFit(r))), "out")
    })
}

/// # Safety
/// `fit` must be null or a handle from [`tf_fit`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_free(fit: *mut TfFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}

/// Number of monomials, or 0 for a null handle.
///
/// # Safety
/// `fit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_n_terms(fit: *const TfFit) -> usize {
    fit.as_ref().map_or(0, |f| f.0.n_terms())
}

/// # Safety
/// `fit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_delta_star(fit: *const TfFit, out: *mut f64) -> TfStatus {
    guard(|| write_out(out, deref(fit, "fit")?.0.delta_star, "out"))
}

/// # Safety
/// `fit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_error(fit: *const TfFit, out: *mut f64) -> TfStatus {
    guard(|| write_out(out, deref(fit, "fit")?.0.error, "out"))
}

/// Exponents in increasing order.
///
/// # Safety
/// `fit` must be a live handle, `buf` must hold `cap` doubles and
/// `len_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_exponents(fit: *const TfFit, buf: *mut f64, cap: usize, len_out: *mut usize) -> TfStatus {
    guard(|| copy_out(&deref(fit, "fit")?.0.exponents, buf, cap, len_out))
}

/// Coefficients matching [`tf_fit_exponents`].
///
/// # Safety
/// As [`tf_fit_exponents`].
#[no_mangle]
pub unsafe extern "C" fn tf_fit_coefficients(
    fit: *const TfFit,
    buf: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> TfStatus {
    guard(|| copy_out(&deref(fit, "fit")?.0.coefficients, buf, cap, len_out))
}

/// # Safety
/// `fit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_fit_predict(fit: *const TfFit, x: f64, out: *mut f64) -> TfStatus {
    guard(|| write_out(out, deref(fit, "fit")?.0.predict(x)?, "out"))
}

/// `Δ*` for `n_min..=n_max` terms, written in increasing order of terms.
///
/// # Safety
/// `samples` must be a live handle, `buf` must hold `cap` doubles and
/// `len_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_sweep(
    samples: *const TfSamples,
    n_min: usize,
    n_max: usize,
    buf: *mut f64,
    cap: usize,
    len_out: *mut usize,
) -> TfStatus {
    guard(|| {
        let s = &deref(samples, "samples")?.0;
        let deltas: Vec<f64> = tropfit::sweep(s, n_min, n_max, s.tag())?.into_iter().map(|r| r.1).collect();
        copy_out(&deltas, buf, cap, len_out)
    })
}

/// Optimal `Δ` over all partitions into at most `n_terms` parts.
///
/// # Safety
/// `samples` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_oracle_exact(samples: *const TfSamples, n_terms: usize, out: *mut f64) -> TfStatus {
    guard(|| {
        let s = &deref(samples, "samples")?.0;
        write_out(out, tropfit::exact_fit(s, n_terms)?.delta_exact, "out")
    })
}
