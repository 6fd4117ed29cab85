//! C ABI over `weilcodes`.
//!
//! Every fallible call returns a [`WcStatus`]. On failure the message is kept
//! per thread and can be copied out with [`wc_last_error`]. Handles are opaque
//! and must be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use weilcodes::bent::{extract_profile, BentCandidate, BentError, BentFamily};
use weilcodes::codes::{
    build_defining_set_with_ceiling, griesmer_check, sample_check, weight_distribution_with,
    CodeError, CodeKind, CodeSpec, Limits, Method, WeightDistribution,
};
use weilcodes::field::{
    build_field_with_ceiling, validate_params, validate_params_with_ceiling, FieldError,
    FieldParams, FieldTable, DEFAULT_FIELD_CEILING,
};
use weilcodes::predict::{predict, PredictError};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    Infeasible = 3,
    Disagreement = 4,
    NotBent = 5,
    OutOfRange = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcMethod {
    Direct = 0,
    Closed = 1,
    Aggregate = 2,
    Both = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WcBentFamily {
    Square = 0,
    AlphaKasami = 1,
    Kasami = 2,
    Coulter = 3,
}

/// Field parameters copied out of a [`WcField`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct WcFieldParams {
    pub p: u64,
    pub ell: u64,
    pub k: u32,
    pub e: u64,
    pub q: u64,
    pub exp_n: u64,
}

pub struct WcField(Arc<FieldTable>);
pub struct WcCode(CodeSpec);
pub struct WcDistribution {
    dist: WeightDistribution,
    weights: Vec<(u64, u64)>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Fail(WcStatus, String);

impl From<FieldError> for Fail {
    fn from(e: FieldError) -> Self {
        let status = match e {
            FieldError::Overflow { .. } => WcStatus::Infeasible,
            _ => WcStatus::InvalidParams,
        };
        Fail(status, e.to_string())
    }
}

impl From<BentError> for Fail {
    fn from(e: BentError) -> Self {
        let status = match e {
            BentError::UnsupportedFamily(_) => WcStatus::InvalidParams,
            _ => WcStatus::NotBent,
        };
        Fail(status, e.to_string())
    }
}

impl From<CodeError> for Fail {
    fn from(e: CodeError) -> Self {
        let status = match e {
            CodeError::CeilingExceeded { .. } => WcStatus::Infeasible,
            CodeError::InvalidSpec(_) => WcStatus::InvalidParams,
            CodeError::MethodDisagreement { .. } | CodeError::VerificationFailed { .. } => {
                WcStatus::Disagreement
            }
            _ => WcStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

impl From<PredictError> for Fail {
    fn from(e: PredictError) -> Self {
        match e {
            PredictError::Code(c) => c.into(),
            _ => Fail(WcStatus::Internal, e.to_string()),
        }
    }
}

fn null() -> Fail {
    Fail(WcStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, records any error and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            WcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside weilcodes".into());
            WcStatus::Internal
        }
    }
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Copies the last error message of this thread into `buf` (NUL terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn wc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Checks `(p, ell, k)` without building the field.
///
/// # Safety
/// `out` must be null or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn wc_validate_params(
    p: u64,
    ell: u64,
    k: u32,
    out: *mut WcFieldParams,
) -> WcStatus {
    guard(|| {
        let fp = validate_params(p, ell, k)?;
        if !out.is_null() {
            put(out, params_of(&fp))?;
        }
        Ok(())
    })
}

fn params_of(fp: &FieldParams) -> WcFieldParams {
    WcFieldParams {
        p: fp.p,
        ell: fp.ell,
        k: fp.k,
        e: fp.e,
        q: fp.q,
        exp_n: fp.exp_n,
    }
}

/// Builds `F_{p^e}`. `ceiling` bounds `q`; pass 0 for the library default.
///
/// # Safety
/// `out` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn wc_field_new(
    p: u64,
    ell: u64,
    k: u32,
    ceiling: u64,
    out: *mut *mut WcField,
) -> WcStatus {
    guard(|| {
        let ceiling = if ceiling == 0 {
            DEFAULT_FIELD_CEILING
        } else {
            ceiling
        };
        let fp = validate_params_with_ceiling(p, ell, k, ceiling)?;
        let t = build_field_with_ceiling(fp, ceiling)?;
        put(out, boxed(WcField(Arc::new(t))))
    })
}

/// # Safety
/// `field` must be null or a handle from [`wc_field_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_field_free(field: *mut WcField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_field_params(
    field: *const WcField,
    out: *mut WcFieldParams,
) -> WcStatus {
    guard(|| put(out, params_of(&get(field)?.0.params)))
}

/// Creates the code `D_u`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_code_du(
    field: *const WcField,
    u: u64,
    out: *mut *mut WcCode,
) -> WcStatus {
    guard(|| {
        let spec = CodeSpec::du(get(field)?.0.clone(), u)?;
        put(out, boxed(WcCode(spec)))
    })
}

/// Creates the code `D'` for a bent family. `i` is ignored for `Square`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_code_dprime(
    field: *const WcField,
    family: WcBentFamily,
    i: u32,
    out: *mut *mut WcCode,
) -> WcStatus {
    guard(|| {
        let fam = match family {
            WcBentFamily::Square => BentFamily::TraceSquare,
            WcBentFamily::AlphaKasami => BentFamily::TraceAlphaKasami(i),
            WcBentFamily::Kasami => BentFamily::TraceKasami(i),
            WcBentFamily::Coulter => BentFamily::TraceCoulter(i),
        };
        let cand = BentCandidate::new(fam, get(field)?.0.clone())?;
        let prof = extract_profile(cand)?;
        let spec = CodeSpec::dprime(Arc::new(prof))?;
        put(out, boxed(WcCode(spec)))
    })
}

/// # Safety
/// `code` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_code_free(code: *mut WcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Code length from the closed form.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_code_length(code: *const WcCode, out: *mut u64) -> WcStatus {
    guard(|| {
        let n = weilcodes::codes::defining_set_size_closed(&get(code)?.0)?;
        put(out, n)
    })
}

/// Sign of the bent function behind a `D'` code; 0 for `D_u`.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_code_epsilon(code: *const WcCode, out: *mut i8) -> WcStatus {
    guard(|| {
        let spec = &get(code)?.0;
        let eps = match spec.kind {
            CodeKind::Du(_) => 0,
            CodeKind::Dprime(_) => spec.epsilon().unwrap_or(0),
        };
        put(out, eps)
    })
}

/// Computes the weight distribution. Zero limits select the library defaults.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_distribution(
    code: *const WcCode,
    method: WcMethod,
    pair_ceiling: u64,
    direct_budget: u64,
    out: *mut *mut WcDistribution,
) -> WcStatus {
    guard(|| {
        let spec = &get(code)?.0;
        let method = match method {
            WcMethod::Direct => Method::Direct,
            WcMethod::Closed => Method::Closed,
            WcMethod::Aggregate => Method::Aggregate,
            WcMethod::Both => Method::Both,
        };
        let mut limits = Limits::default();
        if pair_ceiling != 0 {
            limits.pair_ceiling = pair_ceiling;
        }
        if direct_budget != 0 {
            limits.direct_budget = direct_budget as u128;
        }
        let wd = weight_distribution_with(spec, method, limits)?;
        put(out, boxed(wrap(wd)))
    })
}

/// Distribution predicted by the closed-form tables.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_predict(
    code: *const WcCode,
    out: *mut *mut WcDistribution,
) -> WcStatus {
    guard(|| {
        let pred = predict(&get(code)?.0)?;
        put(out, boxed(wrap(pred.distribution)))
    })
}

fn wrap(dist: WeightDistribution) -> WcDistribution {
    let weights = dist.dist.iter().map(|(&w, &f)| (w, f)).collect();
    WcDistribution { dist, weights }
}

/// # Safety
/// `dist` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_distribution_free(dist: *mut WcDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// Number of distinct weights, the zero weight included.
///
/// # Safety
/// `dist` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wc_distribution_len(dist: *const WcDistribution) -> usize {
    dist.as_ref().map_or(0, |d| d.weights.len())
}

/// Weight and frequency at `index`, in increasing weight order.
///
/// # Safety
/// `dist` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_distribution_get(
    dist: *const WcDistribution,
    index: usize,
    weight: *mut u64,
    frequency: *mut u64,
) -> WcStatus {
    guard(|| {
        let d = get(dist)?;
        let &(w, f) = d.weights.get(index).ok_or_else(|| {
            Fail(
                WcStatus::OutOfRange,
                format!("index {index} out of {}", d.weights.len()),
            )
        })?;
        put(weight, w)?;
        put(frequency, f)
    })
}

/// Length, dimension and minimum distance.
///
/// # Safety
/// `dist` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_distribution_summary(
    dist: *const WcDistribution,
    n: *mut u64,
    dim: *mut u32,
    d_min: *mut u64,
) -> WcStatus {
    guard(|| {
        let d = &get(dist)?.dist;
        put(n, d.n)?;
        put(dim, d.dim)?;
        put(d_min, d.d_min)
    })
}

/// Griesmer bound `sum_{i<k} ceil(d/p^i)`; `meets` is set when it equals `n`.
///
/// # Safety
/// Outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn wc_griesmer(
    n: u64,
    k: u32,
    d: u64,
    p: u64,
    bound: *mut u64,
    meets: *mut bool,
) -> WcStatus {
    guard(|| {
        let r = griesmer_check(n, k, d, p);
        put(bound, r.bound)?;
        put(meets, r.meets)
    })
}

/// Compares direct and closed-form weights on `samples` random codewords.
/// Writes the number of mismatches; the status is `Ok` even when it is nonzero.
///
/// # Safety
/// `code` must be a live handle and `mismatches` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_sample_check(
    code: *const WcCode,
    samples: u64,
    seed: u64,
    pair_ceiling: u64,
    mismatches: *mut u64,
) -> WcStatus {
    guard(|| {
        let spec = &get(code)?.0;
        let ceiling = if pair_ceiling == 0 {
            Limits::default().pair_ceiling
        } else {
            pair_ceiling
        };
        let d = build_defining_set_with_ceiling(spec, ceiling)?;
        let r = sample_check(&d, samples, seed)?;
        put(mismatches, r.mismatches.len() as u64)
    })
}
