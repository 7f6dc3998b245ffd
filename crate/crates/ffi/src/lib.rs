//! C ABI over `homalg`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`HomalgStatus`]; on failure [`homalg_last_error`] describes what went
//! wrong on the calling thread. Strings handed out by the library are freed
//! with [`homalg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use homalg::adele::{class_group_report, ClassGroupConfig, NumberField};
use homalg::derived::{dualizing_homology, FiniteComplexHomology};
use homalg::znf::{cokernel_structure, hyper_ext, smith_normal_form, ChainComplex, FgAbelianGroup, IntMatrix};
use homalg::Error;
use num_bigint::BigInt;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomalgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Schema = 3,
    Dimension = 4,
    NotAComplex = 5,
    Invalid = 6,
    CapExceeded = 7,
    Unsupported = 8,
    Inconclusive = 9,
    OutOfRange = 10,
    Overflow = 11,
    Panic = 12,
}

pub struct HomalgMatrix(IntMatrix);
pub struct HomalgComplex(ChainComplex);
pub struct HomalgGroup(FgAbelianGroup);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(HomalgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Schema(_) => HomalgStatus::Schema,
            Error::Dimension(_) => HomalgStatus::Dimension,
            Error::NotAComplex(_) => HomalgStatus::NotAComplex,
            Error::Invalid(_) => HomalgStatus::Invalid,
            Error::CapExceeded(_) => HomalgStatus::CapExceeded,
            Error::Unsupported(_) => HomalgStatus::Unsupported,
            Error::Inconclusive(_) => HomalgStatus::Inconclusive,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> HomalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            HomalgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HomalgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(HomalgStatus::NullArgument, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> std::result::Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> std::result::Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(HomalgStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn parse<T: serde::de::DeserializeOwned>(p: *const c_char, what: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(text(p, what)?).map_err(|e| Failure(HomalgStatus::Schema, format!("{what}: {e}")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).map_err(|e| Failure(HomalgStatus::Invalid, e.to_string()))?.into_raw();
    Ok(())
}

unsafe fn put_json<T: serde::Serialize>(out: *mut *mut c_char, v: &T) -> Outcome {
    put_string(out, serde_json::to_string(v).map_err(|e| Failure(HomalgStatus::Schema, e.to_string()))?)
}

unsafe fn put_i64(out: *mut i64, v: &BigInt) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = i64::try_from(v).map_err(|_| Failure(HomalgStatus::Overflow, format!("{v} does not fit in 64 bits")))?;
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn homalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn homalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn homalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Row-major `rows × cols` matrix.
///
/// # Safety
/// `entries` must point to `rows * cols` values.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_new(
    rows: usize,
    cols: usize,
    entries: *const i64,
    out: *mut *mut HomalgMatrix,
) -> HomalgStatus {
    guard(|| {
        let n = rows.checked_mul(cols).ok_or_else(|| Failure(HomalgStatus::Overflow, "matrix too large".into()))?;
        let data = if n == 0 {
            &[][..]
        } else if entries.is_null() {
            return Err(null("entries"));
        } else {
            std::slice::from_raw_parts(entries, n)
        };
        put(out, HomalgMatrix(IntMatrix::from_i64(rows, cols, data)?))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_from_json(json: *const c_char, out: *mut *mut HomalgMatrix) -> HomalgStatus {
    guard(|| put(out, HomalgMatrix(parse(json, "matrix")?)))
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_to_json(m: *const HomalgMatrix, out: *mut *mut c_char) -> HomalgStatus {
    guard(|| put_json(out, &borrow(m, "matrix")?.0))
}

/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_rows(m: *const HomalgMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_cols(m: *const HomalgMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_get(m: *const HomalgMatrix, row: usize, col: usize, out: *mut i64) -> HomalgStatus {
    guard(|| {
        let m = &borrow(m, "matrix")?.0;
        if row >= m.rows() || col >= m.cols() {
            return Err(Failure(HomalgStatus::OutOfRange, format!("({row}, {col}) outside {}×{}", m.rows(), m.cols())));
        }
        put_i64(out, m.get(row, col))
    })
}

/// # Safety
/// `m` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_free(m: *mut HomalgMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Smith normal form `u · a · v = d`. Each output is a new handle.
///
/// # Safety
/// `a` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn homalg_snf(
    a: *const HomalgMatrix,
    u: *mut *mut HomalgMatrix,
    d: *mut *mut HomalgMatrix,
    v: *mut *mut HomalgMatrix,
) -> HomalgStatus {
    guard(|| {
        if u.is_null() || d.is_null() || v.is_null() {
            return Err(null("output pointer"));
        }
        let s = smith_normal_form(&borrow(a, "matrix")?.0);
        put(u, HomalgMatrix(s.u))?;
        put(d, HomalgMatrix(s.d))?;
        put(v, HomalgMatrix(s.v))
    })
}

/// Cokernel of `a` as a group.
///
/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_matrix_cokernel(a: *const HomalgMatrix, out: *mut *mut HomalgGroup) -> HomalgStatus {
    guard(|| put(out, HomalgGroup(cokernel_structure(&borrow(a, "matrix")?.0))))
}

/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn homalg_complex_from_json(json: *const c_char, out: *mut *mut HomalgComplex) -> HomalgStatus {
    guard(|| {
        let v: serde_json::Value = parse(json, "complex")?;
        let c: ChainComplex = serde_json::from_value(v).map_err(|e| {
            let msg = e.to_string();
            match msg.strip_prefix("not a chain complex: ") {
                Some(rest) => Failure::from(Error::NotAComplex(rest.to_string())),
                None => Failure(HomalgStatus::Schema, msg),
            }
        })?;
        put(out, HomalgComplex(c))
    })
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_complex_to_json(c: *const HomalgComplex, out: *mut *mut c_char) -> HomalgStatus {
    guard(|| put_json(out, &borrow(c, "complex")?.0))
}

/// `H_n` of the complex.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_complex_homology(c: *const HomalgComplex, n: i64, out: *mut *mut HomalgGroup) -> HomalgStatus {
    guard(|| put(out, HomalgGroup(borrow(c, "complex")?.0.homology_at(n))))
}

/// All homology as JSON.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_complex_homology_json(c: *const HomalgComplex, out: *mut *mut c_char) -> HomalgStatus {
    guard(|| put_json(out, &borrow(c, "complex")?.0.homology()))
}

/// `hyperExt^n(c, d)`.
///
/// # Safety
/// `c` and `d` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn homalg_hyper_ext(
    c: *const HomalgComplex,
    d: *const HomalgComplex,
    n: i64,
    out: *mut *mut HomalgGroup,
) -> HomalgStatus {
    guard(|| put(out, HomalgGroup(hyper_ext(&borrow(c, "source")?.0, &borrow(d, "target")?.0, n))))
}

/// # Safety
/// `c` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn homalg_complex_free(c: *mut HomalgComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// `ℤ^free_rank ⊕ ⊕ ℤ/d_i`; the factors must form a divisibility chain.
///
/// # Safety
/// `factors` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_new(
    free_rank: usize,
    factors: *const i64,
    len: usize,
    out: *mut *mut HomalgGroup,
) -> HomalgStatus {
    guard(|| {
        let ds: &[i64] = if len == 0 {
            &[]
        } else if factors.is_null() {
            return Err(null("factors"));
        } else {
            std::slice::from_raw_parts(factors, len)
        };
        put(out, HomalgGroup(FgAbelianGroup::new(free_rank, ds.iter().map(|&d| BigInt::from(d)).collect())?))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_from_json(json: *const c_char, out: *mut *mut HomalgGroup) -> HomalgStatus {
    guard(|| put(out, HomalgGroup(parse(json, "group")?)))
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_to_json(g: *const HomalgGroup, out: *mut *mut c_char) -> HomalgStatus {
    guard(|| put_json(out, &borrow(g, "group")?.0))
}

/// Human-readable form such as `ℤ ⊕ ℤ/2`.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_to_string(g: *const HomalgGroup, out: *mut *mut c_char) -> HomalgStatus {
    guard(|| put_string(out, borrow(g, "group")?.0.to_string()))
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_free_rank(g: *const HomalgGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.free_rank())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_num_invariant_factors(g: *const HomalgGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.invariant_factors().len())
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_invariant_factor(g: *const HomalgGroup, i: usize, out: *mut i64) -> HomalgStatus {
    guard(|| {
        let ds = borrow(g, "group")?.0.invariant_factors();
        let d = ds.get(i).ok_or_else(|| Failure(HomalgStatus::OutOfRange, format!("index {i} of {}", ds.len())))?;
        put_i64(out, d)
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn homalg_group_free(g: *mut HomalgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Homology of the dualizing complex from `{"degree": group, …}`.
///
/// # Safety
/// `homology` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn homalg_dualizing_json(homology: *const c_char, out: *mut *mut c_char) -> HomalgStatus {
    guard(|| {
        let x: FiniteComplexHomology = parse(homology, "homology")?;
        put_json(out, &dualizing_homology(&x))
    })
}

/// Class group report for `{"min_poly": […]}`; a zero bound means the
/// Minkowski bound rounded up.
///
/// # Safety
/// `field` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn homalg_class_group_json(field: *const c_char, bound: u64, out: *mut *mut c_char) -> HomalgStatus {
    guard(|| {
        let k: NumberField = parse(field, "field")?;
        let b = if bound == 0 { (k.minkowski_bound().ceil() as u64).max(1) } else { bound };
        put_json(out, &class_group_report(&k, b, &ClassGroupConfig::default())?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn errors_are_recorded_per_call() {
        let mut m = ptr::null_mut();
        let bad = CString::new("{\"rows\":1}").unwrap();
        assert_eq!(unsafe { homalg_matrix_from_json(bad.as_ptr(), &mut m) }, HomalgStatus::Schema);
        assert!(m.is_null());
        let msg = unsafe { CStr::from_ptr(homalg_last_error()) }.to_str().unwrap().to_string();
        assert!(msg.contains("cols"), "{msg}");
        let ok = CString::new("{\"rows\":1,\"cols\":1,\"entries\":[\"3\"]}").unwrap();
        assert_eq!(unsafe { homalg_matrix_from_json(ok.as_ptr(), &mut m) }, HomalgStatus::Ok);
        assert!(unsafe { CStr::from_ptr(homalg_last_error()) }.to_bytes().is_empty());
        unsafe { homalg_matrix_free(m) };
    }

    #[test]
    fn null_arguments_are_rejected() {
        assert_eq!(unsafe { homalg_matrix_from_json(ptr::null(), ptr::null_mut()) }, HomalgStatus::NullArgument);
        assert_eq!(unsafe { homalg_matrix_rows(ptr::null()) }, 0);
        unsafe { homalg_string_free(ptr::null_mut()) };
    }
}
