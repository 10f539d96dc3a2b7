//! C interface to `golayset`.
//!
//! Matrices are passed across the boundary as opaque handles created by
//! `gs_*_new`/`gs_construct` and released with the matching `*_free`. Every
//! fallible call returns a `GsStatus`; on failure a description is available
//! from `gs_last_error_message` on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;
use std::slice;

use golayset::analysis::{golay_check, pmepr, AnalysisError, QarySequence};
use golayset::construction::{construct, ConstructionError, ConstructionSpec, ReadOrder, UnitCoeffPolyMatrix};
use golayset::hadamard::{verify_butson, ButsonMatrix, HadamardError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotUnitary = 3,
    Construction = 4,
    NotComplementary = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// A validated Butson Hadamard matrix.
pub struct GsButsonMatrix(ButsonMatrix);

/// An `N x N` polynomial matrix with unit coefficients.
pub struct GsPolyMatrix(UnitCoeffPolyMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GsStatus, message: impl Into<String>) -> GsStatus {
    set_error(message.into());
    status
}

fn hadamard_status(e: &HadamardError) -> GsStatus {
    match e {
        HadamardError::NotUnitary { .. } => GsStatus::NotUnitary,
        _ => GsStatus::InvalidArgument,
    }
}

fn construction_status(e: &ConstructionError) -> GsStatus {
    match e {
        ConstructionError::Hadamard(h) => hadamard_status(h),
        ConstructionError::InvalidSpec(_) | ConstructionError::DimensionMismatch(_) => GsStatus::InvalidArgument,
        _ => GsStatus::Construction,
    }
}

fn guarded<F: FnOnce() -> GsStatus + UnwindSafe>(f: F) -> GsStatus {
    catch_unwind(f).unwrap_or_else(|_| fail(GsStatus::Panic, "internal panic"))
}

/// Borrows `len` elements, allowing a null pointer only when `len` is 0.
unsafe fn borrow<'a, T>(p: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if p.is_null() {
        None
    } else {
        Some(slice::from_raw_parts(p, len))
    }
}

unsafe fn sequences(q: u32, set_size: usize, len: usize, exps: *const u32) -> Result<Vec<QarySequence>, GsStatus> {
    let total = set_size
        .checked_mul(len)
        .ok_or_else(|| fail(GsStatus::InvalidArgument, "set size overflows"))?;
    let data = borrow(exps, total).ok_or_else(|| fail(GsStatus::NullPointer, "exps is null"))?;
    if set_size == 0 || len == 0 {
        return Err(fail(GsStatus::InvalidArgument, "empty sequence set"));
    }
    data.chunks(len)
        .map(|c| QarySequence::new(q, c.to_vec()).map_err(|e| fail(GsStatus::InvalidArgument, e.to_string())))
        .collect()
}

/// Message describing the last failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn gs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Checks `n x n` row-major exponents for the Butson property without
/// allocating a handle.
///
/// # Safety
/// `exps` must point to `n * n` readable values.
#[no_mangle]
pub unsafe extern "C" fn gs_verify_butson(q: u32, n: usize, exps: *const u32) -> GsStatus {
    gs_butson_new(q, n, exps, ptr::null_mut())
}

/// Validates `n x n` row-major exponents and, when `out` is not NULL, stores
/// a new handle there.
///
/// # Safety
/// `exps` must point to `n * n` readable values; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gs_butson_new(q: u32, n: usize, exps: *const u32, out: *mut *mut GsButsonMatrix) -> GsStatus {
    guarded(move || {
        let Some(total) = n.checked_mul(n) else {
            return fail(GsStatus::InvalidArgument, "dimension overflows");
        };
        let Some(data) = borrow(exps, total) else {
            return fail(GsStatus::NullPointer, "exps is null");
        };
        if n == 0 {
            return fail(GsStatus::InvalidArgument, "dimension must be positive");
        }
        let rows: Vec<Vec<u32>> = data.chunks(n).map(<[u32]>::to_vec).collect();
        match verify_butson(&rows, q) {
            Ok(h) => {
                if !out.is_null() {
                    *out = Box::into_raw(Box::new(GsButsonMatrix(h)));
                }
                GsStatus::Ok
            }
            Err(e) => fail(hadamard_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `m` must be NULL or a handle from `gs_butson_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_butson_free(m: *mut GsButsonMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Builds `H_0 D^{N^{perm[0]}} H_1 ... D^{N^{perm[n-1]}} H_n` from `n + 1`
/// matrix handles and a permutation `perm` of `0..n`.
///
/// # Safety
/// `hadamards` must point to `n + 1` valid handles, `perm` to `n` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_construct(
    hadamards: *const *const GsButsonMatrix,
    perm: *const usize,
    n: usize,
    out: *mut *mut GsPolyMatrix,
) -> GsStatus {
    guarded(move || {
        if out.is_null() {
            return fail(GsStatus::NullPointer, "out is null");
        }
        let (Some(handles), Some(perm)) = (borrow(hadamards, n + 1), borrow(perm, n)) else {
            return fail(GsStatus::NullPointer, "hadamards or perm is null");
        };
        if handles.iter().any(|h| h.is_null()) {
            return fail(GsStatus::NullPointer, "null matrix handle");
        }
        let matrices = handles.iter().map(|&h| (*h).0.clone()).collect();
        let result = ConstructionSpec::new(perm.to_vec(), matrices).and_then(|spec| construct(&spec));
        match result {
            Ok(m) => {
                *out = Box::into_raw(Box::new(GsPolyMatrix(m)));
                GsStatus::Ok
            }
            Err(e) => fail(construction_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `m` must be NULL or a handle from `gs_construct` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_poly_matrix_free(m: *mut GsPolyMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Matrix dimension `N`, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gs_poly_matrix_dim(m: *const GsPolyMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// Entry length `L`, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gs_poly_matrix_len(m: *const GsPolyMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.len())
}

/// Copies entry `(i, j)` into `out` as `L` exponents, lowest power first
/// unless `descending` is set.
///
/// # Safety
/// `m` must be a live handle and `out` must have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn gs_poly_matrix_sequence(
    m: *const GsPolyMatrix,
    i: usize,
    j: usize,
    descending: bool,
    out: *mut u32,
    capacity: usize,
) -> GsStatus {
    guarded(move || {
        let Some(m) = m.as_ref() else {
            return fail(GsStatus::NullPointer, "matrix is null");
        };
        let m = &m.0;
        if i >= m.dim() || j >= m.dim() {
            return fail(GsStatus::InvalidArgument, format!("entry ({}, {}) outside {}x{}", i, j, m.dim(), m.dim()));
        }
        if capacity < m.len() {
            return fail(GsStatus::BufferTooSmall, format!("need room for {} values", m.len()));
        }
        if out.is_null() {
            return fail(GsStatus::NullPointer, "out is null");
        }
        let order = if descending { ReadOrder::Descending } else { ReadOrder::Ascending };
        let seq = m.sequence(i, j, order);
        ptr::copy_nonoverlapping(seq.as_ptr(), out, seq.len());
        GsStatus::Ok
    })
}

/// Exact complementarity test of `set_size` sequences of length `len`,
/// given row-major in `exps`. Returns `GS_STATUS_NOT_COMPLEMENTARY` and stores
/// the first offending shift in `shift` (if not NULL) when the test fails.
///
/// # Safety
/// `exps` must point to `set_size * len` values; `shift` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gs_golay_check(q: u32, set_size: usize, len: usize, exps: *const u32, shift: *mut usize) -> GsStatus {
    guarded(move || {
        let seqs = match sequences(q, set_size, len, exps) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match golay_check(&seqs) {
            Ok(_) => GsStatus::Ok,
            Err(e) => {
                if let (AnalysisError::NotComplementary { shift: u, .. }, false) = (&e, shift.is_null()) {
                    *shift = *u;
                }
                let status = match e {
                    AnalysisError::NotComplementary { .. } => GsStatus::NotComplementary,
                    _ => GsStatus::InvalidArgument,
                };
                fail(status, e.to_string())
            }
        }
    })
}

/// PMEPR of one sequence on a grid of `oversample * len` points.
///
/// # Safety
/// `exps` must point to `len` values and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_pmepr(q: u32, len: usize, exps: *const u32, oversample: usize, value: *mut f64) -> GsStatus {
    guarded(move || {
        if value.is_null() {
            return fail(GsStatus::NullPointer, "value is null");
        }
        let seq = match sequences(q, 1, len, exps) {
            Ok(mut s) => s.remove(0),
            Err(status) => return status,
        };
        match pmepr(&seq, oversample) {
            Ok(p) => {
                *value = p.value;
                GsStatus::Ok
            }
            Err(e) => fail(GsStatus::InvalidArgument, e.to_string()),
        }
    })
}
