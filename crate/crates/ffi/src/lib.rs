//! C ABI for the certified-norm library.
//!
//! Conventions:
//! - Matrices travel as opaque handles created by [`lpgn_matrix_new`] and
//!   released by [`lpgn_matrix_free`]; complex data crosses the boundary
//!   as interleaved `re, im` doubles in row-major order.
//! - Exponents are exact rationals `num/den` with `den == 0` meaning ∞,
//!   so conjugate pairs like 4/3 and 4 stay exact across the boundary.
//! - Every fallible call returns an [`LpgnStatus`] and writes its result
//!   through `out` pointers only on `Ok`.
//!
//! The generated header lands in `include/lpgn.h` at build time.

use num_complex::Complex64;

use lpgn_core::circle;
use lpgn_core::classify;
use lpgn_core::cyclic::{self, CyclicElement};
use lpgn_core::error::Error;
use lpgn_core::estimate::NormBudget;
use lpgn_core::exponent::Exponent;
use lpgn_core::matrix::CMatrix;
use lpgn_core::pnorm;
use lpgn_core::zline::{self, Kernel};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpgnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedExponent = 3,
    DimensionMismatch = 4,
    NonFiniteEntry = 5,
    NonMonotone = 6,
    InternalError = 7,
}

/// Certified interval for a norm value.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LpgnNormEstimate {
    pub lower: f64,
    pub upper: f64,
    /// True when the interval is tight enough to treat as exact.
    pub exact: bool,
}

/// Group selector for the classification oracle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpgnGroup {
    Trivial = 0,
    /// Finite cyclic group; pass the order separately.
    Cyclic = 1,
    Integers = 2,
}

/// Opaque dense complex matrix handle.
pub struct LpgnMatrix {
    inner: CMatrix,
}

fn status_of(e: &Error) -> LpgnStatus {
    match e {
        Error::InvalidExponent(_) | Error::InvalidArgument(_) => LpgnStatus::InvalidArgument,
        Error::UnsupportedExponent(_, _) => LpgnStatus::UnsupportedExponent,
        Error::DimensionMismatch(_) => LpgnStatus::DimensionMismatch,
        Error::NonFiniteEntry { .. } => LpgnStatus::NonFiniteEntry,
        Error::NonMonotone(_) => LpgnStatus::NonMonotone,
        Error::Internal(_) => LpgnStatus::InternalError,
    }
}

fn exponent_from(num: u64, den: u64) -> Result<Exponent, Error> {
    if den == 0 {
        Ok(Exponent::INFINITY)
    } else {
        Exponent::from_ratio(num, den)
    }
}

fn complexes_from(interleaved: &[f64]) -> Vec<Complex64> {
    interleaved
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect()
}

fn write_estimate(out: *mut LpgnNormEstimate, est: &lpgn_core::NormEstimate) {
    unsafe {
        *out = LpgnNormEstimate {
            lower: est.lower,
            upper: est.upper,
            exact: est.exact,
        };
    }
}

/// Library version as a NUL-terminated static string.
#[no_mangle]
pub extern "C" fn lpgn_version() -> *const std::os::raw::c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const std::os::raw::c_char
}

/// Creates a `rows × cols` matrix from `2·rows·cols` interleaved doubles
/// (row-major `re, im` pairs). On success writes a handle to `out`; free
/// it with [`lpgn_matrix_free`].
///
/// # Safety
/// `entries` must point to `len` readable doubles; `out` must be a valid
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lpgn_matrix_new(
    rows: usize,
    cols: usize,
    entries: *const f64,
    len: usize,
    out: *mut *mut LpgnMatrix,
) -> LpgnStatus {
    if entries.is_null() || out.is_null() {
        return LpgnStatus::NullPointer;
    }
    if len != 2 * rows * cols {
        return LpgnStatus::DimensionMismatch;
    }
    let data = complexes_from(std::slice::from_raw_parts(entries, len));
    match CMatrix::from_rows_vec(rows, cols, data) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(LpgnMatrix { inner: m }));
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a matrix handle. Passing NULL is a no-op.
///
/// # Safety
/// `m` must be NULL or a handle obtained from [`lpgn_matrix_new`] that
/// has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn lpgn_matrix_free(m: *mut LpgnMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Certified `p→p` operator norm of a matrix, `p = p_num/p_den`
/// (`p_den == 0` for ∞).
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_matrix_norm(
    m: *const LpgnMatrix,
    p_num: u64,
    p_den: u64,
    out: *mut LpgnNormEstimate,
) -> LpgnStatus {
    if m.is_null() || out.is_null() {
        return LpgnStatus::NullPointer;
    }
    let p = match exponent_from(p_num, p_den) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match pnorm::norm_certified(&(*m).inner, &p, &NormBudget::default()) {
        Ok(est) => {
            write_estimate(out, &est);
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Certified norm of the order-n cyclic-algebra element with the given
/// Gelfand coordinates (`2·n` interleaved doubles).
///
/// # Safety
/// `gelfand` must point to `2·n` readable doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_cyclic_norm(
    n: usize,
    gelfand: *const f64,
    p_num: u64,
    p_den: u64,
    out: *mut LpgnNormEstimate,
) -> LpgnStatus {
    if gelfand.is_null() || out.is_null() {
        return LpgnStatus::NullPointer;
    }
    let xi = complexes_from(std::slice::from_raw_parts(gelfand, 2 * n));
    let go = || -> Result<lpgn_core::NormEstimate, Error> {
        let p = exponent_from(p_num, p_den)?;
        let x = CyclicElement::from_gelfand(n, xi)?;
        cyclic::norm(&x, &p, &NormBudget::default())
    };
    match go() {
        Ok(est) => {
            write_estimate(out, &est);
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Certified norm bracket for convolution by a finitely supported kernel
/// on the integers: `count` sites with interleaved complex values, lower
/// bound from the Toeplitz compression at half-width `window`, upper
/// bound from the symbol/interpolation route.
///
/// # Safety
/// `sites` must point to `count` readable entries and `values` to
/// `2·count` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_kernel_norm(
    sites: *const i64,
    values: *const f64,
    count: usize,
    p_num: u64,
    p_den: u64,
    window: usize,
    out: *mut LpgnNormEstimate,
) -> LpgnStatus {
    if sites.is_null() || values.is_null() || out.is_null() {
        return LpgnStatus::NullPointer;
    }
    let ks = std::slice::from_raw_parts(sites, count);
    let vs = complexes_from(std::slice::from_raw_parts(values, 2 * count));
    let entries: Vec<(i64, Complex64)> = ks.iter().copied().zip(vs).collect();
    let go = || -> Result<lpgn_core::NormEstimate, Error> {
        let p = exponent_from(p_num, p_den)?;
        let f = Kernel::from_entries(&entries)?;
        let budget = NormBudget::default();
        let mut est = zline::norm_lambda_lower(&f, &p, window, &budget)?;
        est.intersect(&zline::norm_lambda_upper(&f, &p, &budget)?);
        Ok(est)
    };
    match go() {
        Ok(est) => {
            write_estimate(out, &est);
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Pattern-matches the invertible-isometry form at exponent `p ≠ 2`.
/// Writes whether the element matches and, when it does, the character
/// index `k`; otherwise `k` is set to `UINT64_MAX`.
///
/// # Safety
/// `gelfand` must point to `2·n` readable doubles; the two out pointers
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_classify_isometry(
    n: usize,
    gelfand: *const f64,
    p_num: u64,
    p_den: u64,
    tol: f64,
    out_is_isometry: *mut bool,
    out_k: *mut u64,
) -> LpgnStatus {
    if gelfand.is_null() || out_is_isometry.is_null() || out_k.is_null() {
        return LpgnStatus::NullPointer;
    }
    let xi = complexes_from(std::slice::from_raw_parts(gelfand, 2 * n));
    let go = || -> Result<cyclic::IsometryClass, Error> {
        let p = exponent_from(p_num, p_den)?;
        let x = CyclicElement::from_gelfand(n, xi)?;
        cyclic::classify_isometry(&x, &p, tol)
    };
    match go() {
        Ok(cls) => {
            *out_is_isometry = cls.is_isometry;
            *out_k = cls.k.map(|k| k as u64).unwrap_or(u64::MAX);
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

fn group_from(group: LpgnGroup, order: u64) -> Result<classify::GroupDescriptor, Error> {
    match group {
        LpgnGroup::Trivial => Ok(classify::GroupDescriptor::Trivial),
        LpgnGroup::Cyclic => classify::GroupDescriptor::cyclic(order),
        LpgnGroup::Integers => Ok(classify::GroupDescriptor::Integers),
    }
}

/// The representability oracle: whether the p-algebra of the group acts
/// isometrically on an L^q space (`q` strictly between 1 and ∞).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_representable(
    group: LpgnGroup,
    order: u64,
    p_num: u64,
    p_den: u64,
    q_num: u64,
    q_den: u64,
    out: *mut bool,
) -> LpgnStatus {
    if out.is_null() {
        return LpgnStatus::NullPointer;
    }
    let go = || -> Result<bool, Error> {
        let g = group_from(group, order)?;
        let p = exponent_from(p_num, p_den)?;
        let q = exponent_from(q_num, q_den)?;
        classify::representable(&g, &p, &q)
    };
    match go() {
        Ok(v) => {
            *out = v;
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Whether the p- and q-algebras of the group are isometrically
/// isomorphic.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_isomorphic_group_algebras(
    group: LpgnGroup,
    order: u64,
    p_num: u64,
    p_den: u64,
    q_num: u64,
    q_den: u64,
    out: *mut bool,
) -> LpgnStatus {
    if out.is_null() {
        return LpgnStatus::NullPointer;
    }
    let go = || -> Result<bool, Error> {
        let g = group_from(group, order)?;
        let p = exponent_from(p_num, p_den)?;
        let q = exponent_from(q_num, q_den)?;
        Ok(classify::isomorphic_group_algebras(&g, &p, &q))
    };
    match go() {
        Ok(v) => {
            *out = v;
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Certified lower bound for the norm gap between the p- and q-algebras
/// on the order-n cyclic group, from a seeded witness search.
///
/// # Safety
/// `out_gap` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_witness_gap(
    n: u64,
    p_num: u64,
    p_den: u64,
    q_num: u64,
    q_den: u64,
    trials: usize,
    seed: u64,
    out_gap: *mut f64,
) -> LpgnStatus {
    if out_gap.is_null() {
        return LpgnStatus::NullPointer;
    }
    let go = || -> Result<f64, Error> {
        let p = exponent_from(p_num, p_den)?;
        let q = exponent_from(q_num, q_den)?;
        let w = classify::witness_search(n, &p, &q, trials, seed, &NormBudget::default())?;
        Ok(w.gap_lower)
    };
    match go() {
        Ok(v) => {
            *out_gap = v;
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Antipodal parameter for a tabulated monotone circle map: `len` pairs
/// `(ts[i], hs[i])` interpolated piecewise-linearly, abscissae from 0 to
/// 2π. Writes `t* ∈ [0, π]` with residual within `tol·π`.
///
/// # Safety
/// `ts` and `hs` must point to `len` readable doubles each; `out_t` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn lpgn_antipodal_from_table(
    ts: *const f64,
    hs: *const f64,
    len: usize,
    tol: f64,
    out_t: *mut f64,
) -> LpgnStatus {
    if ts.is_null() || hs.is_null() || out_t.is_null() {
        return LpgnStatus::NullPointer;
    }
    let t = std::slice::from_raw_parts(ts, len);
    let h = std::slice::from_raw_parts(hs, len);
    let points: Vec<(f64, f64)> = t.iter().copied().zip(h.iter().copied()).collect();
    let go = || -> Result<f64, Error> {
        let map = circle::MonotoneCircleMap::from_table(&points)?;
        circle::antipodal_point(&map, tol)
    };
    match go() {
        Ok(v) => {
            *out_t = v;
            LpgnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
