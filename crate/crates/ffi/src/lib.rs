//! C interface to `trinorm`.
//!
//! Every function returns a [`TnStatus`] and writes results through out
//! pointers. A [`TnSpace`] is created with [`tn_space_new`] and must be
//! released with [`tn_space_free`].

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trinorm::curves::CaseCConstants;
use trinorm::extreme::extreme_points;
use trinorm::norms::NormContext;
use trinorm::oracle::{edge_norm, grid_norm};
use trinorm::sphere::{in_pi, SphereChart};
use trinorm::{Error, ParityCase, Trinomial, TrinomialParams};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TnStatus {
    Ok = 0,
    InvalidParams = 1,
    Parity = 2,
    Domain = 3,
    NullPointer = 4,
    NoConvergence = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

impl From<&Error> for TnStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParams { .. } => TnStatus::InvalidParams,
            Error::Parity { .. } => TnStatus::Parity,
            Error::NoSignChange { .. } | Error::NoConvergence { .. } => TnStatus::NoConvergence,
            _ => TnStatus::Domain,
        }
    }
}

/// The space of trinomials of one exponent pair.
pub struct TnSpace {
    params: TrinomialParams,
    norms: NormContext,
    chart: Option<SphereChart>,
}

/// Named constants of a Case C pair with `m >= 2n`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TnCaseCConstants {
    pub k_mn: f64,
    pub k_m_mn: f64,
    pub j_mn: f64,
    pub j_m_mn: f64,
    pub lambda0: f64,
    pub tau0: f64,
    pub b_max: f64,
    pub a0: f64,
    pub c0: f64,
    pub a1: f64,
    pub c1: f64,
}

fn guard<F: FnOnce() -> TnStatus>(f: F) -> TnStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(TnStatus::Panic)
}

fn status_of<T>(r: trinorm::Result<T>, out: *mut T) -> TnStatus {
    match r {
        Ok(v) => {
            // SAFETY: callers check `out` for null before computing `r`.
            unsafe { out.write(v) };
            TnStatus::Ok
        }
        Err(e) => TnStatus::from(&e),
    }
}

/// Creates a space for the pair `(m, n)`, `m > n >= 1`.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn tn_space_new(m: u32, n: u32, out: *mut *mut TnSpace) -> TnStatus {
    if out.is_null() {
        return TnStatus::NullPointer;
    }
    guard(|| {
        let built = TrinomialParams::new(m, n).and_then(|params| {
            let chart = if params.parity() == ParityCase::CEvenMOddN {
                Some(SphereChart::new(params)?)
            } else {
                None
            };
            Ok(TnSpace {
                params,
                norms: NormContext::new(params)?,
                chart,
            })
        });
        match built {
            Ok(space) => {
                out.write(Box::into_raw(Box::new(space)));
                TnStatus::Ok
            }
            Err(e) => {
                out.write(ptr::null_mut());
                TnStatus::from(&e)
            }
        }
    })
}

/// Releases a space. Null is ignored.
///
/// # Safety
/// `space` must be null or come from [`tn_space_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tn_space_free(space: *mut TnSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Writes `m` and `n` of the space.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tn_space_exponents(
    space: *const TnSpace,
    m: *mut u32,
    n: *mut u32,
) -> TnStatus {
    let Some(s) = space.as_ref() else {
        return TnStatus::NullPointer;
    };
    if m.is_null() || n.is_null() {
        return TnStatus::NullPointer;
    }
    m.write(s.params.m());
    n.write(s.params.n());
    TnStatus::Ok
}

unsafe fn with_space<F>(space: *const TnSpace, out: *mut f64, f: F) -> TnStatus
where
    F: FnOnce(&TnSpace) -> trinorm::Result<f64>,
{
    let Some(s) = space.as_ref() else {
        return TnStatus::NullPointer;
    };
    if out.is_null() {
        return TnStatus::NullPointer;
    }
    guard(|| status_of(f(s), out))
}

fn trinomial(s: &TnSpace, a: f64, b: f64, c: f64) -> trinorm::Result<Trinomial> {
    Trinomial::new(a, b, c, s.params)
}

/// Sup-norm of `a x^m + b x^(m-n) y^n + c y^m` on the square, by closed form
/// where one exists and by the edge oracle otherwise.
///
/// # Safety
/// `space` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tn_norm(
    space: *const TnSpace,
    a: f64,
    b: f64,
    c: f64,
    out: *mut f64,
) -> TnStatus {
    with_space(space, out, |s| {
        trinomial(s, a, b, c)?;
        Ok(s.norms.norm(a, b, c))
    })
}

/// Sup-norm from the critical points of the two edge restrictions.
///
/// # Safety
/// `space` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tn_edge_norm(
    space: *const TnSpace,
    a: f64,
    b: f64,
    c: f64,
    out: *mut f64,
) -> TnStatus {
    with_space(space, out, |s| Ok(edge_norm(&trinomial(s, a, b, c)?)))
}

/// Max of `|p|` over `samples` uniform points of each edge; `samples >= 2`.
///
/// # Safety
/// `space` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tn_grid_norm(
    space: *const TnSpace,
    a: f64,
    b: f64,
    c: f64,
    samples: usize,
    out: *mut f64,
) -> TnStatus {
    with_space(space, out, |s| {
        if samples < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 samples, got {samples}"
            )));
        }
        Ok(grid_norm(&trinomial(s, a, b, c)?, samples))
    })
}

/// `tau0` for `m` even, `n` odd, `m >= 2n`.
///
/// # Safety
/// `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tn_tau0(m: u32, n: u32, out: *mut f64) -> TnStatus {
    if out.is_null() {
        return TnStatus::NullPointer;
    }
    guard(|| status_of(trinorm::curves::tau0(m, n), out))
}

/// Fills `out` with the constants of a Case C pair with `m >= 2n`.
///
/// # Safety
/// `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tn_case_c_constants(
    m: u32,
    n: u32,
    out: *mut TnCaseCConstants,
) -> TnStatus {
    if out.is_null() {
        return TnStatus::NullPointer;
    }
    guard(|| {
        let r = CaseCConstants::new(m, n).map(|k| TnCaseCConstants {
            k_mn: k.k_mn,
            k_m_mn: k.k_m_mn,
            j_mn: k.j_mn,
            j_m_mn: k.j_m_mn,
            lambda0: k.lambda0,
            tau0: k.tau0,
            b_max: k.b_max,
            a0: k.a0,
            c0: k.c0,
            a1: k.a1,
            c1: k.c1,
        });
        status_of(r, out)
    })
}

/// Upper-sheet height of the unit sphere over `(a, c)` in the hexagon
/// `|a|, |c|, |a + c| <= 1`. Case C only.
///
/// # Safety
/// `space` and `out` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn tn_sphere_height(
    space: *const TnSpace,
    a: f64,
    c: f64,
    out: *mut f64,
) -> TnStatus {
    with_space(space, out, |s| {
        let Some(chart) = &s.chart else {
            return Err(Error::Parity {
                op: "sphere height",
                requirement: "m even, n odd",
                m: s.params.m(),
                n: s.params.n(),
            });
        };
        Ok(chart.height(a, c)?.0)
    })
}

/// 1 if `(a, c)` lies in the hexagon, else 0.
#[no_mangle]
pub extern "C" fn tn_in_hexagon(a: f64, c: f64) -> i32 {
    i32::from(in_pi(a, c))
}

/// Writes extreme points as consecutive `(a, b, c)` triples into `buf`.
///
/// `capacity` counts points. `written` always receives the number of points
/// available; if it exceeds `capacity` nothing is copied and
/// `BufferTooSmall` is returned. `buf` may be null when `capacity` is 0.
///
/// # Safety
/// `space` and `written` must be null or valid; `buf` must hold `3 * capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn tn_extreme_points(
    space: *const TnSpace,
    samples_per_curve: usize,
    buf: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> TnStatus {
    let Some(s) = space.as_ref() else {
        return TnStatus::NullPointer;
    };
    if written.is_null() || (buf.is_null() && capacity > 0) {
        return TnStatus::NullPointer;
    }
    guard(|| {
        let pts = match extreme_points(s.params, samples_per_curve) {
            Ok(p) => p,
            Err(e) => return TnStatus::from(&e),
        };
        written.write(pts.len());
        if pts.len() > capacity {
            return TnStatus::BufferTooSmall;
        }
        for (i, p) in pts.iter().enumerate() {
            ptr::copy_nonoverlapping(p.point.as_ptr(), buf.add(3 * i), 3);
        }
        TnStatus::Ok
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn tn_status_message(status: TnStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        TnStatus::Ok => c"ok",
        TnStatus::InvalidParams => c"invalid exponent pair",
        TnStatus::Parity => c"operation not defined for this parity",
        TnStatus::Domain => c"argument outside the domain",
        TnStatus::NullPointer => c"null pointer",
        TnStatus::NoConvergence => c"root finding failed",
        TnStatus::BufferTooSmall => c"buffer too small",
        TnStatus::Panic => c"internal panic",
    };
    msg.as_ptr()
}
