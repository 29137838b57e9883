//! C ABI over the `convex_homothety` kernel.
//!
//! Polytopes and frames are opaque heap handles created by `ch_*_new`-style
//! constructors and released with the matching `*_free`. Every fallible call
//! returns a [`ChStatus`]; on failure a message is kept per thread and can
//! be read with [`ch_last_error_message`]. Points cross the boundary as
//! row-major `double` arrays. Strings returned through `char **` outputs are
//! owned by the caller and released with [`ch_string_free`].
//!
//! Panics are caught at the boundary and reported as `CH_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use convex_homothety::exposed::{antipodally_exposed_points, exposed_diameters};
use convex_homothety::geometry::{orthonormalize, random_frame, Frame, Vector};
use convex_homothety::homothety::detect_homothety;
use convex_homothety::io;
use convex_homothety::polytope::{minkowski_sum, negate, project_polytope, random_polytope, support, Polytope};
use convex_homothety::verify::{self, Report};
use convex_homothety::Error;

/// Orthonormality tolerance for frames passed in by callers.
const FRAME_TOL: f64 = 1e-9;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    EmptyInput = 4,
    SingletonInput = 5,
    NotOrthonormal = 6,
    DependentInput = 7,
    Parse = 8,
    BufferTooSmall = 9,
    Numerical = 10,
    Panic = 11,
}

/// Opaque polytope handle.
pub struct ChPolytope(Polytope);

/// Opaque orthonormal frame handle.
pub struct ChFrame(Frame);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ChStatus {
    match e {
        Error::DimensionMismatch { .. } => ChStatus::DimensionMismatch,
        Error::EmptyInput => ChStatus::EmptyInput,
        Error::SingletonInput => ChStatus::SingletonInput,
        Error::NotOrthonormal(_) => ChStatus::NotOrthonormal,
        Error::DependentInput { .. } => ChStatus::DependentInput,
        Error::Parse(_) | Error::MissingField(_) | Error::BadNumber(_) => ChStatus::Parse,
        Error::Lp(_) | Error::PerturbationFailed { .. } | Error::InconsistentDiameter(_) => ChStatus::Numerical,
        _ => ChStatus::InvalidArgument,
    }
}

struct Fail(ChStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ChStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f` behind the panic boundary and converts its outcome to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ChStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ChStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            ChStatus::Panic
        }
    }
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn doubles<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn rows(p: *const f64, count: usize, dim: usize, what: &str) -> Result<Vec<Vector>, Fail> {
    let len = count.checked_mul(dim).ok_or_else(|| Fail(ChStatus::InvalidArgument, "size overflow".into()))?;
    let flat = doubles(p, len, what)?;
    Ok(flat.chunks(dim.max(1)).take(count).map(|c| Vector::new(c.to_vec())).collect())
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_polytope(out: *mut *mut ChPolytope, p: Polytope) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(ChPolytope(p))), "out")
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(ChStatus::InvalidArgument, "string contains nul".into()))?;
    put(out, c.into_raw(), "out")
}

unsafe fn put_report(out: *mut *mut c_char, passed: *mut bool, r: Report) -> Result<(), Fail> {
    if !passed.is_null() {
        passed.write(r.passed());
    }
    put_string(out, r.to_json())
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Valid until the next call into this library.
#[no_mangle]
pub extern "C" fn ch_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Convex hull of `count` points of dimension `dim` given row-major.
///
/// # Safety
/// `coords` must point to `count * dim` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_new(dim: usize, coords: *const f64, count: usize, out: *mut *mut ChPolytope) -> ChStatus {
    guard(|| {
        if dim == 0 {
            return Err(Fail(ChStatus::InvalidArgument, "dim must be positive".into()));
        }
        let pts = rows(coords, count, dim, "coords")?;
        put_polytope(out, Polytope::from_points(&pts)?)
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_free(p: *mut ChPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_dim(p: *const ChPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.0.dim())
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_vertex_count(p: *const ChPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Copies the vertices in canonical order, row-major, into `out`, which
/// holds `capacity` doubles and needs `count * dim`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_vertices(p: *const ChPolytope, out: *mut f64, capacity: usize) -> ChStatus {
    guard(|| {
        let p = &obj(p, "polytope")?.0;
        let need = p.len() * p.dim();
        if capacity < need {
            return Err(Fail(ChStatus::BufferTooSmall, format!("need {need} doubles, got {capacity}")));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let dst = std::slice::from_raw_parts_mut(out, need);
        for (chunk, v) in dst.chunks_mut(p.dim()).zip(p.vertices()) {
            chunk.copy_from_slice(v.coords());
        }
        Ok(())
    })
}

/// Parses a `{"dim": n, "vertices": [...]}` document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_from_json(json: *const c_char, out: *mut *mut ChPolytope) -> ChStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Fail(ChStatus::Parse, "json is not UTF-8".into()))?;
        put_polytope(out, io::parse_polytope_str(text)?.polytope)
    })
}

/// Canonical document for `p`; free the result with [`ch_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_to_json(p: *const ChPolytope, out: *mut *mut c_char) -> ChStatus {
    guard(|| put_string(out, io::polytope_to_string(&obj(p, "polytope")?.0)))
}

/// Hull of `count` standard normal samples in dimension `dim`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_random(dim: usize, count: usize, seed: u64, out: *mut *mut ChPolytope) -> ChStatus {
    guard(|| put_polytope(out, random_polytope(dim, count, seed)?))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_minkowski(a: *const ChPolytope, b: *const ChPolytope, out: *mut *mut ChPolytope) -> ChStatus {
    guard(|| put_polytope(out, minkowski_sum(&obj(a, "a")?.0, &obj(b, "b")?.0)?))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_negate(p: *const ChPolytope, out: *mut *mut ChPolytope) -> ChStatus {
    guard(|| put_polytope(out, negate(&obj(p, "polytope")?.0)))
}

/// Orthogonal projection of `p` in the coordinates of `frame`.
///
/// # Safety
/// `p` and `frame` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_project(p: *const ChPolytope, frame: *const ChFrame, out: *mut *mut ChPolytope) -> ChStatus {
    guard(|| put_polytope(out, project_polytope(&obj(p, "polytope")?.0, &obj(frame, "frame")?.0)?))
}

/// Support value `max u.v` and the size of the face attaining it.
///
/// # Safety
/// `p` must be a live handle; `direction` must hold `dim` doubles; the
/// outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_support(
    p: *const ChPolytope,
    direction: *const f64,
    dim: usize,
    out_value: *mut f64,
    out_face_size: *mut usize,
) -> ChStatus {
    guard(|| {
        let p = &obj(p, "polytope")?.0;
        let u = Vector::try_new(doubles(direction, dim, "direction")?.to_vec())?;
        let s = support(p, &u)?;
        put(out_value, s.value, "out_value")?;
        put(out_face_size, s.face.len(), "out_face_size")
    })
}

/// Frame from `sub_dim` orthonormal rows of length `ambient_dim`.
///
/// # Safety
/// `rows` must hold `sub_dim * ambient_dim` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_frame_new(ambient_dim: usize, rows_ptr: *const f64, sub_dim: usize, out: *mut *mut ChFrame) -> ChStatus {
    guard(|| {
        let basis = rows(rows_ptr, sub_dim, ambient_dim, "rows")?;
        let f = Frame::from_orthonormal_rows(ambient_dim, basis, FRAME_TOL)?;
        put(out, Box::into_raw(Box::new(ChFrame(f))), "out")
    })
}

/// Orthonormal frame spanning `count` linearly independent vectors.
///
/// # Safety
/// `vectors` must hold `count * ambient_dim` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_frame_span(ambient_dim: usize, vectors: *const f64, count: usize, out: *mut *mut ChFrame) -> ChStatus {
    guard(|| {
        if ambient_dim == 0 || count == 0 {
            return Err(Fail(ChStatus::InvalidArgument, "need ambient_dim >= 1 and count >= 1".into()));
        }
        let f = orthonormalize(&rows(vectors, count, ambient_dim, "vectors")?)?;
        put(out, Box::into_raw(Box::new(ChFrame(f))), "out")
    })
}

/// Seeded random `m`-dimensional frame in `R^n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_frame_random(n: usize, m: usize, seed: u64, out: *mut *mut ChFrame) -> ChStatus {
    guard(|| put(out, Box::into_raw(Box::new(ChFrame(random_frame(n, m, seed)?))), "out"))
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ch_frame_free(f: *mut ChFrame) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Looks for `a = z + lambda * b`. On success `*out_found` says whether a
/// homothety exists; when it does, `lambda` and the `dim` entries of `z`
/// are written.
///
/// # Safety
/// `a` and `b` must be live handles; `out_z` must hold `dim` doubles; the
/// other outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_detect_homothety(
    a: *const ChPolytope,
    b: *const ChPolytope,
    tol: f64,
    out_found: *mut bool,
    out_lambda: *mut f64,
    out_z: *mut f64,
) -> ChStatus {
    guard(|| {
        let (a, b) = (&obj(a, "a")?.0, &obj(b, "b")?.0);
        let h = detect_homothety(a, b, tol)?;
        put(out_found, h.is_some(), "out_found")?;
        if let Some(h) = h {
            put(out_lambda, h.lambda, "out_lambda")?;
            if out_z.is_null() {
                return Err(null("out_z"));
            }
            std::slice::from_raw_parts_mut(out_z, a.dim()).copy_from_slice(h.z.coords());
        }
        Ok(())
    })
}

/// Number of exposed diameters of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_exposed_diameter_count(p: *const ChPolytope, out: *mut usize) -> ChStatus {
    guard(|| put(out, exposed_diameters(&obj(p, "polytope")?.0)?.len(), "out"))
}

/// Number of antipodally exposed vertices of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_antipodal_count(p: *const ChPolytope, out: *mut usize) -> ChStatus {
    guard(|| put(out, antipodally_exposed_points(&obj(p, "polytope")?.0)?.len(), "out"))
}

/// Projection check over `samples` random `m`-planes. Writes the JSON
/// report to `out_json` and, when `out_passed` is non-null, the verdict.
///
/// # Safety
/// `a` and `b` must be live handles; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_verify_theorem1(
    a: *const ChPolytope,
    b: *const ChPolytope,
    m: usize,
    samples: usize,
    seed: u64,
    out_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> ChStatus {
    guard(|| {
        let r = verify::verify_theorem1(&obj(a, "a")?.0, &obj(b, "b")?.0, m, samples, seed)?;
        put_report(out_json, out_passed, r)
    })
}

/// As [`ch_verify_theorem1`] over `m`-planes containing `subspace`.
///
/// # Safety
/// `a`, `b` and `subspace` must be live handles; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_verify_corollary1(
    a: *const ChPolytope,
    b: *const ChPolytope,
    subspace: *const ChFrame,
    m: usize,
    samples: usize,
    seed: u64,
    out_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> ChStatus {
    guard(|| {
        let s = &obj(subspace, "subspace")?.0;
        let r = verify::verify_corollary1(&obj(a, "a")?.0, &obj(b, "b")?.0, s, m, samples, seed)?;
        put_report(out_json, out_passed, r)
    })
}

/// Every vertex of `p` is antipodally exposed.
///
/// # Safety
/// `p` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_verify_theorem2(p: *const ChPolytope, out_passed: *mut bool, out_json: *mut *mut c_char) -> ChStatus {
    guard(|| put_report(out_json, out_passed, verify::verify_theorem2(&obj(p, "polytope")?.0)?))
}

/// No two exposed diameters of `p` are parallel.
///
/// # Safety
/// `p` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_verify_no_parallel_diameters(p: *const ChPolytope, out_passed: *mut bool, out_json: *mut *mut c_char) -> ChStatus {
    guard(|| put_report(out_json, out_passed, verify::verify_no_parallel_diameters(&obj(p, "polytope")?.0)?))
}

/// Exposed diameters of `b` are the images of those of `a`.
///
/// # Safety
/// `a` and `b` must be live handles; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_verify_diameter_transfer(
    a: *const ChPolytope,
    b: *const ChPolytope,
    out_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> ChStatus {
    guard(|| put_report(out_json, out_passed, verify::verify_diameter_transfer(&obj(a, "a")?.0, &obj(b, "b")?.0)?))
}

/// Paraboloids `x^2 + y^2 <= z` and `2x^2 + y^2 <= z` over random planes.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ch_verify_example1(samples: usize, seed: u64, out_passed: *mut bool, out_json: *mut *mut c_char) -> ChStatus {
    guard(|| put_report(out_json, out_passed, verify::verify_example1(samples, seed)?))
}
